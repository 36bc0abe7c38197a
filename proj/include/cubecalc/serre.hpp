#pragma once

// Chunk extensions, Serre equivalences, strong stable equivalences and the
// checks built from them. A chunk complex lives on build_chunk(spec). The
// inverses of the embeddings into the full cube are plain restrictions,
// which is exact on their essential images.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubecalc/cube.hpp"
#include "cubecalc/report.hpp"

namespace cubecalc {

enum class ChunkExtension { Zero, Left, Right };

inline std::string to_string(ChunkExtension e) {
  switch (e) {
    case ChunkExtension::Zero: return "z";
    case ChunkExtension::Left: return "l";
    case ChunkExtension::Right: return "r";
  }
  return "?";
}

struct SerreConfig {
  ChunkSpec spec;
  InvariantMode mode = InvariantMode::BettiNecessary;

  // Picks the strongest mode the chunk supports.
  static SerreConfig for_chunk(const ChunkSpec& s) {
    return {s, invariant_mode_for(*build_chunk(s).poset)};
  }
  void validate() const {
    spec.validate();
    if (mode == InvariantMode::GradedRepComplete && !has_unique_hasse_paths(*build_chunk(spec).poset))
      throw UsageError("chunk " + spec.to_string() + " has commuting squares; graded-rep mode is not complete there");
  }
};

inline ChunkSpec full_chunk(int n) { return {n, 0, n}; }

namespace detail {

template <Field F>
void require_chunk(const ChunkSpec& s, const DiagramComplex<F>& x, const char* what) {
  require(same_poset(build_chunk(s).poset, x.shape()),
          std::string(what) + ": complex does not live on the chunk " + s.to_string());
}

}  // namespace detail

// z, l or r from the chunk `from` into the chunk `to`.
template <Field F>
DiagramComplex<F> chunk_extend(ChunkExtension mode, const ChunkSpec& from, const ChunkSpec& to,
                               const DiagramComplex<F>& x) {
  auto inc = chunk_inclusion(from, to);
  detail::require_chunk(from, x, "chunk_extend");
  if (from == to) return x;
  switch (mode) {
    case ChunkExtension::Zero: return extend_by_zero(inc, x);
    case ChunkExtension::Left: return reduce(lkan(inc, x).value);
    case ChunkExtension::Right: return reduce(rkan(inc, x).value);
  }
  return x;
}

// l as the two-step composite, through the sieve first or the cosieve first.
template <Field F>
DiagramComplex<F> chunk_extend_stepwise(ChunkExtension mode, const ChunkSpec& from, const ChunkSpec& to,
                                        const DiagramComplex<F>& x, bool cosieve_first) {
  if (!to.contains(from)) throw UsageError("chunk " + from.to_string() + " is not nested in " + to.to_string());
  ChunkSpec mid = cosieve_first ? ChunkSpec{to.n, to.k, from.l} : ChunkSpec{to.n, from.k, to.l};
  return chunk_extend(mode, mid, to, chunk_extend(mode, from, mid, x));
}

template <Field F>
DiagramComplex<F> restrict_to_chunk(const ChunkSpec& s, const DiagramComplex<F>& y) {
  return restrict(chunk_inclusion(s, full_chunk(s.n)), y);
}

template <Field F>
DiagramComplex<F> to_cube(ChunkExtension mode, const ChunkSpec& s, const DiagramComplex<F>& x) {
  return chunk_extend(mode, s, full_chunk(s.n), x);
}

// ------------------------------------------------------------- Serre

// restrict . cof_all . l
template <Field F>
DiagramComplex<F> serre(const ChunkSpec& s, const DiagramComplex<F>& x) {
  return reduce(restrict_to_chunk(s, cof_all(to_cube(ChunkExtension::Left, s, x))));
}

// restrict . fib_all . r
template <Field F>
DiagramComplex<F> serre_inverse(const ChunkSpec& s, const DiagramComplex<F>& x) {
  return reduce(restrict_to_chunk(s, fib_all(to_cube(ChunkExtension::Right, s, x))));
}

template <Field F>
DiagramComplex<F> serre_power(const ChunkSpec& s, const DiagramComplex<F>& x, int power) {
  DiagramComplex<F> y = x;
  for (int i = 0; i < power; ++i) y = serre(s, y);
  for (int i = 0; i > power; --i) y = serre_inverse(s, y);
  return y;
}

// The opposite Serre equivalence of (k,l), acting on the dual chunk and
// spelled out through the dual embeddings.
template <Field F>
DiagramComplex<F> opposite_serre(const ChunkSpec& s, const DiagramComplex<F>& y) {
  auto d = s.dual();
  auto lifted = chunk_extend(ChunkExtension::Left, d, full_chunk(s.n), y);
  return reduce(restrict(chunk_inclusion(d, full_chunk(s.n)), cof_all(lifted)));
}

// ------------------------------------------------------------- hexagons

// (k,l) -> dual, through z and cof_all
template <Field F>
DiagramComplex<F> hexagon_r1(const ChunkSpec& s, const DiagramComplex<F>& x) {
  return reduce(restrict_to_chunk(s.dual(), cof_all(to_cube(ChunkExtension::Zero, s, x))));
}

// (k,l) -> dual, through r and cof_all
template <Field F>
DiagramComplex<F> hexagon_r2(const ChunkSpec& s, const DiagramComplex<F>& x) {
  return reduce(restrict_to_chunk(s.dual(), cof_all(to_cube(ChunkExtension::Right, s, x))));
}

// dual -> (k,l), through the dual z and cof_all
template <Field F>
DiagramComplex<F> hexagon_l1(const ChunkSpec& s, const DiagramComplex<F>& y) {
  return reduce(restrict_to_chunk(s, cof_all(to_cube(ChunkExtension::Zero, s.dual(), y))));
}

// dual -> (k,l), through the dual r and cof_all
template <Field F>
DiagramComplex<F> hexagon_l2(const ChunkSpec& s, const DiagramComplex<F>& y) {
  return reduce(restrict_to_chunk(s, cof_all(to_cube(ChunkExtension::Right, s.dual(), y))));
}

template <Field F>
DiagramComplex<F> phi(const ChunkSpec& s, const DiagramComplex<F>& x) {
  return hexagon_r2(s, x);
}

template <Field F>
DiagramComplex<F> psi(const ChunkSpec& s, const DiagramComplex<F>& y) {
  return hexagon_l1(s, y);
}

// Inverse of psi: x on (k,l) to the dual chunk via l and fib_all.
template <Field F>
DiagramComplex<F> psi_inverse(const ChunkSpec& s, const DiagramComplex<F>& x) {
  return reduce(restrict_to_chunk(s.dual(), fib_all(to_cube(ChunkExtension::Left, s, x))));
}

// Inverse of phi: y on the dual chunk back via the dual z and fib_all.
template <Field F>
DiagramComplex<F> phi_inverse(const ChunkSpec& s, const DiagramComplex<F>& y) {
  return reduce(restrict_to_chunk(s, fib_all(to_cube(ChunkExtension::Zero, s.dual(), y))));
}

// ------------------------------------------------------------- checks

// S(i_! x) against i_* S(x) for nested chunks from <= to.
template <Field F>
CheckRecord serre_naturality_check(const ChunkSpec& from, const ChunkSpec& to, const DiagramComplex<F>& x,
                                   std::uint64_t seed = 1) {
  auto lhs = serre(to, chunk_extend(ChunkExtension::Left, from, to, x));
  auto rhs = chunk_extend(ChunkExtension::Right, from, to, serre(from, x));
  return compare_complexes("serre naturality " + from.to_string() + " -> " + to.to_string(), lhs, rhs,
                           invariant_mode_for(*lhs.shape()), seed);
}

// hocolim x against holim S(x); both are graded vector spaces.
template <Field F>
CheckRecord colim_lim_check(const ChunkSpec& s, const DiagramComplex<F>& x) {
  return compare_complexes("colim vs lim of serre " + s.to_string(), hocolim(x), holim(serre(s, x)),
                           InvariantMode::BettiNecessary);
}

template <Field F>
DiagramComplex<F> swap_on_chunk(const ChunkSpec& s, int i, int j, const DiagramComplex<F>& x) {
  return restrict(restrict_endomap(swap_symmetry(s.n, i, j), build_chunk(s)), x);
}

// Powers of S on the sources of valence two and three.
template <Field F>
Report cy_checks(std::uint64_t seed, std::size_t samples_square = 20, std::size_t samples_source3 = 10) {
  Report rep{"calabi-yau", {}};
  std::mt19937_64 rng(seed);
  ChunkSpec span{2, 0, 1}, src3{3, 0, 1};
  auto span_poset = build_chunk(span).poset;
  auto src3_poset = build_chunk(src3).poset;
  for (std::size_t t = 0; t < samples_square; ++t) {
    auto x = random_complex<F>(span_poset, 0, 1, 2, rng);
    auto s2 = serre_power(span, x, 2);
    auto s4 = serre_power(span, s2, 2);
    auto tag = detail::sample_tag(t);
    rep.add(compare_complexes("S^4 vs suspension^2 on the span" + tag, s4, shift(x, 2),
                              InvariantMode::GradedRepComplete, seed + t));
    rep.add(compare_complexes("S^2 vs swapped suspension on the span" + tag, s2, swap_on_chunk(span, 1, 2, shift(x, 1)),
                              InvariantMode::GradedRepComplete, seed + t));
  }
  for (std::size_t t = 0; t < samples_source3; ++t) {
    auto x = random_complex<F>(src3_poset, 0, 1, 2, rng);
    rep.add(compare_complexes("S^3 vs suspension^2 on the trivalent source" + detail::sample_tag(t),
                              serre_power(src3, x, 3), shift(x, 2), InvariantMode::GradedRepComplete, seed + t));
  }
  return rep;
}

// The object on the hexagon chunk of the 3-cube: restrict . cof_all . l of
// the constant diagram on the middle layer.
template <Field F>
DiagramComplex<F> noncy_fixture() {
  ChunkSpec middle{3, 2, 2};
  auto c = concentrated(constant_rep<F>(build_chunk(middle).poset));
  return reduce(restrict_to_chunk(ChunkSpec{3, 1, 2}, cof_all(to_cube(ChunkExtension::Left, middle, c))));
}

// Homology of S^i X sits in degree i with dimension 2+2i on singletons and
// 1+2i on pairs.
template <Field F>
Report non_cy_dimension_check(int n_iter) {
  if (n_iter < 0 || n_iter > 4) throw UsageError("non_cy_dimension_check: iterations must lie in [0,4]");
  Report rep{"non-calabi-yau dimensions", {}};
  ChunkSpec hex{3, 1, 2};
  auto x = noncy_fixture<F>();
  const PosetPtr shape = x.shape();
  for (int i = 0; i <= n_iter; ++i) {
    if (i > 0) x = serre(hex, x);
    auto b = betti_table(x);
    CheckRecord c;
    c.name = "S^" + std::to_string(i) + " of the hexagon fixture";
    c.mode = "exact dimensions";
    c.betti = {{"homology", b}};
    bool ok = b.degrees() == std::vector<int>{i};
    for (std::size_t v = 0; v < shape->size() && ok; ++v) {
      auto label = shape->label(v);
      auto card = std::count(label.begin(), label.end(), '1');
      ok = b.at(i, v) == static_cast<std::size_t>(card == 1 ? 2 + 2 * i : 1 + 2 * i);
    }
    c.passed = ok;
    if (!ok) c.detail = "got " + b.to_string();
    rep.add(std::move(c));
  }
  return rep;
}

// The 24-fold adjoint of the inclusion of 1-determined squares, realized as
// S_{0,2}^12 . l . S_{0,1}^-12, against the double suspension of l. The
// square is not hereditary, so only Betti agreement is claimed. The same
// for the 6-fold adjoint of 1-determined 3-cubes inside all 3-cubes.
template <Field F>
Report iterated_adjoint_example(std::uint64_t seed, std::size_t samples = 3) {
  Report rep{"iterated adjoints", {}};
  std::mt19937_64 rng(seed);
  ChunkSpec span{2, 0, 1}, sq{2, 0, 2};
  ChunkSpec src3{3, 0, 1}, cube3{3, 0, 3};
  auto span_poset = build_chunk(span).poset;
  auto src3_poset = build_chunk(src3).poset;
  auto square = build_cube(2);
  for (std::size_t t = 0; t < samples; ++t) {
    auto tag = detail::sample_tag(t);
    auto x = random_complex<F>(span_poset, 0, 1, 2, rng);
    auto incl = [&](const DiagramComplex<F>& y) { return to_cube(ChunkExtension::Left, span, y); };
    rep.add(compare_complexes("inclusion vs itself" + tag, incl(x), incl(x), InvariantMode::BettiNecessary));
    auto w = random_complex<F>(square, 0, 1, 2, rng);
    rep.add(compare_complexes("S_{0,2}^3 vs suspension^2 (smoke)" + tag, serre_power(sq, w, 3), shift(w, 2),
                              InvariantMode::BettiNecessary));
    rep.add(compare_complexes("S_{0,1}^4 vs suspension^2" + tag, serre_power(span, x, 4), shift(x, 2),
                              InvariantMode::GradedRepComplete, seed + t));
    auto adj = serre_power(sq, incl(serre_power(span, x, -12)), 12);
    rep.add(compare_complexes("24-fold adjoint vs suspension^2 . inclusion (smoke)" + tag, adj, shift(incl(x), 2),
                              InvariantMode::BettiNecessary));
    auto z = random_complex<F>(src3_poset, 0, 1, 2, rng);
    auto incl3 = [&](const DiagramComplex<F>& y) { return to_cube(ChunkExtension::Left, src3, y); };
    auto adj3 = serre_power(cube3, incl3(serre_power(src3, z, -3)), 3);
    rep.add(compare_complexes("6-fold adjoint vs suspension . inclusion (smoke)" + tag, adj3, shift(incl3(z), 1),
                              InvariantMode::BettiNecessary));
  }
  return rep;
}

}  // namespace cubecalc
