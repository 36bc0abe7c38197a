#pragma once

// The seeded property suites a1 ... a16. Each returns a Report; checks are
// named so that sorting by name reproduces the order they were run in.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cubecalc/fixtures.hpp"
#include "cubecalc/serre.hpp"

namespace cubecalc {

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;  // overrides every per-family count
  int max_n = 4;

  std::size_t count(std::size_t fallback) const { return samples.value_or(fallback); }
};

struct SuiteInfo {
  std::string name;
  std::string title;
};

inline const std::vector<SuiteInfo>& suite_list() {
  static const std::vector<SuiteInfo> list = {
      {"a1", "total cofiber agreement"},
      {"a2", "cocartesian detection"},
      {"a3", "cotruncation"},
      {"a4", "cof cubed is the n-fold suspension"},
      {"a5", "calabi-yau on the span"},
      {"a6", "calabi-yau on the trivalent source"},
      {"a7", "discrete serre"},
      {"a8", "non-calabi-yau dimension law"},
      {"a9", "colimit vs limit after serre"},
      {"a10", "equal homology without quasi-isomorphism"},
      {"a11", "punctured-cube recursion"},
      {"a12", "decomposition of colimits"},
      {"a13", "coend dummy variable"},
      {"a14", "mates of homotopy exact squares"},
      {"a15", "hexagon and modifications"},
      {"a16", "serre naturality"},
  };
  return list;
}

inline const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : suite_list())
    if (s.name == name) return &s;
  return nullptr;
}

namespace suites {

// One stream per suite so that suites are independent of each other.
inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& suite) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ULL;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  std::array<std::uint64_t, 1> out{};
  seq.generate(reinterpret_cast<std::uint32_t*>(out.data()), reinterpret_cast<std::uint32_t*>(out.data()) + 2);
  return out[0];
}

using detail::sample_tag;
inline std::string tag(std::size_t t) { return sample_tag(t); }

inline CheckRecord verdict(std::string name, bool ok, std::string mode, std::string detail = {}) {
  CheckRecord c;
  c.name = std::move(name);
  c.passed = ok;
  c.mode = std::move(mode);
  if (!ok) c.detail = std::move(detail);
  return c;
}

inline CheckRecord skipped(std::string name, int n) {
  CheckRecord c;
  c.name = std::move(name);
  c.passed = true;
  c.mode = "skipped";
  c.detail = "cube dimension " + std::to_string(n) + " exceeds CUBECALC_MAX_N";
  return c;
}

inline CheckRecord named(CheckRecord c, std::string name) {
  c.name = std::move(name);
  return c;
}

template <Field F>
DiagramComplex<F> random_on(const PosetPtr& p, std::mt19937_64& rng) {
  return random_complex<F>(p, 0, 2, 3, rng);
}

template <Field F>
DiagramComplex<F> random_on(const ChunkSpec& s, std::mt19937_64& rng) {
  return random_on<F>(build_chunk(s).poset, rng);
}

inline InvariantMode mode_of(const PosetPtr& p) { return invariant_mode_for(*p); }

inline std::string ns(int n) { return "n=" + std::to_string(n); }

// ---------------------------------------------------------------- a1 - a4

template <Field F>
Report a1(const SuiteConfig& cfg) {
  Report r{"a1: total cofiber agreement", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a1"));
  for (int n : {2, 3}) {
    for (std::size_t t = 0; t < cfg.count(50); ++t) {
      auto name = "tcof via kan vs cones " + ns(n) + tag(t);
      if (n > cfg.max_n) {
        r.add(skipped(name, n));
        continue;
      }
      auto x = random_on<F>(build_cube(n), rng);
      r.add(compare_complexes(name, tcof_via_kan(x), tcof_via_cones(x), InvariantMode::GradedRepComplete));
    }
  }
  return r;
}

template <Field F>
Report a2(const SuiteConfig& cfg) {
  Report r{"a2: cocartesian detection", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a2"));
  for (int n : {2, 3}) {
    for (std::size_t t = 0; t < cfg.count(20); ++t) {
      auto img = "left extension from layers < n is cocartesian " + ns(n) + tag(t);
      auto zero = "extension by zero at the initial vertex " + ns(n) + tag(t);
      if (n > cfg.max_n) {
        r.add(skipped(img, n));
        r.add(skipped(zero, n));
        continue;
      }
      auto low = build_chunk({n, 0, n - 1});
      auto x = lkan(low.inclusion, random_on<F>(low.poset, rng)).value;
      auto d = is_cocartesian(x);
      r.add(verdict(img, d.verdict, "acyclic total cofiber", "total cofiber " + d.witnesses[0].second.to_string()));

      // k itself first, then random nonzero vector spaces in degree 0 or 1
      std::uniform_int_distribution<std::size_t> dim(1, 3);
      std::uniform_int_distribution<int> deg(0, 1);
      std::size_t dv = t == 0 ? 1 : dim(rng);
      int dg = t == 0 ? 0 : deg(rng);
      auto pt = point();
      auto v = concentrated(Representation<F>::make(pt, {dv}, {}), dg);
      auto z = extend_by_zero(cube_vertex(n, 0), v);
      auto dz = is_cocartesian(z);
      auto got = betti_table(tcof_via_cones(z));
      bool ok = !dz.verdict && got == betti_table(shift(v, n));
      auto c = verdict(zero, ok, "total cofiber is the n-fold suspension",
                       "total cofiber " + got.to_string() + ", expected " + betti_table(shift(v, n)).to_string());
      c.betti = {{"total cofiber", got}};
      r.add(std::move(c));
    }
  }
  return r;
}

template <Field F>
Report a3(const SuiteConfig& cfg) {
  Report r{"a3: cotruncation", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a3"));
  for (int n : {2, 3}) {
    for (std::size_t t = 0; t < cfg.count(30); ++t) {
      int k = static_cast<int>(t % static_cast<std::size_t>(n + 1));
      auto fix = "left extension from layers <= " + std::to_string(k) + " is cotruncated " + ns(n) + tag(t);
      auto agree = "cone and subcube criteria agree " + ns(n) + tag(t);
      if (n > cfg.max_n) {
        r.add(skipped(fix, n));
        r.add(skipped(agree, n));
        continue;
      }
      auto low = build_chunk({n, 0, k});
      auto x = lkan(low.inclusion, random_on<F>(low.poset, rng)).value;
      auto d = is_k_cotruncated(x, k, true);
      r.add(verdict(fix, d.verdict && d.subcube_verdict == true, "iterated cones and subcubes",
                    std::string("cones ") + (d.verdict ? "acyclic" : "not acyclic") + ", subcubes " +
                        (*d.subcube_verdict ? "cocartesian" : "not cocartesian")));
      // random cubes and cubes built to be cotruncated at a different level
      auto w = t % 2 == 0 ? random_on<F>(build_cube(n), rng)
                          : lkan(build_chunk({n, 0, (k + 1) % (n + 1)}).inclusion,
                                 random_on<F>(build_chunk({n, 0, (k + 1) % (n + 1)}).poset, rng))
                                .value;
      auto e = is_k_cotruncated(w, k, true);
      r.add(verdict(agree, e.verdict == *e.subcube_verdict, "iterated cones and subcubes",
                    std::string("cones say ") + (e.verdict ? "yes" : "no") + ", subcubes say " +
                        (*e.subcube_verdict ? "yes" : "no")));
    }
  }
  return r;
}

template <Field F>
Report a4(const SuiteConfig& cfg) {
  Report r{"a4: cof cubed is the n-fold suspension", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a4"));
  for (int n : {1, 2, 3}) {
    for (std::size_t t = 0; t < cfg.count(30); ++t) {
      auto name = "cof^3 vs suspension " + ns(n) + tag(t);
      if (n > cfg.max_n) {
        r.add(skipped(name, n));
        continue;
      }
      auto cube = build_cube(n);
      auto x = random_on<F>(cube, rng);
      auto y = reduce(cof_all(reduce(cof_all(reduce(cof_all(x))))));
      r.add(compare_complexes(name, y, shift(x, n), mode_of(cube), cfg.seed + t));
    }
  }
  return r;
}

// ---------------------------------------------------------------- a5 - a9

inline Report retitle(Report r, std::string title) {
  r.title = std::move(title);
  return r;
}

template <Field F>
Report a5(const SuiteConfig& cfg) {
  return retitle(cy_checks<F>(derive_seed(cfg.seed, "a5"), cfg.count(20), 0), "a5: calabi-yau on the span");
}

template <Field F>
Report a6(const SuiteConfig& cfg) {
  if (cfg.max_n < 3) return Report{"a6: calabi-yau on the trivalent source", {skipped("S^3 on the trivalent source", 3)}};
  return retitle(cy_checks<F>(derive_seed(cfg.seed, "a6"), 0, cfg.count(10)), "a6: calabi-yau on the trivalent source");
}

template <Field F>
Report a7(const SuiteConfig& cfg) {
  Report r{"a7: discrete serre", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a7"));
  for (auto s : {ChunkSpec{2, 1, 1}, ChunkSpec{3, 1, 1}, ChunkSpec{3, 2, 2}})
    for (std::size_t t = 0; t < cfg.count(20); ++t) {
      auto name = "S vs identity on " + s.to_string() + tag(t);
      if (s.n > cfg.max_n) {
        r.add(skipped(name, s.n));
        continue;
      }
      auto x = random_on<F>(s, rng);
      r.add(compare_complexes(name, serre(s, x), x, InvariantMode::GradedRepComplete, cfg.seed + t));
    }
  return r;
}

template <Field F>
Report a8(const SuiteConfig& cfg) {
  if (cfg.max_n < 3) return Report{"a8: non-calabi-yau dimension law", {skipped("S^i of the hexagon fixture", 3)}};
  return retitle(non_cy_dimension_check<F>(3), "a8: non-calabi-yau dimension law");
}

template <Field F>
Report a9(const SuiteConfig& cfg) {
  Report r{"a9: colimit vs limit after serre", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a9"));
  for (auto s : {ChunkSpec{2, 0, 1}, ChunkSpec{3, 1, 2}, ChunkSpec{3, 0, 2}})
    for (std::size_t t = 0; t < cfg.count(20); ++t) {
      auto name = "colim vs lim of serre " + s.to_string() + tag(t);
      if (s.n > cfg.max_n) {
        r.add(skipped(name, s.n));
        continue;
      }
      r.add(named(colim_lim_check(s, random_on<F>(s, rng)), name));
    }
  return r;
}

// ---------------------------------------------------------------- a10

struct EnumerationResult {
  std::size_t hom_dimension = 0;
  std::size_t maps = 0;
  std::size_t quasi_isos = 0;
};

// Every chain map x -> y over F2, tested one by one.
inline EnumerationResult enumerate_quasi_isos(const DiagramComplex<F2>& x, const DiagramComplex<F2>& y) {
  auto basis = chain_map_basis(x, y);
  detail::require(basis.size() < 24, "enumerate_quasi_isos: chain map space too large to enumerate");
  EnumerationResult r{basis.size(), std::size_t{1} << basis.size(), 0};
  for (std::size_t mask = 0; mask < r.maps; ++mask) {
    auto f = zero_chain_map(x, y);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1) f = add(f, basis[i]);
    if (is_quasi_iso(f)) ++r.quasi_isos;
  }
  return r;
}

// Always over F2, where the chain map spaces are finite.
inline Report a10(const SuiteConfig&) {
  Report r{"a10: equal homology without quasi-isomorphism", {}};
  auto a = fixtures::egfield_a<F2>(), b = fixtures::egfield_b<F2>();
  auto ba = betti_table(a), bb = betti_table(b);
  auto c = verdict("betti tables agree", ba == bb, "exact dimensions", "tables differ");
  c.betti = {{"A", ba}, {"B", bb}};
  r.add(std::move(c));
  for (auto [name, src, dst] : {std::tuple{"A -> B", a, b}, std::tuple{"B -> A", b, a}}) {
    auto e = enumerate_quasi_isos(src, dst);
    auto d = verdict(std::string("no quasi-isomorphism ") + name, e.quasi_isos == 0, "exhaustive over F2",
                     std::to_string(e.quasi_isos) + " quasi-isomorphisms");
    d.detail = "hom dimension " + std::to_string(e.hom_dimension) + ", " + std::to_string(e.maps) +
               " chain maps, " + std::to_string(e.quasi_isos) + " quasi-isomorphisms";
    r.add(std::move(d));
  }
  return r;
}

// ---------------------------------------------------------------- a11 - a14

template <Field F>
Report a11(const SuiteConfig& cfg) {
  Report r{"a11: punctured-cube recursion", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a11"));
  for (int n : {2, 3}) {
    auto susp = "colimit of k at the initial vertex " + ns(n);
    if (n > cfg.max_n) {
      r.add(skipped(susp, n));
    } else {
      auto pc = build_chunk({n, 0, n - 1});
      auto s = punctured_colim_square(fixtures::simple_complex<F>(pc.poset, cube_label(n, 0)));
      auto c = verdict(susp, s.agree && s.corner.total() == 1 && s.corner.at(n - 1, 0) == 1,
                       "exact dimensions", "corner " + s.corner.to_string());
      c.betti = {{"corner", s.corner}};
      r.add(std::move(c));
    }
    for (std::size_t t = 0; t < cfg.count(30); ++t) {
      auto name = "square corner vs direct colimit " + ns(n) + tag(t);
      if (n > cfg.max_n) {
        r.add(skipped(name, n));
        continue;
      }
      auto pc = build_chunk({n, 0, n - 1});
      auto s = punctured_colim_square(random_on<F>(pc.poset, rng));
      auto c = verdict(name, s.agree, "betti", "corner " + s.corner.to_string() + ", direct " + s.direct.to_string());
      c.betti = {{"corner", s.corner}, {"direct", s.direct}};
      r.add(std::move(c));
    }
  }
  return r;
}

// (A^> x B^>) without its top, mapped onto the span: the legs are the
// faces where one factor sits at its cone point.
struct ProductCoconeFixture {
  SubPoset punctured;
  PosetMap to_span;
  SubPoset a_face, b_face, interior;  // {top} x B, A x {top}, A x B
};

inline ProductCoconeFixture product_cocone_fixture() {
  auto ca = cocone(chain_poset(1), "inf");
  auto cb = cocone(discrete_poset({"b1", "b2"}), "inf");
  auto prod = product(ca.poset, cb.poset);
  const std::size_t ta = ca.poset->size() - 1, tb = cb.poset->size() - 1;
  auto top = prod.index(ta, tb);
  auto punct = full_subposet(prod.poset, [&](std::size_t v) { return v != top; });
  auto span = build_chunk({2, 0, 1}).poset;
  std::vector<std::size_t> idx;
  auto a_of = [&](std::size_t v) { return prod.first(punct.inclusion(v)); };
  auto b_of = [&](std::size_t v) { return prod.second(punct.inclusion(v)); };
  for (std::size_t v = 0; v < punct.poset->size(); ++v)
    idx.push_back(span->index_of(a_of(v) == ta ? "10" : b_of(v) == tb ? "01" : "00"));
  auto f = PosetMap::make(punct.poset, span, std::move(idx));
  auto face = [&](auto pred) { return full_subposet(punct.poset, pred); };
  return {punct, f, face([&](std::size_t v) { return a_of(v) == ta; }),
          face([&](std::size_t v) { return b_of(v) == tb; }),
          face([&](std::size_t v) { return a_of(v) != ta && b_of(v) != tb; })};
}

template <Field F>
Report a12(const SuiteConfig& cfg) {
  Report r{"a12: decomposition of colimits", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a12"));
  auto pc = product_cocone_fixture();
  auto span = pc.to_span.target;
  auto pc_filt = filtration(pc.to_span);
  auto cube_map = PosetMap::make(build_cube(3), chain_poset(2), {0, 0, 1, 1, 1, 2, 2, 2});
  auto cube_filt = filtration(cube_map);
  auto betti_of = [](const auto& x) { return betti_table(x); };

  for (std::size_t t = 0; t < cfg.count(20); ++t) {
    // product of cocones: corners of the decomposition square
    {
      auto x = random_on<F>(pc.punctured.poset, rng);
      auto dec = decompose_colimit(pc.to_span, x);
      bool ok = betti_of(stalk(dec.value, span->index_of("00"))) == betti_of(hocolim(restrict(pc.interior.inclusion, x))) &&
                betti_of(stalk(dec.value, span->index_of("10"))) == betti_of(hocolim(restrict(pc.a_face.inclusion, x))) &&
                betti_of(stalk(dec.value, span->index_of("01"))) == betti_of(hocolim(restrict(pc.b_face.inclusion, x)));
      auto corner = betti_of(stalk(dec.value, span->size()));
      auto direct = betti_of(hocolim(x));
      auto c = verdict("product of cocones" + tag(t), ok && corner == direct, "betti",
                       ok ? "corner " + corner.to_string() + ", direct " + direct.to_string() : "a face disagrees");
      c.betti = {{"corner", corner}, {"direct", direct}};
      r.add(std::move(c));

      // fiberwise formula on the filtration's opfibration
      auto y = restrict(pc_filt.forget, x);
      auto over = lkan(pc_filt.total.projection, y).value;
      bool fib = true;
      for (std::size_t p = 0; p < span->size(); ++p)
        fib &= betti_of(stalk(over, p)) == betti_of(hocolim(restrict(pc_filt.total.fiber_inclusions[p], y)));
      r.add(verdict("fiberwise formula on the product filtration" + tag(t), fib, "betti", "a fiber disagrees"));
    }
    // exhaustive filtration of the 3-cube
    if (cfg.max_n < 3) {
      r.add(skipped("exhaustive filtration of the 3-cube" + tag(t), 3));
    } else {
      auto x = random_on<F>(build_cube(3), rng);
      auto dec = decompose_colimit(cube_map, x);
      bool ok = true;
      for (std::size_t p = 0; p < 3; ++p)
        ok &= betti_of(stalk(dec.value, p)) == betti_of(hocolim(restrict(cube_filt.pieces[p].inclusion, x)));
      auto corner = betti_of(stalk(dec.value, 3)), direct = betti_of(hocolim(x));
      auto c = verdict("exhaustive filtration of the 3-cube" + tag(t), ok && corner == direct, "betti",
                       "corner " + corner.to_string() + ", direct " + direct.to_string());
      c.betti = {{"corner", corner}, {"direct", direct}};
      r.add(std::move(c));
    }
  }
  return r;
}

template <Field F>
Report a13(const SuiteConfig& cfg) {
  Report r{"a13: coend dummy variable", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a13"));
  std::vector<std::pair<std::string, PosetPtr>> shapes = {
      {"[1]", chain_poset(1)}, {"[2]", chain_poset(2)}, {"square", build_cube(2)}};
  for (const auto& [label, a] : shapes) {
    auto prod = coend_shape(a).product;
    for (std::size_t t = 0; t < cfg.count(20); ++t) {
      auto y = random_complex<F>(a, 0, 1, 3, rng);
      r.add(compare_complexes("coend vs colimit over " + label + tag(t), coend(a, restrict(prod.second, y)),
                              hocolim(y), InvariantMode::GradedRepComplete));
    }
  }
  return r;
}

template <Field F>
Report a14(const SuiteConfig& cfg) {
  Report r{"a14: mates of homotopy exact squares", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a14"));
  if (cfg.max_n < 3) return Report{r.title, {skipped("mates over the 3-cube", 3)}};
  const int n = 3;
  auto mate_ok = [](const SquareWithCell& sq, const DiagramComplex<F>& x) {
    auto m = canonical_mate(sq, x);
    return !m.check() && is_quasi_iso(m);
  };

  auto slice_u = build_chunk({n, 0, n - 1}).inclusion;
  auto g = grothendieck(chain_poset(1), {chain_poset(1), build_cube(2)}, [&](std::size_t, std::size_t) {
    return PosetMap::make(chain_poset(1), build_cube(2), {0, 3});
  });
  std::vector<std::pair<std::string, SquareWithCell>> swaps;
  for (auto [i, j] : {std::pair{1, 3}, std::pair{1, 2}}) {
    auto low = build_chunk({3, 0, 1}), mid = build_chunk({3, 0, 2});
    auto incl = chunk_inclusion({3, 0, 1}, {3, 0, 2});
    swaps.push_back({std::to_string(i) + "," + std::to_string(j),
                     {restrict_endomap(swap_symmetry(3, i, j), low), incl, incl,
                      restrict_endomap(swap_symmetry(3, i, j), mid)}});
  }
  std::vector<std::array<int, 4>> chunk_squares = {{0, 1, 1, 2}, {0, 1, 2, 3}, {1, 1, 2, 3}};

  for (std::size_t t = 0; t < cfg.count(10); ++t) {
    {
      auto y = random_on<F>(slice_u.source, rng);
      bool ok = true;
      for (std::size_t b = 0; b < slice_u.target->size(); ++b) ok &= mate_ok(slice_square(slice_u, b), y);
      r.add(verdict("slice squares " + ns(n) + tag(t), ok, "quasi-isomorphism", "a slice mate is not invertible"));
    }
    {
      auto x = random_on<F>(g.poset, rng);
      bool ok = true;
      for (std::size_t b = 0; b < g.fiber_inclusions.size(); ++b) {
        const auto& fib = g.fiber_inclusions[b];
        ok &= mate_ok({fib, constant_map(fib.source, point(), 0), g.projection,
                       PosetMap::make(point(), g.projection.target, {b})},
                      x);
      }
      r.add(verdict("opfibration pullbacks" + tag(t), ok, "quasi-isomorphism", "a fiber mate is not invertible"));
    }
    for (const auto& [label, sq] : swaps) {
      auto y = random_on<F>(sq.p.source, rng);
      r.add(verdict("swap square " + label + tag(t), mate_ok(sq, y), "quasi-isomorphism", "mate is not invertible"));
    }
    for (auto [k, kp, lp, l] : chunk_squares) {
      auto name = "chunk square " + ChunkSpec{3, kp, lp}.to_string() + " in " + ChunkSpec{3, k, l}.to_string() + tag(t);
      SquareWithCell sq{chunk_inclusion({3, kp, lp}, {3, kp, l}), chunk_inclusion({3, kp, lp}, {3, k, lp}),
                        chunk_inclusion({3, kp, l}, {3, k, l}), chunk_inclusion({3, k, lp}, {3, k, l})};
      r.add(verdict(name, mate_ok(sq, random_on<F>(sq.p.target, rng)), "quasi-isomorphism", "mate is not invertible"));
    }
  }
  return r;
}

// ---------------------------------------------------------------- a15 - a16

template <Field F>
Report a15(const SuiteConfig& cfg) {
  Report r{"a15: hexagon and modifications", {}};
  if (cfg.max_n < 3) return Report{r.title, {skipped("hexagon on (3,1,2)", 3)}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a15"));
  ChunkSpec s{3, 1, 2};
  auto d = s.dual();
  auto fwd = mode_of(build_chunk(d).poset), back = mode_of(build_chunk(s).poset);
  for (std::size_t t = 0; t < cfg.count(15); ++t) {
    auto x = random_on<F>(s, rng);
    auto y = random_on<F>(d, rng);
    r.add(compare_complexes("H^r1 vs H^r2" + tag(t), hexagon_r1(s, x), hexagon_r2(s, x), fwd, cfg.seed + t));
    r.add(compare_complexes("H^l1 vs H^l2" + tag(t), hexagon_l1(s, y), hexagon_l2(s, y), back, cfg.seed + t));
    r.add(compare_complexes("suspension vs psi . S~ . phi" + tag(t), psi(s, opposite_serre(s, phi(s, x))),
                            shift(x, s.n), back, cfg.seed + t));
    r.add(compare_complexes("suspension vs phi . S . psi" + tag(t), phi(s, serre(s, psi(s, y))), shift(y, s.n), fwd,
                            cfg.seed + t));
  }
  return r;
}

template <Field F>
Report a16(const SuiteConfig& cfg) {
  Report r{"a16: serre naturality", {}};
  std::mt19937_64 rng(derive_seed(cfg.seed, "a16"));
  for (auto [from, to] : {std::pair{ChunkSpec{2, 1, 1}, ChunkSpec{2, 0, 1}}, std::pair{ChunkSpec{3, 2, 2}, ChunkSpec{3, 1, 2}}})
    for (std::size_t t = 0; t < cfg.count(15); ++t) {
      auto name = "S . i_! vs i_* . S along " + from.to_string() + " -> " + to.to_string() + tag(t);
      if (to.n > cfg.max_n) {
        r.add(skipped(name, to.n));
        continue;
      }
      r.add(named(serre_naturality_check(from, to, random_on<F>(from, rng), cfg.seed + t), name));
    }
  return r;
}

}  // namespace suites

template <Field F>
Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  using Fn = Report (*)(const SuiteConfig&);
  static const std::vector<std::pair<std::string, Fn>> table = {
      {"a1", suites::a1<F>},   {"a2", suites::a2<F>},   {"a3", suites::a3<F>},   {"a4", suites::a4<F>},
      {"a5", suites::a5<F>},   {"a6", suites::a6<F>},   {"a7", suites::a7<F>},   {"a8", suites::a8<F>},
      {"a9", suites::a9<F>},   {"a10", suites::a10},    {"a11", suites::a11<F>}, {"a12", suites::a12<F>},
      {"a13", suites::a13<F>}, {"a14", suites::a14<F>}, {"a15", suites::a15<F>}, {"a16", suites::a16<F>},
  };
  for (const auto& [n, fn] : table)
    if (n == name) return fn(cfg);
  throw UsageError("unknown suite '" + name + "' (expected a1 ... a16 or all)");
}

}  // namespace cubecalc
