#include <catch_amalgamated.hpp>

#include "cubecalc/fixtures.hpp"
#include "cubecalc/serre.hpp"

using namespace cubecalc;
using F = F32003;

namespace {

DiagramComplex<F> random_on(const ChunkSpec& s, std::mt19937_64& rng) {
  return random_complex<F>(build_chunk(s).poset, 0, 1, 2, rng);
}

bool iso(const DiagramComplex<F>& a, const DiagramComplex<F>& b) {
  return compare_complexes("", a, b, InvariantMode::GradedRepComplete).passed;
}

bool same_betti(const DiagramComplex<F>& a, const DiagramComplex<F>& b) {
  return betti_table(a) == betti_table(b);
}

bool acyclic_on(const DiagramComplex<F>& y, const std::function<bool(int)>& layer) {
  auto c = require_cube_coords(*y.shape());
  for (std::size_t v = 0; v < y.shape()->size(); ++v)
    if (layer(std::popcount(c.masks[v])) && !is_acyclic(stalk(y, v))) return false;
  return true;
}

}  // namespace

TEST_CASE("invariant modes", "[serre]") {
  REQUIRE(SerreConfig::for_chunk({3, 1, 2}).mode == InvariantMode::GradedRepComplete);
  REQUIRE(SerreConfig::for_chunk({2, 0, 1}).mode == InvariantMode::GradedRepComplete);
  REQUIRE(SerreConfig::for_chunk({2, 0, 2}).mode == InvariantMode::BettiNecessary);
  REQUIRE(SerreConfig::for_chunk({3, 0, 2}).mode == InvariantMode::BettiNecessary);
  REQUIRE_THROWS_AS((SerreConfig{{3, 0, 2}, InvariantMode::GradedRepComplete}.validate()), UsageError);
  REQUIRE_NOTHROW((SerreConfig{{3, 0, 2}, InvariantMode::BettiNecessary}.validate()));
}

TEST_CASE("chunk extensions", "[serre]") {
  std::mt19937_64 rng(2);
  ChunkSpec from{3, 1, 2}, to{3, 0, 3};
  auto x = random_on(from, rng);
  for (auto m : {ChunkExtension::Zero, ChunkExtension::Left, ChunkExtension::Right}) {
    REQUIRE(chunk_extend(m, from, from, x) == x);
    auto y = chunk_extend(m, from, to, x);
    REQUIRE_FALSE(y.validate());
    REQUIRE(same_betti(restrict(chunk_inclusion(from, to), y), x));
    REQUIRE(same_betti(chunk_extend_stepwise(m, from, to, x, true), y));
    REQUIRE(same_betti(chunk_extend_stepwise(m, from, to, x, false), y));
  }
  auto z = chunk_extend(ChunkExtension::Zero, from, to, x);
  REQUIRE(restrict(chunk_inclusion(from, to), z) == x);
  REQUIRE(z.total_dim() == x.total_dim());
  REQUIRE(acyclic_on(z, [](int c) { return c == 0 || c == 3; }));
  // the left extension is 2-determined and vanishes below layer 1
  auto l = chunk_extend(ChunkExtension::Left, from, to, x);
  REQUIRE(is_k_cotruncated(l, 2).verdict);
  REQUIRE(acyclic_on(l, [](int c) { return c == 0; }));
  auto r = chunk_extend(ChunkExtension::Right, from, to, x);
  REQUIRE(is_k_truncated(r, 1).verdict);
  REQUIRE(acyclic_on(r, [](int c) { return c == 3; }));
  REQUIRE_THROWS_AS(chunk_extend(ChunkExtension::Left, ChunkSpec{3, 0, 2}, from, random_on({3, 0, 2}, rng)), UsageError);
}

TEST_CASE("serre on the full cube is cof_all", "[serre]") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    auto x = random_complex<F>(build_cube(n), 0, 1, 2, rng);
    REQUIRE(serre(full_chunk(n), x) == reduce(cof_all(x)));
    REQUIRE(serre_inverse(full_chunk(n), x) == reduce(fib_all(x)));
  }
}

TEST_CASE("serre on the span", "[serre]") {
  ChunkSpec span{2, 0, 1};
  auto p = build_chunk(span).poset;
  auto proj = concentrated(projective_rep<F>(p, p->index_of("00")));
  auto simple = fixtures::simple_complex<F>(p, "00");
  auto s = serre(span, proj);
  REQUIRE(betti_table(s).to_string() == "H0:1,0,0");
  REQUIRE(iso(s, simple));
  REQUIRE(iso(serre(span, simple), shift(proj, 1)));
  REQUIRE(iso(serre_power(span, proj, 2), shift(proj, 1)));
  REQUIRE(iso(serre_inverse(span, simple), proj));
}

TEST_CASE("discrete serre is the identity", "[serre]") {
  std::mt19937_64 rng(5);
  for (auto s : {ChunkSpec{2, 1, 1}, ChunkSpec{3, 1, 1}, ChunkSpec{3, 2, 2}, ChunkSpec{3, 0, 0}, ChunkSpec{3, 3, 3}})
    for (int t = 0; t < 3; ++t) {
      auto x = random_on(s, rng);
      REQUIRE(iso(serre(s, x), x));
      REQUIRE(iso(serre_inverse(s, x), x));
    }
}

TEST_CASE("serre round trips", "[serre]") {
  std::mt19937_64 rng(7);
  for (auto s : {ChunkSpec{2, 0, 1}, ChunkSpec{3, 1, 2}, ChunkSpec{3, 0, 1}})
    for (int t = 0; t < 3; ++t) {
      auto x = random_on(s, rng);
      REQUIRE(iso(serre(s, serre_inverse(s, x)), x));
      REQUIRE(iso(serre_inverse(s, serre(s, x)), x));
    }
  auto x = random_on({3, 0, 2}, rng);
  REQUIRE(same_betti(serre_inverse({3, 0, 2}, serre({3, 0, 2}, x)), x));
}

TEST_CASE("hexagons and strong stable equivalences", "[serre]") {
  std::mt19937_64 rng(11);
  for (auto s : {ChunkSpec{3, 1, 2}, ChunkSpec{2, 0, 1}, ChunkSpec{3, 0, 1}, ChunkSpec{2, 1, 2}}) {
    auto d = s.dual();
    auto mode = invariant_mode_for(*build_chunk(d).poset);
    auto back = invariant_mode_for(*build_chunk(s).poset);
    for (int t = 0; t < 2; ++t) {
      auto x = random_on(s, rng);
      auto y = random_on(d, rng);
      REQUIRE(compare_complexes("", hexagon_r1(s, x), hexagon_r2(s, x), mode).passed);
      REQUIRE(compare_complexes("", hexagon_l1(s, y), hexagon_l2(s, y), back).passed);
      REQUIRE(opposite_serre(s, y) == serre(d, y));
      // Sigma^n as a composite of three equivalences
      REQUIRE(compare_complexes("", psi(s, opposite_serre(s, phi(s, x))), shift(x, s.n), back).passed);
      REQUIRE(compare_complexes("", phi(s, serre(s, psi(s, y))), shift(y, s.n), mode).passed);
      // conjugation
      REQUIRE(compare_complexes("", psi(s, opposite_serre(s, psi_inverse(s, x))), serre(s, x), back).passed);
      REQUIRE(compare_complexes("", phi_inverse(s, opposite_serre(s, phi(s, x))), serre(s, x), back).passed);
      REQUIRE(compare_complexes("", psi(s, psi_inverse(s, x)), x, back).passed);
      REQUIRE(compare_complexes("", phi_inverse(s, phi(s, x)), x, back).passed);
    }
  }
}

TEST_CASE("serre naturality", "[serre]") {
  std::mt19937_64 rng(13);
  ChunkSpec a{3, 1, 2};
  auto x = random_on(a, rng);
  REQUIRE(serre_naturality_check(a, a, x).passed);
  for (auto [from, to] : {std::pair{ChunkSpec{3, 2, 2}, ChunkSpec{3, 1, 2}}, std::pair{ChunkSpec{2, 1, 1}, ChunkSpec{2, 0, 1}},
                          std::pair{ChunkSpec{3, 1, 1}, ChunkSpec{3, 0, 2}}})
    for (int t = 0; t < 3; ++t) {
      auto r = serre_naturality_check(from, to, random_on(from, rng));
      INFO(r.name << " " << r.detail);
      REQUIRE(r.passed);
    }
  REQUIRE(serre_naturality_check({2, 1, 1}, {2, 0, 1}, random_on({2, 1, 1}, rng)).mode == "graded-rep-complete");
  REQUIRE(serre_naturality_check({3, 1, 1}, {3, 0, 2}, random_on({3, 1, 1}, rng)).mode == "betti-necessary");
}

TEST_CASE("colimits are limits after serre", "[serre]") {
  std::mt19937_64 rng(17);
  auto sq = build_cube(2);
  auto top = fixtures::simple_complex<F>(sq, "11");
  auto r = colim_lim_check({2, 0, 2}, top);
  REQUIRE(r.passed);
  REQUIRE(r.betti[0].second.to_string() == "H0:1");
  for (auto s : {ChunkSpec{2, 0, 1}, ChunkSpec{3, 1, 2}, ChunkSpec{3, 0, 2}, ChunkSpec{3, 1, 1}})
    for (int t = 0; t < 3; ++t) REQUIRE(colim_lim_check(s, random_on(s, rng)).passed);
}

TEST_CASE("calabi-yau powers", "[serre]") {
  auto rep = cy_checks<F>(19, 3, 2);
  for (auto& c : rep.checks) {
    INFO(c.name << " " << c.detail);
    REQUIRE(c.passed);
  }
  REQUIRE(rep.checks.size() == 8);
}

TEST_CASE("hexagon chunk is not calabi-yau", "[serre]") {
  auto x = noncy_fixture<F>();
  REQUIRE(betti_table(x).to_string() == "H0:2,2,2,1,1,1");
  auto rep = non_cy_dimension_check<F>(2);
  for (auto& c : rep.checks) {
    INFO(c.name << " " << c.detail);
    REQUIRE(c.passed);
  }
  REQUIRE_THROWS_AS(non_cy_dimension_check<F>(5), UsageError);
}

TEST_CASE("iterated adjoints", "[serre]") {
  auto rep = iterated_adjoint_example<F>(23, 1);
  for (auto& c : rep.checks) {
    INFO(c.name << " " << c.detail);
    REQUIRE(c.passed);
  }
}

TEST_CASE("cof_all on determined and vanishing cubes", "[serre]") {
  std::mt19937_64 rng(29);
  int n = 3;
  for (int k = 0; k <= n; ++k) {
    // k-determined cubes go to cubes vanishing above layer k
    auto det = chunk_extend(ChunkExtension::Left, {n, 0, k}, full_chunk(n), random_on({n, 0, k}, rng));
    REQUIRE(acyclic_on(cof_all(det), [&](int c) { return c >= k + 1; }));
    // cubes vanishing below layer n-k go to k-determined cubes
    if (k < n) {
      auto low = chunk_extend(ChunkExtension::Zero, {n, n - k, n}, full_chunk(n), random_on({n, n - k, n}, rng));
      REQUIRE(is_k_cotruncated(cof_all(low), k).verdict);
    }
    // cubes vanishing from layer k on go to cubes vanishing up to layer n-k
    if (k >= 1) {
      auto v = chunk_extend(ChunkExtension::Zero, {n, 0, k - 1}, full_chunk(n), random_on({n, 0, k - 1}, rng));
      REQUIRE(acyclic_on(cof_all(v), [&](int c) { return c <= n - k; }));
    }
  }
}

TEST_CASE("serre commutes with swaps", "[serre]") {
  std::mt19937_64 rng(31);
  for (auto s : {ChunkSpec{3, 1, 2}, ChunkSpec{2, 0, 1}, ChunkSpec{3, 0, 1}}) {
    auto x = random_on(s, rng);
    for (auto [i, j] : {std::pair{1, 2}, std::pair{1, s.n}}) {
      if (i == j) continue;
      REQUIRE(iso(serre(s, swap_on_chunk(s, i, j, x)), swap_on_chunk(s, i, j, serre(s, x))));
    }
  }
}
