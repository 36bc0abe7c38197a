#include <catch_amalgamated.hpp>

#include "cubecalc/fixtures.hpp"
#include "cubecalc/kan.hpp"

using namespace cubecalc;
using F = F32003;

namespace {

DiagramComplex<F> arrow_complex(long entry, std::size_t d0 = 1, std::size_t d1 = 1) {
  auto p = chain_poset(1);
  Matrix<F> m(d1, d0);
  if (d0 && d1) m(0, 0) = F::from_int(entry);
  return concentrated(Representation<F>::make(p, {d0, d1}, {m}));
}

PosetMap to_point(const PosetPtr& p) { return constant_map(p, point(), 0); }

std::string betti(const DiagramComplex<F>& x) { return betti_table(x).to_string(); }

std::vector<PosetPtr> small_shapes() {
  return {chain_poset(2), build_cube(2), build_chunk({3, 0, 1}).poset, build_chunk({3, 1, 2}).poset};
}

}  // namespace

TEST_CASE("restriction", "[kan]") {
  std::mt19937_64 rng(3);
  auto sq = build_cube(2);
  auto x = random_complex<F>(sq, 0, 2, 3, rng);
  REQUIRE(restrict(identity_map(sq), x) == x);
  auto low = build_chunk({2, 0, 1});
  auto c = restrict(low.inclusion, fixtures::constant_complex<F>(sq));
  REQUIRE(c == fixtures::constant_complex<F>(low.poset));
  auto r = restrict(low.inclusion, x);
  REQUIRE_FALSE(r.validate());
  for (std::size_t a = 0; a < 3; ++a)
    for (int n = 0; n <= 2; ++n) REQUIRE(r.dim(n, a) == x.dim(n, low.inclusion(a)));
  REQUIRE_THROWS_AS(restrict(low.inclusion, fixtures::constant_complex<F>(low.poset)), UsageError);
}

TEST_CASE("left Kan extension examples", "[kan]") {
  // identity: counit is a quasi-isomorphism
  std::mt19937_64 rng(5);
  for (const auto& p : small_shapes()) {
    auto x = random_complex<F>(p, 0, 1, 3, rng);
    auto l = lkan(identity_map(p), x);
    REQUIRE_FALSE(l.value.validate());
    auto e = lkan_counit(identity_map(p), x, l);
    REQUIRE_FALSE(e.check());
    REQUIRE(is_quasi_iso(e));
  }
  // colimit over [1] of k -> k: the three chain bar complex
  auto l = lkan(to_point(chain_poset(1)), arrow_complex(1));
  REQUIRE(l.value.dim(0, 0) == 2);
  REQUIRE(l.value.dim(1, 0) == 1);
  REQUIRE(betti(l.value) == "H0:1");
  // least element of the punctured square: every slice is a point
  auto punct = build_chunk({2, 0, 1});
  auto least = PosetMap::make(point(), punct.poset, {0});
  auto c = lkan(least, fixtures::constant_complex<F>(point())).value;
  REQUIRE(betti(c) == "H0:1,1,1");
  REQUIRE(is_quasi_iso(lkan_counit(least, fixtures::constant_complex<F>(punct.poset))));
}

TEST_CASE("right Kan extension examples", "[kan]") {
  std::mt19937_64 rng(7);
  for (const auto& p : small_shapes()) {
    auto x = random_complex<F>(p, 0, 1, 3, rng);
    auto r = rkan(identity_map(p), x);
    REQUIRE_FALSE(r.value.validate());
    auto eta = rkan_unit(identity_map(p), x);
    REQUIRE_FALSE(eta.check());
    REQUIRE(is_quasi_iso(eta));
  }
  // limit over [1] of 0 -> k is the initial value
  REQUIRE(is_acyclic(holim(arrow_complex(1, 0, 1))));
  REQUIRE(betti(holim(arrow_complex(1, 1, 0))) == "H0:1");
  // greatest element inclusion: every over-slice is a point
  auto sq = build_cube(2);
  auto top = PosetMap::make(point(), sq, {3});
  REQUIRE(betti(rkan(top, fixtures::constant_complex<F>(point())).value) == "H0:1,1,1,1");
}

TEST_CASE("limits over posets with a least element are stalks", "[kan]") {
  std::mt19937_64 rng(11);
  for (const auto& p : {build_cube(2), build_chunk({3, 0, 1}).poset, chain_poset(3)}) {
    auto x = random_complex<F>(p, -1, 1, 3, rng);
    REQUIRE(betti_table(holim(x)) == betti_table(stalk(x, 0)));
    REQUIRE(betti_table(hocolim(shift(x, 1))).total() == betti_table(hocolim(x)).total());
  }
}

TEST_CASE("colimit examples", "[kan]") {
  REQUIRE(betti(hocolim(arrow_complex(1, 0, 1))) == "H0:1");
  REQUIRE(is_acyclic(hocolim(arrow_complex(1, 1, 0))));
  // colimit of k at the initial vertex of the punctured n-cube is k in degree n-1
  for (int n = 2; n <= 4; ++n) {
    auto punct = build_chunk({n, 0, n - 1});
    auto x = fixtures::simple_complex<F>(punct.poset, cube_label(n, 0));
    auto b = betti_table(hocolim(x));
    REQUIRE(b.total() == 1);
    REQUIRE(b.at(n - 1, 0) == 1);
  }
  // a constant diagram on a contractible poset
  REQUIRE(betti(hocolim(fixtures::constant_complex<F>(build_cube(3)))) == "H0:1");
  // two points: coproduct
  REQUIRE(betti(hocolim(fixtures::constant_complex<F>(discrete_poset({"a", "b"})))) == "H0:2");
}

TEST_CASE("units and counits", "[kan]") {
  std::mt19937_64 rng(13);
  // fully faithful inclusions have invertible units
  std::vector<PosetMap> embeddings{build_chunk({2, 0, 1}).inclusion, build_chunk({3, 1, 2}).inclusion,
                                   chunk_inclusion({3, 1, 1}, {3, 0, 2}), build_chunk({3, 2, 3}).inclusion};
  for (const auto& u : embeddings) {
    auto x = random_complex<F>(u.source, 0, 1, 3, rng);
    auto span = lkan_unit(u, x);
    REQUIRE_FALSE(span.to_source.check());
    REQUIRE_FALSE(span.to_target.check());
    REQUIRE(is_quasi_iso(span.to_source));
    REQUIRE(is_quasi_iso(span.to_target));
    auto co = rkan_counit(u, x);
    REQUIRE_FALSE(co.from_source.check());
    REQUIRE_FALSE(co.from_target.check());
    REQUIRE(is_quasi_iso(co.from_source));
    REQUIRE(is_quasi_iso(co.from_target));
  }
  // not fully faithful: k -> 0 over [1] has zero colimit
  auto span = lkan_unit(to_point(chain_poset(1)), arrow_complex(1, 1, 0));
  REQUIRE(is_quasi_iso(span.to_source));
  REQUIRE_FALSE(is_quasi_iso(span.to_target));
  // counit of the punctured square at the cone point is the pushout comparison
  auto sq = build_cube(2);
  auto punct = build_chunk({2, 0, 1});
  auto cocart = lkan(punct.inclusion, random_complex<F>(punct.poset, 0, 1, 2, rng)).value;
  REQUIRE(is_quasi_iso(lkan_counit(punct.inclusion, cocart)));
  REQUIRE_FALSE(is_quasi_iso(lkan_counit(punct.inclusion, fixtures::simple_complex<F>(sq, "00"))));
  REQUIRE(is_quasi_iso(rkan_unit(build_chunk({2, 1, 2}).inclusion,
                                 rkan(build_chunk({2, 1, 2}).inclusion,
                                      random_complex<F>(build_chunk({2, 1, 2}).poset, 0, 1, 2, rng))
                                     .value)));
}

TEST_CASE("extension by zero", "[kan]") {
  for (int n = 1; n <= 3; ++n) {
    auto cube = build_cube(n);
    auto top = PosetMap::make(point(), cube, {cube->size() - 1});
    auto e = ext_zero(top, fixtures::constant_complex<F>(point()), Side::Left);
    REQUIRE(e.value.total_dim() == 1);
    REQUIRE(e.value.dim(0, cube->size() - 1) == 1);
    REQUIRE_FALSE(e.comparison.check());
    REQUIRE(is_quasi_iso(e.comparison));
  }
  auto punct = build_chunk({3, 0, 2});
  auto bottom = PosetMap::make(point(), punct.poset, {0});
  auto e = ext_zero(bottom, fixtures::constant_complex<F>(point()), Side::Right);
  REQUIRE(betti(e.value) == "H0:1,0,0,0,0,0,0");
  REQUIRE_FALSE(e.comparison.check());
  REQUIRE(is_quasi_iso(e.comparison));
  REQUIRE_THROWS_AS(ext_zero(bottom, fixtures::constant_complex<F>(point()), Side::Left), UsageError);
  // chunk inclusions factor as cosieve then sieve
  std::mt19937_64 rng(17);
  auto x = random_complex<F>(build_chunk({3, 1, 2}).poset, 0, 1, 3, rng);
  auto j = chunk_inclusion({3, 1, 2}, {3, 0, 2});
  auto i = chunk_inclusion({3, 0, 2}, {3, 0, 3});
  auto left = ext_zero(j, x, Side::Left);
  REQUIRE(is_quasi_iso(left.comparison));
  auto right = ext_zero(i, left.value, Side::Right);
  REQUIRE(is_quasi_iso(right.comparison));
  REQUIRE(right.value == extend_by_zero(chunk_inclusion({3, 1, 2}, {3, 0, 3}), x));
}

TEST_CASE("mates", "[kan]") {
  std::mt19937_64 rng(19);
  // identity square
  auto sq2 = build_cube(2);
  auto id = identity_map(sq2);
  auto x = random_complex<F>(sq2, 0, 1, 3, rng);
  auto m = canonical_mate(SquareWithCell{id, id, id, id}, x);
  REQUIRE(same_components(m, identity_chain_map(m.source())));
  // slice squares
  for (int t = 0; t < 3; ++t) {
    auto u = build_chunk({3, 0, 2}).inclusion;
    auto y = random_complex<F>(u.source, 0, 1, 2, rng);
    for (std::size_t b = 0; b < u.target->size(); ++b) {
      auto mate = canonical_mate(slice_square(u, b), y);
      REQUIRE_FALSE(mate.check());
      REQUIRE(is_quasi_iso(mate));
    }
  }
  // swapping coordinates commutes with the inclusion of low layers
  auto low = build_chunk({3, 0, 1});
  auto mid = build_chunk({3, 0, 2});
  auto swap = swap_symmetry(3, 1, 3);
  auto swap_low = restrict_endomap(swap, low);
  auto swap_mid = restrict_endomap(swap, mid);
  auto incl = chunk_inclusion({3, 0, 1}, {3, 0, 2});
  auto y = random_complex<F>(low.poset, 0, 1, 3, rng);
  auto mate = canonical_mate(SquareWithCell{swap_low, incl, incl, swap_mid}, y);
  REQUIRE_FALSE(mate.check());
  REQUIRE(is_quasi_iso(mate));
  REQUIRE_THROWS_AS(canonical_mate(SquareWithCell{incl, id, id, id}, y), UsageError);
}

TEST_CASE("mates of pasted squares compose", "[kan]") {
  std::mt19937_64 rng(23);
  // C -p-> A, v: C -> D, u: A -> B, q: D -> B; then E -p2-> C, v2: E -> G, q2: G -> D
  auto b = build_cube(3);
  auto a = build_chunk({3, 0, 2});
  auto c = build_chunk({3, 0, 1});
  auto e = build_chunk({3, 0, 0});
  auto p = chunk_inclusion({3, 0, 1}, {3, 0, 2});
  auto p2 = chunk_inclusion({3, 0, 0}, {3, 0, 1});
  auto pt = point();
  auto v = constant_map(c.poset, pt, 0);
  auto v2 = constant_map(e.poset, pt, 0);
  auto q = constant_map(pt, b, b->size() - 1);
  auto q2 = identity_map(pt);
  SquareWithCell right{p, v, a.inclusion, q};
  SquareWithCell left{p2, v2, v, q2};
  SquareWithCell pasted{compose(p, p2), v2, a.inclusion, compose(q, q2)};
  for (int t = 0; t < 3; ++t) {
    auto x = random_complex<F>(a.poset, 0, 1, 3, rng);
    auto m1 = canonical_mate(right, x);
    auto m2 = canonical_mate(left, restrict(p, x));
    auto whole = canonical_mate(pasted, x);
    auto comp = compose(restrict(q2, m1), m2);
    REQUIRE(same_components(comp, whole));
  }
}

TEST_CASE("homotopy exact squares", "[kan]") {
  std::mt19937_64 rng(29);
  // fibers of a Grothendieck opfibration
  auto base = chain_poset(1);
  auto g = grothendieck(base, {chain_poset(1), build_cube(2)}, [&](std::size_t, std::size_t) {
    return PosetMap::make(chain_poset(1), build_cube(2), {0, 3});
  });
  for (int t = 0; t < 3; ++t) {
    auto x = random_complex<F>(g.poset, 0, 1, 2, rng);
    for (std::size_t bb = 0; bb < base->size(); ++bb) {
      const auto& fib = g.fiber_inclusions[bb];
      SquareWithCell sq{fib, to_point(fib.source), g.projection, PosetMap::make(point(), base, {bb})};
      auto mate = canonical_mate(sq, x);
      REQUIRE(is_quasi_iso(mate));
      REQUIRE(betti_table(hocolim(restrict(fib, x))) ==
              betti_table(stalk(lkan(g.projection, x).value, bb)));
    }
  }
  // chunk pullback squares
  for (auto [k, kp, lp, l] : std::vector<std::array<int, 4>>{{0, 1, 1, 2}, {0, 1, 2, 3}, {1, 1, 2, 3}}) {
    auto pi = chunk_inclusion({3, kp, lp}, {3, kp, l});
    auto vj = chunk_inclusion({3, kp, lp}, {3, k, lp});
    auto uj = chunk_inclusion({3, kp, l}, {3, k, l});
    auto qi = chunk_inclusion({3, k, lp}, {3, k, l});
    for (int t = 0; t < 3; ++t) {
      auto x = random_complex<F>(pi.target, 0, 1, 2, rng);
      REQUIRE(is_quasi_iso(canonical_mate(SquareWithCell{pi, vj, uj, qi}, x)));
    }
  }
}

TEST_CASE("Fubini", "[kan]") {
  std::mt19937_64 rng(31);
  auto a = chain_poset(1);
  auto b = build_chunk({2, 0, 1}).poset;
  auto prod = product(a, b);
  for (int t = 0; t < 5; ++t) {
    auto x = random_complex<F>(prod.poset, 0, 1, 2, rng);
    auto inner = lkan(prod.first, x).value;
    REQUIRE(betti_table(hocolim(inner)) == betti_table(hocolim(x)));
  }
}

TEST_CASE("coends", "[kan]") {
  std::mt19937_64 rng(37);
  auto pt = point();
  auto x = random_complex<F>(coend_shape(pt).product.poset, 0, 2, 3, rng);
  REQUIRE(betti_table(coend(pt, x)) == betti_table(x));
  auto one = chain_poset(1);
  auto cs = coend_shape(one);
  REQUIRE(cs.twisted_op->size() == 3);
  REQUIRE(betti(coend(one, fixtures::constant_complex<F>(cs.product.poset))) == "H0:1");
  for (const auto& a : {chain_poset(1), chain_poset(2), build_cube(2)}) {
    auto prod = coend_shape(a).product;
    for (int t = 0; t < 3; ++t) {
      auto y = random_complex<F>(a, 0, 1, 3, rng);
      REQUIRE(betti_table(coend(a, restrict(prod.second, y))) == betti_table(hocolim(y)));
    }
  }
  REQUIRE_THROWS_AS(coend(one, fixtures::constant_complex<F>(build_cube(2))), UsageError);
}

TEST_CASE("decomposition of colimits", "[kan]") {
  std::mt19937_64 rng(41);
  // trivial filtration
  auto sq = build_cube(2);
  auto x = random_complex<F>(sq, 0, 1, 3, rng);
  auto d = decompose_colimit(to_point(sq), x);
  REQUIRE(betti_table(stalk(d.value, 0)) == betti_table(hocolim(x)));
  REQUIRE(betti_table(stalk(d.value, 1)) == betti_table(hocolim(x)));
  // a filtration of the cube by a map to [2]
  auto f = PosetMap::make(build_cube(3), chain_poset(2), {0, 0, 1, 1, 1, 2, 2, 2});
  auto filt = filtration(f);
  for (int t = 0; t < 3; ++t) {
    auto y = random_complex<F>(build_cube(3), 0, 1, 2, rng);
    auto dec = decompose_colimit(f, y);
    for (std::size_t p = 0; p < 3; ++p)
      REQUIRE(betti_table(stalk(dec.value, p)) == betti_table(hocolim(restrict(filt.pieces[p].inclusion, y))));
    REQUIRE(betti_table(stalk(dec.value, 3)) == betti_table(hocolim(y)));
  }
}
