#include <catch_amalgamated.hpp>

#include "cubecalc/poset.hpp"

using namespace cubecalc;

namespace {

std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t at(const PosetPtr& p, const std::string& l) { return p->index_of(l); }

}  // namespace

TEST_CASE("cube sizes", "[poset]") {
  REQUIRE(build_cube(0)->size() == 1);
  auto sq = build_cube(2);
  REQUIRE(sq->size() == 4);
  REQUIRE(sq->relation_count() == 5);
  REQUIRE(build_cube(3)->hasse_edges().size() == 12);
  REQUIRE(sq->labels() == std::vector<std::string>{"00", "10", "01", "11"});
  REQUIRE_THROWS_AS(build_cube(7), ResourceError);
  REQUIRE_THROWS_AS(build_cube(5, 4), ResourceError);
}

TEST_CASE("chunks", "[poset]") {
  REQUIRE(build_chunk({3, 1, 2}).poset->size() == 6);
  REQUIRE(*build_chunk({3, 0, 3}).poset == *build_cube(3));
  auto d = build_chunk({2, 1, 1}).poset;
  REQUIRE(d->size() == 2);
  REQUIRE(d->relation_count() == 0);
  REQUIRE_THROWS_AS(build_chunk({2, 2, 1}), UsageError);
  REQUIRE_THROWS_AS(build_chunk({2, 0, 3}), UsageError);
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (int l = k; l <= n; ++l) {
        std::size_t expect = 0;
        for (int i = k; i <= l; ++i) expect += binom(n, i);
        REQUIRE(build_chunk({n, k, l}).poset->size() == expect);
        ChunkSpec s{n, k, l};
        REQUIRE(s.dual().dual() == s);
      }
}

TEST_CASE("chunk inclusions and intervals", "[poset]") {
  auto i = chunk_inclusion({3, 1, 1}, {3, 0, 2});
  REQUIRE(i.is_full_embedding());
  REQUIRE_THROWS_AS(chunk_inclusion({3, 0, 2}, {3, 1, 1}), UsageError);
  auto j = interval_inclusion(3, 0b001, 0b111);
  REQUIRE(j.source->size() == 4);
  REQUIRE(j.target->label(j(0)) == "100");
  REQUIRE(j.target->label(j(3)) == "111");
  // a chunk is a cosieve in the lower part and the lower part a sieve in the cube
  auto low = build_chunk({3, 0, 2});
  REQUIRE(is_sieve(low.inclusion));
  REQUIRE(is_cosieve(chunk_inclusion({3, 1, 2}, {3, 0, 2})));
  REQUIRE(is_convex(build_chunk({3, 1, 2}).inclusion));
  REQUIRE_FALSE(is_sieve(build_chunk({3, 1, 2}).inclusion));
}

TEST_CASE("chunk category", "[poset]") {
  REQUIRE(chunk_category(1).poset->size() == 3);
  auto c = chunk_category(2);
  REQUIRE(c.poset->size() == 6);
  REQUIRE(compose(c.involution, c.involution).is_identity());
  auto tw = twisted_category(chain_poset(2));
  REQUIRE(tw.poset->size() == 6);
  // tw([n]) and Ch(n) agree as posets under (x,y) -> (x,y)
  for (std::size_t a = 0; a < tw.pairs.size(); ++a)
    for (std::size_t b = 0; b < tw.pairs.size(); ++b) {
      auto ia = c.index_of(static_cast<int>(tw.pairs[a].first), static_cast<int>(tw.pairs[a].second));
      auto ib = c.index_of(static_cast<int>(tw.pairs[b].first), static_cast<int>(tw.pairs[b].second));
      REQUIRE(tw.poset->leq(a, b) == c.poset->leq(ia, ib));
    }
}

TEST_CASE("swap symmetries", "[poset]") {
  REQUIRE(swap_symmetry(3, 2, 2).is_identity());
  auto s = swap_symmetry(3, 1, 3);
  REQUIRE(compose(s, s).is_identity());
  auto t = swap_symmetry(2, 1, 2);
  REQUIRE(t.target->label(t(at(t.source, "10"))) == "01");
  REQUIRE_THROWS_AS(swap_symmetry(2, 0, 1), UsageError);
  for (int k = 0; k <= 3; ++k) {
    REQUIRE_NOTHROW(restrict_endomap(s, build_chunk({3, 0, k})));
    REQUIRE_NOTHROW(restrict_endomap(s, build_chunk({3, k, 3})));
  }
}

TEST_CASE("slices", "[poset]") {
  auto sq = build_cube(2);
  REQUIRE(slice_under(identity_map(sq), at(sq, "11")).poset->size() == 4);
  auto low = build_chunk({2, 0, 1});
  auto s = slice_under(low.inclusion, at(sq, "10"));
  REQUIRE(s.poset->labels() == std::vector<std::string>{"00", "10"});
  auto top = PosetMap::make(point(), build_cube(3), {7});
  for (std::size_t b = 0; b < 8; ++b) REQUIRE(slice_over(top, b).poset->size() == 1);
}

TEST_CASE("nerve chains", "[poset]") {
  auto c1 = strict_chains(*build_cube(1));
  REQUIRE(c1.size() == 2);
  REQUIRE(c1[0].size() == 2);
  REQUIRE(c1[1].size() == 1);
  auto c2 = strict_chains(*build_cube(2));
  REQUIRE(c2[0].size() + c2[1].size() + c2[2].size() == 11);
  REQUIRE(chain_count(*build_cube(2)) == 11);
  REQUIRE(strict_chains(*discrete_poset({"a", "b", "c"})).size() == 1);
  REQUIRE(strict_chains(*build_cube(3), 1).size() == 2);
}

TEST_CASE("contractible nerves have euler characteristic one", "[poset]") {
  for (int n = 0; n <= 4; ++n) REQUIRE(euler_characteristic(*build_cube(n)) == 1);
  REQUIRE(euler_characteristic(*build_chunk({3, 0, 2}).poset) == 1);
  REQUIRE(euler_characteristic(*build_chunk({3, 1, 3}).poset) == 1);
  REQUIRE(euler_characteristic(*chunk_category(3).poset) == 1);
  // the middle layers of the 3-cube form a hexagon
  REQUIRE(euler_characteristic(*build_chunk({3, 1, 2}).poset) == 0);
}

TEST_CASE("grothendieck constructions", "[poset]") {
  auto base = chain_poset(1);
  auto fib = build_cube(1);
  auto g = grothendieck(base, {fib, fib}, [&](std::size_t, std::size_t) { return identity_map(fib); });
  auto pr = product(base, fib);
  REQUIRE(g.poset->size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) REQUIRE(g.poset->leq(i, j) == pr.poset->leq(i, j));
  auto single = grothendieck(point(), {fib}, [&](std::size_t, std::size_t) -> PosetMap { throw UsageError("unused"); });
  REQUIRE(single.poset->size() == 2);
  for (std::size_t e = 0; e < g.poset->size(); ++e)
    for (std::size_t d = 0; d < base->size(); ++d)
      if (base->leq(g.pairs[e].first, d)) REQUIRE(opcartesian_lift(g, e, d));
  // non-functorial data is rejected
  auto c2 = chain_poset(2);
  auto one = point();
  auto two = discrete_poset({"x", "y"});
  REQUIRE_THROWS_AS(grothendieck(c2, {one, two, two}, [&](std::size_t a, std::size_t b) {
                      if (a == 0) return PosetMap::make(one, two, {b == 1 ? 0u : 1u});
                      return identity_map(two);
                    }),
                    UsageError);
}

TEST_CASE("filtration of the punctured square over the span", "[poset]") {
  // f sends 00 -> (0,0), 10 -> (1,0), 01 -> (0,1); (f/P) = {(p, a) : f(a) <= p}
  auto a = build_chunk({2, 0, 1}).poset;
  auto span = build_chunk({2, 0, 1}).poset;
  auto f = identity_map(a);
  std::vector<PosetPtr> fibers;
  std::vector<SubPoset> subs;
  for (std::size_t p = 0; p < span->size(); ++p) {
    subs.push_back(slice_under(f, p));
    fibers.push_back(subs.back().poset);
  }
  auto g = grothendieck(span, fibers, [&](std::size_t p, std::size_t q) {
    std::vector<std::size_t> idx;
    for (std::size_t x = 0; x < fibers[p]->size(); ++x) idx.push_back(fibers[q]->index_of(fibers[p]->label(x)));
    return PosetMap::make(fibers[p], fibers[q], idx);
  });
  REQUIRE(g.poset->size() == 5);
}

TEST_CASE("twisted morphism categories", "[poset]") {
  REQUIRE(twisted_category(chain_poset(1)).poset->size() == 3);
  auto d = twisted_category(discrete_poset({"a", "b"}));
  REQUIRE(d.poset->size() == 2);
  REQUIRE(d.poset->relation_count() == 0);
}

TEST_CASE("finality certificates", "[poset]") {
  auto c = build_cube(2);
  auto top = PosetMap::make(point(), c, {3});
  REQUIRE(finality_certificate(top).verdict == FinalityCertificate::Verdict::Final);
  auto punct = build_chunk({2, 0, 1}).inclusion;
  REQUIRE(finality_certificate(punct).verdict == FinalityCertificate::Verdict::NotFinal);
  // contractible slice without a least element
  auto vee = build_chunk({2, 1, 2});
  auto pt = PosetMap::make(vee.poset, point(), {0, 0, 0});
  REQUIRE(finality_certificate(pt).verdict == FinalityCertificate::Verdict::Unknown);
  auto disc = PosetMap::make(build_chunk({2, 1, 1}).poset, point(), {0, 0});
  REQUIRE(finality_certificate(disc).verdict == FinalityCertificate::Verdict::NotFinal);
}

TEST_CASE("opposite and product", "[poset]") {
  auto c = build_cube(2);
  auto op = opposite(c);
  REQUIRE(op->size() == 4);
  REQUIRE(op->label(0) == "11");
  REQUIRE(op->leq(0, 3));
  auto pr = product(chain_poset(1), chain_poset(2));
  REQUIRE(pr.poset->size() == 6);
  REQUIRE(pr.poset->relation_count() == 3 * 6 - 6);
  auto cc = cocone(c);
  REQUIRE(cc.poset->size() == 5);
  REQUIRE(cc.poset->greatest() == std::optional<std::size_t>(4));
  REQUIRE(is_sieve(cc.inclusion));
}

TEST_CASE("poset validation", "[poset]") {
  REQUIRE_THROWS_AS(FinPoset::from_relations({"a", "b"}, {{1, 0}}), UsageError);
  REQUIRE_THROWS_AS(FinPoset::from_relations({"a", "b"}, {{0, 1}, {1, 0}}), UsageError);
  REQUIRE_THROWS_AS(FinPoset::from_relations({"a", "a"}, {}), UsageError);
  REQUIRE_THROWS_AS(PosetMap::make(chain_poset(1), chain_poset(1), {1, 0}), UsageError);
  REQUIRE(has_unique_hasse_paths(*build_chunk({3, 1, 2}).poset));
  REQUIRE_FALSE(has_unique_hasse_paths(*build_cube(2)));
}
