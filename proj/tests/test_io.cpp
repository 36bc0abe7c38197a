#include <catch_amalgamated.hpp>

#include "cubecalc/fixtures.hpp"
#include "cubecalc/io.hpp"
#include "cubecalc/kan.hpp"

using namespace cubecalc;
using io::Json;
using F = F32003;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("named posets", "[io]") {
  REQUIRE(io::named_poset("cube:2")->size() == 4);
  REQUIRE(io::named_poset("chunk:3:1:2")->size() == 6);
  REQUIRE(io::named_poset("chunkcat:2")->size() == 6);
  REQUIRE(io::named_poset("tw:cube:1")->size() == 3);
  REQUIRE(io::named_poset("point")->size() == 1);
  REQUIRE_THROWS_AS(io::named_poset("simplex:3"), ParseError);
  REQUIRE_THROWS_WITH(io::named_poset("chunk:3:2:1"), ContainsSubstring("k <= l"));
  REQUIRE_THROWS_WITH(io::named_poset("cube:x"), ContainsSubstring("bad poset name"));
}

TEST_CASE("explicit posets", "[io]") {
  auto p = io::poset_from_json(Json::parse(R"({"elements": ["b", "a", "c"], "relations": [[1, 0], [0, 2]]})"));
  REQUIRE(p->size() == 3);
  REQUIRE(p->leq(p->index_of("a"), p->index_of("c")));
  REQUIRE(p->label(0) == "a");
  REQUIRE_THROWS_WITH(io::poset_from_json(Json::parse(R"({"elements": ["a", "b"], "relations": [[0, 1], [1, 0]]})")),
                      ContainsSubstring("antisymmetric"));
  REQUIRE_THROWS_WITH(io::poset_from_json(Json::parse(R"({"elements": ["a"], "relations": [[0, 3]]})")),
                      ContainsSubstring("/relations/0"));
  REQUIRE_THROWS_WITH(io::poset_from_json(Json::parse(R"({"elements": ["a", "a"]})")), ContainsSubstring("duplicate"));
  REQUIRE_THROWS_WITH(io::poset_from_json(Json::parse(R"({"labels": []})")), ContainsSubstring("missing key"));
}

TEST_CASE("poset serialization", "[io]") {
  REQUIRE(io::poset_to_json(build_cube(3)) == "cube:3");
  REQUIRE(io::poset_to_json(build_chunk({3, 1, 2}).poset) == "chunk:3:1:2");
  REQUIRE(io::poset_to_json(point()) == "point");
  auto tw = twisted_category(chain_poset(3)).poset;
  auto j = io::poset_to_json(tw);
  REQUIRE(j.is_object());
  REQUIRE(same_poset(io::poset_from_json(j), tw));
  auto c = chunk_category(3).poset;
  REQUIRE(same_poset(io::poset_from_json(io::poset_to_json(c)), c));
}

TEST_CASE("fields", "[io]") {
  REQUIRE(io::field_from_json(Json::parse(R"({"kind": "Fp", "p": 32003})")) == FieldSpec::of<F32003>());
  REQUIRE(io::field_from_json(Json::parse(R"({"kind": "Q"})")) == FieldSpec::of<Rational>());
  REQUIRE(io::field_from_json(Json("fp:2")) == FieldSpec::of<F2>());
  REQUIRE_THROWS_WITH(io::field_from_json(Json::parse(R"({"kind": "Fp", "p": 4})")), ContainsSubstring("/p"));
  REQUIRE(io::field_to_json(FieldSpec::of<F32003>()).dump() == R"({"kind":"Fp","p":32003})");
  REQUIRE(io::scalar_from_json<Rational>(Json("3/2"), "") == Rational::parse("3/2"));
  REQUIRE(io::scalar_from_json<F>(Json("-1"), "") == F::from_int(-1));
  REQUIRE_THROWS_AS(io::scalar_from_json<F>(Json(1.5), ""), ParseError);
}

TEST_CASE("representations", "[io]") {
  auto sq = build_cube(2);
  auto r = projective_rep<F>(sq, 0);
  auto j = io::rep_to_json(r);
  REQUIRE(j["poset"] == "cube:2");
  REQUIRE(j["maps"].contains("00->10"));
  REQUIRE(io::rep_from_json<F>(j) == r);
  auto bad = Json::parse(R"({"poset": "cube:2", "dims": [1,1,1,1], "maps": {"00->11": [["1"]]}})");
  REQUIRE_THROWS_WITH(io::rep_from_json<F>(bad), ContainsSubstring("not a Hasse edge"));
  auto wrong = Json::parse(R"({"poset": "cube:2", "dims": [1,2,1,1], "maps": {"00->10": [["1"]]}})");
  REQUIRE_THROWS_WITH(io::rep_from_json<F>(wrong), ContainsSubstring("/maps/00->10"));
  auto noncomm = Json::parse(
      R"({"poset": "cube:2", "dims": [1,1,1,1], "maps": {"00->10": [["1"]], "00->01": [["1"]], "10->11": [["1"]], "01->11": [["2"]]}})");
  REQUIRE_THROWS_WITH(io::rep_from_json<F>(noncomm), ContainsSubstring("invalid representation"));
}

TEST_CASE("complexes round trip", "[io]") {
  std::mt19937_64 rng(3);
  for (auto x : {fixtures::egfield_a<F>(), fixtures::egfield_b<F>(), random_complex<F>(build_cube(2), -1, 1, 2, rng),
                 random_complex<F>(build_chunk({3, 1, 2}).poset, 0, 2, 2, rng), DiagramComplex<F>(build_cube(1))}) {
    auto j = io::complex_to_json(x);
    auto y = io::complex_from_json<F>(io::parse_text(io::dump(j)));
    REQUIRE(y == x.trimmed());
    REQUIRE(io::dump(io::complex_to_json(y)) == io::dump(j));
  }
  auto q = fixtures::egfield_a<Rational>();
  REQUIRE(io::complex_from_json<Rational>(io::complex_to_json(q)) == q);
}

TEST_CASE("complex input errors", "[io]") {
  auto j = io::complex_to_json(fixtures::egfield_b<F>());
  REQUIRE_THROWS_WITH(io::complex_from_json<F2>(j), ContainsSubstring("/field"));
  auto bad = Json::parse(R"({"poset": "cube:1", "degrees": {"0": {"dims": [1,1]}, "1": {"dims": [1,0]}, "2": {"dims": [1,0]}},
                             "differentials": {"1": {"0": [["1"]]}, "2": {"0": [["1"]]}}})");
  REQUIRE_THROWS_WITH(io::complex_from_json<F>(bad), ContainsSubstring("d_1 d_2"));
  auto range = Json::parse(R"({"poset": "cube:1", "degrees": {"0": {"dims": [1,1]}}, "differentials": {"5": {}}})");
  REQUIRE_THROWS_WITH(io::complex_from_json<F>(range), ContainsSubstring("/differentials/5"));
  REQUIRE_THROWS_WITH(io::parse_text("{\n  \"poset\": \"cube:1\",\n  \"degrees\": {\n}", "x.json"),
                      ContainsSubstring("x.json: malformed JSON at line 4"));
}

TEST_CASE("chain maps and poset maps", "[io]") {
  std::mt19937_64 rng(5);
  auto x = random_complex<F>(build_cube(2), 0, 1, 2, rng);
  auto f = lkan_counit(identity_map(x.shape()), x);
  auto g = io::chain_map_from_json<F>(io::chain_map_to_json(f));
  REQUIRE(same_components(f, g));
  auto j = io::chain_map_to_json(identity_chain_map(x));
  j["components"] = Json::object();
  if (!x.empty() && x.total_dim() > 0) REQUIRE_NOTHROW(io::chain_map_from_json<F>(j));

  auto u = chunk_inclusion({3, 1, 2}, {3, 0, 3});
  auto v = io::poset_map_from_json(io::poset_map_to_json(u));
  REQUIRE(maps_equal(u, v));
  auto bad = Json::parse(R"({"source": "cube:1", "target": "cube:1", "assignment": ["1", "0"]})");
  REQUIRE_THROWS_WITH(io::poset_map_from_json(bad), ContainsSubstring("monotone"));
  auto missing = Json::parse(R"({"source": "cube:1", "target": "point", "assignment": {"0": "*"}})");
  REQUIRE_THROWS_WITH(io::poset_map_from_json(missing), ContainsSubstring("no image"));
}

TEST_CASE("betti tables and reports", "[io]") {
  auto b = betti_table(fixtures::egfield_a<F>());
  auto j = io::betti_to_json(b);
  REQUIRE(j.dump() == R"({"labels":["00","10","01","11"],"rows":{"0":[1,0,0,0],"1":[0,0,0,1]}})");
  REQUIRE(io::betti_from_json(j) == b);
  auto md = io::betti_markdown(b);
  REQUIRE_THAT(md, ContainsSubstring("| degree | 00 | 10 | 01 | 11 |"));
  REQUIRE_THAT(md, ContainsSubstring("| 1 | 0 | 0 | 0 | 1 |"));
  REQUIRE(io::betti_markdown(BettiTable{}) == "(zero)\n");

  Report r{"demo", {}};
  r.add({"b", true, "exact", "", {{"lhs", b}}});
  r.add({"a", false, "exact", "mismatch", {}});
  auto rj = io::report_to_json(r, Json{{"seed", 7}});
  REQUIRE(rj["passed"] == false);
  REQUIRE(rj["failures"] == 1);
  REQUIRE(rj["config"]["seed"] == 7);
  REQUIRE_THAT(io::report_markdown(r), ContainsSubstring("[FAIL] a"));
}
