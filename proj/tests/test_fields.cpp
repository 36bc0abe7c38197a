#include <catch_amalgamated.hpp>

#include "cubecalc/rep.hpp"

using namespace cubecalc;
using Q = Rational;

TEST_CASE("prime field arithmetic", "[fields]") {
  using F = Fp<7>;
  REQUIRE(F::from_int(-1) == F::from_int(6));
  REQUIRE(F::from_int(3) * F::from_int(5) == F::from_int(1));
  REQUIRE(F::from_int(3).inverse() == F::from_int(5));
  REQUIRE(F::parse("1/2") * F::from_int(2) == F::from_int(1));
  REQUIRE(F::from_int(4).to_string() == "4");
  REQUIRE_THROWS_AS(F::from_int(0).inverse(), UsageError);
}

TEST_CASE("rational arithmetic is exact", "[fields]") {
  Q a = Q::parse("3/2");
  REQUIRE(a.to_string() == "3/2");
  REQUIRE((a * Q::from_int(2)).to_string() == "3");
  REQUIRE(Q::parse("-4/6").to_string() == "-2/3");
  REQUIRE_THROWS_AS(Q::parse("1/0"), ParseError);
  REQUIRE_THROWS_AS(Q::parse("x"), ParseError);
}

TEST_CASE("field specs", "[fields]") {
  REQUIRE(FieldSpec::parse("fp:32003").characteristic == 32003);
  REQUIRE(FieldSpec::parse("q").kind == FieldSpec::Kind::Rationals);
  REQUIRE_THROWS_AS(FieldSpec::parse("fp:12"), ParseError);
  REQUIRE_THROWS_AS(FieldSpec::parse("reals"), ParseError);
  REQUIRE(FieldSpec::of<F2>().to_string() == "fp:2");
}

TEST_CASE("rank examples", "[fields]") {
  REQUIRE(rank(Matrix<Q>(0, 0)) == 0);
  REQUIRE(rank(Matrix<Q>::identity(3)) == 3);
  REQUIRE(rank(Matrix<Q>::from_ints(2, 2, {1, 2, 2, 4})) == 1);
}

TEST_CASE("kernel examples", "[fields]") {
  REQUIRE(kernel_basis(Matrix<Q>::identity(2)).empty());
  auto z = kernel_basis(Matrix<Q>::zero(2, 3));
  REQUIRE(z.size() == 3);
  REQUIRE(rank(null_space(Matrix<Q>::zero(2, 3))) == 3);
  auto k = kernel_basis(Matrix<F2>::from_ints(1, 2, {1, 1}));
  REQUIRE(k.size() == 1);
  REQUIRE(k[0] == Vec<F2>{F2::from_int(1), F2::from_int(1)});
}

TEST_CASE("solve examples", "[fields]") {
  Vec<Q> b{Q::from_int(4), Q::from_int(-1)};
  REQUIRE(solve(Matrix<Q>::identity(2), b) == b);
  REQUIRE_FALSE(solve(Matrix<Q>::zero(2, 2), b).has_value());
  auto x = solve(Matrix<Q>::from_ints(1, 1, {2}), Vec<Q>{Q::from_int(3)});
  REQUIRE(x);
  REQUIRE((*x)[0].to_string() == "3/2");
  REQUIRE_THROWS_AS(solve(Matrix<Q>::identity(3), b), UsageError);
}

TEST_CASE("elimination invariants on random matrices", "[fields]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = rng() % 7, c = rng() % 7;
    auto m = Matrix<F32003>::random(r, c, rng);
    // force rank deficiency now and then
    if (r > 1 && trial % 3 == 0)
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) + m(1, j);
    REQUIRE(rank(m) == rank(m.transpose()));
    auto ker = kernel_basis(m);
    REQUIRE(rank(m) + ker.size() == c);
    for (auto& v : ker) {
      auto mv = m * v;
      REQUIRE(std::all_of(mv.begin(), mv.end(), [](auto x) { return x.is_zero(); }));
    }
    Vec<F32003> x0(c);
    for (auto& e : x0) e = F32003::random(rng);
    auto b = m * x0;
    auto x = solve(m, b);
    REQUIRE(x);
    REQUIRE(m * *x == b);
    REQUIRE(rref(m).reduced == rref(m).reduced);
  }
}

TEST_CASE("inverse and complements", "[fields]") {
  std::mt19937_64 rng(3);
  auto g = random_invertible<Q>(4, rng);
  auto inv = inverse(g);
  REQUIRE(inv);
  REQUIRE(g * *inv == Matrix<Q>::identity(4));
  auto a = Matrix<Q>::from_ints(3, 1, {1, 1, 0});
  auto comp = complement_columns(a);
  REQUIRE(comp.size() == 2);
  REQUIRE(rank(Matrix<Q>::hcat(a, unit_columns<Q>(3, comp))) == 3);
}
