#pragma once

// Exact ground fields. Everything downstream is templated on a type
// satisfying the Field concept; no floating point is used anywhere.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "cubecalc/error.hpp"

namespace cubecalc {

constexpr bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

template <class F>
concept Field = std::regular<F> && requires(F a, F b, std::int64_t i, std::mt19937_64& rng,
                                            std::string_view s) {
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a / b } -> std::same_as<F>;
  { -a } -> std::same_as<F>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.inverse() } -> std::same_as<F>;
  { a.to_string() } -> std::same_as<std::string>;
  { F::from_int(i) } -> std::same_as<F>;
  { F::random(rng) } -> std::same_as<F>;
  { F::parse(s) } -> std::same_as<F>;
  { F::name() } -> std::same_as<std::string>;
  { F::characteristic() } -> std::same_as<std::uint32_t>;
};

namespace detail {

inline std::int64_t parse_int(std::string_view s) {
  if (s.empty()) throw ParseError("empty field element");
  std::size_t pos = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw ParseError("malformed field element '" + std::string(s) + "'");
  std::int64_t v = 0;
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9')
      throw ParseError("malformed field element '" + std::string(s) + "'");
    v = v * 10 + (s[pos] - '0');
    if (v > (std::int64_t{1} << 60)) throw ParseError("field element out of range");
  }
  return neg ? -v : v;
}

}  // namespace detail

/// Prime field F_P with P fixed at compile time.
template <std::uint32_t P>
class Fp {
  static_assert(is_prime(P), "Fp requires a prime modulus");

 public:
  constexpr Fp() = default;

  static constexpr Fp from_int(std::int64_t x) {
    std::int64_t r = x % static_cast<std::int64_t>(P);
    if (r < 0) r += P;
    return raw(static_cast<std::uint32_t>(r));
  }

  static Fp random(std::mt19937_64& rng) {
    return raw(static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, P - 1)(rng)));
  }

  // Accepts "17", "-3" and "a/b".
  static Fp parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return from_int(detail::parse_int(s));
    Fp den = from_int(detail::parse_int(s.substr(slash + 1)));
    if (den.is_zero()) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return from_int(detail::parse_int(s.substr(0, slash))) / den;
  }

  static std::string name() { return "Fp:" + std::to_string(P); }
  static constexpr std::uint32_t characteristic() { return P; }

  constexpr std::uint32_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  constexpr Fp operator+(Fp o) const {
    std::uint32_t s = v_ + o.v_;
    return raw(s >= P ? s - P : s);
  }
  constexpr Fp operator-(Fp o) const { return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_); }
  constexpr Fp operator-() const { return raw(v_ == 0 ? 0 : P - v_); }
  constexpr Fp operator*(Fp o) const {
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % P));
  }
  Fp operator/(Fp o) const { return *this * o.inverse(); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  Fp inverse() const {
    if (v_ == 0) throw UsageError("division by zero in " + name());
    // Fermat: a^(P-2)
    std::uint64_t result = 1, base = v_, e = P - 2;
    while (e) {
      if (e & 1) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return raw(static_cast<std::uint32_t>(result));
  }

  std::string to_string() const { return std::to_string(v_); }

  friend constexpr bool operator==(Fp, Fp) = default;

 private:
  static constexpr Fp raw(std::uint32_t v) {
    Fp f;
    f.v_ = v;
    return f;
  }
  std::uint32_t v_ = 0;
};

/// The rationals, backed by GMP so that no overflow can occur.
class Rational {
 public:
  Rational() = default;
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Rational from_int(std::int64_t x) { return Rational(mpq_class(static_cast<long>(x))); }

  // Small integers keep coefficient growth in check while still being
  // generic enough for the randomized isomorphism search.
  static Rational random(std::mt19937_64& rng) {
    return from_int(std::uniform_int_distribution<int>(-50, 50)(rng));
  }

  static Rational parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return from_int(detail::parse_int(s));
    std::int64_t num = detail::parse_int(s.substr(0, slash));
    std::int64_t den = detail::parse_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return Rational(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
  }

  static std::string name() { return "Q"; }
  static constexpr std::uint32_t characteristic() { return 0; }

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw UsageError("division by zero in Q");
    return Rational(mpq_class(q_ / o.q_));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  Rational inverse() const {
    if (is_zero()) throw UsageError("division by zero in Q");
    return Rational(mpq_class(1 / q_));
  }

  std::string to_string() const { return q_.get_str(); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_{0};
};

using F2 = Fp<2>;
using F32003 = Fp<32003>;
using DefaultField = F32003;

static_assert(Field<F2>);
static_assert(Field<F32003>);
static_assert(Field<Rational>);

/// Runtime description of a field, as carried in JSON and on the command line.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::PrimeField;
  std::uint32_t characteristic = 32003;

  // "fp:32003", "fp:2", "q"
  static FieldSpec parse(std::string_view s) {
    if (s == "q" || s == "Q") return {Kind::Rationals, 0};
    if (s.substr(0, 3) == "fp:" || s.substr(0, 3) == "Fp:") {
      std::int64_t p = detail::parse_int(s.substr(3));
      if (p <= 0 || p > 0xffffffffLL || !is_prime(static_cast<std::uint64_t>(p)))
        throw ParseError("characteristic must be prime: '" + std::string(s) + "'");
      return {Kind::PrimeField, static_cast<std::uint32_t>(p)};
    }
    throw ParseError("unknown field '" + std::string(s) + "' (expected fp:<p> or q)");
  }

  std::string to_string() const {
    return kind == Kind::Rationals ? "q" : "fp:" + std::to_string(characteristic);
  }

  template <Field F>
  static FieldSpec of() {
    if (F::characteristic() == 0) return {Kind::Rationals, 0};
    return {Kind::PrimeField, F::characteristic()};
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

}  // namespace cubecalc
