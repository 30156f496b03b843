#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "kaschlab/error.hpp"

namespace kaschlab {

/// Runtime description of a ground field: GF(p) for a prime p < 2^31, or QQ.
struct FieldSpec {
  enum class Kind { PrimeField, Rationals };

  Kind kind = Kind::Rationals;
  std::uint32_t characteristic = 0;

  static FieldSpec rationals() { return {Kind::Rationals, 0}; }
  static FieldSpec prime(std::uint32_t p);

  bool is_prime_field() const { return kind == Kind::PrimeField; }
  std::string to_string() const {
    return is_prime_field() ? "GF(" + std::to_string(characteristic) + ")" : "QQ";
  }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldSpec FieldSpec::prime(std::uint32_t p) {
  require(p < (1u << 31) && is_prime(p), ErrorCode::InvalidField,
          "GF(p) requires a prime p < 2^31, got " + std::to_string(p));
  return {Kind::PrimeField, p};
}

/// Parses "QQ" or "GF(p)".
inline FieldSpec parse_field_spec(const std::string& text) {
  if (text == "QQ" || text == "Q") return FieldSpec::rationals();
  if (text.size() > 4 && text.starts_with("GF(") && text.back() == ')') {
    const std::string digits = text.substr(3, text.size() - 4);
    if (!digits.empty() && digits.size() <= 10 &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      const auto p = std::stoull(digits);
      if (p < (1ull << 31)) return FieldSpec::prime(static_cast<std::uint32_t>(p));
    }
  }
  fail(ErrorCode::InvalidField, "unrecognised field '" + text + "' (expected QQ or GF(p))");
}

/// Exact field with value-type elements. Elements compare with ==; all
/// arithmetic goes through the field object since GF(p) carries its modulus.
template <class F>
concept ExactField = std::copy_constructible<F> && requires(const F& f, const typename F::Element& a,
                                                             const mpq_class& q, std::int64_t n) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.add(a, a) } -> std::same_as<typename F::Element>;
  { f.sub(a, a) } -> std::same_as<typename F::Element>;
  { f.mul(a, a) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.from_int(n) } -> std::same_as<typename F::Element>;
  { f.from_rational(q) } -> std::same_as<typename F::Element>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.spec() } -> std::same_as<FieldSpec>;
  { a == a } -> std::convertible_to<bool>;
};

class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(FieldSpec::prime(p).characteristic) {}

  std::uint32_t characteristic() const { return p_; }
  FieldSpec spec() const { return {FieldSpec::Kind::PrimeField, p_}; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element add(Element a, Element b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : static_cast<Element>(std::uint64_t{a} + p_ - b); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const { return static_cast<Element>(std::uint64_t{a} * b % p_); }
  Element inv(Element a) const {
    require(a != 0, ErrorCode::DimensionMismatch, "inverse of zero in " + spec().to_string());
    return pow(a, p_ - 2);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const {
    std::uint64_t result = 1, base = a;
    while (e != 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<Element>(result);
  }
  bool is_zero(Element a) const { return a == 0; }
  Element from_int(std::int64_t n) const {
    const std::int64_t r = n % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_uint(std::uint64_t n) const { return static_cast<Element>(n % p_); }
  Element from_rational(const mpq_class& q) const {
    mpz_class num = q.get_num() % p_, den = q.get_den() % p_;
    if (num < 0) num += p_;
    require(den != 0, ErrorCode::InvalidField,
            "denominator " + q.get_den().get_str() + " vanishes in " + spec().to_string());
    return div(static_cast<Element>(num.get_ui()), static_cast<Element>(den.get_ui()));
  }
  std::string to_string(Element a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using Element = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    require(sgn(a) != 0, ErrorCode::DimensionMismatch, "inverse of zero in QQ");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  Element from_int(std::int64_t n) const { return mpq_class(mpz_class(static_cast<long>(n))); }
  Element from_rational(const mpq_class& q) const {
    mpq_class r(q);
    r.canonicalize();
    return r;
  }
  std::string to_string(const Element& a) const { return a.get_str(); }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

/// Calls fn with a concrete field object for the runtime description.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_prime_field()) return std::forward<Fn>(fn)(PrimeField(spec.characteristic));
  return std::forward<Fn>(fn)(RationalField{});
}

}  // namespace kaschlab
