#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "kaschlab/error.hpp"
#include "kaschlab/field.hpp"

namespace kaschlab {

/// Dense univariate polynomial, coefficients from the constant term upward.
/// Always trimmed: the zero polynomial is the empty vector.
template <ExactField F>
struct Poly {
  F field;
  std::vector<typename F::Element> coeffs;

  Poly(F f, std::vector<typename F::Element> c = {}) : field(std::move(f)), coeffs(std::move(c)) { trim(); }

  static Poly monomial(const F& f, std::size_t degree, typename F::Element c) {
    std::vector<typename F::Element> v(degree + 1, f.zero());
    v[degree] = std::move(c);
    return Poly(f, std::move(v));
  }
  static Poly constant(const F& f, typename F::Element c) { return Poly(f, {std::move(c)}); }
  static Poly x(const F& f) { return Poly(f, {f.zero(), f.one()}); }

  void trim() {
    while (!coeffs.empty() && field.is_zero(coeffs.back())) coeffs.pop_back();
  }
  bool is_zero() const { return coeffs.empty(); }
  /// Degree, with -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  const typename F::Element& lead() const { return coeffs.back(); }
  typename F::Element at(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : field.zero(); }

  Poly monic() const {
    if (is_zero()) return *this;
    const auto inv = field.inv(lead());
    Poly p(*this);
    for (auto& c : p.coeffs) c = field.mul(c, inv);
    return p;
  }

  typename F::Element eval(const typename F::Element& x) const {
    auto acc = field.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
    return acc;
  }

  Poly derivative() const {
    std::vector<typename F::Element> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(field.mul(field.from_int(static_cast<std::int64_t>(i)), coeffs[i]));
    return Poly(field, std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<typename F::Element> c(std::max(a.coeffs.size(), b.coeffs.size()), a.field.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field.add(a.at(i), b.at(i));
    return Poly(a.field, std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<typename F::Element> c(std::max(a.coeffs.size(), b.coeffs.size()), a.field.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field.sub(a.at(i), b.at(i));
    return Poly(a.field, std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field);
    std::vector<typename F::Element> c(a.coeffs.size() + b.coeffs.size() - 1, a.field.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] = a.field.add(c[i + j], a.field.mul(a.coeffs[i], b.coeffs[j]));
    return Poly(a.field, std::move(c));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs == b.coeffs; }
};

template <ExactField F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  require(!b.is_zero(), ErrorCode::ZeroPolynomial, "polynomial division by zero");
  const F& f = a.field;
  if (a.degree() < b.degree()) return {Poly<F>(f), a};
  auto rem = a.coeffs;
  std::vector<typename F::Element> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), f.zero());
  const auto inv = f.inv(b.lead());
  for (long i = a.degree() - b.degree(); i >= 0; --i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto c = f.mul(rem[idx + b.coeffs.size() - 1], inv);
    quot[idx] = c;
    if (f.is_zero(c)) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) rem[idx + j] = f.sub(rem[idx + j], f.mul(c, b.coeffs[j]));
  }
  return {Poly<F>(f, std::move(quot)), Poly<F>(f, std::move(rem))};
}

/// Monic gcd (zero when both inputs are zero).
template <ExactField F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Returns (g, s, t) with s·a + t·b = g = gcd(a, b), g monic.
template <ExactField F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> ext_gcd(const Poly<F>& a, const Poly<F>& b) {
  const F& f = a.field;
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = Poly<F>::constant(f, f.one()), s1(f);
  Poly<F> t0(f), t1 = Poly<F>::constant(f, f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const auto inv = f.inv(r0.lead());
  const auto c = Poly<F>::constant(f, inv);
  return {r0 * c, s0 * c, t0 * c};
}

template <ExactField F>
Poly<F> mulmod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return divmod(a * b, m).second;
}

template <ExactField F>
Poly<F> powmod(Poly<F> base, std::uint64_t e, const Poly<F>& m) {
  Poly<F> result = divmod(Poly<F>::constant(base.field, base.field.one()), m).second;
  base = divmod(base, m).second;
  while (e != 0) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

/// Product of the distinct irreducible factors (char 0 or p > degree).
template <ExactField F>
Poly<F> squarefree_part(const Poly<F>& p) {
  const auto g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

/// Rabin's test: p of degree n over GF(q) is irreducible iff x^(q^n) = x mod p
/// and gcd(x^(q^(n/r)) − x, p) = 1 for every prime r dividing n.
inline bool is_irreducible(const Poly<PrimeField>& p) {
  const PrimeField& f = p.field;
  const long n = p.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const auto m = p.monic();
  const auto x = Poly<PrimeField>::x(f);
  auto frobenius_power = [&](long k) {
    auto y = x;
    for (long i = 0; i < k; ++i) y = powmod(y, f.characteristic(), m);
    return y;
  };
  if (!(frobenius_power(n) == divmod(x, m).second)) return false;
  for (long r = 2; r <= n; ++r) {
    bool prime = true;
    for (long t = 2; t * t <= r; ++t) prime = prime && r % t != 0;
    if (!prime || n % r != 0) continue;
    if (gcd(m, frobenius_power(n / r) - x).degree() != 0) return false;
  }
  return true;
}

namespace detail {

inline void collect_rational_roots(const Poly<RationalField>& p, std::vector<mpq_class>& roots) {
  // Primitive integer form.
  mpz_class lcm_den = 1;
  for (const auto& c : p.coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : p.coeffs) ints.push_back(mpz_class(c * lcm_den));
  std::size_t shift = 0;
  while (shift < ints.size() && ints[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(0);
  ints.erase(ints.begin(), ints.begin() + static_cast<std::ptrdiff_t>(shift));
  if (ints.size() <= 1) return;

  auto divisors = [](mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
      }
      require(d < 20'000'000, ErrorCode::SplittingFailed,
              "rational root search exceeded its divisor budget; try a GF(p) field");
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
  };
  const auto num_divs = divisors(ints.front());
  const auto den_divs = divisors(ints.back());
  for (const auto& a : num_divs)
    for (const auto& b : den_divs)
      for (int sign : {1, -1}) {
        mpq_class cand(sign * a, b);
        cand.canonicalize();
        if (sgn(p.eval(cand)) == 0) roots.push_back(cand);
      }
}

inline void split_linear_product(const Poly<PrimeField>& g, std::vector<std::uint32_t>& roots) {
  const PrimeField& f = g.field;
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    roots.push_back(f.neg(g.monic().coeffs[0]));
    return;
  }
  const std::uint64_t half = (f.characteristic() - 1) / 2;
  for (std::uint32_t a = 0; a < f.characteristic(); ++a) {
    Poly<PrimeField> shift(f, {a, f.one()});
    auto h = powmod(shift, half, g) - Poly<PrimeField>::constant(f, f.one());
    auto d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear_product(d, roots);
      split_linear_product(divmod(g, d).first, roots);
      return;
    }
  }
  fail(ErrorCode::SplittingFailed, "equal-degree splitting did not terminate");
}

inline void collect_prime_roots(const Poly<PrimeField>& p, std::vector<std::uint32_t>& roots) {
  const PrimeField& f = p.field;
  const std::uint32_t q = f.characteristic();
  if (q <= 4096) {
    for (std::uint32_t a = 0; a < q; ++a)
      if (p.eval(a) == 0) roots.push_back(a);
    return;
  }
  const auto m = p.monic();
  // gcd(p, x^q − x) is the product of the distinct linear factors.
  const auto xq = powmod(Poly<PrimeField>::x(f), q, m);
  const auto g = gcd(m, xq - Poly<PrimeField>::x(f));
  split_linear_product(g, roots);
}

}  // namespace detail

/// All roots of a non-zero polynomial that lie in the field, ascending and
/// without repetition.
template <ExactField F>
std::vector<typename F::Element> factor_linear_roots(const Poly<F>& p) {
  require(!p.is_zero(), ErrorCode::ZeroPolynomial, "factor_linear_roots of the zero polynomial");
  std::vector<typename F::Element> roots;
  if constexpr (std::is_same_v<F, RationalField>) {
    detail::collect_rational_roots(p, roots);
  } else {
    detail::collect_prime_roots(p, roots);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace kaschlab
