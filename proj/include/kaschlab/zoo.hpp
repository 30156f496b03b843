#pragma once

#include <array>
#include <string>
#include <vector>

#include "kaschlab/constructors.hpp"

namespace kaschlab {

namespace detail {

template <ExactField F>
Algebra<F> algebra_from_products(const F& f, std::string name, std::vector<std::string> labels,
                                 std::initializer_list<std::array<std::size_t, 3>> products,
                                 std::initializer_list<std::size_t> unit) {
  auto data = AlgebraData<F>::zeros(f, std::move(name), std::move(labels));
  for (const auto& [i, j, k] : products) data.at(i, j, k) = f.one();
  for (auto u : unit) data.unit[u] = f.one();
  return Algebra<F>(std::move(data));
}

}  // namespace detail

/// Four-dimensional algebra S[x;σ]/(x²) with S = k×k and σ swapping the two
/// idempotents: basis e1, e2, e1x, e2x, with x·e1 = e2·x.
template <ExactField F>
Algebra<F> skew_dual_numbers(const F& f) {
  // e_i e_j = δ e_i;  e_i (e_j x) = δ e_j x;  (e_i x) e_j = e_i σ(e_j) x.
  return detail::algebra_from_products(f, "R4", {"e1", "e2", "e1x", "e2x"},
                                       {{0, 0, 0}, {1, 1, 1}, {0, 2, 2}, {1, 3, 3}, {2, 1, 2}, {3, 0, 3}}, {0, 1});
}

/// Five-dimensional subalgebra of M4(k) spanned by a = E11+E22+E33, b = E13,
/// c = E14, d = E24, e = E44. Right Kasch but not left Kasch.
template <ExactField F>
Algebra<F> lam_five_dimensional(const F& f) {
  return detail::algebra_from_products(
      f, "A5", {"a", "b", "c", "d", "e"},
      {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {0, 2, 2}, {0, 3, 3}, {2, 4, 2}, {3, 4, 3}, {4, 4, 4}}, {0, 4});
}

inline std::vector<std::string> zoo_names() { return {"T2", "T3", "R4", "A5", "kxk", "dual_numbers", "M2"}; }

/// Prebuilt example algebras: "T<n>" or "Tn:<n>" (upper triangular), "R4",
/// "A5", "kxk", "dual_numbers", "M2".
template <ExactField F>
Algebra<F> zoo(const std::string& name, const F& f) {
  auto triangular_size = [&]() -> std::size_t {
    std::string digits;
    if (name.starts_with("Tn:")) digits = name.substr(3);
    else if (name.size() > 1 && name[0] == 'T') digits = name.substr(1);
    if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos) return 0;
    return std::stoul(digits);
  };
  if (const auto n = triangular_size(); n >= 1) return triangular_algebra(f, n);
  if (name == "R4") return skew_dual_numbers(f);
  if (name == "A5") return lam_five_dimensional(f);
  if (name == "kxk") return detail::algebra_from_products(f, "kxk", {"e1", "e2"}, {{0, 0, 0}, {1, 1, 1}}, {0, 1});
  if (name == "dual_numbers") return truncated_poly(f, 2);
  if (name == "M2") return matrix_algebra(f, 2);
  fail(ErrorCode::UnknownZooName, "no zoo algebra named '" + name + "'");
}

}  // namespace kaschlab
