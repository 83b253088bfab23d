#pragma once

#include <string>

#include "kl_poly.hpp"
#include "mobius.hpp"
#include "polynomial.hpp"

namespace flagalg {

/// chi_k(P; t_1..t_k) = sum over flags X_1 <= ... <= X_k of
///   mu_{k+1}(0, X_1, ..., X_k) t_1^{rk P - rk X_1} ... t_k^{rk P - rk X_k}.
inline MultiPoly char_poly_k(const Poset& p, int k, const Limits& limits = default_limits()) {
  if (k < 1) fail(Errc::InvalidParams, "characteristic polynomial needs k >= 1");
  auto bottom = p.bottom();
  if (!bottom) fail(Errc::NotBoundedBelow, "characteristic polynomial needs a unique minimal element");
  auto mu = mobius_left_rooted(p, k + 1, *bottom, limits);
  const FlagTable& t = *mu.table();
  MultiPoly chi(k);
  MultiPoly::Exponents e(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (mu.at(i) == 0) continue;
    auto f = t.flag(i);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = p.top_rank() - p.rank(f[j + 1]);
    chi.add_term(e, mu.at(i));
  }
  return chi;
}

namespace detail {

/// sum_{i=0}^{m} (-1)^i t_1 t_2 ... t_{m-i}, in k variables.
inline MultiPoly alternating_prefix_sum(int k, int m) {
  MultiPoly out(k);
  for (int i = 0; i <= m; ++i) {
    MultiPoly::Exponents e(static_cast<std::size_t>(k), 0);
    for (int j = 0; j < m - i; ++j) e[static_cast<std::size_t>(j)] = 1;
    out.add_term(e, i % 2 == 0 ? 1 : -1);
  }
  return out;
}

}  // namespace detail

/// (sum_{i=0}^{k} (-1)^i t_1 ... t_{k-i})^n.
inline MultiPoly boolean_char_k(int n, int k, const Limits& limits = default_limits()) {
  if (k < 1) fail(Errc::InvalidParams, "boolean characteristic polynomial needs k >= 1");
  if (n < 0) fail(Errc::InvalidParams, "boolean lattice rank must be >= 0");
  if (n > limits.max_boolean_rank) {
    fail(Errc::SizeLimitExceeded, "boolean rank " + std::to_string(n) + " exceeds cap " + std::to_string(limits.max_boolean_rank));
  }
  return detail::alternating_prefix_sum(k, k).pow(n);
}

/// chi_k(A') - (sum_{i=0}^{k-1} (-1)^i t_1 ... t_{k-1-i}) chi_k(A''): the shape a
/// deletion-restriction rule would have.
inline MultiPoly dr_rhs(const MultiPoly& chi_deletion, const MultiPoly& chi_restriction, int k) {
  if (chi_deletion.variables() != k || chi_restriction.variables() != k) {
    fail(Errc::VariableCountMismatch, "deletion/restriction polynomials must both have " + std::to_string(k) + " variables");
  }
  return chi_deletion - detail::alternating_prefix_sum(k, k - 1) * chi_restriction;
}

}  // namespace flagalg
