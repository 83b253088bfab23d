#pragma once

#include <string>
#include <vector>

#include "kl_index.hpp"
#include "polynomial.hpp"

namespace flagalg {

/// chi_1(P, t) = sum_X mu(0, X) t^{rk P - rk X}.
inline Polynomial char_poly1(const Poset& p) {
  auto bottom = p.bottom();
  if (!bottom) fail(Errc::NotBoundedBelow, "characteristic polynomial needs a unique minimal element");
  const auto row = mobius_row(p, *bottom);
  Polynomial chi;
  for (Element x = 0; x < p.size(); ++x)
    if (row[x] != 0) chi.add_to(p.top_rank() - p.rank(x), row[x]);
  return chi;
}

namespace detail {

using Dense = std::vector<Integer>;  // ascending coefficients

inline void add_scaled(Dense& acc, const Dense& p, const Integer& scale, std::size_t shift) {
  if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) acc[i + shift] += p[i] * scale;
}

template <class R>
Polynomial kl_recursive_as(const Poset& p, Element bottom) {
  const MobiusMatrix<R> mu(p);
  const int top = p.top_rank();
  std::vector<Dense> kl(p.size()), h(p.size());
  for (int level = top; level >= 0; --level) {
    for (Element f : p.level(level)) {
      const int rf = top - level;
      if (rf == 0) {
        kl[f] = {1};
        h[f] = {1};
        continue;
      }
      // S = sum_{G > F} t^{rk G - rk F} KL_G ; R = S + sum_{X > F} mu(F, X) H_X
      Dense s, r;
      BitMatrix::for_each_bit(p.up_set(f), [&](std::size_t gi) {
        const auto g = static_cast<Element>(gi);
        if (g == f) return;
        const auto shift = static_cast<std::size_t>(p.rank(g) - level);
        add_scaled(s, kl[g], 1, shift);
        const R m = mu(f, g);
        if (m != R{0}) add_scaled(r, h[g], to_integer(m), 0);
      });
      add_scaled(r, s, 1, 0);
      for (std::size_t d = static_cast<std::size_t>(rf) + 1; d < r.size(); ++d) {
        if (r[d] != 0) fail(Errc::InconsistentRecursion, "right-hand side exceeds degree r at element " + p.label(f));
      }
      r.resize(static_cast<std::size_t>(rf) + 1, 0);
      auto at = [&](int d) -> const Integer& { return r[static_cast<std::size_t>(d)]; };
      Dense c;
      for (int i = 0; 2 * i < rf; ++i) {
        if (at(i) != -at(rf - i)) {
          fail(Errc::InconsistentRecursion, "low and high coefficients of degree " + std::to_string(i) +
                                                " disagree at element " + p.label(f));
        }
        c.push_back(at(rf - i));
      }
      if (rf % 2 == 0 && at(rf / 2) != 0) {
        fail(Errc::InconsistentRecursion, "nonzero middle coefficient at element " + p.label(f));
      }
      if (c.empty() || c[0] != 1) fail(Errc::InconsistentRecursion, "constant term is not 1 at element " + p.label(f));
      while (!c.empty() && c.back() == 0) c.pop_back();
      kl[f] = c;
      h[f] = c;
      add_scaled(h[f], s, 1, 0);
    }
  }
  return Polynomial::from_coefficients(kl[bottom]);
}

}  // namespace detail

/// Kazhdan-Lusztig polynomial from its defining recursion: for each element F,
/// t^{r_F} P_F(1/t) - P_F(t) = sum_{G > F} chi_1([F, G]) P_G, solved from the
/// top down. Each upper interval is computed once.
inline Polynomial kl_recursive(const Poset& p) {
  auto bottom = p.bottom();
  auto top = p.top();
  if (!bottom || !top) fail(Errc::NotBounded, "KL recursion needs a bottom and a top element");
  return with_overflow_fallback([&]<class R>() { return detail::kl_recursive_as<R>(p, *bottom); });
}

/// One summand of the closed coefficient formula.
struct KLTermValue {
  std::shared_ptr<const SymbolicIndexTerm> term;
  MultiIndex index;      // I at rank r
  MultiIndex partner;    // t(I) at rank r
  Integer w_index;       // W_I
  Integer w_partner;     // W_{t(I)}
  Integer contribution;  // sign * (W_{t(I)} - W_I)
};

namespace detail {

inline void require_lattice(const Poset& p) {
  if (!validate(p).lattice) fail(Errc::NotLattice, "closed KL formula needs a lattice");
}

inline void require_coefficient_range(const Poset& p, int k) {
  if (k < 1 || 2 * k >= p.top_rank()) {
    fail(Errc::RankTooSmall, "coefficient " + std::to_string(k) + " needs 1 <= k < rk/2, rk = " + std::to_string(p.top_rank()));
  }
}

inline std::vector<KLTermValue> kl_terms_unchecked(const Poset& p, int k, const Limits& limits) {
  const auto& family = index_family(k, limits);
  const int r = p.top_rank();
  std::vector<KLTermValue> out(family.size());
  parallel_for(family.size(), [&](std::size_t j) {
    auto& v = out[j];
    v.term = family[j];
    v.index = instantiate(v.term->entries, r);
    v.partner = instantiate(top_heavy(*v.term), r);
    v.w_index = whitney_second(p, v.index);
    v.w_partner = whitney_second(p, v.partner);
    v.contribution = v.w_partner - v.w_index;
    if (v.term->sign() < 0) v.contribution = -v.contribution;
  }, 1);
  return out;
}

inline Integer kl_coefficient_unchecked(const Poset& p, int k, const Limits& limits) {
  Integer total = 0;
  for (const auto& v : kl_terms_unchecked(p, k, limits)) total += v.contribution;
  return total;
}

}  // namespace detail

/// The per-term breakdown of kl_coefficient.
inline std::vector<KLTermValue> kl_coefficient_terms(const Poset& p, int k, const Limits& limits = default_limits()) {
  detail::require_lattice(p);
  detail::require_coefficient_range(p, k);
  return detail::kl_terms_unchecked(p, k, limits);
}

/// Coefficient of t^k: sum over I in S_k of (-1)^{s_k(I)} (W_{t(I)} - W_I).
inline Integer kl_coefficient(const Poset& p, int k, const Limits& limits = default_limits()) {
  detail::require_lattice(p);
  detail::require_coefficient_range(p, k);
  return detail::kl_coefficient_unchecked(p, k, limits);
}

/// 1 + sum_{1 <= k < r/2} kl_coefficient(P, k) t^k.
inline Polynomial kl_closed(const Poset& p, const Limits& limits = default_limits()) {
  detail::require_lattice(p);
  Polynomial out(1);
  for (int k = 1; 2 * k < p.top_rank(); ++k) out.add_to(k, detail::kl_coefficient_unchecked(p, k, limits));
  return out;
}

/// W_{r-1} - W_1.
inline Integer kl_linear_expression(const Poset& p) {
  const int r = p.top_rank();
  if (r < 3) fail(Errc::RankTooSmall, "linear coefficient needs rank >= 3");
  return whitney_second(p, {r - 1}) - whitney_second(p, {1});
}

/// W_{1,2} - W_{1,r-1} + W_{r-3,r-1} - W_{r-3,r-2} + W_{r-2} - W_2.
inline Integer kl_quadratic_expression(const Poset& p) {
  const int r = p.top_rank();
  if (r < 5) fail(Errc::RankTooSmall, "quadratic coefficient needs rank >= 5");
  return whitney_second(p, {1, 2}) - whitney_second(p, {1, r - 1}) + whitney_second(p, {r - 3, r - 1}) -
         whitney_second(p, {r - 3, r - 2}) + whitney_second(p, {r - 2}) - whitney_second(p, {2});
}

}  // namespace flagalg
