#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <vector>

#include "incidence.hpp"

namespace flagalg {

namespace detail {

template <class R>
IncidenceFunction<Integer> widen(const IncidenceFunction<R>& f) {
  if constexpr (std::is_same_v<R, Integer>) {
    return f;
  } else {
    std::vector<Integer> v;
    v.reserve(f.size());
    for (const auto& x : f.values()) v.push_back(to_integer(x));
    return IncidenceFunction<Integer>(f.table(), std::move(v));
  }
}

inline std::vector<std::size_t> order_by_rank_sum(const FlagTable& t, std::size_t first, std::size_t last,
                                                  bool descending) {
  std::vector<std::size_t> idx(last - first);
  std::iota(idx.begin(), idx.end(), first);
  std::vector<int> key(t.size());
  for (auto i : idx) key[i] = t.rank_sum(i);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? key[a] > key[b] : key[a] < key[b];
  });
  return idx;
}

template <class R>
void solve_left_block(const FlagTable& t, std::vector<R>& mu, std::size_t first, std::size_t last) {
  const auto n = static_cast<std::size_t>(t.arity());
  Flag probe(n);
  for (std::size_t idx : order_by_rank_sum(t, first, last, false)) {
    auto x = t.flag(idx);
    probe[0] = x[0];
    R acc{0};
    for_each_interleaving(t.poset(), x, [&](std::span<const Element> y) {
      if (std::equal(y.begin(), y.end(), x.begin() + 1)) return;
      std::copy(y.begin(), y.end(), probe.begin() + 1);
      acc = acc + mu[*t.find(probe)];
    });
    const bool constant = std::all_of(x.begin(), x.end(), [&](Element e) { return e == x[0]; });
    mu[idx] = R{constant ? 1 : 0} - acc;
  }
}

}  // namespace detail

/// Left Möbius function: the solution of mu * zeta = delta_{[k]}. Flags with a
/// common first entry form an independent triangular system, solved by
/// increasing rank sum. Works on rooted tables as well.
template <class R>
IncidenceFunction<R> mobius_left_as(const std::shared_ptr<const FlagTable>& t) {
  detail::require_algebra_arity(t->arity());
  std::vector<R> mu(t->size(), R{0});
  if (t->root()) {
    detail::solve_left_block(*t, mu, 0, t->size());
  } else {
    parallel_for(t->poset().size(), [&](std::size_t head) {
      auto [first, last] = t->head_range(static_cast<Element>(head));
      detail::solve_left_block(*t, mu, first, last);
    }, 1);
  }
  return IncidenceFunction<R>(t, std::move(mu));
}

/// mu_k on the full flag set, exact, verified by convolving with zeta.
inline IncidenceFunction<Integer> mobius_left(const std::shared_ptr<const FlagTable>& t, bool verify = true) {
  auto mu = with_overflow_fallback([&]<class R>() { return detail::widen(mobius_left_as<R>(t)); });
  if (verify && !t->root() && convolve(mu, zeta_fn<Integer>(t)) != delta_all<Integer>(t)) {
    fail(Errc::InconsistentRecursion, "mu * zeta != delta after solving");
  }
  return mu;
}

inline IncidenceFunction<Integer> mobius_left(const Poset& p, int k, const Limits& limits = default_limits()) {
  detail::require_algebra_arity(k);
  return mobius_left(FlagTable::build(p, k, limits));
}

/// mu_k restricted to flags starting at `head`.
inline IncidenceFunction<Integer> mobius_left_rooted(const Poset& p, int k, Element head,
                                                     const Limits& limits = default_limits()) {
  detail::require_algebra_arity(k);
  auto t = FlagTable::build_rooted(p, k, head, limits);
  return with_overflow_fallback([&]<class R>() { return detail::widen(mobius_left_as<R>(t)); });
}

/// Right Möbius function: zeta * mu^r = delta_{[k]}, solved by decreasing rank sum.
template <class R>
IncidenceFunction<R> mobius_right_as(const std::shared_ptr<const FlagTable>& t) {
  detail::require_full_table(*t);
  detail::require_algebra_arity(t->arity());
  const auto n = static_cast<std::size_t>(t->arity());
  std::vector<R> mu(t->size(), R{0});
  Flag probe(n);
  for (std::size_t idx : detail::order_by_rank_sum(*t, 0, t->size(), true)) {
    auto x = t->flag(idx);
    probe[n - 1] = x[n - 1];
    R acc{0};
    detail::for_each_interleaving(t->poset(), x, [&](std::span<const Element> y) {
      if (std::equal(y.begin(), y.end(), x.begin())) return;
      std::copy(y.begin(), y.end(), probe.begin());
      acc = acc + mu[*t->find(probe)];
    });
    const bool constant = std::all_of(x.begin(), x.end(), [&](Element e) { return e == x[0]; });
    mu[idx] = R{constant ? 1 : 0} - acc;
  }
  return IncidenceFunction<R>(t, std::move(mu));
}

inline IncidenceFunction<Integer> mobius_right(const std::shared_ptr<const FlagTable>& t, bool verify = true) {
  auto mu = with_overflow_fallback([&]<class R>() { return detail::widen(mobius_right_as<R>(t)); });
  if (verify && convolve(zeta_fn<Integer>(t), mu) != delta_all<Integer>(t)) {
    fail(Errc::InconsistentRecursion, "zeta * mu^r != delta after solving");
  }
  return mu;
}

inline IncidenceFunction<Integer> mobius_right(const Poset& p, int k, const Limits& limits = default_limits()) {
  detail::require_algebra_arity(k);
  return mobius_right(FlagTable::build(p, k, limits));
}

namespace detail {

inline std::vector<Element> elements_by_rank(const Poset& p) {
  std::vector<Element> order(p.size());
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return p.rank(a) < p.rank(b); });
  return order;
}

// row[y] = mu(x, y) for every y; `order` lists elements by rank.
template <class R>
void mobius_row_into(const Poset& p, Element x, const std::vector<Element>& order, R* row) {
  row[x] = R{1};
  for (Element y : order) {
    if (y == x || !p.leq(x, y)) continue;
    R acc{0};
    BitMatrix::for_each_common_bit(p.up_set(x), p.down_set(y), [&](std::size_t z) {
      if (z != y) acc = acc + row[z];
    });
    row[y] = R{0} - acc;
  }
}

}  // namespace detail

/// mu(x, y) for all y, zero where x is not below y.
inline std::vector<Integer> mobius_row(const Poset& p, Element x) {
  if (x >= p.size()) fail(Errc::ElementOutOfRange, "element " + std::to_string(x) + " not in poset");
  return with_overflow_fallback([&]<class R>() {
    std::vector<R> row(p.size(), R{0});
    detail::mobius_row_into(p, x, detail::elements_by_rank(p), row.data());
    std::vector<Integer> out;
    out.reserve(row.size());
    for (const auto& v : row) out.push_back(to_integer(v));
    return out;
  });
}

/// Classical Möbius function mu(x, y) as a dense row-major matrix, zero off
/// comparable pairs.
template <class R>
class MobiusMatrix {
 public:
  explicit MobiusMatrix(const Poset& p) : n_(p.size()), v_(n_ * n_, R{0}) {
    const auto order = detail::elements_by_rank(p);
    parallel_for(n_, [&](std::size_t x) { detail::mobius_row_into(p, static_cast<Element>(x), order, v_.data() + x * n_); }, 8);
  }

  std::size_t size() const noexcept { return n_; }
  const R& operator()(Element x, Element y) const { return v_[x * n_ + y]; }

 private:
  std::size_t n_;
  std::vector<R> v_;
};

}  // namespace flagalg
