#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mobius.hpp"

namespace flagalg {

/// Weakly increasing rank levels i_1 <= ... <= i_k.
using MultiIndex = std::vector<int>;

namespace detail {

inline void check_index(const Poset& p, const MultiIndex& idx) {
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] < 0 || idx[j] > p.top_rank()) {
      fail(Errc::IndexOutOfRange, "rank index " + std::to_string(idx[j]) + " outside [0," + std::to_string(p.top_rank()) + "]");
    }
    if (j > 0 && idx[j] < idx[j - 1]) fail(Errc::IndexOutOfRange, "multi-index must be weakly increasing");
  }
}

inline std::string index_string(const MultiIndex& idx) {
  std::string s;
  for (std::size_t j = 0; j < idx.size(); ++j) s += (j ? "," : "") + std::to_string(idx[j]);
  return s;
}

template <class R>
R whitney_second_as(const Poset& p, const MultiIndex& idx) {
  if (idx.empty()) return R{1};
  const auto& first = p.level(idx[0]);
  std::vector<R> v(first.size(), R{1});
  for (std::size_t j = 1; j < idx.size(); ++j) {
    if (idx[j] == idx[j - 1]) continue;
    const auto& lo = p.level(idx[j - 1]);
    const auto& hi = p.level(idx[j]);
    std::vector<R> next(hi.size(), R{0});
    for (std::size_t b = 0; b < hi.size(); ++b)
      for (std::size_t a = 0; a < lo.size(); ++a)
        if (p.leq(lo[a], hi[b])) next[b] = next[b] + v[a];
    v = std::move(next);
  }
  R total{0};
  for (const auto& x : v) total = total + x;
  return total;
}

}  // namespace detail

/// W_I: the number of flags X_1 <= ... <= X_k with rk X_j = i_j, by level
/// matrix products.
inline Integer whitney_second(const Poset& p, const MultiIndex& idx) {
  detail::check_index(p, idx);
  return with_overflow_fallback([&]<class R>() { return to_integer(detail::whitney_second_as<R>(p, idx)); });
}

/// W_I by explicit flag enumeration; an oracle for whitney_second.
inline Integer whitney_second_naive(const Poset& p, const MultiIndex& idx) {
  detail::check_index(p, idx);
  if (idx.empty()) return 1;
  Integer count = 0;
  auto extend = [&](auto&& self, std::size_t j, Element prev) -> void {
    if (j == idx.size()) {
      ++count;
      return;
    }
    for (Element x : p.level(idx[j]))
      if (p.leq(prev, x)) self(self, j + 1, x);
  };
  for (Element x : p.level(idx[0])) extend(extend, 1, x);
  return count;
}

/// w_I: sum of mu_k over the flags with rk X_j = i_j. mu_1 is taken to be 1.
inline Integer whitney_first(const Poset& p, const MultiIndex& idx, const Limits& limits = default_limits()) {
  detail::check_index(p, idx);
  if (idx.empty()) return 1;
  if (idx.size() == 1) return Integer(p.level(idx[0]).size());
  const int k = static_cast<int>(idx.size());
  Integer total = 0;
  for (Element head : p.level(idx[0])) {
    auto mu = mobius_left_rooted(p, k, head, limits);
    const FlagTable& t = *mu.table();
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto f = t.flag(i);
      bool match = true;
      for (std::size_t j = 1; j < f.size() && match; ++j) match = p.rank(f[j]) == idx[j];
      if (match) total += mu.at(i);
    }
  }
  return total;
}

/// sum over I in [n-1] of (-1)^{|I|+1} W_{I u {n}}.
inline Integer whitney_first_via_interpolation(const Poset& p, int n) {
  if (n < 1 || n > p.top_rank()) {
    fail(Errc::IndexOutOfRange, "interpolation needs 1 <= n <= rk = " + std::to_string(p.top_rank()));
  }
  const std::uint64_t subsets = std::uint64_t{1} << (n - 1);
  std::vector<Integer> parts(subsets);
  parallel_for(subsets, [&](std::size_t mask) {
    MultiIndex idx;
    for (int j = 1; j < n; ++j)
      if ((mask >> (j - 1)) & 1u) idx.push_back(j);
    idx.push_back(n);
    Integer w = whitney_second(p, idx);
    parts[mask] = (idx.size() % 2 == 0) ? w : Integer(-w);
  }, 16);
  Integer total = 0;
  for (const auto& x : parts) total += x;
  return total;
}

/// Region counts (a, b) from the flag f-vector:
///   a = sum_I (-1)^{|I| + max I} W_I,  b = (-1)^n sum_I (-1)^{|I|} W_I
/// over I in [n], n = rk P, with max of the empty set 0 and W_empty = 1.
inline std::pair<Integer, Integer> region_counts(const Poset& p) {
  if (!p.bottom()) fail(Errc::NotBoundedBelow, "region counts need a unique minimal element");
  const int n = p.top_rank();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<Integer> wa(subsets), wb(subsets);
  parallel_for(subsets, [&](std::size_t mask) {
    MultiIndex idx;
    for (int j = 1; j <= n; ++j)
      if ((mask >> (j - 1)) & 1u) idx.push_back(j);
    Integer w = whitney_second(p, idx);
    const int u = idx.empty() ? 0 : idx.back();
    const auto size = static_cast<int>(idx.size());
    wa[mask] = ((size + u) % 2 == 0) ? w : Integer(-w);
    wb[mask] = (size % 2 == 0) ? w : Integer(-w);
  }, 16);
  Integer a = 0, b = 0;
  for (std::size_t i = 0; i < subsets; ++i) {
    a += wa[i];
    b += wb[i];
  }
  if (n % 2 != 0) b = -b;
  return {a, b};
}

}  // namespace flagalg
