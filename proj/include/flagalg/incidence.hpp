#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "flags.hpp"
#include "integer.hpp"
#include "parallel.hpp"

namespace flagalg {

/// An element of the n-th partial flag incidence algebra: one ring value per
/// flag of a FlagTable, stored densely in table order. Values off the flag set
/// are zero and never stored.
template <class R>
class IncidenceFunction {
 public:
  using value_type = R;

  IncidenceFunction() = default;
  IncidenceFunction(std::shared_ptr<const FlagTable> table, std::vector<R> values)
      : table_(std::move(table)), values_(std::move(values)) {
    if (!table_ || values_.size() != table_->size()) fail(Errc::InvalidParams, "value count does not match flag count");
  }

  static IncidenceFunction zero(std::shared_ptr<const FlagTable> table) {
    std::vector<R> v(table->size(), R{0});
    return IncidenceFunction(std::move(table), std::move(v));
  }

  const std::shared_ptr<const FlagTable>& table() const noexcept { return table_; }
  const Poset& poset() const noexcept { return table_->poset(); }
  int arity() const noexcept { return table_->arity(); }
  std::size_t size() const noexcept { return values_.size(); }

  const R& at(std::size_t i) const { return values_.at(i); }
  R& at(std::size_t i) { return values_.at(i); }
  const std::vector<R>& values() const noexcept { return values_; }

  /// Value on an arbitrary tuple; zero when the tuple is not a flag.
  R operator()(std::span<const Element> f) const {
    auto i = table_->find(f);
    return i ? values_[*i] : R{0};
  }
  R operator()(std::initializer_list<Element> f) const { return (*this)(std::span<const Element>(f.begin(), f.size())); }

  friend bool operator==(const IncidenceFunction& a, const IncidenceFunction& b) {
    return a.arity() == b.arity() && a.poset() == b.poset() && a.values_ == b.values_;
  }

  IncidenceFunction& operator+=(const IncidenceFunction& o) {
    check_compatible(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] = values_[i] + o.values_[i];
    return *this;
  }
  friend IncidenceFunction operator+(IncidenceFunction a, const IncidenceFunction& b) { return a += b; }

  friend void check_compatible(const IncidenceFunction& f, const IncidenceFunction& g) {
    if (f.arity() != g.arity()) {
      fail(Errc::ArityMismatch, "arities " + std::to_string(f.arity()) + " and " + std::to_string(g.arity()));
    }
    if (f.table_ != g.table_ && !(f.poset() == g.poset() && f.table_->root() == g.table_->root())) {
      fail(Errc::PosetMismatch, "functions live on different posets");
    }
  }

 private:
  std::shared_ptr<const FlagTable> table_;
  std::vector<R> values_;
};

namespace detail {

inline void require_full_table(const FlagTable& t) {
  if (t.root()) fail(Errc::InvalidParams, "operation needs the full flag set, not a rooted table");
}

inline void require_algebra_arity(int n) {
  if (n < 2) fail(Errc::InvalidParams, "incidence algebra arity must be >= 2, got " + std::to_string(n));
}

/// Calls fn(y) for every (n-1)-tuple y with x[i] <= y[i] <= x[i+1].
template <class Fn>
void for_each_interleaving(const Poset& p, std::span<const Element> x, Fn&& fn) {
  const std::size_t m = x.size() - 1;
  std::vector<std::vector<Element>> choices(m);
  for (std::size_t i = 0; i < m; ++i) {
    choices[i] = p.interval(x[i], x[i + 1]);
    if (choices[i].empty()) return;
  }
  std::vector<std::size_t> pos(m, 0);
  Flag y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = choices[i][0];
  for (;;) {
    fn(std::span<const Element>(y));
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++pos[i] < choices[i].size()) {
        y[i] = choices[i][pos[i]];
        break;
      }
      pos[i] = 0;
      y[i] = choices[i][0];
      if (i == 0) return;
    }
    if (m == 0) return;
  }
}

}  // namespace detail

/// (f*g)(X_1..X_n) = sum over X_i <= Y_i <= X_{i+1} of
///                   f(X_1, Y_1..Y_{n-1}) g(Y_1..Y_{n-1}, X_n).
template <class R>
IncidenceFunction<R> convolve(const IncidenceFunction<R>& f, const IncidenceFunction<R>& g) {
  check_compatible(f, g);
  const FlagTable& t = *f.table();
  detail::require_full_table(t);
  detail::require_algebra_arity(t.arity());
  const auto n = static_cast<std::size_t>(t.arity());
  std::vector<R> out(t.size(), R{0});
  parallel_for(t.size(), [&](std::size_t idx) {
    auto x = t.flag(idx);
    Flag left(n), right(n);
    left[0] = x[0];
    right[n - 1] = x[n - 1];
    R acc{0};
    detail::for_each_interleaving(t.poset(), x, [&](std::span<const Element> y) {
      std::copy(y.begin(), y.end(), left.begin() + 1);
      std::copy(y.begin(), y.end(), right.begin());
      acc = acc + f.at(*t.find(left)) * g.at(*t.find(right));
    });
    out[idx] = acc;
  }, 64);
  return IncidenceFunction<R>(f.table(), std::move(out));
}

/// delta_I: 1 when X_{i_1} = ... = X_{i_s}, else 0. Indices are 1-based.
template <class R = Integer>
IncidenceFunction<R> delta_set(std::shared_ptr<const FlagTable> t, const std::vector<int>& index_set) {
  if (index_set.empty()) fail(Errc::IndexOutOfRange, "delta needs a nonempty index set");
  for (int i : index_set) {
    if (i < 1 || i > t->arity()) {
      fail(Errc::IndexOutOfRange, "delta index " + std::to_string(i) + " outside [1," + std::to_string(t->arity()) + "]");
    }
  }
  std::vector<R> v(t->size());
  for (std::size_t idx = 0; idx < t->size(); ++idx) {
    auto f = t->flag(idx);
    const Element first = f[static_cast<std::size_t>(index_set[0] - 1)];
    bool equal = true;
    for (int i : index_set) equal = equal && f[static_cast<std::size_t>(i - 1)] == first;
    v[idx] = R{equal ? 1 : 0};
  }
  return IncidenceFunction<R>(std::move(t), std::move(v));
}

template <class R = Integer>
IncidenceFunction<R> delta_set(const Poset& p, int n, const std::vector<int>& index_set, const Limits& limits = default_limits()) {
  return delta_set<R>(FlagTable::build(p, n, limits), index_set);
}

/// delta_{[n]}: 1 on constant flags.
template <class R = Integer>
IncidenceFunction<R> delta_all(std::shared_ptr<const FlagTable> t) {
  std::vector<int> all(static_cast<std::size_t>(t->arity()));
  for (int i = 0; i < t->arity(); ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return delta_set<R>(std::move(t), all);
}

template <class R = Integer>
IncidenceFunction<R> zeta_fn(std::shared_ptr<const FlagTable> t) {
  std::vector<R> v(t->size(), R{1});
  return IncidenceFunction<R>(std::move(t), std::move(v));
}

template <class R = Integer>
IncidenceFunction<R> zeta_fn(const Poset& p, int n, const Limits& limits = default_limits()) {
  return zeta_fn<R>(FlagTable::build(p, n, limits));
}

/// Characteristic function C_S of a set of flags.
template <class R = Integer>
IncidenceFunction<R> indicator(std::shared_ptr<const FlagTable> t, const std::vector<Flag>& members) {
  auto f = IncidenceFunction<R>::zero(t);
  for (const auto& m : members) {
    auto i = t->find(m);
    if (!i) fail(Errc::FlagNotInPoset, "tuple of length " + std::to_string(m.size()) + " is not a flag of this poset");
    f.at(*i) = R{1};
  }
  return f;
}

}  // namespace flagalg
