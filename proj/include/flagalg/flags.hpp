#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poset.hpp"

namespace flagalg {

using Flag = std::vector<Element>;

/// The weakly increasing n-tuples X_1 <= ... <= X_n of a poset, enumerated
/// once in lexicographic index order and stored contiguously. A table may be
/// rooted at a fixed first entry, in which case it only holds the flags that
/// start there.
class FlagTable {
 public:
  static std::shared_ptr<const FlagTable> build(const Poset& p, int arity, const Limits& limits = default_limits()) {
    return build_impl(p, arity, std::nullopt, limits);
  }

  static std::shared_ptr<const FlagTable> build_rooted(const Poset& p, int arity, Element head,
                                                       const Limits& limits = default_limits()) {
    if (head >= p.size()) fail(Errc::ElementOutOfRange, "flag head " + std::to_string(head) + " not in poset");
    return build_impl(p, arity, head, limits);
  }

  const Poset& poset() const noexcept { return poset_; }
  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return arity_ == 0 ? 0 : entries_.size() / static_cast<std::size_t>(arity_); }
  std::optional<Element> root() const noexcept { return root_; }

  std::span<const Element> flag(std::size_t i) const noexcept {
    return {entries_.data() + i * static_cast<std::size_t>(arity_), static_cast<std::size_t>(arity_)};
  }

  /// Index range [first, last) of the flags whose first entry is `head`.
  std::pair<std::size_t, std::size_t> head_range(Element head) const {
    if (head >= poset_.size()) return {0, 0};
    return {head_begin_[head], head_begin_[head + 1]};
  }

  int rank_sum(std::size_t i) const {
    int s = 0;
    for (Element e : flag(i)) s += poset_.rank(e);
    return s;
  }

  /// Position of `f` in the table, or nullopt when it is not a flag of this table.
  std::optional<std::size_t> find(std::span<const Element> f) const {
    if (f.size() != static_cast<std::size_t>(arity_) || f.empty()) return std::nullopt;
    const Element head = f[0];
    if (head >= poset_.size()) return std::nullopt;
    std::size_t lo = 0, hi = size();
    if (!root_) {
      lo = head_begin_[head];
      hi = head_begin_[head + 1];
    } else if (head != *root_) {
      return std::nullopt;
    }
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      auto m = flag(mid);
      if (std::lexicographical_compare(m.begin(), m.end(), f.begin(), f.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < size()) {
      auto m = flag(lo);
      if (std::equal(m.begin(), m.end(), f.begin())) return lo;
    }
    return std::nullopt;
  }

 private:
  static std::shared_ptr<const FlagTable> build_impl(const Poset& p, int arity, std::optional<Element> root,
                                                     const Limits& limits) {
    if (arity < 1) fail(Errc::InvalidParams, "flag length must be >= 1");
    auto t = std::make_shared<FlagTable>(Private{});
    t->poset_ = p;
    t->arity_ = arity;
    t->root_ = root;
    const auto n = static_cast<std::size_t>(arity);
    Flag cur(n);
    std::size_t count = 0;
    auto extend = [&](auto&& self, std::size_t pos) -> void {
      if (pos == n) {
        if (++count > limits.max_flags) {
          fail(Errc::EnumerationLimitExceeded, "more than " + std::to_string(limits.max_flags) + " flags of length " +
                                                   std::to_string(arity) + " (set FLAGALG_MAX_FLAGS to raise the cap)");
        }
        t->entries_.insert(t->entries_.end(), cur.begin(), cur.end());
        return;
      }
      BitMatrix::for_each_bit(p.up_set(cur[pos - 1]), [&](std::size_t z) {
        cur[pos] = static_cast<Element>(z);
        self(self, pos + 1);
      });
    };
    t->head_begin_.assign(p.size() + 1, 0);
    for (Element x = 0; x < p.size(); ++x) {
      t->head_begin_[x] = t->size();
      if (root && x != *root) continue;
      cur[0] = x;
      extend(extend, 1);
    }
    t->head_begin_[p.size()] = t->size();
    return t;
  }

  struct Private {};

 public:
  explicit FlagTable(Private) {}

 private:
  Poset poset_;
  int arity_ = 0;
  std::optional<Element> root_;
  std::vector<Element> entries_;
  std::vector<std::size_t> head_begin_;
};

/// All flags of length n, in lexicographic order of element indices.
inline std::vector<Flag> flags(const Poset& p, int n, const Limits& limits = default_limits()) {
  auto t = FlagTable::build(p, n, limits);
  std::vector<Flag> out;
  out.reserve(t->size());
  for (std::size_t i = 0; i < t->size(); ++i) {
    auto f = t->flag(i);
    out.emplace_back(f.begin(), f.end());
  }
  return out;
}

}  // namespace flagalg
