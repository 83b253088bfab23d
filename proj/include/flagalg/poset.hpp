#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bit_matrix.hpp"
#include "error.hpp"
#include "limits.hpp"

namespace flagalg {

using Element = std::uint32_t;
using Cover = std::pair<Element, Element>;

/// A finite graded poset. Elements are dense indices 0..size()-1; labels are
/// cosmetic. The order relation is stored transitively closed in both
/// directions (up-sets and down-sets) so that leq() and interval extraction
/// are constant-time bit operations. Values are immutable after construction.
class Poset {
 public:
  Poset() = default;

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Element x) const { return labels_.at(x); }

  bool leq(Element x, Element y) const noexcept { return up_.test(x, y); }
  bool less(Element x, Element y) const noexcept { return x != y && up_.test(x, y); }

  /// {y : x <= y} and {y : y <= x} as packed bit rows.
  std::span<const std::uint64_t> up_set(Element x) const noexcept { return up_.row(x); }
  std::span<const std::uint64_t> down_set(Element x) const noexcept { return down_.row(x); }

  const std::vector<Cover>& covers() const noexcept { return covers_; }
  const std::vector<Element>& upper_covers(Element x) const { return upper_.at(x); }
  const std::vector<Element>& lower_covers(Element x) const { return lower_.at(x); }

  int rank(Element x) const { return rank_.at(x); }
  int top_rank() const noexcept { return top_rank_; }
  const std::vector<Element>& level(int r) const { return levels_.at(static_cast<std::size_t>(r)); }
  const std::vector<std::vector<Element>>& levels() const noexcept { return levels_; }

  /// Unique minimal / maximal element, when there is one.
  std::optional<Element> bottom() const {
    if (levels_.empty() || levels_[0].size() != 1) return std::nullopt;
    return levels_[0][0];
  }
  std::optional<Element> top() const {
    std::optional<Element> found;
    for (Element x = 0; x < size(); ++x) {
      if (!upper_[x].empty()) continue;
      if (found) return std::nullopt;
      found = x;
    }
    return found;
  }

  /// Elements z with a <= z <= b, ascending by index.
  std::vector<Element> interval(Element a, Element b) const {
    std::vector<Element> out;
    BitMatrix::for_each_common_bit(up_.row(a), down_.row(b), [&](std::size_t z) { out.push_back(static_cast<Element>(z)); });
    return out;
  }

  Poset with_name(std::string name) const {
    Poset p = *this;
    p.name_ = std::move(name);
    return p;
  }

  /// Structural equality: same labels, same relation. Names are ignored.
  friend bool operator==(const Poset& a, const Poset& b) { return a.labels_ == b.labels_ && a.up_ == b.up_; }

  friend Poset from_covers(std::vector<std::string> labels, std::vector<Cover> cover_pairs, const Limits& limits,
                           std::string name);

 private:
  std::string name_;
  std::vector<std::string> labels_;
  BitMatrix up_;
  BitMatrix down_;
  std::vector<Cover> covers_;
  std::vector<std::vector<Element>> upper_;
  std::vector<std::vector<Element>> lower_;
  std::vector<int> rank_;
  std::vector<std::vector<Element>> levels_;
  int top_rank_ = 0;
};

/// Builds a poset from its cover relation. The order is the reflexive
/// transitive closure of the covers; the rank of an element is the length of
/// the longest chain below it, and every cover must raise it by exactly one.
inline Poset from_covers(std::vector<std::string> labels, std::vector<Cover> cover_pairs,
                         const Limits& limits = default_limits(), std::string name = {}) {
  const std::size_t n = labels.size();
  if (n == 0) fail(Errc::InvalidParams, "a poset needs at least one element");
  if (n > limits.max_relation_bits / n) {
    fail(Errc::SizeLimitExceeded, std::to_string(n) + " elements need " + std::to_string(n) + "^2 relation bits, cap is " +
                                      std::to_string(limits.max_relation_bits) + " (raise max_relation_bits to override)");
  }

  Poset p;
  p.name_ = std::move(name);
  p.labels_ = std::move(labels);
  p.upper_.assign(n, {});
  p.lower_.assign(n, {});

  std::sort(cover_pairs.begin(), cover_pairs.end());
  for (std::size_t i = 0; i < cover_pairs.size(); ++i) {
    auto [x, y] = cover_pairs[i];
    if (x >= n || y >= n) {
      fail(Errc::ElementOutOfRange, "cover (" + std::to_string(x) + ", " + std::to_string(y) + ") references an element >= " +
                                        std::to_string(n));
    }
    if (x == y) fail(Errc::CycleDetected, "self-cover on element " + std::to_string(x));
    if (i > 0 && cover_pairs[i - 1] == cover_pairs[i]) {
      fail(Errc::DuplicateCover, "cover (" + std::to_string(x) + ", " + std::to_string(y) + ") listed twice");
    }
    p.upper_[x].push_back(y);
    p.lower_[y].push_back(x);
  }
  p.covers_ = std::move(cover_pairs);

  // Kahn's algorithm; leftovers mean a cycle.
  std::vector<std::size_t> indegree(n);
  for (Element y = 0; y < n; ++y) indegree[y] = p.lower_[y].size();
  std::vector<Element> order;
  order.reserve(n);
  for (Element x = 0; x < n; ++x)
    if (indegree[x] == 0) order.push_back(x);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Element y : p.upper_[order[head]])
      if (--indegree[y] == 0) order.push_back(y);
  }
  if (order.size() != n) fail(Errc::CycleDetected, "cover graph contains a directed cycle");

  p.rank_.assign(n, 0);
  for (Element x : order)
    for (Element y : p.upper_[x]) p.rank_[y] = std::max(p.rank_[y], p.rank_[x] + 1);
  for (auto [x, y] : p.covers_) {
    if (p.rank_[y] != p.rank_[x] + 1) {
      fail(Errc::NotGraded, "cover " + p.labels_[x] + " < " + p.labels_[y] + " jumps from rank " + std::to_string(p.rank_[x]) +
                                " to rank " + std::to_string(p.rank_[y]));
    }
  }

  p.up_ = BitMatrix(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    p.up_.set(*it, *it);
    for (Element y : p.upper_[*it]) p.up_.or_row(*it, y);
  }
  p.down_ = p.up_.transposed();

  p.top_rank_ = *std::max_element(p.rank_.begin(), p.rank_.end());
  p.levels_.assign(static_cast<std::size_t>(p.top_rank_) + 1, {});
  for (Element x = 0; x < n; ++x) p.levels_[static_cast<std::size_t>(p.rank_[x])].push_back(x);
  return p;
}

struct Diagnostics {
  bool graded = false;
  bool bounded_below = false;
  bool bounded_above = false;
  bool lattice = false;

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

namespace detail {

// The set `common` has a greatest element (w.r.t. `below`, where below(m) is
// the down-set of m) iff some m in it has below(m) == common. Only elements of
// extremal rank can qualify.
inline bool has_extremum(const Poset& p, const std::vector<std::uint64_t>& common, bool want_max) {
  std::optional<Element> best;
  BitMatrix::for_each_bit(common, [&](std::size_t z) {
    auto e = static_cast<Element>(z);
    if (!best || (want_max ? p.rank(e) > p.rank(*best) : p.rank(e) < p.rank(*best))) best = e;
  });
  if (!best) return false;
  auto row = want_max ? p.down_set(*best) : p.up_set(*best);
  return std::equal(row.begin(), row.end(), common.begin());
}

}  // namespace detail

/// Reports structural properties; never throws.
inline Diagnostics validate(const Poset& p) {
  Diagnostics d;
  d.graded = std::all_of(p.covers().begin(), p.covers().end(),
                         [&](const Cover& c) { return p.rank(c.second) == p.rank(c.first) + 1; });
  d.bounded_below = p.bottom().has_value();
  d.bounded_above = p.top().has_value();

  const std::size_t n = p.size();
  std::vector<std::uint64_t> common;
  bool lattice = n > 0;
  for (Element a = 0; lattice && a < n; ++a) {
    for (Element b = a + 1; lattice && b < n; ++b) {
      if (p.leq(a, b) || p.leq(b, a)) continue;
      auto da = p.down_set(a), db = p.down_set(b);
      common.assign(da.size(), 0);
      for (std::size_t w = 0; w < da.size(); ++w) common[w] = da[w] & db[w];
      if (!detail::has_extremum(p, common, true)) lattice = false;
      auto ua = p.up_set(a), ub = p.up_set(b);
      for (std::size_t w = 0; w < ua.size(); ++w) common[w] = ua[w] & ub[w];
      if (lattice && !detail::has_extremum(p, common, false)) lattice = false;
    }
  }
  d.lattice = lattice;
  return d;
}

/// Induced subposet on a convex subset (intervals, up-sets, down-sets). Covers
/// of a convex subposet are exactly the covers of the ambient poset.
inline Poset induced_convex(const Poset& p, const std::vector<Element>& subset, const Limits& limits = default_limits()) {
  std::vector<std::int64_t> index(p.size(), -1);
  std::vector<std::string> labels;
  labels.reserve(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    index[subset[i]] = static_cast<std::int64_t>(i);
    labels.push_back(p.label(subset[i]));
  }
  std::vector<Cover> covers;
  for (auto [x, y] : p.covers()) {
    if (index[x] >= 0 && index[y] >= 0) covers.emplace_back(static_cast<Element>(index[x]), static_cast<Element>(index[y]));
  }
  return from_covers(std::move(labels), std::move(covers), limits);
}

/// The localization {y : y <= x}; ranks are inherited.
inline Poset localization(const Poset& p, Element x, const Limits& limits = default_limits()) {
  if (x >= p.size()) fail(Errc::ElementOutOfRange, "element " + std::to_string(x) + " not in poset");
  std::vector<Element> subset;
  BitMatrix::for_each_bit(p.down_set(x), [&](std::size_t z) { subset.push_back(static_cast<Element>(z)); });
  return induced_convex(p, subset, limits);
}

/// The restriction {y : y >= x}; ranks are re-based so that x has rank 0.
inline Poset restriction(const Poset& p, Element x, const Limits& limits = default_limits()) {
  if (x >= p.size()) fail(Errc::ElementOutOfRange, "element " + std::to_string(x) + " not in poset");
  std::vector<Element> subset;
  BitMatrix::for_each_bit(p.up_set(x), [&](std::size_t z) { subset.push_back(static_cast<Element>(z)); });
  return induced_convex(p, subset, limits);
}

/// Cartesian product with componentwise order. Element (a, b) has index
/// a * |Q| + b.
inline Poset product(const Poset& p, const Poset& q, const Limits& limits = default_limits()) {
  const std::size_t n = p.size() * q.size();
  if (n > limits.max_relation_bits / std::max<std::size_t>(n, 1)) {
    fail(Errc::SizeLimitExceeded, "product has " + std::to_string(n) + " elements, over the relation-bit cap");
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Element a = 0; a < p.size(); ++a)
    for (Element b = 0; b < q.size(); ++b) labels.push_back("(" + p.label(a) + "," + q.label(b) + ")");
  std::vector<Cover> covers;
  auto id = [&](Element a, Element b) { return static_cast<Element>(a * q.size() + b); };
  for (Element a = 0; a < p.size(); ++a) {
    for (auto [x, y] : q.covers()) covers.emplace_back(id(a, x), id(a, y));
  }
  for (auto [x, y] : p.covers()) {
    for (Element b = 0; b < q.size(); ++b) covers.emplace_back(id(x, b), id(y, b));
  }
  std::string name;
  if (!p.name().empty() && !q.name().empty()) name = "product:(" + p.name() + "," + q.name() + ")";
  return from_covers(std::move(labels), std::move(covers), limits, std::move(name));
}

namespace detail {

inline std::int64_t popcount(std::span<const std::uint64_t> bits) {
  std::int64_t c = 0;
  for (auto w : bits) c += std::popcount(w);
  return c;
}

// Colour refinement over (rank, cover-neighbour colours); the resulting colours
// are invariant under isomorphism and shared between both posets.
inline std::pair<std::vector<int>, std::vector<int>> refine_colours(const Poset& p, const Poset& q) {
  using Signature = std::vector<std::int64_t>;
  auto initial = [](const Poset& x, Element e) {
    return Signature{x.rank(e), static_cast<std::int64_t>(x.upper_covers(e).size()),
                     static_cast<std::int64_t>(x.lower_covers(e).size()),
                     popcount(x.up_set(e)), popcount(x.down_set(e))};
  };
  std::vector<int> cp(p.size()), cq(q.size());
  auto assign = [&](auto&& sig_of) {
    std::map<Signature, int> ids;
    std::vector<Signature> sp(p.size()), sq(q.size());
    for (Element e = 0; e < p.size(); ++e) sp[e] = sig_of(p, cp, e);
    for (Element e = 0; e < q.size(); ++e) sq[e] = sig_of(q, cq, e);
    for (auto& s : sp) ids.emplace(s, 0);
    for (auto& s : sq) ids.emplace(s, 0);
    int next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (Element e = 0; e < p.size(); ++e) cp[e] = ids[sp[e]];
    for (Element e = 0; e < q.size(); ++e) cq[e] = ids[sq[e]];
    return next;
  };
  int classes = assign([&](const Poset& x, const std::vector<int>&, Element e) { return initial(x, e); });
  for (std::size_t round = 0; round < p.size(); ++round) {
    int refined = assign([&](const Poset& x, const std::vector<int>& c, Element e) {
      Signature s{c[e]};
      std::vector<std::int64_t> up, down;
      for (Element y : x.upper_covers(e)) up.push_back(c[y]);
      for (Element y : x.lower_covers(e)) down.push_back(c[y]);
      std::sort(up.begin(), up.end());
      std::sort(down.begin(), down.end());
      s.push_back(-1);
      s.insert(s.end(), up.begin(), up.end());
      s.push_back(-2);
      s.insert(s.end(), down.begin(), down.end());
      return s;
    });
    if (refined == classes) break;
    classes = refined;
  }
  return {cp, cq};
}

}  // namespace detail

/// Exact isomorphism test: colour refinement followed by backtracking over
/// colour-compatible assignments, checking the order relation incrementally.
inline bool isomorphic(const Poset& p, const Poset& q) {
  if (p.size() != q.size() || p.top_rank() != q.top_rank() || p.covers().size() != q.covers().size()) return false;
  for (int r = 0; r <= p.top_rank(); ++r)
    if (p.level(r).size() != q.level(r).size()) return false;
  auto [cp, cq] = detail::refine_colours(p, q);
  {
    auto hp = cp, hq = cq;
    std::sort(hp.begin(), hp.end());
    std::sort(hq.begin(), hq.end());
    if (hp != hq) return false;
  }
  std::vector<Element> order;
  for (const auto& lvl : p.levels()) order.insert(order.end(), lvl.begin(), lvl.end());
  std::vector<std::int64_t> image(p.size(), -1);
  std::vector<bool> used(q.size(), false);

  auto consistent = [&](std::size_t depth, Element target) {
    Element src = order[depth];
    for (std::size_t d = 0; d < depth; ++d) {
      Element s = order[d];
      auto t = static_cast<Element>(image[s]);
      if (p.leq(s, src) != q.leq(t, target) || p.leq(src, s) != q.leq(target, t)) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    Element src = order[depth];
    for (Element t = 0; t < q.size(); ++t) {
      if (used[t] || cq[t] != cp[src] || !consistent(depth, t)) continue;
      used[t] = true;
      image[src] = t;
      if (self(self, depth + 1)) return true;
      used[t] = false;
      image[src] = -1;
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace flagalg
