#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "poset.hpp"

namespace flagalg {

namespace detail {

inline std::string subset_label(std::uint64_t mask) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; mask >> i; ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (!first) s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

}  // namespace detail

/// Subsets of {1..n} ordered by inclusion. Element index = bitmask.
inline Poset boolean_lattice(int n, const Limits& limits = default_limits()) {
  if (n < 0) fail(Errc::InvalidParams, "boolean lattice rank must be >= 0");
  if (n > limits.max_boolean_rank) {
    fail(Errc::SizeLimitExceeded, "boolean lattice rank " + std::to_string(n) + " exceeds cap " +
                                      std::to_string(limits.max_boolean_rank));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  if (count > limits.max_relation_bits / count) {
    fail(Errc::SizeLimitExceeded, "boolean lattice of rank " + std::to_string(n) + " exceeds the relation-bit cap");
  }
  std::vector<std::string> labels;
  std::vector<Cover> covers;
  for (std::uint64_t m = 0; m < count; ++m) {
    labels.push_back(detail::subset_label(m));
    for (int i = 0; i < n; ++i)
      if (!((m >> i) & 1u)) covers.emplace_back(static_cast<Element>(m), static_cast<Element>(m | (std::uint64_t{1} << i)));
  }
  return from_covers(std::move(labels), std::move(covers), limits, "boolean:" + std::to_string(n));
}

/// Total order 0 < 1 < ... < m.
inline Poset chain(int m, const Limits& limits = default_limits()) {
  if (m < 0) fail(Errc::InvalidParams, "chain length must be >= 0");
  std::vector<std::string> labels;
  std::vector<Cover> covers;
  for (int i = 0; i <= m; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(static_cast<Element>(i - 1), static_cast<Element>(i));
  }
  return from_covers(std::move(labels), std::move(covers), limits, "chain:" + std::to_string(m));
}

/// Lattice of flats of the uniform matroid U_{m,n}: every subset of {1..n}
/// with fewer than m elements, plus the full set at rank m.
inline Poset uniform_flats(int m, int n, const Limits& limits = default_limits()) {
  if (m < 1 || m > n) fail(Errc::InvalidParams, "uniform flats need 1 <= m <= n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  if (n > limits.max_boolean_rank) fail(Errc::SizeLimitExceeded, "uniform flats ground set larger than the boolean rank cap");
  std::uint64_t count = 1;
  {
    std::uint64_t binom = 1;
    for (int j = 0; j < m; ++j) {
      count += binom;
      binom = binom * static_cast<std::uint64_t>(n - j) / static_cast<std::uint64_t>(j + 1);
      if (count > limits.max_relation_bits) break;
    }
  }
  if (count > limits.max_relation_bits / count) {
    fail(Errc::SizeLimitExceeded, "uniform flats U(" + std::to_string(m) + "," + std::to_string(n) + ") exceed the relation-bit cap");
  }
  // elements ordered by (size, mask)
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::vector<std::uint64_t>> by_size(static_cast<std::size_t>(m));
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < by_size.size()) by_size[size].push_back(mask);
  }
  std::vector<std::uint64_t> masks;
  for (const auto& bucket : by_size) masks.insert(masks.end(), bucket.begin(), bucket.end());
  std::map<std::uint64_t, Element> index;
  std::vector<std::string> labels;
  for (auto mask : masks) {
    index[mask] = static_cast<Element>(labels.size());
    labels.push_back(detail::subset_label(mask));
  }
  const auto top = static_cast<Element>(labels.size());
  labels.push_back(detail::subset_label(full));
  std::vector<Cover> covers;
  for (auto mask : masks) {
    if (std::popcount(mask) == m - 1) {
      covers.emplace_back(index[mask], top);
      continue;
    }
    for (int i = 0; i < n; ++i)
      if (!((mask >> i) & 1u)) covers.emplace_back(index[mask], index[mask | (std::uint64_t{1} << i)]);
  }
  return from_covers(std::move(labels), std::move(covers), limits,
                     "uniform:" + std::to_string(m) + "," + std::to_string(n));
}

/// Set partitions of {1..n} ordered by refinement, finest at the bottom.
/// Rank = n - (number of blocks).
inline Poset partition_lattice(int n, const Limits& limits = default_limits()) {
  if (n < 1) fail(Errc::InvalidParams, "partition lattice needs n >= 1");
  if (n > limits.max_partition_n) {
    fail(Errc::SizeLimitExceeded, "partition lattice n=" + std::to_string(n) + " exceeds cap " + std::to_string(limits.max_partition_n));
  }
  using Rgs = std::vector<int>;  // restricted growth string
  std::vector<Rgs> all;
  Rgs cur(static_cast<std::size_t>(n), 0);
  auto gen = [&](auto&& self, int pos, int max_block) -> void {
    if (pos == n) {
      all.push_back(cur);
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      cur[static_cast<std::size_t>(pos)] = b;
      self(self, pos + 1, std::max(max_block, b));
    }
  };
  cur[0] = 0;
  gen(gen, 1, 0);
  auto blocks = [](const Rgs& r) { return *std::max_element(r.begin(), r.end()) + 1; };
  std::stable_sort(all.begin(), all.end(), [&](const Rgs& a, const Rgs& b) { return blocks(a) > blocks(b); });
  if (all.size() > limits.max_relation_bits / all.size()) {
    fail(Errc::SizeLimitExceeded, "partition lattice n=" + std::to_string(n) + " exceeds the relation-bit cap");
  }

  std::map<Rgs, Element> index;
  std::vector<std::string> labels;
  for (const auto& r : all) {
    index[r] = static_cast<Element>(labels.size());
    std::string label;
    for (int b = 0; b < blocks(r); ++b) {
      if (b > 0) label += '|';
      for (int i = 0; i < n; ++i)
        if (r[static_cast<std::size_t>(i)] == b) label += std::to_string(i + 1);
    }
    labels.push_back(label);
  }
  auto canonical = [](Rgs r) {
    std::map<int, int> relabel;
    for (auto& b : r) {
      auto [it, inserted] = relabel.emplace(b, static_cast<int>(relabel.size()));
      b = it->second;
    }
    return r;
  };
  std::vector<Cover> covers;
  for (const auto& r : all) {
    const int nb = blocks(r);
    for (int a = 0; a < nb; ++a) {
      for (int b = a + 1; b < nb; ++b) {
        Rgs merged = r;
        for (auto& x : merged)
          if (x == b) x = a;
        covers.emplace_back(index[r], index.at(canonical(merged)));
      }
    }
  }
  return from_covers(std::move(labels), std::move(covers), limits, "partition:" + std::to_string(n));
}

/// The five-element rank-2 lattice 0 < a, b, c < 1.
inline Poset figure1(const Limits& limits = default_limits()) {
  return from_covers({"0", "a", "b", "c", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}}, limits, "figure1");
}

/// Random graded poset with a bottom and a top, at most `max_elements`
/// elements (>= 3). Deterministic for a given seed.
inline Poset random_graded_bounded(std::uint64_t seed, int max_elements, const Limits& limits = default_limits()) {
  if (max_elements < 3) fail(Errc::InvalidParams, "random poset needs room for at least 3 elements");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int budget = max_elements - 2;
  std::vector<int> sizes;
  const int interior_levels = uniform(1, std::min(4, budget));
  for (int l = 0; l < interior_levels && budget > 0; ++l) {
    int remaining_levels = interior_levels - l - 1;
    int s = uniform(1, std::max(1, std::min(5, budget - remaining_levels)));
    sizes.push_back(s);
    budget -= s;
  }
  std::vector<std::string> labels{"0"};
  std::vector<std::vector<Element>> lv;
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    lv.emplace_back();
    for (int i = 0; i < sizes[l]; ++i) {
      lv.back().push_back(static_cast<Element>(labels.size()));
      labels.push_back("x" + std::to_string(l + 1) + "_" + std::to_string(i));
    }
  }
  const auto top = static_cast<Element>(labels.size());
  labels.push_back("1");
  std::vector<Cover> covers;
  for (Element x : lv.front()) covers.emplace_back(0, x);
  for (std::size_t l = 0; l + 1 < lv.size(); ++l) {
    const auto& lo = lv[l];
    const auto& hi = lv[l + 1];
    std::vector<std::vector<bool>> edge(lo.size(), std::vector<bool>(hi.size(), false));
    for (std::size_t i = 0; i < lo.size(); ++i)
      for (std::size_t j = 0; j < hi.size(); ++j) edge[i][j] = uniform(0, 9) < 4;
    for (std::size_t j = 0; j < hi.size(); ++j) {
      bool any = false;
      for (std::size_t i = 0; i < lo.size(); ++i) any = any || edge[i][j];
      if (!any) edge[static_cast<std::size_t>(uniform(0, static_cast<int>(lo.size()) - 1))][j] = true;
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
      bool any = false;
      for (std::size_t j = 0; j < hi.size(); ++j) any = any || edge[i][j];
      if (!any) edge[i][static_cast<std::size_t>(uniform(0, static_cast<int>(hi.size()) - 1))] = true;
    }
    for (std::size_t i = 0; i < lo.size(); ++i)
      for (std::size_t j = 0; j < hi.size(); ++j)
        if (edge[i][j]) covers.emplace_back(lo[i], hi[j]);
  }
  for (Element x : lv.back()) covers.emplace_back(x, top);
  return from_covers(std::move(labels), std::move(covers), limits, "random:" + std::to_string(seed));
}

namespace detail {

inline std::vector<int> parse_ints(const std::string& text, const std::string& spec) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size()) fail(Errc::ParseError, "bad number \"" + part + "\" in generator " + spec);
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Builds a poset from a generator spec: boolean:N, chain:M, uniform:M,N,
/// partition:N, figure1, random:SEED[,MAX], product:(A,B).
inline Poset generate(const std::string& spec, const Limits& limits = default_limits()) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto ints = [&](std::size_t count) {
    auto v = detail::parse_ints(args, spec);
    if (v.size() != count) fail(Errc::ParseError, "generator " + name + " takes " + std::to_string(count) + " parameter(s)");
    return v;
  };
  if (name == "figure1") {
    if (!args.empty()) fail(Errc::ParseError, "figure1 takes no parameters");
    return figure1(limits);
  }
  if (colon == std::string::npos) fail(Errc::ParseError, "generator spec \"" + spec + "\" needs parameters (name:params)");
  if (name == "boolean") return boolean_lattice(ints(1)[0], limits);
  if (name == "chain") return chain(ints(1)[0], limits);
  if (name == "partition") return partition_lattice(ints(1)[0], limits);
  if (name == "uniform") {
    auto v = ints(2);
    return uniform_flats(v[0], v[1], limits);
  }
  if (name == "random") {
    auto v = detail::parse_ints(args, spec);
    if (v.empty() || v.size() > 2 || v[0] < 0) fail(Errc::ParseError, "random takes SEED or SEED,MAX");
    return random_graded_bounded(static_cast<std::uint64_t>(v[0]), v.size() == 2 ? v[1] : 30, limits);
  }
  if (name == "product") {
    if (args.size() < 2 || args.front() != '(' || args.back() != ')') fail(Errc::ParseError, "product takes (A,B)");
    const std::string inner = args.substr(1, args.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (depth < 0) break;
      if (depth == 0 && inner[i] == ',') {
        // try each top-level comma as the separator
        try {
          Poset a = generate(inner.substr(0, i), limits);
          Poset b = generate(inner.substr(i + 1), limits);
          return product(a, b, limits);
        } catch (const Error& e) {
          if (e.code() != Errc::ParseError) throw;
        }
      }
    }
    fail(Errc::ParseError, "cannot split product arguments in " + spec);
  }
  fail(Errc::ParseError, "unknown generator \"" + name + "\"");
}

}  // namespace flagalg
