#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "limits.hpp"
#include "whitney.hpp"

namespace flagalg {

/// Either a constant c or the symbol r - c, with c >= 1.
struct SymbolicEntry {
  enum class Kind { Const, RShift };
  Kind kind = Kind::Const;
  int c = 1;

  static SymbolicEntry constant(int c) { return {Kind::Const, c}; }
  static SymbolicEntry rshift(int c) { return {Kind::RShift, c}; }
  bool is_const() const noexcept { return kind == Kind::Const; }

  // constants ascending, then r - c with c descending
  friend bool operator<(const SymbolicEntry& a, const SymbolicEntry& b) {
    if (a.kind != b.kind) return a.kind == Kind::Const;
    return a.is_const() ? a.c < b.c : a.c > b.c;
  }
  friend bool operator==(const SymbolicEntry&, const SymbolicEntry&) = default;

  std::string to_string() const { return is_const() ? std::to_string(c) : "r - " + std::to_string(c); }
};

using EntrySet = std::vector<SymbolicEntry>;  // sorted, no repeats

struct SymbolicIndexTerm;

struct ATypeDecomposition {
  int k;
};
struct TTypeDecomposition {
  int k, s, i;
  std::vector<int> alpha;
  std::shared_ptr<const SymbolicIndexTerm> beta;
};

struct SymbolicIndexTerm {
  EntrySet entries;
  int sign_exponent = 0;
  std::variant<ATypeDecomposition, TTypeDecomposition> decomposition;

  int sign() const noexcept { return sign_exponent % 2 == 0 ? 1 : -1; }
  bool is_a_type() const noexcept { return std::holds_alternative<ATypeDecomposition>(decomposition); }
  int k() const {
    return std::visit([](const auto& d) { return d.k; }, decomposition);
  }
};

using IndexFamily = std::vector<std::shared_ptr<const SymbolicIndexTerm>>;

namespace detail {
inline EntrySet normalized(EntrySet e) {
  std::sort(e.begin(), e.end());
  if (std::adjacent_find(e.begin(), e.end()) != e.end()) fail(Errc::MalformedTerm, "repeated entry in index set");
  return e;
}
}  // namespace detail

/// A_t: subsets of [t] containing t, listed by the bitmask of their part
/// below t. A_0 = {{}} and A_t is empty for t < 0.
inline std::vector<std::vector<int>> a_family(int t) {
  if (t < 0) return {};
  if (t == 0) return {{}};
  if (t > 30) fail(Errc::CapExceeded, "A_t with t > 30");
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (t - 1)); ++mask) {
    std::vector<int> set;
    for (int j = 1; j < t; ++j)
      if ((mask >> (j - 1)) & 1u) set.push_back(j);
    set.push_back(t);
    out.push_back(std::move(set));
  }
  return out;
}

/// f_s: c -> r - (s - c); entries already of the form r - c are fixed.
inline SymbolicEntry shift_entry(int s, const SymbolicEntry& e) {
  if (s < 3) fail(Errc::InvalidShift, "shift parameter must be >= 3, got " + std::to_string(s));
  if (!e.is_const()) return e;
  if (e.c >= s) fail(Errc::InvalidShift, "f_" + std::to_string(s) + " undefined on constant " + std::to_string(e.c));
  return SymbolicEntry::rshift(s - e.c);
}

inline EntrySet shift_entries(int s, const EntrySet& es) {
  EntrySet out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(shift_entry(s, e));
  return out;
}

namespace detail {

inline EntrySet t_type_entries(const std::vector<int>& alpha, int s, const EntrySet& beta) {
  EntrySet e;
  for (int a : alpha) e.push_back(SymbolicEntry::constant(a));
  e.push_back(SymbolicEntry::rshift(s));
  for (const auto& b : shift_entries(s, beta)) e.push_back(b);
  return normalized(std::move(e));
}

struct FamilyCache {
  std::mutex mutex;
  std::map<int, IndexFamily> families;
};

inline FamilyCache& family_cache() {
  static FamilyCache cache;
  return cache;
}

inline const IndexFamily& index_family_locked(FamilyCache& cache, int k) {
  if (auto it = cache.families.find(k); it != cache.families.end()) return it->second;
  IndexFamily out;
  for (const auto& a : a_family(k)) {
    auto term = std::make_shared<SymbolicIndexTerm>();
    for (int x : a) term->entries.push_back(SymbolicEntry::constant(x));
    term->sign_exponent = static_cast<int>(a.size()) - 1;
    term->decomposition = ATypeDecomposition{k};
    out.push_back(std::move(term));
  }
  for (int s = 3; s <= 2 * k - 1; ++s) {
    std::vector<std::shared_ptr<SymbolicIndexTerm>> block;
    for (int i = std::max(1, s - k); 2 * i < s; ++i) {
      const IndexFamily& sub = index_family_locked(cache, i);
      for (const auto& alpha : a_family(k - s + i)) {
        for (const auto& beta : sub) {
          auto term = std::make_shared<SymbolicIndexTerm>();
          term->entries = t_type_entries(alpha, s, beta->entries);
          term->sign_exponent = static_cast<int>(alpha.size()) + beta->sign_exponent;
          term->decomposition = TTypeDecomposition{k, s, i, alpha, beta};
          block.push_back(std::move(term));
        }
      }
    }
    // within one s: by i, then entries
    std::stable_sort(block.begin(), block.end(), [](const auto& a, const auto& b) {
      const auto& da = std::get<TTypeDecomposition>(a->decomposition);
      const auto& db = std::get<TTypeDecomposition>(b->decomposition);
      if (da.i != db.i) return da.i < db.i;
      return a->entries < b->entries;
    });
    out.insert(out.end(), block.begin(), block.end());
  }
  return cache.families.emplace(k, std::move(out)).first->second;
}

}  // namespace detail

/// S_k: the A-type terms A_k, then T_k^s for s = 3..2k-1 (by i, then entries).
/// Memoized; the returned family lives for the whole program.
inline const IndexFamily& index_family(int k, const Limits& limits = default_limits()) {
  if (k < 1) fail(Errc::InvalidParams, "index family needs k >= 1");
  if (k > limits.max_index_k) {
    fail(Errc::CapExceeded, "index family k=" + std::to_string(k) + " exceeds cap " + std::to_string(limits.max_index_k));
  }
  auto& cache = detail::family_cache();
  std::lock_guard lock(cache.mutex);
  return detail::index_family_locked(cache, k);
}

/// t(I), following the recursive construction of the term.
inline EntrySet top_heavy_recursive(const SymbolicIndexTerm& term) {
  if (const auto* a = std::get_if<ATypeDecomposition>(&term.decomposition)) {
    const int k = a->k;
    std::vector<int> consts;
    for (const auto& e : term.entries) {
      if (!e.is_const()) fail(Errc::MalformedTerm, "A-type term with an r entry");
      consts.push_back(e.c);
    }
    if (consts.empty() || consts.back() != k) fail(Errc::MalformedTerm, "A-type term missing its top entry");
    const int d = consts.size() == 1 ? k : k - consts[consts.size() - 2];
    EntrySet out;
    for (int c : consts)
      if (c != k) out.push_back(SymbolicEntry::constant(c));
    out.push_back(SymbolicEntry::rshift(d));
    return detail::normalized(std::move(out));
  }
  const auto& t = std::get<TTypeDecomposition>(term.decomposition);
  if (!t.beta) fail(Errc::MalformedTerm, "T-type term without beta");
  return detail::t_type_entries(t.alpha, t.s, top_heavy_recursive(*t.beta));
}

/// t(I) from the entries alone: replace r - c_min by r - (c_2 - c_min), c_min
/// and c_2 the two smallest r-offsets. A-type terms use the gap d(I).
inline EntrySet top_heavy_closed(const EntrySet& entries, int k) {
  std::vector<int> rs, cs;
  for (const auto& e : entries) (e.is_const() ? cs : rs).push_back(e.c);
  if (rs.empty()) {
    if (cs.empty() || cs.back() != k) fail(Errc::MalformedTerm, "A-type term missing its top entry");
    const int d = cs.size() == 1 ? k : k - cs[cs.size() - 2];
    EntrySet out;
    for (int c : cs)
      if (c != k) out.push_back(SymbolicEntry::constant(c));
    out.push_back(SymbolicEntry::rshift(d));
    return detail::normalized(std::move(out));
  }
  if (rs.size() < 2) fail(Errc::MalformedTerm, "closed top-heavy form needs two r entries");
  std::sort(rs.begin(), rs.end());
  const int cmin = rs[0], c2 = rs[1];
  EntrySet out;
  for (const auto& e : entries)
    if (!(e == SymbolicEntry::rshift(cmin))) out.push_back(e);
  out.push_back(SymbolicEntry::rshift(c2 - cmin));
  return detail::normalized(std::move(out));
}

/// t(I) by the recursion, cross-checked against the closed form.
inline EntrySet top_heavy(const SymbolicIndexTerm& term) {
  EntrySet rec = top_heavy_recursive(term);
  if (rec != top_heavy_closed(term.entries, term.k())) {
    fail(Errc::MalformedTerm, "recursive and closed top-heavy partners disagree");
  }
  return rec;
}

/// Substitutes r; the result must be strictly increasing inside [1, r - 1].
inline MultiIndex instantiate(const EntrySet& entries, int r) {
  MultiIndex out;
  for (const auto& e : entries) out.push_back(e.is_const() ? e.c : r - e.c);
  std::sort(out.begin(), out.end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j] < 1 || out[j] > r - 1 || (j > 0 && out[j] == out[j - 1])) {
      fail(Errc::RankTooSmall, "rank " + std::to_string(r) + " too small to instantiate index set");
    }
  }
  return out;
}

inline std::string render_entries(const EntrySet& e) {
  std::string s = "[";
  for (std::size_t j = 0; j < e.size(); ++j) s += (j ? ", " : "") + e[j].to_string();
  return s + "]";
}

inline std::string render_term(const SymbolicIndexTerm& t) {
  return (t.sign() > 0 ? "+" : "-") + render_entries(t.entries);
}

/// One row of the coefficient table, e.g. "+[2], +[r - 3, r - 2], -[1, 2]".
inline std::string render_table(int k, const Limits& limits = default_limits()) {
  std::string out;
  for (const auto& t : index_family(k, limits)) out += (out.empty() ? "" : ", ") + render_term(*t);
  return out;
}

inline std::string render_latex(int k, const Limits& limits = default_limits()) {
  std::string out = std::to_string(k) + " & ";
  bool first = true;
  for (const auto& t : index_family(k, limits)) {
    if (!first) out += ", ";
    first = false;
    out += t->sign() > 0 ? "+" : "-";
    out += "W_{";
    for (std::size_t j = 0; j < t->entries.size(); ++j) {
      const auto& e = t->entries[j];
      out += (j ? "," : "") + (e.is_const() ? std::to_string(e.c) : "r-" + std::to_string(e.c));
    }
    out += "}";
  }
  return out + " \\\\";
}

/// Every way to write `entries` as alpha + {r - s} + f_s(beta) with
/// beta in S_i, alpha in A_{k-s+i}. Used to check the recursion is injective.
struct Decomposition {
  int s, i;
  std::vector<int> alpha;
  std::shared_ptr<const SymbolicIndexTerm> beta;
};

inline std::vector<Decomposition> decompositions(const EntrySet& entries, int k, const Limits& limits = default_limits()) {
  std::vector<Decomposition> out;
  for (int s = 3; s <= 2 * k - 1; ++s) {
    for (int i = std::max(1, s - k); 2 * i < s; ++i) {
      for (const auto& alpha : a_family(k - s + i)) {
        for (const auto& beta : index_family(i, limits)) {
          EntrySet candidate;
          try {
            candidate = detail::t_type_entries(alpha, s, beta->entries);
          } catch (const Error&) {
            continue;
          }
          if (candidate == entries) out.push_back({s, i, alpha, beta});
        }
      }
    }
  }
  return out;
}

}  // namespace flagalg
