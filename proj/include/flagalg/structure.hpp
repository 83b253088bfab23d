#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "incidence.hpp"

namespace flagalg {

struct AssociativityWitness {
  Flag flag;
  Integer left;   // ((delta_{1,2} * delta_{2,3}) * zeta)(flag)
  Integer right;  // (delta_{1,2} * (delta_{2,3} * zeta))(flag)
};

/// First flag (in table order) where the two bracketings of
/// delta_{1,2} * delta_{2,3} * zeta disagree, for arity 3.
inline std::optional<AssociativityWitness> find_associativity_witness(const Poset& p,
                                                                      const Limits& limits = default_limits()) {
  auto t = FlagTable::build(p, 3, limits);
  auto d12 = delta_set<Integer>(t, {1, 2});
  auto d23 = delta_set<Integer>(t, {2, 3});
  auto z = zeta_fn<Integer>(t);
  auto lhs = convolve(convolve(d12, d23), z);
  auto rhs = convolve(d12, convolve(d23, z));
  for (std::size_t i = 0; i < t->size(); ++i) {
    if (lhs.at(i) != rhs.at(i)) {
      auto f = t->flag(i);
      return AssociativityWitness{Flag(f.begin(), f.end()), lhs.at(i), rhs.at(i)};
    }
  }
  return std::nullopt;
}

enum class UnitSide { Left, Right };

/// Augmented linear system over Z: each row is coefficients over the
/// unknowns followed by the right-hand side.
struct LinearSystem {
  std::vector<Flag> unknowns;
  std::vector<std::string> origins;
  std::vector<std::vector<Integer>> rows;
};

/// The constraints a one-sided unit u of I^3(P) would have to satisfy on the
/// flags supported on a cover x < y:
///   Right: f * u = f for f in {delta_{1,3}, delta_{1,2}, zeta}
///   Left:  u * f = f for f in {delta_{1,3}, delta_{2,3}, zeta}
inline LinearSystem unit_constraints(const Poset& p, Element x, Element y, UnitSide side) {
  if (x >= p.size() || y >= p.size()) fail(Errc::ElementOutOfRange, "cover endpoints out of range");
  if (!p.less(x, y) || p.rank(y) != p.rank(x) + 1) fail(Errc::InvalidParams, "unit constraints need a cover x < y");
  const std::vector<Flag> support = {{x, x, x}, {x, x, y}, {x, y, y}, {y, y, y}};

  // delta_{a,b} entrywise; a == b gives zeta
  struct Fn {
    std::size_t a, b;
    Integer operator()(const Flag& f) const { return Integer(f[a] == f[b] ? 1 : 0); }
  };
  std::vector<std::pair<std::string, Fn>> fs;
  fs.emplace_back("delta_{1,3}", Fn{0, 2});
  if (side == UnitSide::Right)
    fs.emplace_back("delta_{1,2}", Fn{0, 1});
  else
    fs.emplace_back("delta_{2,3}", Fn{1, 2});
  fs.emplace_back("zeta", Fn{0, 0});

  LinearSystem sys;
  std::map<Flag, std::size_t> column;
  auto col = [&](const Flag& f) {
    auto [it, inserted] = column.try_emplace(f, sys.unknowns.size());
    if (inserted) sys.unknowns.push_back(f);
    return it->second;
  };
  std::vector<std::map<std::size_t, Integer>> forms;
  std::vector<Integer> rhs;
  for (const auto& [name, f] : fs) {
    for (const auto& xs : support) {
      std::map<std::size_t, Integer> form;
      detail::for_each_interleaving(p, xs, [&](std::span<const Element> ys) {
        Flag known(3), unknown(3);
        if (side == UnitSide::Right) {
          known = {xs[0], ys[0], ys[1]};
          unknown = {ys[0], ys[1], xs[2]};
        } else {
          unknown = {xs[0], ys[0], ys[1]};
          known = {ys[0], ys[1], xs[2]};
        }
        Integer c = f(known);
        if (c != 0) form[col(unknown)] += c;
      });
      forms.push_back(std::move(form));
      rhs.push_back(f(xs));
      sys.origins.push_back(name + " at (" + p.label(xs[0]) + ", " + p.label(xs[1]) + ", " + p.label(xs[2]) + ")");
    }
  }
  for (std::size_t r = 0; r < forms.size(); ++r) {
    std::vector<Integer> row(sys.unknowns.size() + 1, 0);
    for (const auto& [c, v] : forms[r]) row[c] = v;
    row.back() = rhs[r];
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

/// True when the system has no rational solution. Fraction-free elimination:
/// the system is infeasible iff some reduced row is 0 = nonzero.
inline bool infeasible(LinearSystem sys) {
  auto& m = sys.rows;
  if (m.empty()) return false;
  const std::size_t cols = m.front().size() - 1;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < m.size(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[pivot_row]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == pivot_row || m[i][c] == 0) continue;
      const Integer a = m[pivot_row][c], b = m[i][c];
      Integer g = 0;
      for (std::size_t j = 0; j <= cols; ++j) {
        m[i][j] = m[i][j] * a - m[pivot_row][j] * b;
        g = boost::multiprecision::gcd(g, m[i][j]);
      }
      if (g > 1)
        for (auto& v : m[i]) v /= g;
    }
    ++pivot_row;
  }
  for (const auto& row : m) {
    bool zero = std::all_of(row.begin(), row.end() - 1, [](const Integer& v) { return v == 0; });
    if (zero && row.back() != 0) return true;
  }
  return false;
}

}  // namespace flagalg
