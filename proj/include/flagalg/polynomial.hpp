#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "integer.hpp"

namespace flagalg {

namespace detail {

// "+ 3*x" style term joining shared by both polynomial printers.
inline void append_term(std::string& out, const Integer& c, const std::string& monomial, bool latex) {
  const bool negative = c < 0;
  const Integer a = negative ? Integer(-c) : c;
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  if (monomial.empty()) {
    out += to_string(a);
  } else if (a == 1) {
    out += monomial;
  } else {
    out += to_string(a) + (latex ? "" : "*") + monomial;
  }
}

}  // namespace detail

/// Univariate polynomial with integer coefficients, variable t.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Integer constant) { set(0, std::move(constant)); }  // NOLINT(implicit)
  Polynomial(int constant) : Polynomial(Integer(constant)) {}  // NOLINT(implicit)

  static Polynomial monomial(int degree, Integer c = 1) {
    Polynomial p;
    p.set(degree, std::move(c));
    return p;
  }
  /// From ascending coefficients c_0, c_1, ...
  static Polynomial from_coefficients(const std::vector<Integer>& c) {
    Polynomial p;
    for (std::size_t i = 0; i < c.size(); ++i) p.set(static_cast<int>(i), c[i]);
    return p;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  Integer coefficient(int d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? Integer(0) : it->second;
  }
  const std::map<int, Integer>& terms() const noexcept { return terms_; }

  void set(int d, Integer c) {
    if (c == 0)
      terms_.erase(d);
    else
      terms_[d] = std::move(c);
  }
  void add_to(int d, const Integer& c) { set(d, coefficient(d) + c); }

  Integer evaluate(const Integer& x) const {
    Integer acc = 0;
    for (int d = degree(); d >= 0; --d) acc = acc * x + coefficient(d);
    return acc;
  }

  Polynomial shifted(int by) const {
    Polynomial p;
    for (const auto& [d, c] : terms_) p.terms_[d + by] = c;
    return p;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [d, c] : o.terms_) add_to(d, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [d, c] : o.terms_) add_to(d, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [d, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    for (const auto& [da, ca] : a.terms_)
      for (const auto& [db, cb] : b.terms_) p.add_to(da + db, ca * cb);
    return p;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Descending powers, e.g. "t^2 - 3*t + 2".
  std::string to_string(const std::string& var = "t") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string m = it->first == 0 ? "" : it->first == 1 ? var : var + "^" + std::to_string(it->first);
      detail::append_term(out, it->second, m, false);
    }
    return out;
  }
  std::string to_latex(const std::string& var = "t") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string m = it->first == 0 ? "" : it->first == 1 ? var : var + "^{" + std::to_string(it->first) + "}";
      detail::append_term(out, it->second, m, true);
    }
    return out;
  }

 private:
  std::map<int, Integer> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

/// Graded lexicographic order, t1 > t2 > ...: larger monomials first.
struct GradedLexGreater {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da > db;
    return a > b;
  }
};

/// Polynomial in t1..tk with integer coefficients.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPoly(int variables = 1) : vars_(variables) {
    if (variables < 0) fail(Errc::InvalidParams, "variable count must be >= 0");
  }
  static MultiPoly constant(int variables, Integer c) {
    MultiPoly p(variables);
    p.add_term(Exponents(static_cast<std::size_t>(variables), 0), c);
    return p;
  }
  /// The single variable t_{j}, 1-based.
  static MultiPoly variable(int variables, int j) {
    if (j < 1 || j > variables) fail(Errc::IndexOutOfRange, "variable t" + std::to_string(j) + " out of range");
    Exponents e(static_cast<std::size_t>(variables), 0);
    e[static_cast<std::size_t>(j - 1)] = 1;
    MultiPoly p(variables);
    p.add_term(e, 1);
    return p;
  }

  int variables() const noexcept { return vars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Exponents, Integer, GradedLexGreater>& terms() const noexcept { return terms_; }

  Integer coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(const Exponents& e, const Integer& c) {
    if (e.size() != static_cast<std::size_t>(vars_)) fail(Errc::VariableCountMismatch, "exponent vector length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_vars(b);
    MultiPoly p(a.vars_);
    Exponents e(static_cast<std::size_t>(a.vars_));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        p.add_term(e, ca * cb);
      }
    }
    return p;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  MultiPoly pow(int n) const {
    MultiPoly r = constant(vars_, 1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Substitutes this polynomial for the variable of `p`: p(this).
  MultiPoly compose_into(const Polynomial& p) const {
    MultiPoly r(vars_);
    MultiPoly power = constant(vars_, 1);
    for (int d = 0; d <= p.degree(); ++d) {
      if (d > 0) power = power * *this;
      const Integer c = p.coefficient(d);
      if (c == 0) continue;
      for (const auto& [e, v] : power.terms_) r.add_term(e, v * c);
    }
    return r;
  }

  /// Text, e.g. "t1^2*t2^2 - 3*t1^2*t2 + 2*t1^2 + 3*t1*t2 - 6*t1 + 4".
  std::string to_string() const { return render(false); }
  std::string to_latex() const { return render(true); }

 private:
  void check_vars(const MultiPoly& o) const {
    if (o.vars_ != vars_) {
      fail(Errc::VariableCountMismatch,
           "polynomials in " + std::to_string(vars_) + " and " + std::to_string(o.vars_) + " variables");
    }
  }

  std::string render(bool latex) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string m;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!m.empty() && !latex) m += "*";
        m += latex ? "t_{" + std::to_string(i + 1) + "}" : "t" + std::to_string(i + 1);
        if (e[i] > 1) m += latex ? "^{" + std::to_string(e[i]) + "}" : "^" + std::to_string(e[i]);
      }
      detail::append_term(out, c, m, latex);
    }
    return out;
  }

  int vars_;
  std::map<Exponents, Integer, GradedLexGreater> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace flagalg
