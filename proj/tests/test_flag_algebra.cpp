#include <gtest/gtest.h>

#include <flagalg.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <map>

using namespace flagalg;
using Rational = boost::multiprecision::cpp_rational;

namespace {

Element by_label(const Poset& p, const std::string& label) {
  for (Element x = 0; x < p.size(); ++x)
    if (p.label(x) == label) return x;
  throw std::out_of_range(label);
}

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::ParseError;
}

// every weakly increasing n-tuple, by brute force over P^n
std::vector<Flag> brute_flags(const Poset& p, int n) {
  std::vector<Flag> out;
  Flag cur(static_cast<std::size_t>(n), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == cur.size()) {
      out.push_back(cur);
      return;
    }
    for (Element x = 0; x < p.size(); ++x) {
      if (j > 0 && !p.leq(cur[j - 1], x)) continue;
      cur[j] = x;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

using Fn = std::map<Flag, Rational>;

// (f*g)(X) by scanning all (n-1)-tuples of elements
Fn brute_convolve(const Poset& p, int n, const std::function<Rational(const Flag&)>& f,
                  const std::function<Rational(const Flag&)>& g) {
  Fn out;
  for (const auto& x : brute_flags(p, n)) {
    Rational s = 0;
    for (const auto& y : brute_flags(p, n - 1)) {
      bool ok = true;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) ok = ok && p.leq(x[i], y[i]) && p.leq(y[i], x[i + 1]);
      if (!ok) continue;
      Flag a{x.front()}, b = y;
      a.insert(a.end(), y.begin(), y.end());
      b.push_back(x.back());
      s += f(a) * g(b);
    }
    out[x] = s;
  }
  return out;
}

bool constant(const Flag& f) { return std::all_of(f.begin(), f.end(), [&](Element e) { return e == f[0]; }); }

// Solves a * zeta = delta (left) or zeta * a = delta (right) by dense
// Gauss-Jordan elimination over the rationals.
Fn brute_mobius(const Poset& p, int k, bool left) {
  const auto fl = brute_flags(p, k);
  std::map<Flag, std::size_t> pos;
  for (std::size_t i = 0; i < fl.size(); ++i) pos[fl[i]] = i;
  const std::size_t m = fl.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, 0));
  for (std::size_t r = 0; r < m; ++r) {
    const auto& x = fl[r];
    for (const auto& y : brute_flags(p, k - 1)) {
      bool ok = true;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) ok = ok && p.leq(x[i], y[i]) && p.leq(y[i], x[i + 1]);
      if (!ok) continue;
      Flag u;
      if (left) {
        u = {x.front()};
        u.insert(u.end(), y.begin(), y.end());
      } else {
        u = y;
        u.push_back(x.back());
      }
      a[r][pos.at(u)] += 1;
    }
    a[r][m] = constant(x) ? 1 : 0;
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (piv < m && a[piv][c] == 0) ++piv;
    EXPECT_LT(piv, m) << "singular system";
    if (piv == m) return {};
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  Fn out;
  for (std::size_t i = 0; i < m; ++i) out[fl[i]] = a[i][m] / a[i][i];
  return out;
}

void expect_matches(const IncidenceFunction<Integer>& f, const Fn& oracle) {
  const auto& t = *f.table();
  ASSERT_EQ(t.size(), oracle.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Flag x(t.flag(i).begin(), t.flag(i).end());
    EXPECT_EQ(Rational(f.at(i)), oracle.at(x)) << flag_string(t.poset(), t.flag(i));
  }
}

std::vector<Poset> small_posets() {
  return {chain(0), chain(2), boolean_lattice(2), boolean_lattice(3), figure1(), partition_lattice(4),
          uniform_flats(3, 4), random_graded_bounded(3, 12), product(chain(1), chain(2))};
}

}  // namespace

TEST(Flags, Examples) {
  const auto c1 = flags(chain(1), 3);
  EXPECT_EQ(c1, (std::vector<Flag>{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}));
  EXPECT_EQ(flags(chain(2), 2).size(), 6u);
  EXPECT_EQ(flags(chain(0), 5).size(), 1u);
}

TEST(Flags, MatchBruteForce) {
  for (const auto& p : small_posets())
    for (int n = 1; n <= 3; ++n) {
      auto f = flags(p, n);
      std::sort(f.begin(), f.end());
      EXPECT_EQ(f, brute_flags(p, n)) << p.name() << " n=" << n;
    }
}

TEST(Flags, Cap) {
  Limits l;
  l.max_flags = 10;
  EXPECT_EQ(error_of([&] { FlagTable::build(boolean_lattice(3), 3, l); }), Errc::EnumerationLimitExceeded);
}

TEST(Convolve, ZetaSquaredOnChain) {
  auto z = zeta_fn(chain(2), 2);
  auto zz = convolve(z, z);
  EXPECT_EQ(zz({0, 2}), 3);
  EXPECT_EQ(zz({0, 1}), 2);
  EXPECT_EQ(zz({1, 1}), 1);
}

TEST(Convolve, MatchesBruteForce) {
  for (const auto& p : {figure1(), boolean_lattice(2), chain(2)}) {
    for (int n = 2; n <= 3; ++n) {
      auto t = FlagTable::build(p, n);
      auto f = delta_set<Integer>(t, {1, n});
      auto g = zeta_fn<Integer>(t);
      auto d12 = delta_set<Integer>(t, {1, 2});
      auto f_fn = [&](const Flag& x) { return Rational(x.front() == x.back() ? 1 : 0); };
      auto d12_fn = [&](const Flag& x) { return Rational(x[0] == x[1] ? 1 : 0); };
      auto one = [](const Flag&) { return Rational(1); };
      expect_matches(convolve(f, g), brute_convolve(p, n, f_fn, one));
      expect_matches(convolve(d12, f), brute_convolve(p, n, d12_fn, f_fn));
    }
  }
}

TEST(Convolve, Errors) {
  auto a = zeta_fn(chain(2), 2);
  auto b = zeta_fn(chain(2), 3);
  auto c = zeta_fn(chain(3), 2);
  EXPECT_EQ(error_of([&] { convolve(a, b); }), Errc::ArityMismatch);
  EXPECT_EQ(error_of([&] { convolve(a, c); }), Errc::PosetMismatch);
}

TEST(Convolve, DeltaIsTwoSidedUnitAtArityTwo) {
  for (const auto& p : small_posets()) {
    auto t = FlagTable::build(p, 2);
    auto d = delta_all<Integer>(t);
    auto mu = mobius_left(t);
    auto z = zeta_fn<Integer>(t);
    EXPECT_EQ(convolve(mu, d), mu) << p.name();
    EXPECT_EQ(convolve(d, mu), mu) << p.name();
    EXPECT_EQ(convolve(z, d), z) << p.name();
    EXPECT_EQ(convolve(d, z), z) << p.name();
  }
}

TEST(Distinguished, DeltaSet) {
  auto t = FlagTable::build(chain(1), 3);
  auto d1 = delta_set<Integer>(t, {1});
  EXPECT_EQ(d1, zeta_fn<Integer>(t));
  auto d13 = delta_set<Integer>(t, {1, 3});
  EXPECT_EQ(d13({0, 0, 0}), 1);
  EXPECT_EQ(d13({0, 0, 1}), 0);
  EXPECT_EQ(delta_set<Integer>(chain(1), 2, {1, 2})({0, 1}), 0);
  EXPECT_EQ(error_of([&] { delta_set<Integer>(t, {1, 4}); }), Errc::IndexOutOfRange);
  EXPECT_EQ(error_of([&] { delta_set<Integer>(t, {}); }), Errc::IndexOutOfRange);
}

TEST(Distinguished, ZetaAndIndicator) {
  auto pt = zeta_fn(chain(0), 2);
  EXPECT_EQ(pt.size(), 1u);
  EXPECT_EQ(pt.at(0), 1);
  auto t = FlagTable::build(figure1(), 3);
  std::vector<Flag> all, consts;
  for (std::size_t i = 0; i < t->size(); ++i) {
    Flag f(t->flag(i).begin(), t->flag(i).end());
    if (constant(f)) consts.push_back(f);
    all.push_back(std::move(f));
  }
  EXPECT_EQ(indicator<Integer>(t, all), zeta_fn<Integer>(t));
  EXPECT_EQ(indicator<Integer>(t, {}), IncidenceFunction<Integer>::zero(t));
  EXPECT_EQ(indicator<Integer>(t, consts), delta_all<Integer>(t));
  EXPECT_EQ(error_of([&] { indicator<Integer>(t, {{4, 0, 0}}); }), Errc::FlagNotInPoset);
}

TEST(Mobius, Example1) {
  const auto p = figure1();
  const Element z = by_label(p, "0"), a = by_label(p, "a"), one = by_label(p, "1");
  auto mu = mobius_left(p, 3);
  EXPECT_EQ(mu({z, a, one}), -2);
  EXPECT_EQ(mu({z, one, one}), 4);
  EXPECT_EQ(mu({z, z, one}), 2);
  auto mr = mobius_right(p, 3);
  EXPECT_EQ(mr({z, one, one}), 2);
  EXPECT_NE(mu, mr);
}

TEST(Mobius, LeftMatchesDenseSolve) {
  for (const auto& p : small_posets())
    for (int k = 2; k <= 3; ++k) expect_matches(mobius_left(p, k), brute_mobius(p, k, true));
  expect_matches(mobius_left(figure1(), 4), brute_mobius(figure1(), 4, true));
}

TEST(Mobius, RightMatchesDenseSolve) {
  for (const auto& p : small_posets())
    for (int k = 2; k <= 3; ++k) expect_matches(mobius_right(p, k), brute_mobius(p, k, false));
}

TEST(Mobius, ClassicalCase) {
  for (const auto& p : small_posets()) EXPECT_EQ(mobius_left(p, 2).values(), mobius_right(p, 2).values()) << p.name();
  auto f = figure1();
  auto mu = mobius_left(f, 2);
  EXPECT_EQ(mu({*f.bottom(), *f.top()}), 2);
  auto u = uniform_flats(9, 10);
  EXPECT_EQ(mobius_row(u, *u.bottom())[*u.top()], -9);
}

TEST(Mobius, BooleanThreeFlagsBothSides) {
  // left and right inverses differ once k >= 3; the right one is
  // (-1)^{sum (rk X_k - rk X_j)}
  auto b = boolean_lattice(3);
  const auto left = mobius_left(b, 3), right = mobius_right(b, 3);
  EXPECT_NE(left.values(), right.values());
  const auto& t = *right.table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto f = t.flag(i);
    int rel = 0;
    for (Element e : f) rel += b.rank(f.back()) - b.rank(e);
    EXPECT_EQ(right.at(i), rel % 2 == 0 ? 1 : -1) << flag_string(b, f);
  }
  EXPECT_EQ(mobius_left(b, 2).values(), mobius_right(b, 2).values());
}

TEST(Mobius, ConstantFlagsAreOne) {
  for (const auto& p : small_posets()) {
    auto mu = mobius_left(p, 3);
    for (Element x = 0; x < p.size(); ++x) EXPECT_EQ(mu({x, x, x}), 1);
  }
}

TEST(Mobius, BooleanRankFormula) {
  // (-1)^{sum (rk X_j - rk X_1)} on every flag; the form (-1)^{sum rk X_j}
  // agrees exactly when k * rk X_1 is even.
  for (int n = 1; n <= 4; ++n) {
    const auto b = boolean_lattice(n);
    for (int k = 2; k <= 4; ++k) {
      const auto mu = mobius_left(b, k);
      const auto& t = *mu.table();
      for (std::size_t i = 0; i < t.size(); ++i) {
        auto f = t.flag(i);
        int rel = 0, total = 0;
        for (Element e : f) {
          rel += b.rank(e) - b.rank(f[0]);
          total += b.rank(e);
        }
        const int expect = rel % 2 == 0 ? 1 : -1;
        EXPECT_EQ(mu.at(i), expect) << flag_string(b, f);
        if (k * b.rank(f[0]) % 2 == 0) {
          EXPECT_EQ(mu.at(i), total % 2 == 0 ? 1 : -1) << flag_string(b, f);
        }
      }
    }
  }
}

TEST(Mobius, PrintedBooleanFormulaFailsOffTheBottom) {
  const auto b = boolean_lattice(1);
  const Element x = *b.top();
  EXPECT_EQ(mobius_left(b, 3)({x, x, x}), 1);
}

TEST(Mobius, ProductFormula) {
  const std::vector<std::pair<Poset, Poset>> pairs = {
      {figure1(), chain(1)}, {boolean_lattice(2), chain(1)}, {chain(2), chain(1)}, {figure1(), boolean_lattice(1)}};
  for (const auto& [p, q] : pairs) {
    const auto pq = product(p, q);
    for (int k = 2; k <= 3; ++k) {
      const auto mp = mobius_left(p, k), mq = mobius_left(q, k), mpq = mobius_left(pq, k);
      ASSERT_LE(mpq.size(), 2500u);
      const auto& t = *mpq.table();
      for (std::size_t i = 0; i < t.size(); ++i) {
        Flag fx, fy;
        for (Element e : t.flag(i)) {
          fx.push_back(static_cast<Element>(e / q.size()));
          fy.push_back(static_cast<Element>(e % q.size()));
        }
        EXPECT_EQ(mpq.at(i), mp(fx) * mq(fy)) << pq.name() << " " << flag_string(pq, t.flag(i));
      }
    }
  }
}

TEST(Mobius, ArityOneRejected) { EXPECT_EQ(error_of([] { mobius_left(chain(2), 1); }), Errc::InvalidParams); }

TEST(Mobius, DeterministicAcrossThreadCounts) {
  const auto p = partition_lattice(5);
  set_thread_count(1);
  const auto a = mobius_left(p, 3);
  set_thread_count(8);
  const auto b = mobius_left(p, 3);
  set_thread_count(std::max(1u, std::thread::hardware_concurrency()));
  EXPECT_EQ(a.values(), b.values());
}

TEST(Structure, AssociativityWitnessOnChain) {
  const auto p = chain(2);
  auto w = find_associativity_witness(p);
  ASSERT_TRUE(w.has_value());
  EXPECT_NE(w->left, w->right);

  auto d12 = [](const Flag& x) { return Rational(x[0] == x[1] ? 1 : 0); };
  auto d23 = [](const Flag& x) { return Rational(x[1] == x[2] ? 1 : 0); };
  auto one = [](const Flag&) { return Rational(1); };
  const auto inner_l = brute_convolve(p, 3, d12, d23);
  const auto lhs = brute_convolve(p, 3, [&](const Flag& x) { return inner_l.at(x); }, one);
  const auto inner_r = brute_convolve(p, 3, d23, one);
  const auto rhs = brute_convolve(p, 3, d12, [&](const Flag& x) { return inner_r.at(x); });
  EXPECT_EQ(lhs.at(Flag{0, 0, 2}), rhs.at(Flag{0, 0, 2}));
  EXPECT_NE(lhs.at(Flag{0, 1, 2}), rhs.at(Flag{0, 1, 2}));
  EXPECT_EQ(Rational(w->left), lhs.at(w->flag));
  EXPECT_EQ(Rational(w->right), rhs.at(w->flag));
}

TEST(Structure, NoUnitOnAnyCover) {
  for (const auto& p : small_posets()) {
    for (auto [x, y] : p.covers()) {
      EXPECT_TRUE(infeasible(unit_constraints(p, x, y, UnitSide::Right))) << p.name();
      EXPECT_TRUE(infeasible(unit_constraints(p, x, y, UnitSide::Left))) << p.name();
    }
  }
}

TEST(Structure, EliminationDetectsFeasibleSystems) {
  LinearSystem s;
  s.rows = {{1, 1, 2}, {1, -1, 0}};
  EXPECT_FALSE(infeasible(s));
  s.rows.push_back({2, 0, 3});
  EXPECT_TRUE(infeasible(s));
}

TEST(Io, DumpFormat) {
  const auto p = figure1();
  const auto text = dump_function(mobius_left(p, 3));
  EXPECT_NE(text.find("(0, a, 1) -> -2\n"), std::string::npos);
  EXPECT_NE(text.find("(0, 1, 1) -> 4\n"), std::string::npos);
  EXPECT_EQ(text.substr(0, text.find('\n')), "(0, 0, 0) -> 1");
}
