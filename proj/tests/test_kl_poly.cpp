#include <gtest/gtest.h>

#include <flagalg.hpp>

#include <functional>

using namespace flagalg;

namespace {

Errc error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::ParseError;
}

Polynomial poly(std::vector<Integer> ascending) { return Polynomial::from_coefficients(ascending); }

Polynomial power(const Polynomial& p, int n) {
  Polynomial out(1);
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

// chi_1 by direct Mobius recursion from the bottom, without the library's row solver
Polynomial chi_by_recursion(const Poset& p) {
  const Element z = *p.bottom();
  std::vector<Integer> mu(p.size(), 0);
  for (int level = 0; level <= p.top_rank(); ++level) {
    for (Element x : p.level(level)) {
      if (x == z) {
        mu[x] = 1;
        continue;
      }
      Integer s = 0;
      for (Element y = 0; y < p.size(); ++y)
        if (y != x && p.leq(y, x) && p.leq(z, y)) s += mu[y];
      mu[x] = -s;
    }
  }
  Polynomial out;
  for (Element x = 0; x < p.size(); ++x) out.add_to(p.top_rank() - p.rank(x), mu[x]);
  return out;
}

// Solves t^r P(1/t) - P(t) = sum_{F > 0} chi_1(P_F) P(P^F) coefficient by
// coefficient, recomputing every interval from scratch.
Polynomial kl_by_definition(const Poset& p) {
  const int r = p.top_rank();
  if (r == 0) return poly({1});
  Polynomial rhs;
  const Element z = *p.bottom();
  for (Element f = 0; f < p.size(); ++f) {
    if (f == z) continue;
    rhs = rhs + chi_by_recursion(localization(p, f)) * kl_by_definition(restriction(p, f));
  }
  std::vector<Integer> c;
  for (int i = 0; 2 * i < r; ++i) c.push_back(rhs.coefficient(r - i));
  return poly(c);
}

}  // namespace

TEST(CharPoly1, Examples) {
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(char_poly1(boolean_lattice(n)), power(poly({-1, 1}), n));
  EXPECT_EQ(char_poly1(chain(0)), Polynomial(1));
  EXPECT_EQ(char_poly1(figure1()), poly({2, -3, 1}));
  EXPECT_EQ(char_poly1(figure1()).to_string(), "t^2 - 3*t + 2");
  auto two = from_covers({"x", "y"}, {});
  EXPECT_EQ(error_of([&] { char_poly1(two); }), Errc::NotBoundedBelow);
}

TEST(CharPoly1, MatchesDirectRecursion) {
  for (const auto& p : {partition_lattice(4), uniform_flats(3, 5), random_graded_bounded(5, 25), product(figure1(), chain(2))})
    EXPECT_EQ(char_poly1(p), chi_by_recursion(p)) << p.name();
}

TEST(KLRecursive, Examples) {
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(kl_recursive(boolean_lattice(n)), Polynomial(1));
  EXPECT_EQ(kl_recursive(figure1()), Polynomial(1));
  EXPECT_EQ(kl_recursive(chain(0)), Polynomial(1));
  EXPECT_EQ(kl_recursive(partition_lattice(4)), poly({1, 1}));
  auto p4 = partition_lattice(4);
  EXPECT_EQ(whitney_second(p4, {2}) - whitney_second(p4, {1}), 1);
  auto below = from_covers({"0", "a", "b"}, {{0, 1}, {0, 2}});
  EXPECT_EQ(error_of([&] { kl_recursive(below); }), Errc::NotBounded);
}

TEST(KLRecursive, MatchesDefinition) {
  for (const auto& p : {partition_lattice(4), partition_lattice(5), uniform_flats(3, 4), uniform_flats(4, 5), uniform_flats(4, 6),
                        boolean_lattice(3), product(figure1(), figure1())})
    EXPECT_EQ(kl_recursive(p), kl_by_definition(p)) << p.name();
}

TEST(KLRecursive, DegreeBound) {
  for (const auto& p : {partition_lattice(5), partition_lattice(6), uniform_flats(5, 7), uniform_flats(6, 7)}) {
    const auto kl = kl_recursive(p);
    EXPECT_LT(2 * kl.degree(), p.top_rank()) << p.name();
    EXPECT_EQ(kl.coefficient(0), 1);
  }
}

TEST(KLRecursive, UniformRankNine) {
  const auto u = uniform_flats(9, 10);
  EXPECT_EQ(kl_closed(u), kl_recursive(u));
}

TEST(KLClosed, Examples) {
  EXPECT_EQ(kl_closed(boolean_lattice(4)), Polynomial(1));
  EXPECT_EQ(kl_closed(uniform_flats(2, 3)), Polynomial(1));
  const auto p5 = partition_lattice(5);
  const auto closed = kl_closed(p5);
  EXPECT_EQ(closed, poly({1, kl_coefficient(p5, 1)}));
  EXPECT_EQ(closed, kl_recursive(p5));
  for (int n = 3; n <= 6; ++n) EXPECT_EQ(kl_coefficient(boolean_lattice(n), 1), 0);
}

TEST(KLClosed, QuadraticCoefficient) {
  const auto p6 = partition_lattice(6);
  EXPECT_EQ(kl_coefficient(p6, 2), kl_recursive(p6).coefficient(2));
  EXPECT_EQ(kl_coefficient(p6, 2), kl_quadratic_expression(p6));
  EXPECT_EQ(kl_coefficient(p6, 1), kl_linear_expression(p6));
}

TEST(KLClosed, MatchesRecursionOnLattices) {
  std::vector<Poset> lattices;
  for (int n = 0; n <= 6; ++n) lattices.push_back(boolean_lattice(n));
  for (int n = 1; n <= 7; ++n)
    for (int m = 1; m <= n; ++m) lattices.push_back(uniform_flats(m, n));
  for (int n = 1; n <= 6; ++n) lattices.push_back(partition_lattice(n));
  lattices.push_back(product(partition_lattice(4), chain(2)));
  lattices.push_back(product(uniform_flats(3, 5), boolean_lattice(1)));
  for (const auto& p : lattices) {
    ASSERT_TRUE(validate(p).lattice) << p.name();
    EXPECT_EQ(kl_closed(p), kl_recursive(p)) << p.name();
    if (p.top_rank() >= 3) {
      EXPECT_EQ(kl_coefficient(p, 1), kl_linear_expression(p)) << p.name();
    }
    if (p.top_rank() >= 5) {
      EXPECT_EQ(kl_coefficient(p, 2), kl_quadratic_expression(p)) << p.name();
    }
  }
}

TEST(KLClosed, Errors) {
  auto bowtie = from_covers({"0", "a", "b", "c", "d", "1"},
                            {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
  EXPECT_EQ(error_of([&] { kl_closed(bowtie); }), Errc::NotLattice);
  EXPECT_EQ(error_of([] { kl_coefficient(partition_lattice(5), 2); }), Errc::RankTooSmall);
  EXPECT_EQ(error_of([] { kl_coefficient(partition_lattice(5), 0); }), Errc::RankTooSmall);
  EXPECT_EQ(error_of([] { kl_linear_expression(figure1()); }), Errc::RankTooSmall);
  EXPECT_EQ(error_of([] { kl_quadratic_expression(partition_lattice(5)); }), Errc::RankTooSmall);
}

TEST(KLClosed, TermBreakdownSumsToCoefficient) {
  const auto p = partition_lattice(6);
  for (int k = 1; k <= 2; ++k) {
    Integer total = 0;
    for (const auto& v : kl_coefficient_terms(p, k)) {
      const Integer diff = v.w_partner - v.w_index;
      EXPECT_EQ(v.contribution, v.term->sign() > 0 ? diff : Integer(-diff));
      EXPECT_EQ(v.w_index, whitney_second(p, v.index));
      total += v.contribution;
    }
    EXPECT_EQ(total, kl_coefficient(p, k));
  }
}

TEST(KLClosed, SymbolicLowCoefficients) {
  // the k = 1, 2 families expand to the linear and quadratic expressions
  for (int r = 5; r <= 9; ++r) {
    std::map<MultiIndex, int> expanded;
    for (const auto& t : index_family(2)) {
      expanded[instantiate(top_heavy(*t), r)] += t->sign();
      expanded[instantiate(t->entries, r)] -= t->sign();
    }
    std::map<MultiIndex, int> expected{{{1, 2}, 1},     {{1, r - 1}, -1}, {{r - 3, r - 1}, 1},
                                       {{r - 3, r - 2}, -1}, {{r - 2}, 1},  {{2}, -1}};
    std::erase_if(expanded, [](const auto& kv) { return kv.second == 0; });
    EXPECT_EQ(expanded, expected) << "r=" << r;
    const auto& one = *index_family(1)[0];
    EXPECT_EQ(instantiate(top_heavy(one), r), (MultiIndex{r - 1}));
    EXPECT_EQ(instantiate(one.entries, r), (MultiIndex{1}));
  }
}
