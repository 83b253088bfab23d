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

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Integer multinomial(int n, const MultiIndex& idx) {
  Integer r = factorial(n);
  int prev = 0;
  for (int i : idx) {
    r /= factorial(i - prev);
    prev = i;
  }
  return r / factorial(n - prev);
}

// flags with prescribed ranks, counted by recursion over elements
Integer count_flags(const Poset& p, const MultiIndex& idx) {
  std::function<Integer(std::size_t, Element)> rec = [&](std::size_t j, Element prev) -> Integer {
    if (j == idx.size()) return 1;
    Integer s = 0;
    for (Element x : p.level(idx[j]))
      if (j == 0 || p.leq(prev, x)) s += rec(j + 1, x);
    return s;
  };
  return rec(0, 0);
}

// sum of mu_k over flags with prescribed ranks, mu_k from the full table
Integer first_kind_from_table(const Poset& p, const MultiIndex& idx) {
  const auto mu = mobius_left(p, static_cast<int>(idx.size()));
  const auto& t = *mu.table();
  Integer s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto f = t.flag(i);
    bool ok = true;
    for (std::size_t j = 0; j < idx.size(); ++j) ok = ok && p.rank(f[j]) == idx[j];
    if (ok) s += mu.at(i);
  }
  return s;
}

void weak_sequences(int len, int top, const std::function<void(const MultiIndex&)>& fn) {
  MultiIndex cur;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(cur.size()) == len) {
      fn(cur);
      return;
    }
    for (int v = lo; v <= top; ++v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<Poset> test_posets() {
  return {boolean_lattice(3), figure1(), partition_lattice(4), uniform_flats(3, 5), chain(3),
          random_graded_bounded(11, 20), product(figure1(), chain(1))};
}

}  // namespace

TEST(WhitneySecond, BooleanMultinomial) {
  EXPECT_EQ(whitney_second(boolean_lattice(3), {1, 2}), 6);
  for (int n = 0; n <= 6; ++n) {
    const auto b = boolean_lattice(n);
    for (int len = 1; len <= 3; ++len)
      weak_sequences(len, n, [&](const MultiIndex& i) { EXPECT_EQ(whitney_second(b, i), multinomial(n, i)); });
  }
}

TEST(WhitneySecond, Examples) {
  EXPECT_EQ(whitney_second(figure1(), {}), 1);
  const auto p4 = partition_lattice(4);
  EXPECT_EQ(whitney_second(p4, {1}), 6);
  EXPECT_EQ(whitney_second(p4, {2}), 7);
  EXPECT_EQ(whitney_second(p4, {2, 2}), 7);
  EXPECT_EQ(error_of([&] { whitney_second(p4, {4}); }), Errc::IndexOutOfRange);
  EXPECT_EQ(error_of([&] { whitney_second(p4, {2, 1}); }), Errc::IndexOutOfRange);
}

TEST(WhitneySecond, LevelProductsMatchEnumeration) {
  for (const auto& p : test_posets())
    for (int len = 0; len <= 3; ++len)
      weak_sequences(len, p.top_rank(), [&](const MultiIndex& i) {
        const auto fast = whitney_second(p, i);
        EXPECT_EQ(fast, whitney_second_naive(p, i)) << p.name();
        EXPECT_EQ(fast, count_flags(p, i)) << p.name();
      });
}

TEST(WhitneyFirst, Examples) {
  EXPECT_EQ(whitney_first(boolean_lattice(2), {0, 1}), -2);
  EXPECT_EQ(whitney_first(figure1(), {0, 2}), 2);
  for (const auto& p : test_posets())
    for (int j = 0; j <= p.top_rank(); ++j) EXPECT_EQ(whitney_first(p, {j, j}), Integer(p.level(j).size()));
}

TEST(WhitneyFirst, MatchesFullTable) {
  for (const auto& p : test_posets())
    for (int len = 2; len <= 3; ++len)
      weak_sequences(len, p.top_rank(), [&](const MultiIndex& i) {
        EXPECT_EQ(whitney_first(p, i), first_kind_from_table(p, i)) << p.name();
      });
}

TEST(WhitneyFirst, BooleanSignedMultinomial) {
  for (int n = 1; n <= 5; ++n) {
    const auto b = boolean_lattice(n);
    for (int i = 0; i <= n; ++i) {
      const Integer c = multinomial(n, {i});
      EXPECT_EQ(whitney_first(b, {0, i}), i % 2 == 0 ? c : Integer(-c));
    }
    // (-1)^{sum (i_j - i_1)} W_I in general
    for (int len = 1; len <= 3; ++len)
      weak_sequences(len, n, [&](const MultiIndex& idx) {
        int rel = 0;
        for (int x : idx) rel += x - idx[0];
        const Integer w = multinomial(n, idx);
        EXPECT_EQ(whitney_first(b, idx), rel % 2 == 0 ? w : Integer(-w));
      });
  }
}

TEST(Interpolation, Examples) {
  for (const auto& p : test_posets()) EXPECT_EQ(whitney_first_via_interpolation(p, 1), -whitney_second(p, {1}));
  EXPECT_EQ(whitney_first_via_interpolation(boolean_lattice(2), 2), 1);
  EXPECT_EQ(whitney_first_via_interpolation(figure1(), 2), 2);
  EXPECT_EQ(error_of([] { whitney_first_via_interpolation(figure1(), 3); }), Errc::IndexOutOfRange);
  EXPECT_EQ(error_of([] { whitney_first_via_interpolation(figure1(), 0); }), Errc::IndexOutOfRange);
}

TEST(Interpolation, MatchesDirect) {
  for (const auto& p : test_posets())
    for (int n = 1; n <= p.top_rank(); ++n) EXPECT_EQ(whitney_first_via_interpolation(p, n), whitney_first(p, {0, n}));
}

TEST(RegionCounts, Examples) {
  EXPECT_EQ(region_counts(boolean_lattice(2)), std::make_pair(Integer(4), Integer(0)));
  EXPECT_EQ(region_counts(figure1()), std::make_pair(Integer(6), Integer(0)));
  EXPECT_EQ(region_counts(chain(1)), std::make_pair(Integer(2), Integer(0)));
  EXPECT_EQ(region_counts(boolean_lattice(1)).first, 2);
  auto two = from_covers({"x", "y"}, {});
  EXPECT_EQ(error_of([&] { region_counts(two); }), Errc::NotBoundedBelow);
}

TEST(RegionCounts, CharacteristicPolynomialEvaluation) {
  for (const auto& p : test_posets()) {
    const auto chi = char_poly1(p);
    const Integer sign = p.top_rank() % 2 == 0 ? 1 : -1;
    const auto [a, b] = region_counts(p);
    EXPECT_EQ(a, sign * chi.evaluate(-1)) << p.name();
    EXPECT_EQ(b, sign * chi.evaluate(1)) << p.name();
  }
}

TEST(SummationLemmas, LocalizationRestrictionProduct) {
  for (const auto& p : test_posets()) {
    const int r = p.top_rank();
    for (int n = 1; n <= r; ++n) {
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        MultiIndex i;
        for (int j = 1; j < n; ++j)
          if ((mask >> (j - 1)) & 1u) i.push_back(j);
        Integer lhs = 0;
        for (Element x : p.level(n)) lhs += whitney_second(localization(p, x), i);
        MultiIndex full = i;
        full.push_back(n);
        EXPECT_EQ(lhs, whitney_second(p, full)) << p.name();
      }
    }
    for (int t = 0; t <= r; ++t) {
      for (std::uint32_t mask = 0; mask < (1u << (r - t)); ++mask) {
        MultiIndex i, shifted{t};
        for (int j = 1; j <= r - t; ++j)
          if ((mask >> (j - 1)) & 1u) {
            i.push_back(j);
            shifted.push_back(j + t);
          }
        Integer lhs = 0;
        for (Element x : p.level(t)) lhs += whitney_second(restriction(p, x), i);
        EXPECT_EQ(lhs, whitney_second(p, shifted)) << p.name();
      }
    }
    for (int k = 0; k <= r; ++k) {
      const MultiIndex lo{k > 1 ? 1 : 0}, hi{r - k};
      Integer lhs = 0;
      for (Element f : p.level(k)) lhs += whitney_second(localization(p, f), lo) * whitney_second(restriction(p, f), hi);
      EXPECT_EQ(lhs, whitney_second(p, {lo[0], k, r})) << p.name();
    }
  }
}
