#include <random>

#include <gtest/gtest.h>

#include "lcslab/construction.hpp"
#include "lcslab/magnus.hpp"

using namespace lcslab;

namespace {

ReducedWord W(const char* s) { return ReducedWord::parse(s); }
Monomial M(const char* s) { return Monomial::parse(s); }

ReducedWord random_word(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 3);
  WordBuilder b;
  for (std::size_t i = len(rng); i > 0; --i) b.push(kAllLetters[pick(rng)]);
  return std::move(b).finish();
}

}  // namespace

TEST(LetterSeries, Examples) {
  const auto a = letter_series(Letter::a, 2);
  EXPECT_EQ(a.coefficient(M("1")), 1);
  EXPECT_EQ(a.coefficient(M("Xa")), 1);
  EXPECT_EQ(a.terms().size(), 2u);

  const auto ai = letter_series(Letter::A, 2);
  EXPECT_EQ(ai.coefficient(M("1")), 1);
  EXPECT_EQ(ai.coefficient(M("Xa")), -1);
  EXPECT_EQ(ai.coefficient(M("XaXa")), 1);
  EXPECT_EQ(ai.terms().size(), 3u);

  EXPECT_EQ(letter_series(Letter::a, 3) * letter_series(Letter::A, 3), NcSeries<>::one(3));
}

TEST(Expand, Examples) {
  const auto c = expand(W("abAB"), 2);
  EXPECT_EQ(c.coefficient(M("1")), 1);
  EXPECT_EQ(c.coefficient(M("XaXb")), 1);
  EXPECT_EQ(c.coefficient(M("XbXa")), -1);
  EXPECT_EQ(c.terms().size(), 3u);

  EXPECT_EQ(expand(ReducedWord{}, 5), NcSeries<>::one(5));

  const auto aa = expand(W("aa"), 2);
  EXPECT_EQ(aa.coefficient(M("Xa")), 2);
  EXPECT_EQ(aa.coefficient(M("XaXa")), 1);
  EXPECT_EQ(aa.terms().size(), 3u);
}

TEST(Expand, Homomorphism) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_word(rng, 10), v = random_word(rng, 10);
    EXPECT_EQ(expand(u * v, 6), expand(u, 6) * expand(v, 6));
  }
}

TEST(Expand, CheckedAndBigCoefficientsAgree) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const auto w = random_word(rng, 20);
    const auto big = expand(w, 7);
    const auto small = expand<CheckedInt64>(w, 7);
    EXPECT_EQ(big.min_positive_degree(), small.min_positive_degree());
    EXPECT_EQ(big.to_string(), small.to_string());
  }
}

TEST(Depth, Examples) {
  EXPECT_EQ(lcs_depth(W("a"), 4), Depth::exact(1));
  EXPECT_EQ(lcs_depth(W("abAB"), 4), Depth::exact(2));
  EXPECT_EQ(lcs_depth(ReducedWord{}, 4), Depth::infinite());
  const auto seq = build(3);
  EXPECT_GE(lcs_depth(seq.b(2), 6).lower_bound(), 5u);
  EXPECT_TRUE(lcs_depth(seq.b(2), 6).is_exact());
  // below the true depth the result is only a bound
  const auto shallow = lcs_depth(seq.b(2), 3);
  EXPECT_FALSE(shallow.is_exact());
  EXPECT_EQ(shallow.lower_bound(), 4u);
}

TEST(Depth, LengthBoundsExactDepth) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    const auto w = random_word(rng, 12);
    const auto d = lcs_depth(w, 8);
    if (d.is_exact()) EXPECT_GE(w.length(), d.value());
  }
}

TEST(Depth, ConjugationInvariant) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_word(rng, 10), v = random_word(rng, 6);
    EXPECT_EQ(lcs_depth(conjugate(w, v), 8), lcs_depth(w, 8));
  }
}

TEST(Depth, MembershipMatchesDepth) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_word(rng, 10);
    const auto d = lcs_depth(w, 6);
    for (unsigned n = 1; n <= 6; ++n) EXPECT_EQ(in_lower_central_term(w.letters(), n), d.lower_bound() >= n);
  }
}

TEST(Fox, Examples) {
  auto d = fox_derivative(W("a"), Generator::a);
  EXPECT_EQ(d.support_size(), 1u);
  EXPECT_EQ(d.coefficient(ReducedWord{}), 1);

  d = fox_derivative(W("A"), Generator::a);
  EXPECT_EQ(d.support_size(), 1u);
  EXPECT_EQ(d.coefficient(W("A")), -1);

  d = fox_derivative(W("abAB"), Generator::a);
  EXPECT_EQ(d.support_size(), 2u);
  EXPECT_EQ(d.coefficient(ReducedWord{}), 1);
  EXPECT_EQ(d.coefficient(W("abA")), -1);

  EXPECT_TRUE(fox_derivative(ReducedWord{}, Generator::b).is_zero());
  EXPECT_TRUE(fox_derivative(W("aa"), Generator::b).is_zero());
}

TEST(Fox, FundamentalIdentity) {
  // w - eps(w) = (dw/da)(a - 1) + (dw/db)(b - 1)
  std::mt19937_64 rng(61);
  auto mul = [](const ReducedWord& x, const ReducedWord& y) { return x * y; };
  for (int i = 0; i < 200; ++i) {
    const auto w = random_word(rng, 14);
    FreeGroupRingElement lhs;
    lhs.add(w, 1);
    lhs.add(ReducedWord{}, -1);
    FreeGroupRingElement a_minus_1, b_minus_1;
    a_minus_1.add(W("a"), 1);
    a_minus_1.add(ReducedWord{}, -1);
    b_minus_1.add(W("b"), 1);
    b_minus_1.add(ReducedWord{}, -1);
    const auto rhs = fox_derivative(w, Generator::a).times(a_minus_1, mul) +
                     fox_derivative(w, Generator::b).times(b_minus_1, mul);
    EXPECT_EQ(lhs, rhs) << w.to_string();
  }
}

TEST(Fox, ProductRule) {
  std::mt19937_64 rng(67);
  auto mul = [](const ReducedWord& x, const ReducedWord& y) { return x * y; };
  for (int i = 0; i < 200; ++i) {
    const auto u = random_word(rng, 9), v = random_word(rng, 9);
    for (Generator g : {Generator::a, Generator::b}) {
      FreeGroupRingElement left;
      left.add(u, 1);
      auto expected = fox_derivative(u, g) + left.times(fox_derivative(v, g), mul);
      EXPECT_EQ(fox_derivative(u * v, g), expected);
    }
  }
}

TEST(Series, TruncationLimit) {
  EXPECT_THROW(NcSeries<>(kMaxTruncation + 1), SeriesBudgetExceeded);
  EXPECT_THROW(expand(W("a"), 2).coefficient(M("XaXaXa")), std::out_of_range);
}
