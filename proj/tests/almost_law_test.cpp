#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lcslab/almost_law.hpp"
#include "lcslab/construction.hpp"
#include "lcslab/oracle.hpp"
#include "lcslab/quotient.hpp"

using namespace lcslab;

namespace {

ReducedWord W(const char* s) { return ReducedWord::parse(s); }

ReducedWord random_word(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, 3);
  WordBuilder b;
  for (std::size_t i = len(rng); i > 0; --i) b.push(kAllLetters[pick(rng)]);
  return std::move(b).finish();
}

}  // namespace

TEST(Su2, EvaluationIsAHomomorphism) {
  std::mt19937_64 rng(107);
  const Su2Group g;
  for (int i = 0; i < 200; ++i) {
    const auto x = random_word(rng, 12), y = random_word(rng, 12);
    const Su2 u = g.random(rng), v = g.random(rng);
    const Su2 lhs = evaluate(x * y, u, v);
    const Su2 rhs = evaluate(x, u, v) * evaluate(y, u, v);
    EXPECT_LT(lhs.distance(rhs), 1e-10);
    EXPECT_LT(evaluate(inverse(x), u, v).distance(evaluate(x, u, v).inverse()), 1e-10);
  }
}

TEST(Su2, DistanceToIdentity) {
  EXPECT_DOUBLE_EQ(Su2::identity().distance_to_identity(), 0.0);
  const Su2 minus_one{{-1.0, 0.0}, {0.0, 0.0}};
  EXPECT_DOUBLE_EQ(minus_one.distance_to_identity(), 2.0);
  // agrees with the operator norm of 1 - U
  std::mt19937_64 rng(109);
  const Su2Group g;
  for (int i = 0; i < 50; ++i) {
    const Su2 u = g.random(rng);
    const Eigen::Matrix2cd d = Eigen::Matrix2cd::Identity() - u.matrix();
    EXPECT_NEAR(u.distance_to_identity(), Eigen::JacobiSVD<Eigen::Matrix2cd>(d).singularValues()(0), 1e-12);
  }
}

TEST(Sampling, SingleLetterReachesDiameter) {
  const auto est = estimate_L(W("a"), {2000, 200}, 5);
  EXPECT_GT(est.lower, 1.999);
  EXPECT_LE(est.lower, 2.0 + 1e-12);
  EXPECT_DOUBLE_EQ(estimate_L(ReducedWord{}, {10, 0}, 5).lower, 0.0);
}

TEST(Sampling, IndependentOfWorkerCount) {
  const auto w = W("abAB");
  const auto one = estimate_L(w, {3000, 50}, 11, 1);
  const auto four = estimate_L(w, {3000, 50}, 11, 4);
  EXPECT_EQ(one.lower, four.lower);
  EXPECT_EQ(one.u.alpha, four.u.alpha);
  EXPECT_NE(estimate_L(w, {3000, 0}, 12).lower, estimate_L(w, {3000, 0}, 11).lower);
}

TEST(Sampling, SukStaysUnitary) {
  const SukGroup g(3);
  std::mt19937_64 rng(113);
  for (int i = 0; i < 20; ++i) {
    const auto u = g.random(rng), v = g.random(rng);
    EXPECT_LT(g.defect(u), 1e-12);
    EXPECT_NEAR(std::abs(u.determinant() - 1.0), 0.0, 1e-10);
    const auto x = evaluate(g, W("abABaabbAB").letters(), u, v);
    EXPECT_LT(g.defect(x), 1e-12);
    const auto y = g.nudge(u, 7, 0.3);
    EXPECT_LT(g.defect(y), 1e-12);
  }
  const auto est = estimate_L(W("abAB"), 3, {500, 20}, 3);
  EXPECT_GT(est.lower, 1.0);
  EXPECT_LE(est.lower, 2.0 + 1e-9);
}

TEST(Family, MatchesEvaluationOfTheBuiltWords) {
  const auto seq = build(4, W("abAB"), W("aBAb"));
  std::mt19937_64 rng(127);
  const Su2Group g;
  const Su2 u = g.random(rng), v = g.random(rng);
  const auto fam = evaluate_family(g, W("abAB"), W("aBAb"), 4, u, v);
  ASSERT_EQ(fam.size(), 5u);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_LT(fam[n].distance(evaluate(seq.a(n), u, v)), 1e-9) << n;
}

TEST(Certify, UpperBoundDominatesSampledLower) {
  for (const char* s : {"a", "ab", "abAB"}) {
    const auto w = W(s);
    const auto upper = certify_seed(w, 0.05).upper;
    const auto lower = estimate_L(w, {2000, 100}, 17).lower;
    EXPECT_GE(upper, lower) << s;
    EXPECT_LE(upper, 2.0);
  }
  EXPECT_EQ(certify_seed(ReducedWord{}, 0.1).upper, 0.0);
  EXPECT_THROW(certify_seed(W("ab"), 0.0), std::invalid_argument);
  EXPECT_THROW(certify_seed(W("ab"), 1e-3, {1, 1000}), CertificationBudgetExceeded);
}

TEST(Certify, GridSlackIsExplicit) {
  const auto cb = certify_seed(W("abAB"), 0.1);
  const auto& p = std::get<GridProvenance>(cb.provenance);
  EXPECT_EQ(p.lipschitz, 4.0);
  EXPECT_GT(p.points, 0u);
  EXPECT_GE(cb.upper, std::min(2.0, p.grid_max + 4.0 * 2.0 * 0.1));
}

TEST(Propagate, Arithmetic) {
  const auto b = propagate_bounds(0.1, 0.05, 4);
  ASSERT_EQ(b.size(), 5u);
  EXPECT_DOUBLE_EQ(b[0].upper, 0.1);
  EXPECT_NEAR(b[1].upper, 2 * 0.1 * 0.05, 1e-15);
  EXPECT_NEAR(b[2].upper, 4 * b[1].upper * b[1].upper * b[0].upper, 1e-15);
  EXPECT_NEAR(b[3].upper, 4 * b[2].upper * b[2].upper * b[1].upper, 1e-18);
  for (std::size_t n = 2; n < b.size(); ++n) EXPECT_GE(b[n].upper, 4 * b[n - 1].upper * b[n - 1].upper * b[n - 2].upper);
  // large seeds saturate at the diameter
  EXPECT_EQ(propagate_bounds(1.5, 1.5, 3).back().upper, 2.0);
}

TEST(Decay, RefusesLargeSeeds) {
  EXPECT_THROW(run_decay(W("a"), W("b"), 0.5, 0.1, 2, {10, 0}, 1), SeedBoundTooLarge);
}

TEST(Decay, FitOnSyntheticRows) {
  // -log(2 U_n) = 0.5 (1 + sqrt 2)^n exactly
  std::vector<DecayRow> rows;
  for (std::size_t n = 0; n <= 6; ++n) {
    DecayRow r;
    r.n = n;
    r.length = static_cast<std::size_t>(std::llround(std::pow(3.56, static_cast<double>(n)) * 4));
    r.minus_log_2upper = 0.5 * std::pow(kSilverRatio, static_cast<double>(n));
    r.upper = std::exp(-r.minus_log_2upper) / 2;
    r.ratio = 0.5;
    rows.push_back(r);
  }
  const auto f = fit_decay(rows);
  EXPECT_NEAR(f.d_hat, 0.5, 1e-12);
  EXPECT_NEAR(f.exponent, std::log(kSilverRatio) / std::log(3.56), 5e-3);
  EXPECT_GT(f.c_hat, 0.0);

  rows[3].minus_log_2upper = -0.1;
  EXPECT_EQ(fit_decay(rows).d_hat, 0.0);
}

TEST(Decay, RunWithAssumedSeedBounds) {
  // the bounds are assumptions here; the run only exercises the plumbing
  const auto t = run_decay(W("abAB"), W("aBAb"), 0.3, 0.3, 3, {200, 5}, 7);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_TRUE(t.words_nontrivial);
  EXPECT_EQ(t.rows[0].length, 4u);
  for (std::size_t n = 1; n < t.rows.size(); ++n) {
    EXPECT_GT(t.rows[n].length, t.rows[n - 1].length);
    EXPECT_LT(t.rows[n].upper, t.rows[n - 1].upper);
  }
  EXPECT_FALSE(t.lower_below_upper);  // a commutator is far from a 0.3-almost law
}

TEST(Icosahedral, GroupAndGap) {
  const FiniteGroupTable t(binary_icosahedral_permutations());
  EXPECT_EQ(t.order(), 120u);
  EXPECT_NEAR(binary_icosahedral_gap(), (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
  EXPECT_GT(binary_icosahedral_gap(), kSeedBound);
  const LawOracle laws(binary_icosahedral_permutations());
  EXPECT_FALSE(laws.contains(W("abAB").letters()));
  EXPECT_TRUE(laws.contains(power(W("a"), 60).letters()));
}
