#include <random>

#include <gtest/gtest.h>

#include "lcslab/construction.hpp"
#include "lcslab/oracle.hpp"
#include "lcslab/subgroup.hpp"

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

// Random words biased towards the commutator subgroup, so membership tests
// see both answers.
ReducedWord random_commutator_product(std::mt19937_64& rng, std::size_t pieces, std::size_t len) {
  ReducedWord w;
  for (std::size_t i = 0; i < pieces; ++i) w = w * commutator(random_word(rng, len), random_word(rng, len));
  return w;
}

const QuotientGroup kZ2 = FreeAbelianQuotient{};
const QuotientGroup kS3 = PermutationQuotient::parse("a=(1 2);b=(2 3)");
const QuotientGroup kV4 = PermutationQuotient::parse("a=(1 2);b=(3 4)");

}  // namespace

TEST(Permutations, ParseAndOrder) {
  const auto s3 = PermutationQuotient::parse("a=(1 2);b=(2 3)");
  EXPECT_EQ(s3.degree(), 3u);
  EXPECT_EQ(FiniteGroupTable(s3).order(), 6u);
  EXPECT_EQ(FiniteGroupTable(PermutationQuotient::parse("a=(1 2);b=(3 4)")).order(), 4u);
  EXPECT_EQ(FiniteGroupTable(PermutationQuotient::parse("a=(1 2 3 4 5);b=(1 2)")).order(), 120u);
  EXPECT_THROW(PermutationQuotient::parse("a=(1 2)"), QuotientParseError);
  EXPECT_THROW(PermutationQuotient::parse("a=(1 1);b=()"), QuotientParseError);
  EXPECT_THROW(parse_quotient("q8"), QuotientParseError);
}

TEST(InLambda, Examples) {
  for (const auto& q : {kZ2, kS3, kV4}) EXPECT_TRUE(in_lambda(ReducedWord{}, q));
  EXPECT_TRUE(in_lambda(W("abAB"), kZ2));
  EXPECT_FALSE(in_lambda(W("aa"), kZ2));
  EXPECT_TRUE(in_lambda(W("aa"), kS3));
  EXPECT_FALSE(in_lambda(W("ab"), kS3));
  EXPECT_TRUE(in_lambda(W("bb"), kV4));
}

TEST(InDerivedLambda, Examples) {
  EXPECT_TRUE(in_derived_lambda(ReducedWord{}, kZ2));
  EXPECT_FALSE(in_derived_lambda(W("abAB"), kZ2));
  EXPECT_TRUE(in_derived_lambda(build(2).b(2), kZ2));
  EXPECT_TRUE(in_derived_lambda(commutator(W("aa"), W("bb")), kV4));
  EXPECT_FALSE(in_derived_lambda(W("aa"), kV4));
}

TEST(InDerivedLambda, ImpliesInLambda) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 300; ++i) {
    const auto w = random_commutator_product(rng, 2, 4);
    for (const auto& q : {kZ2, kS3, kV4})
      if (in_derived_lambda(w, q)) EXPECT_TRUE(in_lambda(w, q));
  }
}

TEST(InDerivedLambda, CommutatorsOfLambdaElements) {
  std::mt19937_64 rng(73);
  for (const auto& q : {kZ2, kS3, kV4}) {
    std::vector<ReducedWord> members;
    while (members.size() < 20) {
      const auto w = random_word(rng, 8);
      if (!w.is_identity() && in_lambda(w, q)) members.push_back(w);
    }
    for (std::size_t i = 0; i + 1 < members.size(); ++i)
      EXPECT_TRUE(in_derived_lambda(commutator(members[i], members[i + 1]), q));
  }
}

TEST(Oracles, ConjugationInvariant) {
  std::mt19937_64 rng(79);
  const SecondDerivedOracle derived;
  const FiniteDerivedOracle derived_s3(std::get<PermutationQuotient>(kS3));
  for (int i = 0; i < 300; ++i) {
    const auto w = random_commutator_product(rng, 2, 3);
    const auto v = random_word(rng, 6);
    const auto c = conjugate(w, v);
    for (const auto& q : {kZ2, kS3, kV4}) {
      EXPECT_EQ(in_lambda(w, q), in_lambda(c, q));
      EXPECT_EQ(in_derived_lambda(w, q), in_derived_lambda(c, q));
    }
    EXPECT_EQ(derived.contains(w.letters()), derived.contains(c.letters()));
    EXPECT_EQ(derived_s3.contains(w.letters()), derived_s3.contains(c.letters()));
  }
}

// Two independent routes to [Lambda, Lambda]: the lattice-walk oracle and the
// Fox-derivative projection for Z^2; the table-driven oracle and the Fox
// projection for finite quotients.
TEST(Oracles, AgreeWithFoxProjection) {
  std::mt19937_64 rng(83);
  const SecondDerivedOracle derived;
  const FiniteDerivedOracle derived_s3(std::get<PermutationQuotient>(kS3));
  const FiniteDerivedOracle derived_v4(std::get<PermutationQuotient>(kV4));
  int positives = 0;
  for (int i = 0; i < 600; ++i) {
    const auto w = i % 2 ? random_commutator_product(rng, 3, 4) : random_word(rng, 14);
    const bool z = in_derived_lambda(w, kZ2);
    positives += z;
    EXPECT_EQ(derived.contains(w.letters()), z) << w.to_string();
    EXPECT_EQ(derived_s3.contains(w.letters()), in_derived_lambda(w, kS3)) << w.to_string();
    EXPECT_EQ(derived_v4.contains(w.letters()), in_derived_lambda(w, kV4)) << w.to_string();
  }
  EXPECT_GT(positives, 0);
}

TEST(Oracles, LowerCentralOracleAgreesWithDepth) {
  std::mt19937_64 rng(89);
  const LowerCentralOracle g3(3);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_commutator_product(rng, 2, 3);
    EXPECT_EQ(g3.contains(w.letters()), lcs_depth(w, 4).lower_bound() >= 3);
  }
}

TEST(Oracles, DerivedOfAbelianKernelLiesInGammaFour) {
  std::mt19937_64 rng(97);
  const SecondDerivedOracle derived;
  for (int i = 0; i < 200; ++i) {
    const auto w = commutator(random_commutator_product(rng, 1, 4), random_commutator_product(rng, 1, 4));
    ASSERT_TRUE(derived.contains(w.letters()));
    EXPECT_GE(lcs_depth(w, 5).lower_bound(), 4u);
  }
}

TEST(Oracles, LawsOfSmallGroups) {
  const LawOracle s3(PermutationQuotient::parse("a=(1 2);b=(2 3)"));
  EXPECT_EQ(s3.group_order(), 6u);
  EXPECT_EQ(s3.class_count(), 3u);
  EXPECT_TRUE(s3.contains(W("").letters()));
  EXPECT_FALSE(s3.contains(W("aa").letters()));
  EXPECT_TRUE(s3.contains(power(W("a"), 6).letters()));
  // S3 is metabelian: [[x,y],[z,t]] is a law
  EXPECT_TRUE(s3.contains(commutator(commutator(W("a"), W("b")), commutator(W("aa"), W("bA"))).letters()));
  const LawOracle v4(PermutationQuotient::parse("a=(1 2);b=(3 4)"));
  EXPECT_TRUE(v4.contains(W("aa").letters()));
  EXPECT_TRUE(v4.contains(W("abAB").letters()));
}

TEST(Oracles, Parse) {
  EXPECT_EQ(parse_oracle("z2").name(), "z2");
  EXPECT_EQ(parse_oracle("lcs:3").name(), "lcs:3");
  EXPECT_EQ(parse_oracle("derived2").name(), "derived2");
  EXPECT_EQ(parse_oracle("free").name(), "free");
  EXPECT_TRUE(parse_oracle("perm:a=(1 2);b=(2 3)").contains(W("aa").letters()));
  EXPECT_TRUE(parse_oracle("law:perm:a=(1 2);b=(3 4)").contains(W("aa").letters()));
  EXPECT_THROW(parse_oracle("lcs:"), QuotientParseError);
  EXPECT_THROW(parse_oracle("nope"), QuotientParseError);
}

TEST(Oracles, DeclaredAutomorphismsPreserveKernel) {
  // a -> b, b -> a does not preserve ker(a -> (1 2), b -> (2 3 4)), so it must
  // not be declared
  const auto q = PermutationQuotient::parse("a=(1 2);b=(2 3 4)");
  EXPECT_FALSE(preserves_kernel(q, signed_permutation(4)));
  EXPECT_TRUE(preserves_kernel(kS3, signed_permutation(4)));
  const FiniteKernelOracle o(q);
  EXPECT_FALSE((o.invariance().automorphisms >> 4) & 1u);
}
