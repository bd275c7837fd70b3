#include <gtest/gtest.h>

#include "lcslab/alpha.hpp"
#include "lcslab/construction.hpp"
#include "lcslab/subgroup.hpp"

using namespace lcslab;

namespace {

ReducedWord W(const char* s) { return ReducedWord::parse(s); }

GirthResult found(const GirthOutcome& g) {
  if (!std::holds_alternative<GirthResult>(g)) throw std::runtime_error("expected a girth");
  return std::get<GirthResult>(g);
}

// Declares full invariance without having it: "ba" is not the least of its
// orbit, so a pruned search never tries it.
struct DishonestOracle {
  bool contains(std::span<const Letter> w) const {
    const auto s = ReducedWord::from_reduced({w.begin(), w.end()});
    return s == W("ba") || s == W("aaa");
  }
  Invariance invariance() const { return Invariance::full(); }
  std::string name() const { return "dishonest"; }
};

}  // namespace

TEST(Girth, AbelianKernel) {
  const auto g = found(girth(AbelianKernelOracle{}, 6));
  EXPECT_EQ(g.value, 4u);
  EXPECT_TRUE(g.exact);
  EXPECT_EQ(exponent_sums(g.witness), (ExponentSums{0, 0}));
  EXPECT_EQ(cyclic_length(g.witness), 4u);
}

TEST(Girth, SymmetricGroupKernel) {
  const FiniteKernelOracle o(PermutationQuotient::parse("a=(1 2);b=(2 3)"));
  const auto g = found(girth(o, 4));
  EXPECT_EQ(g.value, 2u);
  EXPECT_EQ(g.witness, W("aa"));
}

TEST(Girth, LowerCentralThree) {
  const auto g = found(girth(LowerCentralOracle(3), 10));
  EXPECT_EQ(g.value, 8u);
  EXPECT_GE(lcs_depth(g.witness, 6).lower_bound(), 3u);
}

TEST(Girth, NotFoundIsExplicit) {
  const auto g = girth(AbelianKernelOracle{}, 3);
  ASSERT_TRUE(std::holds_alternative<NotFoundBelow>(g));
  EXPECT_EQ(std::get<NotFoundBelow>(g).max_len, 3u);
}

TEST(Girth, WitnessIsIndependentlyRechecked) {
  EXPECT_THROW(girth(DishonestOracle{}, 4), GirthVerificationError);
  GirthOptions honest;
  honest.prune = PruneFlags::none();
  EXPECT_EQ(found(girth(DishonestOracle{}, 4, honest)).witness, W("ba"));
}

TEST(Girth, UnprunedSearchAgrees) {
  GirthOptions plain;
  plain.prune = PruneFlags::none();
  const FiniteDerivedOracle o(PermutationQuotient::parse("a=(1 2);b=(3 4)"));
  const auto a = found(girth(o, 8));
  const auto b = found(girth(o, 8, plain));
  EXPECT_EQ(a.value, b.value);
  EXPECT_TRUE(o.contains(b.witness.letters()));
}

TEST(ThreeX, FiniteQuotients) {
  for (const char* spec : {"a=(1 2);b=(2 3)", "a=(1 2);b=(3 4)"}) {
    const auto rep = verify_three_x(PermutationQuotient::parse(spec), 8);
    EXPECT_EQ(rep.verdict, Verdict::pass) << spec << ": " << rep.detail;
    EXPECT_EQ(found(rep.lambda).value, 2u);
    EXPECT_GE(found(rep.derived).value, 6u);
    EXPECT_EQ(found(rep.derived).value, 8u);
  }
}

TEST(ThreeX, InconclusiveBelowTheDerivedGirth) {
  const auto rep = verify_three_x(FreeAbelianQuotient{}, 10);
  EXPECT_EQ(found(rep.lambda).value, 4u);
  EXPECT_TRUE(std::holds_alternative<NotFoundBelow>(rep.derived));
  // nothing of length <= 10 exists, but 12 is still possible
  EXPECT_EQ(rep.verdict, Verdict::inconclusive);
}

TEST(Beta, SmallCases) {
  const auto b0 = beta_bracket(0);
  ASSERT_TRUE(b0.exact);
  EXPECT_EQ(b0.exact->value, 1u);
  const auto b1 = beta_bracket(1);
  ASSERT_TRUE(b1.exact);
  EXPECT_EQ(b1.exact->value, 4u);
  EXPECT_EQ(b1.lower, 3u);
  EXPECT_EQ(b1.upper, 4u);
  const auto b2 = beta_bracket(2, 10);
  EXPECT_EQ(b2.lower, 9u);
  EXPECT_EQ(b2.upper, 14u);
  EXPECT_FALSE(b2.exact);
}

TEST(Beta, ConstructionWitnessesLieInDerivedSeries) {
  const auto seq = build(2);
  EXPECT_TRUE(AbelianKernelOracle{}.contains(seq.b(1).letters()));
  EXPECT_TRUE(SecondDerivedOracle{}.contains(seq.b(2).letters()));
  EXPECT_TRUE(SecondDerivedOracle{}.contains(seq.a(2).letters()));
  EXPECT_FALSE(SecondDerivedOracle{}.contains(seq.b(1).letters()));
}

TEST(Alpha, SmallValues) {
  EXPECT_THROW(alpha(3, 8, 2), std::invalid_argument);
  AlphaTable t;
  for (unsigned n = 1; n <= 3; ++n) t.add(alpha(n, 10, 6));
  EXPECT_EQ(t.value(1), 1u);
  EXPECT_EQ(t.value(2), 4u);
  EXPECT_EQ(t.value(3), 8u);
  EXPECT_TRUE(t.monotone());
  EXPECT_TRUE(t.at_least_n());
  EXPECT_TRUE(t.submultiplicativity_violations().empty());
  EXPECT_NEAR(t.quotients().at(2), 2.0, 1e-12);
  EXPECT_EQ(t.entries().at(3).witness_depth, Depth::exact(3));
}

TEST(Alpha, TableFlagsInconsistentData) {
  AlphaTable t;
  AlphaEntry e2;
  e2.n = 2;
  e2.value = 4;
  e2.exact = true;
  AlphaEntry e4 = e2;
  e4.n = 4;
  e4.value = 17;  // above alpha(2)^2
  AlphaEntry e3 = e2;
  e3.n = 3;
  e3.value = 2;  // below n, and below alpha(2)
  t.add(e2);
  t.add(e3);
  t.add(e4);
  EXPECT_FALSE(t.monotone());
  EXPECT_FALSE(t.at_least_n());
  EXPECT_EQ(t.submultiplicativity_violations().size(), 1u);
}
