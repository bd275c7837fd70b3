#include <random>

#include <gtest/gtest.h>

#include "lcslab/nielsen.hpp"
#include "lcslab/quotient.hpp"
#include "lcslab/search.hpp"

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

std::size_t total_length(const std::vector<ReducedWord>& ws) {
  std::size_t n = 0;
  for (const auto& w : ws) n += w.length();
  return n;
}

}  // namespace

TEST(Nielsen, DuplicateRemoved) {
  const auto out = nielsen_reduce({W("a"), W("a")});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].length(), 1u);
}

TEST(Nielsen, ProductPair) {
  const auto out = nielsen_reduce({W("ab"), W("b")});
  EXPECT_EQ(out.size(), 2u);
  EXPECT_LE(total_length(out), 3u);
  EXPECT_FALSE(check_nielsen_conditions(out).has_value());
  const StallingsGraph g(out);
  EXPECT_TRUE(g.contains(W("a")));
  EXPECT_TRUE(g.contains(W("b")));
}

TEST(Nielsen, IdentityRemoved) {
  const auto out = nielsen_reduce({W("1"), W("a")});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].length(), 1u);
  EXPECT_TRUE(nielsen_reduce(std::vector<ReducedWord>{}).empty());
}

TEST(Nielsen, CheckerRejectsNonReducedSets) {
  EXPECT_EQ(check_nielsen_conditions({W("1")})->condition, 1);
  // ab * B is shorter than ab
  EXPECT_TRUE(check_nielsen_conditions({W("ab"), W("b")}).has_value());
  EXPECT_TRUE(check_nielsen_conditions({W("abA"), W("aBBA")}).has_value());
  EXPECT_FALSE(check_nielsen_conditions({W("a"), W("b")}).has_value());
  EXPECT_FALSE(check_nielsen_conditions({W("aa"), W("bab")}).has_value());
}

TEST(Nielsen, RandomListsReduceAndSpanTheSameSubgroup) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> count(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ReducedWord> gens(count(rng));
    for (auto& g : gens) g = random_word(rng, 8);
    const StallingsGraph graph(gens);
    const auto basis = graph.basis();
    const auto bad = check_nielsen_conditions(basis);
    EXPECT_FALSE(bad.has_value()) << bad->to_string();
    EXPECT_LE(basis.size(), gens.size());
    // each original generator is a product of basis elements
    for (const auto& g : gens) {
      const auto f = express_in_basis(graph, g);
      ASSERT_TRUE(f.has_value()) << g.to_string();
      EXPECT_EQ(evaluate_factors(basis, *f), g);
    }
    // each basis element lies in the subgroup the generators span
    const StallingsGraph back(basis);
    for (const auto& g : gens) EXPECT_TRUE(back.contains(g));
    const StallingsGraph from_gens(gens);
    for (const auto& b : basis) EXPECT_TRUE(from_gens.contains(b));
  }
}

TEST(Nielsen, FoldedGraphMembership) {
  const std::vector<ReducedWord> gg{W("aa"), W("bab")};
  const StallingsGraph g(gg);
  EXPECT_TRUE(g.contains(W("aaaa")));
  EXPECT_TRUE(g.contains(W("babaa")));
  EXPECT_FALSE(g.contains(W("a")));
  EXPECT_FALSE(g.contains(W("ba")));
  // <a^2, b^2, ab> has index 2 and contains every even-length word
  const std::vector<ReducedWord> hh{W("aa"), W("bb"), W("ab")};
  const StallingsGraph h(hh);
  EXPECT_EQ(h.vertex_count(), 2u);
  EXPECT_TRUE(h.contains(W("aB")));
  EXPECT_FALSE(h.contains(W("aBa")));
}

TEST(Nielsen, KernelOfFiniteQuotientHasSchreierRank) {
  // ker(F2 -> S3) has index 6 and rank 1 + 6 (2 - 1) = 7
  const auto q = PermutationQuotient::parse("a=(1 2);b=(2 3)");
  const FiniteGroupTable t(q);
  std::vector<ReducedWord> gens;
  for (const auto& w : enumerate_words(6, Pruning::none()))
    if (t.evaluate(w.letters()) == 0) gens.push_back(w);
  const auto basis = nielsen_reduce(gens);
  EXPECT_EQ(basis.size(), 7u);
  for (const auto& b : basis) EXPECT_EQ(t.evaluate(b.letters()), 0u);
}
