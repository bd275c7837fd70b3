#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "lcslab/oracle.hpp"
#include "lcslab/search.hpp"

using namespace lcslab;

namespace {

std::size_t pow3(std::size_t k) {
  std::size_t p = 1;
  while (k--) p *= 3;
  return p;
}

std::map<std::size_t, std::size_t> counts_by_length(const std::vector<ReducedWord>& ws) {
  std::map<std::size_t, std::size_t> c;
  for (const auto& w : ws) ++c[w.length()];
  return c;
}

bool cyclically_reduced(const ReducedWord& w) { return w.length() < 2 || w.front() != inverse(w.back()); }

// Brute-force orbit of w under rotations, inversion and the given letter maps.
std::set<ReducedWord> orbit(const ReducedWord& w, bool with_inversion, bool with_autos) {
  std::set<ReducedWord> out;
  const unsigned autos = with_autos ? kSignedPermutationCount : 1;
  for (unsigned f = 0; f < autos; ++f)
    for (int inv = 0; inv <= (with_inversion ? 1 : 0); ++inv) {
      ReducedWord x = apply(signed_permutation(f), inv ? inverse(w) : w);
      const auto xs = x.letters();
      for (std::size_t r = 0; r < xs.size(); ++r) {
        std::vector<Letter> rot(xs.begin() + static_cast<std::ptrdiff_t>(r), xs.end());
        rot.insert(rot.end(), xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(r));
        out.insert(ReducedWord::from_reduced(std::move(rot)));
      }
    }
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("lcslab_search_test_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST(Enumerate, UnprunedCounts) {
  const auto ws = enumerate_words(7, Pruning::none());
  const auto c = counts_by_length(ws);
  for (std::size_t len = 1; len <= 7; ++len) EXPECT_EQ(c.at(len), 4 * pow3(len - 1)) << "length " << len;
  EXPECT_EQ(enumerate_words(1, Pruning::none()).size(), 4u);
  EXPECT_EQ(enumerate_words(2, Pruning::none()).size(), 16u);
}

TEST(Enumerate, ShortlexOrderWithoutDuplicates) {
  const auto ws = enumerate_words(6, Pruning::none());
  for (std::size_t i = 1; i < ws.size(); ++i) EXPECT_TRUE(shortlex_less(ws[i - 1], ws[i]));
}

TEST(Enumerate, CyclicInversionClassesAtLengthThree) {
  const Pruning p(PruneFlags{true, true, false}, Invariance{true, true, 1});
  std::vector<ReducedWord> reps;
  for (const auto& w : enumerate_words(3, p))
    if (w.length() == 3) reps.push_back(w);
  EXPECT_LT(reps.size(), 36u);

  std::set<ReducedWord> expanded;
  for (const auto& r : reps)
    for (const auto& x : orbit(r, true, false)) expanded.insert(x);
  std::set<ReducedWord> cyclic_words;
  for (const auto& w : enumerate_words(3, Pruning::none()))
    if (w.length() == 3 && cyclically_reduced(w)) cyclic_words.insert(w);
  EXPECT_EQ(cyclic_words.size(), 28u);
  EXPECT_EQ(expanded, cyclic_words);

  // the remaining 8 words of length 3 are conjugates of single letters
  std::size_t others = 0;
  for (const auto& w : enumerate_words(3, Pruning::none()))
    if (w.length() == 3 && !cyclically_reduced(w)) {
      ++others;
      EXPECT_EQ(cyclic_length(w), 1u);
    }
  EXPECT_EQ(others, 8u);
}

TEST(Enumerate, FullPruningYieldsOneLeastRepresentativePerOrbit) {
  const Pruning p(PruneFlags{}, Invariance::full());
  EXPECT_EQ(p.automorphism_count(), 8u);
  const auto reps = enumerate_words(8, p);
  const std::set<ReducedWord> rep_set(reps.begin(), reps.end());
  EXPECT_EQ(rep_set.size(), reps.size());
  std::set<ReducedWord> minima;
  for (const auto& w : enumerate_words(8, Pruning::none()))
    if (cyclically_reduced(w)) minima.insert(*orbit(w, true, true).begin());
  EXPECT_EQ(rep_set, minima);
}

TEST(Enumerate, PrunedClassCountGrowsSlowly) {
  const Pruning p(PruneFlags{}, Invariance::full());
  auto c = counts_by_length(enumerate_words(10, p));
  for (std::size_t len = 4; len <= 10; ++len) EXPECT_LT(c[len] * 8, 4 * pow3(len - 1)) << "length " << len;
}

TEST(Pruning, RespectsDeclaredInvariance) {
  const Pruning p(PruneFlags{}, Invariance{false, true, 1});
  EXPECT_FALSE(p.cyclic());
  EXPECT_TRUE(p.inversion());
  EXPECT_EQ(p.automorphism_count(), 1u);
  // a set of maps that is not a group falls back to none
  const Pruning q(PruneFlags{}, Invariance{true, true, 0b11});
  EXPECT_EQ(q.automorphism_count(), 2u);
  const Pruning r(PruneFlags{}, Invariance{true, true, 0b10011});
  EXPECT_EQ(r.automorphism_count(), 1u);
}

TEST(Pruning, LeastRotation) {
  const auto w = ReducedWord::parse("bab");
  EXPECT_EQ(Pruning::least_rotation(w.letters()), 1u);
  EXPECT_EQ(Pruning::least_rotation(ReducedWord::parse("abab").letters()) % 2, 0u);
}

TEST(FindFirst, PrunedAndUnprunedAgree) {
  const std::vector<OracleRef> oracles{parse_oracle("z2"), parse_oracle("lcs:3"),
                                       parse_oracle("perm:a=(1 2);b=(2 3)"), parse_oracle("perm:a=(1 2 3);b=(1 2)"),
                                       parse_oracle("derived:perm:a=(1 2);b=(3 4)")};
  for (const auto& o : oracles) {
    SearchOptions pruned;
    pruned.max_len = 10;
    SearchOptions plain = pruned;
    plain.prune = PruneFlags::none();
    const auto a = find_first(o, pruned), b = find_first(o, plain);
    ASSERT_EQ(a.witness.has_value(), b.witness.has_value()) << o.name();
    if (a.witness) {
      EXPECT_EQ(a.witness->length(), b.witness->length()) << o.name();
      EXPECT_TRUE(o.contains(a.witness->letters()));
      EXPECT_EQ(scan_length_unpruned(o, a.witness->length()), b.witness) << o.name();
    }
  }
}

TEST(FindFirst, IndependentOfWorkersAndShards) {
  const auto o = parse_oracle("lcs:3");
  std::optional<ReducedWord> first;
  for (std::size_t workers : {1, 2, 4})
    for (std::size_t shards : {1, 7, 64}) {
      SearchOptions s;
      s.max_len = 9;
      s.workers = workers;
      s.shards = shards;
      const auto r = find_first(o, s);
      ASSERT_TRUE(r.witness);
      if (!first) first = r.witness;
      EXPECT_EQ(*r.witness, *first) << workers << " workers, " << shards << " shards";
    }
  EXPECT_EQ(first->length(), 8u);
}

TEST(FindFirst, NotFound) {
  SearchOptions s;
  s.max_len = 3;
  const auto r = find_first(parse_oracle("z2"), s);
  EXPECT_FALSE(r.witness);
  EXPECT_EQ(r.searched_up_to, 3u);
}

TEST(FindFirst, DeadlineInThePast) {
  SearchOptions s;
  s.max_len = 30;
  s.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  EXPECT_THROW(find_first(parse_oracle("derived2"), s), SearchTimeout);
}

TEST(Checkpoint, SerializeRoundTrip) {
  CheckpointState s;
  s.status = CheckpointState::Status::found;
  s.fingerprint = 0x0123456789ABCDEFull;
  s.length = 11;
  s.shard_count = 13;
  s.done.assign(13, false);
  s.done[0] = s.done[5] = s.done[12] = true;
  s.best_shard = 5;
  const auto best = ReducedWord::parse("aabABBAb");
  s.best.assign(best.letters().begin(), best.letters().end());

  const auto bytes = serialize_checkpoint(s);
  EXPECT_EQ(bytes.substr(0, 8), "LCSLABCK");
  const auto t = deserialize_checkpoint(bytes);
  EXPECT_EQ(t.status, s.status);
  EXPECT_EQ(t.fingerprint, s.fingerprint);
  EXPECT_EQ(t.length, s.length);
  EXPECT_EQ(t.shard_count, s.shard_count);
  EXPECT_EQ(t.done, s.done);
  EXPECT_EQ(t.best_shard, s.best_shard);
  EXPECT_EQ(t.best, s.best);
}

TEST(Checkpoint, CorruptionDetected) {
  CheckpointState s;
  s.shard_count = 9;
  s.done.assign(9, true);
  const auto bytes = serialize_checkpoint(s);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    auto bad = bytes;
    bad[i] = static_cast<char>(bad[i] ^ 0x10);
    EXPECT_THROW(deserialize_checkpoint(bad), CheckpointError) << "byte " << i;
  }
  EXPECT_THROW(deserialize_checkpoint(bytes.substr(0, bytes.size() - 1)), CheckpointError);
  EXPECT_THROW(deserialize_checkpoint(""), CheckpointError);
}

TEST(Checkpoint, ResumeGivesSameWitness) {
  const auto path = temp_path("resume.ckpt");
  const auto o = parse_oracle("lcs:3");
  SearchOptions s;
  s.max_len = 9;
  s.checkpoint = path;
  const auto a = find_first(o, s);
  ASSERT_TRUE(a.witness);
  EXPECT_FALSE(a.resumed);
  EXPECT_TRUE(std::filesystem::exists(path));
  const auto b = find_first(o, s);
  EXPECT_TRUE(b.resumed);
  EXPECT_EQ(a.witness, b.witness);
  std::filesystem::remove(path);
}

TEST(Checkpoint, ExhaustedSearchExtends) {
  const auto path = temp_path("extend.ckpt");
  const auto o = parse_oracle("z2");
  SearchOptions s;
  s.max_len = 3;
  s.checkpoint = path;
  EXPECT_FALSE(find_first(o, s).witness);
  s.max_len = 5;
  const auto r = find_first(o, s);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->length(), 4u);
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsForeignSearch) {
  const auto path = temp_path("foreign.ckpt");
  SearchOptions s;
  s.max_len = 5;
  s.checkpoint = path;
  find_first(parse_oracle("z2"), s);
  EXPECT_THROW(find_first(parse_oracle("lcs:3"), s), CheckpointError);
  {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << "garbage";
  }
  EXPECT_THROW(find_first(parse_oracle("z2"), s), CheckpointError);
  std::filesystem::remove(path);
}
