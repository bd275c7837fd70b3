#pragma once

// Exhaustive enumeration of reduced words by increasing length, with
// symmetry pruning and prefix-sharded parallel first-hit search.
//
// Within one length words are produced in lexicographic order (a < A < b < B)
// by a depth-first walk that never emits an adjacent inverse pair. With
// cyclic pruning only cyclically reduced words are produced, and of each
// orbit under rotation (plus inversion and letter automorphisms, when
// enabled) only the lexicographically least member. Branches that cannot end
// in a least rotation are cut with the prenecklace test.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lcslab/checkpoint.hpp"
#include "lcslab/oracle.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

struct PruneFlags {
  bool cyclic = true;
  bool inversion = true;
  bool automorphisms = true;

  static PruneFlags none() { return {false, false, false}; }
};

class SearchTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pruning actually in force: requested flags intersected with what the oracle
// declares.
class Pruning {
 public:
  Pruning(PruneFlags flags, Invariance inv) {
    cyclic_ = flags.cyclic && inv.conjugation;
    inversion_ = flags.inversion && inv.inversion;
    for (unsigned i = 0; i < kSignedPermutationCount; ++i)
      if ((i == 0) || (flags.automorphisms && ((inv.automorphisms >> i) & 1u))) autos_.push_back(signed_permutation(i));
    if (!closed_under_composition()) autos_.resize(1);

    for (const auto& f : autos_)
      for (bool inv_flag : {false, true}) {
        if (inv_flag && !inversion_) continue;
        if (!inv_flag && f == LetterAutomorphism{}) continue;
        transforms_.push_back({f, inv_flag});
      }

    for (Letter x : kAllLetters) {
      bool ok = true;
      for (const auto& t : transforms_) {
        if (t.invert && !cyclic_) continue;
        const Letter y = t.invert ? t.map(inverse(x)) : t.map(x);
        if (y < x) ok = false;
      }
      first_allowed_[static_cast<std::uint8_t>(x)] = ok;
    }
  }

  static Pruning none() { return Pruning(PruneFlags::none(), Invariance{}); }

  bool cyclic() const noexcept { return cyclic_; }
  bool inversion() const noexcept { return inversion_; }
  std::size_t automorphism_count() const noexcept { return autos_.size(); }
  bool first_allowed(Letter x) const noexcept { return first_allowed_[static_cast<std::uint8_t>(x)]; }

  std::string describe() const {
    return std::string("cyclic=") + (cyclic_ ? "1" : "0") + ";inverse=" + (inversion_ ? "1" : "0") +
           ";autos=" + std::to_string(autos_.size());
  }

  // Is w the least member of its orbit? For cyclic pruning the caller has
  // already established that w is cyclically reduced and a least rotation,
  // so w[0] is its smallest letter and only rotations of the image starting
  // with that letter can undercut it.
  bool is_canonical(std::span<const Letter> w) const {
    const std::size_t n = w.size();
    thread_local std::vector<Letter> buf;
    buf.resize(2 * n);
    for (const auto& t : transforms_) {
      for (std::size_t i = 0; i < n; ++i) buf[i] = t.invert ? t.map(inverse(w[n - 1 - i])) : t.map(w[i]);
      if (cyclic_) {
        for (std::size_t i = 0; i < n; ++i) {
          if (buf[i] < w[0]) return false;
          buf[n + i] = buf[i];
        }
        for (std::size_t r = 0; r < n; ++r) {
          if (buf[r] != w[0]) continue;
          for (std::size_t i = 1; i < n; ++i) {
            const Letter y = buf[r + i];
            if (y != w[i]) {
              if (y < w[i]) return false;
              break;
            }
          }
        }
      } else if (std::lexicographical_compare(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n), w.begin(),
                                              w.end())) {
        return false;
      }
    }
    return true;
  }

  // Start index of the lexicographically least rotation (two-pointer scan).
  static std::size_t least_rotation(std::span<const Letter> s) noexcept {
    const std::size_t n = s.size();
    std::size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
      const Letter x = s[(i + k) % n], y = s[(j + k) % n];
      if (x == y) {
        ++k;
        continue;
      }
      if (x > y)
        i += k + 1;
      else
        j += k + 1;
      if (i == j) ++j;
      k = 0;
    }
    return std::min(i, j);
  }

 private:
  struct Transform {
    LetterAutomorphism map;
    bool invert = false;
  };

  bool closed_under_composition() const {
    for (const auto& f : autos_)
      for (const auto& g : autos_)
        if (std::find(autos_.begin(), autos_.end(), f.then(g)) == autos_.end()) return false;
    return true;
  }

  bool cyclic_ = false;
  bool inversion_ = false;
  std::vector<LetterAutomorphism> autos_;
  std::vector<Transform> transforms_;
  std::array<bool, 4> first_allowed_{true, true, true, true};
};

namespace detail {

struct Frame {
  std::vector<Letter> prefix;
  std::size_t period = 0;  // prenecklace period of the prefix (cyclic mode)
};

// Depth-first enumeration of one length. `visit` returns true to stop.
class LengthWalker {
 public:
  LengthWalker(const Pruning& pruning, std::size_t length) : pruning_(pruning), length_(length) {}

  // All admissible prefixes of the given depth, in lexicographic order.
  std::vector<Frame> prefixes(std::size_t depth) const {
    std::vector<Frame> out;
    std::vector<Letter> buf(length_);
    collect(buf, 0, 0, depth, out);
    return out;
  }

  template <class Visit, class Poll>
  bool run(const Frame& start, Visit&& visit, Poll&& poll) const {
    std::vector<Letter> buf(length_);
    std::copy(start.prefix.begin(), start.prefix.end(), buf.begin());
    std::size_t counter = 0;
    return descend(buf, start.prefix.size(), start.period, visit, poll, counter);
  }

 private:
  // Candidate letter c at position k; returns the new period or 0 to reject.
  std::size_t admit(const std::vector<Letter>& buf, std::size_t k, std::size_t p, Letter c) const {
    if (k == 0) {
      if (pruning_.cyclic() || pruning_.automorphism_count() > 1)
        if (!pruning_.first_allowed(c)) return 0;
      return 1;
    }
    if (c == inverse(buf[k - 1])) return 0;
    if (!pruning_.cyclic()) return 1;
    const Letter ref = buf[k - p];
    if (c < ref) return 0;
    return c == ref ? p : k + 1;
  }

  bool leaf_ok(const std::vector<Letter>& buf, std::size_t p) const {
    const std::span<const Letter> w(buf.data(), length_);
    if (pruning_.cyclic()) {
      if (length_ > 1 && buf[length_ - 1] == inverse(buf[0])) return false;
      if (length_ % p != 0) return false;
    }
    return pruning_.is_canonical(w);
  }

  void collect(std::vector<Letter>& buf, std::size_t k, std::size_t p, std::size_t depth, std::vector<Frame>& out) const {
    if (k == depth) {
      if (k == length_ && !leaf_ok(buf, p)) return;
      out.push_back({{buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k)}, p});
      return;
    }
    for (Letter c : kAllLetters) {
      const std::size_t np = admit(buf, k, p, c);
      if (np == 0) continue;
      buf[k] = c;
      collect(buf, k + 1, np, depth, out);
    }
  }

  template <class Visit, class Poll>
  bool descend(std::vector<Letter>& buf, std::size_t k, std::size_t p, Visit& visit, Poll& poll,
               std::size_t& counter) const {
    if ((++counter & 0xFFF) == 0 && poll()) return true;
    if (k == length_) {
      if (!leaf_ok(buf, p)) return false;
      return visit(std::span<const Letter>(buf.data(), length_));
    }
    for (Letter c : kAllLetters) {
      const std::size_t np = admit(buf, k, p, c);
      if (np == 0) continue;
      buf[k] = c;
      if (descend(buf, k + 1, np, visit, poll, counter)) return true;
    }
    return false;
  }

  const Pruning& pruning_;
  std::size_t length_;
};

}  // namespace detail

// Visits every admissible word of length 1..max_len in shortlex order;
// `visit` returns true to stop early.
template <class Visit>
void for_each_word(std::size_t max_len, const Pruning& pruning, Visit&& visit) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    detail::LengthWalker walker(pruning, len);
    if (walker.run(detail::Frame{}, visit, [] { return false; })) return;
  }
}

inline std::vector<ReducedWord> enumerate_words(std::size_t max_len, const Pruning& pruning) {
  std::vector<ReducedWord> out;
  for_each_word(max_len, pruning, [&](std::span<const Letter> w) {
    out.push_back(ReducedWord::from_reduced({w.begin(), w.end()}));
    return false;
  });
  return out;
}

struct SearchOptions {
  std::size_t min_len = 1;
  std::size_t max_len = 12;
  PruneFlags prune;
  std::size_t workers = 1;
  std::size_t shards = 64;  // target shard count per length
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SearchOutcome {
  std::optional<ReducedWord> witness;
  std::size_t searched_up_to = 0;  // every length <= this is settled
  std::size_t shards = 0;          // shard count at the last length searched
  bool resumed = false;
  std::string pruning;
};

namespace detail {

inline std::uint64_t search_fingerprint(const std::string& oracle, const Pruning& pruning, const SearchOptions& opt) {
  return fnv1a("oracle=" + oracle + ";" + pruning.describe() + ";shards=" + std::to_string(opt.shards) +
               ";min_len=" + std::to_string(opt.min_len));
}

inline std::vector<Frame> shard_length(const LengthWalker& walker, std::size_t length, std::size_t target) {
  std::vector<Frame> frames;
  for (std::size_t depth = 1; depth <= length; ++depth) {
    frames = walker.prefixes(depth);
    if (frames.size() >= target || depth == length) break;
  }
  return frames;
}

}  // namespace detail

// Shortest admissible word accepted by the oracle, least in lexicographic
// order among those of that length. The result does not depend on the number
// of workers: shards are lexicographically ordered, and the hit of the
// smallest successful shard wins.
template <MembershipOracle Oracle>
SearchOutcome find_first(const Oracle& oracle, const SearchOptions& opt) {
  if (opt.max_len < 1 || opt.min_len < 1) throw std::invalid_argument("search lengths start at 1");
  const Pruning pruning(opt.prune, oracle.invariance());
  SearchOutcome out;
  out.pruning = pruning.describe();
  const std::uint64_t fingerprint = detail::search_fingerprint(oracle.name(), pruning, opt);

  CheckpointState state;
  state.fingerprint = fingerprint;
  state.length = static_cast<std::uint32_t>(opt.min_len);
  if (opt.checkpoint) {
    if (auto saved = read_checkpoint(*opt.checkpoint)) {
      if (saved->fingerprint != fingerprint) throw CheckpointError("checkpoint belongs to a different search");
      state = std::move(*saved);
      out.resumed = true;
      if (state.status == CheckpointState::Status::found) {
        out.witness = ReducedWord::from_reduced(state.best);
        out.searched_up_to = state.length;
        out.shards = state.shard_count;
        return out;
      }
      if (state.status == CheckpointState::Status::exhausted && state.length >= opt.max_len) {
        out.searched_up_to = state.length;
        out.shards = state.shard_count;
        return out;
      }
      if (state.status == CheckpointState::Status::exhausted) {
        // a previous run stopped at a smaller bound; continue past it
        state.status = CheckpointState::Status::running;
        state.length += 1;
        state.shard_count = 0;
        state.done.clear();
        state.best_shard.reset();
        state.best.clear();
      }
    }
  }

  std::mutex mu;
  auto last_write = std::chrono::steady_clock::now();
  auto save = [&](bool force) {
    if (!opt.checkpoint) return;
    const auto now = std::chrono::steady_clock::now();
    if (!force && now - last_write < std::chrono::seconds(2)) return;
    write_checkpoint(*opt.checkpoint, state);
    last_write = now;
  };

  for (std::size_t len = state.length; len <= opt.max_len; ++len) {
    const detail::LengthWalker walker(pruning, len);
    const auto frames = detail::shard_length(walker, len, opt.shards);
    out.shards = frames.size();
    if (state.length != len || state.shard_count != frames.size()) {
      state.length = static_cast<std::uint32_t>(len);
      state.shard_count = static_cast<std::uint32_t>(frames.size());
      state.done.assign(frames.size(), false);
      state.best_shard.reset();
      state.best.clear();
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{state.best_shard ? *state.best_shard : std::numeric_limits<std::size_t>::max()};
    std::atomic<bool> timed_out{false};
    std::vector<std::optional<std::vector<Letter>>> hits(frames.size());
    if (state.best_shard) hits[*state.best_shard] = state.best;
    std::exception_ptr failure;

    auto work = [&] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= frames.size() || timed_out.load()) return;
          {
            std::lock_guard lock(mu);
            if (state.done[i]) continue;
          }
          if (i > best.load()) continue;
          bool aborted = false;
          auto poll = [&] {
            if (opt.deadline && std::chrono::steady_clock::now() > *opt.deadline) {
              timed_out = true;
              aborted = true;
              return true;
            }
            if (best.load() < i) {
              aborted = true;
              return true;
            }
            return false;
          };
          auto visit = [&](std::span<const Letter> w) {
            if (!oracle.contains(w)) return false;
            hits[i] = std::vector<Letter>(w.begin(), w.end());
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return true;
          };
          walker.run(frames[i], visit, poll);
          if (aborted && !hits[i]) continue;
          std::lock_guard lock(mu);
          state.done[i] = true;
          if (hits[i] && (!state.best_shard || i < *state.best_shard)) {
            state.best_shard = static_cast<std::uint32_t>(i);
            state.best = *hits[i];
          }
          save(false);
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        timed_out = true;
      }
    };

    const std::size_t n_workers = std::max<std::size_t>(1, std::min(opt.workers, frames.size()));
    if (n_workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    if (timed_out) {
      std::lock_guard lock(mu);
      save(true);
      throw SearchTimeout("search deadline passed at length " + std::to_string(len));
    }

    const std::size_t b = best.load();
    if (b != std::numeric_limits<std::size_t>::max()) {
      out.witness = ReducedWord::from_reduced(*hits[b]);
      out.searched_up_to = len;
      state.status = CheckpointState::Status::found;
      state.best_shard = static_cast<std::uint32_t>(b);
      state.best = *hits[b];
      save(true);
      return out;
    }
    out.searched_up_to = len;
    if (len == opt.max_len) {
      state.status = CheckpointState::Status::exhausted;
      save(true);
    }
  }
  out.searched_up_to = std::max(out.searched_up_to, opt.max_len);
  return out;
}

// Single-threaded scan over every reduced word of exactly `length` letters,
// with no pruning; used to re-verify search results.
template <MembershipOracle Oracle>
std::optional<ReducedWord> scan_length_unpruned(const Oracle& oracle, std::size_t length) {
  std::optional<ReducedWord> hit;
  const Pruning none = Pruning::none();
  detail::LengthWalker walker(none, length);
  walker.run(
      detail::Frame{},
      [&](std::span<const Letter> w) {
        if (!oracle.contains(w)) return false;
        hit = ReducedWord::from_reduced({w.begin(), w.end()});
        return true;
      },
      [] { return false; });
  return hit;
}

}  // namespace lcslab
