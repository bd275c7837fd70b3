#pragma once

// Girths of normal subgroups Lambda = ker(F2 -> Q) and of [Lambda, Lambda].

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "lcslab/construction.hpp"
#include "lcslab/magnus.hpp"
#include "lcslab/oracle.hpp"
#include "lcslab/quotient.hpp"
#include "lcslab/search.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

inline bool in_lambda(const ReducedWord& w, const QuotientGroup& q) {
  return std::visit(
      [&](const auto& g) { return g.evaluate(w.letters()) == g.identity(); },
      q);
}

// Reference route: w lies in [Lambda, Lambda] iff w lies in Lambda and both
// Fox derivatives of w vanish after projection to Z[F2 / Lambda]. Builds the
// full derivatives in Z[F2] first; the oracles in oracle.hpp do the same
// computation in one pass.
inline bool in_derived_lambda(const ReducedWord& w, const QuotientGroup& q) {
  if (!in_lambda(w, q)) return false;
  return std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        using E = typename G::element_type;
        using H = typename G::hash_type;
        for (Generator x : {Generator::a, Generator::b}) {
          const auto projected =
              fox_derivative(w, x).template map<E, H>([&](const ReducedWord& u) { return g.evaluate(u.letters()); });
          if (!projected.is_zero()) return false;
        }
        return true;
      },
      q);
}

struct GirthResult {
  std::size_t value = 0;
  ReducedWord witness;
  std::size_t search_bound = 0;
  bool exact = false;
  std::size_t shards = 0;
  bool resumed = false;
};

struct NotFoundBelow {
  std::size_t max_len = 0;
};

using GirthOutcome = std::variant<GirthResult, NotFoundBelow>;

class GirthVerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct GirthOptions {
  PruneFlags prune;
  std::size_t workers = 1;
  std::size_t shards = 64;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // Shorter lengths are re-scanned without pruning up to this length.
  std::size_t reverify_below = 12;
};

// Shortest nontrivial member, searched exhaustively up to max_len. A found
// witness is re-checked by a single-threaded scan without any pruning: at the
// found length that scan must return the same word (the least member of that
// length is already the least of its orbit, since every member of minimal
// length is cyclically reduced), and below it, when affordable, nothing.
template <MembershipOracle Oracle>
GirthOutcome girth(const Oracle& oracle, std::size_t max_len, const GirthOptions& opt = {}) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  SearchOptions s;
  s.max_len = max_len;
  s.prune = opt.prune;
  s.workers = opt.workers;
  s.shards = opt.shards;
  s.checkpoint = opt.checkpoint;
  s.deadline = opt.deadline;
  const auto found = find_first(oracle, s);
  if (!found.witness) return NotFoundBelow{max_len};

  const auto& w = *found.witness;
  if (!oracle.contains(w.letters())) throw GirthVerificationError("witness rejected by its oracle: " + w.to_string());
  const auto again = scan_length_unpruned(oracle, w.length());
  if (!again || *again != w)
    throw GirthVerificationError("unpruned rescan disagrees at length " + std::to_string(w.length()) + ": " +
                                 w.to_string() + " vs " + (again ? again->to_string() : "none"));
  if (w.length() <= opt.reverify_below)
    for (std::size_t len = 1; len < w.length(); ++len)
      if (auto shorter = scan_length_unpruned(oracle, len))
        throw GirthVerificationError("unpruned rescan found shorter member " + shorter->to_string());
  return GirthResult{w.length(), w, max_len, true, found.shards, found.resumed};
}

enum class Verdict { pass, fail, inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ThreeXReport {
  std::string quotient;
  GirthOutcome lambda;
  GirthOutcome derived;
  Verdict verdict = Verdict::inconclusive;
  std::string detail;
};

// girth([Lambda, Lambda]) >= 3 girth(Lambda). A derived search that reaches
// max_len without a hit still settles the inequality when max_len + 1 is
// already at least 3 girth(Lambda).
inline ThreeXReport verify_three_x(const QuotientGroup& q, std::size_t max_len, const GirthOptions& opt = {}) {
  ThreeXReport r{quotient_name(q), NotFoundBelow{max_len}, NotFoundBelow{max_len}, Verdict::inconclusive, {}};
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, FreeAbelianQuotient>) {
          r.lambda = girth(AbelianKernelOracle{}, max_len, opt);
          r.derived = girth(SecondDerivedOracle{}, max_len, opt);
        } else {
          r.lambda = girth(FiniteKernelOracle(g), max_len, opt);
          r.derived = girth(FiniteDerivedOracle(g), max_len, opt);
        }
      },
      q);
  const auto* g1 = std::get_if<GirthResult>(&r.lambda);
  if (!g1) {
    r.detail = "girth(Lambda) not found up to " + std::to_string(max_len);
    return r;
  }
  const std::size_t need = 3 * g1->value;
  if (const auto* g2 = std::get_if<GirthResult>(&r.derived)) {
    r.verdict = g2->value >= need ? Verdict::pass : Verdict::fail;
    r.detail = std::to_string(g2->value) + (g2->value >= need ? " >= " : " < ") + "3*" + std::to_string(g1->value);
  } else if (max_len + 1 >= need) {
    r.verdict = Verdict::pass;
    r.detail = "no member up to " + std::to_string(max_len) + ", so girth >= " + std::to_string(max_len + 1) +
               " >= 3*" + std::to_string(g1->value);
  } else {
    r.detail = "derived girth exceeds search bound " + std::to_string(max_len) + " < 3*" +
               std::to_string(g1->value) + " - 1";
  }
  return r;
}

struct BetaBracket {
  unsigned n = 0;
  std::size_t lower = 0;        // 3^n
  std::size_t upper = 0;        // l(b_n)
  ReducedWord upper_witness;    // b_n
  std::optional<GirthResult> exact;
  std::size_t search_bound = 0;
};

inline std::size_t pow3(unsigned n) {
  std::size_t p = 1;
  for (unsigned i = 0; i < n; ++i) p *= 3;
  return p;
}

// beta(n) = girth of the n-th derived subgroup, bracketed between 3^n and
// l(b_n) and searched exactly where a membership test exists (n <= 2). With
// max_len = 0 the search bound defaults to l(b_n).
inline BetaBracket beta_bracket(unsigned n, std::size_t max_len = 0, const GirthOptions& opt = {}) {
  BetaBracket r;
  r.n = n;
  r.lower = pow3(n);
  const auto seq = build(n);
  r.upper_witness = seq.b(n);
  r.upper = r.upper_witness.length();
  r.search_bound = max_len == 0 ? r.upper : max_len;
  GirthOutcome g = NotFoundBelow{r.search_bound};
  switch (n) {
    case 0: g = girth(WholeGroupOracle{}, r.search_bound, opt); break;
    case 1: g = girth(AbelianKernelOracle{}, r.search_bound, opt); break;
    case 2: g = girth(SecondDerivedOracle{}, r.search_bound, opt); break;
    default: return r;
  }
  if (auto* found = std::get_if<GirthResult>(&g)) r.exact = *found;
  return r;
}

}  // namespace lcslab
