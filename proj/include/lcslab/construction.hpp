#pragma once

// The recursive word families
//
//   a_0 = s, b_0 = t,   a_{n+1} = [b_n^-1, a_n],   b_{n+1} = [a_n, b_n]
//
// for seeds (s, t) (default (a, b)), plus concrete-n checkers for their
// cancellation, length and commutator-identity properties.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcslab/word.hpp"

namespace lcslab {

inline const double kMu = (3.0 + std::sqrt(17.0)) / 2.0;

class LengthBudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// One node of the derivation tree: `name` is the commutator of `left` and
// `right`, where a name like "B3" means b_3^-1.
struct DerivationNode {
  std::size_t level = 0;
  std::string name;
  std::string left;
  std::string right;
};

class PairSequence {
 public:
  PairSequence(ReducedWord seed_a, ReducedWord seed_b) {
    a_.push_back(std::move(seed_a));
    b_.push_back(std::move(seed_b));
  }

  const ReducedWord& a(std::size_t n) const { return a_.at(n); }
  const ReducedWord& b(std::size_t n) const { return b_.at(n); }
  std::size_t max_level() const noexcept { return a_.size() - 1; }
  std::pair<const ReducedWord&, const ReducedWord&> seeds() const { return {a_.front(), b_.front()}; }

  // a_n = [b_{n-1}^-1, a_{n-1}] and b_n = [a_{n-1}, b_{n-1}] for 1 <= n <= max_level.
  std::vector<DerivationNode> derivation() const {
    std::vector<DerivationNode> nodes;
    for (std::size_t n = 1; n <= max_level(); ++n) {
      const std::string p = std::to_string(n - 1);
      nodes.push_back({n, "a" + std::to_string(n), "B" + p, "a" + p});
      nodes.push_back({n, "b" + std::to_string(n), "a" + p, "b" + p});
    }
    return nodes;
  }

  template <class Engine>
  void extend(std::size_t letter_budget) {
    const std::size_t n = max_level();
    const std::size_t bound = 2 * (a_[n].length() + b_[n].length());
    if (bound > letter_budget)
      throw LengthBudgetExceeded("level " + std::to_string(n + 1) + " may need " + std::to_string(bound) +
                                 " letters, budget is " + std::to_string(letter_budget));
    ReducedWord next_a = Engine::bracket(Engine::invert(b_[n]), a_[n]);
    ReducedWord next_b = Engine::bracket(a_[n], b_[n]);
    a_.push_back(std::move(next_a));
    b_.push_back(std::move(next_b));
  }

 private:
  std::vector<ReducedWord> a_;
  std::vector<ReducedWord> b_;
};

struct BuildOptions {
  std::size_t letter_budget = 100'000'000;
};

template <class Engine = FreeGroupEngine>
PairSequence build(std::size_t n_max, const ReducedWord& seed_a = words::a, const ReducedWord& seed_b = words::b,
                   BuildOptions options = {}) {
  if (seed_a.is_identity() || seed_b.is_identity()) throw std::invalid_argument("seeds must be nontrivial");
  PairSequence seq(seed_a, seed_b);
  while (seq.max_level() < n_max) seq.template extend<Engine>(options.letter_budget);
  return seq;
}

// Confirms every derivation node: each level-n word is the commutator of its
// two level-(n-1) children. Returns the first failing level, if any.
template <class Engine = FreeGroupEngine>
std::optional<std::size_t> check_derivation(const PairSequence& seq) {
  for (std::size_t n = 1; n <= seq.max_level(); ++n) {
    if (Engine::bracket(Engine::invert(seq.b(n - 1)), seq.a(n - 1)) != seq.a(n)) return n;
    if (Engine::bracket(seq.a(n - 1), seq.b(n - 1)) != seq.b(n)) return n;
  }
  return std::nullopt;
}

struct ProductCheck {
  std::string label;
  std::size_t cancelled_pairs = 0;
};

struct NoCancellationReport {
  std::size_t n = 0;
  std::array<ProductCheck, 8> products;
  bool holds() const {
    for (const auto& p : products)
      if (p.cancelled_pairs != 0) return false;
    return true;
  }
};

// The eight products a_n a_n, b_n b_n, a_n^-1 b_n, b_n^-1 a_n, a_n b_n^-1,
// b_n a_n^-1, a_n^-1 b_n^-1, b_n a_n.
template <class Engine = FreeGroupEngine>
NoCancellationReport check_no_cancellation(const PairSequence& seq, std::size_t n) {
  const ReducedWord& x = seq.a(n);
  const ReducedWord& y = seq.b(n);
  const ReducedWord xi = Engine::invert(x);
  const ReducedWord yi = Engine::invert(y);
  NoCancellationReport r;
  r.n = n;
  r.products = {{
      {"a a", Engine::cancelled(x, x)},
      {"b b", Engine::cancelled(y, y)},
      {"a^-1 b", Engine::cancelled(xi, y)},
      {"b^-1 a", Engine::cancelled(yi, x)},
      {"a b^-1", Engine::cancelled(x, yi)},
      {"b a^-1", Engine::cancelled(y, xi)},
      {"a^-1 b^-1", Engine::cancelled(xi, yi)},
      {"b a", Engine::cancelled(y, x)},
  }};
  return r;
}

struct LengthRow {
  std::size_t n = 0;
  std::size_t len_a = 0;
  std::size_t len_b = 0;
  bool equal_lengths = false;
  bool at_least_power_of_two = false;
  bool doubles = true;                       // l(b_n) >= 2 l(b_{n-1}); vacuous at n = 0
  std::optional<std::size_t> recurrence;     // 3 l(b_{n-1}) + 2 l(b_{n-2}), for n >= 2
  bool recurrence_holds = true;
  bool recurrence_equality = false;
  double ratio_to_mu_power = 0.0;            // l(b_n) / mu^n
};

struct LengthTable {
  std::vector<LengthRow> rows;
  double measured_c_prime = 0.0;  // max over n of l(b_n) / mu^n
  bool holds() const {
    for (const auto& r : rows)
      if (!r.equal_lengths || !r.at_least_power_of_two || !r.doubles || !r.recurrence_holds) return false;
    return true;
  }
};

inline LengthTable check_lengths(const PairSequence& seq, std::size_t n_max) {
  if (n_max > seq.max_level()) throw std::out_of_range("length table beyond built range");
  LengthTable t;
  for (std::size_t n = 0; n <= n_max; ++n) {
    LengthRow r;
    r.n = n;
    r.len_a = seq.a(n).length();
    r.len_b = seq.b(n).length();
    r.equal_lengths = r.len_a == r.len_b;
    r.at_least_power_of_two = n >= 63 || r.len_b >= (std::size_t{1} << n);
    if (n >= 1) r.doubles = r.len_b >= 2 * seq.b(n - 1).length();
    if (n >= 2) {
      r.recurrence = 3 * seq.b(n - 1).length() + 2 * seq.b(n - 2).length();
      r.recurrence_holds = r.len_b <= *r.recurrence;
      r.recurrence_equality = r.len_b == *r.recurrence;
    }
    r.ratio_to_mu_power = static_cast<double>(r.len_b) / std::pow(kMu, static_cast<double>(n));
    t.measured_c_prime = std::max(t.measured_c_prime, r.ratio_to_mu_power);
    t.rows.push_back(r);
  }
  return t;
}

struct IdentityCheck {
  std::string label;
  bool holds = false;
};

struct IdentityReport {
  std::size_t n = 0;
  std::vector<IdentityCheck> checks;
  bool holds() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return !checks.empty();
  }
};

// [[x^-1,y],[x,y]] = [[[x^-1,y],x],[x,y]] and [[x^-1,y],[y,x]] = [[[x^-1,y],x],[y,x]].
template <class Engine = FreeGroupEngine>
std::pair<bool, bool> commutator_identities(const ReducedWord& x, const ReducedWord& y) {
  const ReducedWord c = Engine::bracket(Engine::invert(x), y);
  const ReducedWord cx = Engine::bracket(c, x);
  const ReducedWord xy = Engine::bracket(x, y);
  const ReducedWord yx = Engine::bracket(y, x);
  return {Engine::bracket(c, xy) == Engine::bracket(cx, xy), Engine::bracket(c, yx) == Engine::bracket(cx, yx)};
}

template <class Engine = FreeGroupEngine>
IdentityReport check_identities(const PairSequence& seq, std::size_t n) {
  if (n < 2 || n > seq.max_level()) throw std::out_of_range("identity checks need 2 <= n <= max level");
  IdentityReport r;
  r.n = n;
  const auto [ab_left, ab_right] = commutator_identities<Engine>(words::a, words::b);
  r.checks.push_back({"left identity at (a,b)", ab_left});
  r.checks.push_back({"right identity at (a,b)", ab_right});
  const auto [lv_left, lv_right] = commutator_identities<Engine>(seq.a(n - 2), seq.b(n - 2));
  r.checks.push_back({"left identity at (a_{n-2},b_{n-2})", lv_left});
  r.checks.push_back({"right identity at (a_{n-2},b_{n-2})", lv_right});
  // the instance (b_{n-2}, a_{n-2}) is the one that rewrites b_n
  const auto [sw_left, sw_right] = commutator_identities<Engine>(seq.b(n - 2), seq.a(n - 2));
  r.checks.push_back({"left identity at (b_{n-2},a_{n-2})", sw_left});
  r.checks.push_back({"right identity at (b_{n-2},a_{n-2})", sw_right});
  const ReducedWord nested = Engine::bracket(Engine::bracket(seq.a(n - 1), seq.b(n - 2)), seq.b(n - 1));
  r.checks.push_back({"b_n = [[a_{n-1},b_{n-2}],b_{n-1}]", nested == seq.b(n)});
  r.checks.push_back({"b_{n-2} a_{n-1} b_{n-2}^-1 = b_{n-1}", Engine::conj(seq.a(n - 1), seq.b(n - 2)) == seq.b(n - 1)});
  return r;
}

}  // namespace lcslab
