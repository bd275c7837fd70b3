#pragma once

// alpha(n): length of the shortest nontrivial element of gamma_n(F2).

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcslab/magnus.hpp"
#include "lcslab/oracle.hpp"
#include "lcslab/subgroup.hpp"

namespace lcslab {

struct AlphaEntry {
  unsigned n = 0;
  std::optional<std::size_t> value;  // empty: not found up to search_bound
  ReducedWord witness;
  std::size_t search_bound = 0;
  bool exact = false;
  Depth witness_depth = Depth::infinite();  // at the requested truncation
  std::size_t shards = 0;
};

// Exhaustive search with the Magnus oracle. Membership in gamma_n only needs
// degrees below n, so the search itself truncates at n - 1; the witness is
// then re-expanded at `truncation` for the report.
inline AlphaEntry alpha(unsigned n, std::size_t max_len, unsigned truncation, const GirthOptions& opt = {}) {
  if (n < 1) throw std::invalid_argument("alpha(n) needs n >= 1");
  if (truncation < n) throw std::invalid_argument("truncation degree must be at least n");
  AlphaEntry e;
  e.n = n;
  e.search_bound = max_len;
  const auto g = girth(LowerCentralOracle(n), max_len, opt);
  if (const auto* r = std::get_if<GirthResult>(&g)) {
    e.value = r->value;
    e.witness = r->witness;
    e.exact = r->exact;
    e.shards = r->shards;
    e.witness_depth = lcs_depth(r->witness, truncation);
  }
  return e;
}

class AlphaTable {
 public:
  void add(AlphaEntry e) { entries_[e.n] = std::move(e); }
  const std::map<unsigned, AlphaEntry>& entries() const noexcept { return entries_; }

  std::optional<std::size_t> value(unsigned n) const {
    auto it = entries_.find(n);
    if (it == entries_.end() || !it->second.exact) return std::nullopt;
    return it->second.value;
  }

  // Nondecreasing over the computed exact values.
  bool monotone() const {
    std::optional<std::size_t> prev;
    for (const auto& [n, e] : entries_) {
      if (!e.exact) continue;
      if (prev && *e.value < *prev) return false;
      prev = e.value;
    }
    return true;
  }

  bool at_least_n() const {
    for (const auto& [n, e] : entries_)
      if (e.exact && *e.value < n) return false;
    return true;
  }

  // alpha(nm) <= alpha(n) alpha(m) for every computed triple with n, m >= 2.
  std::vector<std::string> submultiplicativity_violations() const {
    std::vector<std::string> bad;
    for (const auto& [n, e1] : entries_)
      for (const auto& [m, e2] : entries_) {
        if (n < 2 || m < n) continue;
        const auto nm = value(n * m), a = value(n), b = value(m);
        if (nm && a && b && *nm > *a * *b)
          bad.push_back("alpha(" + std::to_string(n * m) + ") > alpha(" + std::to_string(n) + ") alpha(" +
                        std::to_string(m) + ")");
      }
    return bad;
  }

  // log2 alpha(n) / log2 n for n >= 2.
  std::map<unsigned, double> quotients() const {
    std::map<unsigned, double> q;
    for (const auto& [n, e] : entries_)
      if (n >= 2 && e.exact) q[n] = std::log2(static_cast<double>(*e.value)) / std::log2(static_cast<double>(n));
    return q;
  }

 private:
  std::map<unsigned, AlphaEntry> entries_;
};

}  // namespace lcslab
