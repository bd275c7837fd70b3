#pragma once

// The full check battery: one row per acceptance criterion, each with its
// tolerances and time limit fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lcslab/almost_law.hpp"
#include "lcslab/alpha.hpp"
#include "lcslab/constants.hpp"
#include "lcslab/construction.hpp"
#include "lcslab/magnus.hpp"
#include "lcslab/nielsen.hpp"
#include "lcslab/oracle.hpp"
#include "lcslab/search.hpp"
#include "lcslab/subgroup.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

inline constexpr const char* kVersion = "0.1.0";

enum class Status { pass, fail, inconclusive, skipped };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::inconclusive: return "INCONCLUSIVE";
    case Status::skipped: return "SKIPPED";
  }
  return "?";
}

struct CheckResult {
  int id = 0;
  std::string name;
  Status status = Status::fail;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct ExperimentConfig {
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::size_t letter_budget = 100'000'000;
  double budget_seconds = 0.0;  // per check; 0 means no limit beyond the criterion's own

  std::size_t construction_n = 14;
  std::size_t identities_n = 12;
  unsigned magnus_degree = 13;
  std::size_t magnus_n = 4;

  std::size_t law_pairs = 1000;
  std::size_t law_max_len = 12;
  unsigned law_degree = 8;

  unsigned alpha_n_max = 4;
  std::size_t alpha_max_len = 16;
  std::size_t prune_compare_len = 10;

  std::size_t girth_max_len = 14;
  std::size_t beta_max_len = 14;
  std::optional<std::filesystem::path> checkpoint_dir;

  std::size_t nielsen_lists = 500;
  std::size_t nielsen_max_gens = 5;
  std::size_t nielsen_max_len = 8;

  std::size_t almost_n_max = 8;
  std::size_t almost_samples = 10'000;
  std::size_t seed_max_len = 16;
  std::size_t seed_screen_samples = 64;
  std::size_t icosahedral_law_max_len = 18;
  std::size_t certify_max_points = 50'000'000;
};

// Pinned tolerances.
inline constexpr double kExponentLow = 0.6;
inline constexpr double kExponentHigh = 0.8;
inline constexpr double kLowerUpperSlack = 1e-10;

namespace detail {

inline ReducedWord random_word(std::mt19937_64& rng, std::size_t len) {
  std::vector<Letter> xs;
  std::uniform_int_distribution<int> first(0, 3), next(0, 2);
  for (std::size_t i = 0; i < len; ++i) {
    if (i == 0) {
      xs.push_back(static_cast<Letter>(first(rng)));
    } else {
      // one of the three letters other than the inverse of the previous one
      Letter x = static_cast<Letter>(next(rng));
      if (x >= inverse(xs.back())) x = static_cast<Letter>(static_cast<int>(x) + 1);
      xs.push_back(x);
    }
  }
  return ReducedWord::from_reduced(std::move(xs));
}

// Words of length 1..max_len, half uniformly random and half commutators of
// random short words (so that deeper words occur).
inline ReducedWord random_test_word(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  if (rng() & 1u) return random_word(rng, len(rng));
  for (;;) {
    std::uniform_int_distribution<std::size_t> part(1, std::max<std::size_t>(1, max_len / 3));
    ReducedWord w = commutator(random_word(rng, part(rng)), random_word(rng, part(rng)));
    if (rng() % 3 == 0) w = commutator(w, random_word(rng, part(rng)));
    if (!w.is_identity() && w.length() <= max_len) return w;
  }
}

// Plain quadratic Stallings folding, independent of StallingsGraph.
class NaiveFolding {
 public:
  explicit NaiveFolding(std::span<const ReducedWord> gens) {
    std::size_t n = 1;
    for (const auto& g : gens) {
      if (g.is_identity()) continue;
      std::size_t at = 0;
      for (std::size_t i = 0; i < g.length(); ++i) {
        const std::size_t to = i + 1 == g.length() ? 0 : n++;
        if (sign_of(g[i]) > 0)
          edges_.push_back({at, g[i], to});
        else
          edges_.push_back({to, inverse(g[i]), at});
        at = to;
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < edges_.size() && !changed; ++i)
        for (std::size_t j = i + 1; j < edges_.size() && !changed; ++j) {
          const auto& e = edges_[i];
          const auto& f = edges_[j];
          std::optional<std::pair<std::size_t, std::size_t>> merge;
          if (e.label == f.label && e.from == f.from) merge = {{e.to, f.to}};
          if (e.label == f.label && e.to == f.to) merge = {{e.from, f.from}};
          if (!merge) continue;
          auto [keep, drop] = *merge;
          if (keep > drop) std::swap(keep, drop);
          edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(j));
          if (keep != drop)
            for (auto& x : edges_) {
              if (x.from == drop) x.from = keep;
              if (x.to == drop) x.to = keep;
            }
          changed = true;
        }
    }
  }

  bool contains(const ReducedWord& w) const {
    std::size_t v = 0;
    for (Letter x : w.letters()) {
      std::optional<std::size_t> next;
      for (const auto& e : edges_) {
        if (sign_of(x) > 0 && e.label == x && e.from == v) next = e.to;
        if (sign_of(x) < 0 && e.label == inverse(x) && e.to == v) next = e.from;
      }
      if (!next) return false;
      v = *next;
    }
    return v == 0;
  }

 private:
  struct Edge {
    std::size_t from;
    Letter label;
    std::size_t to;
  };
  std::vector<Edge> edges_;
};

inline std::string join(const std::vector<std::string>& parts, const char* sep = "; ") {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += sep;
    s += p;
  }
  return s;
}

inline std::string outcome_text(const GirthOutcome& g) {
  if (const auto* r = std::get_if<GirthResult>(&g)) return std::to_string(r->value) + " (" + r->witness.to_string() + ")";
  return "none up to " + std::to_string(std::get<NotFoundBelow>(g).max_len);
}

inline std::optional<std::chrono::steady_clock::time_point> deadline_for(const ExperimentConfig& c) {
  if (c.budget_seconds <= 0.0) return std::nullopt;
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(c.budget_seconds));
}

inline GirthOptions girth_options(const ExperimentConfig& c, const std::string& checkpoint_name = {}) {
  GirthOptions o;
  o.workers = c.workers;
  o.deadline = deadline_for(c);
  if (c.checkpoint_dir && !checkpoint_name.empty()) {
    std::filesystem::create_directories(*c.checkpoint_dir);
    o.checkpoint = *c.checkpoint_dir / checkpoint_name;
  }
  return o;
}

}  // namespace detail

template <class Engine = FreeGroupEngine>
CheckResult check_construction_lengths(const ExperimentConfig& c) {
  CheckResult r{1, "construction lengths", Status::fail, {}, 0, 10};
  const auto seq = build<Engine>(c.construction_n, words::a, words::b, {c.letter_budget});
  const auto t = check_lengths(seq, c.construction_n);
  std::vector<std::string> bad;
  const std::array<std::size_t, 3> expected{1, 4, 14};
  for (std::size_t n = 0; n < expected.size() && n <= c.construction_n; ++n)
    if (t.rows[n].len_b != expected[n]) bad.push_back("l(b_" + std::to_string(n) + ") = " + std::to_string(t.rows[n].len_b));
  std::size_t equalities = 0;
  for (const auto& row : t.rows) {
    if (!row.equal_lengths) bad.push_back("l(a_n) != l(b_n) at n=" + std::to_string(row.n));
    if (!row.at_least_power_of_two) bad.push_back("l(b_n) < 2^n at n=" + std::to_string(row.n));
    if (!row.recurrence_holds) bad.push_back("3,2 recurrence violated at n=" + std::to_string(row.n));
    if (row.recurrence_equality) ++equalities;
  }
  r.status = bad.empty() ? Status::pass : Status::fail;
  r.detail = bad.empty() ? "n<=" + std::to_string(c.construction_n) + ", l(b_" + std::to_string(c.construction_n) +
                               ")=" + std::to_string(t.rows.back().len_b) + ", recurrence equality at " +
                               std::to_string(equalities) + " of " + std::to_string(t.rows.size() >= 2 ? t.rows.size() - 2 : 0) +
                               " levels, C'=" + fixed(t.measured_c_prime, 6)
                         : detail::join(bad);
  return r;
}

template <class Engine = FreeGroupEngine>
CheckResult check_construction_cancellation(const ExperimentConfig& c) {
  CheckResult r{2, "no cancellation", Status::fail, {}, 0, 10};
  const auto seq = build<Engine>(c.construction_n, words::a, words::b, {c.letter_budget});
  std::vector<std::string> bad;
  for (std::size_t n = 0; n <= c.construction_n; ++n) {
    const auto rep = check_no_cancellation<Engine>(seq, n);
    for (const auto& p : rep.products)
      if (p.cancelled_pairs != 0)
        bad.push_back(p.label + " at n=" + std::to_string(n) + " cancels " + std::to_string(p.cancelled_pairs));
  }
  if (auto lvl = check_derivation<Engine>(seq)) bad.push_back("derivation node fails at level " + std::to_string(*lvl));
  r.status = bad.empty() ? Status::pass : Status::fail;
  r.detail = bad.empty() ? "8 products cancellation-free for n<=" + std::to_string(c.construction_n) : detail::join(bad);
  return r;
}

template <class Engine = FreeGroupEngine>
CheckResult check_construction_identities(const ExperimentConfig& c) {
  CheckResult r{3, "commutator identities", Status::fail, {}, 0, 30};
  const auto seq = build<Engine>(c.identities_n, words::a, words::b, {c.letter_budget});
  std::vector<std::string> bad;
  for (std::size_t n = 2; n <= c.identities_n; ++n) {
    const auto rep = check_identities<Engine>(seq, n);
    for (const auto& ch : rep.checks)
      if (!ch.holds) bad.push_back(ch.label + " at n=" + std::to_string(n));
  }
  r.status = bad.empty() ? Status::pass : Status::fail;
  r.detail = bad.empty() ? "all identities hold for 2<=n<=" + std::to_string(c.identities_n) : detail::join(bad);
  return r;
}

template <class Engine = FreeGroupEngine>
CheckResult check_magnus_depths(const ExperimentConfig& c) {
  CheckResult r{4, "Magnus depths", Status::fail, {}, 0, 300};
  const auto seq = build<Engine>(c.magnus_n, words::a, words::b, {c.letter_budget});
  std::vector<Depth> d;
  std::vector<std::string> parts, bad;
  for (std::size_t n = 0; n <= c.magnus_n; ++n) {
    d.push_back(lcs_depth(seq.b(n), c.magnus_degree));
    parts.push_back("gamma(b_" + std::to_string(n) + ")" + (d.back().kind() == Depth::Kind::at_least ? "" : "=") + d.back().to_string());
  }
  if (d.size() > 0 && d[0] != Depth::exact(1)) bad.push_back("gamma(b_0) != 1");
  if (d.size() > 1 && d[1] != Depth::exact(2)) bad.push_back("gamma(b_1) != 2");
  if (d.size() > 2 && d[2].lower_bound() < 5) bad.push_back("gamma(b_2) < 5");
  if (d.size() > 3 && d[3].lower_bound() < 12) bad.push_back("gamma(b_3) not certified >= 12");
  for (std::size_t n = 2; n < d.size(); ++n)
    if (d[n].is_exact() && d[n - 1].is_exact() && d[n - 2].is_exact() &&
        d[n].value() < 2 * d[n - 1].value() + d[n - 2].value())
      bad.push_back("2,1 recurrence fails at n=" + std::to_string(n));
  r.status = bad.empty() ? Status::pass : Status::fail;
  r.detail = detail::join(parts, ", ") + " (D=" + std::to_string(c.magnus_degree) + ")" +
             (bad.empty() ? "" : "; " + detail::join(bad));
  return r;
}

template <class Engine = FreeGroupEngine>
CheckResult check_depth_laws(const ExperimentConfig& c) {
  CheckResult r{5, "depth laws", Status::fail, {}, 0, 120};
  std::mt19937_64 rng(c.seed);
  const unsigned D = c.law_degree;
  std::size_t violations = 0, deep = 0, commutator_checked = 0;
  std::string first;
  auto note = [&](const std::string& what, const ReducedWord& u, const ReducedWord& v) {
    if (violations++ == 0) first = what + " for u=" + u.to_string() + ", v=" + v.to_string();
  };
  for (std::size_t i = 0; i < c.law_pairs; ++i) {
    const auto u = detail::random_test_word(rng, c.law_max_len);
    const auto v = detail::random_test_word(rng, c.law_max_len);
    const auto uv = Engine::multiply(u, v);
    const auto du = lcs_depth(u, D), dv = lcs_depth(v, D), duv = lcs_depth(uv, D);
    if (du.lower_bound() >= 2 || dv.lower_bound() >= 2) ++deep;
    if (duv.lower_bound() < std::min(du.lower_bound(), dv.lower_bound())) note("product depth", u, v);
    const auto dc = lcs_depth(Engine::bracket(u, v), D);
    if (du.is_exact() && dv.is_exact()) {
      ++commutator_checked;
      const unsigned need = std::min(du.value() + dv.value(), D + 1);
      if (dc.lower_bound() < need) note("commutator depth", u, v);
    }
    if (lcs_depth(Engine::conj(u, v), D) != du) note("conjugation invariance", u, v);
    if (expand(uv, D) != expand(u, D) * expand(v, D)) note("expansion homomorphism", u, v);
  }
  r.status = violations == 0 ? Status::pass : Status::fail;
  r.detail = std::to_string(c.law_pairs) + " pairs, D=" + std::to_string(D) + ", " + std::to_string(deep) +
             " with a factor of depth>=2, " + std::to_string(commutator_checked) + " commutator checks" +
             (violations ? "; " + std::to_string(violations) + " violations, first: " + first : "");
  return r;
}

inline CheckResult check_alpha_table(const ExperimentConfig& c, AlphaTable* out = nullptr) {
  CheckResult r{6, "alpha table", Status::fail, {}, 0, 600};
  AlphaTable table;
  std::vector<std::string> bad, parts;
  try {
    for (unsigned n = 1; n <= c.alpha_n_max; ++n) {
      auto e = alpha(n, c.alpha_max_len, std::max(c.magnus_degree, n), detail::girth_options(c));
      parts.push_back("alpha(" + std::to_string(n) + ")=" + (e.exact ? std::to_string(*e.value) : "?"));
      table.add(std::move(e));
    }
    for (unsigned n = 1; n <= c.alpha_n_max + 1; ++n) {
      GirthOptions pruned = detail::girth_options(c), unpruned = pruned;
      unpruned.prune = PruneFlags::none();
      const auto p = girth(LowerCentralOracle(n), c.prune_compare_len, pruned);
      const auto u = girth(LowerCentralOracle(n), c.prune_compare_len, unpruned);
      const bool same = p.index() == u.index() &&
                        (p.index() == 1 || std::get<GirthResult>(p).witness == std::get<GirthResult>(u).witness);
      if (!same)
        bad.push_back("pruned/unpruned disagree for n=" + std::to_string(n) + ": " + detail::outcome_text(p) + " vs " +
                      detail::outcome_text(u));
    }
  } catch (const SearchTimeout& e) {
    r.status = Status::skipped;
    r.detail = e.what();
    return r;
  }
  if (table.value(1) != std::optional<std::size_t>(1)) bad.push_back("alpha(1) != 1");
  if (c.alpha_n_max >= 2 && table.value(2) != std::optional<std::size_t>(4)) bad.push_back("alpha(2) != 4");
  bool incomplete = false;
  for (unsigned n = 3; n <= c.alpha_n_max; ++n)
    if (!table.value(n)) incomplete = true;
  if (c.alpha_n_max >= 4 && table.value(4) && *table.value(4) > 16) bad.push_back("alpha(4) > 16");
  if (!table.at_least_n()) bad.push_back("alpha(n) < n");
  if (!table.monotone()) bad.push_back("alpha not monotone");
  for (const auto& v : table.submultiplicativity_violations()) bad.push_back(v);
  if (out) *out = table;
  r.status = !bad.empty() ? Status::fail : incomplete ? Status::inconclusive : Status::pass;
  r.detail = detail::join(parts, ", ") + "; pruned=unpruned up to length " + std::to_string(c.prune_compare_len) +
             (bad.empty() ? "" : "; " + detail::join(bad));
  return r;
}

inline CheckResult check_girth_theorem(const ExperimentConfig& c) {
  CheckResult r{7, "derived girth >= 3 girth", Status::fail, {}, 0, 600};
  std::vector<std::string> parts;
  bool any_fail = false, all_exact = true;
  try {
    for (const char* q : {"z2", "perm:a=(1 2);b=(2 3)", "perm:a=(1 2);b=(3 4)"}) {
      const auto rep = verify_three_x(parse_quotient(q), c.girth_max_len, detail::girth_options(c));
      if (rep.verdict == Verdict::fail) any_fail = true;
      if (!std::holds_alternative<GirthResult>(rep.lambda) || !std::holds_alternative<GirthResult>(rep.derived))
        all_exact = false;
      parts.push_back(rep.quotient + ": " + detail::outcome_text(rep.lambda) + " / " +
                      detail::outcome_text(rep.derived) + " " + verdict_name(rep.verdict));
    }
  } catch (const SearchTimeout& e) {
    r.status = Status::skipped;
    r.detail = e.what();
    return r;
  }
  r.status = any_fail ? Status::fail : all_exact ? Status::pass : Status::inconclusive;
  r.detail = detail::join(parts);
  return r;
}

inline CheckResult check_beta_bracket(const ExperimentConfig& c, std::map<unsigned, std::size_t>* betas = nullptr) {
  CheckResult r{8, "beta(2) bracket", Status::fail, {}, 0, 1800};
  std::vector<std::string> parts, bad;
  std::map<unsigned, std::size_t> found;
  try {
    for (unsigned n = 0; n <= 2; ++n) {
      const auto br = beta_bracket(n, n == 2 ? c.beta_max_len : 0,
                                   detail::girth_options(c, "beta" + std::to_string(n) + ".ckpt"));
      if (br.exact) {
        found[n] = br.exact->value;
        parts.push_back("beta(" + std::to_string(n) + ")=" + std::to_string(br.exact->value) + " (" +
                        br.exact->witness.to_string() + ")");
        if (br.exact->value < br.lower || br.exact->value > br.upper)
          bad.push_back("beta(" + std::to_string(n) + ") outside [" + std::to_string(br.lower) + ", " +
                        std::to_string(br.upper) + "]");
      } else {
        parts.push_back("beta(" + std::to_string(n) + ") > " + std::to_string(br.search_bound));
      }
    }
  } catch (const SearchTimeout& e) {
    r.status = Status::skipped;
    r.detail = e.what();
    return r;
  }
  std::optional<std::size_t> prev;
  for (const auto& [n, v] : found) {
    if (prev && v < *prev) bad.push_back("beta not monotone");
    if (n >= 1 && std::log2(static_cast<double>(v)) / n < 1.0) bad.push_back("log2 beta(n)/n < 1");
    prev = v;
  }
  if (betas) *betas = found;
  r.status = !bad.empty() ? Status::fail : found.count(2) ? Status::pass : Status::inconclusive;
  r.detail = detail::join(parts, ", ") + (bad.empty() ? "" : "; " + detail::join(bad));
  return r;
}

inline CheckResult check_nielsen(const ExperimentConfig& c) {
  CheckResult r{9, "Nielsen reduction", Status::fail, {}, 0, 120};
  std::mt19937_64 rng(c.seed + 9);
  std::size_t violations = 0, total_in = 0, total_out = 0;
  std::string first;
  std::uniform_int_distribution<std::size_t> count(1, c.nielsen_max_gens), len(0, c.nielsen_max_len);
  for (std::size_t t = 0; t < c.nielsen_lists; ++t) {
    std::vector<ReducedWord> gens;
    const std::size_t k = count(rng);
    for (std::size_t i = 0; i < k; ++i) gens.push_back(detail::random_word(rng, len(rng)));
    const StallingsGraph graph(gens);
    const auto basis = graph.basis();
    total_in += gens.size();
    total_out += basis.size();
    auto fail = [&](const std::string& what) {
      if (violations++ == 0) {
        first = what + " for";
        for (const auto& g : gens) first += " " + g.to_string();
      }
    };
    if (auto v = check_nielsen_conditions(basis)) fail(v->to_string());
    for (const auto& g : gens) {
      const auto f = express_in_basis(graph, g);
      if (!f || evaluate_factors(basis, *f) != g) fail("generator " + g.to_string() + " not rewritten");
    }
    const detail::NaiveFolding naive(gens);
    for (const auto& b : basis)
      if (!naive.contains(b)) fail("basis element " + b.to_string() + " outside the subgroup");
  }
  r.status = violations == 0 ? Status::pass : Status::fail;
  r.detail = std::to_string(c.nielsen_lists) + " lists, " + std::to_string(total_in) + " generators in, " +
             std::to_string(total_out) + " out" +
             (violations ? "; " + std::to_string(violations) + " violations, first: " + first : "");
  return r;
}

struct SeedSearchReport {
  std::size_t classes = 0;
  std::size_t refuted = 0;
  double weakest_refutation = 0.0;  // smallest sampled maximum among refuted classes
  ReducedWord weakest_word;
  std::vector<ReducedWord> survivors;
  GirthOutcome icosahedral_law = NotFoundBelow{0};
};

// Screens every class (up to rotation, inversion and signed letter
// permutations, all of which preserve L) of cyclically reduced words up to
// max_len: a sampled pair with d(1, w(u, v)) > 1/3 rules the class out as a
// seed. The shortest law of SL(2, 5) bounds from below the length of any
// word with L below the icosahedral gap.
inline SeedSearchReport search_seeds(const ExperimentConfig& c) {
  SeedSearchReport rep;
  rep.weakest_refutation = 3.0;
  const Pruning pruning(PruneFlags{}, Invariance::full());
  const Su2Group g;
  std::mt19937_64 rng(detail::splitmix64(c.seed));
  std::vector<std::pair<Su2, Su2>> pool;
  for (std::size_t i = 0; i < c.seed_screen_samples; ++i) {
    Su2 u = g.random(rng);
    Su2 v = g.random(rng);
    pool.emplace_back(u, v);
  }
  for_each_word(c.seed_max_len, pruning, [&](std::span<const Letter> w) {
    ++rep.classes;
    double best = 0.0;
    for (const auto& [u, v] : pool) best = std::max(best, evaluate(g, w, u, v).distance_to_identity());
    if (best > kSeedBound) {
      ++rep.refuted;
      if (best < rep.weakest_refutation) {
        rep.weakest_refutation = best;
        rep.weakest_word = ReducedWord::from_reduced({w.begin(), w.end()});
      }
    } else {
      rep.survivors.push_back(ReducedWord::from_reduced({w.begin(), w.end()}));
    }
    return false;
  });
  GirthOptions opt;
  opt.workers = c.workers;
  opt.reverify_below = 0;
  rep.icosahedral_law = girth(LawOracle(binary_icosahedral_permutations()), c.icosahedral_law_max_len, opt);
  return rep;
}

struct CertifiedSeed {
  ReducedWord word;
  double upper = 2.0;
};

struct SeedSelection {
  std::optional<std::pair<CertifiedSeed, CertifiedSeed>> pair;
  std::vector<std::string> notes;
};

// Screens candidate words, certifies the survivors (smallest sampled L first)
// and returns the first non-commuting pair with certified bounds <= 1/3.
inline SeedSelection select_seeds(const ExperimentConfig& c) {
  SeedSelection out;
  const auto rep = search_seeds(c);
  out.notes.push_back(std::to_string(rep.classes) + " word classes up to length " + std::to_string(c.seed_max_len) +
                      ", " + std::to_string(rep.refuted) +
                      " refuted by sampling (every refuted class has sampled L>=" + fixed(rep.weakest_refutation, 3) +
                      ", attained by " + rep.weakest_word.to_string() + ")");
  if (const auto* law = std::get_if<GirthResult>(&rep.icosahedral_law))
    out.notes.push_back("shortest law of SL(2,5) has length " + std::to_string(law->value));
  else
    out.notes.push_back("no law of SL(2,5) up to length " + std::to_string(c.icosahedral_law_max_len) +
                        ", so L(w)>=" + fixed(binary_icosahedral_gap(), 3) + " for all such words");

  std::vector<std::pair<double, ReducedWord>> ranked;
  for (const auto& w : rep.survivors)
    ranked.emplace_back(estimate_L(w, {c.almost_samples, 200}, c.seed, c.workers).lower, w);
  std::sort(ranked.begin(), ranked.end());
  std::vector<CertifiedSeed> certified;
  for (const auto& [lower, w] : ranked) {
    if (lower > kSeedBound) continue;
    const double eps = (kSeedBound - lower) / (4.0 * static_cast<double>(w.length()));
    try {
      const auto cb = certify_seed(w, eps, {c.workers, c.certify_max_points});
      if (cb.upper <= kSeedBound) certified.push_back({w, cb.upper});
    } catch (const CertificationBudgetExceeded&) {
    }
  }
  for (std::size_t i = 0; i < certified.size() && !out.pair; ++i)
    for (std::size_t j = i + 1; j < certified.size() && !out.pair; ++j)
      if (!commutator(certified[i].word, certified[j].word).is_identity()) out.pair = {certified[i], certified[j]};
  if (!out.pair)
    out.notes.push_back(std::to_string(rep.survivors.size()) + " unrefuted, " + std::to_string(certified.size()) +
                        " certified <= 1/3: no seed pair");
  return out;
}

// Problems with a decay table that a sound run must not show.
inline std::vector<std::string> decay_problems(const DecayTable& table) {
  std::vector<std::string> bad;
  if (!table.words_nontrivial) bad.push_back("a composed word reduced to 1");
  for (const auto& row : table.rows)
    if (row.lower > row.upper + kLowerUpperSlack) bad.push_back("sampled lower above upper at n=" + std::to_string(row.n));
  if (!(table.fit.d_hat > 0.0)) bad.push_back("fitted D <= 0");
  if (table.fit.exponent < kExponentLow || table.fit.exponent > kExponentHigh) bad.push_back("exponent outside [0.6, 0.8]");
  return bad;
}

inline CheckResult check_almost_law(const ExperimentConfig& c) {
  CheckResult r{10, "almost-law decay", Status::fail, {}, 0, 600};
  const auto sel = select_seeds(c);
  auto parts = sel.notes;
  if (!sel.pair) {
    r.detail = detail::join(parts);
    return r;
  }
  const auto& [w, v] = *sel.pair;
  const auto table = run_decay(w.word, v.word, w.upper, v.upper, c.almost_n_max, {c.almost_samples, 50}, c.seed,
                               c.workers, {c.letter_budget});
  const auto bad = decay_problems(table);
  parts.push_back("seeds " + w.word.to_string() + ", " + v.word.to_string() + ": D=" + fixed(table.fit.d_hat, 6) +
                  ", exponent=" + fixed(table.fit.exponent, 4));
  r.status = bad.empty() ? Status::pass : Status::fail;
  r.detail = detail::join(parts) + (bad.empty() ? "" : "; " + detail::join(bad));
  return r;
}

inline CheckResult check_constants(const ExperimentConfig&) {
  CheckResult r{11, "constants", Status::fail, {}, 0, 1};
  std::vector<std::string> parts, bad;
  for (const auto& k : growth_constants()) {
    parts.push_back(k.name + "=" + fixed(k.value, 12));
    if (!matches_printed(k.value, k.printed)) bad.push_back(k.name + " does not match " + k.printed);
  }
  r.status = bad.empty() ? Status::pass : Status::fail;
  r.detail = detail::join(parts, ", ") + (bad.empty() ? "" : "; " + detail::join(bad));
  return r;
}

// alpha(2^n) <= beta(n) wherever both sides were computed.
inline CheckResult check_alpha_beta_relation(const AlphaTable& alphas, const std::map<unsigned, std::size_t>& betas) {
  CheckResult r{12, "alpha(2^n) <= beta(n)", Status::inconclusive, {}, 0, 1};
  std::vector<std::string> parts, bad;
  for (const auto& [n, b] : betas) {
    const auto a = alphas.value(1u << n);
    if (!a) continue;
    parts.push_back("alpha(" + std::to_string(1u << n) + ")=" + std::to_string(*a) + " <= beta(" + std::to_string(n) +
                    ")=" + std::to_string(b));
    if (*a > b) bad.push_back("violated at n=" + std::to_string(n));
  }
  r.status = !bad.empty() ? Status::fail : parts.empty() ? Status::inconclusive : Status::pass;
  r.detail = parts.empty() ? "no overlapping data" : detail::join(parts, ", ") + (bad.empty() ? "" : "; " + detail::join(bad));
  return r;
}

inline constexpr int kCriterionCount = 11;

namespace detail {

template <class F>
CheckResult timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = f();
  } catch (const SearchTimeout& e) {
    r.status = Status::skipped;
    r.detail = e.what();
  } catch (const std::exception& e) {
    r.status = Status::fail;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.limit_seconds > 0 && r.seconds > r.limit_seconds && r.status == Status::pass) {
    r.status = Status::fail;
    r.detail += "; took " + fixed(r.seconds, 2) + " s, limit " + fixed(r.limit_seconds, 0) + " s";
  }
  return r;
}

}  // namespace detail

template <class Engine = FreeGroupEngine>
CheckResult run_criterion(int id, const ExperimentConfig& c) {
  auto tag = [&](CheckResult r, int i, const char* name, double limit) {
    r.id = i;
    if (r.name.empty()) r.name = name;
    r.limit_seconds = limit;
    return r;
  };
  switch (id) {
    case 1: return tag(detail::timed([&] { return check_construction_lengths<Engine>(c); }), 1, "construction lengths", 10);
    case 2: return tag(detail::timed([&] { return check_construction_cancellation<Engine>(c); }), 2, "no cancellation", 10);
    case 3: return tag(detail::timed([&] { return check_construction_identities<Engine>(c); }), 3, "commutator identities", 30);
    case 4: return tag(detail::timed([&] { return check_magnus_depths<Engine>(c); }), 4, "Magnus depths", 300);
    case 5: return tag(detail::timed([&] { return check_depth_laws<Engine>(c); }), 5, "depth laws", 120);
    case 6: return tag(detail::timed([&] { return check_alpha_table(c); }), 6, "alpha table", 600);
    case 7: return tag(detail::timed([&] { return check_girth_theorem(c); }), 7, "derived girth >= 3 girth", 600);
    case 8: return tag(detail::timed([&] { return check_beta_bracket(c); }), 8, "beta(2) bracket", 1800);
    case 9: return tag(detail::timed([&] { return check_nielsen(c); }), 9, "Nielsen reduction", 120);
    case 10: return tag(detail::timed([&] { return check_almost_law(c); }), 10, "almost-law decay", 600);
    case 11: return tag(detail::timed([&] { return check_constants(c); }), 11, "constants", 1);
    default: throw std::out_of_range("no criterion " + std::to_string(id));
  }
}

// Every criterion, plus the alpha/beta relation assembled from rows 6 and 8.
template <class Engine = FreeGroupEngine>
std::vector<CheckResult> verify_all(const ExperimentConfig& c) {
  std::vector<CheckResult> out;
  AlphaTable alphas;
  std::map<unsigned, std::size_t> betas;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (id == 6) {
      auto r = detail::timed([&] { return check_alpha_table(c, &alphas); });
      r.limit_seconds = 600;
      out.push_back(r);
    } else if (id == 8) {
      auto r = detail::timed([&] { return check_beta_bracket(c, &betas); });
      out.push_back(r);
    } else {
      out.push_back(run_criterion<Engine>(id, c));
    }
  }
  out.push_back(check_alpha_beta_relation(alphas, betas));
  return out;
}

// 0 all passed, 1 some check failed, 2 otherwise inconclusive or skipped.
inline int exit_code(const std::vector<CheckResult>& results) {
  bool inconclusive = false;
  for (const auto& r : results) {
    if (r.status == Status::fail) return 1;
    if (r.status != Status::pass) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

}  // namespace lcslab
