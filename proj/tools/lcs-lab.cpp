// lcs-lab: command-line front end for the word, series, search and
// almost-law machinery.
//
// Every subcommand produces one document (JSON by default, CSV on request)
// carrying the configuration, tool version, worker count and wall-clock time.
// Exit codes: 0 ok, 1 check failure, 2 inconclusive, 3 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcslab/lcslab.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace lcslab;

constexpr int kOk = 0, kFailed = 1, kInconclusive = 2, kUsage = 3;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::size_t budget_letters = 100'000'000;
  double budget_seconds = 0.0;
};

// Rows for the CSV form; the JSON form carries them as an array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  json to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
      arr.push_back(std::move(o));
    }
    return arr;
  }
};

struct Outcome {
  json result = json::object();
  Table table;
  int exit = kOk;
};

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

// A double that survives JSON: infinities and NaN become null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::optional<std::chrono::steady_clock::time_point> deadline(const Globals& g) {
  if (g.budget_seconds <= 0.0) return std::nullopt;
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(g.budget_seconds));
}

GirthOptions girth_options(const Globals& g, bool prune, std::size_t shards, const std::string& checkpoint) {
  GirthOptions o;
  if (!prune) o.prune = PruneFlags::none();
  o.workers = g.workers;
  o.shards = shards;
  o.deadline = deadline(g);
  if (!checkpoint.empty()) o.checkpoint = checkpoint;
  return o;
}

ReducedWord parse_word(const std::string& text) {
  try {
    return ReducedWord::parse(text);
  } catch (const WordParseError& e) {
    throw UsageError(e.what());
  }
}

json girth_json(const GirthOutcome& g) {
  json j = json::object();
  if (const auto* r = std::get_if<GirthResult>(&g)) {
    j["girth"] = r->value;
    j["witness"] = r->witness.to_string();
    j["exact"] = r->exact;
    j["search_bound"] = r->search_bound;
    j["shards"] = r->shards;
    j["resumed"] = r->resumed;
  } else {
    j["girth"] = nullptr;
    j["witness"] = nullptr;
    j["exact"] = false;
    j["search_bound"] = std::get<NotFoundBelow>(g).max_len;
    j["shards"] = 0;
    j["resumed"] = false;
  }
  return j;
}

// ---- subcommands ---------------------------------------------------------

struct GenArgs {
  std::size_t n = 0;
  std::string seed_a = "a", seed_b = "b";
  bool lengths_only = false;
};

Outcome run_gen(const Globals& g, const GenArgs& a, json& config) {
  config["n"] = a.n;
  config["seed_a"] = a.seed_a;
  config["seed_b"] = a.seed_b;
  config["lengths_only"] = a.lengths_only;
  const auto seq = build(a.n, parse_word(a.seed_a), parse_word(a.seed_b), {g.budget_letters});
  Outcome o;
  o.result["n"] = a.n;
  if (!a.lengths_only) {
    o.result["a_word"] = seq.a(a.n).to_string();
    o.result["b_word"] = seq.b(a.n).to_string();
  }
  o.result["len"] = seq.b(a.n).length();
  json deriv = json::array();
  for (const auto& d : seq.derivation())
    deriv.push_back({{"level", d.level}, {"name", d.name}, {"left", d.left}, {"right", d.right}});
  o.result["derivation"] = deriv;
  o.table.columns = {"n", "len_a", "len_b", "ratio_to_mu_power"};
  for (std::size_t n = 0; n <= a.n; ++n)
    o.table.rows.push_back({n, seq.a(n).length(), seq.b(n).length(),
                            number(static_cast<double>(seq.b(n).length()) / std::pow(kMu, static_cast<double>(n)))});
  return o;
}

struct DepthArgs {
  std::string word;
  unsigned max_degree = kDefaultTruncation;
};

Outcome run_depth(const Globals&, const DepthArgs& a, json& config) {
  config["word"] = a.word;
  config["max_degree"] = a.max_degree;
  const auto w = parse_word(a.word);
  const auto rep = lcs_depth_report(w, a.max_degree);
  Outcome o;
  o.result["word"] = w.to_string();
  json depth = {{"kind", rep.depth.kind_name()}};
  depth["value"] = rep.depth.kind() == Depth::Kind::infinite ? json(nullptr) : json(rep.depth.value());
  o.result["depth"] = depth;
  o.result["nonzero_terms_at_depth"] = rep.nonzero_terms_at_depth;
  o.table.columns = {"word", "kind", "value", "nonzero_terms_at_depth"};
  o.table.rows.push_back({w.to_string(), rep.depth.kind_name(), depth["value"], rep.nonzero_terms_at_depth});
  return o;
}

struct GirthArgs {
  std::string quotient;
  std::size_t max_len = 12;
  bool no_prune = false;
  std::size_t shards = 64;
  std::string checkpoint;
};

Outcome run_girth(const Globals& g, const GirthArgs& a, json& config) {
  config["quotient"] = a.quotient;
  config["max_len"] = a.max_len;
  config["prune"] = !a.no_prune;
  config["shards"] = a.shards;
  OracleRef oracle = [&] {
    try {
      return parse_oracle(a.quotient);
    } catch (const QuotientParseError& e) {
      throw UsageError(e.what());
    }
  }();
  const auto res = girth(oracle, a.max_len, girth_options(g, !a.no_prune, a.shards, a.checkpoint));
  Outcome o;
  o.result = girth_json(res);
  o.result["subgroup"] = oracle.name();
  o.table.columns = {"subgroup", "girth", "witness", "exact", "search_bound", "shards"};
  o.table.rows.push_back({oracle.name(), o.result["girth"], o.result["witness"], o.result["exact"],
                          o.result["search_bound"], o.result["shards"]});
  if (!std::holds_alternative<GirthResult>(res)) o.exit = kInconclusive;
  return o;
}

struct AlphaArgs {
  unsigned n = 2;
  std::size_t max_len = 16;
  unsigned degree = kDefaultTruncation;
  std::size_t shards = 64;
  bool no_prune = false;
  std::string checkpoint;
};

Outcome run_alpha(const Globals& g, const AlphaArgs& a, json& config) {
  config["n"] = a.n;
  config["max_len"] = a.max_len;
  config["degree"] = a.degree;
  config["shards"] = a.shards;
  config["prune"] = !a.no_prune;
  if (a.n < 1) throw UsageError("--n must be at least 1");
  if (a.degree < a.n) throw UsageError("--degree must be at least --n");
  const auto e = alpha(a.n, a.max_len, a.degree, girth_options(g, !a.no_prune, a.shards, a.checkpoint));
  Outcome o;
  o.result["n"] = a.n;
  o.result["alpha"] = e.value ? json(*e.value) : json(nullptr);
  o.result["witness"] = e.value ? json(e.witness.to_string()) : json(nullptr);
  o.result["exact"] = e.exact;
  o.result["witness_depth"] = e.witness_depth.to_string();
  o.result["search_bound"] = e.search_bound;
  o.result["shards"] = e.shards;
  o.result["log2_quotient"] = e.value && a.n >= 2 ? number(std::log2(static_cast<double>(*e.value)) / std::log2(a.n))
                                                  : json(nullptr);
  o.table.columns = {"n", "alpha", "witness", "exact", "witness_depth", "search_bound"};
  o.table.rows.push_back({a.n, o.result["alpha"], o.result["witness"], e.exact, e.witness_depth.to_string(),
                          e.search_bound});
  if (!e.exact) o.exit = kInconclusive;
  return o;
}

struct BetaArgs {
  unsigned n = 2;
  std::size_t max_len = 0;
  std::size_t shards = 64;
  std::string checkpoint;
};

Outcome run_beta(const Globals& g, const BetaArgs& a, json& config) {
  config["n"] = a.n;
  config["max_len"] = a.max_len;
  config["shards"] = a.shards;
  if (a.n > 2) throw UsageError("beta is searchable for n <= 2 only");
  const auto br = beta_bracket(a.n, a.max_len, girth_options(g, true, a.shards, a.checkpoint));
  Outcome o;
  o.result["n"] = a.n;
  o.result["lower"] = br.lower;
  o.result["upper"] = br.upper;
  o.result["upper_witness"] = br.upper_witness.to_string();
  o.result["beta"] = br.exact ? json(br.exact->value) : json(nullptr);
  o.result["witness"] = br.exact ? json(br.exact->witness.to_string()) : json(nullptr);
  o.result["exact"] = br.exact.has_value();
  o.result["search_bound"] = br.search_bound;
  o.table.columns = {"n", "lower", "upper", "beta", "witness", "exact", "search_bound"};
  o.table.rows.push_back(
      {a.n, br.lower, br.upper, o.result["beta"], o.result["witness"], br.exact.has_value(), br.search_bound});
  if (!br.exact) o.exit = kInconclusive;
  return o;
}

json config_json(const ExperimentConfig& c) {
  return {{"construction_n", c.construction_n},
          {"identities_n", c.identities_n},
          {"magnus_degree", c.magnus_degree},
          {"magnus_n", c.magnus_n},
          {"law_pairs", c.law_pairs},
          {"law_max_len", c.law_max_len},
          {"law_degree", c.law_degree},
          {"alpha_n_max", c.alpha_n_max},
          {"alpha_max_len", c.alpha_max_len},
          {"prune_compare_len", c.prune_compare_len},
          {"girth_max_len", c.girth_max_len},
          {"beta_max_len", c.beta_max_len},
          {"nielsen_lists", c.nielsen_lists},
          {"nielsen_max_gens", c.nielsen_max_gens},
          {"nielsen_max_len", c.nielsen_max_len},
          {"almost_n_max", c.almost_n_max},
          {"almost_samples", c.almost_samples},
          {"seed_max_len", c.seed_max_len},
          {"seed_screen_samples", c.seed_screen_samples},
          {"icosahedral_law_max_len", c.icosahedral_law_max_len},
          {"certify_max_points", c.certify_max_points},
          {"exponent_window", {kExponentLow, kExponentHigh}},
          {"lower_upper_slack", kLowerUpperSlack}};
}

ExperimentConfig experiment(const Globals& g) {
  ExperimentConfig c;
  c.workers = g.workers;
  c.seed = g.seed;
  c.letter_budget = g.budget_letters;
  c.budget_seconds = g.budget_seconds;
  return c;
}

struct VerifyArgs {
  std::vector<int> criteria;
  std::string checkpoint_dir;
};

Outcome run_verify(const Globals& g, ExperimentConfig c, const VerifyArgs& a, json& config) {
  if (!a.checkpoint_dir.empty()) c.checkpoint_dir = a.checkpoint_dir;
  config["criteria"] = a.criteria;
  config["experiment"] = config_json(c);
  for (int id : a.criteria)
    if (id < 1 || id > kCriterionCount) throw UsageError("no criterion " + std::to_string(id));
  std::vector<CheckResult> results;
  if (a.criteria.empty()) {
    results = verify_all(c);
  } else {
    for (int id : a.criteria) results.push_back(run_criterion(id, c));
  }
  Outcome o;
  o.table.columns = {"id", "name", "status", "seconds", "limit_seconds", "detail"};
  for (const auto& r : results) {
    o.table.rows.push_back({r.id, r.name, status_name(r.status), number(r.seconds), number(r.limit_seconds), r.detail});
    std::fprintf(stderr, "%3d  %-13s %-26s %9.2f s  %s\n", r.id, status_name(r.status).c_str(), r.name.c_str(),
                 r.seconds, r.detail.c_str());
  }
  o.exit = exit_code(results);
  o.result["overall"] = o.exit == kOk ? "pass" : o.exit == kFailed ? "fail" : "inconclusive";
  (void)g;
  return o;
}

struct AlmostArgs {
  std::size_t k = 2;
  std::size_t n_max = 8;
  std::size_t samples = 10'000;
  std::size_t polish = 50;
  std::optional<double> certify_eps;
  std::string seed_w, seed_v;
  std::vector<double> assume_bounds;
};

Outcome run_almostlaw(const Globals& g, ExperimentConfig c, const AlmostArgs& a, json& config) {
  config["k"] = a.k;
  config["n_max"] = a.n_max;
  config["samples"] = a.samples;
  config["polish_steps"] = a.polish;
  config["certify_eps"] = a.certify_eps ? json(*a.certify_eps) : json(nullptr);
  config["seed_w"] = a.seed_w.empty() ? json(nullptr) : json(a.seed_w);
  config["seed_v"] = a.seed_v.empty() ? json(nullptr) : json(a.seed_v);
  config["assume_bounds"] = a.assume_bounds;
  if (a.k < 2) throw UsageError("--k must be at least 2");
  if (a.seed_w.empty() != a.seed_v.empty()) throw UsageError("give both --seed-w and --seed-v, or neither");
  if (!a.assume_bounds.empty() && a.seed_w.empty()) throw UsageError("--assume-bounds needs explicit seeds");
  if (a.k > 2 && a.assume_bounds.empty())
    throw UsageError("grid certification is SU(2) only; pass --assume-bounds for k > 2");
  c.almost_n_max = a.n_max;
  c.almost_samples = a.samples;

  Outcome o;
  o.table.columns = {"n", "len", "upper", "lower", "minus_log_2upper", "ratio"};
  ReducedWord w, v;
  double uw = 2.0, uv = 2.0;
  std::string provenance;
  json seeds = json::array();
  if (a.seed_w.empty()) {
    const auto sel = select_seeds(c);
    o.result["seed_search"] = sel.notes;
    if (!sel.pair) {
      o.result["status"] = "no certified seed pair";
      o.exit = kFailed;
      return o;
    }
    w = sel.pair->first.word;
    v = sel.pair->second.word;
    uw = sel.pair->first.upper;
    uv = sel.pair->second.upper;
    provenance = "grid certificate";
  } else {
    w = parse_word(a.seed_w);
    v = parse_word(a.seed_v);
    if (!a.assume_bounds.empty()) {
      if (a.assume_bounds.size() != 2) throw UsageError("--assume-bounds takes two values");
      uw = a.assume_bounds[0];
      uv = a.assume_bounds[1];
      provenance = "assumed";
    } else {
      provenance = "grid certificate";
      for (auto* p : {&w, &v}) {
        const double lower = estimate_L(*p, {a.samples, 200}, g.seed, g.workers).lower;
        double eps = a.certify_eps.value_or((kSeedBound - lower) / (4.0 * static_cast<double>(std::max<std::size_t>(1, p->length()))));
        json s = {{"word", p->to_string()}, {"sampled_lower", number(lower)}};
        if (!(eps > 0.0)) {
          s["certified_upper"] = nullptr;
          seeds.push_back(s);
          o.result["seeds"] = seeds;
          o.result["status"] = "sampled L(" + p->to_string() + ")=" + fixed(lower, 6) + " exceeds 1/3";
          o.exit = kFailed;
          return o;
        }
        const auto cb = certify_seed(*p, eps, {g.workers, c.certify_max_points});
        s["grid_eps"] = eps;
        s["certified_upper"] = number(cb.upper);
        seeds.push_back(s);
        (p == &w ? uw : uv) = cb.upper;
      }
    }
  }
  o.result["seeds"] = seeds;
  o.result["seed_w"] = w.to_string();
  o.result["seed_v"] = v.to_string();
  o.result["bound_w"] = uw;
  o.result["bound_v"] = uv;
  o.result["bound_provenance"] = provenance;
  if (uw > kSeedBound || uv > kSeedBound) {
    o.result["status"] = "seed bound above 1/3";
    o.exit = kFailed;
    return o;
  }
  const SamplingBudget budget{a.samples, a.polish};
  const auto table = a.k == 2 ? run_decay(w, v, uw, uv, a.n_max, budget, g.seed, g.workers, {g.budget_letters})
                              : run_decay(SukGroup(a.k), w, v, uw, uv, a.n_max, budget, g.seed, g.workers,
                                          {g.budget_letters});
  for (const auto& r : table.rows)
    o.table.rows.push_back(
        {r.n, r.length, number(r.upper), number(r.lower), number(r.minus_log_2upper), number(r.ratio)});
  o.result["fit"] = {{"d_hat", number(table.fit.d_hat)},
                     {"exponent", number(table.fit.exponent)},
                     {"c_hat", number(table.fit.c_hat)},
                     {"delta", kDelta}};
  const auto problems = decay_problems(table);
  o.result["problems"] = problems;
  o.result["status"] = problems.empty() ? "ok" : "failed";
  if (!problems.empty()) o.exit = kFailed;
  return o;
}

struct ReportArgs {
  unsigned alpha_n_max = 4;
  std::size_t alpha_max_len = 16;
  unsigned degree = kDefaultTruncation;
  unsigned beta_n_max = 2;
  std::size_t beta_max_len = 14;
  std::size_t depth_n = 4;
  std::string checkpoint_dir;
};

Outcome run_report(const Globals& g, const ReportArgs& a, json& config) {
  config["alpha_n_max"] = a.alpha_n_max;
  config["alpha_max_len"] = a.alpha_max_len;
  config["degree"] = a.degree;
  config["beta_n_max"] = a.beta_n_max;
  config["beta_max_len"] = a.beta_max_len;
  config["depth_n"] = a.depth_n;
  if (a.beta_n_max > 2) throw UsageError("beta is searchable for n <= 2 only");
  Outcome o;
  o.table.columns = {"kind", "n", "value", "witness", "exact", "quotient"};
  bool inconclusive = false;
  std::vector<std::string> bad;

  json constants = json::array();
  for (const auto& k : growth_constants())
    constants.push_back({{"name", k.name},
                         {"formula", k.formula},
                         {"value", fixed(k.value, 12)},
                         {"reference", k.printed},
                         {"matches_reference", matches_printed(k.value, k.printed)}});
  o.result["constants"] = constants;

  auto opts = [&](const std::string& name) {
    auto opt = girth_options(g, true, 64, "");
    if (!a.checkpoint_dir.empty()) {
      std::filesystem::create_directories(a.checkpoint_dir);
      opt.checkpoint = std::filesystem::path(a.checkpoint_dir) / name;
    }
    return opt;
  };

  AlphaTable alphas;
  for (unsigned n = 1; n <= a.alpha_n_max; ++n) {
    auto e = alpha(n, a.alpha_max_len, std::max(a.degree, n), opts("alpha" + std::to_string(n) + ".ckpt"));
    if (!e.exact) inconclusive = true;
    alphas.add(std::move(e));
  }
  const auto aq = alphas.quotients();
  json atab = json::array();
  for (const auto& [n, e] : alphas.entries()) {
    const json q = aq.count(n) ? number(aq.at(n)) : json(nullptr);
    atab.push_back({{"n", n},
                    {"alpha", e.value ? json(*e.value) : json(nullptr)},
                    {"witness", e.value ? json(e.witness.to_string()) : json(nullptr)},
                    {"exact", e.exact},
                    {"search_bound", e.search_bound},
                    {"log2_quotient", q}});
    o.table.rows.push_back({"alpha", n, atab.back()["alpha"], atab.back()["witness"], e.exact, q});
    if (q.is_number() && q.get<double>() < 1.0) bad.push_back("log2 alpha(n)/log2 n < 1 at n=" + std::to_string(n));
  }
  if (!alphas.monotone()) bad.push_back("alpha not monotone");
  if (!alphas.at_least_n()) bad.push_back("alpha(n) < n");
  for (auto& s : alphas.submultiplicativity_violations()) bad.push_back(s);
  o.result["alpha"] = atab;

  std::map<unsigned, std::size_t> betas;
  json btab = json::array();
  for (unsigned n = 0; n <= a.beta_n_max; ++n) {
    const auto br = beta_bracket(n, n == 2 ? a.beta_max_len : 0, opts("beta" + std::to_string(n) + ".ckpt"));
    json q = nullptr;
    if (br.exact) {
      betas[n] = br.exact->value;
      if (n >= 1) q = number(std::log2(static_cast<double>(br.exact->value)) / n);
    } else {
      inconclusive = true;
    }
    btab.push_back({{"n", n},
                    {"beta", br.exact ? json(br.exact->value) : json(nullptr)},
                    {"witness", br.exact ? json(br.exact->witness.to_string()) : json(nullptr)},
                    {"lower", br.lower},
                    {"upper", br.upper},
                    {"exact", br.exact.has_value()},
                    {"search_bound", br.search_bound},
                    {"log2_quotient", q}});
    o.table.rows.push_back({"beta", n, btab.back()["beta"], btab.back()["witness"], br.exact.has_value(), q});
    if (q.is_number() && q.get<double>() < 1.0) bad.push_back("log2 beta(n)/n < 1 at n=" + std::to_string(n));
  }
  std::optional<std::size_t> prev;
  for (const auto& [n, b] : betas) {
    if (prev && b < *prev) bad.push_back("beta not monotone");
    prev = b;
  }
  o.result["beta"] = btab;

  json rel = json::array();
  for (const auto& [n, b] : betas)
    if (const auto av = alphas.value(1u << n)) {
      rel.push_back({{"n", n}, {"alpha_2n", *av}, {"beta_n", b}, {"holds", *av <= b}});
      if (*av > b) bad.push_back("alpha(2^n) > beta(n) at n=" + std::to_string(n));
    }
  o.result["alpha_beta_relation"] = rel;

  // (length, depth) pairs for the exploratory length-versus-depth question
  json scatter = json::array();
  const auto seq = build(a.depth_n, words::a, words::b, {g.budget_letters});
  for (std::size_t n = 0; n <= a.depth_n; ++n) {
    const auto d = lcs_depth(seq.b(n), a.degree);
    scatter.push_back({{"source", "b_" + std::to_string(n)}, {"length", seq.b(n).length()}, {"depth", d.to_string()}});
  }
  for (const auto& [n, e] : alphas.entries())
    if (e.value)
      scatter.push_back({{"source", "alpha(" + std::to_string(n) + ")"},
                         {"length", *e.value},
                         {"depth", e.witness_depth.to_string()}});
  o.result["length_depth"] = scatter;
  o.result["problems"] = bad;
  o.exit = !bad.empty() ? kFailed : inconclusive ? kInconclusive : kOk;
  return o;
}

// ---- output --------------------------------------------------------------

void emit(const Globals& g, const std::string& command, const json& config, const Outcome& o, double elapsed) {
  std::ostringstream text;
  if (g.format == "csv") {
    text << "# tool=lcs-lab version=" << kVersion << " command=" << command << "\n";
    text << "# config=" << config.dump() << "\n";
    text << "# workers=" << g.workers << " elapsed_seconds=" << fixed(elapsed, 3) << "\n";
    for (std::size_t i = 0; i < o.table.columns.size(); ++i) text << (i ? "," : "") << o.table.columns[i];
    text << "\n";
    for (const auto& r : o.table.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) text << (i ? "," : "") << csv_cell(r[i]);
      text << "\n";
    }
  } else {
    json doc;
    doc["tool"] = {{"name", "lcs-lab"}, {"version", kVersion}};
    doc["command"] = command;
    doc["config"] = config;
    doc["workers"] = g.workers;
    doc["result"] = o.result;
    if (!o.table.rows.empty()) doc["rows"] = o.table.to_json();
    doc["exit_code"] = o.exit;
    doc["elapsed_seconds"] = elapsed;
    text << doc.dump(2) << "\n";
  }
  if (g.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + g.out);
    f << text.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower central and derived series of F2: words, depths, girths and almost laws"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  Globals g;
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--budget-letters", g.budget_letters, "largest word the construction may build");
  app.add_option("--budget-seconds", g.budget_seconds, "wall-clock limit for searches (0: none)");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "build a_n, b_n from two seed words");
  c_gen->add_option("--n", gen.n, "level")->required();
  c_gen->add_option("--seed-a", gen.seed_a, "seed word for a_0");
  c_gen->add_option("--seed-b", gen.seed_b, "seed word for b_0");
  c_gen->add_flag("--lengths-only", gen.lengths_only, "omit the words themselves");

  DepthArgs depth;
  auto* c_depth = app.add_subcommand("depth", "lower central depth through the Magnus expansion");
  c_depth->add_option("--word", depth.word, "word, e.g. abAB")->required();
  c_depth->add_option("--max-degree", depth.max_degree, "truncation degree")->check(CLI::Range(1u, 64u));

  GirthArgs girth_args;
  auto* c_girth = app.add_subcommand("girth", "shortest nontrivial element of a subgroup");
  c_girth->add_option("--quotient", girth_args.quotient, "z2 | perm:<spec> | lcs:<n> | derived2 | derived:perm:<spec> | law:perm:<spec> | free")
      ->required();
  c_girth->add_option("--max-len", girth_args.max_len, "search bound")->check(CLI::Range(1, 40));
  c_girth->add_flag("--no-prune", girth_args.no_prune, "enumerate every reduced word");
  c_girth->add_option("--shards", girth_args.shards, "target shards per length")->check(CLI::Range(1, 1 << 20));
  c_girth->add_option("--checkpoint", girth_args.checkpoint, "checkpoint file");

  AlphaArgs alpha_args;
  auto* c_alpha = app.add_subcommand("alpha", "alpha(n) by exhaustive search");
  c_alpha->add_option("--n", alpha_args.n, "lower central index")->required();
  c_alpha->add_option("--max-len", alpha_args.max_len, "search bound")->check(CLI::Range(1, 40));
  c_alpha->add_option("--degree", alpha_args.degree, "Magnus truncation degree (>= n)");
  c_alpha->add_option("--shards", alpha_args.shards, "target shards per length")->check(CLI::Range(1, 1 << 20));
  c_alpha->add_flag("--no-prune", alpha_args.no_prune, "enumerate every reduced word");
  c_alpha->add_option("--checkpoint", alpha_args.checkpoint, "checkpoint file");

  BetaArgs beta_args;
  auto* c_beta = app.add_subcommand("beta", "beta(n) for n <= 2 by exhaustive search");
  c_beta->add_option("--n", beta_args.n, "derived index")->required();
  c_beta->add_option("--max-len", beta_args.max_len, "search bound (default: length of b_n)");
  c_beta->add_option("--shards", beta_args.shards, "target shards per length")->check(CLI::Range(1, 1 << 20));
  c_beta->add_option("--checkpoint", beta_args.checkpoint, "checkpoint file");

  VerifyArgs verify;
  ExperimentConfig exp;
  auto* c_verify = app.add_subcommand("verify", "run the acceptance battery");
  c_verify->add_option("--criterion", verify.criteria, "run only these criteria (1-11)");
  c_verify->add_option("--checkpoint-dir", verify.checkpoint_dir, "directory for search checkpoints");
  c_verify->add_option("--construction-n", exp.construction_n);
  c_verify->add_option("--identities-n", exp.identities_n);
  c_verify->add_option("--magnus-degree", exp.magnus_degree);
  c_verify->add_option("--law-pairs", exp.law_pairs);
  c_verify->add_option("--alpha-n-max", exp.alpha_n_max);
  c_verify->add_option("--alpha-max-len", exp.alpha_max_len);
  c_verify->add_option("--girth-max-len", exp.girth_max_len);
  c_verify->add_option("--beta-max-len", exp.beta_max_len);
  c_verify->add_option("--nielsen-lists", exp.nielsen_lists);
  c_verify->add_option("--almost-samples", exp.almost_samples);
  c_verify->add_option("--seed-max-len", exp.seed_max_len);
  c_verify->add_option("--icosahedral-max-len", exp.icosahedral_law_max_len);

  AlmostArgs almost;
  auto* c_almost = app.add_subcommand("almostlaw", "decay of L(a_n(w, v)) in SU(k)");
  c_almost->add_option("--k", almost.k, "matrix size");
  c_almost->add_option("--n-max", almost.n_max, "last level");
  c_almost->add_option("--samples", almost.samples, "Haar samples per word")->check(CLI::Range(1, 100'000'000));
  c_almost->add_option("--polish", almost.polish, "coordinate polish steps");
  c_almost->add_option("--certify-eps", almost.certify_eps, "grid step for seed certification");
  c_almost->add_option("--seed-w", almost.seed_w, "first seed word");
  c_almost->add_option("--seed-v", almost.seed_v, "second seed word");
  c_almost->add_option("--assume-bounds", almost.assume_bounds, "take these seed bounds instead of certifying")
      ->expected(2);

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "constants and the alpha, beta tables");
  c_report->add_option("--alpha-n-max", report.alpha_n_max);
  c_report->add_option("--alpha-max-len", report.alpha_max_len);
  c_report->add_option("--degree", report.degree);
  c_report->add_option("--beta-n-max", report.beta_n_max);
  c_report->add_option("--beta-max-len", report.beta_max_len);
  c_report->add_option("--depth-n", report.depth_n, "levels of b_n in the length/depth table");
  c_report->add_option("--checkpoint-dir", report.checkpoint_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  json config = {{"seed", g.seed}, {"format", g.format}, {"budget_letters", g.budget_letters},
                 {"budget_seconds", g.budget_seconds}};
  std::string command;
  try {
    Outcome o;
    if (*c_gen) {
      command = "gen";
      o = run_gen(g, gen, config);
    } else if (*c_depth) {
      command = "depth";
      o = run_depth(g, depth, config);
    } else if (*c_girth) {
      command = "girth";
      o = run_girth(g, girth_args, config);
    } else if (*c_alpha) {
      command = "alpha";
      o = run_alpha(g, alpha_args, config);
    } else if (*c_beta) {
      command = "beta";
      o = run_beta(g, beta_args, config);
    } else if (*c_verify) {
      command = "verify";
      ExperimentConfig c = exp;
      const auto base = experiment(g);
      c.workers = base.workers;
      c.seed = base.seed;
      c.letter_budget = base.letter_budget;
      c.budget_seconds = base.budget_seconds;
      o = run_verify(g, c, verify, config);
    } else if (*c_almost) {
      command = "almostlaw";
      o = run_almostlaw(g, experiment(g), almost, config);
    } else {
      command = "report";
      o = run_report(g, report, config);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(g, command, config, o, elapsed);
    return o.exit;
  } catch (const UsageError& e) {
    std::cerr << "lcs-lab: " << e.what() << "\n";
    return kUsage;
  } catch (const SearchTimeout& e) {
    std::cerr << "lcs-lab: " << e.what() << "\n";
    return kInconclusive;
  } catch (const LengthBudgetExceeded& e) {
    std::cerr << "lcs-lab: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "lcs-lab: " << e.what() << "\n";
    return kFailed;
  }
}
