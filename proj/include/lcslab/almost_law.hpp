#pragma once

// Word maps on SU(k) and the contraction estimates for the family
// w_n = a_n(w, v).
//
// L(w) = max over u, v in SU(k) of ||1 - w(u, v)|| (operator norm). Sampling
// gives lower bounds; for k = 2 a grid over a fundamental domain of
// simultaneous conjugation gives upper bounds.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "lcslab/construction.hpp"
#include "lcslab/quotient.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kUnitarityTolerance = 1e-12;
inline constexpr double kSeedBound = 1.0 / 3.0;
inline const double kSilverRatio = 1.0 + std::sqrt(2.0);

// SU(2) element [[alpha, -conj(beta)], [beta, conj(alpha)]].
struct Su2 {
  std::complex<double> alpha{1.0, 0.0};
  std::complex<double> beta{0.0, 0.0};

  static Su2 identity() { return {}; }

  friend Su2 operator*(const Su2& x, const Su2& y) {
    return {x.alpha * y.alpha - std::conj(x.beta) * y.beta, x.beta * y.alpha + std::conj(x.alpha) * y.beta};
  }
  Su2 inverse() const { return {std::conj(alpha), -beta}; }

  double unitarity_defect() const { return std::abs(std::norm(alpha) + std::norm(beta) - 1.0); }

  void normalize() {
    const double r = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= r;
    beta /= r;
  }

  // The eigenvalues are exp(+-i t) with cos t = Re alpha, so both singular
  // values of 1 - U equal sqrt(2 - 2 Re alpha).
  double distance_to_identity() const { return std::sqrt(std::max(0.0, 2.0 - 2.0 * alpha.real())); }

  double distance(const Su2& o) const {
    return std::sqrt(std::norm(alpha - o.alpha) + std::norm(beta - o.beta));
  }

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    m << alpha, -std::conj(beta), beta, std::conj(alpha);
    return m;
  }
};

// Group policies: element type plus the handful of operations the sampler
// needs.
struct Su2Group {
  using element = Su2;
  std::size_t k() const { return 2; }
  Su2 identity() const { return {}; }
  Su2 multiply(const Su2& x, const Su2& y) const { return x * y; }
  Su2 invert(const Su2& x) const { return x.inverse(); }
  double distance_to_identity(const Su2& x) const { return x.distance_to_identity(); }
  double defect(const Su2& x) const { return x.unitarity_defect(); }
  void normalize(Su2& x) const { x.normalize(); }

  template <class Rng>
  Su2 random(Rng& rng) const {
    std::normal_distribution<double> n01;
    Su2 x{{n01(rng), n01(rng)}, {n01(rng), n01(rng)}};
    x.normalize();
    return x;
  }

  // x * exp(i t sigma_j) for the Pauli direction j in {0, 1, 2}.
  Su2 nudge(const Su2& x, unsigned j, double t) const {
    const double c = std::cos(t), s = std::sin(t);
    Su2 r;
    switch (j % 3) {
      case 0: r = {{c, s}, {0.0, 0.0}}; break;
      case 1: r = {{c, 0.0}, {0.0, s}}; break;
      default: r = {{c, 0.0}, {s, 0.0}}; break;
    }
    auto y = x * r;
    y.normalize();
    return y;
  }
  unsigned directions() const { return 3; }
};

// SU(k) for k >= 2 with dense complex matrices.
class SukGroup {
 public:
  using element = Eigen::MatrixXcd;

  explicit SukGroup(std::size_t k) : k_(k) {
    if (k < 2) throw std::invalid_argument("SU(k) needs k >= 2");
  }
  std::size_t k() const { return k_; }
  element identity() const { return element::Identity(static_cast<Eigen::Index>(k_), static_cast<Eigen::Index>(k_)); }
  element multiply(const element& x, const element& y) const { return x * y; }
  element invert(const element& x) const { return x.adjoint(); }
  double distance_to_identity(const element& x) const {
    Eigen::JacobiSVD<element> svd(identity() - x);
    return svd.singularValues()(0);
  }
  double defect(const element& x) const { return (x.adjoint() * x - identity()).norm(); }

  // Two Newton-Schulz steps towards the unitary polar factor.
  void normalize(element& x) const {
    for (int i = 0; i < 2; ++i) x = 0.5 * x * (3.0 * identity() - x.adjoint() * x);
  }

  template <class Rng>
  element random(Rng& rng) const {
    std::normal_distribution<double> n01;
    const auto k = static_cast<Eigen::Index>(k_);
    element z(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) z(i, j) = {n01(rng) / std::sqrt(2.0), n01(rng) / std::sqrt(2.0)};
    Eigen::HouseholderQR<element> qr(z);
    element q = qr.householderQ();
    const element r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto d = r(j, j);
      q.col(j) *= d / std::abs(d);
    }
    const std::complex<double> det = q.determinant();
    q *= std::pow(det, -1.0 / static_cast<double>(k_));
    return q;
  }

  // x * exp(i t H_j) for a basis of traceless Hermitian directions.
  element nudge(const element& x, unsigned j, double t) const {
    const auto k = static_cast<Eigen::Index>(k_);
    element h = element::Zero(k, k);
    const unsigned offdiag = static_cast<unsigned>(k_ * (k_ - 1) / 2);
    j %= directions();
    if (j < 2 * offdiag) {
      unsigned idx = j / 2, p = 0, q = 1;
      for (unsigned c = 0; c < idx; ++c)
        if (++q == k_) q = ++p + 1;
      if (j % 2 == 0) {
        h(p, q) = 1.0;
        h(q, p) = 1.0;
      } else {
        h(p, q) = {0.0, -1.0};
        h(q, p) = {0.0, 1.0};
      }
    } else {
      const auto d = static_cast<Eigen::Index>(j - 2 * offdiag);
      h(d, d) = 1.0;
      h(d + 1, d + 1) = -1.0;
    }
    Eigen::SelfAdjointEigenSolver<element> es(h);
    const Eigen::VectorXcd phases = (std::complex<double>(0.0, t) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
    element e = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    element y = x * e;
    normalize(y);
    return y;
  }
  unsigned directions() const { return static_cast<unsigned>(k_ * k_ - 1); }

 private:
  std::size_t k_;
};

// w(u, v), renormalized every 64 letters.
template <class Group>
typename Group::element evaluate(const Group& g, std::span<const Letter> w, const typename Group::element& u,
                                 const typename Group::element& v) {
  const std::array<typename Group::element, 4> img{u, g.invert(u), v, g.invert(v)};
  auto x = g.identity();
  std::size_t since = 0;
  for (Letter l : w) {
    x = g.multiply(x, img[static_cast<std::uint8_t>(l)]);
    if (++since == 64) {
      g.normalize(x);
      since = 0;
    }
  }
  g.normalize(x);
  if (!(g.defect(x) <= kUnitarityTolerance)) throw NumericFailure("unitarity lost while evaluating a word");
  return x;
}

inline Su2 evaluate(std::span<const Letter> w, const Su2& u, const Su2& v) { return evaluate(Su2Group{}, w, u, v); }
inline Su2 evaluate(const ReducedWord& w, const Su2& u, const Su2& v) { return evaluate(w.letters(), u, v); }

// a_n(w, v) for n = 0..n_max evaluated through the recursion itself, so the
// cost is independent of the (exponentially growing) word lengths.
template <class Group>
std::vector<typename Group::element> evaluate_family(const Group& g, const ReducedWord& seed_a, const ReducedWord& seed_b,
                                                     std::size_t n_max, const typename Group::element& u,
                                                     const typename Group::element& v) {
  auto x = evaluate(g, seed_a.letters(), u, v);
  auto y = evaluate(g, seed_b.letters(), u, v);
  std::vector<typename Group::element> out{x};
  auto bracket = [&](const auto& p, const auto& q) {
    auto r = g.multiply(g.multiply(p, q), g.multiply(g.invert(p), g.invert(q)));
    g.normalize(r);
    return r;
  };
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto nx = bracket(g.invert(y), x);
    auto ny = bracket(x, y);
    x = std::move(nx);
    y = std::move(ny);
    if (!(g.defect(x) <= kUnitarityTolerance)) throw NumericFailure("unitarity lost in the word recursion");
    out.push_back(x);
  }
  return out;
}

template <class Element>
struct LEstimate {
  double lower = 0.0;
  Element u;
  Element v;
  std::size_t samples = 0;
  std::size_t polish_steps = 0;
  std::uint64_t seed = 0;
};

struct SamplingBudget {
  std::size_t samples = 10'000;
  std::size_t polish_steps = 200;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline constexpr std::size_t kSampleChunk = 256;

}  // namespace detail

// Maximizes f(u, v) = d(1, W(u, v)) over Haar samples, then polishes the best
// pair by coordinate moves along Lie algebra directions with a shrinking step.
// Samples are drawn in fixed chunks with per-chunk generators, so the result
// does not depend on the number of workers.
template <class Group, class Score>
LEstimate<typename Group::element> maximize(const Group& g, Score&& score, SamplingBudget budget, std::uint64_t seed,
                                            std::size_t workers = 1) {
  using E = typename Group::element;
  if (budget.samples == 0) throw std::invalid_argument("sampling budget must be positive");
  const std::size_t chunks = (budget.samples + detail::kSampleChunk - 1) / detail::kSampleChunk;
  struct Best {
    double value = -1.0;
    std::size_t index = 0;
    E u, v;
  };
  std::vector<Best> per_chunk(chunks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(c)));
      Best b;
      const std::size_t end = std::min(budget.samples, (c + 1) * detail::kSampleChunk);
      for (std::size_t i = c * detail::kSampleChunk; i < end; ++i) {
        E u = g.random(rng);
        E v = g.random(rng);
        const double s = score(u, v);
        if (s > b.value) b = {s, i, u, v};
      }
      per_chunk[c] = std::move(b);
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(workers, chunks));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  Best best = per_chunk.front();
  for (const auto& b : per_chunk)
    if (b.value > best.value) best = b;

  E u = best.u, v = best.v;
  double value = best.value;
  double step = 0.25;
  const unsigned dirs = g.directions();
  for (std::size_t i = 0; i < budget.polish_steps && step > 1e-9; ++i) {
    bool improved = false;
    for (unsigned d = 0; d < 2 * dirs; ++d)
      for (double t : {step, -step}) {
        E nu = d < dirs ? g.nudge(u, d, t) : u;
        E nv = d < dirs ? v : g.nudge(v, d - dirs, t);
        const double s = score(nu, nv);
        if (s > value) {
          value = s;
          u = std::move(nu);
          v = std::move(nv);
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return {value, u, v, budget.samples, budget.polish_steps, seed};
}

// Lower estimate of L(w) on SU(2).
inline LEstimate<Su2> estimate_L(const ReducedWord& w, SamplingBudget budget, std::uint64_t seed, std::size_t workers = 1) {
  if (w.is_identity()) return {0.0, Su2{}, Su2{}, budget.samples, budget.polish_steps, seed};
  const Su2Group g;
  return maximize(
      g, [&](const Su2& u, const Su2& v) { return evaluate(g, w.letters(), u, v).distance_to_identity(); }, budget, seed,
      workers);
}

// Lower estimate of L(w) on SU(k).
inline LEstimate<Eigen::MatrixXcd> estimate_L(const ReducedWord& w, std::size_t k, SamplingBudget budget,
                                              std::uint64_t seed, std::size_t workers = 1) {
  const SukGroup g(k);
  return maximize(
      g, [&](const auto& u, const auto& v) { return g.distance_to_identity(evaluate(g, w.letters(), u, v)); }, budget,
      seed, workers);
}

struct GridProvenance {
  double eps = 0.0;          // grid step
  double lipschitz = 0.0;    // l(w)
  double grid_max = 0.0;     // max of d(1, w) over the grid
  std::size_t points = 0;
};

struct PropagatedProvenance {
  std::size_t from_prev = 0;
  std::size_t from_prev2 = 0;
};

struct CertifiedBound {
  std::size_t n = 0;
  double upper = 2.0;
  std::variant<GridProvenance, PropagatedProvenance> provenance;
};

class CertificationBudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

struct CertifyOptions {
  std::size_t workers = 1;
  std::size_t max_points = 50'000'000;
};

// Upper bound on L(w) over SU(2). Every pair (u, v) is simultaneously
// conjugate to u = diag(e^{i t}, e^{-i t}), t in [0, pi], and v with
// alpha = cos(p) e^{i c}, beta = sin(p) >= 0, p in [0, pi/2], c in [0, 2 pi).
// Cell centers of step <= eps in (t, p, c) are within eps/2 of any u and
// within eps/sqrt(2) of any v in operator norm, both below eps; the word map
// is l(w)-Lipschitz in each argument, so adding l(w) * 2 eps covers the gaps.
inline CertifiedBound certify_seed(const ReducedWord& w, double eps, const CertifyOptions& opt = {}) {
  if (!(eps > 0.0)) throw std::invalid_argument("grid step must be positive");
  CertifiedBound out;
  GridProvenance prov;
  prov.eps = eps;
  prov.lipschitz = static_cast<double>(w.length());
  if (w.is_identity()) {
    out.upper = 0.0;
    out.provenance = prov;
    return out;
  }
  const double pi = std::numbers::pi;
  const auto nt = static_cast<std::size_t>(std::ceil(pi / eps));
  const auto np = static_cast<std::size_t>(std::ceil(pi / 2 / eps));
  const auto nc = static_cast<std::size_t>(std::ceil(2 * pi / eps));
  const double total = static_cast<double>(nt) * static_cast<double>(np) * static_cast<double>(nc);
  if (total > static_cast<double>(opt.max_points))
    throw CertificationBudgetExceeded("grid of " + std::to_string(static_cast<unsigned long long>(total)) +
                                      " points exceeds budget " + std::to_string(opt.max_points));
  std::vector<double> row_max(nt, 0.0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= nt) return;
      const double t = (static_cast<double>(i) + 0.5) * pi / static_cast<double>(nt);
      const Su2 u{{std::cos(t), std::sin(t)}, {0.0, 0.0}};
      double m = 0.0;
      for (std::size_t j = 0; j < np; ++j) {
        const double p = (static_cast<double>(j) + 0.5) * (pi / 2) / static_cast<double>(np);
        for (std::size_t l = 0; l < nc; ++l) {
          const double c = (static_cast<double>(l) + 0.5) * 2 * pi / static_cast<double>(nc);
          const Su2 v{std::polar(std::cos(p), c), {std::sin(p), 0.0}};
          m = std::max(m, evaluate(w.letters(), u, v).distance_to_identity());
        }
      }
      row_max[i] = m;
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(opt.workers, nt));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  prov.grid_max = *std::max_element(row_max.begin(), row_max.end());
  prov.points = static_cast<std::size_t>(total);
  // evaluation error is bounded by ~1e-15 per letter; 1e-12 per letter is ample
  const double slack = prov.lipschitz * 2.0 * eps + prov.lipschitz * 1e-12;
  out.upper = std::min(2.0, round_up(round_up(prov.grid_max + slack)));
  out.provenance = prov;
  return out;
}

// U_0 = max(U(w), U(v)), U_1 = 2 U(w) U(v), U_n = 4 U_{n-1}^2 U_{n-2}, every
// product rounded upwards and capped at the diameter 2.
inline std::vector<CertifiedBound> propagate_bounds(double seed_w, double seed_v, std::size_t n_max) {
  std::vector<CertifiedBound> out;
  const auto cap = [](double x) { return std::min(2.0, x); };
  out.push_back({0, cap(std::max(seed_w, seed_v)), PropagatedProvenance{0, 0}});
  if (n_max >= 1) out.push_back({1, cap(round_up(round_up(2.0 * seed_w) * seed_v)), PropagatedProvenance{0, 0}});
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double p = out[n - 1].upper, q = out[n - 2].upper;
    double u = round_up(4.0 * p);
    u = round_up(u * p);
    u = round_up(u * q);
    out.push_back({n, cap(u), PropagatedProvenance{n - 1, n - 2}});
  }
  return out;
}

class SeedBoundTooLarge : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct DecayRow {
  std::size_t n = 0;
  std::size_t length = 0;
  double upper = 2.0;
  double lower = 0.0;
  double minus_log_2upper = 0.0;
  double ratio = 0.0;  // minus_log_2upper / (1 + sqrt 2)^n
};

struct DecayFit {
  double d_hat = 0.0;     // min over n of -log(2 U_n) / (1 + sqrt 2)^n
  double exponent = 0.0;  // least-squares slope of log(-log(2 U_n)) on log l(w_n)
  double c_hat = 0.0;     // min over n of -log(U_n) / l(w_n)^delta
};

inline const double kDelta = std::log2(kSilverRatio) / (std::log2(3.0 + std::sqrt(17.0)) - 1.0);

// Fits over rows with positive -log(2 U_n); the exponent uses n >= first_fit_n.
inline DecayFit fit_decay(std::span<const DecayRow> rows, std::size_t first_fit_n = 1) {
  DecayFit f;
  f.d_hat = std::numeric_limits<double>::infinity();
  f.c_hat = std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& r : rows) {
    if (!(r.minus_log_2upper > 0.0)) {
      f.d_hat = std::min(f.d_hat, 0.0);
      continue;
    }
    f.d_hat = std::min(f.d_hat, r.ratio);
    f.c_hat = std::min(f.c_hat, -std::log(r.upper) / std::pow(static_cast<double>(r.length), kDelta));
    if (r.n < first_fit_n) continue;
    const double x = std::log(static_cast<double>(r.length)), y = std::log(r.minus_log_2upper);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) f.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return f;
}

struct DecayTable {
  ReducedWord seed_w;
  ReducedWord seed_v;
  std::vector<DecayRow> rows;
  DecayFit fit;
  bool words_nontrivial = true;
  bool lower_below_upper = true;
};

// Builds w_n = a_n(seed_w, seed_v), propagates the seed bounds and samples
// each w_n in the given group. Refuses seeds whose bound exceeds 1/3, where
// the recursion need not contract.
template <class Group>
DecayTable run_decay(const Group& g, const ReducedWord& seed_w, const ReducedWord& seed_v, double bound_w,
                     double bound_v, std::size_t n_max, SamplingBudget budget, std::uint64_t seed,
                     std::size_t workers = 1, BuildOptions build_options = {}) {
  if (bound_w > kSeedBound || bound_v > kSeedBound)
    throw SeedBoundTooLarge("seed bounds " + std::to_string(bound_w) + ", " + std::to_string(bound_v) +
                            " exceed 1/3");
  DecayTable t{seed_w, seed_v, {}, {}, true, true};
  const auto seq = build(n_max, seed_w, seed_v, build_options);
  const auto bounds = propagate_bounds(bound_w, bound_v, n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    DecayRow r;
    r.n = n;
    r.length = seq.a(n).length();
    if (r.length == 0) t.words_nontrivial = false;
    r.upper = bounds[n].upper;
    r.minus_log_2upper = -std::log(2.0 * r.upper);
    r.ratio = r.minus_log_2upper / std::pow(kSilverRatio, static_cast<double>(n));
    const auto est = maximize(
        g,
        [&](const auto& u, const auto& v) {
          return g.distance_to_identity(evaluate_family(g, seed_w, seed_v, n, u, v).back());
        },
        budget, detail::splitmix64(seed + n), workers);
    r.lower = est.lower;
    if (r.lower > r.upper) t.lower_below_upper = false;
    t.rows.push_back(r);
  }
  t.fit = fit_decay(t.rows);
  return t;
}

inline DecayTable run_decay(const ReducedWord& seed_w, const ReducedWord& seed_v, double bound_w, double bound_v,
                            std::size_t n_max, SamplingBudget budget, std::uint64_t seed, std::size_t workers = 1,
                            BuildOptions build_options = {}) {
  return run_decay(Su2Group{}, seed_w, seed_v, bound_w, bound_v, n_max, budget, seed, workers, build_options);
}

// SL(2, 5), the binary icosahedral subgroup of SU(2), acting on the 24
// nonzero vectors of F_5^2. Every element other than 1 has order 2, 3, 4, 5,
// 6 or 10 and so lies at distance >= 2 sin(pi / 10) from 1 in SU(2); a word
// with L(w) below that must be a law of this group.
inline PermutationQuotient binary_icosahedral_permutations() {
  std::vector<std::array<int, 2>> points;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      if (x || y) points.push_back({x, y});
  auto index_of = [&](int x, int y) {
    x = ((x % 5) + 5) % 5;
    y = ((y % 5) + 5) % 5;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i][0] == x && points[i][1] == y) return static_cast<std::uint16_t>(i);
    throw std::logic_error("point outside F_5^2");
  };
  Permutation s(points.size()), t(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    s[i] = index_of(-y, x);     // [[0, -1], [1, 0]]
    t[i] = index_of(x + y, y);  // [[1, 1], [0, 1]]
  }
  return {s, t};
}

inline double binary_icosahedral_gap() { return 2.0 * std::sin(std::numbers::pi / 10.0); }

}  // namespace lcslab
