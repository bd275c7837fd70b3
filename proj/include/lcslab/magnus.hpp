#pragma once

// Magnus expansion a -> 1 + X_a, b -> 1 + X_b into truncated noncommutative
// series, lower-central-series depth, and Fox derivatives.
//
// Depth relies on the classical fact that for a free group w lies in the
// n-th term of the lower central series iff its Magnus expansion has no
// nonzero term of positive degree below n.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "lcslab/group_ring.hpp"
#include "lcslab/nc_series.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

inline constexpr unsigned kDefaultTruncation = 13;

template <class Coeff = BigInt>
NcSeries<Coeff> letter_series(Letter x, unsigned truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation degree must be >= 1");
  auto s = NcSeries<Coeff>::one(truncation);
  s.multiply_by_letter(x);
  return s;
}

template <class Coeff = BigInt>
NcSeries<Coeff> expand(std::span<const Letter> w, unsigned truncation) {
  auto s = NcSeries<Coeff>::one(truncation);
  for (Letter x : w) s.multiply_by_letter(x);
  return s;
}

template <class Coeff = BigInt>
NcSeries<Coeff> expand(const ReducedWord& w, unsigned truncation) {
  return expand<Coeff>(w.letters(), truncation);
}

class Depth {
 public:
  enum class Kind { exact, at_least, infinite };

  static Depth exact(unsigned d) { return Depth(Kind::exact, d); }
  static Depth at_least(unsigned d) { return Depth(Kind::at_least, d); }
  static Depth infinite() { return Depth(Kind::infinite, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ == Kind::exact; }
  // For exact: the depth. For at_least: the certified lower bound.
  unsigned value() const noexcept { return value_; }

  // Certified lower bound on gamma(w); infinite maps to the largest unsigned.
  unsigned lower_bound() const noexcept { return kind_ == Kind::infinite ? ~0u : value_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::exact: return "exact";
      case Kind::at_least: return "at_least";
      case Kind::infinite: return "infinite";
    }
    return "?";
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::exact: return std::to_string(value_);
      case Kind::at_least: return ">=" + std::to_string(value_);
      case Kind::infinite: return "inf";
    }
    return "?";
  }

  friend bool operator==(const Depth&, const Depth&) = default;

 private:
  Depth(Kind k, unsigned v) : kind_(k), value_(v) {}
  Kind kind_;
  unsigned value_;
};

struct DepthReport {
  Depth depth = Depth::infinite();
  std::size_t nonzero_terms_at_depth = 0;
};

template <class Coeff = BigInt>
DepthReport lcs_depth_report(const ReducedWord& w, unsigned truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation degree must be >= 1");
  if (w.is_identity()) return {Depth::infinite(), 0};
  const auto s = expand<Coeff>(w, truncation);
  if (auto d = s.min_positive_degree()) return {Depth::exact(*d), s.nonzero_terms_at(*d)};
  return {Depth::at_least(truncation + 1), 0};
}

template <class Coeff = BigInt>
Depth lcs_depth(const ReducedWord& w, unsigned truncation) {
  return lcs_depth_report<Coeff>(w, truncation).depth;
}

// True iff w lies in gamma_n(F2). Only degrees below n are inspected, so the
// series is truncated at n - 1; 64-bit checked arithmetic suffices there for
// any word short enough to enumerate.
inline bool in_lower_central_term(std::span<const Letter> w, unsigned n) {
  if (n <= 1) return true;
  auto s = NcSeries<CheckedInt64>::one(n - 1);
  for (Letter x : w) s.multiply_by_letter(x);
  return !s.min_positive_degree().has_value();
}

using FreeGroupRingElement = GroupRingElement<ReducedWord>;

// d(w)/d(g) in Z[F2], using d(uv) = du + u dv, dx/dx = 1, dx^-1/dx = -x^-1.
inline FreeGroupRingElement fox_derivative(const ReducedWord& w, Generator g) {
  FreeGroupRingElement out;
  const auto xs = w.letters();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (generator_of(xs[i]) != g) continue;
    if (sign_of(xs[i]) > 0) {
      out.add(ReducedWord::from_reduced({xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(i)}), 1);
    } else {
      out.add(ReducedWord::from_reduced({xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(i + 1)}), -1);
    }
  }
  return out;
}

}  // namespace lcslab
