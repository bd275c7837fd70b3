#pragma once

// Degree-truncated power series in two noncommuting indeterminates X_a, X_b.
//
// A monomial of degree k is a k-bit string (X_a = 0, X_b = 1, first factor in
// the most significant bit). Coefficients live in a dense array of
// 2^(D+1) - 1 slots, monomials of degree k occupying [2^k - 1, 2^(k+1) - 1).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lcslab/word.hpp"

namespace lcslab {

using BigInt = boost::multiprecision::cpp_int;

// 64-bit integer that throws instead of wrapping.
class CheckedInt64 {
 public:
  constexpr CheckedInt64() = default;
  constexpr CheckedInt64(std::int64_t v) : v_(v) {}  // NOLINT: implicit by design of the coefficient concept

  constexpr std::int64_t value() const noexcept { return v_; }

  CheckedInt64& operator+=(CheckedInt64 o) {
    if (__builtin_add_overflow(v_, o.v_, &v_)) throw std::overflow_error("CheckedInt64 overflow");
    return *this;
  }
  CheckedInt64& operator-=(CheckedInt64 o) {
    if (__builtin_sub_overflow(v_, o.v_, &v_)) throw std::overflow_error("CheckedInt64 overflow");
    return *this;
  }
  friend CheckedInt64 operator+(CheckedInt64 x, CheckedInt64 y) { return x += y; }
  friend CheckedInt64 operator-(CheckedInt64 x, CheckedInt64 y) { return x -= y; }
  friend CheckedInt64 operator-(CheckedInt64 x) { return CheckedInt64(0) - x; }
  friend CheckedInt64 operator*(CheckedInt64 x, CheckedInt64 y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x.v_, y.v_, &r)) throw std::overflow_error("CheckedInt64 overflow");
    return r;
  }
  friend constexpr bool operator==(CheckedInt64, CheckedInt64) = default;

 private:
  std::int64_t v_ = 0;
};

inline std::string to_string(CheckedInt64 x) { return std::to_string(x.value()); }
inline std::string to_string(const BigInt& x) { return x.str(); }

class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr Monomial(unsigned degree, std::uint64_t bits) : degree_(degree), bits_(bits) {}

  static Monomial parse(std::string_view text) {
    Monomial m;
    if (text == "1") return m;
    for (std::size_t i = 0; i < text.size(); i += 2) {
      if (i + 1 >= text.size() || text[i] != 'X' || (text[i + 1] != 'a' && text[i + 1] != 'b'))
        throw std::invalid_argument("bad monomial: " + std::string(text));
      m = m.times(text[i + 1] == 'a' ? Generator::a : Generator::b);
    }
    return m;
  }

  constexpr unsigned degree() const noexcept { return degree_; }
  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr std::size_t slot() const noexcept { return (std::size_t{1} << degree_) - 1 + bits_; }

  constexpr Monomial times(Generator g) const noexcept {
    return {degree_ + 1, (bits_ << 1) | static_cast<std::uint64_t>(g)};
  }

  std::string to_string() const {
    if (degree_ == 0) return "1";
    std::string s;
    for (unsigned i = degree_; i-- > 0;) s += ((bits_ >> i) & 1u) ? "Xb" : "Xa";
    return s;
  }

  friend constexpr bool operator==(Monomial, Monomial) = default;

 private:
  unsigned degree_ = 0;
  std::uint64_t bits_ = 0;
};

class SeriesBudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr unsigned kMaxTruncation = 26;

template <class Coeff = BigInt>
class NcSeries {
 public:
  using coefficient_type = Coeff;

  explicit NcSeries(unsigned truncation) : truncation_(truncation) {
    if (truncation > kMaxTruncation)
      throw SeriesBudgetExceeded("truncation degree " + std::to_string(truncation) + " exceeds " +
                                 std::to_string(kMaxTruncation));
    coeffs_.assign((std::size_t{2} << truncation) - 1, Coeff(0));
  }

  static NcSeries one(unsigned truncation) {
    NcSeries s(truncation);
    s.coeffs_[0] = Coeff(1);
    return s;
  }

  unsigned truncation() const noexcept { return truncation_; }

  const Coeff& coefficient(Monomial m) const {
    if (m.degree() > truncation_) throw std::out_of_range("monomial above truncation degree");
    return coeffs_[m.slot()];
  }

  void set(Monomial m, Coeff c) {
    if (m.degree() > truncation_) throw std::out_of_range("monomial above truncation degree");
    coeffs_[m.slot()] = std::move(c);
  }

  // Right multiplication by the Magnus image of one letter:
  //   x   -> 1 + X
  //   x^-1 -> 1 - X + X^2 - ...
  // Both run in place in O(2^D): the first by sweeping degrees downwards
  // (S' = S + S X), the second upwards (S' = S - S' X).
  void multiply_by_letter(Letter x) {
    const auto g = static_cast<std::uint64_t>(generator_of(x));
    if (sign_of(x) > 0) {
      for (unsigned k = truncation_; k-- > 0;) {
        const std::size_t base = (std::size_t{1} << k) - 1;
        const std::size_t next = (std::size_t{2} << k) - 1;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits)
          if (!is_zero(coeffs_[base + bits])) coeffs_[next + ((bits << 1) | g)] += coeffs_[base + bits];
      }
    } else {
      for (unsigned k = 0; k < truncation_; ++k) {
        const std::size_t base = (std::size_t{1} << k) - 1;
        const std::size_t next = (std::size_t{2} << k) - 1;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits)
          if (!is_zero(coeffs_[base + bits])) coeffs_[next + ((bits << 1) | g)] -= coeffs_[base + bits];
      }
    }
  }

  // Generic truncated product; O(D 2^D)-ish per nonzero term of the left factor.
  friend NcSeries operator*(const NcSeries& x, const NcSeries& y) {
    if (x.truncation_ != y.truncation_) throw std::invalid_argument("truncation mismatch");
    NcSeries r(x.truncation_);
    const unsigned d = x.truncation_;
    for (unsigned i = 0; i <= d; ++i) {
      for (std::uint64_t bi = 0; bi < (std::uint64_t{1} << i); ++bi) {
        const Coeff& cx = x.coeffs_[Monomial(i, bi).slot()];
        if (is_zero(cx)) continue;
        for (unsigned j = 0; i + j <= d; ++j) {
          for (std::uint64_t bj = 0; bj < (std::uint64_t{1} << j); ++bj) {
            const Coeff& cy = y.coeffs_[Monomial(j, bj).slot()];
            if (is_zero(cy)) continue;
            r.coeffs_[Monomial(i + j, (bi << j) | bj).slot()] += cx * cy;
          }
        }
      }
    }
    return r;
  }

  friend bool operator==(const NcSeries& x, const NcSeries& y) {
    return x.truncation_ == y.truncation_ && x.coeffs_ == y.coeffs_;
  }

  // Nonzero terms in degree-then-bit order.
  std::vector<std::pair<Monomial, Coeff>> terms() const {
    std::vector<std::pair<Monomial, Coeff>> out;
    for (unsigned k = 0; k <= truncation_; ++k)
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        const Monomial m(k, bits);
        if (!is_zero(coeffs_[m.slot()])) out.emplace_back(m, coeffs_[m.slot()]);
      }
    return out;
  }

  std::size_t nonzero_terms_at(unsigned degree) const {
    if (degree > truncation_) return 0;
    std::size_t count = 0;
    const std::size_t base = (std::size_t{1} << degree) - 1;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << degree); ++bits)
      if (!is_zero(coeffs_[base + bits])) ++count;
    return count;
  }

  // Smallest positive degree carrying a nonzero coefficient.
  std::optional<unsigned> min_positive_degree() const {
    for (unsigned k = 1; k <= truncation_; ++k)
      if (nonzero_terms_at(k) != 0) return k;
    return std::nullopt;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [m, c] : terms()) {
      if (!s.empty()) s += " + ";
      s += lcslab::to_string(c) + (m.degree() == 0 ? "" : "*" + m.to_string());
    }
    return s.empty() ? "0" : s;
  }

 private:
  static bool is_zero(const Coeff& c) { return c == Coeff(0); }

  unsigned truncation_;
  std::vector<Coeff> coeffs_;
};

}  // namespace lcslab
