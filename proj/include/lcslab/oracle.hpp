#pragma once

// Membership oracles for subgroups of F2, each declaring the symmetries under
// which membership is invariant. Search pruning only uses what an oracle
// declares here.

#include <array>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lcslab/magnus.hpp"
#include "lcslab/quotient.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

struct Invariance {
  bool conjugation = false;
  bool inversion = false;
  // bit i set: signed_permutation(i) maps the subgroup onto itself
  std::uint8_t automorphisms = 1;

  static Invariance full() { return {true, true, 0xFF}; }
};

template <class O>
concept MembershipOracle = requires(const O& o, std::span<const Letter> w) {
  { o.contains(w) } -> std::convertible_to<bool>;
  { o.invariance() } -> std::same_as<Invariance>;
  { o.name() } -> std::convertible_to<std::string>;
};

inline std::uint8_t kernel_automorphisms(const QuotientGroup& q) {
  std::uint8_t mask = 0;
  for (unsigned i = 0; i < kSignedPermutationCount; ++i)
    if (preserves_kernel(q, signed_permutation(i))) mask |= static_cast<std::uint8_t>(1u << i);
  return mask;
}

// Every word; its girth is 1.
class WholeGroupOracle {
 public:
  bool contains(std::span<const Letter>) const { return true; }
  Invariance invariance() const { return Invariance::full(); }
  std::string name() const { return "free"; }
};

// w in gamma_n(F2). gamma_n is fully invariant.
class LowerCentralOracle {
 public:
  explicit LowerCentralOracle(unsigned n) : n_(n) {}
  bool contains(std::span<const Letter> w) const { return in_lower_central_term(w, n_); }
  Invariance invariance() const { return Invariance::full(); }
  std::string name() const { return "lcs:" + std::to_string(n_); }
  unsigned n() const noexcept { return n_; }

 private:
  unsigned n_;
};

// w in ker(F2 -> Z^2) = [F2, F2].
class AbelianKernelOracle {
 public:
  bool contains(std::span<const Letter> w) const {
    const auto s = exponent_sums(w);
    return s.a == 0 && s.b == 0;
  }
  Invariance invariance() const { return Invariance::full(); }
  std::string name() const { return "z2"; }
};

// w in the second derived subgroup F2'' = [Lambda, Lambda] with Lambda = [F2, F2].
// Projected to Z[Z^2], the Fox derivative d/da counts signed traversals of
// each horizontal edge of the walk traced by w in the integer lattice (and
// d/db the vertical edges); w lies in F2'' iff the walk is closed and every
// edge is traversed net zero times.
class SecondDerivedOracle {
 public:
  bool contains(std::span<const Letter> w) const {
    const auto s = exponent_sums(w);
    if (s.a != 0 || s.b != 0) return false;
    const std::int64_t r = static_cast<std::int64_t>(w.size() / 2) + 1;
    const std::int64_t side = 2 * r + 1;
    thread_local std::vector<std::int32_t> grid;
    thread_local std::vector<std::size_t> touched;
    const auto cells = static_cast<std::size_t>(side * side * 2);
    if (grid.size() < cells) grid.assign(cells, 0);
    touched.clear();
    std::int64_t x = 0, y = 0;
    auto edge = [&](std::int64_t px, std::int64_t py, int axis) {
      return static_cast<std::size_t>(((px + r) * side + (py + r)) * 2 + axis);
    };
    for (Letter l : w) {
      std::size_t e;
      int delta;
      if (generator_of(l) == Generator::a) {
        // the edge from (x, y) to (x + 1, y) is keyed by its left endpoint
        if (sign_of(l) > 0) {
          e = edge(x, y, 0);
          delta = 1;
          ++x;
        } else {
          --x;
          e = edge(x, y, 0);
          delta = -1;
        }
      } else {
        if (sign_of(l) > 0) {
          e = edge(x, y, 1);
          delta = 1;
          ++y;
        } else {
          --y;
          e = edge(x, y, 1);
          delta = -1;
        }
      }
      if (grid[e] == 0) touched.push_back(e);
      grid[e] += delta;
    }
    bool zero = true;
    for (auto e : touched) {
      if (grid[e] != 0) zero = false;
      grid[e] = 0;
    }
    return zero;
  }
  Invariance invariance() const { return Invariance::full(); }
  std::string name() const { return "derived2"; }
};

// w in ker(F2 -> G) for a finite permutation group G.
class FiniteKernelOracle {
 public:
  explicit FiniteKernelOracle(const PermutationQuotient& q)
      : quotient_(q), table_(q), invariance_{true, true, kernel_automorphisms(q)} {}
  bool contains(std::span<const Letter> w) const { return table_.evaluate(w) == 0; }
  Invariance invariance() const { return invariance_; }
  std::string name() const { return quotient_.to_string(); }
  const FiniteGroupTable& table() const noexcept { return table_; }

 private:
  PermutationQuotient quotient_;
  FiniteGroupTable table_;
  Invariance invariance_;
};

// w in [Lambda, Lambda] for Lambda = ker(F2 -> G), G finite: w in Lambda and
// both Fox derivatives vanish in Z[G]. [Lambda, Lambda] is characteristic in
// the normal subgroup Lambda, hence normal in F2, and inherits every letter
// automorphism that preserves Lambda.
class FiniteDerivedOracle {
 public:
  explicit FiniteDerivedOracle(const PermutationQuotient& q)
      : quotient_(q), table_(q), invariance_{true, true, kernel_automorphisms(q)} {}

  bool contains(std::span<const Letter> w) const {
    const std::size_t n = table_.order();
    thread_local std::vector<std::int32_t> coeff;
    thread_local std::vector<std::size_t> touched;
    if (coeff.size() < 2 * n) coeff.assign(2 * n, 0);
    touched.clear();
    std::uint32_t g = 0;
    for (Letter x : w) {
      const std::size_t axis = static_cast<std::size_t>(generator_of(x));
      std::size_t slot;
      int delta;
      if (sign_of(x) > 0) {
        slot = 2 * g + axis;
        delta = 1;
        g = table_.step(g, x);
      } else {
        g = table_.step(g, x);
        slot = 2 * g + axis;
        delta = -1;
      }
      if (coeff[slot] == 0) touched.push_back(slot);
      coeff[slot] += delta;
    }
    bool zero = g == 0;
    for (auto s : touched) {
      if (coeff[s] != 0) zero = false;
      coeff[s] = 0;
    }
    return zero;
  }
  Invariance invariance() const { return invariance_; }
  std::string name() const { return "derived:" + quotient_.to_string(); }

 private:
  PermutationQuotient quotient_;
  FiniteGroupTable table_;
  Invariance invariance_;
};

// w is a law of the finite permutation group G: w(g, h) = 1 for all g, h.
// Laws form a fully invariant subgroup. Only pairs with g among conjugacy
// class representatives are tried, since w(xgx^-1, xhx^-1) = x w(g, h) x^-1.
class LawOracle {
 public:
  explicit LawOracle(const PermutationQuotient& q) : quotient_(q) {
    const FiniteGroupTable table(q);
    const std::size_t n = table.order();
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    for (std::uint32_t g = 0; g < n; ++g) index.emplace(table.element(g), g);
    mul_.resize(n * n);
    for (std::uint32_t g = 0; g < n; ++g)
      for (std::uint32_t h = 0; h < n; ++h)
        mul_[g * n + h] = index.at(PermutationQuotient::multiply(table.element(g), table.element(h)));
    inv_.resize(n);
    for (std::uint32_t g = 0; g < n; ++g) inv_[g] = index.at(PermutationQuotient::invert(table.element(g)));
    std::vector<bool> covered(n, false);
    for (std::uint32_t g = 0; g < n; ++g) {
      if (covered[g]) continue;
      representatives_.push_back(g);
      for (std::uint32_t x = 0; x < n; ++x) covered[mul_[mul_[x * n + g] * n + inv_[x]]] = true;
    }
    order_ = n;
  }

  bool contains(std::span<const Letter> w) const {
    const std::size_t n = order_;
    for (std::uint32_t g : representatives_)
      for (std::uint32_t h = 0; h < n; ++h) {
        const std::array<std::uint32_t, 4> img{g, inv_[g], h, inv_[h]};
        std::uint32_t x = 0;
        for (Letter l : w) x = mul_[x * n + img[static_cast<std::uint8_t>(l)]];
        if (x != 0) return false;
      }
    return true;
  }
  Invariance invariance() const { return Invariance::full(); }
  std::string name() const { return "law:" + quotient_.to_string(); }
  std::size_t group_order() const noexcept { return order_; }
  std::size_t class_count() const noexcept { return representatives_.size(); }

 private:
  PermutationQuotient quotient_;
  std::size_t order_ = 0;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> representatives_;
};

using AnyOracle = std::variant<WholeGroupOracle, LowerCentralOracle, AbelianKernelOracle, SecondDerivedOracle,
                               FiniteKernelOracle, FiniteDerivedOracle, LawOracle>;

// Type-erased oracle for the command line and the experiment runner.
class OracleRef {
 public:
  explicit OracleRef(AnyOracle o) : o_(std::move(o)) {}
  bool contains(std::span<const Letter> w) const {
    return std::visit([&](const auto& o) { return static_cast<bool>(o.contains(w)); }, o_);
  }
  Invariance invariance() const {
    return std::visit([](const auto& o) { return o.invariance(); }, o_);
  }
  std::string name() const {
    return std::visit([](const auto& o) { return std::string(o.name()); }, o_);
  }

 private:
  AnyOracle o_;
};

// free | z2 | perm:<spec> | lcs:<n> | derived2 | derived:z2 | derived:perm:<spec> | law:perm:<spec>
inline OracleRef parse_oracle(std::string_view text) {
  if (text == "free") return OracleRef(WholeGroupOracle{});
  if (text == "z2") return OracleRef(AbelianKernelOracle{});
  if (text == "derived2" || text == "derived:z2") return OracleRef(SecondDerivedOracle{});
  if (text.rfind("lcs:", 0) == 0) {
    const std::string digits(text.substr(4));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3)
      throw QuotientParseError("bad lower central index: " + std::string(text));
    return OracleRef(LowerCentralOracle(static_cast<unsigned>(std::stoul(digits))));
  }
  if (text.rfind("perm:", 0) == 0) return OracleRef(FiniteKernelOracle(PermutationQuotient::parse(text.substr(5))));
  if (text.rfind("law:perm:", 0) == 0) return OracleRef(LawOracle(PermutationQuotient::parse(text.substr(9))));
  if (text.rfind("derived:perm:", 0) == 0)
    return OracleRef(FiniteDerivedOracle(PermutationQuotient::parse(text.substr(13))));
  throw QuotientParseError("unknown subgroup: " + std::string(text));
}

}  // namespace lcslab
