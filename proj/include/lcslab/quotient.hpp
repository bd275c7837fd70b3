#pragma once

// Groups with decidable equality serving as F2 / Lambda: a homomorphism from
// F2 is fixed by the images of a and b, and Lambda is its kernel (hence
// normal).

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lcslab/word.hpp"

namespace lcslab {

using Permutation = std::vector<std::uint16_t>;

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : p) {
      h ^= x + 1u;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class QuotientParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint16_t>(i);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw QuotientParseError("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) throw QuotientParseError("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      std::size_t v = 0, digits = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::size_t>(text[pos] - '0');
        ++pos;
        ++digits;
      }
      if (digits == 0 || v == 0 || v > degree) throw QuotientParseError("bad point in cycle: " + std::string(text));
      if (std::find(cycle.begin(), cycle.end(), v - 1) != cycle.end())
        throw QuotientParseError("repeated point in cycle: " + std::string(text));
      cycle.push_back(v - 1);
    }
    Permutation c(degree);
    for (std::size_t i = 0; i < degree; ++i) c[i] = static_cast<std::uint16_t>(i);
    for (std::size_t i = 0; i < cycle.size(); ++i) c[cycle[i]] = static_cast<std::uint16_t>(cycle[(i + 1) % cycle.size()]);
    // apply p, then c
    for (std::size_t i = 0; i < degree; ++i) p[i] = c[p[i]];
    skip_ws();
  }
  return p;
}

inline std::size_t max_point(std::string_view text) {
  std::size_t best = 0, v = 0;
  bool in_number = false;
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      v = v * 10 + static_cast<std::size_t>(ch - '0');
      in_number = true;
    } else {
      if (in_number) best = std::max(best, v);
      v = 0;
      in_number = false;
    }
  }
  if (in_number) best = std::max(best, v);
  return best;
}

}  // namespace detail

// Permutations act on the right: the image of x1 x2 ... xn is "apply pi(x1),
// then pi(x2), ...".
class PermutationQuotient {
 public:
  using element_type = Permutation;
  using hash_type = PermutationHash;

  PermutationQuotient(Permutation image_a, Permutation image_b)
      : images_{std::move(image_a), {}, std::move(image_b), {}} {
    if (images_[0].size() != images_[2].size() || images_[0].empty())
      throw std::invalid_argument("permutation images must have equal positive degree");
    for (const auto* p : {&images_[0], &images_[2]}) {
      Permutation seen(p->size(), 0);
      for (auto x : *p) {
        if (x >= p->size() || seen[x]) throw std::invalid_argument("not a permutation");
        seen[x] = 1;
      }
    }
    images_[1] = invert(images_[0]);
    images_[3] = invert(images_[2]);
  }

  // "a=(1 2);b=(2 3)", points numbered from 1.
  static PermutationQuotient parse(std::string_view spec) {
    const auto semi = spec.find(';');
    if (semi == std::string_view::npos) throw QuotientParseError("expected 'a=...;b=...': " + std::string(spec));
    std::string_view first = spec.substr(0, semi), second = spec.substr(semi + 1);
    auto strip = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    first = strip(first);
    second = strip(second);
    if (first.rfind("a=", 0) != 0 || second.rfind("b=", 0) != 0)
      throw QuotientParseError("expected 'a=...;b=...': " + std::string(spec));
    first.remove_prefix(2);
    second.remove_prefix(2);
    const std::size_t degree = std::max<std::size_t>({detail::max_point(first), detail::max_point(second), 1});
    return {detail::parse_cycles(first, degree), detail::parse_cycles(second, degree)};
  }

  std::size_t degree() const noexcept { return images_[0].size(); }

  Permutation identity() const {
    Permutation p(degree());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint16_t>(i);
    return p;
  }

  const Permutation& image(Letter x) const noexcept { return images_[static_cast<std::uint8_t>(x)]; }

  static Permutation multiply(const Permutation& p, const Permutation& q) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  }

  static Permutation invert(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint16_t>(i);
    return r;
  }

  Permutation evaluate(std::span<const Letter> w) const {
    Permutation p = identity();
    for (Letter x : w) p = multiply(p, image(x));
    return p;
  }

  std::string to_string() const { return "perm:a=" + cycles(images_[0]) + ";b=" + cycles(images_[2]); }

  static std::string cycles(const Permutation& p) {
    std::string s;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i] || p[i] == i) continue;
      s += "(";
      for (std::size_t j = i; !seen[j]; j = p[j]) {
        seen[j] = true;
        if (s.back() != '(') s += " ";
        s += std::to_string(j + 1);
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }

 private:
  std::array<Permutation, 4> images_;
};

struct Z2Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Z2Point&, const Z2Point&) = default;
};

struct Z2PointHash {
  std::size_t operator()(const Z2Point& p) const noexcept {
    return std::hash<std::int64_t>{}(p.x * 0x9E3779B97F4A7C15ll ^ p.y);
  }
};

// F2 -> Z^2 by exponent sums; its kernel is the commutator subgroup.
class FreeAbelianQuotient {
 public:
  using element_type = Z2Point;
  using hash_type = Z2PointHash;

  static Z2Point identity() noexcept { return {}; }
  static Z2Point image(Letter x) noexcept {
    return generator_of(x) == Generator::a ? Z2Point{sign_of(x), 0} : Z2Point{0, sign_of(x)};
  }
  static Z2Point multiply(const Z2Point& p, const Z2Point& q) noexcept { return {p.x + q.x, p.y + q.y}; }
  static Z2Point invert(const Z2Point& p) noexcept { return {-p.x, -p.y}; }
  static Z2Point evaluate(std::span<const Letter> w) noexcept {
    const auto s = exponent_sums(w);
    return {s.a, s.b};
  }
  static std::string to_string() { return "z2"; }
};

using QuotientGroup = std::variant<FreeAbelianQuotient, PermutationQuotient>;

// "z2" or "perm:a=(...);b=(...)".
inline QuotientGroup parse_quotient(std::string_view text) {
  if (text == "z2") return FreeAbelianQuotient{};
  if (text.rfind("perm:", 0) == 0) return PermutationQuotient::parse(text.substr(5));
  throw QuotientParseError("unknown quotient: " + std::string(text));
}

inline std::string quotient_name(const QuotientGroup& q) {
  return std::visit([](const auto& g) { return g.to_string(); }, q);
}

// Multiplication table of the finite group generated by the images of a, b.
// Element 0 is the identity; step[g][x] is the index of g * image(x).
class FiniteGroupTable {
 public:
  explicit FiniteGroupTable(const PermutationQuotient& q, std::size_t max_order = 1u << 20) {
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
    std::deque<std::uint32_t> queue;
    elements_.push_back(q.identity());
    index.emplace(elements_.back(), 0);
    queue.push_back(0);
    while (!queue.empty()) {
      const auto g = queue.front();
      queue.pop_front();
      if (step_.size() <= g) step_.resize(g + 1);
      for (Letter x : kAllLetters) {
        Permutation h = PermutationQuotient::multiply(elements_[g], q.image(x));
        auto [it, inserted] = index.try_emplace(h, static_cast<std::uint32_t>(elements_.size()));
        if (inserted) {
          if (elements_.size() >= max_order) throw std::length_error("quotient group too large to tabulate");
          elements_.push_back(std::move(h));
          queue.push_back(it->second);
        }
        step_[g][static_cast<std::uint8_t>(x)] = it->second;
      }
    }
    step_.resize(elements_.size());
  }

  std::size_t order() const noexcept { return elements_.size(); }
  std::uint32_t step(std::uint32_t g, Letter x) const noexcept { return step_[g][static_cast<std::uint8_t>(x)]; }
  const Permutation& element(std::uint32_t g) const { return elements_[g]; }

  std::uint32_t evaluate(std::span<const Letter> w) const noexcept {
    std::uint32_t g = 0;
    for (Letter x : w) g = step(g, x);
    return g;
  }

 private:
  std::vector<Permutation> elements_;
  std::vector<std::array<std::uint32_t, 4>> step_;
};

// Does the letter automorphism f map ker(q) onto itself? Equivalent to the
// existence of an automorphism t of the image group with t(q(x)) = q(f(x)),
// which is checked by a consistent relabelling along the Cayley graph.
inline bool preserves_kernel(const PermutationQuotient& q, const LetterAutomorphism& f) {
  const FiniteGroupTable table(q);
  std::vector<std::int64_t> t(table.order(), -1);
  t[0] = 0;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    const auto g = queue.front();
    queue.pop_front();
    for (Letter x : kAllLetters) {
      const auto h = table.step(g, x);
      const auto th = table.step(static_cast<std::uint32_t>(t[g]), f(x));
      if (t[h] < 0) {
        t[h] = th;
        queue.push_back(h);
      } else if (static_cast<std::uint32_t>(t[h]) != th) {
        return false;
      }
    }
  }
  std::vector<bool> hit(table.order(), false);
  for (auto v : t) {
    if (hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

inline bool preserves_kernel(const FreeAbelianQuotient&, const LetterAutomorphism&) { return true; }

inline bool preserves_kernel(const QuotientGroup& q, const LetterAutomorphism& f) {
  return std::visit([&](const auto& g) { return preserves_kernel(g, f); }, q);
}

}  // namespace lcslab
