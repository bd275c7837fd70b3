#pragma once

// Freely reduced words in the free group F2 = <a, b>.
//
// Text form: `a`, `A`, `b`, `B` stand for a, a^-1, b, b^-1; the identity is
// written `1`. Words are immutable values; every operation returns a new word.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lcslab {

enum class Generator : std::uint8_t { a = 0, b = 1 };

// The numeric values are load-bearing: bit 0 is the sign, bit 1 the generator,
// and the enumeration order a < A < b < B is the letter order used by shortlex.
enum class Letter : std::uint8_t { a = 0, A = 1, b = 2, B = 3 };

inline constexpr std::array<Letter, 4> kAllLetters{Letter::a, Letter::A, Letter::b, Letter::B};

constexpr Letter inverse(Letter x) noexcept {
  return static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 1u);
}

constexpr Generator generator_of(Letter x) noexcept {
  return static_cast<Generator>(static_cast<std::uint8_t>(x) >> 1);
}

constexpr int sign_of(Letter x) noexcept { return (static_cast<std::uint8_t>(x) & 1u) ? -1 : 1; }

constexpr Letter make_letter(Generator g, int sign) noexcept {
  return static_cast<Letter>((static_cast<std::uint8_t>(g) << 1) | (sign < 0 ? 1u : 0u));
}

constexpr char to_char(Letter x) noexcept {
  constexpr char table[] = {'a', 'A', 'b', 'B'};
  return table[static_cast<std::uint8_t>(x)];
}

class WordParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr Letter letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'A': return Letter::A;
    case 'b': return Letter::b;
    case 'B': return Letter::B;
    default: throw WordParseError(std::string("not a letter of F2: '") + c + "'");
  }
}

inline bool is_reduced(std::span<const Letter> letters) noexcept {
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (letters[i] == inverse(letters[i - 1])) return false;
  return true;
}

class ReducedWord;

// Stack-based free reduction; letters pushed one at a time cancel against the
// current tail.
class WordBuilder {
 public:
  WordBuilder() = default;
  explicit WordBuilder(std::size_t capacity) { letters_.reserve(capacity); }

  void push(Letter x) {
    if (!letters_.empty() && letters_.back() == inverse(x)) {
      letters_.pop_back();
      ++cancelled_;
    } else {
      letters_.push_back(x);
    }
  }

  void append(std::span<const Letter> xs) {
    for (Letter x : xs) push(x);
  }

  void append_inverse(std::span<const Letter> xs) {
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) push(inverse(*it));
  }

  std::size_t size() const noexcept { return letters_.size(); }
  std::size_t cancelled_pairs() const noexcept { return cancelled_; }

  ReducedWord finish() &&;

 private:
  std::vector<Letter> letters_;
  std::size_t cancelled_ = 0;
};

class ReducedWord {
 public:
  ReducedWord() = default;
  ReducedWord(std::initializer_list<Letter> raw);

  static ReducedWord reduce(std::span<const Letter> raw) {
    WordBuilder builder(raw.size());
    builder.append(raw);
    return std::move(builder).finish();
  }

  // Adopts `letters` without copying; throws if they are not freely reduced.
  static ReducedWord from_reduced(std::vector<Letter> letters) {
    if (!is_reduced(letters)) throw std::invalid_argument("letter sequence is not freely reduced");
    ReducedWord w;
    w.letters_ = std::move(letters);
    return w;
  }

  static ReducedWord letter(Letter x) {
    ReducedWord w;
    w.letters_.push_back(x);
    return w;
  }

  // Accepts the canonical text form; input need not be reduced ("aA" parses to 1).
  static ReducedWord parse(std::string_view text) {
    if (text == "1" || text.empty()) return {};
    WordBuilder builder(text.size());
    for (char c : text) builder.push(letter_from_char(c));
    return std::move(builder).finish();
  }

  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    s.reserve(letters_.size());
    for (Letter x : letters_) s.push_back(to_char(x));
    return s;
  }

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

  // Plain lexicographic order on letter sequences (a < A < b < B).
  friend std::strong_ordering operator<=>(const ReducedWord& u, const ReducedWord& v) {
    return u.letters_ <=> v.letters_;
  }

 private:
  friend class WordBuilder;
  std::vector<Letter> letters_;
};

inline ReducedWord WordBuilder::finish() && {
  ReducedWord w;
  w.letters_ = std::move(letters_);
  return w;
}

inline ReducedWord::ReducedWord(std::initializer_list<Letter> raw)
    : ReducedWord(reduce(std::span<const Letter>(raw.begin(), raw.size()))) {}

// Shortlex: shorter words first, then lexicographic.
inline bool shortlex_less(std::span<const Letter> u, std::span<const Letter> v) noexcept {
  if (u.size() != v.size()) return u.size() < v.size();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != v[i]) return u[i] < v[i];
  return false;
}

inline bool shortlex_less(const ReducedWord& u, const ReducedWord& v) noexcept {
  return shortlex_less(u.letters(), v.letters());
}

inline ReducedWord reduce(std::span<const Letter> raw) { return ReducedWord::reduce(raw); }

// Number of letter pairs that cancel when u and v are juxtaposed.
inline std::size_t cancellation_count(std::span<const Letter> u, std::span<const Letter> v) noexcept {
  std::size_t c = 0;
  const std::size_t m = std::min(u.size(), v.size());
  while (c < m && v[c] == inverse(u[u.size() - 1 - c])) ++c;
  return c;
}

inline std::size_t cancellation_count(const ReducedWord& u, const ReducedWord& v) noexcept {
  return cancellation_count(u.letters(), v.letters());
}

struct Product {
  ReducedWord word;
  std::size_t cancelled_pairs = 0;
};

inline Product concat(const ReducedWord& u, const ReducedWord& v) {
  const std::size_t c = cancellation_count(u, v);
  std::vector<Letter> out;
  out.reserve(u.length() + v.length() - 2 * c);
  out.insert(out.end(), u.letters().begin(), u.letters().end() - static_cast<std::ptrdiff_t>(c));
  out.insert(out.end(), v.letters().begin() + static_cast<std::ptrdiff_t>(c), v.letters().end());
  return {ReducedWord::from_reduced(std::move(out)), c};
}

inline ReducedWord operator*(const ReducedWord& u, const ReducedWord& v) { return concat(u, v).word; }

inline ReducedWord inverse(const ReducedWord& w) {
  std::vector<Letter> out(w.length());
  for (std::size_t i = 0; i < w.length(); ++i) out[i] = inverse(w[w.length() - 1 - i]);
  return ReducedWord::from_reduced(std::move(out));
}

// [u, v] = u v u^-1 v^-1
inline ReducedWord commutator(const ReducedWord& u, const ReducedWord& v) {
  WordBuilder builder(2 * (u.length() + v.length()));
  builder.append(u.letters());
  builder.append(v.letters());
  builder.append_inverse(u.letters());
  builder.append_inverse(v.letters());
  return std::move(builder).finish();
}

// v u v^-1
inline ReducedWord conjugate(const ReducedWord& u, const ReducedWord& v) {
  WordBuilder builder(u.length() + 2 * v.length());
  builder.append(v.letters());
  builder.append(u.letters());
  builder.append_inverse(v.letters());
  return std::move(builder).finish();
}

inline ReducedWord power(const ReducedWord& w, int k) {
  const ReducedWord base = k < 0 ? inverse(w) : w;
  WordBuilder builder;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) builder.append(base.letters());
  return std::move(builder).finish();
}

// A cyclically reduced word: reduced, and first letter is not the inverse of
// the last.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(ReducedWord w) : word_(std::move(w)) {
    if (!word_.is_identity() && word_.front() == inverse(word_.back()))
      throw std::invalid_argument("word is not cyclically reduced");
  }
  const ReducedWord& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.length(); }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  ReducedWord word_;
};

struct CyclicReduction {
  CyclicWord core;
  ReducedWord conjugator;  // w = conjugator * core * conjugator^-1
};

inline CyclicReduction cyclic_reduce(const ReducedWord& w) {
  const auto xs = w.letters();
  std::size_t lo = 0, hi = xs.size();
  while (hi - lo >= 2 && xs[lo] == inverse(xs[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(xs.begin() + static_cast<std::ptrdiff_t>(lo), xs.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<Letter> conj(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(lo));
  return {CyclicWord(ReducedWord::from_reduced(std::move(core))), ReducedWord::from_reduced(std::move(conj))};
}

// |w| = min over v of l(v w v^-1).
inline std::size_t cyclic_length(std::span<const Letter> xs) noexcept {
  std::size_t lo = 0, hi = xs.size();
  while (hi - lo >= 2 && xs[lo] == inverse(xs[hi - 1])) {
    ++lo;
    --hi;
  }
  return hi - lo;
}

inline std::size_t cyclic_length(const ReducedWord& w) noexcept { return cyclic_length(w.letters()); }

struct ExponentSums {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const ExponentSums&, const ExponentSums&) = default;
  ExponentSums operator+(const ExponentSums& o) const { return {a + o.a, b + o.b}; }
};

inline ExponentSums exponent_sums(std::span<const Letter> xs) noexcept {
  ExponentSums s;
  for (Letter x : xs) (generator_of(x) == Generator::a ? s.a : s.b) += sign_of(x);
  return s;
}

inline ExponentSums exponent_sums(const ReducedWord& w) noexcept { return exponent_sums(w.letters()); }

// The endomorphism a -> image_a, b -> image_b applied to w, freely reduced.
inline ReducedWord substitute(const ReducedWord& w, const ReducedWord& image_a, const ReducedWord& image_b) {
  WordBuilder builder;
  for (Letter x : w.letters()) {
    const ReducedWord& img = generator_of(x) == Generator::a ? image_a : image_b;
    if (sign_of(x) > 0)
      builder.append(img.letters());
    else
      builder.append_inverse(img.letters());
  }
  return std::move(builder).finish();
}

// Letter-permuting automorphisms of F2: the eight signed permutations of {a, b}.
struct LetterAutomorphism {
  std::array<Letter, 4> image{Letter::a, Letter::A, Letter::b, Letter::B};

  constexpr Letter operator()(Letter x) const noexcept { return image[static_cast<std::uint8_t>(x)]; }

  constexpr LetterAutomorphism then(const LetterAutomorphism& g) const noexcept {
    LetterAutomorphism r;
    for (Letter x : kAllLetters) r.image[static_cast<std::uint8_t>(x)] = g((*this)(x));
    return r;
  }

  friend constexpr bool operator==(const LetterAutomorphism&, const LetterAutomorphism&) = default;
};

// Index i encodes: bit 0 inverts a, bit 1 inverts b, bit 2 swaps a and b
// (applied after the inversions). Index 0 is the identity.
constexpr LetterAutomorphism signed_permutation(unsigned index) noexcept {
  LetterAutomorphism f;
  const bool inv_a = index & 1u, inv_b = index & 2u, swap = index & 4u;
  const Letter ia = inv_a ? Letter::A : Letter::a;
  const Letter ib = inv_b ? Letter::B : Letter::b;
  auto swapped = [&](Letter x) {
    if (!swap) return x;
    return make_letter(generator_of(x) == Generator::a ? Generator::b : Generator::a, sign_of(x));
  };
  f.image[0] = swapped(ia);
  f.image[1] = swapped(inverse(ia));
  f.image[2] = swapped(ib);
  f.image[3] = swapped(inverse(ib));
  return f;
}

inline constexpr unsigned kSignedPermutationCount = 8;

inline ReducedWord apply(const LetterAutomorphism& f, const ReducedWord& w) {
  std::vector<Letter> out(w.length());
  for (std::size_t i = 0; i < w.length(); ++i) out[i] = f(w[i]);
  return ReducedWord::from_reduced(std::move(out));
}

// Free-group operations bundled so that checks can be run against an
// alternative (e.g. deliberately broken) engine.
struct FreeGroupEngine {
  static ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) { return concat(u, v).word; }
  static std::size_t cancelled(const ReducedWord& u, const ReducedWord& v) { return cancellation_count(u, v); }
  static ReducedWord invert(const ReducedWord& w) { return inverse(w); }
  static ReducedWord bracket(const ReducedWord& u, const ReducedWord& v) { return commutator(u, v); }
  static ReducedWord conj(const ReducedWord& u, const ReducedWord& v) { return conjugate(u, v); }
};

namespace words {
inline const ReducedWord a = ReducedWord::letter(Letter::a);
inline const ReducedWord b = ReducedWord::letter(Letter::b);
inline const ReducedWord A = ReducedWord::letter(Letter::A);
inline const ReducedWord B = ReducedWord::letter(Letter::B);
}  // namespace words

}  // namespace lcslab

template <>
struct std::hash<lcslab::ReducedWord> {
  std::size_t operator()(const lcslab::ReducedWord& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (lcslab::Letter x : w.letters()) {
      h ^= static_cast<std::uint64_t>(x) + 1;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ w.length());
  }
};
