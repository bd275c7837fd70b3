#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lcslab {

// Finitely supported integer combination of group elements. Zero
// coefficients are never stored.
//
// Coefficients are 64-bit: every element built here is a sum of at most
// l(w) unit terms, so magnitudes are bounded by the word length.
template <class Element, class Hash = std::hash<Element>>
class GroupRingElement {
 public:
  using element_type = Element;

  void add(const Element& g, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::int64_t coefficient(const Element& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t support_size() const noexcept { return terms_.size(); }
  const std::unordered_map<Element, std::int64_t, Hash>& terms() const noexcept { return terms_; }

  // Sum of coefficients.
  std::int64_t augmentation() const {
    std::int64_t s = 0;
    for (const auto& [g, c] : terms_) s += c;
    return s;
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
  }
  friend GroupRingElement operator+(GroupRingElement x, const GroupRingElement& y) { return x += y; }
  friend GroupRingElement operator-(GroupRingElement x, const GroupRingElement& y) { return x -= y; }

  friend bool operator==(const GroupRingElement& x, const GroupRingElement& y) { return x.terms_ == y.terms_; }

  // Pushes every support element through a group homomorphism.
  template <class Target, class TargetHash = std::hash<Target>, class Map>
  GroupRingElement<Target, TargetHash> map(Map&& phi) const {
    GroupRingElement<Target, TargetHash> out;
    for (const auto& [g, c] : terms_) out.add(phi(g), c);
    return out;
  }

  // Right multiplication by a single group element.
  template <class Multiply>
  GroupRingElement times(const Element& h, Multiply&& mul) const {
    GroupRingElement out;
    for (const auto& [g, c] : terms_) out.add(mul(g, h), c);
    return out;
  }

  template <class Multiply>
  GroupRingElement times(const GroupRingElement& y, Multiply&& mul) const {
    GroupRingElement out;
    for (const auto& [g, c] : terms_)
      for (const auto& [h, d] : y.terms_) out.add(mul(g, h), c * d);
    return out;
  }

 private:
  std::unordered_map<Element, std::int64_t, Hash> terms_;
};

}  // namespace lcslab
