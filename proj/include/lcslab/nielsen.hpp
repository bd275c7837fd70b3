#pragma once

// Nielsen-reduced bases of finitely generated subgroups of F2.
//
// The subgroup is represented by its folded Stallings graph. A breadth-first
// spanning tree from the base vertex gives every vertex a geodesic label
// p(v); each edge u -x-> v outside the tree contributes p(u) x p(v)^-1. With
// geodesic tree paths, no product of two basis elements (or their inverses)
// cancels half of either factor, which is exactly what the Nielsen conditions
// ask for.

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcslab/word.hpp"

namespace lcslab {

class StallingsGraph {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  explicit StallingsGraph(std::span<const ReducedWord> generators) {
    new_vertex();
    for (const auto& g : generators) {
      if (g.is_identity()) continue;
      std::uint32_t at = 0;
      const auto xs = g.letters();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::uint32_t to = (i + 1 == xs.size()) ? 0 : new_vertex();
        pending_.push_back({at, xs[i], to});
        at = to;
      }
    }
    fold();
    build_tree();
  }

  std::size_t vertex_count() const noexcept { return alive_count_; }
  std::uint32_t base() const { return find(0); }

  // Target of the x-edge leaving v, or kNone.
  std::uint32_t follow(std::uint32_t v, Letter x) const {
    const auto t = out_[find(v)][static_cast<std::uint8_t>(x)];
    return t == kNone ? kNone : find(t);
  }

  // A reduced word lies in the subgroup iff it reads a closed path at the base.
  bool contains(std::span<const Letter> w) const {
    std::uint32_t v = base();
    for (Letter x : w) {
      v = follow(v, x);
      if (v == kNone) return false;
    }
    return v == base();
  }
  bool contains(const ReducedWord& w) const { return contains(w.letters()); }

  struct Edge {
    std::uint32_t from;
    Letter label;  // positive letter
    std::uint32_t to;
  };

  // Edges outside the spanning tree, in the order their basis elements are listed.
  const std::vector<Edge>& cotree() const noexcept { return cotree_; }
  const ReducedWord& tree_path(std::uint32_t v) const { return path_.at(find(v)); }

  std::vector<ReducedWord> basis() const {
    std::vector<ReducedWord> out;
    for (const auto& e : cotree_) {
      WordBuilder b;
      b.append(tree_path(e.from).letters());
      b.push(e.label);
      b.append_inverse(tree_path(e.to).letters());
      out.push_back(std::move(b).finish());
    }
    return out;
  }

  // Index of the basis element crossed by the edge v -x->, with its sign, or
  // nullopt for a tree edge.
  std::optional<std::pair<std::size_t, int>> crossing(std::uint32_t v, Letter x) const {
    v = find(v);
    const Letter pos = make_letter(generator_of(x), 1);
    const std::uint32_t from = sign_of(x) > 0 ? v : follow(v, x);
    if (from == kNone) return std::nullopt;
    const auto idx = cotree_index_[from][static_cast<std::uint8_t>(pos) / 2];
    if (idx == kNone) return std::nullopt;
    return std::pair<std::size_t, int>{idx, sign_of(x)};
  }

 private:
  struct Pending {
    std::uint32_t from;
    Letter label;
    std::uint32_t to;
  };

  std::uint32_t new_vertex() {
    const auto v = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(v);
    out_.push_back({kNone, kNone, kNone, kNone});
    return v;
  }

  std::uint32_t find(std::uint32_t v) const {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }

  // Adds edge u -x-> v (and v -x^-1-> u); any clash with an existing edge of
  // the same label queues a merge of the two endpoints.
  void insert(std::uint32_t u, Letter x, std::uint32_t v) {
    u = find(u);
    v = find(v);
    auto& fwd = out_[u][static_cast<std::uint8_t>(x)];
    if (fwd != kNone && find(fwd) != v) merges_.push_back({find(fwd), v});
    if (fwd == kNone) fwd = v;
    auto& back = out_[v][static_cast<std::uint8_t>(inverse(x))];
    if (back != kNone && find(back) != u) merges_.push_back({find(back), u});
    if (back == kNone) back = u;
  }

  void fold() {
    for (const auto& p : pending_) insert(p.from, p.label, p.to);
    while (!merges_.empty()) {
      auto [u, v] = merges_.back();
      merges_.pop_back();
      u = find(u);
      v = find(v);
      if (u == v) continue;
      if (u > v) std::swap(u, v);  // keep the smaller id, so the base stays 0
      parent_[v] = u;
      const auto edges = out_[v];
      out_[v] = {kNone, kNone, kNone, kNone};
      for (Letter x : kAllLetters) {
        const auto t = edges[static_cast<std::uint8_t>(x)];
        if (t != kNone) insert(u, x, t);
      }
    }
    pending_.clear();
    // canonicalize stored targets
    for (std::uint32_t v = 0; v < out_.size(); ++v)
      if (find(v) == v)
        for (auto& t : out_[v])
          if (t != kNone) t = find(t);
  }

  void build_tree() {
    const std::uint32_t n = static_cast<std::uint32_t>(parent_.size());
    path_.assign(n, ReducedWord{});
    cotree_index_.assign(n, {kNone, kNone});
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::array<bool, 4>> tree_edge(n, {false, false, false, false});
    std::deque<std::uint32_t> queue{base()};
    seen[base()] = 1;
    std::vector<std::uint32_t> order;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (Letter x : kAllLetters) {
        const auto t = out_[v][static_cast<std::uint8_t>(x)];
        if (t == kNone || seen[t]) continue;
        seen[t] = 1;
        WordBuilder b;
        b.append(path_[v].letters());
        b.push(x);
        path_[t] = std::move(b).finish();
        tree_edge[v][static_cast<std::uint8_t>(x)] = true;
        tree_edge[t][static_cast<std::uint8_t>(inverse(x))] = true;
        queue.push_back(t);
      }
    }
    alive_count_ = order.size();
    for (auto v : order)
      for (Letter x : {Letter::a, Letter::b}) {
        const auto t = out_[v][static_cast<std::uint8_t>(x)];
        if (t == kNone || tree_edge[v][static_cast<std::uint8_t>(x)]) continue;
        cotree_index_[v][static_cast<std::uint8_t>(x) / 2] = static_cast<std::uint32_t>(cotree_.size());
        cotree_.push_back({v, x, t});
      }
  }

  mutable std::vector<std::uint32_t> parent_;
  std::vector<std::array<std::uint32_t, 4>> out_;
  std::vector<Pending> pending_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merges_;
  std::vector<ReducedWord> path_;
  std::vector<std::array<std::uint32_t, 2>> cotree_index_;
  std::vector<Edge> cotree_;
  std::size_t alive_count_ = 0;
};

// Free basis of the subgroup generated by gens satisfying the Nielsen
// conditions. Trivial and repeated generators disappear.
inline std::vector<ReducedWord> nielsen_reduce(std::span<const ReducedWord> gens) {
  return StallingsGraph(gens).basis();
}

inline std::vector<ReducedWord> nielsen_reduce(const std::vector<ReducedWord>& gens) {
  return nielsen_reduce(std::span<const ReducedWord>(gens));
}

struct NielsenViolation {
  int condition = 0;  // 1, 2 or 3
  std::vector<ReducedWord> factors;
  std::string to_string() const {
    std::string s = "condition (" + std::string(condition == 1 ? "i" : condition == 2 ? "ii" : "iii") + ") fails for";
    for (const auto& f : factors) s += " " + f.to_string();
    return s;
  }
};

// Checks, over all u, v, w in S and S^-1:
//   (i)   u != e
//   (ii)  l(uv) >= max(l(u), l(v))                  when uv != e
//   (iii) l(uvw) > l(u) - l(v) + l(w)               when uv != e and vw != e
inline std::optional<NielsenViolation> check_nielsen_conditions(std::span<const ReducedWord> basis) {
  std::vector<ReducedWord> s;
  for (const auto& g : basis) {
    if (g.is_identity()) return NielsenViolation{1, {g}};
    s.push_back(g);
    s.push_back(inverse(g));
  }
  for (const auto& u : s)
    for (const auto& v : s) {
      const auto uv = u * v;
      if (uv.is_identity()) continue;
      if (uv.length() < std::max(u.length(), v.length())) return NielsenViolation{2, {u, v}};
      for (const auto& w : s) {
        if ((v * w).is_identity()) continue;
        const auto uvw = uv * w;
        if (static_cast<long>(uvw.length()) <=
            static_cast<long>(u.length()) - static_cast<long>(v.length()) + static_cast<long>(w.length()))
          return NielsenViolation{3, {u, v, w}};
      }
    }
  return std::nullopt;
}

inline std::optional<NielsenViolation> check_nielsen_conditions(const std::vector<ReducedWord>& basis) {
  return check_nielsen_conditions(std::span<const ReducedWord>(basis));
}

struct BasisFactor {
  std::size_t index;
  int exponent;  // +1 or -1
};

// Writes w as a product of the graph's basis elements by reading it along
// the graph; nullopt if w is not in the subgroup.
inline std::optional<std::vector<BasisFactor>> express_in_basis(const StallingsGraph& g, const ReducedWord& w) {
  if (!g.contains(w)) return std::nullopt;
  std::vector<BasisFactor> out;
  std::uint32_t v = g.base();
  for (Letter x : w.letters()) {
    if (auto c = g.crossing(v, x)) out.push_back({c->first, c->second});
    v = g.follow(v, x);
  }
  return out;
}

inline ReducedWord evaluate_factors(std::span<const ReducedWord> basis, std::span<const BasisFactor> factors) {
  WordBuilder b;
  for (const auto& f : factors) {
    if (f.exponent > 0)
      b.append(basis[f.index].letters());
    else
      b.append_inverse(basis[f.index].letters());
  }
  return std::move(b).finish();
}

}  // namespace lcslab
