#pragma once

// Finite posets and the shape combinatorics built from them: cubes, chunks,
// the chunk category, slices, nerve chains, Grothendieck constructions and
// twisted morphism categories.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubecalc/error.hpp"
#include "cubecalc/matrix.hpp"

namespace cubecalc {

class FinPoset;
using PosetPtr = std::shared_ptr<const FinPoset>;
using Chain = std::vector<std::size_t>;

class FinPoset {
 public:
  // `leq` is the full relation, row-major. Element order must be a linear
  // extension of it.
  static PosetPtr make(std::vector<std::string> labels, std::vector<char> leq) {
    return std::shared_ptr<const FinPoset>(new FinPoset(std::move(labels), std::move(leq)));
  }

  // Reflexive-transitive closure of the generating pairs (i, j) meaning i <= j.
  static PosetPtr from_relations(std::vector<std::string> labels,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& gens) {
    const std::size_t n = labels.size();
    std::vector<char> leq(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
    for (auto [i, j] : gens) {
      detail::require(i < n && j < n, "relation index out of range");
      leq[i * n + j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq[k * n + j]) leq[i * n + j] = 1;
    return make(std::move(labels), std::move(leq));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) throw UsageError("no element labelled '" + label + "'");
    return *i;
  }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
  bool lt(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }

  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return up_[i]; }
  const std::vector<std::size_t>& lower_covers(std::size_t i) const { return down_[i]; }

  // Covering relations (i, j), i < j, sorted lexicographically.
  const std::vector<std::pair<std::size_t, std::size_t>>& hasse_edges() const { return edges_; }
  std::optional<std::size_t> edge_index(std::size_t i, std::size_t j) const {
    int e = edge_lookup_[i * size() + j];
    if (e < 0) return std::nullopt;
    return static_cast<std::size_t>(e);
  }

  // First upper cover of i lying below j, for i < j.
  std::size_t step_toward(std::size_t i, std::size_t j) const {
    for (auto c : up_[i])
      if (leq(c, j)) return c;
    throw UsageError("step_toward: elements not strictly comparable");
  }

  std::size_t relation_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) c += lt(i, j);
    return c;
  }

  std::optional<std::size_t> least() const {
    for (std::size_t i = 0; i < size(); ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < size() && ok; ++j) ok = leq(i, j);
      if (ok) return i;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> greatest() const {
    for (std::size_t i = size(); i-- > 0;) {
      bool ok = true;
      for (std::size_t j = 0; j < size() && ok; ++j) ok = leq(j, i);
      if (ok) return i;
    }
    return std::nullopt;
  }
  bool is_maximal(std::size_t i) const { return up_[i].empty(); }
  bool is_minimal(std::size_t i) const { return down_[i].empty(); }

  const std::vector<char>& relation() const { return leq_; }

  friend bool operator==(const FinPoset& a, const FinPoset& b) {
    return a.labels_ == b.labels_ && a.leq_ == b.leq_;
  }

 private:
  FinPoset(std::vector<std::string> labels, std::vector<char> leq)
      : labels_(std::move(labels)), leq_(std::move(leq)) {
    const std::size_t n = labels_.size();
    detail::require(leq_.size() == n * n, "order relation has wrong size");
    for (std::size_t i = 0; i < n; ++i) {
      detail::require(leq_[i * n + i], "order relation is not reflexive at " + labels_[i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && leq_[i * n + j] && leq_[j * n + i])
          throw UsageError("order relation is not antisymmetric: " + labels_[i] + ", " + labels_[j]);
        if (leq_[i * n + j] && j < i)
          throw UsageError("element order is not a linear extension: " + labels_[i] + " <= " + labels_[j]);
        if (leq_[i * n + j])
          for (std::size_t k = 0; k < n; ++k)
            if (leq_[j * n + k] && !leq_[i * n + k])
              throw UsageError("order relation is not transitive");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(labels_[i], i).second) throw UsageError("duplicate label '" + labels_[i] + "'");
    }
    up_.assign(n, {});
    down_.assign(n, {});
    edge_lookup_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!leq_[i * n + j]) continue;
        bool cover = true;
        for (std::size_t k = i + 1; k < j && cover; ++k)
          if (leq_[i * n + k] && leq_[k * n + j]) cover = false;
        if (!cover) continue;
        edge_lookup_[i * n + j] = static_cast<int>(edges_.size());
        edges_.emplace_back(i, j);
        up_[i].push_back(j);
        down_[j].push_back(i);
      }
  }

  std::vector<std::string> labels_;
  std::vector<char> leq_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> up_, down_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<int> edge_lookup_;
};

inline bool same_poset(const PosetPtr& a, const PosetPtr& b) { return a == b || *a == *b; }

/// Monotone map between finite posets.
struct PosetMap {
  PosetPtr source;
  PosetPtr target;
  std::vector<std::size_t> assignment;

  static PosetMap make(PosetPtr source, PosetPtr target, std::vector<std::size_t> assignment) {
    detail::require(assignment.size() == source->size(), "poset map assignment has wrong length");
    for (auto b : assignment) detail::require(b < target->size(), "poset map assigns out-of-range element");
    for (std::size_t a = 0; a < source->size(); ++a)
      for (auto c : source->upper_covers(a))
        if (!target->leq(assignment[a], assignment[c]))
          throw UsageError("poset map is not monotone on " + source->label(a) + " <= " + source->label(c));
    return PosetMap{std::move(source), std::move(target), std::move(assignment)};
  }

  std::size_t operator()(std::size_t a) const { return assignment[a]; }

  bool is_injective() const {
    std::vector<char> seen(target->size(), 0);
    for (auto b : assignment) {
      if (seen[b]) return false;
      seen[b] = 1;
    }
    return true;
  }
  // Injective and reflects the order.
  bool is_full_embedding() const {
    if (!is_injective()) return false;
    for (std::size_t a = 0; a < source->size(); ++a)
      for (std::size_t c = 0; c < source->size(); ++c)
        if (target->leq(assignment[a], assignment[c]) != source->leq(a, c)) return false;
    return true;
  }
  std::vector<char> image_mask() const {
    std::vector<char> m(target->size(), 0);
    for (auto b : assignment) m[b] = 1;
    return m;
  }
  bool is_identity() const {
    if (!same_poset(source, target)) return false;
    for (std::size_t a = 0; a < assignment.size(); ++a)
      if (assignment[a] != a) return false;
    return true;
  }
};

inline PosetMap identity_map(const PosetPtr& p) {
  std::vector<std::size_t> a(p->size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
  return PosetMap{p, p, std::move(a)};
}

// g after f
inline PosetMap compose(const PosetMap& g, const PosetMap& f) {
  detail::require(same_poset(f.target, g.source), "compose: maps are not composable");
  std::vector<std::size_t> a(f.assignment.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return PosetMap{f.source, g.target, std::move(a)};
}

inline PosetMap constant_map(const PosetPtr& source, const PosetPtr& target, std::size_t value) {
  detail::require(value < target->size(), "constant_map: value out of range");
  return PosetMap{source, target, std::vector<std::size_t>(source->size(), value)};
}

inline bool maps_equal(const PosetMap& f, const PosetMap& g) {
  return same_poset(f.source, g.source) && same_poset(f.target, g.target) && f.assignment == g.assignment;
}

// Image is down-closed (sieve), up-closed (cosieve) or convex, and the map is a full embedding.
inline bool is_sieve(const PosetMap& u) {
  if (!u.is_full_embedding()) return false;
  auto img = u.image_mask();
  const auto& t = *u.target;
  for (std::size_t b = 0; b < t.size(); ++b)
    if (img[b])
      for (std::size_t c = 0; c < t.size(); ++c)
        if (t.leq(c, b) && !img[c]) return false;
  return true;
}
inline bool is_cosieve(const PosetMap& u) {
  if (!u.is_full_embedding()) return false;
  auto img = u.image_mask();
  const auto& t = *u.target;
  for (std::size_t b = 0; b < t.size(); ++b)
    if (img[b])
      for (std::size_t c = 0; c < t.size(); ++c)
        if (t.leq(b, c) && !img[c]) return false;
  return true;
}
inline bool is_convex(const PosetMap& u) {
  if (!u.is_full_embedding()) return false;
  auto img = u.image_mask();
  const auto& t = *u.target;
  for (std::size_t b = 0; b < t.size(); ++b)
    for (std::size_t c = 0; c < t.size(); ++c)
      if (img[b] && img[c] && t.leq(b, c))
        for (std::size_t m = 0; m < t.size(); ++m)
          if (!img[m] && t.leq(b, m) && t.leq(m, c)) return false;
  return true;
}

/// A full subposet together with its inclusion.
struct SubPoset {
  PosetPtr poset;
  PosetMap inclusion;
};

inline SubPoset full_subposet(const PosetPtr& p, const std::vector<char>& keep) {
  detail::require(keep.size() == p->size(), "full_subposet: mask has wrong length");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < p->size(); ++i)
    if (keep[i]) idx.push_back(i);
  std::vector<std::string> labels;
  std::vector<char> leq(idx.size() * idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    labels.push_back(p->label(idx[a]));
    for (std::size_t b = 0; b < idx.size(); ++b) leq[a * idx.size() + b] = p->leq(idx[a], idx[b]);
  }
  auto sub = FinPoset::make(std::move(labels), std::move(leq));
  return {sub, PosetMap{sub, p, std::move(idx)}};
}

inline SubPoset full_subposet(const PosetPtr& p, const std::function<bool(std::size_t)>& pred) {
  std::vector<char> keep(p->size());
  for (std::size_t i = 0; i < p->size(); ++i) keep[i] = pred(i);
  return full_subposet(p, keep);
}

// Restriction of an endomap f of p to a full subposet it preserves.
inline PosetMap restrict_endomap(const PosetMap& f, const SubPoset& sub) {
  detail::require(same_poset(f.source, sub.inclusion.target) && same_poset(f.target, sub.inclusion.target),
                  "restrict_endomap: map is not an endomap of the ambient poset");
  std::vector<long> back(f.target->size(), -1);
  for (std::size_t a = 0; a < sub.poset->size(); ++a) back[sub.inclusion(a)] = static_cast<long>(a);
  std::vector<std::size_t> a(sub.poset->size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    long j = back[f(sub.inclusion(i))];
    if (j < 0) throw UsageError("restrict_endomap: map does not preserve the subposet");
    a[i] = static_cast<std::size_t>(j);
  }
  return PosetMap{sub.poset, sub.poset, std::move(a)};
}

// ---------------------------------------------------------------- builders

inline PosetPtr point() { return FinPoset::make({"*"}, {1}); }

inline bool is_point(const PosetPtr& p) { return p->size() == 1; }

// The chain 0 < 1 < ... < n.
inline PosetPtr chain_poset(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<char> leq((n + 1) * (n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = 0; j <= n; ++j) leq[i * (n + 1) + j] = i <= j;
  }
  return FinPoset::make(std::move(labels), std::move(leq));
}

inline PosetPtr discrete_poset(const std::vector<std::string>& labels) {
  std::vector<char> leq(labels.size() * labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) leq[i * labels.size() + i] = 1;
  return FinPoset::make(labels, std::move(leq));
}

inline constexpr int kCubeHardCap = 6;

// Character i of the label is coordinate i+1. The 0-cube is labelled "*".
inline std::string cube_label(int n, std::uint32_t mask) {
  if (n == 0) return "*";
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

inline std::optional<std::uint32_t> parse_cube_label(const std::string& s, int n) {
  if (n == 0) return s == "*" ? std::optional<std::uint32_t>(0) : std::nullopt;
  if (static_cast<int>(s.size()) != n) return std::nullopt;
  std::uint32_t m = 0;
  for (int i = 0; i < n; ++i) {
    if (s[static_cast<std::size_t>(i)] == '1') m |= 1u << i;
    else if (s[static_cast<std::size_t>(i)] != '0') return std::nullopt;
  }
  return m;
}

// Subsets of {1..n} in cardinality-then-binary order.
inline std::vector<std::uint32_t> cube_order(int n) {
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  return masks;
}

inline PosetPtr build_cube(int n, int cap = kCubeHardCap) {
  if (n < 0) throw UsageError("cube dimension must be non-negative");
  if (n > cap || n > kCubeHardCap)
    throw ResourceError("cube dimension " + std::to_string(n) + " exceeds cap " + std::to_string(std::min(cap, kCubeHardCap)));
  auto masks = cube_order(n);
  std::vector<std::string> labels;
  std::vector<char> leq(masks.size() * masks.size());
  for (std::size_t a = 0; a < masks.size(); ++a) {
    labels.push_back(cube_label(n, masks[a]));
    for (std::size_t b = 0; b < masks.size(); ++b) leq[a * masks.size() + b] = (masks[a] & ~masks[b]) == 0;
  }
  return FinPoset::make(std::move(labels), std::move(leq));
}

/// Cube dimension and vertex masks of a poset whose labels are cube labels
/// (a cube or any full subposet of one).
struct CubeCoords {
  int n = 0;
  std::vector<std::uint32_t> masks;
  std::optional<std::size_t> index_of(std::uint32_t mask) const {
    for (std::size_t i = 0; i < masks.size(); ++i)
      if (masks[i] == mask) return i;
    return std::nullopt;
  }
  std::size_t at(std::uint32_t mask) const {
    auto i = index_of(mask);
    if (!i) throw UsageError("vertex " + cube_label(n, mask) + " not in shape");
    return *i;
  }
};

inline std::optional<CubeCoords> cube_coords(const FinPoset& p) {
  if (p.size() == 0) return std::nullopt;
  int n = p.label(0) == "*" ? 0 : static_cast<int>(p.label(0).size());
  CubeCoords c{n, {}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto m = parse_cube_label(p.label(i), n);
    if (!m) return std::nullopt;
    c.masks.push_back(*m);
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.leq(i, j) != ((c.masks[i] & ~c.masks[j]) == 0)) return std::nullopt;
  return c;
}

inline CubeCoords require_cube_coords(const FinPoset& p) {
  auto c = cube_coords(p);
  if (!c) throw UsageError("shape is not a full subposet of a cube");
  return *c;
}

inline bool is_full_cube(const FinPoset& p) {
  auto c = cube_coords(p);
  return c && p.size() == (std::size_t{1} << c->n);
}

/// (n, k, l): subsets of {1..n} with k <= cardinality <= l.
struct ChunkSpec {
  int n = 0, k = 0, l = 0;

  void validate() const {
    if (n < 0 || k < 0 || k > l || l > n)
      throw UsageError("invalid chunk (" + std::to_string(n) + "," + std::to_string(k) + "," +
                       std::to_string(l) + "): need 0 <= k <= l <= n");
  }
  ChunkSpec dual() const { return {n, n - l, n - k}; }
  bool contains(const ChunkSpec& o) const { return n == o.n && k <= o.k && o.l <= l; }
  bool is_full() const { return k == 0 && l == n; }
  bool is_discrete() const { return k == l; }
  std::string to_string() const {
    return "(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(l) + ")";
  }
  friend bool operator==(const ChunkSpec&, const ChunkSpec&) = default;
};

inline SubPoset build_chunk(const ChunkSpec& s, int cap = kCubeHardCap) {
  s.validate();
  auto cube = build_cube(s.n, cap);
  auto c = require_cube_coords(*cube);
  return full_subposet(cube, [&](std::size_t i) {
    int d = std::popcount(c.masks[i]);
    return s.k <= d && d <= s.l;
  });
}

// Inclusion of the chunk `from` into the chunk `to`.
inline PosetMap chunk_inclusion(const ChunkSpec& from, const ChunkSpec& to) {
  from.validate();
  to.validate();
  if (!to.contains(from))
    throw UsageError("chunk " + from.to_string() + " is not nested in " + to.to_string());
  auto a = build_chunk(from).poset;
  auto b = build_chunk(to).poset;
  std::vector<std::size_t> idx(a->size());
  for (std::size_t i = 0; i < a->size(); ++i) idx[i] = b->index_of(a->label(i));
  return PosetMap{a, b, std::move(idx)};
}

// j_[x,y]: the d-cube of subsets between x and y, d = |y - x|, into the n-cube.
inline PosetMap interval_inclusion(int n, std::uint32_t x, std::uint32_t y) {
  detail::require((x & ~y) == 0, "interval_inclusion: x is not a subset of y");
  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if ((y >> i & 1u) && !(x >> i & 1u)) free.push_back(i);
  int d = static_cast<int>(free.size());
  auto small = build_cube(d);
  auto big = build_cube(n);
  auto sc = require_cube_coords(*small);
  std::vector<std::size_t> idx(small->size());
  for (std::size_t v = 0; v < small->size(); ++v) {
    std::uint32_t m = x;
    for (int j = 0; j < d; ++j)
      if (sc.masks[v] >> j & 1u) m |= 1u << free[static_cast<std::size_t>(j)];
    idx[v] = big->index_of(cube_label(n, m));
  }
  return PosetMap{small, big, std::move(idx)};
}

// The involutive automorphism of the n-cube exchanging coordinates i and j (1-based).
inline PosetMap swap_symmetry(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) throw UsageError("swap_symmetry: coordinate out of range");
  auto cube = build_cube(n);
  auto c = require_cube_coords(*cube);
  std::vector<std::size_t> idx(cube->size());
  for (std::size_t v = 0; v < cube->size(); ++v) {
    std::uint32_t m = c.masks[v];
    std::uint32_t bi = m >> (i - 1) & 1u, bj = m >> (j - 1) & 1u;
    m &= ~((1u << (i - 1)) | (1u << (j - 1)));
    m |= bi << (j - 1) | bj << (i - 1);
    idx[v] = c.at(m);
  }
  return PosetMap{cube, cube, std::move(idx)};
}

/// The chunk category: objects (k,l), 0 <= k <= l <= n, with
/// (k',l') <= (k,l) iff k <= k' <= l' <= l.
struct ChunkCategory {
  PosetPtr poset;
  std::vector<std::pair<int, int>> objects;
  PosetMap involution;  // (k,l) -> (n-l, n-k)
  std::size_t index_of(int k, int l) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == std::make_pair(k, l)) return i;
    throw UsageError("no chunk (" + std::to_string(k) + "," + std::to_string(l) + ")");
  }
};

inline ChunkCategory chunk_category(int n) {
  detail::require(n >= 0, "chunk_category: n must be non-negative");
  std::vector<std::pair<int, int>> objs;
  // widest first: (k,l) <= (k',l') forces l'-k' >= l-k ... listed narrowest first
  for (int w = 0; w <= n; ++w)
    for (int k = 0; k + w <= n; ++k) objs.emplace_back(k, k + w);
  std::vector<std::string> labels;
  const std::size_t m = objs.size();
  std::vector<char> leq(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back("(" + std::to_string(objs[a].first) + "," + std::to_string(objs[a].second) + ")");
    for (std::size_t b = 0; b < m; ++b) {
      auto [k1, l1] = objs[a];
      auto [k, l] = objs[b];
      leq[a * m + b] = k <= k1 && k1 <= l1 && l1 <= l;
    }
  }
  auto p = FinPoset::make(std::move(labels), std::move(leq));
  std::vector<std::size_t> inv(m);
  for (std::size_t a = 0; a < m; ++a) {
    auto target = std::make_pair(n - objs[a].second, n - objs[a].first);
    inv[a] = static_cast<std::size_t>(std::find(objs.begin(), objs.end(), target) - objs.begin());
  }
  PosetMap involution{p, p, std::move(inv)};
  return {p, std::move(objs), std::move(involution)};
}

// Element i of p corresponds to element size-1-i of the opposite.
inline std::size_t op_index(const FinPoset& p, std::size_t i) { return p.size() - 1 - i; }

inline PosetPtr opposite(const PosetPtr& p) {
  const std::size_t n = p->size();
  std::vector<std::string> labels(n);
  std::vector<char> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[n - 1 - i] = p->label(i);
    for (std::size_t j = 0; j < n; ++j) leq[(n - 1 - i) * n + (n - 1 - j)] = p->leq(j, i);
  }
  return FinPoset::make(std::move(labels), std::move(leq));
}

// u^op : A^op -> B^op
inline PosetMap opposite(const PosetMap& u) {
  auto a = opposite(u.source);
  auto b = opposite(u.target);
  std::vector<std::size_t> idx(a->size());
  for (std::size_t i = 0; i < a->size(); ++i)
    idx[i] = op_index(*u.target, u(op_index(*u.source, i)));
  return PosetMap{a, b, std::move(idx)};
}

struct ProductPoset {
  PosetPtr poset;
  PosetMap first, second;
  std::size_t right_size;
  std::size_t index(std::size_t a, std::size_t b) const { return a * right_size + b; }
};

inline ProductPoset product(const PosetPtr& p, const PosetPtr& q) {
  const std::size_t n = p->size() * q->size();
  std::vector<std::string> labels;
  std::vector<char> leq(n * n);
  std::vector<std::size_t> pr1, pr2;
  for (std::size_t a = 0; a < p->size(); ++a)
    for (std::size_t b = 0; b < q->size(); ++b) {
      labels.push_back("(" + p->label(a) + "," + q->label(b) + ")");
      pr1.push_back(a);
      pr2.push_back(b);
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) leq[x * n + y] = p->leq(pr1[x], pr1[y]) && q->leq(pr2[x], pr2[y]);
  auto pq = FinPoset::make(std::move(labels), std::move(leq));
  return {pq, PosetMap{pq, p, std::move(pr1)}, PosetMap{pq, q, std::move(pr2)}, q->size()};
}

// P with a new greatest element appended.
inline SubPoset cocone(const PosetPtr& p, const std::string& top_label = "top") {
  const std::size_t n = p->size() + 1;
  std::vector<std::string> labels = p->labels();
  labels.push_back(top_label);
  std::vector<char> leq(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      leq[i * n + j] = j == n - 1 || (i < n - 1 && j < n - 1 && p->leq(i, j));
  auto c = FinPoset::make(std::move(labels), std::move(leq));
  std::vector<std::size_t> idx(p->size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return {c, PosetMap{p, c, std::move(idx)}};
}

// (u/b) = {a : u(a) <= b}
inline SubPoset slice_under(const PosetMap& u, std::size_t b) {
  return full_subposet(u.source, [&](std::size_t a) { return u.target->leq(u(a), b); });
}
// (b/u) = {a : b <= u(a)}
inline SubPoset slice_over(const PosetMap& u, std::size_t b) {
  return full_subposet(u.source, [&](std::size_t a) { return u.target->leq(b, u(a)); });
}

// Strictly increasing chains grouped by number of steps (index 0: single elements).
inline std::vector<std::vector<Chain>> strict_chains(const FinPoset& p, std::size_t max_len = SIZE_MAX) {
  std::vector<std::vector<Chain>> out;
  Chain cur;
  std::function<void(std::size_t)> extend = [&](std::size_t last) {
    std::size_t len = cur.size() - 1;
    if (out.size() <= len) out.resize(len + 1);
    out[len].push_back(cur);
    if (len >= max_len) return;
    for (std::size_t j = last + 1; j < p.size(); ++j)
      if (p.leq(last, j)) {
        cur.push_back(j);
        extend(j);
        cur.pop_back();
      }
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    cur = {i};
    extend(i);
  }
  return out;
}

inline std::size_t chain_count(const FinPoset& p) {
  std::size_t c = 0;
  for (auto& g : strict_chains(p)) c += g.size();
  return c;
}

inline long euler_characteristic(const FinPoset& p) {
  long chi = 0;
  auto chains = strict_chains(p);
  for (std::size_t len = 0; len < chains.size(); ++len)
    chi += (len % 2 == 0 ? 1 : -1) * static_cast<long>(chains[len].size());
  return chi;
}

// Number of Hasse paths between every comparable pair is one.
inline bool has_unique_hasse_paths(const FinPoset& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> paths(n, 0);
    paths[i] = 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!p.leq(i, j)) continue;
      for (auto c : p.lower_covers(j)) paths[j] += paths[c];
      if (paths[j] > 1) return false;
    }
  }
  return true;
}

/// Grothendieck construction of a diagram of posets over a poset.
struct Grothendieck {
  PosetPtr poset;
  PosetMap projection;
  std::vector<PosetMap> fiber_inclusions;  // one per base element
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t index_of(std::size_t c, std::size_t x) const {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i] == std::make_pair(c, x)) return i;
    throw UsageError("grothendieck: no such element");
  }
};

// `transition(c, c2)` must return the map F(c) -> F(c2) for every c < c2.
inline Grothendieck grothendieck(const PosetPtr& base, const std::vector<PosetPtr>& fibers,
                                 const std::function<PosetMap(std::size_t, std::size_t)>& transition) {
  const std::size_t nb = base->size();
  detail::require(fibers.size() == nb, "grothendieck: one fiber per base element required");
  std::map<std::pair<std::size_t, std::size_t>, PosetMap> t;
  for (std::size_t c = 0; c < nb; ++c)
    for (std::size_t d = 0; d < nb; ++d)
      if (base->lt(c, d)) {
        PosetMap f = transition(c, d);
        if (!same_poset(f.source, fibers[c]) || !same_poset(f.target, fibers[d]))
          throw UsageError("grothendieck: transition " + base->label(c) + "->" + base->label(d) +
                           " has wrong endpoints");
        t.emplace(std::make_pair(c, d), std::move(f));
      }
  auto apply = [&](std::size_t c, std::size_t d, std::size_t x) {
    return c == d ? x : t.at({c, d})(x);
  };
  for (auto& [cd, f] : t)
    for (std::size_t e = 0; e < nb; ++e)
      if (base->lt(cd.second, e))
        for (std::size_t x = 0; x < fibers[cd.first]->size(); ++x)
          if (apply(cd.second, e, f(x)) != apply(cd.first, e, x))
            throw UsageError("grothendieck: transition maps are not functorial at " + base->label(cd.first) +
                             "->" + base->label(cd.second) + "->" + base->label(e));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < nb; ++c)
    for (std::size_t x = 0; x < fibers[c]->size(); ++x) {
      pairs.emplace_back(c, x);
      labels.push_back("(" + base->label(c) + "," + fibers[c]->label(x) + ")");
    }
  const std::size_t n = pairs.size();
  std::vector<char> leq(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto [c, x] = pairs[i];
      auto [d, y] = pairs[j];
      leq[i * n + j] = base->leq(c, d) && fibers[d]->leq(apply(c, d, x), y);
    }
  auto g = FinPoset::make(std::move(labels), std::move(leq));
  std::vector<std::size_t> proj(n);
  for (std::size_t i = 0; i < n; ++i) proj[i] = pairs[i].first;
  std::vector<PosetMap> incl;
  std::size_t offset = 0;
  for (std::size_t c = 0; c < nb; ++c) {
    std::vector<std::size_t> idx(fibers[c]->size());
    for (std::size_t x = 0; x < idx.size(); ++x) idx[x] = offset + x;
    offset += idx.size();
    incl.push_back(PosetMap{fibers[c], g, std::move(idx)});
  }
  return {g, PosetMap{g, base, std::move(proj)}, std::move(incl), std::move(pairs)};
}

// Least element of the fiber over d lying above (c, x), for c <= d.
inline std::optional<std::size_t> opcartesian_lift(const Grothendieck& g, std::size_t elem, std::size_t d) {
  const auto& p = *g.poset;
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (g.pairs[j].first != d || !p.leq(elem, j)) continue;
    if (!best || p.leq(j, *best)) best = j;
  }
  if (!best) return std::nullopt;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (g.pairs[j].first == d && p.leq(elem, j) && !p.leq(*best, j)) return std::nullopt;
  return best;
}

/// Twisted morphism category: objects x <= y, (x,y) <= (x',y') iff x' <= x and y <= y'.
struct Twisted {
  PosetPtr poset;
  PosetMap source;  // to the opposite of the base
  PosetMap target;  // to the base
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

inline Twisted twisted_category(const PosetPtr& p) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < p->size(); ++x)
    for (std::size_t y = x; y < p->size(); ++y)
      if (p->leq(x, y)) pairs.emplace_back(x, y);
  // position gap y - x grows strictly along the order
  std::stable_sort(pairs.begin(), pairs.end(), [](auto a, auto b) {
    return a.second - a.first < b.second - b.first;
  });
  const std::size_t n = pairs.size();
  std::vector<std::string> labels;
  std::vector<char> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("(" + p->label(pairs[i].first) + "," + p->label(pairs[i].second) + ")");
    for (std::size_t j = 0; j < n; ++j)
      leq[i * n + j] = p->leq(pairs[j].first, pairs[i].first) && p->leq(pairs[i].second, pairs[j].second);
  }
  auto tw = FinPoset::make(std::move(labels), std::move(leq));
  auto pop = opposite(p);
  std::vector<std::size_t> s(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = op_index(*p, pairs[i].first);
    t[i] = pairs[i].second;
  }
  return {tw, PosetMap{tw, pop, std::move(s)}, PosetMap{tw, p, std::move(t)}, std::move(pairs)};
}

// ------------------------------------------------------------- finality

template <Field F>
std::vector<std::size_t> reduced_nerve_betti(const FinPoset& p);

struct FinalityCertificate {
  enum class Verdict { Final, NotFinal, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::string witness;
};

inline std::string to_string(FinalityCertificate::Verdict v) {
  switch (v) {
    case FinalityCertificate::Verdict::Final: return "Final";
    case FinalityCertificate::Verdict::NotFinal: return "NotFinal";
    default: return "Unknown";
  }
}

// Reduced homology of the order complex, via the normalized chain complex.
template <Field F>
std::vector<std::size_t> reduced_nerve_betti(const FinPoset& p) {
  auto chains = strict_chains(p);
  // augmented: degree -1 has one generator
  std::vector<std::size_t> counts{1};
  for (auto& g : chains) counts.push_back(g.size());
  auto index_in = [&](std::size_t len, const Chain& c) {
    const auto& g = chains[len];
    return static_cast<std::size_t>(std::lower_bound(g.begin(), g.end(), c) - g.begin());
  };
  for (auto& g : chains) std::sort(g.begin(), g.end());
  // boundary from chains of length len (counts[len+1]) to length len-1 (counts[len])
  std::vector<std::size_t> ranks(counts.size() + 1, 0);
  for (std::size_t len = 0; len < chains.size(); ++len) {
    Matrix<F> d(counts[len], counts[len + 1]);
    for (std::size_t j = 0; j < chains[len].size(); ++j) {
      const auto& c = chains[len][j];
      if (len == 0) {
        d(0, j) = F::from_int(1);
        continue;
      }
      for (std::size_t i = 0; i <= len; ++i) {
        Chain face = c;
        face.erase(face.begin() + static_cast<long>(i));
        d(index_in(len - 1, face), j) += F::from_int(i % 2 == 0 ? 1 : -1);
      }
    }
    ranks[len + 1] = rank(d);
  }
  std::vector<std::size_t> betti(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) betti[k] = counts[k] - ranks[k] - ranks[k + 1];
  return betti;  // betti[k] is reduced homology in degree k-1
}

inline FinalityCertificate finality_certificate(const PosetMap& u) {
  const auto& b = *u.target;
  bool all_least = true;
  std::string unresolved;
  for (std::size_t x = 0; x < b.size(); ++x) {
    auto s = slice_over(u, x);
    if (s.poset->size() == 0)
      return {FinalityCertificate::Verdict::NotFinal, "slice under " + b.label(x) + " is empty"};
    if (s.poset->least()) continue;
    all_least = false;
    auto betti = reduced_nerve_betti<DefaultField>(*s.poset);
    for (std::size_t k = 0; k < betti.size(); ++k)
      if (betti[k] != 0)
        return {FinalityCertificate::Verdict::NotFinal,
                "slice under " + b.label(x) + " has reduced homology in degree " + std::to_string(static_cast<long>(k) - 1)};
    if (unresolved.empty()) unresolved = "slice under " + b.label(x) + " is acyclic without a least element";
  }
  if (all_least) return {FinalityCertificate::Verdict::Final, "every slice has a least element"};
  return {FinalityCertificate::Verdict::Unknown, unresolved};
}

}  // namespace cubecalc
