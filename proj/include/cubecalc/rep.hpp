#pragma once

// Representations of finite posets: a vector space per element and a matrix
// per covering relation, with all parallel composites equal.

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cubecalc/matrix.hpp"
#include "cubecalc/poset.hpp"

namespace cubecalc {

template <Field F>
class Representation {
 public:
  Representation() : Representation(zero(point())) {}

  // Maps are given per Hasse edge, in the order of shape->hasse_edges().
  static Representation make(PosetPtr shape, std::vector<std::size_t> dims, std::vector<Matrix<F>> edge_maps) {
    Representation r = unchecked(std::move(shape), std::move(dims), std::move(edge_maps));
    if (auto err = r.check()) throw UsageError("invalid representation: " + *err);
    return r;
  }

  static Representation unchecked(PosetPtr shape, std::vector<std::size_t> dims, std::vector<Matrix<F>> edge_maps) {
    detail::require(dims.size() == shape->size(), "representation needs one dimension per element");
    detail::require(edge_maps.size() == shape->hasse_edges().size(), "representation needs one map per Hasse edge");
    auto d = std::make_shared<Data>();
    d->shape = std::move(shape);
    d->dims = std::move(dims);
    d->edges = std::move(edge_maps);
    return Representation(std::move(d));
  }

  // Maps given for arbitrary comparable pairs through a callback; only covers are queried.
  template <class Fn>
  static Representation from_callback(PosetPtr shape, std::vector<std::size_t> dims, Fn&& map, bool checked = true) {
    std::vector<Matrix<F>> e;
    for (auto [i, j] : shape->hasse_edges()) e.push_back(map(i, j));
    return checked ? make(std::move(shape), std::move(dims), std::move(e))
                   : unchecked(std::move(shape), std::move(dims), std::move(e));
  }

  static Representation zero(PosetPtr shape) {
    std::vector<std::size_t> dims(shape->size(), 0);
    std::vector<Matrix<F>> e(shape->hasse_edges().size());
    return unchecked(std::move(shape), std::move(dims), std::move(e));
  }

  const PosetPtr& shape() const { return d_->shape; }
  std::size_t dim(std::size_t v) const { return d_->dims[v]; }
  const std::vector<std::size_t>& dims() const { return d_->dims; }
  std::size_t total_dim() const {
    std::size_t t = 0;
    for (auto x : d_->dims) t += x;
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }

  const Matrix<F>& edge_map(std::size_t e) const { return d_->edges[e]; }
  const std::vector<Matrix<F>>& edge_maps() const { return d_->edges; }

  // Structure map for i <= j.
  Matrix<F> map(std::size_t i, std::size_t j) const {
    const auto& p = *d_->shape;
    if (i == j) return Matrix<F>::identity(dim(i));
    if (!p.leq(i, j)) throw UsageError("map: " + p.label(i) + " is not below " + p.label(j));
    std::size_t c = p.step_toward(i, j);
    Matrix<F> m = d_->edges[*p.edge_index(i, c)];
    while (c != j) {
      std::size_t n = p.step_toward(c, j);
      m = d_->edges[*p.edge_index(c, n)] * m;
      c = n;
    }
    return m;
  }

  std::optional<std::string> check() const {
    const auto& p = *d_->shape;
    const auto& edges = p.hasse_edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [i, j] = edges[e];
      const auto& m = d_->edges[e];
      if (m.rows() != dim(j) || m.cols() != dim(i))
        return "map " + p.label(i) + "->" + p.label(j) + " has shape " + m.shape() + ", expected " +
               std::to_string(dim(j)) + "x" + std::to_string(dim(i));
    }
    // all Hasse paths from i agree: check each cover of j against the first one
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::optional<Matrix<F>>> from(n);
      from[i] = Matrix<F>::identity(dim(i));
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!p.leq(i, j)) continue;
        for (auto c : p.lower_covers(j)) {
          if (!p.leq(i, c)) continue;
          Matrix<F> via = d_->edges[*p.edge_index(c, j)] * *from[c];
          if (!from[j]) from[j] = std::move(via);
          else if (!(*from[j] == via))
            return "paths from " + p.label(i) + " to " + p.label(j) + " do not commute";
        }
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    if (a.d_ == b.d_) return true;
    return same_poset(a.shape(), b.shape()) && a.dims() == b.dims() && a.edge_maps() == b.edge_maps();
  }

 private:
  struct Data {
    PosetPtr shape;
    std::vector<std::size_t> dims;
    std::vector<Matrix<F>> edges;
  };
  explicit Representation(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Natural transformation between representations of the same shape.
template <Field F>
struct RepMap {
  Representation<F> source;
  Representation<F> target;
  std::vector<Matrix<F>> components;

  static RepMap make(Representation<F> s, Representation<F> t, std::vector<Matrix<F>> c) {
    RepMap m{std::move(s), std::move(t), std::move(c)};
    if (auto err = m.check()) throw UsageError("invalid representation map: " + *err);
    return m;
  }

  std::optional<std::string> check() const {
    if (!same_poset(source.shape(), target.shape())) return std::string("shape mismatch");
    const auto& p = *source.shape();
    if (components.size() != p.size()) return std::string("wrong number of components");
    for (std::size_t v = 0; v < p.size(); ++v)
      if (components[v].rows() != target.dim(v) || components[v].cols() != source.dim(v))
        return "component at " + p.label(v) + " has wrong shape";
    const auto& edges = p.hasse_edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [i, j] = edges[e];
      if (!(target.edge_map(e) * components[i] == components[j] * source.edge_map(e)))
        return "not natural on " + p.label(i) + "->" + p.label(j);
    }
    return std::nullopt;
  }

  bool is_iso() const {
    for (const auto& c : components)
      if (!is_invertible(c)) return false;
    return true;
  }
};

template <Field F>
RepMap<F> identity_rep_map(const Representation<F>& r) {
  std::vector<Matrix<F>> c;
  for (std::size_t v = 0; v < r.shape()->size(); ++v) c.push_back(Matrix<F>::identity(r.dim(v)));
  return {r, r, std::move(c)};
}

template <Field F>
RepMap<F> zero_rep_map(const Representation<F>& s, const Representation<F>& t) {
  std::vector<Matrix<F>> c;
  for (std::size_t v = 0; v < s.shape()->size(); ++v) c.push_back(Matrix<F>::zero(t.dim(v), s.dim(v)));
  return {s, t, std::move(c)};
}

// g after f
template <Field F>
RepMap<F> compose(const RepMap<F>& g, const RepMap<F>& f) {
  std::vector<Matrix<F>> c;
  for (std::size_t v = 0; v < f.components.size(); ++v) c.push_back(g.components[v] * f.components[v]);
  return {f.source, g.target, std::move(c)};
}

// ------------------------------------------------------------ hom spaces

template <Field F>
std::vector<RepMap<F>> hom_basis(const Representation<F>& m, const Representation<F>& n) {
  if (!same_poset(m.shape(), n.shape())) throw UsageError("hom_basis: representations have different shapes");
  const auto& p = *m.shape();
  std::vector<std::size_t> offset(p.size() + 1, 0);
  for (std::size_t v = 0; v < p.size(); ++v) offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
  const std::size_t unknowns = offset[p.size()];
  std::size_t eqs = 0;
  for (auto [v, w] : p.hasse_edges()) eqs += n.dim(w) * m.dim(v);
  Matrix<F> sys(eqs, unknowns);
  std::size_t row = 0;
  const auto& edges = p.hasse_edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [v, w] = edges[e];
    const auto& nm = n.edge_map(e);  // n_w x n_v
    const auto& mm = m.edge_map(e);  // m_w x m_v
    // (nm * phi_v - phi_w * mm)[r, c] = 0
    for (std::size_t r = 0; r < n.dim(w); ++r)
      for (std::size_t c = 0; c < m.dim(v); ++c, ++row) {
        for (std::size_t s = 0; s < n.dim(v); ++s)
          if (!nm(r, s).is_zero()) sys(row, offset[v] + s * m.dim(v) + c) += nm(r, s);
        for (std::size_t t = 0; t < m.dim(w); ++t)
          if (!mm(t, c).is_zero()) sys(row, offset[w] + r * m.dim(w) + t) -= mm(t, c);
      }
  }
  std::vector<RepMap<F>> out;
  for (const auto& k : kernel_basis(sys)) {
    std::vector<Matrix<F>> comps;
    for (std::size_t v = 0; v < p.size(); ++v) {
      Matrix<F> c(n.dim(v), m.dim(v));
      for (std::size_t r = 0; r < n.dim(v); ++r)
        for (std::size_t s = 0; s < m.dim(v); ++s) c(r, s) = k[offset[v] + r * m.dim(v) + s];
      comps.push_back(std::move(c));
    }
    out.push_back({m, n, std::move(comps)});
  }
  return out;
}

template <Field F>
RepMap<F> random_combination(const Representation<F>& m, const Representation<F>& n,
                             const std::vector<RepMap<F>>& basis, std::mt19937_64& rng) {
  RepMap<F> r = zero_rep_map(m, n);
  for (const auto& b : basis) {
    F s = F::random(rng);
    if (s.is_zero()) continue;
    for (std::size_t v = 0; v < r.components.size(); ++v) r.components[v] = r.components[v] + b.components[v].scaled(s);
  }
  return r;
}

enum class IsoStatus { Found, NotIsomorphic, NoIsoFound };

inline std::string to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::Found: return "Found";
    case IsoStatus::NotIsomorphic: return "NotIsomorphic";
    default: return "NoIsoFound";
  }
}

template <Field F>
struct IsoResult {
  IsoStatus status = IsoStatus::NoIsoFound;
  std::optional<RepMap<F>> map;
  std::size_t attempts = 0;
  explicit operator bool() const { return status == IsoStatus::Found; }
};

// Above this many elements a finite hom space is only sampled.
inline constexpr std::size_t kExhaustiveHomLimit = std::size_t{1} << 14;
inline constexpr std::size_t kSmallFieldTrials = 1024;

// Randomized: identity first when m == n, then random elements of Hom(m, n).
// Over a finite field whose hom space has at most kExhaustiveHomLimit
// elements, a failed random search is followed by full enumeration; over
// other fields with fewer than 64 elements, by kSmallFieldTrials samples.
template <Field F>
IsoResult<F> find_isomorphism(const Representation<F>& m, const Representation<F>& n, std::size_t trials = 8,
                              std::uint64_t seed = 1) {
  if (!same_poset(m.shape(), n.shape())) throw UsageError("find_isomorphism: representations have different shapes");
  if (m.dims() != n.dims()) return {IsoStatus::NotIsomorphic, std::nullopt, 0};
  if (m == n) return {IsoStatus::Found, identity_rep_map(m), 1};
  auto basis = hom_basis(m, n);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto f = random_combination(m, n, basis, rng);
    if (f.is_iso() && !f.check()) return {IsoStatus::Found, std::move(f), t + 1};
  }
  const std::size_t q = F::characteristic();
  std::size_t total = 1;
  for (std::size_t i = 0; i < basis.size() && q != 0 && total <= kExhaustiveHomLimit; ++i) total *= q;
  if (q == 0) return {IsoStatus::NoIsoFound, std::nullopt, trials};
  if (total > kExhaustiveHomLimit) {
    // invertible maps are sparse over tiny fields; sample much longer
    const std::size_t extra = q < 64 ? kSmallFieldTrials : 0;
    for (std::size_t t = 0; t < extra; ++t) {
      auto f = random_combination(m, n, basis, rng);
      if (f.is_iso() && !f.check()) return {IsoStatus::Found, std::move(f), trials + t + 1};
    }
    return {IsoStatus::NoIsoFound, std::nullopt, trials + extra};
  }
  for (std::size_t code = 0; code < total; ++code) {
    RepMap<F> f = zero_rep_map(m, n);
    std::size_t c = code;
    for (const auto& b : basis) {
      auto s = F::from_int(static_cast<std::int64_t>(c % q));
      c /= q;
      if (s.is_zero()) continue;
      for (std::size_t v = 0; v < f.components.size(); ++v) f.components[v] = f.components[v] + b.components[v].scaled(s);
    }
    if (f.is_iso() && !f.check()) return {IsoStatus::Found, std::move(f), trials + code + 1};
  }
  return {IsoStatus::NoIsoFound, std::nullopt, trials + total};
}

// --------------------------------------------------------------- builders

template <Field F>
Representation<F> indicator_rep(const PosetPtr& p, const std::vector<char>& support) {
  std::vector<std::size_t> dims(p->size());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = support[v] ? 1 : 0;
  return Representation<F>::from_callback(p, dims, [&](std::size_t i, std::size_t j) {
    Matrix<F> m(dims[j], dims[i]);
    if (dims[i] && dims[j]) m(0, 0) = F::from_int(1);
    return m;
  }, false);
}

// Value k at x, zero elsewhere.
template <Field F>
Representation<F> simple_rep(const PosetPtr& p, std::size_t x) {
  std::vector<char> s(p->size(), 0);
  s[x] = 1;
  return indicator_rep<F>(p, s);
}

// k on the up-set of x with identities.
template <Field F>
Representation<F> projective_rep(const PosetPtr& p, std::size_t x) {
  std::vector<char> s(p->size());
  for (std::size_t v = 0; v < s.size(); ++v) s[v] = p->leq(x, v);
  return indicator_rep<F>(p, s);
}

// k on the down-set of x with identities.
template <Field F>
Representation<F> injective_rep(const PosetPtr& p, std::size_t x) {
  std::vector<char> s(p->size());
  for (std::size_t v = 0; v < s.size(); ++v) s[v] = p->leq(v, x);
  return indicator_rep<F>(p, s);
}

template <Field F>
Representation<F> constant_rep(const PosetPtr& p, std::size_t d = 1) {
  std::vector<std::size_t> dims(p->size(), d);
  return Representation<F>::from_callback(p, dims, [&](std::size_t, std::size_t) { return Matrix<F>::identity(d); }, false);
}

template <Field F>
Representation<F> direct_sum(const Representation<F>& a, const Representation<F>& b) {
  detail::require(same_poset(a.shape(), b.shape()), "direct_sum: shapes differ");
  std::vector<std::size_t> dims(a.dims().size());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = a.dim(v) + b.dim(v);
  std::vector<Matrix<F>> e;
  for (std::size_t i = 0; i < a.edge_maps().size(); ++i)
    e.push_back(Matrix<F>::direct_sum(a.edge_map(i), b.edge_map(i)));
  return Representation<F>::unchecked(a.shape(), std::move(dims), std::move(e));
}

// Pullback along u: (u^* r)(a) = r(u(a)).
template <Field F>
Representation<F> restrict_rep(const PosetMap& u, const Representation<F>& r) {
  if (!same_poset(u.target, r.shape())) throw UsageError("restrict: representation is not over the map's target");
  std::vector<std::size_t> dims(u.source->size());
  for (std::size_t a = 0; a < dims.size(); ++a) dims[a] = r.dim(u(a));
  return Representation<F>::from_callback(u.source, dims, [&](std::size_t a, std::size_t b) { return r.map(u(a), u(b)); }, false);
}

// Linear dual, a representation of the opposite poset.
template <Field F>
Representation<F> dual_rep(const Representation<F>& r, const PosetPtr& op) {
  const auto& p = *r.shape();
  std::vector<std::size_t> dims(p.size());
  for (std::size_t v = 0; v < p.size(); ++v) dims[op_index(p, v)] = r.dim(v);
  return Representation<F>::from_callback(op, dims, [&](std::size_t i, std::size_t j) {
    // i <= j in op means op_index(j) <= op_index(i) in p
    return r.map(op_index(p, j), op_index(p, i)).transpose();
  }, false);
}

template <Field F>
Representation<F> dual_rep(const Representation<F>& r) {
  return dual_rep(r, opposite(r.shape()));
}

// Transport of structure along invertible g_v: m'(v,w) = g_w m(v,w) g_v^{-1}.
template <Field F>
Representation<F> change_basis(const Representation<F>& r, const std::vector<Matrix<F>>& g) {
  const auto& edges = r.shape()->hasse_edges();
  std::vector<Matrix<F>> e;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto inv = inverse(g[edges[k].first]);
    detail::require(inv.has_value(), "change_basis: component is not invertible");
    e.push_back(g[edges[k].second] * r.edge_map(k) * *inv);
  }
  return Representation<F>::unchecked(r.shape(), r.dims(), std::move(e));
}

template <Field F>
Matrix<F> random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    auto m = Matrix<F>::random(n, n, rng);
    if (is_invertible(m)) return m;
  }
}

// Image of a random map from a sum of projectives to a sum of injectives.
// Dimensions are bounded by the number of summands.
template <Field F>
Representation<F> random_rep(const PosetPtr& p, std::size_t max_summands, std::mt19937_64& rng) {
  if (p->size() == 0 || max_summands == 0) return Representation<F>::zero(p);
  std::uniform_int_distribution<std::size_t> cnt(1, max_summands), pick(0, p->size() - 1);
  std::size_t r = cnt(rng), s = cnt(rng);
  std::vector<std::size_t> from(r), to(s);
  for (auto& x : from) x = pick(rng);
  // each target sits above some source, so the image is never forced to vanish
  for (std::size_t j = 0; j < s; ++j) {
    std::vector<std::size_t> up;
    for (std::size_t v = 0; v < p->size(); ++v)
      if (p->leq(from[j % r], v)) up.push_back(v);
    to[j] = up[std::uniform_int_distribution<std::size_t>(0, up.size() - 1)(rng)];
  }
  Matrix<F> coeff(s, r);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < r; ++i)
      if (p->leq(from[i], to[j])) coeff(j, i) = F::random(rng);
  const std::size_t n = p->size();
  std::vector<std::vector<std::size_t>> rows(n), cols(n);
  std::vector<Matrix<F>> basis(n);
  std::vector<std::size_t> dims(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < s; ++j)
      if (p->leq(v, to[j])) rows[v].push_back(j);
    for (std::size_t i = 0; i < r; ++i)
      if (p->leq(from[i], v)) cols[v].push_back(i);
    Matrix<F> phi = coeff.select_rows(rows[v]).select_columns(cols[v]);
    basis[v] = column_space(phi);
    dims[v] = basis[v].cols();
  }
  return Representation<F>::from_callback(p, dims, [&](std::size_t v, std::size_t w) {
    // project rows of v onto rows of w, then express in w's basis
    std::vector<std::size_t> sel;
    for (std::size_t a = 0, b = 0; a < rows[v].size() && b < rows[w].size(); ++a)
      if (rows[v][a] == rows[w][b]) {
        sel.push_back(a);
        ++b;
      }
    Matrix<F> projected = basis[v].select_rows(sel);
    auto x = solve_matrix(basis[w], projected);
    if (!x) throw std::logic_error("random_rep: image not preserved");
    return *x;
  }, false);
}

template <Field F>
RepMap<F> random_rep_map(const Representation<F>& m, const Representation<F>& n, std::mt19937_64& rng) {
  return random_combination(m, n, hom_basis(m, n), rng);
}

}  // namespace cubecalc
