#pragma once

// Bounded chain complexes of poset representations, homologically indexed:
// d_n : X_n -> X_{n-1}.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubecalc/rep.hpp"

namespace cubecalc {

template <Field F>
class DiagramComplex {
 public:
  DiagramComplex() : DiagramComplex(point()) {}
  explicit DiagramComplex(PosetPtr shape) : shape_(std::move(shape)), lo_(0) {}

  // diffs[k][v] is d_{lo+k} at v.
  static DiagramComplex make(PosetPtr shape, int lo, std::vector<Representation<F>> terms,
                             std::vector<std::vector<Matrix<F>>> diffs) {
    auto x = unchecked(std::move(shape), lo, std::move(terms), std::move(diffs));
    if (auto err = x.validate()) throw UsageError("invalid complex: " + *err);
    return x;
  }

  static DiagramComplex unchecked(PosetPtr shape, int lo, std::vector<Representation<F>> terms,
                                  std::vector<std::vector<Matrix<F>>> diffs) {
    detail::require(terms.size() == diffs.size(), "complex needs one differential per term");
    DiagramComplex x(std::move(shape));
    x.lo_ = lo;
    x.terms_ = std::move(terms);
    x.diffs_ = std::move(diffs);
    return x;
  }

  // Build from callbacks over degrees [lo, hi].
  template <class TermFn, class DiffFn>
  static DiagramComplex build(PosetPtr shape, int lo, int hi, TermFn&& term, DiffFn&& diff) {
    std::vector<Representation<F>> terms;
    std::vector<std::vector<Matrix<F>>> diffs;
    for (int n = lo; n <= hi; ++n) terms.push_back(term(n));
    for (int n = lo; n <= hi; ++n) {
      std::vector<Matrix<F>> dn;
      for (std::size_t v = 0; v < shape->size(); ++v) {
        if (n == lo) dn.push_back(Matrix<F>::zero(0, terms[0].dim(v)));
        else dn.push_back(diff(n, v));
      }
      diffs.push_back(std::move(dn));
    }
    return unchecked(std::move(shape), lo, std::move(terms), std::move(diffs)).trimmed();
  }

  const PosetPtr& shape() const { return shape_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool empty() const { return terms_.empty(); }
  bool in_range(int n) const { return n >= lo_ && n <= hi(); }

  Representation<F> term(int n) const {
    if (!in_range(n)) return Representation<F>::zero(shape_);
    return terms_[static_cast<std::size_t>(n - lo_)];
  }
  const Representation<F>* term_ptr(int n) const {
    return in_range(n) ? &terms_[static_cast<std::size_t>(n - lo_)] : nullptr;
  }
  std::size_t dim(int n, std::size_t v) const {
    return in_range(n) ? terms_[static_cast<std::size_t>(n - lo_)].dim(v) : 0;
  }
  std::size_t total_dim() const {
    std::size_t t = 0;
    for (const auto& r : terms_) t += r.total_dim();
    return t;
  }

  // d_n at v: X_n(v) -> X_{n-1}(v)
  Matrix<F> d(int n, std::size_t v) const {
    if (in_range(n) && in_range(n - 1)) return diffs_[static_cast<std::size_t>(n - lo_)][v];
    return Matrix<F>::zero(dim(n - 1, v), dim(n, v));
  }

  // Structure map of the term in degree n.
  Matrix<F> map(int n, std::size_t v, std::size_t w) const {
    if (!in_range(n)) return Matrix<F>();
    return terms_[static_cast<std::size_t>(n - lo_)].map(v, w);
  }

  std::optional<std::string> validate() const {
    const auto& p = *shape_;
    for (int n = lo_; n <= hi(); ++n) {
      const auto& t = terms_[static_cast<std::size_t>(n - lo_)];
      if (!same_poset(t.shape(), shape_)) return "term in degree " + std::to_string(n) + " has the wrong shape";
      if (auto err = t.check()) return "term in degree " + std::to_string(n) + ": " + *err;
      const auto& dn = diffs_[static_cast<std::size_t>(n - lo_)];
      if (dn.size() != p.size()) return "differential in degree " + std::to_string(n) + " has wrong length";
      for (std::size_t v = 0; v < p.size(); ++v)
        if (dn[v].rows() != dim(n - 1, v) || dn[v].cols() != dim(n, v))
          return "d_" + std::to_string(n) + " at " + p.label(v) + " has shape " + dn[v].shape();
    }
    for (int n = lo_ + 1; n <= hi(); ++n) {
      const auto& src = terms_[static_cast<std::size_t>(n - lo_)];
      const auto& tgt = terms_[static_cast<std::size_t>(n - 1 - lo_)];
      const auto& edges = p.hasse_edges();
      for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [v, w] = edges[e];
        if (!(d(n, w) * src.edge_map(e) == tgt.edge_map(e) * d(n, v)))
          return "d_" + std::to_string(n) + " is not natural on " + p.label(v) + "->" + p.label(w);
      }
    }
    for (int n = lo_ + 2; n <= hi(); ++n)
      for (std::size_t v = 0; v < p.size(); ++v)
        if (!(d(n - 1, v) * d(n, v)).is_zero())
          return "d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " != 0 at " + p.label(v);
    return std::nullopt;
  }

  // Drops zero terms at both ends.
  DiagramComplex trimmed() const {
    std::size_t a = 0, b = terms_.size();
    while (a < b && terms_[a].is_zero()) ++a;
    while (b > a && terms_[b - 1].is_zero()) --b;
    if (a == 0 && b == terms_.size()) return *this;
    DiagramComplex x(shape_);
    x.lo_ = lo_ + static_cast<int>(a);
    for (std::size_t k = a; k < b; ++k) {
      x.terms_.push_back(terms_[k]);
      if (k == a) {
        std::vector<Matrix<F>> dn;
        for (std::size_t v = 0; v < shape_->size(); ++v) dn.push_back(Matrix<F>::zero(0, terms_[k].dim(v)));
        x.diffs_.push_back(std::move(dn));
      } else {
        x.diffs_.push_back(diffs_[k]);
      }
    }
    return x;
  }

  friend bool operator==(const DiagramComplex& a, const DiagramComplex& b) {
    auto x = a.trimmed(), y = b.trimmed();
    if (!same_poset(x.shape_, y.shape_)) return false;
    if (x.terms_.empty() || y.terms_.empty()) return x.terms_.empty() && y.terms_.empty();
    return x.lo_ == y.lo_ && x.terms_ == y.terms_ && x.diffs_ == y.diffs_;
  }

 private:
  PosetPtr shape_;
  int lo_ = 0;
  std::vector<Representation<F>> terms_;
  std::vector<std::vector<Matrix<F>>> diffs_;
};

/// Degreewise map of complexes over the same shape.
template <Field F>
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(DiagramComplex<F> source, DiagramComplex<F> target)
      : source_(std::move(source)), target_(std::move(target)) {
    comps_.resize(source_.empty() ? 0 : static_cast<std::size_t>(source_.hi() - source_.lo() + 1));
    for (int n = source_.lo(); n <= source_.hi() && !source_.empty(); ++n)
      for (std::size_t v = 0; v < source_.shape()->size(); ++v)
        comps_[static_cast<std::size_t>(n - source_.lo())].push_back(
            Matrix<F>::zero(target_.dim(n, v), source_.dim(n, v)));
  }

  template <class Fn>
  static ChainMap build(DiagramComplex<F> source, DiagramComplex<F> target, Fn&& fn) {
    ChainMap f(std::move(source), std::move(target));
    for (int n = f.source_.lo(); n <= f.source_.hi() && !f.source_.empty(); ++n)
      for (std::size_t v = 0; v < f.source_.shape()->size(); ++v) f.set(n, v, fn(n, v));
    return f;
  }

  const DiagramComplex<F>& source() const { return source_; }
  const DiagramComplex<F>& target() const { return target_; }

  Matrix<F> at(int n, std::size_t v) const {
    if (!source_.in_range(n)) return Matrix<F>::zero(target_.dim(n, v), 0);
    return comps_[static_cast<std::size_t>(n - source_.lo())][v];
  }
  void set(int n, std::size_t v, Matrix<F> m) {
    detail::require(source_.in_range(n), "chain map component outside the source support");
    detail::require(m.rows() == target_.dim(n, v) && m.cols() == source_.dim(n, v),
                    "chain map component has wrong shape");
    comps_[static_cast<std::size_t>(n - source_.lo())][v] = std::move(m);
  }

  RepMap<F> degree(int n) const {
    std::vector<Matrix<F>> c;
    for (std::size_t v = 0; v < source_.shape()->size(); ++v) c.push_back(at(n, v));
    return {source_.term(n), target_.term(n), std::move(c)};
  }

  std::optional<std::string> check() const {
    if (!same_poset(source_.shape(), target_.shape())) return std::string("shape mismatch");
    const auto& p = *source_.shape();
    if (source_.empty()) return std::nullopt;
    for (int n = source_.lo(); n <= source_.hi(); ++n) {
      if (auto err = degree(n).check()) return "degree " + std::to_string(n) + ": " + *err;
      for (std::size_t v = 0; v < p.size(); ++v)
        if (!(target_.d(n, v) * at(n, v) == at(n - 1, v) * source_.d(n, v)))
          return "does not commute with d_" + std::to_string(n) + " at " + p.label(v);
    }
    // the degree just above the support
    int n = source_.hi() + 1;
    for (std::size_t v = 0; v < p.size(); ++v)
      if (!(at(n - 1, v) * source_.d(n, v)).is_zero())
        return "does not commute with d_" + std::to_string(n) + " at " + p.label(v);
    return std::nullopt;
  }

 private:
  DiagramComplex<F> source_, target_;
  std::vector<std::vector<Matrix<F>>> comps_;
};

template <Field F>
ChainMap<F> identity_chain_map(const DiagramComplex<F>& x) {
  return ChainMap<F>::build(x, x, [&](int n, std::size_t v) { return Matrix<F>::identity(x.dim(n, v)); });
}

template <Field F>
ChainMap<F> zero_chain_map(const DiagramComplex<F>& x, const DiagramComplex<F>& y) {
  return ChainMap<F>(x, y);
}

// g after f
template <Field F>
ChainMap<F> compose(const ChainMap<F>& g, const ChainMap<F>& f) {
  return ChainMap<F>::build(f.source(), g.target(), [&](int n, std::size_t v) { return g.at(n, v) * f.at(n, v); });
}

template <Field F>
ChainMap<F> add(const ChainMap<F>& f, const ChainMap<F>& g) {
  return ChainMap<F>::build(f.source(), f.target(), [&](int n, std::size_t v) { return f.at(n, v) + g.at(n, v); });
}

template <Field F>
ChainMap<F> scale(const ChainMap<F>& f, const F& s) {
  return ChainMap<F>::build(f.source(), f.target(), [&](int n, std::size_t v) { return f.at(n, v).scaled(s); });
}

// Exact equality of all components (source and target assumed equal).
template <Field F>
bool same_components(const ChainMap<F>& f, const ChainMap<F>& g) {
  int lo = std::min(f.source().lo(), g.source().lo()), hi = std::max(f.source().hi(), g.source().hi());
  for (int n = lo; n <= hi; ++n)
    for (std::size_t v = 0; v < f.source().shape()->size(); ++v)
      if (!(f.at(n, v) == g.at(n, v))) return false;
  return true;
}

// ------------------------------------------------------------- shifts

template <Field F>
DiagramComplex<F> shift(const DiagramComplex<F>& x, int s) {
  if (x.empty()) return x;
  F sign = F::from_int(s % 2 == 0 ? 1 : -1);
  return DiagramComplex<F>::build(x.shape(), x.lo() + s, x.hi() + s, [&](int n) { return x.term(n - s); },
                                  [&](int n, std::size_t v) { return x.d(n - s, v).scaled(sign); });
}

template <Field F>
ChainMap<F> shift(const ChainMap<F>& f, int s) {
  return ChainMap<F>::build(shift(f.source(), s), shift(f.target(), s),
                            [&](int n, std::size_t v) { return f.at(n - s, v); });
}

template <Field F>
DiagramComplex<F> direct_sum(const DiagramComplex<F>& x, const DiagramComplex<F>& y) {
  detail::require(same_poset(x.shape(), y.shape()), "direct_sum: shapes differ");
  if (x.empty()) return y;
  if (y.empty()) return x;
  int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  return DiagramComplex<F>::build(x.shape(), lo, hi, [&](int n) { return direct_sum(x.term(n), y.term(n)); },
                                  [&](int n, std::size_t v) { return Matrix<F>::direct_sum(x.d(n, v), y.d(n, v)); });
}

// The complex with a single representation in degree n.
template <Field F>
DiagramComplex<F> concentrated(const Representation<F>& r, int n = 0) {
  return DiagramComplex<F>::build(r.shape(), n, n, [&](int) { return r; },
                                  [](int, std::size_t) { return Matrix<F>(); });
}

// ------------------------------------------------------------- cones

template <Field F>
struct ConeResult {
  DiagramComplex<F> cone;
  ChainMap<F> from_target;        // Y -> C(f)
  ChainMap<F> to_shifted_source;  // C(f) -> Sigma X
};

// C(f)_n = Y_n + X_{n-1},  d(y, x) = (dy + f x, -dx)
template <Field F>
ConeResult<F> cone(const ChainMap<F>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& shape = y.shape();
  DiagramComplex<F> c(shape);
  if (!(x.empty() && y.empty())) {
    int lo = x.empty() ? y.lo() : (y.empty() ? x.lo() + 1 : std::min(y.lo(), x.lo() + 1));
    int hi = x.empty() ? y.hi() : (y.empty() ? x.hi() + 1 : std::max(y.hi(), x.hi() + 1));
    c = DiagramComplex<F>::build(
        shape, lo, hi, [&](int n) { return direct_sum(y.term(n), x.term(n - 1)); },
        [&](int n, std::size_t v) {
          std::size_t yn = y.dim(n, v), xn1 = x.dim(n - 1, v), yn1 = y.dim(n - 1, v), xn2 = x.dim(n - 2, v);
          Matrix<F> m(yn1 + xn2, yn + xn1);
          m.set_block(0, 0, y.d(n, v));
          m.set_block(0, yn, f.at(n - 1, v));
          m.set_block(yn1, yn, -x.d(n - 1, v));
          return m;
        });
  }
  auto incl = ChainMap<F>::build(y, c, [&](int n, std::size_t v) {
    Matrix<F> m(c.dim(n, v), y.dim(n, v));
    m.set_block(0, 0, Matrix<F>::identity(y.dim(n, v)));
    return m;
  });
  auto sx = shift(x, 1);
  auto proj = ChainMap<F>::build(c, sx, [&](int n, std::size_t v) {
    Matrix<F> m(sx.dim(n, v), c.dim(n, v));
    m.set_block(0, y.dim(n, v), Matrix<F>::identity(x.dim(n - 1, v)));
    return m;
  });
  return {std::move(c), std::move(incl), std::move(proj)};
}

template <Field F>
struct FiberResult {
  DiagramComplex<F> fiber;
  ChainMap<F> to_source;  // Fib(f) -> X
};

// Fib(f) = Sigma^{-1} C(f): Fib_n = Y_{n+1} + X_n,  d(y, x) = (-dy - f x, dx)
template <Field F>
FiberResult<F> fiber(const ChainMap<F>& f) {
  auto fib = shift(cone(f).cone, -1);
  const auto& x = f.source();
  const auto& y = f.target();
  auto proj = ChainMap<F>::build(fib, x, [&](int n, std::size_t v) {
    Matrix<F> m(x.dim(n, v), fib.dim(n, v));
    m.set_block(0, y.dim(n + 1, v), Matrix<F>::identity(x.dim(n, v)));
    return m;
  });
  return {std::move(fib), std::move(proj)};
}

// ------------------------------------------------------------- stalks

// Complex over the point: the value at v.
template <Field F>
DiagramComplex<F> stalk(const DiagramComplex<F>& x, std::size_t v) {
  auto pt = point();
  if (x.empty()) return DiagramComplex<F>(pt);
  return DiagramComplex<F>::build(
      pt, x.lo(), x.hi(),
      [&](int n) {
        return Representation<F>::unchecked(pt, {x.dim(n, v)}, {});
      },
      [&](int n, std::size_t) { return x.d(n, v); });
}

// The structure map x(v) -> x(w) as a chain map of stalks.
template <Field F>
ChainMap<F> stalk_map(const DiagramComplex<F>& x, std::size_t v, std::size_t w) {
  return ChainMap<F>::build(stalk(x, v), stalk(x, w), [&](int n, std::size_t) { return x.map(n, v, w); });
}

template <Field F>
ChainMap<F> stalk_of_map(const ChainMap<F>& f, std::size_t v) {
  return ChainMap<F>::build(stalk(f.source(), v), stalk(f.target(), v), [&](int n, std::size_t) { return f.at(n, v); });
}

// ------------------------------------------------------------- homology

/// Per-degree, per-element homology dimensions; rows that are entirely zero are omitted.
struct BettiTable {
  std::vector<std::string> labels;
  std::map<int, std::vector<std::size_t>> rows;

  bool is_zero() const { return rows.empty(); }
  std::size_t at(int n, std::size_t v) const {
    auto it = rows.find(n);
    return it == rows.end() ? 0 : it->second[v];
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (auto& [n, r] : rows)
      for (auto x : r) t += x;
    return t;
  }
  // degrees with nonzero homology
  std::vector<int> degrees() const {
    std::vector<int> d;
    for (auto& [n, r] : rows) d.push_back(n);
    return d;
  }
  long euler(std::size_t v) const {
    long e = 0;
    for (auto& [n, r] : rows) e += (n % 2 == 0 ? 1 : -1) * static_cast<long>(r[v]);
    return e;
  }

  std::string to_string() const {
    if (rows.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [n, r] : rows) {
      if (!first) os << "; ";
      first = false;
      os << "H" << n << ":";
      for (std::size_t v = 0; v < r.size(); ++v) os << (v ? "," : "") << r[v];
    }
    return os.str();
  }

  friend bool operator==(const BettiTable& a, const BettiTable& b) { return a.rows == b.rows; }
};

template <Field F>
BettiTable betti_table(const DiagramComplex<F>& x) {
  BettiTable t;
  t.labels = x.shape()->labels();
  if (x.empty()) return t;
  const std::size_t np = x.shape()->size();
  std::vector<std::vector<std::size_t>> rk(static_cast<std::size_t>(x.hi() - x.lo() + 2), std::vector<std::size_t>(np));
  for (int n = x.lo(); n <= x.hi() + 1; ++n)
    for (std::size_t v = 0; v < np; ++v) rk[static_cast<std::size_t>(n - x.lo())][v] = rank(x.d(n, v));
  for (int n = x.lo(); n <= x.hi(); ++n) {
    std::vector<std::size_t> row(np);
    bool nz = false;
    for (std::size_t v = 0; v < np; ++v) {
      row[v] = x.dim(n, v) - rk[static_cast<std::size_t>(n - x.lo())][v] - rk[static_cast<std::size_t>(n + 1 - x.lo())][v];
      nz |= row[v] != 0;
    }
    if (nz) t.rows[n] = std::move(row);
  }
  return t;
}

template <Field F>
bool is_acyclic(const DiagramComplex<F>& x) {
  if (x.empty()) return true;
  for (std::size_t v = 0; v < x.shape()->size(); ++v) {
    std::size_t prev = 0;  // rank of d_{lo}
    for (int n = x.lo(); n <= x.hi(); ++n) {
      std::size_t next = rank(x.d(n + 1, v));
      if (x.dim(n, v) != prev + next) return false;
      prev = next;
    }
  }
  return true;
}

template <Field F>
bool is_quasi_iso(const ChainMap<F>& f) {
  return is_acyclic(cone(f).cone);
}

/// A basis of the space of chain maps x -> y. The constraints are linear in
/// the components, so each unknown is probed with a unit component.
template <Field F>
std::vector<ChainMap<F>> chain_map_basis(const DiagramComplex<F>& x, const DiagramComplex<F>& y) {
  if (!same_poset(x.shape(), y.shape())) throw UsageError("chain_map_basis: complexes have different shapes");
  if (x.empty()) return {};
  const auto& p = *x.shape();
  const auto& edges = p.hasse_edges();
  struct Slot { int n; std::size_t v, r, c; };
  std::vector<Slot> slots;
  for (int n = x.lo(); n <= x.hi(); ++n)
    for (std::size_t v = 0; v < p.size(); ++v)
      for (std::size_t r = 0; r < y.dim(n, v); ++r)
        for (std::size_t c = 0; c < x.dim(n, v); ++c) slots.push_back({n, v, r, c});
  if (slots.empty()) return {};

  auto residual = [&](const ChainMap<F>& f) {
    std::vector<F> out;
    auto push = [&](const Matrix<F>& m) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    };
    for (int n = x.lo(); n <= x.hi(); ++n) {
      auto xn = x.term(n), yn = y.term(n);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [v, w] = edges[e];
        push(yn.edge_map(e) * f.at(n, v) - f.at(n, w) * xn.edge_map(e));
      }
    }
    for (int n = x.lo(); n <= x.hi() + 1; ++n)
      for (std::size_t v = 0; v < p.size(); ++v) push(y.d(n, v) * f.at(n, v) - f.at(n - 1, v) * x.d(n, v));
    return out;
  };

  std::vector<std::vector<F>> cols;
  for (const auto& s : slots) {
    ChainMap<F> f(x, y);
    auto m = f.at(s.n, s.v);
    m(s.r, s.c) = F::from_int(1);
    f.set(s.n, s.v, std::move(m));
    cols.push_back(residual(f));
  }
  Matrix<F> sys(cols.front().size(), slots.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) sys(i, j) = cols[j][i];

  std::vector<ChainMap<F>> out;
  for (const auto& k : kernel_basis(sys)) {
    ChainMap<F> f(x, y);
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (k[j].is_zero()) continue;
      auto m = f.at(slots[j].n, slots[j].v);
      m(slots[j].r, slots[j].c) = k[j];
      f.set(slots[j].n, slots[j].v, std::move(m));
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// Homology as representations, one per degree with nonzero homology.
template <Field F>
struct GradedRep {
  std::map<int, Representation<F>> degrees;
  bool is_zero() const { return degrees.empty(); }
};

template <Field F>
struct HomologyBasis {
  Matrix<F> boundaries;       // columns span im d_{n+1}
  Matrix<F> representatives;  // completes boundaries to a basis of ker d_n
};

template <Field F>
HomologyBasis<F> homology_basis(const DiagramComplex<F>& x, int n, std::size_t v) {
  Matrix<F> b = column_space(x.d(n + 1, v));
  Matrix<F> z = null_space(x.d(n, v));
  if (z.rows() == 0) return {Matrix<F>(0, 0), Matrix<F>(0, 0)};
  auto piv = pivot_columns(Matrix<F>::hcat(b, z));
  std::vector<std::size_t> keep;
  for (auto c : piv)
    if (c >= b.cols()) keep.push_back(c - b.cols());
  return {std::move(b), z.select_columns(keep)};
}

// Coordinates of cycles with respect to a homology basis.
template <Field F>
Matrix<F> homology_coordinates(const HomologyBasis<F>& hb, const Matrix<F>& cycles) {
  auto sol = solve_matrix(Matrix<F>::hcat(hb.boundaries, hb.representatives), cycles);
  if (!sol) throw std::logic_error("homology_coordinates: input is not a cycle");
  return sol->block(hb.boundaries.cols(), 0, hb.representatives.cols(), cycles.cols());
}

template <Field F>
Representation<F> homology_rep(const DiagramComplex<F>& x, int n) {
  const auto& p = x.shape();
  std::vector<HomologyBasis<F>> hb;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < p->size(); ++v) {
    hb.push_back(homology_basis(x, n, v));
    dims.push_back(hb.back().representatives.cols());
  }
  return Representation<F>::from_callback(p, dims, [&](std::size_t v, std::size_t w) {
    if (dims[v] == 0 || dims[w] == 0) return Matrix<F>(dims[w], dims[v]);
    return homology_coordinates(hb[w], x.map(n, v, w) * hb[v].representatives);
  });
}

template <Field F>
GradedRep<F> homology(const DiagramComplex<F>& x) {
  GradedRep<F> h;
  auto t = betti_table(x);
  for (auto& [n, row] : t.rows) h.degrees.emplace(n, homology_rep(x, n));
  return h;
}

// H_n(f) at v in the bases of homology_basis.
template <Field F>
Matrix<F> homology_map(const ChainMap<F>& f, int n, std::size_t v) {
  auto hs = homology_basis(f.source(), n, v);
  auto ht = homology_basis(f.target(), n, v);
  if (hs.representatives.cols() == 0 || ht.representatives.cols() == 0)
    return Matrix<F>(ht.representatives.cols(), hs.representatives.cols());
  return homology_coordinates(ht, f.at(n, v) * hs.representatives);
}

template <Field F>
DiagramComplex<F> formal_complex(const GradedRep<F>& h, const PosetPtr& shape) {
  if (h.degrees.empty()) return DiagramComplex<F>(shape);
  int lo = h.degrees.begin()->first, hi = h.degrees.rbegin()->first;
  return DiagramComplex<F>::build(
      shape, lo, hi,
      [&](int n) {
        auto it = h.degrees.find(n);
        return it == h.degrees.end() ? Representation<F>::zero(shape) : it->second;
      },
      [&](int n, std::size_t v) {
        auto a = h.degrees.find(n), b = h.degrees.find(n - 1);
        return Matrix<F>(b == h.degrees.end() ? 0 : b->second.dim(v), a == h.degrees.end() ? 0 : a->second.dim(v));
      });
}

struct GradedIsoReport {
  bool isomorphic = false;
  std::string detail;  // first failing degree
};

// Per-degree isomorphism search on homology representations.
template <Field F>
GradedIsoReport graded_isomorphic(const GradedRep<F>& a, const GradedRep<F>& b, std::size_t trials = 8,
                                  std::uint64_t seed = 1) {
  std::vector<int> degs;
  for (auto& [n, r] : a.degrees) degs.push_back(n);
  for (auto& [n, r] : b.degrees)
    if (!a.degrees.count(n)) degs.push_back(n);
  for (int n : degs) {
    auto ia = a.degrees.find(n), ib = b.degrees.find(n);
    if (ia == a.degrees.end() || ib == b.degrees.end())
      return {false, "homology in degree " + std::to_string(n) + " present on one side only"};
    auto r = find_isomorphism(ia->second, ib->second, trials, seed + static_cast<std::uint64_t>(n + 1000));
    if (!r) return {false, "degree " + std::to_string(n) + ": " + to_string(r.status)};
  }
  return {true, ""};
}

// ------------------------------------------------------------- duality

// (DX)_n = X_{-n}^*, over the opposite poset, with transposed differentials.
template <Field F>
DiagramComplex<F> dual_complex(const DiagramComplex<F>& x, const PosetPtr& op) {
  if (x.empty()) return DiagramComplex<F>(op);
  const auto& p = *x.shape();
  return DiagramComplex<F>::build(
      op, -x.hi(), -x.lo(), [&](int n) { return dual_rep(x.term(-n), op); },
      [&](int n, std::size_t v) { return x.d(-n + 1, op_index(p, v)).transpose(); });
}

template <Field F>
DiagramComplex<F> dual_complex(const DiagramComplex<F>& x) {
  return dual_complex(x, opposite(x.shape()));
}

// Df : DY -> DX
template <Field F>
ChainMap<F> dual_map(const ChainMap<F>& f, const DiagramComplex<F>& dsource, const DiagramComplex<F>& dtarget) {
  const auto& p = *f.source().shape();
  return ChainMap<F>::build(dtarget, dsource,
                            [&](int n, std::size_t v) { return f.at(-n, op_index(p, v)).transpose(); });
}

template <Field F>
ChainMap<F> dual_map(const ChainMap<F>& f) {
  auto op = opposite(f.source().shape());
  return dual_map(f, dual_complex(f.source(), op), dual_complex(f.target(), op));
}

// ------------------------------------------------------------- random

template <Field F>
ChainMap<F> random_degreewise_map(const DiagramComplex<F>& x, const DiagramComplex<F>& y, std::mt19937_64& rng) {
  ChainMap<F> f(x, y);
  for (int n = x.lo(); n <= x.hi() && !x.empty(); ++n) {
    auto m = random_rep_map(x.term(n), y.term(n), rng);
    for (std::size_t v = 0; v < x.shape()->size(); ++v) f.set(n, v, m.components[v]);
  }
  return f;
}

// Cone of a random degreewise map between complexes with zero differential.
template <Field F>
DiagramComplex<F> random_complex(const PosetPtr& shape, int lo, int hi, std::size_t max_dim, std::mt19937_64& rng) {
  if (max_dim == 0 || hi < lo) return DiagramComplex<F>(shape);
  GradedRep<F> a, b;
  for (int n = lo; n <= hi; ++n) b.degrees.emplace(n, random_rep<F>(shape, max_dim, rng));
  for (int n = lo; n < hi; ++n) a.degrees.emplace(n, random_rep<F>(shape, max_dim, rng));
  auto x = formal_complex(a, shape);
  auto y = formal_complex(b, shape);
  return cone(random_degreewise_map(x, y, rng)).cone;
}

template <Field F>
DiagramComplex<F> random_complex(const PosetPtr& shape, int lo, int hi, std::size_t max_dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_complex<F>(shape, lo, hi, max_dim, rng);
}

// ------------------------------------------------------------- reduction

/// A subcomplex given by column bases per degree and element.
template <Field F>
struct SubcomplexBasis {
  int lo = 0;
  std::vector<std::vector<Matrix<F>>> spans;  // [n - lo][v]
};

template <Field F>
struct QuotientResult {
  DiagramComplex<F> quotient;
  ChainMap<F> projection;
};

template <Field F>
QuotientResult<F> quotient_complex(const DiagramComplex<F>& x, const SubcomplexBasis<F>& k) {
  const auto& p = x.shape();
  const std::size_t np = p->size();
  if (x.empty()) return {x, identity_chain_map(x)};
  const std::size_t nd = static_cast<std::size_t>(x.hi() - x.lo() + 1);
  std::vector<std::vector<Matrix<F>>> q(nd), lift(nd);
  std::vector<std::vector<std::size_t>> dims(nd);
  for (int n = x.lo(); n <= x.hi(); ++n) {
    auto i = static_cast<std::size_t>(n - x.lo());
    for (std::size_t v = 0; v < np; ++v) {
      std::size_t dim = x.dim(n, v);
      Matrix<F> span = (n >= k.lo && static_cast<std::size_t>(n - k.lo) < k.spans.size())
                           ? k.spans[static_cast<std::size_t>(n - k.lo)][v]
                           : Matrix<F>(dim, 0);
      auto comp = complement_columns(span);
      Matrix<F> e = unit_columns<F>(dim, comp);
      Matrix<F> proj(comp.size(), dim);
      if (!comp.empty()) {
        auto inv = inverse(Matrix<F>::hcat(span, e));
        if (!inv) throw std::logic_error("quotient_complex: span is not independent");
        proj = inv->block(span.cols(), 0, comp.size(), dim);
      }
      q[i].push_back(std::move(proj));
      lift[i].push_back(std::move(e));
      dims[i].push_back(comp.size());
    }
  }
  auto qx = DiagramComplex<F>::build(
      p, x.lo(), x.hi(),
      [&](int n) {
        auto i = static_cast<std::size_t>(n - x.lo());
        return Representation<F>::from_callback(p, dims[i], [&](std::size_t v, std::size_t w) {
          return q[i][w] * x.term_ptr(n)->map(v, w) * lift[i][v];
        }, false);
      },
      [&](int n, std::size_t v) {
        auto i = static_cast<std::size_t>(n - x.lo());
        return q[i - 1][v] * x.d(n, v) * lift[i][v];
      });
  auto proj = ChainMap<F>::build(x, qx, [&](int n, std::size_t v) {
    if (!qx.in_range(n)) return Matrix<F>(0, x.dim(n, v));
    return q[static_cast<std::size_t>(n - x.lo())][v];
  });
  return {std::move(qx), std::move(proj)};
}

namespace detail {

// Largest greedy S in X_n(v) with d injective on the generated subrepresentation.
template <Field F>
Matrix<F> injective_generators(const DiagramComplex<F>& x, int n, std::size_t v) {
  const auto& p = *x.shape();
  Matrix<F> dv = x.d(n, v);
  std::size_t r = rank(dv);
  if (r == 0) return Matrix<F>(x.dim(n, v), 0);
  std::vector<std::size_t> above;
  for (std::size_t w = v + 1; w < p.size(); ++w)
    if (p.leq(v, w)) above.push_back(w);
  std::vector<Matrix<F>> push, dpush;
  for (auto w : above) {
    push.push_back(x.map(n, v, w));
    dpush.push_back(x.d(n, w) * push.back());
  }
  auto ok = [&](const Matrix<F>& s) {
    for (std::size_t i = 0; i < above.size(); ++i)
      if (rank(dpush[i] * s) != rank(push[i] * s)) return false;
    return true;
  };
  // candidates: unit vectors complementing the kernel
  Matrix<F> ker = null_space(dv);
  auto cand = complement_columns(ker);
  Matrix<F> all = unit_columns<F>(x.dim(n, v), cand);
  if (ok(all)) return all;
  std::vector<std::size_t> chosen;
  for (auto c : cand) {
    chosen.push_back(c);
    if (!ok(unit_columns<F>(x.dim(n, v), chosen))) chosen.pop_back();
  }
  return unit_columns<F>(x.dim(n, v), chosen);
}

}  // namespace detail

// One quotient pass: for each element, from the top down, divide out the
// acyclic subcomplex generated where d is injective.
template <Field F>
QuotientResult<F> reduce_quotient_pass(const DiagramComplex<F>& x) {
  DiagramComplex<F> cur = x;
  ChainMap<F> total = identity_chain_map(x);
  const auto& p = *x.shape();
  for (std::size_t vv = p.size(); vv-- > 0;) {
    if (cur.empty()) break;
    SubcomplexBasis<F> k;
    k.lo = cur.lo();
    const std::size_t nd = static_cast<std::size_t>(cur.hi() - cur.lo() + 1);
    std::vector<Matrix<F>> gens(nd);
    bool any = false;
    for (int n = cur.lo(); n <= cur.hi(); ++n) {
      gens[static_cast<std::size_t>(n - cur.lo())] = detail::injective_generators(cur, n, vv);
      any |= gens[static_cast<std::size_t>(n - cur.lo())].cols() > 0;
    }
    if (!any) continue;
    k.spans.assign(nd, {});
    for (int n = cur.lo(); n <= cur.hi(); ++n) {
      auto i = static_cast<std::size_t>(n - cur.lo());
      for (std::size_t w = 0; w < p.size(); ++w) {
        if (!p.leq(vv, w)) {
          k.spans[i].push_back(Matrix<F>(cur.dim(n, w), 0));
          continue;
        }
        Matrix<F> part = cur.map(n, vv, w) * gens[i];
        if (i + 1 < nd) part = Matrix<F>::hcat(part, cur.d(n + 1, w) * cur.map(n + 1, vv, w) * gens[i + 1]);
        k.spans[i].push_back(column_space(part));
      }
    }
    auto qr = quotient_complex(cur, k);
    total = compose(qr.projection, total);
    cur = std::move(qr.quotient);
  }
  auto trimmed = cur.trimmed();
  auto proj = ChainMap<F>::build(x, trimmed, [&](int n, std::size_t v) {
    if (!trimmed.in_range(n)) return Matrix<F>(0, x.dim(n, v));
    return total.at(n, v);
  });
  return {std::move(trimmed), std::move(proj)};
}

// Quasi-isomorphic smaller model: alternating quotient passes on the complex
// and on its dual until the size stabilizes.
template <Field F>
DiagramComplex<F> reduce(const DiagramComplex<F>& x) {
  DiagramComplex<F> cur = x.trimmed();
  PosetPtr op = opposite(x.shape());
  for (int round = 0; round < 8; ++round) {
    std::size_t before = cur.total_dim();
    cur = reduce_quotient_pass(cur).quotient;
    auto dual = reduce_quotient_pass(dual_complex(cur, op)).quotient;
    cur = dual_complex(dual, x.shape());
    if (cur.total_dim() == before) break;
  }
  return cur;
}

}  // namespace cubecalc
