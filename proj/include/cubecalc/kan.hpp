#pragma once

// Homotopy Kan extensions along poset maps. Left Kan extensions are
// normalized bar complexes over the under-slices; right Kan extensions are
// obtained from them by duality.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubecalc/complex.hpp"

namespace cubecalc {

// ------------------------------------------------------------- restriction

template <Field F>
DiagramComplex<F> restrict(const PosetMap& u, const DiagramComplex<F>& x) {
  detail::require(same_poset(u.target, x.shape()), "restrict: complex does not live on the target of the map");
  if (x.empty()) return DiagramComplex<F>(u.source);
  return DiagramComplex<F>::build(
      u.source, x.lo(), x.hi(), [&](int n) { return restrict_rep(u, x.term(n)); },
      [&](int n, std::size_t a) { return x.d(n, u(a)); });
}

template <Field F>
ChainMap<F> restrict(const PosetMap& u, const ChainMap<F>& f) {
  return ChainMap<F>::build(restrict(u, f.source()), restrict(u, f.target()),
                            [&](int n, std::size_t a) { return f.at(n, u(a)); });
}

// ------------------------------------------------------------- bar complexes

// One summand X_q(c_0) of the bar complex, sitting at chain `chain`.
struct BarBlock {
  std::size_t chain;
  int inner;  // degree q in the input complex
  std::size_t offset;
  std::size_t dim;
};

template <Field F>
struct KanResult {
  DiagramComplex<F> value;
  // Chains of the source that carry nonzero values.
  std::vector<Chain> chains;
  std::map<Chain, std::size_t> chain_index;
  // layout[b][m]: the summands of the stalk at b in total degree m.
  // For right Kan extensions this describes the bar complex of the dual
  // problem, indexed by elements of the opposite posets.
  std::vector<std::map<int, std::vector<BarBlock>>> layout;
  bool cobar = false;

  std::optional<std::size_t> find_chain(const Chain& c) const {
    auto it = chain_index.find(c);
    if (it == chain_index.end()) return std::nullopt;
    return it->second;
  }
};

namespace detail {

inline int steps(const Chain& c) { return static_cast<int>(c.size()) - 1; }

template <Field F>
bool carries_value(const DiagramComplex<F>& x, std::size_t a) {
  for (int n = x.lo(); n <= x.hi() && !x.empty(); ++n)
    if (x.dim(n, a) > 0) return true;
  return false;
}

}  // namespace detail

// Left Kan extension along u. The stalk at b is the total complex of
// the normalized bar complex over {a : u(a) <= b}; structure maps are the
// inclusions of sub-sums.
template <Field F>
KanResult<F> lkan(const PosetMap& u, const DiagramComplex<F>& x) {
  detail::require(same_poset(u.source, x.shape()), "lkan: complex does not live on the source of the map");
  const auto& a = *u.source;
  const auto& b = *u.target;
  KanResult<F> res;
  res.layout.resize(b.size());
  if (x.empty()) {
    res.value = DiagramComplex<F>(u.target);
    return res;
  }
  for (auto& group : strict_chains(a))
    for (auto& c : group)
      if (detail::carries_value(x, c.front())) {
        res.chain_index.emplace(c, res.chains.size());
        res.chains.push_back(c);
      }
  const std::size_t nc = res.chains.size();
  int maxp = 0;
  for (auto& c : res.chains) maxp = std::max(maxp, detail::steps(c));

  // faces: (face chain, sign) for i >= 1 and the d_0 face separately
  struct Face {
    std::size_t chain;
    int sign;
  };
  std::vector<std::vector<Face>> inner_faces(nc);
  std::vector<std::optional<std::size_t>> first_face(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    const auto& c = res.chains[i];
    if (c.size() < 2) continue;
    first_face[i] = res.find_chain(Chain(c.begin() + 1, c.end()));
    for (std::size_t k = 1; k < c.size(); ++k) {
      Chain f = c;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
      inner_faces[i].push_back({res.chain_index.at(f), k % 2 == 0 ? 1 : -1});
    }
  }

  const int lo = x.lo(), hi = x.hi() + maxp;
  // offsets[b][m - lo][chain] or -1
  std::vector<std::vector<std::vector<long>>> offsets(b.size());
  std::vector<std::vector<std::size_t>> totals(b.size());
  for (std::size_t t = 0; t < b.size(); ++t) {
    offsets[t].assign(static_cast<std::size_t>(hi - lo + 1), std::vector<long>(nc, -1));
    totals[t].assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (int m = lo; m <= hi; ++m) {
      auto mi = static_cast<std::size_t>(m - lo);
      auto& blocks = res.layout[t][m];
      for (std::size_t i = 0; i < nc; ++i) {
        const auto& c = res.chains[i];
        if (!b.leq(u(c.back()), t)) continue;
        int q = m - detail::steps(c);
        if (!x.in_range(q)) continue;
        std::size_t dim = x.dim(q, c.front());
        offsets[t][mi][i] = static_cast<long>(totals[t][mi]);
        blocks.push_back({i, q, totals[t][mi], dim});
        totals[t][mi] += dim;
      }
    }
  }

  std::map<std::tuple<int, std::size_t, std::size_t>, Matrix<F>> step_maps;
  auto structure = [&](int q, std::size_t from, std::size_t to) -> const Matrix<F>& {
    auto key = std::make_tuple(q, from, to);
    auto it = step_maps.find(key);
    if (it == step_maps.end()) it = step_maps.emplace(key, x.map(q, from, to)).first;
    return it->second;
  };

  std::vector<Representation<F>> terms;
  std::vector<std::vector<Matrix<F>>> diffs;
  const auto& edges = b.hasse_edges();
  for (int m = lo; m <= hi; ++m) {
    auto mi = static_cast<std::size_t>(m - lo);
    std::vector<std::size_t> dims(b.size());
    for (std::size_t t = 0; t < b.size(); ++t) dims[t] = totals[t][mi];
    std::vector<Matrix<F>> em;
    for (auto [s, t] : edges) {
      Matrix<F> inc(totals[t][mi], totals[s][mi]);
      for (const auto& blk : res.layout[s][m]) {
        auto to = static_cast<std::size_t>(offsets[t][mi][blk.chain]);
        for (std::size_t k = 0; k < blk.dim; ++k) inc(to + k, blk.offset + k) = F::from_int(1);
      }
      em.push_back(std::move(inc));
    }
    terms.push_back(Representation<F>::unchecked(u.target, std::move(dims), std::move(em)));
    std::vector<Matrix<F>> dm;
    for (std::size_t t = 0; t < b.size(); ++t) {
      std::size_t rows = m > lo ? totals[t][mi - 1] : 0;
      Matrix<F> d(rows, totals[t][mi]);
      if (m > lo) {
        for (const auto& blk : res.layout[t][m]) {
          if (blk.dim == 0) continue;
          const auto& c = res.chains[blk.chain];
          const int p = detail::steps(c);
          // internal differential with sign (-1)^p
          if (x.in_range(blk.inner - 1) && x.dim(blk.inner - 1, c.front()) > 0) {
            long to = offsets[t][mi - 1][blk.chain];
            Matrix<F> dx = x.d(blk.inner, c.front());
            if (p % 2 == 1) dx = -dx;
            d.set_block(static_cast<std::size_t>(to), blk.offset, dx);
          }
          if (p == 0) continue;
          if (first_face[blk.chain]) {
            long to = offsets[t][mi - 1][*first_face[blk.chain]];
            d.set_block(static_cast<std::size_t>(to), blk.offset, structure(blk.inner, c[0], c[1]));
          }
          for (const auto& f : inner_faces[blk.chain]) {
            auto to = static_cast<std::size_t>(offsets[t][mi - 1][f.chain]);
            F s = F::from_int(f.sign);
            for (std::size_t k = 0; k < blk.dim; ++k) d(to + k, blk.offset + k) = d(to + k, blk.offset + k) + s;
          }
        }
      }
      dm.push_back(std::move(d));
    }
    diffs.push_back(std::move(dm));
  }
  auto value = DiagramComplex<F>::unchecked(u.target, lo, std::move(terms), std::move(diffs));
  // keep degrees aligned with the layout; drop only empty ends
  res.value = value.trimmed();
  return res;
}

// Right Kan extension along u: the dual of the left Kan extension along
// the opposite map. The stalk at b is the cobar complex over {a : b <= u(a)}.
template <Field F>
KanResult<F> rkan(const PosetMap& u, const DiagramComplex<F>& x) {
  detail::require(same_poset(u.source, x.shape()), "rkan: complex does not live on the source of the map");
  auto uop = opposite(u);
  auto res = lkan(uop, dual_complex(x, uop.source));
  res.value = dual_complex(res.value, u.target);
  res.cobar = true;
  return res;
}

// ------------------------------------------------------------- units and counits

// Counit lkan(u, u^*y) -> y: the augmentation on single-element chains.
template <Field F>
ChainMap<F> lkan_counit(const PosetMap& u, const DiagramComplex<F>& y, const KanResult<F>& l) {
  return ChainMap<F>::build(l.value, y, [&](int m, std::size_t b) {
    Matrix<F> e(y.dim(m, b), l.value.dim(m, b));
    auto it = l.layout[b].find(m);
    if (it == l.layout[b].end()) return e;
    for (const auto& blk : it->second) {
      const auto& c = l.chains[blk.chain];
      if (c.size() != 1 || blk.dim == 0) continue;
      e.set_block(0, blk.offset, y.map(m, u(c[0]), b));
    }
    return e;
  });
}

template <Field F>
ChainMap<F> lkan_counit(const PosetMap& u, const DiagramComplex<F>& y) {
  return lkan_counit(u, y, lkan(u, restrict(u, y)));
}

// Unit y -> rkan(u, u^*y), dual to the counit above.
template <Field F>
ChainMap<F> rkan_unit(const PosetMap& u, const DiagramComplex<F>& y) {
  auto uop = opposite(u);
  auto dy = dual_complex(y, uop.target);
  auto c = lkan_counit(uop, dy);
  return dual_map(c, dual_complex(c.source(), u.target), y);
}

// x <- lkan(id, x) -> u^* lkan(u, x). The left leg is a quasi-isomorphism;
// the unit is an isomorphism exactly when the right leg is one.
template <Field F>
struct UnitSpan {
  DiagramComplex<F> resolution;
  ChainMap<F> to_source;
  ChainMap<F> to_target;
};

namespace detail {

// The map of bar complexes induced by sending chains of `l_src` to chains of
// `l_tgt` through f; degenerate images go to zero. `at` translates stalks.
template <Field F, class ChainFn>
ChainMap<F> chain_transfer(const KanResult<F>& l_src, const DiagramComplex<F>& src, const KanResult<F>& l_tgt,
                           const DiagramComplex<F>& tgt, const std::function<std::size_t(std::size_t)>& at,
                           ChainFn&& image) {
  return ChainMap<F>::build(src, tgt, [&](int m, std::size_t v) {
    Matrix<F> out(tgt.dim(m, v), src.dim(m, v));
    auto it = l_src.layout[v].find(m);
    if (it == l_src.layout[v].end()) return out;
    const auto& tl = l_tgt.layout[at(v)];
    auto jt = tl.find(m);
    for (const auto& blk : it->second) {
      if (blk.dim == 0) continue;
      Chain c = image(l_src.chains[blk.chain]);
      bool degenerate = false;
      for (std::size_t k = 1; k < c.size(); ++k) degenerate |= c[k] == c[k - 1];
      if (degenerate) continue;
      auto id = l_tgt.find_chain(c);
      require(id.has_value() && jt != tl.end(), "chain transfer: image chain missing");
      for (const auto& tb : jt->second)
        if (tb.chain == *id && tb.inner == blk.inner) {
          out.set_block(tb.offset, blk.offset, Matrix<F>::identity(blk.dim));
          break;
        }
    }
    return out;
  });
}

}  // namespace detail

template <Field F>
UnitSpan<F> lkan_unit(const PosetMap& u, const DiagramComplex<F>& x) {
  auto id = identity_map(u.source);
  auto q = lkan(id, x);
  auto l = lkan(u, x);
  auto target = restrict(u, l.value);
  auto back = lkan_counit(id, x, q);
  auto fwd = detail::chain_transfer(q, q.value, l, target, [&](std::size_t a) { return u(a); },
                                    [](const Chain& c) { return c; });
  return {q.value, std::move(back), std::move(fwd)};
}

// u^* rkan(u, x) -> D lkan(id, Dx) <- x, dual to lkan_unit.
template <Field F>
struct CounitCospan {
  DiagramComplex<F> coresolution;
  ChainMap<F> from_source;
  ChainMap<F> from_target;
};

template <Field F>
CounitCospan<F> rkan_counit(const PosetMap& u, const DiagramComplex<F>& x) {
  auto uop = opposite(u);
  auto span = lkan_unit(uop, dual_complex(x, uop.source));
  auto co = dual_complex(span.resolution, u.source);
  return {co, dual_map(span.to_source, co, x), dual_map(span.to_target, co, restrict(u, rkan(u, x).value))};
}

// ------------------------------------------------------------- mates

// p: C -> A, v: C -> D, u: A -> B, q: D -> B with u p <= q v.
struct SquareWithCell {
  PosetMap p, v, u, q;

  std::optional<std::string> check() const {
    if (!same_poset(p.source, v.source)) return std::string("p and v must share a source");
    if (!same_poset(p.target, u.source)) return std::string("p must land in the source of u");
    if (!same_poset(v.target, q.source)) return std::string("v must land in the source of q");
    if (!same_poset(u.target, q.target)) return std::string("u and q must share a target");
    for (std::size_t c = 0; c < p.source->size(); ++c)
      if (!u.target->leq(u(p(c)), q(v(c))))
        return "no 2-cell: u p > q v at " + p.source->label(c);
    return std::nullopt;
  }
};

// The mate lkan(v, p^*x) -> q^* lkan(u, x), chain c |-> p(c).
template <Field F>
ChainMap<F> canonical_mate(const SquareWithCell& sq, const DiagramComplex<F>& x) {
  if (auto err = sq.check()) throw UsageError("canonical_mate: " + *err);
  auto ls = lkan(sq.v, restrict(sq.p, x));
  auto lt = lkan(sq.u, x);
  auto target = restrict(sq.q, lt.value);
  return detail::chain_transfer(ls, ls.value, lt, target, [&](std::size_t d) { return sq.q(d); },
                                [&](const Chain& c) {
                                  Chain out;
                                  for (auto e : c) out.push_back(sq.p(e));
                                  return out;
                                });
}

// The comma square (u/b) -> A, (u/b) -> *, A -> B, * -> B.
inline SquareWithCell slice_square(const PosetMap& u, std::size_t b) {
  auto s = slice_under(u, b);
  auto pt = point();
  return {s.inclusion, constant_map(s.poset, pt, 0), u, constant_map(pt, u.target, b)};
}

// ------------------------------------------------------------- extension by zero

// Extension by zero along a convex full embedding.
template <Field F>
DiagramComplex<F> extend_by_zero(const PosetMap& u, const DiagramComplex<F>& x) {
  detail::require(u.is_full_embedding() && is_convex(u), "extend_by_zero: map is not a convex embedding");
  detail::require(same_poset(u.source, x.shape()), "extend_by_zero: complex does not live on the source");
  const auto& b = *u.target;
  std::vector<long> pre(b.size(), -1);
  for (std::size_t a = 0; a < u.source->size(); ++a) pre[u(a)] = static_cast<long>(a);
  if (x.empty()) return DiagramComplex<F>(u.target);
  return DiagramComplex<F>::build(
      u.target, x.lo(), x.hi(),
      [&](int n) {
        std::vector<std::size_t> dims(b.size());
        for (std::size_t t = 0; t < b.size(); ++t) dims[t] = pre[t] < 0 ? 0 : x.dim(n, static_cast<std::size_t>(pre[t]));
        return Representation<F>::from_callback(
            u.target, dims,
            [&](std::size_t s, std::size_t t) {
              if (pre[s] < 0 || pre[t] < 0) return Matrix<F>(dims[t], dims[s]);
              return x.map(n, static_cast<std::size_t>(pre[s]), static_cast<std::size_t>(pre[t]));
            },
            false);
      },
      [&](int n, std::size_t t) {
        if (pre[t] < 0) return Matrix<F>();
        return x.d(n, static_cast<std::size_t>(pre[t]));
      });
}

enum class Side { Left, Right };

template <Field F>
struct ExtZeroResult {
  DiagramComplex<F> value;
  // Left: lkan(u, x) -> value. Right: value -> rkan(u, x).
  ChainMap<F> comparison;
};

// Left extension by zero along a cosieve, right extension along a sieve,
// with the comparison to the bar construction.
template <Field F>
ExtZeroResult<F> ext_zero(const PosetMap& u, const DiagramComplex<F>& x, Side side) {
  if (side == Side::Left) {
    detail::require(is_cosieve(u), "ext_zero: left extension by zero needs a cosieve");
    auto e = extend_by_zero(u, x);
    auto l = lkan(u, x);
    std::vector<long> pre(u.target->size(), -1);
    for (std::size_t a = 0; a < u.source->size(); ++a) pre[u(a)] = static_cast<long>(a);
    auto cmp = ChainMap<F>::build(l.value, e, [&](int m, std::size_t b) {
      Matrix<F> out(e.dim(m, b), l.value.dim(m, b));
      if (pre[b] < 0) return out;
      auto it = l.layout[b].find(m);
      if (it == l.layout[b].end()) return out;
      for (const auto& blk : it->second) {
        const auto& c = l.chains[blk.chain];
        if (c.size() == 1 && blk.dim > 0) out.set_block(0, blk.offset, x.map(m, c[0], static_cast<std::size_t>(pre[b])));
      }
      return out;
    });
    return {std::move(e), std::move(cmp)};
  }
  detail::require(is_sieve(u), "ext_zero: right extension by zero needs a sieve");
  auto uop = opposite(u);
  auto left = ext_zero(uop, dual_complex(x, uop.source), Side::Left);
  auto e = dual_complex(left.value, u.target);
  auto r = dual_complex(left.comparison.source(), u.target);
  return {e, dual_map(left.comparison, r, e)};
}

// ------------------------------------------------------------- (co)limits

template <Field F>
DiagramComplex<F> hocolim(const DiagramComplex<F>& x) {
  return lkan(constant_map(x.shape(), point(), 0), x).value;
}

template <Field F>
DiagramComplex<F> holim(const DiagramComplex<F>& x) {
  return rkan(constant_map(x.shape(), point(), 0), x).value;
}

// The map tw(A)^op -> A^op x A, (a <= b) |-> (b, a).
struct CoendShape {
  PosetPtr twisted_op;
  ProductPoset product;
  PosetMap to_product;
};

inline CoendShape coend_shape(const PosetPtr& a) {
  auto tw = twisted_category(a);
  auto twop = opposite(tw.poset);
  auto prod = product(opposite(a), a);
  std::vector<std::size_t> idx(twop->size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto [x, y] = tw.pairs[op_index(*tw.poset, i)];
    idx[i] = prod.index(op_index(*a, y), x);
  }
  return {twop, prod, PosetMap::make(twop, prod.poset, std::move(idx))};
}

// Coend of a complex over A^op x A (first factor contravariant).
template <Field F>
DiagramComplex<F> coend(const PosetPtr& a, const DiagramComplex<F>& x) {
  auto cs = coend_shape(a);
  detail::require(same_poset(x.shape(), cs.product.poset), "coend: complex must live on A^op x A");
  return hocolim(restrict(cs.to_product, x));
}

// ------------------------------------------------------------- decomposition

// The filtration of A by the sub-posets A_{<=p} = {a : f(a) <= p}, as a
// Grothendieck construction over P, with its forgetful map back to A.
struct Filtration {
  Grothendieck total;
  PosetMap forget;
  std::vector<SubPoset> pieces;
};

inline Filtration filtration(const PosetMap& f) {
  const auto& base = f.target;
  std::vector<SubPoset> pieces;
  std::vector<PosetPtr> fibers;
  for (std::size_t p = 0; p < base->size(); ++p) {
    pieces.push_back(full_subposet(f.source, [&](std::size_t a) { return base->leq(f(a), p); }));
    fibers.push_back(pieces.back().poset);
  }
  auto g = grothendieck(base, fibers, [&](std::size_t c, std::size_t d) {
    std::vector<std::size_t> idx;
    const auto& from = pieces[c].inclusion;
    const auto& to = pieces[d].inclusion;
    for (std::size_t i = 0; i < from.source->size(); ++i) {
      std::size_t a = from(i);
      for (std::size_t j = 0; j < to.source->size(); ++j)
        if (to(j) == a) idx.push_back(j);
    }
    return PosetMap{fibers[c], fibers[d], std::move(idx)};
  });
  std::vector<std::size_t> fg(g.poset->size());
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = pieces[g.pairs[i].first].inclusion(g.pairs[i].second);
  auto forget = PosetMap::make(g.poset, f.source, std::move(fg));
  return {std::move(g), std::move(forget), std::move(pieces)};
}

// The cocone over P whose value at p is the colimit over A_{<=p} and whose
// value at the cone point is the colimit over A.
template <Field F>
struct Decomposition {
  DiagramComplex<F> base_value;  // over P
  SubPoset cocone;
  DiagramComplex<F> value;
};

template <Field F>
Decomposition<F> decompose_colimit(const PosetMap& f, const DiagramComplex<F>& x) {
  auto filt = filtration(f);
  auto over_p = lkan(filt.total.projection, restrict(filt.forget, x)).value;
  auto cc = cocone(f.target);
  auto value = lkan(cc.inclusion, over_p).value;
  return {std::move(over_p), std::move(cc), std::move(value)};
}

}  // namespace cubecalc
