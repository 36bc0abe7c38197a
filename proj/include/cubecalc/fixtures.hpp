#pragma once

// Named example objects shared by the tests, the acceptance suites and the
// `gen` subcommand.

#include <string>
#include <utility>

#include "cubecalc/complex.hpp"

namespace cubecalc::fixtures {

// The two complexes over the square with equal homology that are not
// quasi-isomorphic. Coordinates: "10" is one step right of the initial
// vertex, "01" one step down.
template <Field F>
DiagramComplex<F> egfield_a() {
  auto sq = build_cube(2);
  auto top = simple_rep<F>(sq, sq->index_of("11"));
  auto bottom = simple_rep<F>(sq, sq->index_of("00"));
  return DiagramComplex<F>::build(sq, 0, 1, [&](int n) { return n == 1 ? top : bottom; },
                                  [&](int, std::size_t v) { return Matrix<F>(bottom.dim(v), top.dim(v)); });
}

template <Field F>
DiagramComplex<F> egfield_b() {
  auto sq = build_cube(2);
  auto x1 = projective_rep<F>(sq, sq->index_of("01"));
  auto x0 = injective_rep<F>(sq, sq->index_of("01"));
  std::size_t bl = sq->index_of("01");
  return DiagramComplex<F>::build(sq, 0, 1, [&](int n) { return n == 1 ? x1 : x0; }, [&](int, std::size_t v) {
    return v == bl ? Matrix<F>::identity(1) : Matrix<F>(x0.dim(v), x1.dim(v));
  });
}

// The constant representation k placed in degree 0.
template <Field F>
DiagramComplex<F> constant_complex(const PosetPtr& p) {
  return concentrated(constant_rep<F>(p));
}

// k at the element labelled `label`, zero elsewhere.
template <Field F>
DiagramComplex<F> simple_complex(const PosetPtr& p, const std::string& label, int degree = 0) {
  return concentrated(simple_rep<F>(p, p->index_of(label)), degree);
}

}  // namespace cubecalc::fixtures
