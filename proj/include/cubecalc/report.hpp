#pragma once

// Check records shared by the property suites, the Serre checks and the CLI.

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "cubecalc/complex.hpp"

namespace cubecalc {

enum class InvariantMode { GradedRepComplete, BettiNecessary };

inline std::string to_string(InvariantMode m) {
  return m == InvariantMode::GradedRepComplete ? "graded-rep-complete" : "betti-necessary";
}

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string mode;  // how agreement was certified
  std::string detail;
  std::vector<std::pair<std::string, BettiTable>> betti;
};

struct Report {
  std::string title;
  std::vector<CheckRecord> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](auto& c) { return !c.passed; }));
  }
  CheckRecord& add(CheckRecord c) {
    checks.push_back(std::move(c));
    return checks.back();
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
  void sort_by_name() {
    std::stable_sort(checks.begin(), checks.end(), [](auto& a, auto& b) { return a.name < b.name; });
  }
};

namespace detail {

// " #007": sample suffixes that sort in run order.
inline std::string sample_tag(std::size_t t) {
  char buf[24];
  std::snprintf(buf, sizeof buf, " #%03zu", t);
  return buf;
}

}  // namespace detail

// Mode under which homology decides derived isomorphism: hereditary shapes
// are exactly those whose Hasse quiver has no commutativity relations.
inline InvariantMode invariant_mode_for(const FinPoset& p) {
  return has_unique_hasse_paths(p) ? InvariantMode::GradedRepComplete : InvariantMode::BettiNecessary;
}

// Compares two complexes over the same shape under the given mode. In
// graded-rep mode homology representations are matched degree by degree.
template <Field F>
CheckRecord compare_complexes(std::string name, const DiagramComplex<F>& a, const DiagramComplex<F>& b,
                              InvariantMode mode, std::uint64_t seed = 1) {
  CheckRecord c;
  c.name = std::move(name);
  c.mode = to_string(mode);
  auto ba = betti_table(a), bb = betti_table(b);
  c.betti = {{"lhs", ba}, {"rhs", bb}};
  if (!same_poset(a.shape(), b.shape())) {
    c.detail = "complexes live on different shapes";
    return c;
  }
  if (!(ba == bb)) {
    c.detail = "Betti tables differ";
    return c;
  }
  if (mode == InvariantMode::BettiNecessary) {
    c.passed = true;
    return c;
  }
  auto r = graded_isomorphic(homology(a), homology(b), 8, seed);
  c.passed = r.isomorphic;
  c.detail = r.detail;
  return c;
}

}  // namespace cubecalc
