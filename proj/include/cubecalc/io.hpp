#pragma once

// JSON reading and writing for posets, fields, representations, complexes,
// chain maps, poset maps, Betti tables and check reports. Semantic errors
// name the JSON pointer of the offending node; syntax errors name the line
// and column.

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubecalc/complex.hpp"
#include "cubecalc/report.hpp"

namespace cubecalc::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

inline const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing key \"" + key + "\"");
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    try {
      return cubecalc::detail::parse_int(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected an integer");
}

inline std::size_t as_index(const Json& j, const std::string& where) {
  auto v = as_int(j, where);
  if (v < 0) fail(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Stable topological sort so that the element order extends the relation.
inline std::vector<std::size_t> linear_extension(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& rel,
                                                 const std::vector<std::string>& labels) {
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> indeg(n, 0), order;
  for (auto [i, j] : rel)
    if (i != j) {
      out[i].push_back(j);
      ++indeg[j];
    }
  std::vector<char> done(n, 0);
  while (order.size() < n) {
    bool moved = false;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && indeg[v] == 0) {
        done[v] = 1;
        order.push_back(v);
        for (auto w : out[v]) --indeg[w];
        moved = true;
        break;
      }
    if (!moved) {
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v]) throw UsageError("order relation is not antisymmetric near '" + labels[v] + "'");
    }
  }
  return order;
}

}  // namespace detail

inline Json parse_text(const std::string& text, const std::string& source = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": malformed JSON at " + detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

inline std::string dump(const Json& j) { return j.dump(2); }

// ------------------------------------------------------------- posets

// "point", "cube:n", "chunk:n:k:l", "chunkcat:n", "tw:<name>"
inline PosetPtr named_poset(const std::string& name, const std::string& where = "") {
  auto parts = [&](std::size_t off) {
    std::vector<int> v;
    std::stringstream ss(name.substr(off));
    std::string tok;
    while (std::getline(ss, tok, ':')) {
      try {
        v.push_back(static_cast<int>(cubecalc::detail::parse_int(tok)));
      } catch (const std::exception&) {
        detail::fail(where, "bad poset name '" + name + "'");
      }
    }
    return v;
  };
  try {
    if (name == "point") return point();
    if (name.rfind("tw:", 0) == 0) return twisted_category(named_poset(name.substr(3), where)).poset;
    if (name.rfind("cube:", 0) == 0) {
      auto v = parts(5);
      if (v.size() != 1) detail::fail(where, "expected cube:<n>");
      return build_cube(v[0]);
    }
    if (name.rfind("chunk:", 0) == 0) {
      auto v = parts(6);
      if (v.size() != 3) detail::fail(where, "expected chunk:<n>:<k>:<l>");
      return build_chunk({v[0], v[1], v[2]}).poset;
    }
    if (name.rfind("chunkcat:", 0) == 0) {
      auto v = parts(9);
      if (v.size() != 1) detail::fail(where, "expected chunkcat:<n>");
      return chunk_category(v[0]).poset;
    }
  } catch (const UsageError& e) {
    detail::fail(where, e.what());
  }
  detail::fail(where, "unknown poset name '" + name + "'");
}

inline PosetPtr poset_from_json(const Json& j, const std::string& where = "") {
  if (j.is_string()) return named_poset(j.get<std::string>(), where);
  const Json& el = detail::member(j, "elements", where);
  if (!el.is_array()) detail::fail(where + "/elements", "expected an array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (!el[i].is_string()) detail::fail(where + "/elements/" + std::to_string(i), "expected a string");
    labels.push_back(el[i].get<std::string>());
  }
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  if (j.contains("relations")) {
    const Json& r = j["relations"];
    if (!r.is_array()) detail::fail(where + "/relations", "expected an array of pairs");
    for (std::size_t i = 0; i < r.size(); ++i) {
      auto w = where + "/relations/" + std::to_string(i);
      if (!r[i].is_array() || r[i].size() != 2) detail::fail(w, "expected a pair [i, j]");
      auto a = detail::as_index(r[i][0], w + "/0"), b = detail::as_index(r[i][1], w + "/1");
      if (a >= labels.size() || b >= labels.size()) detail::fail(w, "element index out of range");
      rel.emplace_back(a, b);
    }
  }
  try {
    return FinPoset::from_relations(labels, rel);
  } catch (const UsageError& e) {
    // out-of-order elements: sort and retry; other failures are reported
    std::string msg = e.what();
    if (msg.find("linear extension") == std::string::npos) detail::fail(where, msg);
  }
  try {
    auto order = detail::linear_extension(labels.size(), rel, labels);
    std::vector<std::size_t> pos(labels.size());
    std::vector<std::string> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
      pos[order[i]] = i;
      sorted.push_back(labels[order[i]]);
    }
    for (auto& [a, b] : rel) {
      a = pos[a];
      b = pos[b];
    }
    return FinPoset::from_relations(sorted, rel);
  } catch (const UsageError& e) {
    detail::fail(where, e.what());
  }
}

// Named form when the poset is a cube, a chunk or the point; otherwise the
// elements with their Hasse relations.
inline Json poset_to_json(const PosetPtr& p) {
  if (is_point(p)) return "point";
  const auto& labels = p->labels();
  bool bits = !labels.empty() && labels[0] != "*";
  std::size_t n = bits ? labels[0].size() : 0;
  for (auto& l : labels)
    bits = bits && l.size() == n && std::all_of(l.begin(), l.end(), [](char c) { return c == '0' || c == '1'; });
  if (bits && n <= static_cast<std::size_t>(kCubeHardCap)) {
    int lo = static_cast<int>(n), hi = 0;
    for (auto& l : labels) {
      int c = static_cast<int>(std::count(l.begin(), l.end(), '1'));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    ChunkSpec s{static_cast<int>(n), lo, hi};
    if (same_poset(build_chunk(s).poset, p))
      return s.is_full() ? "cube:" + std::to_string(n)
                         : "chunk:" + std::to_string(s.n) + ":" + std::to_string(s.k) + ":" + std::to_string(s.l);
  }
  Json j;
  j["elements"] = labels;
  Json rel = Json::array();
  for (auto [a, b] : p->hasse_edges()) rel.push_back({a, b});
  j["relations"] = rel;
  return j;
}

// ------------------------------------------------------------- fields

inline FieldSpec field_from_json(const Json& j, const std::string& where = "") {
  if (j.is_string()) {
    try {
      return FieldSpec::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      detail::fail(where, e.what());
    }
  }
  const Json& kind = detail::member(j, "kind", where);
  if (!kind.is_string()) detail::fail(where + "/kind", "expected \"Fp\" or \"Q\"");
  auto k = kind.get<std::string>();
  if (k == "Q" || k == "q") return {FieldSpec::Kind::Rationals, 0};
  if (k == "Fp" || k == "fp") {
    auto p = detail::as_int(detail::member(j, "p", where), where + "/p");
    if (p <= 1 || p > 0xffffffffLL || !is_prime(static_cast<std::uint64_t>(p)))
      detail::fail(where + "/p", "characteristic must be prime");
    return {FieldSpec::Kind::PrimeField, static_cast<std::uint32_t>(p)};
  }
  detail::fail(where + "/kind", "unknown field kind '" + k + "'");
}

inline Json field_to_json(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::Rationals) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp"}, {"p", f.characteristic}};
}

// ------------------------------------------------------------- matrices

template <Field F>
F scalar_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return F::from_int(j.get<std::int64_t>());
    if (j.is_string()) return F::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    detail::fail(where, e.what());
  }
  detail::fail(where, "expected a field element as a decimal string");
}

// Rows of decimal strings; an absent or empty matrix is zero of the given size.
template <Field F>
Matrix<F> matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (j.is_null() || (j.is_array() && j.empty() && (rows == 0 || cols == 0))) return Matrix<F>(rows, cols);
  if (!j.is_array()) detail::fail(where, "expected a matrix (array of rows)");
  if (j.size() != rows)
    detail::fail(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  Matrix<F> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto w = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols)
      detail::fail(w, "expected a row of " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json<F>(j[r][c], w + "/" + std::to_string(c));
  }
  return m;
}

template <Field F>
Json matrix_to_json(const Matrix<F>& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    j.push_back(row);
  }
  return j;
}

// ------------------------------------------------------------- representations

namespace detail {

inline std::size_t element(const PosetPtr& p, const std::string& key, const std::string& where) {
  if (auto i = p->find(key)) return *i;
  try {
    auto i = static_cast<std::size_t>(cubecalc::detail::parse_int(key));
    if (i < p->size()) return i;
  } catch (const std::exception&) {
  }
  fail(where, "no element '" + key + "'");
}

inline std::string edge_key(const PosetPtr& p, std::size_t a, std::size_t b) {
  return p->label(a) + "->" + p->label(b);
}

}  // namespace detail

// {"poset": ..., "dims": [...], "maps": {"a->b": matrix}} over Hasse edges.
// The poset key may be omitted when `shape` is given.
template <Field F>
Representation<F> rep_from_json(const Json& j, PosetPtr shape = nullptr, const std::string& where = "") {
  if (!j.is_object()) detail::fail(where, "expected a representation object");
  if (j.contains("poset")) {
    auto p = poset_from_json(j["poset"], where + "/poset");
    if (shape && !same_poset(shape, p)) detail::fail(where + "/poset", "poset differs from the enclosing one");
    shape = p;
  }
  if (!shape) detail::fail(where, "missing key \"poset\"");
  const Json& dj = detail::member(j, "dims", where);
  if (!dj.is_array() || dj.size() != shape->size())
    detail::fail(where + "/dims", "expected " + std::to_string(shape->size()) + " dimensions");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) dims.push_back(detail::as_index(dj[i], where + "/dims/" + std::to_string(i)));
  std::map<std::pair<std::size_t, std::size_t>, Matrix<F>> given;
  if (j.contains("maps")) {
    const Json& mj = j["maps"];
    if (!mj.is_object()) detail::fail(where + "/maps", "expected an object keyed by \"a->b\"");
    for (auto it = mj.begin(); it != mj.end(); ++it) {
      auto w = where + "/maps/" + it.key();
      auto arrow = it.key().find("->");
      if (arrow == std::string::npos) detail::fail(w, "key must have the form a->b");
      auto a = detail::element(shape, it.key().substr(0, arrow), w);
      auto b = detail::element(shape, it.key().substr(arrow + 2), w);
      const auto& edges = shape->hasse_edges();
      if (std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end())
        detail::fail(w, "not a Hasse edge");
      given[{a, b}] = matrix_from_json<F>(it.value(), dims[b], dims[a], w);
    }
  }
  std::vector<Matrix<F>> maps;
  for (auto e : shape->hasse_edges()) {
    auto it = given.find(e);
    maps.push_back(it == given.end() ? Matrix<F>(dims[e.second], dims[e.first]) : it->second);
  }
  try {
    return Representation<F>::make(shape, dims, maps);
  } catch (const UsageError& e) {
    detail::fail(where, e.what());
  }
}

template <Field F>
Json rep_to_json(const Representation<F>& r, bool with_poset = true) {
  Json j;
  if (with_poset) j["poset"] = poset_to_json(r.shape());
  j["dims"] = r.dims();
  Json maps = Json::object();
  for (auto [a, b] : r.shape()->hasse_edges())
    if (r.dim(a) > 0 && r.dim(b) > 0) maps[detail::edge_key(r.shape(), a, b)] = matrix_to_json(r.map(a, b));
  j["maps"] = maps;
  return j;
}

// ------------------------------------------------------------- complexes

namespace detail {

template <Field F>
void require_field(const Json& j, const std::string& where) {
  if (!j.contains("field")) return;
  auto f = field_from_json(j["field"], where + "/field");
  if (!(f == FieldSpec::of<F>()))
    fail(where + "/field", "file is over " + f.to_string() + " but was read over " + FieldSpec::of<F>().to_string());
}

// {"label": matrix} per element; absent entries are zero.
template <Field F>
std::vector<Matrix<F>> components_from_json(const Json& j, const PosetPtr& p, const std::vector<std::size_t>& rows,
                                            const std::vector<std::size_t>& cols, const std::string& where) {
  std::vector<Matrix<F>> out;
  for (std::size_t v = 0; v < p->size(); ++v) out.emplace_back(rows[v], cols[v]);
  if (j.is_null()) return out;
  if (!j.is_object()) fail(where, "expected an object keyed by element label");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto w = where + "/" + it.key();
    auto v = element(p, it.key(), w);
    out[v] = matrix_from_json<F>(it.value(), rows[v], cols[v], w);
  }
  return out;
}

template <Field F>
Json components_to_json(const PosetPtr& p, const std::vector<Matrix<F>>& comps) {
  Json j = Json::object();
  for (std::size_t v = 0; v < p->size(); ++v)
    if (comps[v].rows() > 0 && comps[v].cols() > 0) j[p->label(v)] = matrix_to_json(comps[v]);
  return j;
}

}  // namespace detail

// {"poset", "field", "degrees": {"n": rep}, "differentials": {"n": {label: matrix}}}
// with d_n from degree n to degree n-1.
template <Field F>
DiagramComplex<F> complex_from_json(const Json& j, const std::string& where = "") {
  if (!j.is_object()) detail::fail(where, "expected a complex object");
  detail::require_field<F>(j, where);
  auto shape = poset_from_json(detail::member(j, "poset", where), where + "/poset");
  const Json& dj = detail::member(j, "degrees", where);
  if (!dj.is_object()) detail::fail(where + "/degrees", "expected an object keyed by degree");
  std::map<int, Representation<F>> terms;
  for (auto it = dj.begin(); it != dj.end(); ++it) {
    auto w = where + "/degrees/" + it.key();
    int n = static_cast<int>(detail::as_int(Json(it.key()), w));
    terms.emplace(n, rep_from_json<F>(it.value(), shape, w));
  }
  if (terms.empty()) return DiagramComplex<F>(shape);
  int lo = terms.begin()->first, hi = terms.rbegin()->first;
  auto zero = Representation<F>::zero(shape);
  auto term = [&](int n) { return terms.count(n) ? terms.at(n) : zero; };
  const Json* diffs = j.contains("differentials") ? &j["differentials"] : nullptr;
  if (diffs && !diffs->is_object()) detail::fail(where + "/differentials", "expected an object keyed by degree");
  std::map<int, std::vector<Matrix<F>>> d;
  if (diffs)
    for (auto it = diffs->begin(); it != diffs->end(); ++it) {
      auto w = where + "/differentials/" + it.key();
      int n = static_cast<int>(detail::as_int(Json(it.key()), w));
      if (n <= lo || n > hi) detail::fail(w, "differential outside the degree range");
      d[n] = detail::components_from_json<F>(it.value(), shape, term(n - 1).dims(), term(n).dims(), w);
    }
  std::vector<Representation<F>> ts;
  std::vector<std::vector<Matrix<F>>> ds;
  for (int n = lo; n <= hi; ++n) {
    ts.push_back(term(n));
    if (d.count(n)) {
      ds.push_back(d[n]);
    } else {
      std::vector<Matrix<F>> z;
      for (std::size_t v = 0; v < shape->size(); ++v)
        z.emplace_back(n == lo ? 0 : term(n - 1).dim(v), term(n).dim(v));
      ds.push_back(std::move(z));
    }
  }
  try {
    return DiagramComplex<F>::make(shape, lo, std::move(ts), std::move(ds));
  } catch (const UsageError& e) {
    detail::fail(where, e.what());
  }
}

template <Field F>
Json complex_to_json(const DiagramComplex<F>& x) {
  Json j;
  j["poset"] = poset_to_json(x.shape());
  j["field"] = field_to_json(FieldSpec::of<F>());
  Json deg = Json::object(), diff = Json::object();
  auto t = x.trimmed();
  for (int n = t.lo(); n <= t.hi() && !t.empty(); ++n) {
    deg[std::to_string(n)] = rep_to_json(t.term(n), false);
    if (n > t.lo()) {
      std::vector<Matrix<F>> comps;
      for (std::size_t v = 0; v < t.shape()->size(); ++v) comps.push_back(t.d(n, v));
      auto c = detail::components_to_json(t.shape(), comps);
      if (!c.empty()) diff[std::to_string(n)] = c;
    }
  }
  j["degrees"] = deg;
  j["differentials"] = diff;
  return j;
}

// ------------------------------------------------------------- chain maps

// {"source": complex, "target": complex, "components": {"n": {label: matrix}}}
template <Field F>
ChainMap<F> chain_map_from_json(const Json& j, const std::string& where = "") {
  auto s = complex_from_json<F>(detail::member(j, "source", where), where + "/source");
  auto t = complex_from_json<F>(detail::member(j, "target", where), where + "/target");
  if (!same_poset(s.shape(), t.shape())) detail::fail(where, "source and target live on different posets");
  ChainMap<F> f(s, t);
  if (j.contains("components")) {
    const Json& cj = j["components"];
    if (!cj.is_object()) detail::fail(where + "/components", "expected an object keyed by degree");
    for (auto it = cj.begin(); it != cj.end(); ++it) {
      auto w = where + "/components/" + it.key();
      int n = static_cast<int>(detail::as_int(Json(it.key()), w));
      if (!s.in_range(n)) detail::fail(w, "degree outside the source support");
      std::vector<std::size_t> rows, cols;
      for (std::size_t v = 0; v < s.shape()->size(); ++v) {
        rows.push_back(t.dim(n, v));
        cols.push_back(s.dim(n, v));
      }
      auto comps = detail::components_from_json<F>(it.value(), s.shape(), rows, cols, w);
      for (std::size_t v = 0; v < comps.size(); ++v) f.set(n, v, comps[v]);
    }
  }
  if (auto err = f.check()) detail::fail(where, "not a chain map: " + *err);
  return f;
}

template <Field F>
Json chain_map_to_json(const ChainMap<F>& f) {
  Json j;
  j["source"] = complex_to_json(f.source());
  j["target"] = complex_to_json(f.target());
  Json comps = Json::object();
  const auto& s = f.source();
  for (int n = s.lo(); n <= s.hi() && !s.empty(); ++n) {
    std::vector<Matrix<F>> c;
    for (std::size_t v = 0; v < s.shape()->size(); ++v) c.push_back(f.at(n, v));
    auto cj = detail::components_to_json(s.shape(), c);
    if (!cj.empty()) comps[std::to_string(n)] = cj;
  }
  j["components"] = comps;
  return j;
}

// ------------------------------------------------------------- poset maps

// {"source": poset, "target": poset, "assignment": {"a": "b", ...}} or a
// list of target labels in source order.
inline PosetMap poset_map_from_json(const Json& j, const std::string& where = "") {
  auto s = poset_from_json(detail::member(j, "source", where), where + "/source");
  auto t = poset_from_json(detail::member(j, "target", where), where + "/target");
  const Json& a = detail::member(j, "assignment", where);
  std::vector<std::size_t> idx(s->size());
  if (a.is_array()) {
    if (a.size() != s->size()) detail::fail(where + "/assignment", "expected one target per source element");
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto w = where + "/assignment/" + std::to_string(i);
      if (!a[i].is_string()) detail::fail(w, "expected a target label");
      idx[i] = detail::element(t, a[i].get<std::string>(), w);
    }
  } else if (a.is_object()) {
    std::vector<char> seen(s->size(), 0);
    for (auto it = a.begin(); it != a.end(); ++it) {
      auto w = where + "/assignment/" + it.key();
      auto i = detail::element(s, it.key(), w);
      if (!it.value().is_string()) detail::fail(w, "expected a target label");
      idx[i] = detail::element(t, it.value().get<std::string>(), w);
      seen[i] = 1;
    }
    for (std::size_t i = 0; i < s->size(); ++i)
      if (!seen[i]) detail::fail(where + "/assignment", "no image for '" + s->label(i) + "'");
  } else {
    detail::fail(where + "/assignment", "expected an array or an object");
  }
  try {
    return PosetMap::make(s, t, idx);
  } catch (const UsageError& e) {
    detail::fail(where, e.what());
  }
}

inline Json poset_map_to_json(const PosetMap& u) {
  Json a = Json::object();
  for (std::size_t i = 0; i < u.source->size(); ++i) a[u.source->label(i)] = u.target->label(u(i));
  return Json{{"source", poset_to_json(u.source)}, {"target", poset_to_json(u.target)}, {"assignment", a}};
}

// ------------------------------------------------------------- Betti tables

inline Json betti_to_json(const BettiTable& b) {
  Json rows = Json::object();
  for (auto& [n, r] : b.rows) rows[std::to_string(n)] = r;
  return Json{{"labels", b.labels}, {"rows", rows}};
}

inline BettiTable betti_from_json(const Json& j, const std::string& where = "") {
  BettiTable b;
  const Json& l = detail::member(j, "labels", where);
  if (!l.is_array()) detail::fail(where + "/labels", "expected an array");
  for (auto& s : l) b.labels.push_back(s.get<std::string>());
  const Json& r = detail::member(j, "rows", where);
  for (auto it = r.begin(); it != r.end(); ++it) {
    auto w = where + "/rows/" + it.key();
    int n = static_cast<int>(detail::as_int(Json(it.key()), w));
    std::vector<std::size_t> row;
    for (std::size_t i = 0; i < it.value().size(); ++i) row.push_back(detail::as_index(it.value()[i], w));
    if (row.size() != b.labels.size()) detail::fail(w, "row length differs from the number of labels");
    b.rows[n] = row;
  }
  return b;
}

// Degrees as rows, elements as columns.
inline std::string betti_markdown(const BettiTable& b) {
  std::ostringstream os;
  if (b.is_zero()) return "(zero)\n";
  os << "| degree |";
  for (auto& l : b.labels) os << ' ' << l << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < b.labels.size(); ++i) os << "---|";
  os << '\n';
  for (auto& [n, r] : b.rows) {
    os << "| " << n << " |";
    for (auto x : r) os << ' ' << x << " |";
    os << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------- reports

inline Json check_to_json(const CheckRecord& c) {
  Json j{{"name", c.name}, {"passed", c.passed}, {"mode", c.mode}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.betti.empty()) {
    Json b = Json::object();
    for (auto& [k, t] : c.betti) b[k] = betti_to_json(t);
    j["betti"] = b;
  }
  return j;
}

inline Json report_to_json(const Report& r, const Json& config = Json::object()) {
  Json checks = Json::array();
  for (auto& c : r.checks) checks.push_back(check_to_json(c));
  return Json{{"title", r.title},   {"config", config},         {"passed", r.passed()},
              {"checks", checks.size()}, {"failures", r.failures()}, {"results", checks}};
}

inline std::string report_markdown(const Report& r, const Json& config = Json::object()) {
  std::ostringstream os;
  os << "# " << r.title << "\n\n";
  if (!config.empty()) os << "config: `" << config.dump() << "`\n\n";
  os << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks.size() - r.failures() << "/" << r.checks.size()
     << " checks)\n\n";
  for (auto& c : r.checks) {
    os << "## " << (c.passed ? "[pass] " : "[FAIL] ") << c.name << "\n\n";
    if (!c.mode.empty()) os << "mode: " << c.mode << "\n\n";
    if (!c.detail.empty()) os << c.detail << "\n\n";
    for (auto& [k, t] : c.betti) os << k << ":\n\n" << betti_markdown(t) << '\n';
  }
  return os.str();
}

}  // namespace cubecalc::io
