// cubecalc: fixture generation, single operations on JSON complexes, and
// the seeded property suites.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "cubecalc/cubecalc.hpp"

using namespace cubecalc;
using io::Json;

namespace {

struct Options {
  std::string field = "fp:32003";
  bool field_given = false;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::string out;
  std::string format = "json";
  bool timing = false;
  int max_n = 4;
};

template <class T>
struct Tag {
  using type = T;
};

// Calls fn(Tag<F>{}) for the field named by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Rationals) return fn(Tag<Rational>{});
  if (spec.characteristic == 2) return fn(Tag<F2>{});
  if (spec.characteristic == 32003) return fn(Tag<F32003>{});
  throw UsageError("field " + spec.to_string() + " is not built in (available: fp:2, fp:32003, q)");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    io::write_file(o.out, text);
  }
}

void check_dimension(const Options& o, const PosetPtr& p) {
  if (auto c = cube_coords(*p); c && c->n > o.max_n)
    throw ResourceError("cube dimension " + std::to_string(c->n) + " exceeds CUBECALC_MAX_N=" +
                        std::to_string(o.max_n));
}

void check_dimension(const Options& o, int n) {
  if (n > o.max_n)
    throw ResourceError("cube dimension " + std::to_string(n) + " exceeds CUBECALC_MAX_N=" + std::to_string(o.max_n));
}

// The field stored in a complex file, checked against --field when given.
FieldSpec field_of(const Options& o, const Json& j, const std::string& path) {
  auto spec = io::field_from_json(io::detail::member(j, "field", path), path + ": /field");
  if (o.field_given && !(FieldSpec::parse(o.field).to_string() == spec.to_string()))
    throw UsageError(path + ": complex is over " + spec.to_string() + " but --field " + o.field + " was given");
  return spec;
}

template <Field F>
void emit_complex(const Options& o, const DiagramComplex<F>& x) {
  if (o.format == "md") emit(o, io::betti_markdown(betti_table(x)));
  else emit(o, io::dump(io::complex_to_json(x)));
}

void emit_report(const Options& o, const Report& r, const Json& config) {
  if (o.format == "md") emit(o, io::report_markdown(r, config));
  else emit(o, io::dump(io::report_to_json(r, config)));
}

ChunkSpec parse_chunk(const std::string& s) {
  ChunkSpec c;
  if (std::sscanf(s.c_str(), "%d:%d:%d", &c.n, &c.k, &c.l) != 3) throw UsageError("expected n:k:l, got '" + s + "'");
  c.validate();
  return c;
}

ChunkExtension parse_extension(const std::string& s) {
  if (s == "z") return ChunkExtension::Zero;
  if (s == "l") return ChunkExtension::Left;
  if (s == "r") return ChunkExtension::Right;
  throw UsageError("extension must be z, l or r, got '" + s + "'");
}

// ---------------------------------------------------------------- kan

struct KanArgs {
  std::string op, input, map;
};

int run_kan(const Options& o, const KanArgs& a) {
  auto j = io::read_file(a.input);
  return with_field(field_of(o, j, a.input), [&](auto tag) {
    using F = typename decltype(tag)::type;
    auto x = io::complex_from_json<F>(j, a.input + ": ");
    check_dimension(o, x.shape());
    if (a.op == "hocolim") return emit_complex(o, hocolim(x)), 0;
    if (a.op == "holim") return emit_complex(o, holim(x)), 0;
    if (a.map.empty()) throw UsageError("kan " + a.op + " needs --map");
    auto u = io::poset_map_from_json(io::read_file(a.map), a.map + ": ");
    check_dimension(o, u.target);
    if (a.op == "restrict") return emit_complex(o, restrict(u, x)), 0;
    if (a.op == "lkan") return emit_complex(o, reduce(lkan(u, x).value)), 0;
    if (a.op == "rkan") return emit_complex(o, reduce(rkan(u, x).value)), 0;
    if (a.op == "zero") return emit_complex(o, extend_by_zero(u, x)), 0;
    throw UsageError("unknown kan operation '" + a.op + "' (lkan, rkan, restrict, zero, hocolim, holim)");
  });
}

// ---------------------------------------------------------------- cube

struct CubeArgs {
  std::string op, input;
  int dir = 1, k = 0;
};

int run_cube(const Options& o, const CubeArgs& a) {
  auto j = io::read_file(a.input);
  return with_field(field_of(o, j, a.input), [&](auto tag) {
    using F = typename decltype(tag)::type;
    auto x = io::complex_from_json<F>(j, a.input + ": ");
    check_dimension(o, x.shape());
    int n = cube_dimension(x.shape());
    if (a.op == "cof") return emit_complex(o, reduce(cof_all(x))), 0;
    if (a.op == "fib") return emit_complex(o, reduce(fib_all(x))), 0;
    if (a.op == "cof-dir") return emit_complex(o, reduce(cof_dir(a.dir, x))), 0;
    if (a.op == "fib-dir") return emit_complex(o, reduce(fib_dir(a.dir, x))), 0;
    if (a.op == "tcof") return emit_complex(o, reduce(tcof_via_cones(x))), 0;
    if (a.op == "tcof-kan") return emit_complex(o, reduce(tcof_via_kan(x))), 0;
    if (a.op == "tfib") return emit_complex(o, reduce(tfib_via_fibers(x))), 0;

    Report r{"cube " + a.op, {}};
    DetectReport d;
    if (a.op == "cocartesian") d = is_cocartesian(x);
    else if (a.op == "cotruncated") d = is_k_cotruncated(x, a.k, true);
    else if (a.op == "truncated") d = is_k_truncated(x, a.k);
    else throw UsageError("unknown cube operation '" + a.op +
                          "' (cof, fib, cof-dir, fib-dir, tcof, tcof-kan, tfib, cocartesian, cotruncated, truncated)");
    CheckRecord c;
    c.name = a.op == "cocartesian" ? "cocartesian" : a.op + " k=" + std::to_string(a.k);
    c.passed = d.verdict;
    c.mode = "iterated cones";
    if (d.subcube_verdict) c.detail = std::string("subcube criterion: ") + (*d.subcube_verdict ? "yes" : "no");
    c.betti = d.witnesses;
    r.add(std::move(c));
    Json config{{"input", a.input}, {"n", n}};
    emit_report(o, r, config);
    return r.passed() ? 0 : 1;
  });
}

// ---------------------------------------------------------------- serre

struct SerreArgs {
  std::string op, input, chunk, to, ext = "l";
  int power = 1;
};

int run_serre(const Options& o, const SerreArgs& a) {
  auto s = parse_chunk(a.chunk);
  check_dimension(o, s.n);
  auto j = io::read_file(a.input);
  return with_field(field_of(o, j, a.input), [&](auto tag) {
    using F = typename decltype(tag)::type;
    auto x = io::complex_from_json<F>(j, a.input + ": ");
    if (a.op == "serre") return emit_complex(o, serre_power(s, x, a.power)), 0;
    if (a.op == "inverse") return emit_complex(o, serre_power(s, x, -a.power)), 0;
    if (a.op == "opposite") return emit_complex(o, opposite_serre(s, x)), 0;
    if (a.op == "phi") return emit_complex(o, phi(s, x)), 0;
    if (a.op == "psi") return emit_complex(o, psi(s, x)), 0;
    if (a.op == "phi-inverse") return emit_complex(o, phi_inverse(s, x)), 0;
    if (a.op == "psi-inverse") return emit_complex(o, psi_inverse(s, x)), 0;
    if (a.op == "extend") {
      auto to = a.to.empty() ? full_chunk(s.n) : parse_chunk(a.to);
      return emit_complex(o, chunk_extend(parse_extension(a.ext), s, to, x)), 0;
    }
    Report r{"serre " + a.op + " " + s.to_string(), {}};
    if (a.op == "colim-lim") {
      r.add(colim_lim_check(s, x));
    } else if (a.op == "naturality") {
      if (a.to.empty()) throw UsageError("serre naturality needs --to");
      r.add(serre_naturality_check(s, parse_chunk(a.to), x, o.seed));
    } else {
      throw UsageError("unknown serre operation '" + a.op +
                       "' (serre, inverse, opposite, phi, psi, phi-inverse, psi-inverse, extend, colim-lim, naturality)");
    }
    emit_report(o, r, Json{{"input", a.input}, {"chunk", a.chunk}});
    return r.passed() ? 0 : 1;
  });
}

// ---------------------------------------------------------------- homology

int run_homology(const Options& o, const std::string& input) {
  auto j = io::read_file(input);
  return with_field(field_of(o, j, input), [&](auto tag) {
    using F = typename decltype(tag)::type;
    auto b = betti_table(io::complex_from_json<F>(j, input + ": "));
    emit(o, o.format == "md" ? io::betti_markdown(b) : io::dump(io::betti_to_json(b)));
    return 0;
  });
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind, shape = "cube:2";
  int n = 2, k = 0;
};

int run_gen(const Options& o, const GenArgs& a) {
  return with_field(FieldSpec::parse(o.field), [&](auto tag) {
    using F = typename decltype(tag)::type;
    std::mt19937_64 rng(o.seed);
    auto cotruncated = [&](int n, int k) {
      check_dimension(o, n);
      if (k < 0 || k > n) throw UsageError("--k must lie in [0, n]");
      auto low = build_chunk({n, 0, k});
      return reduce(lkan(low.inclusion, random_complex<F>(low.poset, 0, 2, 3, rng)).value);
    };
    if (a.kind == "random-complex") {
      auto p = io::named_poset(a.shape);
      check_dimension(o, p);
      return emit_complex(o, random_complex<F>(p, 0, 2, 3, rng)), 0;
    }
    if (a.kind == "cocartesian") return emit_complex(o, cotruncated(a.n, a.n - 1)), 0;
    if (a.kind == "k-cotruncated") return emit_complex(o, cotruncated(a.n, a.k)), 0;
    if (a.kind == "noncy-X") return emit_complex(o, noncy_fixture<F>()), 0;
    if (a.kind == "egfield-A") return emit_complex(o, fixtures::egfield_a<F>()), 0;
    if (a.kind == "egfield-B") return emit_complex(o, fixtures::egfield_b<F>()), 0;
    if (a.kind == "egfield") {
      Json j{{"A", io::complex_to_json(fixtures::egfield_a<F>())}, {"B", io::complex_to_json(fixtures::egfield_b<F>())}};
      return emit(o, io::dump(j)), 0;
    }
    throw UsageError("unknown fixture kind '" + a.kind +
                     "' (random-complex, cocartesian, k-cotruncated, egfield, egfield-A, egfield-B, noncy-X)");
  });
}

// ---------------------------------------------------------------- run

Json suite_config(const Options& o, const std::string& suite, const FieldSpec& f) {
  Json c{{"suite", suite}, {"field", f.to_string()}, {"seed", o.seed}, {"max_n", o.max_n}};
  c["samples"] = o.samples ? Json(*o.samples) : Json("default");
  return c;
}

int run_suites(const Options& o, const std::string& which) {
  auto spec = FieldSpec::parse(o.field);
  SuiteConfig cfg{o.seed, o.samples, o.max_n};
  std::vector<std::string> names;
  if (which == "all") {
    for (const auto& s : suite_list()) names.push_back(s.name);
  } else if (find_suite(which)) {
    names.push_back(which);
  } else {
    throw UsageError("unknown suite '" + which + "' (expected a1 ... a16 or all)");
  }
  std::vector<Report> reports;
  Json timing = Json::object();
  for (const auto& n : names) {
    auto start = std::chrono::steady_clock::now();
    auto r = with_field(spec, [&](auto tag) { return run_suite<typename decltype(tag)::type>(n, cfg); });
    r.sort_by_name();
    timing[n] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    reports.push_back(std::move(r));
  }
  bool ok = std::all_of(reports.begin(), reports.end(), [](auto& r) { return r.passed(); });
  auto config = suite_config(o, which, spec);
  if (reports.size() == 1) {
    if (o.timing) config["seconds"] = timing[names[0]];
    emit_report(o, reports[0], config);
    return ok ? 0 : 1;
  }
  if (o.format == "md") {
    std::string text;
    for (std::size_t i = 0; i < reports.size(); ++i) text += io::report_markdown(reports[i], suite_config(o, names[i], spec));
    emit(o, text);
  } else {
    Json all{{"title", "all suites"}, {"config", config}, {"passed", ok}};
    Json summary = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      Json s{{"suite", names[i]}, {"passed", reports[i].passed()}, {"checks", reports[i].checks.size()},
             {"failures", reports[i].failures()}};
      if (o.timing) s["seconds"] = timing[names[i]];
      summary.push_back(s);
    }
    all["summary"] = summary;
    Json rs = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) rs.push_back(io::report_to_json(reports[i], suite_config(o, names[i], spec)));
    all["suites"] = rs;
    emit(o, io::dump(all));
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent cube diagrams over finite fields and Q: Kan extensions, cofibers, Serre functors."};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  if (const char* s = std::getenv("CUBECALC_MAX_N")) {
    try {
      o.max_n = std::stoi(s);
    } catch (const std::exception&) {
      std::cerr << "error: CUBECALC_MAX_N must be an integer\n";
      return 2;
    }
  }

  auto* field = app.add_option("--field", o.field, "fp:32003, fp:2 or q");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--samples", o.samples, "samples per check family (suites)");
  app.add_option("--out", o.out, "output file (default: stdout)");
  app.add_option("--format", o.format, "json or md")->check(CLI::IsMember({"json", "md"}));
  app.add_flag("--timing", o.timing, "record wall-clock seconds in suite reports");

  KanArgs ka;
  auto* kan = app.add_subcommand("kan", "Kan extensions, restriction, extension by zero, homotopy (co)limits");
  kan->add_option("op", ka.op, "lkan, rkan, restrict, zero, hocolim, holim")->required();
  kan->add_option("--in", ka.input, "input complex")->required();
  kan->add_option("--map", ka.map, "poset map file");

  CubeArgs ca;
  auto* cube = app.add_subcommand("cube", "cofibers, total cofibers and detection on n-cubes");
  cube->add_option("op", ca.op, "cof, fib, cof-dir, fib-dir, tcof, tcof-kan, tfib, cocartesian, cotruncated, truncated")
      ->required();
  cube->add_option("--in", ca.input, "input complex")->required();
  cube->add_option("--dir", ca.dir, "coordinate for cof-dir and fib-dir (1-based)");
  cube->add_option("--k", ca.k, "level for cotruncated and truncated");

  SerreArgs sa;
  auto* ser = app.add_subcommand("serre", "Serre functors and strong stable equivalences on chunks");
  ser->add_option("op", sa.op, "serre, inverse, opposite, phi, psi, phi-inverse, psi-inverse, extend, colim-lim, naturality")
      ->required();
  ser->add_option("--in", sa.input, "input complex on the chunk")->required();
  ser->add_option("--chunk", sa.chunk, "n:k:l")->required();
  ser->add_option("--power", sa.power, "power of S (serre, inverse)");
  ser->add_option("--to", sa.to, "target chunk n:k:l (extend, naturality)");
  ser->add_option("--ext", sa.ext, "z, l or r (extend)");

  std::string hin;
  auto* hom = app.add_subcommand("homology", "Betti table of a complex");
  hom->add_option("--in", hin, "input complex")->required();

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a fixture");
  gen->add_option("kind", ga.kind, "random-complex, cocartesian, k-cotruncated, egfield, egfield-A, egfield-B, noncy-X")
      ->required();
  gen->add_option("--n", ga.n, "cube dimension");
  gen->add_option("--k", ga.k, "cotruncation level");
  gen->add_option("--shape", ga.shape, "named poset for random-complex");

  std::string suite;
  auto* run = app.add_subcommand("run", "run a property suite");
  run->add_option("suite", suite, "a1 ... a16 or all")->required();

  CLI11_PARSE(app, argc, argv);
  o.field_given = field->count() > 0;

  try {
    FieldSpec::parse(o.field);
    if (*kan) return run_kan(o, ka);
    if (*cube) return run_cube(o, ca);
    if (*ser) return run_serre(o, sa);
    if (*hom) return run_homology(o, hin);
    if (*gen) return run_gen(o, ga);
    if (*run) return run_suites(o, suite);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
