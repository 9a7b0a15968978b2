#include "cli.hpp"

#include "io.hpp"
#include "ogk/random.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>

namespace ogk::cli {

using io::json;

namespace {

struct Options {
  std::string input;
  std::optional<int> level, n;
  std::optional<std::string> basepoint;
  std::string json_path;
  std::optional<std::uint64_t> seed;
};

constexpr int kOk = 0, kFailed = 1, kInput = 2;

const char* verdict(bool ok) { return ok ? "OK" : "FAILED"; }

std::string group(const FgAbGroup& g) { return g.to_string(); }

void write_json(const Options& o, const json& j) {
  if (o.json_path.empty()) return;
  std::ofstream f(o.json_path);
  if (!f) throw InvalidInput("cannot write '" + o.json_path + "'");
  f << j.dump(2) << "\n";
}

json load(const Options& o) {
  if (o.input.empty()) throw InvalidInput("an input file is required");
  return io::read_file(o.input);
}

CellId basepoint(const TruncatedOmegaCat& g, const Options& o) {
  if (g.count(0) == 0) throw InvalidInput("the groupoid has no objects");
  if (!o.basepoint) return 0;
  auto x = g.find(0, *o.basepoint);
  if (!x) throw InvalidInput("unknown basepoint '" + *o.basepoint + "'");
  return *x;
}

TruncatedOmegaGpd load_groupoid(const Options& o) {
  auto g = io::groupoid_from_json(load(o));
  if (!o.level || *o.level == g.level()) return g;
  if (*o.level < g.level()) throw InvalidInput("--level " + std::to_string(*o.level) + " is below the groupoid level " + std::to_string(g.level()));
  return TruncatedOmegaGpd(raise_level(g, *o.level));
}

void print_counts(std::ostream& out, const TruncatedOmegaCat& g) {
  out << "cells:";
  for (int d = 0; d <= g.level(); ++d) out << " " << g.count(d);
  out << "\n";
}

void print_complex(std::ostream& out, const ChainComplex& c) {
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) out << "C" << subscript(i) << " = " << group(c.component(i)) << "\n";
  for (int i = c.lower_bound() + 1; i <= c.upper_bound(); ++i) out << "d" << subscript(i) << " = " << c.differential(i).matrix() << "\n";
}

std::string describe_pi(const FiniteGroup& p, int n) {
  const std::string name = "π" + subscript(n);
  if (p.is_abelian()) return name + " ≅ " + group(to_fgab(p));
  return name + ": non-abelian of order " + std::to_string(p.size());
}

json pi_json(const FiniteGroup& p, int n, const std::string& base) {
  json j{{"n", n}, {"basepoint", base}, {"order", p.size()}, {"abelian", p.is_abelian()}, {"elements", p.elements}, {"table", p.table}};
  if (p.is_abelian()) j["group"] = io::to_json(to_fgab(p));
  return j;
}

IntMatrix matrix_input(const json& j) {
  const auto& m = j.contains("matrix") ? j["matrix"] : j;
  if (!m.is_array()) throw io::SchemaError("field 'matrix': expected an array of rows");
  const std::size_t rows = m.size(), cols = rows && m[0].is_array() ? m[0].size() : 0;
  return io::matrix_from_json(m, "matrix", rows, cols);
}

int cmd_validate(const Options& o, std::ostream& out) {
  const json j = load(o);
  std::vector<std::string> problems;
  std::string kind;
  bool ok = true;
  if (j.contains("components")) {
    kind = "complex";
    auto c = io::complex_from_json(j);
    for (const auto& v : validate(c)) problems.push_back("degree " + std::to_string(v.degree) + ": " + v.message);
    ok = problems.empty();
    out << "d∘d = 0: " << verdict(ok) << "\n";
  } else if (j.contains("groups")) {
    kind = "abelian";
    problems = validate(io::ab_groupoid_from_json(j));
    ok = problems.empty();
    out << "structure maps: " << verdict(ok) << "\n";
  } else if (j.contains("map")) {
    kind = "morphism";
    for (const auto& v : validate_morphism(io::morphism_from_json(j))) problems.push_back(v.axiom + " " + v.detail);
    ok = problems.empty();
    out << "morphism: " << verdict(ok) << "\n";
  } else if (j.contains("cells")) {
    kind = "groupoid";
    auto c = io::category_from_json(j);
    for (const auto& v : validate_category(c))
      problems.push_back(v.axiom + " (" + std::to_string(v.i) + "," + std::to_string(v.j) + ") " + v.detail);
    const bool axioms = problems.empty();
    out << "axioms: " << verdict(axioms) << "\n";
    bool gpd = false;
    if (axioms) {
      auto check = is_groupoid(c);
      gpd = check.ok;
      for (const auto& v : check.missing) problems.push_back(v.axiom + " " + v.detail);
      out << "groupoid: " << verdict(gpd) << "\n";
    }
    ok = axioms && gpd;
  } else {
    throw io::SchemaError("input is neither a complex, a groupoid nor a morphism");
  }
  for (std::size_t k = 0; k < problems.size() && k < 20; ++k) out << "  " << problems[k] << "\n";
  if (problems.size() > 20) out << "  ... " << problems.size() - 20 << " more\n";
  write_json(o, json{{"kind", kind}, {"ok", ok}, {"violations", problems}});
  return ok ? kOk : kFailed;
}

int cmd_pi(const Options& o, std::ostream& out) {
  auto g = load_groupoid(o);
  const CellId x = basepoint(g, o);
  const int n = o.n.value_or(1);
  if (n < 0) throw InvalidInput("--n must be ≥ 0");
  if (n == 0) {
    auto p = pi0(g);
    out << "π₀: " << p.count() << (p.count() == 1 ? " component" : " components") << "\n";
    json classes = json::array();
    for (CellId r : p.representative) classes.push_back(g.name(0, r));
    write_json(o, json{{"n", 0}, {"components", classes}});
    return kOk;
  }
  auto p = pi_n(g, x, n);
  out << describe_pi(p, n) << "\n";
  write_json(o, pi_json(p, n, g.name(0, x)));
  return kOk;
}

ChainComplex random_input(std::uint64_t seed, int upper) {
  Rng rng(seed);
  RandomComplexSpec spec;
  spec.upper = upper;
  spec.max_rank = 1;
  spec.max_order = 4;
  spec.kind = ComponentKind::finite;
  return random_complex(rng, spec);
}

int cmd_homology(const Options& o, std::ostream& out) {
  auto c = o.input.empty() && o.seed ? random_input(*o.seed, 3) : io::complex_from_json(load(o));
  if (!validate(c).empty()) {
    out << "d∘d = 0: FAILED\n";
    return kFailed;
  }
  json j = json::object();
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) {
    const auto h = homology(c, i);
    out << "H" << subscript(i) << " ≅ " << group(h) << "\n";
    j[std::to_string(i)] = io::to_json(h);
  }
  write_json(o, j);
  return kOk;
}

int cmd_bourn_to_gpd(const Options& o, std::ostream& out) {
  const bool random = o.input.empty() && o.seed;
  ChainComplex c = random ? random_input(*o.seed, std::min(o.level.value_or(2), 2)) : io::complex_from_json(load(o));
  const int level = o.level.value_or(std::max(c.upper_bound(), 0));
  if (random) print_complex(out, c);
  auto g = materialize(k_functor(c, level), max_cells_from_env());
  out << "level: " << level << "\n";
  print_counts(out, g);
  out << "groupoid: OK\n";
  write_json(o, io::to_json(g));
  return kOk;
}

int cmd_gpd_to_complex(const Options& o, std::ostream& out) {
  auto g = std::make_shared<const TruncatedOmegaGpd>(load_groupoid(o));
  std::shared_ptr<const TruncatedOmegaCat> reduced = g;
  if (!is_one_reduced(*g)) {
    if (!is_simply_connected(*g)) throw InvalidInput("the groupoid is not simply connected");
    reduced = one_reduce(g, basepoint(*g, o)).reduced;
    out << "1-reduced at " << g->name(0, basepoint(*g, o)) << "\n";
  }
  auto ab = abelianize_one_reduced(*reduced);
  auto c = h_functor(ab.groupoid);
  print_complex(out, c);
  out << "d∘d = 0: " << verdict(validate(c).empty()) << "\n";
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) out << "H" << subscript(i) << " ≅ " << group(homology(c, i)) << "\n";
  write_json(o, io::to_json(c));
  return kOk;
}

int cmd_em(const Options& o, std::ostream& out) {
  const FgAbGroup a = io::group_from_json(load(o));
  if (!o.n) throw InvalidInput("--n is required");
  const int n = *o.n;
  const int level = o.level.value_or(n + 1);
  auto g = materialize(em_groupoid(a, n, level), max_cells_from_env());
  print_counts(out, g);
  for (int k = 1; k <= level; ++k) out << describe_pi(pi_n(g, 0, k), k) << "\n";
  write_json(o, io::to_json(g));
  return kOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  auto g = std::make_shared<const TruncatedOmegaGpd>(load_groupoid(o));
  auto r = decompose_simply_connected(g, basepoint(*g, o), max_cells_from_env());
  out << "level: " << r.level << ", basepoint: " << r.basepoint << "\n";
  for (const auto& c : r.certificates) {
    if (c.kind == "pi_n") {
      const auto it = r.homology.find(c.degree);
      const auto h = it == r.homology.end() ? FgAbGroup{} : it->second;
      out << "π" << subscript(c.degree) << " ≅ " << group(h) << ": " << verdict(c.ok) << "\n";
    } else {
      out << c.kind << ": " << verdict(c.ok) << "\n";
    }
  }
  out << "factors:";
  if (r.factors.empty()) out << " none";
  for (std::size_t k = 0; k < r.factors.size(); ++k)
    out << (k ? " x" : "") << " K(" << group(r.factors[k].second) << ", " << r.factors[k].first << ")";
  out << "\nverdict: " << verdict(r.ok) << "\n";
  write_json(o, io::to_json(r));
  return r.ok ? kOk : kFailed;
}

int cmd_weq(const Options& o, std::ostream& out) {
  auto f = io::morphism_from_json(load(o));
  auto bad = validate_morphism(f);
  if (!bad.empty()) throw InvalidInput("not a morphism: " + bad.front().axiom + " " + bad.front().detail);
  const bool a = weq_by_definition(f), b = weq_by_fullness(f);
  out << "homotopy groups: " << (a ? "bijective" : "not bijective") << "\n";
  out << "fullness: " << (b ? "full and essentially surjective" : "not full or not essentially surjective") << "\n";
  if (a != b) throw InvariantFailure("the two weak-equivalence deciders disagree");
  out << "weak equivalence: " << verdict(a) << "\n";
  write_json(o, json{{"definition", a}, {"fullness", b}, {"verdict", verdict(a)}});
  return a ? kOk : kFailed;
}

int cmd_quasi_strict(const Options& o, std::ostream& out) {
  auto c = io::category_from_json(load(o));
  auto w = weakly_invertible_cells(c);
  json levels = json::array();
  for (int d = 1; d <= c.level(); ++d) {
    const auto& row = w[static_cast<std::size_t>(d)];
    const auto k = static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
    out << "level " << d << ": " << k << " of " << row.size() << " cells weakly invertible\n";
    levels.push_back(k);
  }
  const bool ok = is_quasi_strict_groupoid(c);
  out << "quasi-strict: " << verdict(ok) << "\n";
  write_json(o, json{{"weakly_invertible", levels}, {"verdict", verdict(ok)}});
  return ok ? kOk : kFailed;
}

int cmd_snf(const Options& o, std::ostream& out) {
  IntMatrix a;
  if (o.input.empty() && o.seed) {
    Rng rng(*o.seed);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    const std::size_t rows = dim(rng), cols = dim(rng);
    a = random_matrix(rng, rows, cols, 20);
  } else {
    a = matrix_input(load(o));
  }
  auto f = snf(a);
  out << "A = " << a << "\nU = " << f.u << "\nS = " << f.s << "\nV = " << f.v << "\nrank: " << f.rank << "\n";
  const bool ok = f.u * a * f.v == f.s && f.u * f.u_inv == IntMatrix::identity(a.rows()) && f.v * f.v_inv == IntMatrix::identity(a.cols());
  out << "u·A·v = s: " << verdict(ok) << "\n";
  write_json(o, json{{"matrix", io::to_json(a)}, {"u", io::to_json(f.u)}, {"s", io::to_json(f.s)}, {"v", io::to_json(f.v)},
                     {"u_inv", io::to_json(f.u_inv)}, {"v_inv", io::to_json(f.v_inv)}, {"rank", f.rank}});
  return ok ? kOk : kFailed;
}

} // namespace

std::string subscript(int n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  if (n < 0) return "₋" + subscript(-n);
  if (n < 10) return digits[n];
  return subscript(n / 10) + digits[n % 10];
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strict ∞-groupoids, chain complexes and their homotopy invariants", "ogk"};
  app.require_subcommand(1);
  Options o;
  using Handler = int (*)(const Options&, std::ostream&);
  struct Verb {
    const char* name;
    const char* help;
    Handler fn;
    bool level, n, basepoint, seed;
  };
  const Verb verbs[] = {
      {"validate", "check a complex, groupoid or morphism", cmd_validate, false, false, false, false},
      {"pi", "homotopy group at a basepoint", cmd_pi, true, true, true, false},
      {"homology", "homology of a complex", cmd_homology, false, false, false, true},
      {"bourn-to-gpd", "materialize the groupoid of a finite complex", cmd_bourn_to_gpd, true, false, false, true},
      {"gpd-to-complex", "complex of a simply connected groupoid", cmd_gpd_to_complex, true, false, true, false},
      {"em", "Eilenberg-Mac Lane groupoid of a finite group", cmd_em, true, true, false, false},
      {"decompose", "split a simply connected groupoid into Eilenberg-Mac Lane factors", cmd_decompose, true, false, true, false},
      {"weq", "decide whether a morphism is a weak equivalence", cmd_weq, false, false, false, false},
      {"quasi-strict", "decide whether a category is a quasi-strict groupoid", cmd_quasi_strict, false, false, false, false},
      {"snf", "Smith normal form of an integer matrix", cmd_snf, false, false, false, true},
  };
  Handler chosen = nullptr;
  for (const auto& v : verbs) {
    auto* s = app.add_subcommand(v.name, v.help);
    s->add_option("input", o.input, "input JSON file");
    if (v.level) s->add_option("--level", o.level, "truncation level");
    if (v.n) s->add_option("--n", o.n, "degree");
    if (v.basepoint) s->add_option("--basepoint", o.basepoint, "object name");
    if (v.seed) s->add_option("--seed", o.seed, "random input when no file is given");
    s->add_option("--json", o.json_path, "write a JSON report here");
    s->callback([&chosen, fn = v.fn] { chosen = fn; });
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }
  try {
    return chosen(o, out);
  } catch (const SizeLimitExceeded& e) {
    err << "size limit: " << e.what() << " (raise OGK_MAX_CELLS)\n";
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
  } catch (const InvariantFailure& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kFailed;
  }
  return kInput;
}

} // namespace ogk::cli
