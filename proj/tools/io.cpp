#include "io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ogk::io {

namespace {

std::string sub(const std::string& field, const std::string& key) { return field + "." + key; }

[[noreturn]] void fail(const std::string& field, const std::string& what) { throw SchemaError("field '" + field + "': " + what); }

const json& need(const json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(sub(field, key), "missing");
  return *it;
}

const json& need_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  return j;
}

const json& need_array(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  return j;
}

int small_int(const json& j, const std::string& field, int lo, int hi) {
  const Integer x = integer_from_json(j, field);
  if (x < lo || x > hi) fail(field, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x.get_si());
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

std::string key(int d) { return std::to_string(d); }
std::string key(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

// Re-raises library validation errors as schema errors on `field`.
template <class F>
auto checked(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const InvalidInput& e) {
    fail(field, e.what());
  }
}

json hom_json(const AbHom& f) { return json{{"matrix", to_json(f.matrix())}}; }

AbHom hom_from_json(const json& j, const std::string& field, const FgAbGroup& source, const FgAbGroup& target) {
  IntMatrix m = matrix_from_json(need(j, "matrix", field), sub(field, "matrix"), target.generator_count(), source.generator_count());
  return checked(field, [&] { return AbHom(source, target, std::move(m)); });
}

json cell_map(const TruncatedOmegaCat& from, int d, const TruncatedOmegaCat& to, int e, auto&& f) {
  json out = json::object();
  for (CellId u = 0; u < from.count(d); ++u) out[from.name(d, u)] = to.name(e, f(u));
  return out;
}

CellId cell(const TruncatedOmegaCat& c, int d, const json& j, const std::string& field) {
  const std::string nm = text(j, field);
  auto id = c.find(d, nm);
  if (!id) fail(field, "unknown " + std::to_string(d) + "-cell '" + nm + "'");
  return *id;
}

// Per-cell table {name: name} from dimension d of `from` to dimension e of `to`.
std::vector<CellId> read_cell_map(const json& j, const std::string& field, const TruncatedOmegaCat& from, int d,
                                  const TruncatedOmegaCat& to, int e) {
  need_object(j, field);
  std::vector<CellId> out(from.count(d));
  for (CellId u = 0; u < from.count(d); ++u) {
    const std::string f = sub(field, from.name(d, u));
    auto it = j.find(from.name(d, u));
    if (it == j.end()) fail(f, "missing");
    out[u] = cell(to, e, *it, f);
  }
  if (j.size() != from.count(d)) fail(field, "names a cell that does not exist");
  return out;
}

} // namespace

json parse(const std::string& input) {
  try {
    return json::parse(input);
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

json to_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

Integer integer_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    const auto s = j.get<std::string>();
    if (s.empty() || x.set_str(s, 10) != 0) fail(field, "'" + s + "' is not an integer");
    return x;
  }
  fail(field, "expected an integer");
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix matrix_from_json(const json& j, const std::string& field, std::size_t rows, std::size_t cols) {
  need_array(j, field);
  IntMatrix m(rows, cols);
  if (cols == 0 && j.empty()) return m;
  if (j.size() != rows) fail(field, "expected " + std::to_string(rows) + " rows");
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string fr = field + "[" + std::to_string(r) + "]";
    const auto& row = need_array(j[r], fr);
    if (row.size() != cols) fail(fr, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from_json(row[c], fr + "[" + std::to_string(c) + "]");
  }
  return m;
}

json to_json(const FgAbGroup& g) {
  json t = json::array();
  for (const auto& d : g.torsion()) t.push_back(to_json(d));
  return json{{"free_rank", g.free_rank()}, {"torsion", std::move(t)}};
}

FgAbGroup group_from_json(const json& j, const std::string& field) {
  const int r = small_int(need(j, "free_rank", field), sub(field, "free_rank"), 0, 1 << 20);
  std::vector<Integer> orders;
  const auto& t = need_array(need(j, "torsion", field), sub(field, "torsion"));
  for (std::size_t k = 0; k < t.size(); ++k) {
    const std::string f = sub(field, "torsion") + "[" + std::to_string(k) + "]";
    orders.push_back(integer_from_json(t[k], f));
    if (orders.back() < 0) fail(f, "negative order");
  }
  return checked(field, [&] { return FgAbGroup(static_cast<std::size_t>(r), orders); });
}

json to_json(const ChainComplex& c) {
  json comps = json::object(), diffs = json::object();
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) comps[key(i)] = to_json(c.component(i));
  for (int i = c.lower_bound() + 1; i <= c.upper_bound(); ++i) diffs[key(i)] = hom_json(c.differential(i));
  return json{{"lower_bound", c.lower_bound()}, {"upper_bound", c.upper_bound()}, {"components", comps}, {"differentials", diffs}};
}

ChainComplex complex_from_json(const json& j, const std::string& field) {
  constexpr int kRange = 1 << 16;
  const int lo = small_int(need(j, "lower_bound", field), sub(field, "lower_bound"), -kRange, kRange);
  const int hi = small_int(need(j, "upper_bound", field), sub(field, "upper_bound"), -kRange, kRange);
  if (hi < lo) fail(sub(field, "upper_bound"), "below lower_bound");
  if (hi - lo > 4096) fail(sub(field, "upper_bound"), "too many degrees");
  const std::string fc = sub(field, "components");
  const auto& comps = need_object(need(j, "components", field), fc);
  std::vector<FgAbGroup> groups;
  for (int i = lo; i <= hi; ++i) groups.push_back(group_from_json(need(comps, key(i), fc), sub(fc, key(i))));
  if (comps.size() != groups.size()) fail(fc, "has a degree outside [lower_bound, upper_bound]");
  std::vector<AbHom> diffs;
  const std::string fd = sub(field, "differentials");
  const json empty = json::object();
  const auto& dj = j.contains("differentials") ? need_object(j["differentials"], fd) : empty;
  std::size_t used = 0;
  for (int i = lo + 1; i <= hi; ++i) {
    const auto& src = groups[static_cast<std::size_t>(i - lo)];
    const auto& tgt = groups[static_cast<std::size_t>(i - 1 - lo)];
    auto it = dj.find(key(i));
    if (it == dj.end()) {
      diffs.push_back(AbHom::zero(src, tgt));
    } else {
      ++used;
      diffs.push_back(hom_from_json(*it, sub(fd, key(i)), src, tgt));
    }
  }
  if (used != dj.size()) fail(fd, "has a degree outside (lower_bound, upper_bound]");
  return checked(field, [&] { return ChainComplex(lo, hi, std::move(groups), std::move(diffs)); });
}

json to_json(const TruncatedOmegaCat& c) {
  const int n = c.level();
  json cells = json::object(), src = json::object(), tgt = json::object(), units = json::object(), comp = json::object();
  for (int d = 0; d <= n; ++d) {
    json names = json::array();
    for (CellId u = 0; u < c.count(d); ++u) names.push_back(c.name(d, u));
    cells[key(d)] = std::move(names);
  }
  for (int d = 1; d <= n; ++d) {
    src[key(d)] = cell_map(c, d, c, d - 1, [&](CellId u) { return c.src(d, u); });
    tgt[key(d)] = cell_map(c, d, c, d - 1, [&](CellId u) { return c.tgt(d, u); });
  }
  for (int d = 0; d < n; ++d) units[key(d)] = cell_map(c, d, c, d + 1, [&](CellId u) { return c.unit(d, u); });
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) {
      json rows = json::array();
      for (CellId v = 0; v < c.count(i); ++v)
        for (CellId u : c.with_tgt(i, j, c.src(i, j, v))) {
          const CellId r = c.compose(i, j, v, u);
          if (r != kNoCell) rows.push_back(json::array({c.name(i, v), c.name(i, u), c.name(i, r)}));
        }
      comp[key(i, j)] = std::move(rows);
    }
  return json{{"level", n}, {"cells", cells}, {"src", src}, {"tgt", tgt}, {"units", units}, {"comp", comp}};
}

json to_json(const TruncatedOmegaGpd& g) {
  json out = to_json(static_cast<const TruncatedOmegaCat&>(g));
  json inv = json::object();
  for (int i = 1; i <= g.level(); ++i)
    for (int j = 0; j < i; ++j) inv[key(i, j)] = cell_map(g, i, g, i, [&](CellId u) { return g.inverse(i, j, u); });
  out["inv"] = std::move(inv);
  return out;
}

TruncatedOmegaCat category_from_json(const json& j, const std::string& field) {
  const int n = small_int(need(j, "level", field), sub(field, "level"), 0, 64);
  const std::string fc = sub(field, "cells");
  const auto& cells = need_object(need(j, "cells", field), fc);
  if (cells.size() != static_cast<std::size_t>(n) + 1) fail(fc, "expected dimensions 0.." + std::to_string(n));
  std::vector<std::vector<std::string>> names;
  for (int d = 0; d <= n; ++d) {
    const std::string f = sub(fc, key(d));
    const auto& arr = need_array(need(cells, key(d), fc), f);
    std::set<std::string> seen;
    names.emplace_back();
    for (std::size_t k = 0; k < arr.size(); ++k) {
      names.back().push_back(text(arr[k], f + "[" + std::to_string(k) + "]"));
      if (!seen.insert(names.back().back()).second) fail(f, "duplicate cell '" + names.back().back() + "'");
    }
  }
  std::vector<std::unordered_map<std::string, CellId>> index(names.size());
  for (std::size_t d = 0; d < names.size(); ++d)
    for (std::size_t u = 0; u < names[d].size(); ++u) index[d].emplace(names[d][u], static_cast<CellId>(u));
  auto lookup = [&](int d, const json& v, const std::string& f) {
    const std::string nm = text(v, f);
    auto it = index[static_cast<std::size_t>(d)].find(nm);
    if (it == index[static_cast<std::size_t>(d)].end()) fail(f, "unknown " + std::to_string(d) + "-cell '" + nm + "'");
    return it->second;
  };
  auto table = [&](const char* what, int d, int e) {
    const std::string f = sub(sub(field, what), key(d));
    const auto& m = need_object(need(need(j, what, field), key(d), sub(field, what)), f);
    std::vector<CellId> out;
    for (const auto& nm : names[static_cast<std::size_t>(d)]) {
      auto it = m.find(nm);
      if (it == m.end()) fail(sub(f, nm), "missing");
      out.push_back(lookup(e, *it, sub(f, nm)));
    }
    if (m.size() != out.size()) fail(f, "names a cell that does not exist");
    return out;
  };
  TruncatedGlobularSet s(n);
  std::vector<std::vector<CellId>> sv(static_cast<std::size_t>(n) + 1), tv(static_cast<std::size_t>(n) + 1);
  for (int d = 1; d <= n; ++d) {
    sv[static_cast<std::size_t>(d)] = table("src", d, d - 1);
    tv[static_cast<std::size_t>(d)] = table("tgt", d, d - 1);
  }
  for (int d = 0; d <= n; ++d)
    for (std::size_t u = 0; u < names[static_cast<std::size_t>(d)].size(); ++u)
      s.add(d, names[static_cast<std::size_t>(d)][u], d ? sv[static_cast<std::size_t>(d)][u] : kNoCell,
            d ? tv[static_cast<std::size_t>(d)][u] : kNoCell);
  std::vector<std::vector<CellId>> units;
  for (int d = 0; d < n; ++d) units.push_back(table("units", d, d + 1));
  TruncatedOmegaCat c = checked(field, [&] { return TruncatedOmegaCat(std::move(s), std::move(units)); });

  const std::string fm = sub(field, "comp");
  const json empty = json::object();
  const auto& comp = j.contains("comp") ? need_object(j["comp"], fm) : empty;
  std::size_t used = 0;
  for (int i = 1; i <= n; ++i)
    for (int jj = 0; jj < i; ++jj) {
      auto it = comp.find(key(i, jj));
      if (it == comp.end()) continue;
      ++used;
      const std::string f = sub(fm, key(i, jj));
      const auto& rows = need_array(*it, f);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::string fr = f + "[" + std::to_string(k) + "]";
        const auto& t = need_array(rows[k], fr);
        if (t.size() != 3) fail(fr, "expected [v, u, result]");
        const CellId v = cell(c, i, t[0], fr), u = cell(c, i, t[1], fr), r = cell(c, i, t[2], fr);
        checked(fr, [&] { c.set_composition(i, jj, v, u, r); });
      }
    }
  if (used != comp.size()) fail(fm, "has a key other than \"i,j\" with 0 ≤ j < i ≤ level");
  return c;
}

TruncatedOmegaGpd groupoid_from_json(const json& j, const std::string& field) {
  TruncatedOmegaCat c = category_from_json(j, field);
  if (!j.contains("inv")) return TruncatedOmegaGpd(std::move(c));
  const std::string fi = sub(field, "inv");
  const auto& inv = need_object(j["inv"], fi);
  const int n = c.level();
  std::vector<std::vector<CellId>> tables(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i)
    for (int jj = 0; jj < i; ++jj)
      tables[TruncatedOmegaCat::slot(i, jj)] = read_cell_map(need(inv, key(i, jj), fi), sub(fi, key(i, jj)), c, i, c, i);
  if (inv.size() != tables.size()) fail(fi, "has a key other than \"i,j\" with 0 ≤ j < i ≤ level");
  return checked(fi, [&] { return TruncatedOmegaGpd(std::move(c), std::move(tables)); });
}

json to_json(const AbOmegaGroupoid& g) {
  json groups = json::object(), src = json::object(), tgt = json::object(), units = json::object();
  for (int d = 0; d <= g.level; ++d) groups[key(d)] = to_json(g.groups[static_cast<std::size_t>(d)]);
  for (int d = 1; d <= g.level; ++d) {
    src[key(d)] = hom_json(g.src[static_cast<std::size_t>(d)]);
    tgt[key(d)] = hom_json(g.tgt[static_cast<std::size_t>(d)]);
  }
  for (int d = 0; d < g.level; ++d) units[key(d)] = hom_json(g.units[static_cast<std::size_t>(d)]);
  return json{{"level", g.level}, {"groups", groups}, {"src", src}, {"tgt", tgt}, {"units", units}};
}

AbOmegaGroupoid ab_groupoid_from_json(const json& j, const std::string& field) {
  AbOmegaGroupoid g;
  g.level = small_int(need(j, "level", field), sub(field, "level"), 0, 64);
  const std::string fg = sub(field, "groups");
  const auto& groups = need_object(need(j, "groups", field), fg);
  for (int d = 0; d <= g.level; ++d) g.groups.push_back(group_from_json(need(groups, key(d), fg), sub(fg, key(d))));
  auto hom = [&](const char* what, int d, int e) {
    const std::string f = sub(field, what);
    return hom_from_json(need(need(j, what, field), key(d), f), sub(f, key(d)), g.groups[static_cast<std::size_t>(d)],
                         g.groups[static_cast<std::size_t>(e)]);
  };
  g.src.emplace_back();
  g.tgt.emplace_back();
  for (int d = 1; d <= g.level; ++d) {
    g.src.push_back(hom("src", d, d - 1));
    g.tgt.push_back(hom("tgt", d, d - 1));
  }
  for (int d = 0; d < g.level; ++d) g.units.push_back(hom("units", d, d + 1));
  return g;
}

json to_json(const OmegaMorphism& f) {
  json levels = json::object();
  for (int d = 0; d <= f.source->level(); ++d)
    levels[key(d)] = cell_map(*f.source, d, *f.target, d, [&](CellId u) { return f(d, u); });
  return json{{"source", to_json(*f.source)}, {"target", to_json(*f.target)}, {"map", levels}};
}

OmegaMorphism morphism_from_json(const json& j, const std::string& field) {
  OmegaMorphism f;
  f.source = std::make_shared<const TruncatedOmegaCat>(category_from_json(need(j, "source", field), sub(field, "source")));
  f.target = std::make_shared<const TruncatedOmegaCat>(category_from_json(need(j, "target", field), sub(field, "target")));
  if (f.source->level() != f.target->level()) fail(sub(field, "target.level"), "differs from the source level");
  const std::string fm = sub(field, "map");
  const auto& m = need_object(need(j, "map", field), fm);
  for (int d = 0; d <= f.source->level(); ++d)
    f.levels.push_back(read_cell_map(need(m, key(d), fm), sub(fm, key(d)), *f.source, d, *f.target, d));
  return f;
}

json to_json(const DecompositionReport& r) {
  json out{{"level", r.level}, {"basepoint", r.basepoint}, {"verdict", r.ok ? "OK" : "FAILED"}};
  out["failing_degree"] = r.failing_degree >= 0 ? json(r.failing_degree) : json(nullptr);
  if (r.input) out["input"] = to_json(*r.input);
  if (r.one_reduced) out["one_reduced"] = to_json(*r.one_reduced);
  if (!r.abelian.groups.empty()) {
    out["abelian"] = to_json(r.abelian);
    out["complex"] = to_json(r.complex);
  }
  json h = json::object();
  for (const auto& [n, g] : r.homology) h[key(n)] = to_json(g);
  out["homology"] = std::move(h);
  json factors = json::array();
  for (const auto& [n, g] : r.factors) factors.push_back(json{{"degree", n}, {"group", to_json(g)}});
  out["product_factors"] = std::move(factors);
  if (r.product) out["product"] = to_json(*r.product);
  json certs = json::array();
  for (const auto& c : r.certificates)
    certs.push_back(json{{"kind", c.kind}, {"degree", c.degree}, {"ok", c.ok}, {"detail", c.detail}});
  out["certificates"] = std::move(certs);
  return out;
}

DecompositionReport report_from_json(const json& j, const std::string& field) {
  DecompositionReport r;
  r.level = small_int(need(j, "level", field), sub(field, "level"), 0, 64);
  r.basepoint = text(need(j, "basepoint", field), sub(field, "basepoint"));
  const std::string verdict = text(need(j, "verdict", field), sub(field, "verdict"));
  if (verdict != "OK" && verdict != "FAILED") fail(sub(field, "verdict"), "expected \"OK\" or \"FAILED\"");
  r.ok = verdict == "OK";
  const auto& fd = need(j, "failing_degree", field);
  r.failing_degree = fd.is_null() ? -1 : small_int(fd, sub(field, "failing_degree"), 0, 64);
  auto cat = [&](const char* what) -> std::shared_ptr<const TruncatedOmegaCat> {
    if (!j.contains(what)) return nullptr;
    return std::make_shared<const TruncatedOmegaCat>(category_from_json(j[what], sub(field, what)));
  };
  r.input = cat("input");
  r.one_reduced = cat("one_reduced");
  if (j.contains("abelian")) {
    r.abelian = ab_groupoid_from_json(j["abelian"], sub(field, "abelian"));
    r.complex = complex_from_json(need(j, "complex", field), sub(field, "complex"));
  }
  const std::string fh = sub(field, "homology");
  for (const auto& [k, v] : need_object(need(j, "homology", field), fh).items()) {
    int n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoi(k, &pos);
      if (pos != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      fail(sub(fh, k), "key is not a degree");
    }
    r.homology[n] = group_from_json(v, sub(fh, k));
  }
  const std::string ff = sub(field, "product_factors");
  const auto& factors = need_array(need(j, "product_factors", field), ff);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const std::string f = ff + "[" + std::to_string(k) + "]";
    r.factors.emplace_back(small_int(need(factors[k], "degree", f), sub(f, "degree"), 0, 64),
                           group_from_json(need(factors[k], "group", f), sub(f, "group")));
  }
  if (j.contains("product")) r.product = std::make_shared<const TruncatedOmegaGpd>(groupoid_from_json(j["product"], sub(field, "product")));
  const std::string fc = sub(field, "certificates");
  const auto& certs = need_array(need(j, "certificates", field), fc);
  for (std::size_t k = 0; k < certs.size(); ++k) {
    const std::string f = fc + "[" + std::to_string(k) + "]";
    const auto& ok = need(certs[k], "ok", f);
    if (!ok.is_boolean()) fail(sub(f, "ok"), "expected a boolean");
    r.certificates.push_back({text(need(certs[k], "kind", f), sub(f, "kind")), small_int(need(certs[k], "degree", f), sub(f, "degree"), -1, 64),
                              ok.get<bool>(), text(need(certs[k], "detail", f), sub(f, "detail"))});
  }
  return r;
}

bool same_report(const DecompositionReport& a, const DecompositionReport& b) {
  auto same_ptr = [](const auto& x, const auto& y) { return (!x && !y) || (x && y && *x == *y); };
  auto same_ab = [](const AbOmegaGroupoid& x, const AbOmegaGroupoid& y) {
    return x.level == y.level && x.groups == y.groups && x.src == y.src && x.tgt == y.tgt && x.units == y.units;
  };
  auto same_certs = [](const std::vector<Certificate>& x, const std::vector<Certificate>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (x[k].kind != y[k].kind || x[k].degree != y[k].degree || x[k].ok != y[k].ok || x[k].detail != y[k].detail) return false;
    return true;
  };
  const bool product = (!a.product && !b.product) ||
                       (a.product && b.product && static_cast<const TruncatedOmegaCat&>(*a.product) == static_cast<const TruncatedOmegaCat&>(*b.product) &&
                        a.product->inverse_tables() == b.product->inverse_tables());
  return a.level == b.level && a.basepoint == b.basepoint && same_ptr(a.input, b.input) && same_ptr(a.one_reduced, b.one_reduced) &&
         same_ab(a.abelian, b.abelian) && a.complex == b.complex && a.homology == b.homology && a.factors == b.factors && product &&
         same_certs(a.certificates, b.certificates) && a.ok == b.ok && a.failing_degree == b.failing_degree;
}

} // namespace ogk::io
