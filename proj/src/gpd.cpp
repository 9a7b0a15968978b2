#include "ogk/gpd.hpp"

#include "ogk/error.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace ogk {

using detail::ErrorSlot;
using detail::sweep;

namespace {

std::string dim(int d) { return std::to_string(d); }

} // namespace

TruncatedGlobularSet::TruncatedGlobularSet(int lvl) : level(lvl) {
  if (lvl < 0) throw InvalidInput("globular set level must be ≥ 0");
  const auto n = static_cast<std::size_t>(lvl) + 1;
  names.resize(n);
  src.resize(n);
  tgt.resize(n);
}

CellId TruncatedGlobularSet::add(int d, std::string name, CellId s, CellId t) {
  auto& ns = names.at(static_cast<std::size_t>(d));
  ns.push_back(std::move(name));
  if (d > 0) {
    src[static_cast<std::size_t>(d)].push_back(s);
    tgt[static_cast<std::size_t>(d)].push_back(t);
  }
  return static_cast<CellId>(ns.size() - 1);
}

std::vector<Violation> validate_globular(const TruncatedGlobularSet& g) {
  std::vector<Violation> out;
  const auto n = static_cast<std::size_t>(g.level) + 1;
  if (g.level < 0 || g.names.size() != n || g.src.size() != n || g.tgt.size() != n) {
    out.push_back({"shape", g.level, -1, -1, "per-dimension tables do not match the level"});
    return out;
  }
  for (int d = 0; d <= g.level; ++d) {
    std::unordered_set<std::string> seen;
    for (const auto& nm : g.names[static_cast<std::size_t>(d)])
      if (!seen.insert(nm).second) out.push_back({"names", d, -1, -1, "duplicate cell name '" + nm + "'"});
  }
  bool ranges_ok = true;
  for (int d = 1; d <= g.level; ++d) {
    const auto& s = g.src[static_cast<std::size_t>(d)];
    const auto& t = g.tgt[static_cast<std::size_t>(d)];
    if (s.size() != g.count(d) || t.size() != g.count(d)) {
      out.push_back({"shape", d, -1, -1, "source/target tables have the wrong length"});
      ranges_ok = false;
      continue;
    }
    for (std::size_t u = 0; u < s.size(); ++u)
      if (s[u] >= g.count(d - 1) || t[u] >= g.count(d - 1)) {
        out.push_back({"range", d, -1, -1, "cell '" + g.names[static_cast<std::size_t>(d)][u] + "' has an unknown boundary"});
        ranges_ok = false;
      }
  }
  if (!ranges_ok) return out;
  for (int d = 2; d <= g.level; ++d) {
    const auto& s = g.src[static_cast<std::size_t>(d)];
    const auto& t = g.tgt[static_cast<std::size_t>(d)];
    const auto& s1 = g.src[static_cast<std::size_t>(d - 1)];
    const auto& t1 = g.tgt[static_cast<std::size_t>(d - 1)];
    for (std::size_t u = 0; u < s.size(); ++u) {
      const std::string& nm = g.names[static_cast<std::size_t>(d)][u];
      if (s1[s[u]] != s1[t[u]]) out.push_back({"globular", d, -1, -1, "ss != st at '" + nm + "'"});
      if (t1[s[u]] != t1[t[u]]) out.push_back({"globular", d, -1, -1, "ts != tt at '" + nm + "'"});
    }
  }
  return out;
}

TruncatedOmegaCat::TruncatedOmegaCat(TruncatedGlobularSet carrier, std::vector<std::vector<CellId>> units)
    : carrier_(std::move(carrier)), units_(std::move(units)) {
  auto bad = validate_globular(carrier_);
  if (!bad.empty()) throw InvalidInput("not a globular set: " + bad.front().detail);
  const int n = carrier_.level;
  if (units_.size() != static_cast<std::size_t>(n)) throw InvalidInput("expected unit tables for dimensions 0.." + dim(n - 1));
  for (int i = 0; i < n; ++i) {
    const auto& u = units_[static_cast<std::size_t>(i)];
    if (u.size() != count(i)) throw InvalidInput("unit table " + dim(i) + " has the wrong length");
    for (CellId k : u)
      if (k >= count(i + 1)) throw InvalidInput("unit table " + dim(i) + " points outside dimension " + dim(i + 1));
  }
  by_name_.resize(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d)
    for (CellId u = 0; u < count(d); ++u) by_name_[static_cast<std::size_t>(d)].emplace(name(d, u), u);

  tables_.resize(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < i; ++j) {
      Index& ix = tables_[slot(i, j)];
      const std::size_t ni = count(i), nj = count(j);
      ix.s.resize(ni);
      ix.t.resize(ni);
      for (CellId u = 0; u < ni; ++u) {
        if (j == i - 1) {
          ix.s[u] = src(i, u);
          ix.t[u] = tgt(i, u);
        } else {
          ix.s[u] = tables_[slot(i - 1, j)].s[src(i, u)];
          ix.t[u] = tables_[slot(i - 1, j)].t[tgt(i, u)];
        }
      }
      auto csr = [&](const std::vector<CellId>& key, std::vector<std::size_t>& off, std::vector<CellId>& ids) {
        off.assign(nj + 1, 0);
        for (CellId k : key) ++off[k + 1];
        std::partial_sum(off.begin(), off.end(), off.begin());
        ids.resize(ni);
        std::vector<std::size_t> fill(off.begin(), off.end() - 1);
        for (CellId u = 0; u < ni; ++u) ids[fill[key[u]]++] = u;
      };
      csr(ix.s, ix.src_off, ix.src_ids);
      csr(ix.t, ix.tgt_off, ix.tgt_ids);
      ix.tgt_pos.resize(ni);
      for (std::size_t x = 0; x < nj; ++x)
        for (std::size_t p = ix.tgt_off[x]; p < ix.tgt_off[x + 1]; ++p)
          ix.tgt_pos[ix.tgt_ids[p]] = static_cast<std::uint32_t>(p - ix.tgt_off[x]);
      ix.row_base.resize(ni + 1);
      ix.row_base[0] = 0;
      for (CellId v = 0; v < ni; ++v) {
        const CellId x = ix.s[v];
        ix.row_base[v + 1] = ix.row_base[v] + (ix.tgt_off[x + 1] - ix.tgt_off[x]);
      }
      ix.results.assign(ix.row_base[ni], kNoCell);
    }
  }
}

std::optional<CellId> TruncatedOmegaCat::find(int d, std::string_view nm) const {
  if (d < 0 || d > level()) return std::nullopt;
  const auto& m = by_name_[static_cast<std::size_t>(d)];
  auto it = m.find(std::string(nm));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

CellId TruncatedOmegaCat::lookup(int d, std::string_view nm) const {
  auto u = find(d, nm);
  if (!u) throw InvalidInput("no " + dim(d) + "-cell named '" + std::string(nm) + "'");
  return *u;
}

void TruncatedOmegaCat::check_cell(int d, CellId u, const char* what) const {
  if (d < 0 || d > level() || u >= count(d))
    throw InvalidInput(std::string(what) + ": no " + dim(d) + "-cell with index " + std::to_string(u));
}

CellId TruncatedOmegaCat::src(int i, int j, CellId u) const { return j == i ? u : index(i, j).s[u]; }
CellId TruncatedOmegaCat::tgt(int i, int j, CellId u) const { return j == i ? u : index(i, j).t[u]; }

CellId TruncatedOmegaCat::unit(int i, int j, CellId x) const {
  for (int k = j; k < i; ++k) x = unit(k, x);
  return x;
}

CellId TruncatedOmegaCat::compose(int i, int j, CellId v, CellId u) const {
  const Index& ix = index(i, j);
  if (ix.s[v] != ix.t[u]) return kNoCell;
  return ix.results[ix.row_base[v] + ix.tgt_pos[u]];
}

void TruncatedOmegaCat::set_composition(int i, int j, CellId v, CellId u, CellId result) {
  if (!(0 <= j && j < i && i <= level())) throw InvalidInput("composition ∗" + dim(i) + "," + dim(j) + " out of range");
  check_cell(i, v, "set_composition");
  check_cell(i, u, "set_composition");
  check_cell(i, result, "set_composition");
  if (!composable(i, j, v, u))
    throw InvalidInput("cells '" + name(i, v) + "' and '" + name(i, u) + "' are not " + dim(j) + "-composable");
  Index& ix = tables_[slot(i, j)];
  ix.results[ix.row_base[v] + ix.tgt_pos[u]] = result;
}

void TruncatedOmegaCat::set_unit(int i, CellId u, CellId result) {
  if (i < 0 || i >= level()) throw InvalidInput("unit table " + dim(i) + " out of range");
  check_cell(i, u, "set_unit");
  check_cell(i + 1, result, "set_unit");
  units_[static_cast<std::size_t>(i)][u] = result;
}

std::span<const CellId> TruncatedOmegaCat::with_src(int i, int j, CellId x) const {
  const Index& ix = index(i, j);
  return {ix.src_ids.data() + ix.src_off[x], ix.src_off[x + 1] - ix.src_off[x]};
}

std::span<const CellId> TruncatedOmegaCat::with_tgt(int i, int j, CellId x) const {
  const Index& ix = index(i, j);
  return {ix.tgt_ids.data() + ix.tgt_off[x], ix.tgt_off[x + 1] - ix.tgt_off[x]};
}

std::span<CellId> TruncatedOmegaCat::row(int i, int j, CellId v) {
  Index& ix = tables_[slot(i, j)];
  return {ix.results.data() + ix.row_base[v], ix.row_base[v + 1] - ix.row_base[v]};
}

std::span<const CellId> TruncatedOmegaCat::row(int i, int j, CellId v) const {
  const Index& ix = index(i, j);
  return {ix.results.data() + ix.row_base[v], ix.row_base[v + 1] - ix.row_base[v]};
}

std::size_t TruncatedOmegaCat::composable_pairs(int i, int j) const { return index(i, j).results.size(); }

std::size_t TruncatedOmegaCat::composable_pairs() const {
  std::size_t n = 0;
  for (const auto& ix : tables_) n += ix.results.size();
  return n;
}

TruncatedOmegaCat TruncatedOmegaCat::with_composition(int i, int j, CellId v, CellId u, CellId result) const {
  TruncatedOmegaCat c = *this;
  c.set_composition(i, j, v, u, result);
  return c;
}

TruncatedOmegaCat TruncatedOmegaCat::with_unit(int i, CellId u, CellId result) const {
  TruncatedOmegaCat c = *this;
  c.set_unit(i, u, result);
  return c;
}

bool operator==(const TruncatedOmegaCat& a, const TruncatedOmegaCat& b) {
  if (a.level() != b.level()) return false;
  const auto& ca = a.carrier_;
  const auto& cb = b.carrier_;
  if (ca.names != cb.names || ca.src != cb.src || ca.tgt != cb.tgt || a.units_ != b.units_) return false;
  for (std::size_t k = 0; k < a.tables_.size(); ++k)
    if (a.tables_[k].results != b.tables_[k].results) return false;
  return true;
}

namespace {

std::string nm(const TruncatedOmegaCat& c, int d, CellId u) { return u == kNoCell ? std::string("?") : "'" + c.name(d, u) + "'"; }

void check_tables(const TruncatedOmegaCat& c, Exec exec, std::vector<Violation>& out) {
  for (int i = 1; i <= c.level(); ++i)
    for (int j = 0; j < i; ++j)
      sweep(c.count(i), exec, out, [&](std::size_t v, std::vector<Violation>& o) {
        auto us = c.with_tgt(i, j, c.src(i, j, static_cast<CellId>(v)));
        auto rs = c.row(i, j, static_cast<CellId>(v));
        for (std::size_t p = 0; p < us.size(); ++p)
          if (rs[p] == kNoCell)
            o.push_back({"defined", i, j, -1, nm(c, i, static_cast<CellId>(v)) + " * " + nm(c, i, us[p]) + " is missing"});
      });
}

void check_boundaries(const TruncatedOmegaCat& c, Exec exec, std::vector<Violation>& out) {
  for (int i = 1; i <= c.level(); ++i)
    for (int j = 0; j < i; ++j)
      sweep(c.count(i), exec, out, [&](std::size_t vi, std::vector<Violation>& o) {
        const auto v = static_cast<CellId>(vi);
        auto us = c.with_tgt(i, j, c.src(i, j, v));
        auto rs = c.row(i, j, v);
        for (std::size_t p = 0; p < us.size(); ++p) {
          const CellId u = us[p], r = rs[p];
          if (r == kNoCell) continue;
          CellId want_s, want_t;
          if (j == i - 1) {
            want_s = c.src(i, u);
            want_t = c.tgt(i, v);
          } else {
            want_s = c.compose(i - 1, j, c.src(i, v), c.src(i, u));
            want_t = c.compose(i - 1, j, c.tgt(i, v), c.tgt(i, u));
          }
          const std::string what = nm(c, i, v) + " * " + nm(c, i, u) + " = " + nm(c, i, r);
          if (c.src(i, r) != want_s)
            o.push_back({"boundary-source", i, j, -1, what + " has source " + nm(c, i - 1, c.src(i, r)) + ", expected " + nm(c, i - 1, want_s)});
          if (c.tgt(i, r) != want_t)
            o.push_back({"boundary-target", i, j, -1, what + " has target " + nm(c, i - 1, c.tgt(i, r)) + ", expected " + nm(c, i - 1, want_t)});
        }
      });
  for (int i = 0; i < c.level(); ++i)
    sweep(c.count(i), exec, out, [&](std::size_t ui, std::vector<Violation>& o) {
      const auto u = static_cast<CellId>(ui);
      const CellId k = c.unit(i, u);
      if (c.src(i + 1, k) != u || c.tgt(i + 1, k) != u)
        o.push_back({"boundary-unit", i + 1, i, -1, "unit of " + nm(c, i, u) + " is " + nm(c, i + 1, k) + " with the wrong boundary"});
    });
}

void check_associativity(const TruncatedOmegaCat& c, Exec exec, std::vector<Violation>& out) {
  for (int i = 1; i <= c.level(); ++i)
    for (int j = 0; j < i; ++j)
      sweep(c.count(i), exec, out, [&](std::size_t wi, std::vector<Violation>& o) {
        const auto w = static_cast<CellId>(wi);
        auto vs = c.with_tgt(i, j, c.src(i, j, w));
        auto wvs = c.row(i, j, w);
        for (std::size_t p = 0; p < vs.size(); ++p) {
          const CellId v = vs[p], wv = wvs[p];
          if (wv == kNoCell) continue;
          auto us = c.with_tgt(i, j, c.src(i, j, v));
          auto vus = c.row(i, j, v);
          for (std::size_t q = 0; q < us.size(); ++q) {
            const CellId u = us[q], vu = vus[q];
            if (vu == kNoCell) continue;
            const CellId left = c.compose(i, j, wv, u), right = c.compose(i, j, w, vu);
            if (left == kNoCell || right == kNoCell) continue;
            if (left != right)
              o.push_back({"associativity", i, j, -1,
                           "(" + nm(c, i, w) + " * " + nm(c, i, v) + ") * " + nm(c, i, u) + " = " + nm(c, i, left) +
                               " but " + nm(c, i, w) + " * (" + nm(c, i, v) + " * " + nm(c, i, u) + ") = " + nm(c, i, right)});
          }
        }
      });
}

void check_exchange(const TruncatedOmegaCat& c, Exec exec, std::vector<Violation>& out) {
  // (δ ∗ⱼ γ) ∗ₖ (β ∗ⱼ α) = (δ ∗ₖ β) ∗ⱼ (γ ∗ₖ α) for k < j < i.
  for (int i = 2; i <= c.level(); ++i)
    for (int j = 1; j < i; ++j)
      for (int k = 0; k < j; ++k)
        sweep(c.count(i), exec, out, [&](std::size_t gi, std::vector<Violation>& o) {
          const auto gamma = static_cast<CellId>(gi);
          auto deltas = c.with_src(i, j, c.tgt(i, j, gamma));
          for (CellId alpha : c.with_tgt(i, k, c.src(i, k, gamma))) {
            const CellId ga = c.compose(i, k, gamma, alpha);
            if (ga == kNoCell) continue;
            auto betas = c.with_src(i, j, c.tgt(i, j, alpha));
            for (CellId delta : deltas) {
              const CellId dg = c.compose(i, j, delta, gamma);
              if (dg == kNoCell) continue;
              for (CellId beta : betas) {
                const CellId ba = c.compose(i, j, beta, alpha);
                const CellId db = c.compose(i, k, delta, beta);
                if (ba == kNoCell || db == kNoCell) continue;
                const CellId left = c.compose(i, k, dg, ba), right = c.compose(i, j, db, ga);
                if (left == kNoCell || right == kNoCell) continue;
                if (left != right)
                  o.push_back({"exchange", i, j, k,
                               "delta=" + nm(c, i, delta) + " gamma=" + nm(c, i, gamma) + " beta=" + nm(c, i, beta) +
                                   " alpha=" + nm(c, i, alpha) + ": " + nm(c, i, left) + " != " + nm(c, i, right)});
              }
            }
          }
        });
}

void check_units(const TruncatedOmegaCat& c, Exec exec, std::vector<Violation>& out) {
  for (int i = 1; i <= c.level(); ++i)
    for (int j = 0; j < i; ++j)
      sweep(c.count(i), exec, out, [&](std::size_t ui, std::vector<Violation>& o) {
        const auto u = static_cast<CellId>(ui);
        const CellId left = c.compose(i, j, c.unit(i, j, c.tgt(i, j, u)), u);
        const CellId right = c.compose(i, j, u, c.unit(i, j, c.src(i, j, u)));
        if (left != kNoCell && left != u)
          o.push_back({"unit-left", i, j, -1, "1 * " + nm(c, i, u) + " = " + nm(c, i, left)});
        if (right != kNoCell && right != u)
          o.push_back({"unit-right", i, j, -1, nm(c, i, u) + " * 1 = " + nm(c, i, right)});
      });
}

void check_unit_functoriality(const TruncatedOmegaCat& c, Exec exec, std::vector<Violation>& out) {
  for (int i = 1; i < c.level(); ++i)
    for (int j = 0; j < i; ++j)
      sweep(c.count(i), exec, out, [&](std::size_t vi, std::vector<Violation>& o) {
        const auto v = static_cast<CellId>(vi);
        auto us = c.with_tgt(i, j, c.src(i, j, v));
        auto rs = c.row(i, j, v);
        for (std::size_t p = 0; p < us.size(); ++p) {
          if (rs[p] == kNoCell) continue;
          const CellId lifted = c.compose(i + 1, j, c.unit(i, v), c.unit(i, us[p]));
          if (lifted == kNoCell) continue;
          if (lifted != c.unit(i, rs[p]))
            o.push_back({"unit-functoriality", i, j, -1,
                         "k(" + nm(c, i, v) + " * " + nm(c, i, us[p]) + ") != k(" + nm(c, i, v) + ") * k(" + nm(c, i, us[p]) + ")"});
        }
      });
}

} // namespace

std::vector<Violation> validate_category(const TruncatedOmegaCat& c, Exec exec) {
  std::vector<Violation> out;
  check_tables(c, exec, out);
  check_boundaries(c, exec, out);
  check_associativity(c, exec, out);
  check_exchange(c, exec, out);
  check_units(c, exec, out);
  check_unit_functoriality(c, exec, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_inverse(const TruncatedOmegaCat& c, int i, int j, CellId u, CellId w) {
  const CellId a = c.src(i, j, u), b = c.tgt(i, j, u);
  if (c.src(i, j, w) != b || c.tgt(i, j, w) != a) return false;
  return c.compose(i, j, u, w) == c.unit(i, j, b) && c.compose(i, j, w, u) == c.unit(i, j, a);
}

std::optional<CellId> find_inverse(const TruncatedOmegaCat& c, CellId u, int i, int j) {
  if (!(0 <= j && j < i && i <= c.level()) || u >= c.count(i)) throw InvalidInput("find_inverse: bad level or cell");
  std::optional<CellId> found;
  const CellId a = c.src(i, j, u);
  for (CellId w : c.with_src(i, j, c.tgt(i, j, u))) {
    if (c.tgt(i, j, w) != a || !is_inverse(c, i, j, u, w)) continue;
    if (found && *found != w)
      throw InvariantFailure("two distinct inverses of '" + c.name(i, u) + "': '" + c.name(i, *found) + "' and '" + c.name(i, w) + "'");
    found = w;
  }
  return found;
}

namespace {

std::vector<CellId> inverse_table(const TruncatedOmegaCat& c, int i, int j, Exec exec) {
  std::vector<CellId> inv(c.count(i), kNoCell);
  ErrorSlot err;
  const auto n = static_cast<long long>(c.count(i));
  if (exec == Exec::serial) {
    for (long long u = 0; u < n; ++u) inv[u] = find_inverse(c, static_cast<CellId>(u), i, j).value_or(kNoCell);
    return inv;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (long long u = 0; u < n; ++u)
    err.guard([&] { inv[u] = find_inverse(c, static_cast<CellId>(u), i, j).value_or(kNoCell); });
  err.rethrow();
  return inv;
}

bool level_has_inverses(const TruncatedOmegaCat& c, int i, int j, Exec exec) {
  auto inv = inverse_table(c, i, j, exec);
  return std::find(inv.begin(), inv.end(), kNoCell) == inv.end();
}

} // namespace

GroupoidCheck is_groupoid(const TruncatedOmegaCat& c, Exec exec) {
  GroupoidCheck out;
  out.inverses.resize(static_cast<std::size_t>(c.level()) + 1);
  for (int i = 1; i <= c.level(); ++i) {
    out.inverses[static_cast<std::size_t>(i)] = inverse_table(c, i, i - 1, exec);
    const auto& inv = out.inverses[static_cast<std::size_t>(i)];
    for (CellId u = 0; u < inv.size(); ++u)
      if (inv[u] == kNoCell) out.missing.push_back({"inverse", i, i - 1, -1, "'" + c.name(i, u) + "' has no inverse"});
  }
  out.ok = out.missing.empty();
  return out;
}

bool has_inverses(const TruncatedOmegaCat& c, InverseCondition which, Exec exec) {
  for (int i = 1; i <= c.level(); ++i) {
    bool ok = false;
    switch (which) {
      case InverseCondition::all_pairs:
        ok = true;
        for (int j = 0; j < i && ok; ++j) ok = level_has_inverses(c, i, j, exec);
        break;
      case InverseCondition::adjacent:
        ok = level_has_inverses(c, i, i - 1, exec);
        break;
      case InverseCondition::to_objects:
        ok = level_has_inverses(c, i, 0, exec);
        break;
      case InverseCondition::some_j:
        for (int j = 0; j < i && !ok; ++j) ok = level_has_inverses(c, i, j, exec);
        break;
    }
    if (!ok) return false;
  }
  return true;
}

TruncatedOmegaGpd::TruncatedOmegaGpd(TruncatedOmegaCat c, Exec exec) : TruncatedOmegaCat(std::move(c)) {
  const int n = level();
  inverses_.resize(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) {
      auto inv = inverse_table(*this, i, j, exec);
      for (CellId u = 0; u < inv.size(); ++u)
        if (inv[u] == kNoCell)
          throw InvalidInput("not a groupoid: '" + name(i, u) + "' has no inverse for composition " + dim(i) + "," + dim(j));
      inverses_[slot(i, j)] = std::move(inv);
    }
}

TruncatedOmegaGpd::TruncatedOmegaGpd(TruncatedOmegaCat c, std::vector<std::vector<CellId>> inverses)
    : TruncatedOmegaCat(std::move(c)), inverses_(std::move(inverses)) {
  const int n = level();
  if (inverses_.size() != static_cast<std::size_t>(n * (n + 1) / 2)) throw InvalidInput("inverse tables: wrong number of tables");
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) {
      const auto& inv = inverses_[slot(i, j)];
      if (inv.size() != count(i)) throw InvalidInput("inverse table " + dim(i) + "," + dim(j) + " has the wrong length");
      for (CellId u = 0; u < inv.size(); ++u)
        if (inv[u] >= count(i) || !is_inverse(*this, i, j, u, inv[u]))
          throw InvalidInput("inverse table " + dim(i) + "," + dim(j) + " is wrong at '" + name(i, u) + "'");
    }
}

CellId TruncatedOmegaGpd::inverse(int i, int j, CellId u) const { return inverses_[slot(i, j)][u]; }

CellId horizontal_inverse_from_vertical(const TruncatedOmegaCat& c, CellId alpha, CellId vertical_inverse) {
  if (c.level() < 2) throw InvalidInput("horizontal_inverse_from_vertical: needs 2-cells");
  if (alpha >= c.count(2) || vertical_inverse >= c.count(2)) throw InvalidInput("horizontal_inverse_from_vertical: unknown 2-cell");
  const CellId u = c.src(2, alpha), v = c.tgt(2, alpha);
  if (c.src(2, vertical_inverse) != v || c.tgt(2, vertical_inverse) != u)
    throw InvalidInput("horizontal_inverse_from_vertical: vertical inverse must go from the target back to the source");
  auto u_inv = find_inverse(c, u, 1, 0), v_inv = find_inverse(c, v, 1, 0);
  if (!u_inv || !v_inv) throw InvalidInput("horizontal_inverse_from_vertical: boundary 1-cells must be invertible");
  const CellId right = c.compose(2, 0, vertical_inverse, c.unit(1, *u_inv));
  const CellId result = right == kNoCell ? kNoCell : c.compose(2, 0, c.unit(1, *v_inv), right);
  if (result == kNoCell || !is_inverse(c, 2, 0, alpha, result))
    throw InvariantFailure("horizontal_inverse_from_vertical: result is not the horizontal inverse of '" + c.name(2, alpha) + "'");
  return result;
}

std::vector<std::vector<bool>> weakly_invertible_cells(const TruncatedOmegaCat& c) {
  const int n = c.level();
  std::vector<std::vector<bool>> weak(static_cast<std::size_t>(n) + 1);
  weak[0].assign(c.count(0), true);
  if (n == 0) return weak;
  auto& top = weak[static_cast<std::size_t>(n)];
  top.resize(c.count(n));
  for (CellId u = 0; u < c.count(n); ++u) top[u] = find_inverse(c, u, n, n - 1).has_value();
  // Level m depends only on level m+1, so one downward pass reaches the fixpoint.
  for (int m = n - 1; m >= 1; --m) {
    std::unordered_set<std::uint64_t> linked;
    const auto& above = weak[static_cast<std::size_t>(m) + 1];
    for (CellId w = 0; w < c.count(m + 1); ++w) {
      if (!above[w]) continue;
      const std::uint64_t a = c.src(m + 1, w), b = c.tgt(m + 1, w);
      linked.insert(a << 32 | b);
      linked.insert(b << 32 | a);
    }
    auto connected = [&](CellId a, CellId b) {
      return a != kNoCell && b != kNoCell && (a == b || linked.contains(std::uint64_t{a} << 32 | b));
    };
    auto& here = weak[static_cast<std::size_t>(m)];
    here.resize(c.count(m));
    for (CellId u = 0; u < c.count(m); ++u) {
      const CellId x = c.src(m, u), y = c.tgt(m, u);
      for (CellId v : c.with_src(m, m - 1, y)) {
        if (c.tgt(m, v) != x) continue;
        if (connected(c.compose(m, m - 1, u, v), c.unit(m - 1, y)) && connected(c.compose(m, m - 1, v, u), c.unit(m - 1, x))) {
          here[u] = true;
          break;
        }
      }
    }
  }
  return weak;
}

bool is_quasi_strict_groupoid(const TruncatedOmegaCat& c) {
  auto weak = weakly_invertible_cells(c);
  for (const auto& lvl : weak)
    if (std::find(lvl.begin(), lvl.end(), false) != lvl.end()) return false;
  return true;
}

OmegaMorphism OmegaMorphism::identity(std::shared_ptr<const TruncatedOmegaCat> c) {
  OmegaMorphism f{c, c, {}};
  for (int d = 0; d <= c->level(); ++d) {
    std::vector<CellId> ids(c->count(d));
    std::iota(ids.begin(), ids.end(), CellId{0});
    f.levels.push_back(std::move(ids));
  }
  return f;
}

std::vector<Violation> validate_morphism(const OmegaMorphism& f) {
  std::vector<Violation> out;
  if (!f.source || !f.target) {
    out.push_back({"morphism-shape", -1, -1, -1, "missing source or target"});
    return out;
  }
  const auto& a = *f.source;
  const auto& b = *f.target;
  if (a.level() != b.level()) {
    out.push_back({"morphism-shape", -1, -1, -1, "source and target have different levels"});
    return out;
  }
  const int n = a.level();
  if (f.levels.size() != static_cast<std::size_t>(n) + 1) {
    out.push_back({"morphism-shape", -1, -1, -1, "expected one cell map per dimension"});
    return out;
  }
  for (int d = 0; d <= n; ++d) {
    const auto& m = f.levels[static_cast<std::size_t>(d)];
    if (m.size() != a.count(d)) out.push_back({"morphism-shape", d, -1, -1, "cell map has the wrong length"});
    else
      for (CellId x : m)
        if (x >= b.count(d)) out.push_back({"morphism-shape", d, -1, -1, "cell map points outside the target"});
  }
  if (!out.empty()) return out;
  for (int d = 1; d <= n; ++d)
    for (CellId u = 0; u < a.count(d); ++u) {
      if (f(d - 1, a.src(d, u)) != b.src(d, f(d, u)))
        out.push_back({"morphism-source", d, -1, -1, "at '" + a.name(d, u) + "'"});
      if (f(d - 1, a.tgt(d, u)) != b.tgt(d, f(d, u)))
        out.push_back({"morphism-target", d, -1, -1, "at '" + a.name(d, u) + "'"});
    }
  for (int d = 0; d < n; ++d)
    for (CellId u = 0; u < a.count(d); ++u)
      if (f(d + 1, a.unit(d, u)) != b.unit(d, f(d, u))) out.push_back({"morphism-unit", d, -1, -1, "at '" + a.name(d, u) + "'"});
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      for (CellId v = 0; v < a.count(i); ++v) {
        auto us = a.with_tgt(i, j, a.src(i, j, v));
        auto rs = a.row(i, j, v);
        for (std::size_t p = 0; p < us.size(); ++p) {
          if (rs[p] == kNoCell) continue;
          if (b.compose(i, j, f(i, v), f(i, us[p])) != f(i, rs[p]))
            out.push_back({"morphism-composition", i, j, -1, "at '" + a.name(i, v) + "' * '" + a.name(i, us[p]) + "'"});
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace ogk
