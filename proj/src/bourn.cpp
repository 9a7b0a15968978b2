#include "ogk/bourn.hpp"

#include "ogk/error.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace ogk {

using detail::sweep;

namespace {

std::string deg(int d) { return std::to_string(d); }

std::size_t idx(int d) { return static_cast<std::size_t>(d); }

} // namespace

AbHom AbOmegaGroupoid::src_to(int i, int j) const {
  AbHom f = AbHom::identity(groups[idx(i)]);
  for (int d = i; d > j; --d) f = ogk::compose(src[idx(d)], f);
  return f;
}

AbHom AbOmegaGroupoid::tgt_to(int i, int j) const {
  AbHom f = AbHom::identity(groups[idx(i)]);
  for (int d = i; d > j; --d) f = ogk::compose(tgt[idx(d)], f);
  return f;
}

AbHom AbOmegaGroupoid::unit_from(int i, int j) const {
  AbHom f = AbHom::identity(groups[idx(j)]);
  for (int d = j; d < i; ++d) f = ogk::compose(units[idx(d)], f);
  return f;
}

bool AbOmegaGroupoid::all_finite() const {
  return std::all_of(groups.begin(), groups.end(), [](const FgAbGroup& g) { return g.is_finite(); });
}

IntVector AbOmegaGroupoid::compose(int i, int j, const IntVector& v, const IntVector& u) const {
  if (!(0 <= j && j < i && i <= level)) throw InvalidInput("compose: bad dimensions");
  const AbHom s = src_to(i, j), t = tgt_to(i, j);
  IntVector sv = s(v), tu = t(u);
  for (std::size_t k = 0; k < sv.size(); ++k) sv[k] -= tu[k];
  if (!groups[idx(j)].is_zero(sv)) throw InvalidInput("compose: cells are not composable");
  IntVector ks = unit_from(i, j)(s(v));
  IntVector r(v.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = v[k] - ks[k] + u[k];
  return groups[idx(i)].reduce(std::move(r));
}

IntVector AbOmegaGroupoid::inverse(int i, int j, const IntVector& u) const {
  if (!(0 <= j && j < i && i <= level)) throw InvalidInput("inverse: bad dimensions");
  const AbHom k = unit_from(i, j);
  IntVector a = k(src_to(i, j)(u)), b = k(tgt_to(i, j)(u));
  IntVector r(u.size());
  for (std::size_t x = 0; x < r.size(); ++x) r[x] = a[x] + b[x] - u[x];
  return groups[idx(i)].reduce(std::move(r));
}

std::vector<std::string> validate(const AbOmegaGroupoid& g) {
  const int n = g.level;
  if (n < 0 || g.groups.size() != idx(n) + 1 || g.src.size() != idx(n) + 1 || g.tgt.size() != idx(n) + 1 || g.units.size() != idx(n))
    return {"shape: expected groups 0..N, src/tgt 1..N and units 0..N-1"};
  std::vector<std::string> out;
  for (int d = 1; d <= n; ++d) {
    for (const AbHom* f : {&g.src[idx(d)], &g.tgt[idx(d)]})
      if (f->source() != g.groups[idx(d)] || f->target() != g.groups[idx(d - 1)]) out.push_back("src/tgt " + deg(d) + " has the wrong type");
  }
  for (int d = 0; d < n; ++d)
    if (g.units[idx(d)].source() != g.groups[idx(d)] || g.units[idx(d)].target() != g.groups[idx(d + 1)])
      out.push_back("unit " + deg(d) + " has the wrong type");
  if (!out.empty()) return out;
  for (int d = 2; d <= n; ++d) {
    const auto& s1 = g.src[idx(d - 1)];
    const auto& t1 = g.tgt[idx(d - 1)];
    if (!same_map(compose(s1, g.src[idx(d)]), compose(s1, g.tgt[idx(d)]))) out.push_back("globular: ss != st in dimension " + deg(d));
    if (!same_map(compose(t1, g.src[idx(d)]), compose(t1, g.tgt[idx(d)]))) out.push_back("globular: ts != tt in dimension " + deg(d));
  }
  for (int d = 0; d < n; ++d) {
    const auto id = AbHom::identity(g.groups[idx(d)]);
    if (!same_map(compose(g.src[idx(d + 1)], g.units[idx(d)]), id)) out.push_back("unit: s k != id in dimension " + deg(d));
    if (!same_map(compose(g.tgt[idx(d + 1)], g.units[idx(d)]), id)) out.push_back("unit: t k != id in dimension " + deg(d));
  }
  return out;
}

KImage k_functor_blocks(const ChainComplex& c, int level) {
  if (!validate(c).empty()) throw InvalidInput("k_functor: d∘d != 0");
  if (c.lower_bound() < 0) throw InvalidInput("k_functor: complex must live in degrees ≥ 0");
  if (level < 0 || c.upper_bound() > level) throw InvalidInput("k_functor: level must be at least the upper bound " + deg(c.upper_bound()));
  KImage out;
  auto& g = out.groupoid;
  g.level = level;
  for (int i = 0; i <= level; ++i) {
    std::vector<FgAbGroup> parts;
    for (int m = i; m >= 0; --m) parts.push_back(c.component(m));
    out.blocks.push_back(direct_sum_maps(parts));
    g.groups.push_back(out.blocks.back().group);
  }
  g.src.emplace_back();
  g.tgt.emplace_back();
  for (int i = 1; i <= level; ++i) {
    const auto& here = out.blocks[idx(i)];
    const auto& below = out.blocks[idx(i - 1)];
    AbHom s = AbHom::zero(here.group, below.group);
    for (int k = 1; k <= i; ++k) s = s + compose(below.injections[idx(k - 1)], here.projections[idx(k)]);
    AbHom t = s + compose(below.injections[0], compose(c.differential(i), here.projections[0]));
    g.src.push_back(std::move(s));
    g.tgt.push_back(std::move(t));
  }
  for (int i = 0; i < level; ++i) {
    const auto& here = out.blocks[idx(i)];
    const auto& above = out.blocks[idx(i + 1)];
    AbHom k = AbHom::zero(here.group, above.group);
    for (int m = 0; m <= i; ++m) k = k + compose(above.injections[idx(m + 1)], here.projections[idx(m)]);
    g.units.push_back(std::move(k));
  }
  return out;
}

AbOmegaGroupoid k_functor(const ChainComplex& c, int level) { return k_functor_blocks(c, level).groupoid; }

std::vector<AbHom> k_functor_map(const ChainMap& f, int level) {
  if (!validate(f).empty()) throw InvalidInput("k_functor_map: not a chain map");
  auto a = k_functor_blocks(f.source, level), b = k_functor_blocks(f.target, level);
  std::vector<AbHom> out;
  for (int i = 0; i <= level; ++i) {
    const auto& sa = a.blocks[idx(i)];
    const auto& sb = b.blocks[idx(i)];
    AbHom h = AbHom::zero(sa.group, sb.group);
    for (int k = 0; k <= i; ++k) h = h + compose(sb.injections[idx(k)], compose(f.level(i - k), sa.projections[idx(k)]));
    out.push_back(std::move(h));
  }
  return out;
}

HImage h_functor_data(const AbOmegaGroupoid& g) {
  auto bad = validate(g);
  if (!bad.empty()) throw InvalidInput("h_functor: " + bad.front());
  HImage out;
  std::vector<FgAbGroup> comps;
  std::vector<AbHom> diffs;
  for (int i = 0; i <= g.level; ++i) {
    if (i == 0) {
      out.inclusions.push_back(AbHom::identity(g.groups[0]));
      out.retractions.push_back(AbHom::identity(g.groups[0]));
    } else {
      Subgroup ker = kernel(g.src[idx(i)]);
      const AbHom id = AbHom::identity(g.groups[idx(i)]);
      out.inclusions.push_back(ker.inclusion());
      out.retractions.push_back(ker.corestrict(id + -compose(g.units[idx(i - 1)], g.src[idx(i)])));
    }
    comps.push_back(out.inclusions.back().source());
    if (i > 0) diffs.push_back(compose(out.retractions[idx(i - 1)], compose(g.tgt[idx(i)], out.inclusions[idx(i)])));
  }
  out.complex = ChainComplex(0, g.level, std::move(comps), std::move(diffs));
  if (!validate(out.complex).empty()) throw InvariantFailure("h_functor: d∘d != 0");
  return out;
}

ChainComplex h_functor(const AbOmegaGroupoid& g) { return h_functor_data(g).complex; }

ChainMap hk_unit(const ChainComplex& c, int level) {
  auto k = k_functor_blocks(c, level);
  auto h = h_functor_data(k.groupoid);
  ChainMap f{c, h.complex, {}};
  for (int i = std::max(0, c.lower_bound()); i <= c.upper_bound(); ++i)
    f.levels[i] = compose(h.retractions[idx(i)], k.blocks[idx(i)].injections[0]);
  return f;
}

std::vector<AbHom> kh_counit(const AbOmegaGroupoid& g) {
  auto h = h_functor_data(g);
  auto k = k_functor_blocks(h.complex, g.level);
  std::vector<AbHom> out;
  for (int i = 0; i <= g.level; ++i) {
    const auto& blk = k.blocks[idx(i)];
    AbHom f = AbHom::zero(blk.group, g.groups[idx(i)]);
    for (int m = 0; m <= i; ++m)
      f = f + compose(g.unit_from(i, m), compose(h.inclusions[idx(m)], blk.projections[idx(i - m)]));
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::string> validate_ab_morphism(const AbOmegaGroupoid& a, const AbOmegaGroupoid& b, const std::vector<AbHom>& f) {
  if (a.level != b.level || f.size() != idx(a.level) + 1) return {"shape"};
  std::vector<std::string> out;
  for (int d = 0; d <= a.level; ++d)
    if (f[idx(d)].source() != a.groups[idx(d)] || f[idx(d)].target() != b.groups[idx(d)]) out.push_back("level " + deg(d) + " has the wrong type");
  if (!out.empty()) return out;
  for (int d = 1; d <= a.level; ++d) {
    if (!same_map(compose(b.src[idx(d)], f[idx(d)]), compose(f[idx(d - 1)], a.src[idx(d)]))) out.push_back("source at " + deg(d));
    if (!same_map(compose(b.tgt[idx(d)], f[idx(d)]), compose(f[idx(d - 1)], a.tgt[idx(d)]))) out.push_back("target at " + deg(d));
  }
  for (int d = 0; d < a.level; ++d)
    if (!same_map(compose(b.units[idx(d)], f[idx(d)]), compose(f[idx(d + 1)], a.units[idx(d)]))) out.push_back("unit at " + deg(d));
  return out;
}

std::size_t max_cells_from_env() {
  const char* v = std::getenv("OGK_MAX_CELLS");
  if (!v || !*v) return 20000;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw InvalidInput("OGK_MAX_CELLS must be a positive integer");
  return static_cast<std::size_t>(n);
}

namespace {

/// Index arithmetic on a finite canonical group, elements in enumerator order.
class Arith {
public:
  explicit Arith(const FgAbGroup& g) {
    FiniteAbEnumerator e(g);
    orders_.assign(e.orders().begin(), e.orders().end());
    n_ = e.size();
    std::size_t stride = 1;
    for (auto o : orders_) {
      strides_.push_back(stride);
      stride *= static_cast<std::size_t>(o);
    }
  }
  std::size_t size() const { return n_; }
  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t r = 0;
    for (std::size_t k = 0; k < orders_.size(); ++k) {
      const auto o = static_cast<std::size_t>(orders_[k]);
      r += ((a / strides_[k] % o + b / strides_[k] % o) % o) * strides_[k];
    }
    return r;
  }
  std::size_t neg(std::size_t a) const {
    std::size_t r = 0;
    for (std::size_t k = 0; k < orders_.size(); ++k) {
      const auto o = static_cast<std::size_t>(orders_[k]);
      r += ((o - a / strides_[k] % o) % o) * strides_[k];
    }
    return r;
  }
  std::string name(std::size_t a) const {
    if (orders_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < orders_.size(); ++k)
      s += (k ? "," : "") + std::to_string(a / strides_[k] % static_cast<std::size_t>(orders_[k]));
    return s;
  }

private:
  std::vector<std::int64_t> orders_;
  std::vector<std::size_t> strides_;
  std::size_t n_ = 1;
};

std::vector<CellId> tabulate(const AbHom& f, std::size_t n) {
  FiniteAbMap m(f);
  std::vector<CellId> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = static_cast<CellId>(m(x));
  return out;
}

} // namespace

TruncatedOmegaGpd materialize(const AbOmegaGroupoid& g, std::size_t max_cells, Exec exec) {
  if (!g.all_finite()) throw Unsupported("materialize: some group is infinite");
  auto bad = validate(g);
  if (!bad.empty()) throw InvalidInput("materialize: " + bad.front());
  const int n = g.level;
  std::vector<Integer> sizes;
  Integer cells = 0;
  for (const auto& grp : g.groups) {
    sizes.push_back(grp.order());
    cells += sizes.back();
  }
  if (cells > max_cells) throw SizeLimitExceeded("materialize: " + cells.get_str() + " cells exceed the limit of " + std::to_string(max_cells));
  Integer pairs = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) pairs += sizes[idx(i)] * sizes[idx(i)] / sizes[idx(j)];
  if (pairs > Integer(200) * max_cells)
    throw SizeLimitExceeded("materialize: " + pairs.get_str() + " composable pairs exceed the limit of " + std::to_string(200 * max_cells));

  std::vector<Arith> ar;
  for (const auto& grp : g.groups) ar.emplace_back(grp);
  TruncatedGlobularSet s(n);
  for (int d = 0; d <= n; ++d) {
    const auto& a = ar[idx(d)];
    std::vector<CellId> sv, tv;
    if (d > 0) {
      sv = tabulate(g.src[idx(d)], a.size());
      tv = tabulate(g.tgt[idx(d)], a.size());
    }
    for (std::size_t x = 0; x < a.size(); ++x) s.add(d, a.name(x), d ? sv[x] : kNoCell, d ? tv[x] : kNoCell);
  }
  std::vector<std::vector<CellId>> units;
  for (int d = 0; d < n; ++d) units.push_back(tabulate(g.units[idx(d)], ar[idx(d)].size()));
  TruncatedOmegaCat c(std::move(s), std::move(units));

  std::vector<std::vector<CellId>> inverses(idx(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) {
      const Arith& a = ar[idx(i)];
      const auto ks = tabulate(compose(g.unit_from(i, j), g.src_to(i, j)), a.size());
      const auto kt = tabulate(compose(g.unit_from(i, j), g.tgt_to(i, j)), a.size());
      // v ∗ u = (v − κ s v) + u
      const auto count = static_cast<long long>(a.size());
      auto fill = [&](long long vi) {
        const auto v = static_cast<CellId>(vi);
        const std::size_t w = a.add(v, a.neg(ks[v]));
        auto us = c.with_tgt(i, j, c.src(i, j, v));
        auto row = c.row(i, j, v);
        for (std::size_t p = 0; p < us.size(); ++p) row[p] = static_cast<CellId>(a.add(w, us[p]));
      };
      if (exec == Exec::serial) {
        for (long long v = 0; v < count; ++v) fill(v);
      } else {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long v = 0; v < count; ++v) fill(v);
      }
      auto& inv = inverses[TruncatedOmegaCat::slot(i, j)];
      inv.resize(a.size());
      for (std::size_t u = 0; u < a.size(); ++u) inv[u] = static_cast<CellId>(a.add(a.add(ks[u], kt[u]), a.neg(u)));
    }
  return TruncatedOmegaGpd(std::move(c), std::move(inverses));
}

OmegaMorphism materialize_map(const std::vector<AbHom>& f, std::shared_ptr<const TruncatedOmegaCat> source,
                              std::shared_ptr<const TruncatedOmegaCat> target) {
  if (f.size() != idx(source->level()) + 1) throw InvalidInput("materialize_map: wrong number of levels");
  OmegaMorphism m{source, target, {}};
  for (int d = 0; d <= source->level(); ++d) {
    if (f[idx(d)].source().order() != source->count(d) || f[idx(d)].target().order() != target->count(d))
      throw InvalidInput("materialize_map: level " + deg(d) + " does not match the materialized groupoids");
    m.levels.push_back(tabulate(f[idx(d)], source->count(d)));
  }
  return m;
}

std::vector<Violation> check_eckmann_hilton(const TruncatedOmegaCat& g) {
  if (!is_one_reduced(g)) throw InvalidInput("check_eckmann_hilton: groupoid is not 1-reduced");
  std::vector<Violation> out;
  for (int i = 2; i <= g.level(); ++i) {
    const CellId zero = g.unit(i, 0, 0);
    sweep(g.count(i), Exec::parallel, out, [&](std::size_t vi, std::vector<Violation>& o) {
      const auto v = static_cast<CellId>(vi);
      if (g.compose(i, 0, zero, v) != v || g.compose(i, 0, v, zero) != v)
        o.push_back({"eckmann-hilton-unit", i, 0, -1, "'" + g.name(i, v) + "'"});
      for (CellId u = 0; u < g.count(i); ++u) {
        const CellId a = g.compose(i, 0, v, u);
        if (a != g.compose(i, 1, v, u)) o.push_back({"eckmann-hilton-exchange", i, 1, -1, "'" + g.name(i, v) + "', '" + g.name(i, u) + "'"});
        if (a != g.compose(i, 0, u, v)) o.push_back({"eckmann-hilton-commutative", i, 0, -1, "'" + g.name(i, v) + "', '" + g.name(i, u) + "'"});
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct LevelBasis {
  FgAbGroup group;
  std::vector<IntVector> coords;  // per cell
  std::vector<CellId> gen_cell;   // per canonical generator
};

// Canonical form of the group of i-cells under ∗ⁱ₀ on a 1-reduced groupoid.
LevelBasis level_basis(const TruncatedOmegaCat& g, int i) {
  const std::size_t n = g.count(i);
  const CellId zero = g.unit(i, 0, 0);
  auto add = [&](CellId a, CellId b) {
    const CellId r = g.compose(i, 0, a, b);
    if (r == kNoCell) throw InvariantFailure("abelianize: composition table is incomplete");
    return r;
  };
  // Greedy generators with breadth-first words.
  std::vector<CellId> gens;
  std::vector<IntVector> word(n);
  std::vector<bool> seen(n, false);
  std::vector<CellId> reached{zero};
  seen[zero] = true;
  for (CellId a = 0; a < n; ++a) {
    if (seen[a]) continue;
    gens.push_back(a);
    for (auto& w : word)
      if (!w.empty()) w.push_back(0);
    for (std::size_t k = 0; k < reached.size(); ++k) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const CellId y = add(reached[k], gens[s]);
        if (seen[y]) continue;
        seen[y] = true;
        IntVector w = word[reached[k]].empty() ? IntVector(gens.size(), 0) : word[reached[k]];
        w.resize(gens.size(), 0);
        w[s] += 1;
        word[y] = std::move(w);
        reached.push_back(y);
      }
    }
  }
  const std::size_t r = gens.size();
  for (auto& w : word) w.resize(r, 0);

  IntMatrix lattice(r, 0);
  for (std::size_t s = 0; s < r; ++s) {
    long order = 1;
    for (CellId x = gens[s]; x != zero; x = add(x, gens[s])) ++order;
    IntVector col(r, 0);
    col[s] = order;
    lattice = hstack(lattice, IntMatrix::column(col));
  }
  // Cayley-graph relations until the lattice has index n, at which point it is
  // the whole relation lattice.
  lattice = image_basis(lattice);
  const Integer target(static_cast<unsigned long>(n));
  auto index_of = [&] { return r == 0 ? Integer(1) : Integer(abs(determinant(lattice))); };
  Integer index = index_of();
  LatticeSolver solver(lattice);
  for (CellId x = 0; x < n && index != target; ++x)
    for (std::size_t s = 0; s < r && index != target; ++s) {
      IntVector rel = word[x];
      rel[s] += 1;
      const auto& w = word[add(x, gens[s])];
      for (std::size_t k = 0; k < r; ++k) rel[k] -= w[k];
      if (solver.solve(rel)) continue;
      lattice = image_basis(hstack(lattice, IntMatrix::column(rel)));
      index = index_of();
      solver = LatticeSolver(lattice);
    }
  if (index != target) throw InvariantFailure("abelianize: relation lattice has the wrong index");

  Presentation p = present(lattice);
  LevelBasis out;
  out.group = p.group;
  std::map<IntVector, CellId> by_coords;
  for (CellId x = 0; x < n; ++x) {
    IntVector c = p.group.reduce(p.to_canonical * std::span<const Integer>(word[x]));
    if (!by_coords.emplace(c, x).second) throw InvariantFailure("abelianize: two cells share canonical coordinates");
    out.coords.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < p.group.generator_count(); ++k) {
    IntVector e(p.group.generator_count(), 0);
    e[k] = 1;
    out.gen_cell.push_back(by_coords.at(p.group.reduce(e)));
  }
  return out;
}

} // namespace

Abelianization abelianize_one_reduced(const TruncatedOmegaCat& g) {
  if (!is_one_reduced(g)) throw InvalidInput("abelianize: groupoid is not 1-reduced");
  auto eh = check_eckmann_hilton(g);
  if (!eh.empty()) throw InvariantFailure("abelianize: Eckmann-Hilton fails (" + eh.front().axiom + " at " + eh.front().detail + ")");
  const int n = g.level();
  std::vector<LevelBasis> lv;
  for (int d = 0; d <= n; ++d) {
    if (d <= 1) {
      LevelBasis b;
      b.coords.assign(g.count(d), IntVector{});
      lv.push_back(std::move(b));
    } else {
      lv.push_back(level_basis(g, d));
    }
  }
  Abelianization out;
  auto& a = out.groupoid;
  a.level = n;
  for (const auto& b : lv) a.groups.push_back(b.group);
  // Matrix on generators, then checked against every cell.
  auto structure = [&](int from, int to, auto&& cell_map, const std::string& what) {
    const auto& bf = lv[idx(from)];
    const auto& bt = lv[idx(to)];
    IntMatrix m(bt.group.generator_count(), bf.group.generator_count());
    for (std::size_t k = 0; k < bf.gen_cell.size(); ++k) m.set_col(k, bt.coords[cell_map(bf.gen_cell[k])]);
    AbHom h;
    try {
      h = AbHom(bf.group, bt.group, m);
    } catch (const InvalidInput&) {
      throw InvariantFailure("abelianize: " + what + " is not a homomorphism");
    }
    for (CellId x = 0; x < g.count(from); ++x)
      if (h(bf.coords[x]) != bt.coords[cell_map(x)]) throw InvariantFailure("abelianize: " + what + " is not a homomorphism");
    return h;
  };
  a.src.emplace_back();
  a.tgt.emplace_back();
  for (int d = 1; d <= n; ++d) {
    a.src.push_back(structure(d, d - 1, [&](CellId x) { return g.src(d, x); }, "source map " + deg(d)));
    a.tgt.push_back(structure(d, d - 1, [&](CellId x) { return g.tgt(d, x); }, "target map " + deg(d)));
  }
  for (int d = 0; d < n; ++d) a.units.push_back(structure(d, d + 1, [&](CellId x) { return g.unit(d, x); }, "unit map " + deg(d)));
  for (auto& b : lv) out.coords.push_back(std::move(b.coords));
  auto bad = validate(a);
  if (!bad.empty()) throw InvariantFailure("abelianize: " + bad.front());
  return out;
}

std::vector<std::vector<CellId>> abelianization_cells(const Abelianization& a) {
  std::vector<std::vector<CellId>> out;
  for (int d = 0; d <= a.groupoid.level; ++d) {
    FiniteAbEnumerator e(a.groupoid.groups[idx(d)]);
    std::vector<CellId> m;
    for (const auto& c : a.coords[idx(d)]) m.push_back(static_cast<CellId>(e.encode(std::span<const Integer>(c))));
    out.push_back(std::move(m));
  }
  return out;
}

AbOmegaGroupoid em_groupoid(const FgAbGroup& a, int n, int level) {
  if (n < 0) throw InvalidInput("em_groupoid: n must be ≥ 0");
  if (level < n) throw InvalidInput("em_groupoid: level " + deg(level) + " is below n = " + deg(n));
  AbOmegaGroupoid g;
  g.level = level;
  for (int d = 0; d <= level; ++d) g.groups.push_back(d >= n ? a : FgAbGroup::trivial());
  g.src.emplace_back();
  g.tgt.emplace_back();
  for (int d = 1; d <= level; ++d) {
    AbHom f = d > n ? AbHom::identity(a) : AbHom::zero(g.groups[idx(d)], g.groups[idx(d - 1)]);
    g.src.push_back(f);
    g.tgt.push_back(f);
  }
  for (int d = 0; d < level; ++d) g.units.push_back(d >= n ? AbHom::identity(a) : AbHom::zero(g.groups[idx(d)], g.groups[idx(d + 1)]));
  return g;
}

TruncatedOmegaCat raise_level(const TruncatedOmegaCat& c, int level) {
  const int low = c.level();
  if (level < low) throw InvalidInput("raise_level: target level is below the current one");
  TruncatedGlobularSet s = c.carrier();
  s.level = level;
  for (int d = low + 1; d <= level; ++d) {
    s.names.push_back(c.carrier().names[idx(low)]);
    std::vector<CellId> ids(c.count(low));
    std::iota(ids.begin(), ids.end(), CellId{0});
    s.src.push_back(ids);
    s.tgt.push_back(ids);
  }
  std::vector<std::vector<CellId>> units;
  for (int d = 0; d < level; ++d) {
    if (d < low) {
      std::vector<CellId> u;
      for (CellId x = 0; x < c.count(d); ++x) u.push_back(c.unit(d, x));
      units.push_back(std::move(u));
    } else {
      std::vector<CellId> ids(c.count(low));
      std::iota(ids.begin(), ids.end(), CellId{0});
      units.push_back(std::move(ids));
    }
  }
  TruncatedOmegaCat out(std::move(s), std::move(units));
  for (int i = 1; i <= level; ++i)
    for (int j = 0; j < i; ++j) {
      const int bi = std::min(i, low);
      for (CellId v = 0; v < out.count(i); ++v)
        for (CellId u : out.with_tgt(i, j, out.src(i, j, v))) {
          const CellId r = j < low ? c.compose(bi, j, v, u) : u;
          if (r != kNoCell) out.set_composition(i, j, v, u, r);
        }
    }
  return out;
}

TruncatedOmegaGpd em_groupoid0(const std::vector<std::string>& objects, int level) {
  if (level < 0) throw InvalidInput("em_groupoid0: level must be ≥ 0");
  TruncatedGlobularSet s(0);
  for (const auto& o : objects) s.add(0, o);
  return TruncatedOmegaGpd(raise_level(TruncatedOmegaCat(std::move(s), {}), level));
}

TruncatedOmegaGpd em_groupoid1(const FiniteGroup& gp, int level) {
  if (level < 1) throw InvalidInput("em_groupoid1: level must be ≥ 1");
  auto bad = validate(gp);
  if (!bad.empty()) throw InvalidInput("em_groupoid1: " + bad.front());
  TruncatedGlobularSet s(1);
  s.add(0, "*");
  for (const auto& e : gp.elements) s.add(1, e, 0, 0);
  TruncatedOmegaCat c(std::move(s), {{static_cast<CellId>(gp.identity)}});
  for (CellId a = 0; a < gp.size(); ++a)
    for (CellId b = 0; b < gp.size(); ++b) c.set_composition(1, 0, a, b, static_cast<CellId>(gp.mul(a, b)));
  return TruncatedOmegaGpd(raise_level(c, level));
}

TruncatedOmegaGpd trivial_groupoid(int level) { return em_groupoid0({"*"}, level); }

TruncatedOmegaGpd product_groupoid(const std::vector<TruncatedOmegaGpd>& gs, int level) {
  if (gs.empty()) return trivial_groupoid(level);
  for (const auto& g : gs)
    if (g.level() != level) throw InvalidInput("product_groupoid: factors must share the level " + deg(level));
  const std::size_t limit = max_cells_from_env();
  std::vector<std::vector<std::size_t>> radix(idx(level) + 1);
  std::vector<std::size_t> total(idx(level) + 1, 1);
  std::size_t cells = 0;
  for (int d = 0; d <= level; ++d) {
    for (const auto& g : gs) {
      radix[idx(d)].push_back(g.count(d));
      if (total[idx(d)] > limit) break;
      total[idx(d)] *= g.count(d);
    }
    cells += total[idx(d)];
    if (total[idx(d)] > limit || cells > limit)
      throw SizeLimitExceeded("product_groupoid: more than " + std::to_string(limit) + " cells");
  }
  auto split = [&](int d, std::size_t x) {
    std::vector<CellId> parts(gs.size());
    for (std::size_t k = gs.size(); k-- > 0;) {
      parts[k] = static_cast<CellId>(x % radix[idx(d)][k]);
      x /= radix[idx(d)][k];
    }
    return parts;
  };
  auto join = [&](int d, const std::vector<CellId>& parts) {
    std::size_t x = 0;
    for (std::size_t k = 0; k < gs.size(); ++k) x = x * radix[idx(d)][k] + parts[k];
    return static_cast<CellId>(x);
  };
  auto map_parts = [&](int d, int e, std::size_t x, auto&& f) {
    auto parts = split(d, x);
    for (std::size_t k = 0; k < gs.size(); ++k) parts[k] = f(gs[k], parts[k]);
    return join(e, parts);
  };
  TruncatedGlobularSet s(level);
  for (int d = 0; d <= level; ++d)
    for (std::size_t x = 0; x < total[idx(d)]; ++x) {
      auto parts = split(d, x);
      std::string nm = "(";
      for (std::size_t k = 0; k < gs.size(); ++k) nm += (k ? "," : "") + gs[k].name(d, parts[k]);
      nm += ")";
      CellId sv = kNoCell, tv = kNoCell;
      if (d > 0) {
        sv = map_parts(d, d - 1, x, [&](const TruncatedOmegaGpd& g, CellId u) { return g.src(d, u); });
        tv = map_parts(d, d - 1, x, [&](const TruncatedOmegaGpd& g, CellId u) { return g.tgt(d, u); });
      }
      s.add(d, std::move(nm), sv, tv);
    }
  std::vector<std::vector<CellId>> units(idx(level));
  for (int d = 0; d < level; ++d)
    for (std::size_t x = 0; x < total[idx(d)]; ++x)
      units[idx(d)].push_back(map_parts(d, d + 1, x, [&](const TruncatedOmegaGpd& g, CellId u) { return g.unit(d, u); }));
  TruncatedOmegaCat c(std::move(s), std::move(units));
  std::vector<std::vector<CellId>> inverses(idx(level * (level + 1) / 2));
  for (int i = 1; i <= level; ++i)
    for (int j = 0; j < i; ++j) {
      for (CellId v = 0; v < c.count(i); ++v) {
        const auto vp = split(i, v);
        auto us = c.with_tgt(i, j, c.src(i, j, v));
        auto row = c.row(i, j, v);
        for (std::size_t p = 0; p < us.size(); ++p) {
          auto up = split(i, us[p]);
          for (std::size_t k = 0; k < gs.size(); ++k) up[k] = gs[k].compose(i, j, vp[k], up[k]);
          row[p] = join(i, up);
        }
      }
      auto& inv = inverses[TruncatedOmegaCat::slot(i, j)];
      for (CellId u = 0; u < c.count(i); ++u)
        inv.push_back(map_parts(i, i, u, [&](const TruncatedOmegaGpd& g, CellId w) { return g.inverse(i, j, w); }));
    }
  return TruncatedOmegaGpd(std::move(c), std::move(inverses));
}

AbOmegaGroupoid direct_sum_groupoid(const std::vector<AbOmegaGroupoid>& gs, int level) {
  for (const auto& g : gs)
    if (g.level != level) throw InvalidInput("direct_sum_groupoid: summands must share the level " + deg(level));
  std::vector<DirectSum> sums;
  for (int d = 0; d <= level; ++d) {
    std::vector<FgAbGroup> parts;
    for (const auto& g : gs) parts.push_back(g.groups[idx(d)]);
    sums.push_back(direct_sum_maps(parts));
  }
  auto sum_of = [&](int from, int to, auto&& pick) {
    AbHom f = AbHom::zero(sums[idx(from)].group, sums[idx(to)].group);
    for (std::size_t k = 0; k < gs.size(); ++k)
      f = f + compose(sums[idx(to)].injections[k], compose(pick(gs[k]), sums[idx(from)].projections[k]));
    return f;
  };
  AbOmegaGroupoid out;
  out.level = level;
  for (const auto& s : sums) out.groups.push_back(s.group);
  out.src.emplace_back();
  out.tgt.emplace_back();
  for (int d = 1; d <= level; ++d) {
    out.src.push_back(sum_of(d, d - 1, [&](const AbOmegaGroupoid& g) { return g.src[idx(d)]; }));
    out.tgt.push_back(sum_of(d, d - 1, [&](const AbOmegaGroupoid& g) { return g.tgt[idx(d)]; }));
  }
  for (int d = 0; d < level; ++d) out.units.push_back(sum_of(d, d + 1, [&](const AbOmegaGroupoid& g) { return g.units[idx(d)]; }));
  return out;
}

DecompositionReport decompose_simply_connected(std::shared_ptr<const TruncatedOmegaCat> gp, CellId x, std::size_t max_cells) {
  const auto& g = *gp;
  if (x >= g.count(0)) throw InvalidInput("decompose: unknown basepoint");
  if (!is_groupoid(g).ok) throw InvalidInput("decompose: input is not a groupoid");
  if (!is_simply_connected(g)) throw InvalidInput("decompose: groupoid is not simply connected");
  DecompositionReport r;
  const int n = g.level();
  r.level = n;
  r.basepoint = g.name(0, x);
  r.input = gp;
  auto record = [&](Certificate c) {
    if (!c.ok && r.failing_degree < 0) r.failing_degree = c.degree;
    r.certificates.push_back(std::move(c));
  };

  auto red = one_reduce(gp, x);
  r.one_reduced = red.reduced;
  record({"one-reduction", 1, is_weak_equivalence(red.inclusion), "inclusion of the 1-reduction is a weak equivalence"});

  Abelianization ab;
  try {
    ab = abelianize_one_reduced(*red.reduced);
    record({"eckmann-hilton", 2, true, "compositions over objects and 1-cells agree and commute"});
  } catch (const InvariantFailure& e) {
    record({"eckmann-hilton", 2, false, e.what()});
    r.ok = false;
    return r;
  }
  r.abelian = ab.groupoid;
  r.complex = h_functor(ab.groupoid);
  record({"d∘d = 0", -1, validate(r.complex).empty(), "complex of the abelianization"});
  r.homology = homology_all(r.complex);

  if (r.complex.all_free()) {
    auto dec = decompose_to_homology(r.complex);
    record({"quasi-isomorphism", -1, dec.report.quasi_iso && dec.report.homology_equal,
          "explicit chain map onto the homology, " + std::to_string(dec.report.pieces.size()) + " elementary pieces"});
  } else {
    record({"homology-only", -1, true, "components have torsion; the certificate is the per-degree homotopy match"});
  }

  std::vector<TruncatedOmegaGpd> em;
  for (int k = 2; k <= n; ++k) {
    const auto& h = r.homology[k];
    if (h.is_trivial()) continue;
    r.factors.emplace_back(k, h);
    em.push_back(materialize(em_groupoid(h, k, n), max_cells));
  }
  r.product = std::make_shared<const TruncatedOmegaGpd>(product_groupoid(em, n));
  for (int k = 2; k <= n; ++k) {
    const bool same = group_iso(pi_n(g, x, k), pi_n(*r.product, 0, k));
    record({"pi_n", k, same, "π" + std::to_string(k) + " of the input against the product"});
  }
  r.ok = r.failing_degree < 0 && std::all_of(r.certificates.begin(), r.certificates.end(), [](const Certificate& c) { return c.ok; });
  return r;
}

bool pi_equals_homology_check(const ChainComplex& c, int n, std::size_t max_cells) {
  if (!c.all_finite()) throw Unsupported("pi_equals_homology_check: components must be finite");
  if (n < 0) throw InvalidInput("pi_equals_homology_check: n must be ≥ 0");
  const int level = std::max(c.upper_bound(), n);
  auto m = materialize(k_functor(c, level), max_cells);
  const FgAbGroup h = homology(c, n);
  if (n == 0) return Integer(static_cast<unsigned long>(pi0(m).count())) == h.order();
  return group_iso(pi_n(m, 0, n), FiniteGroup::from_fgab(h));
}

} // namespace ogk
