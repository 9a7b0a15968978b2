#include "ogk/chain.hpp"

#include "ogk/error.hpp"

#include <algorithm>

namespace ogk {

namespace {

const FgAbGroup kTrivial{};

std::string deg(int i) { return std::to_string(i); }

} // namespace

ChainComplex::ChainComplex(int lower, int upper, std::vector<FgAbGroup> components, std::vector<AbHom> differentials)
    : lower_(lower), upper_(upper), components_(std::move(components)), differentials_(std::move(differentials)) {
  if (upper_ < lower_) throw InvalidInput("ChainComplex: upper bound below lower bound");
  const auto n = static_cast<std::size_t>(upper_ - lower_);
  if (components_.size() != n + 1) throw InvalidInput("ChainComplex: expected " + std::to_string(n + 1) + " components");
  if (differentials_.size() != n) throw InvalidInput("ChainComplex: expected " + std::to_string(n) + " differentials");
  for (std::size_t m = 0; m < n; ++m) {
    if (!(differentials_[m].source() == components_[m + 1]) || !(differentials_[m].target() == components_[m]))
      throw InvalidInput("ChainComplex: d_" + deg(lower_ + 1 + static_cast<int>(m)) + " has the wrong type");
  }
}

const FgAbGroup& ChainComplex::component(int i) const {
  if (i < lower_ || i > upper_) return kTrivial;
  return components_[static_cast<std::size_t>(i - lower_)];
}

AbHom ChainComplex::differential(int i) const {
  if (i <= lower_ || i > upper_) return AbHom::zero(component(i), component(i - 1));
  return differentials_[static_cast<std::size_t>(i - lower_ - 1)];
}

bool ChainComplex::all_free() const {
  return std::all_of(components_.begin(), components_.end(), [](const FgAbGroup& g) { return g.is_free(); });
}

bool ChainComplex::all_finite() const {
  return std::all_of(components_.begin(), components_.end(), [](const FgAbGroup& g) { return g.is_finite(); });
}

AbHom ChainMap::level(int i) const {
  auto it = levels.find(i);
  if (it != levels.end()) return it->second;
  return AbHom::zero(source.component(i), target.component(i));
}

ChainMap ChainMap::identity(const ChainComplex& c) {
  ChainMap f{c, c, {}};
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) f.levels.emplace(i, AbHom::identity(c.component(i)));
  return f;
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) { return ChainMap{source, target, {}}; }

std::vector<ChainViolation> validate(const ChainComplex& c) {
  std::vector<ChainViolation> out;
  for (int i = c.lower_bound() + 2; i <= c.upper_bound(); ++i) {
    if (!compose(c.differential(i - 1), c.differential(i)).is_zero())
      out.push_back({i, "d_" + deg(i - 1) + " d_" + deg(i) + " != 0"});
  }
  return out;
}

std::vector<ChainViolation> validate(const ChainMap& f) {
  std::vector<ChainViolation> out;
  for (const auto& [i, h] : f.levels) {
    if (!(h.source() == f.source.component(i)) || !(h.target() == f.target.component(i)))
      out.push_back({i, "f_" + deg(i) + " has the wrong type"});
  }
  if (!out.empty()) return out;
  const int lo = std::min(f.source.lower_bound(), f.target.lower_bound());
  const int hi = std::max(f.source.upper_bound(), f.target.upper_bound());
  for (int i = lo + 1; i <= hi; ++i) {
    AbHom a = compose(f.level(i - 1), f.source.differential(i));
    AbHom b = compose(f.target.differential(i), f.level(i));
    if (!same_map(a, b)) out.push_back({i, "f_" + deg(i - 1) + " d_" + deg(i) + " != d'_" + deg(i) + " f_" + deg(i)});
  }
  return out;
}

IntVector HomologyData::class_of(std::span<const Integer> cycle) const {
  return classes.projection()(cycles.coords(cycle));
}

IntVector HomologyData::representative(std::span<const Integer> cls) const {
  return cycles.inclusion()(classes.lift(cls));
}

HomologyData homology_data(const ChainComplex& c, int n) {
  AbHom out = c.differential(n), in = c.differential(n + 1);
  if (!compose(out, in).is_zero()) throw InvalidInput("homology: d_" + deg(n) + " d_" + deg(n + 1) + " != 0");
  HomologyData h;
  h.cycles = kernel(out);
  IntMatrix b(h.cycles.group().generator_count(), in.matrix().cols());
  for (std::size_t k = 0; k < b.cols(); ++k) b.set_col(k, h.cycles.coords(in.matrix().col(k)));
  h.classes = Quotient(h.cycles.group(), b);
  return h;
}

FgAbGroup homology(const ChainComplex& c, int n) {
  AbHom out = c.differential(n), in = c.differential(n + 1);
  if (!compose(out, in).is_zero()) throw InvalidInput("homology: d_" + deg(n) + " d_" + deg(n + 1) + " != 0");
  return subquotient(kernel(out).inclusion().matrix(), in.matrix(), c.component(n));
}

std::map<int, FgAbGroup> homology_all(const ChainComplex& c) {
  std::map<int, FgAbGroup> out;
  for (int n = c.lower_bound(); n <= c.upper_bound(); ++n) out.emplace(n, homology(c, n));
  return out;
}

ChainComplex shift(const ChainComplex& c) {
  std::vector<FgAbGroup> comps;
  std::vector<AbHom> diffs;
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) {
    comps.push_back(c.component(i));
    if (i > c.lower_bound()) diffs.push_back(c.differential(i));
  }
  return ChainComplex(c.lower_bound() + 1, c.upper_bound() + 1, std::move(comps), std::move(diffs));
}

ChainComplex truncate_ge(const ChainComplex& c, int k) {
  if (k <= c.lower_bound()) return c;
  if (k > c.upper_bound()) return ChainComplex::zero(k);
  Subgroup z = kernel(c.differential(k));
  std::vector<FgAbGroup> comps{z.group()};
  std::vector<AbHom> diffs;
  for (int i = k + 1; i <= c.upper_bound(); ++i) {
    comps.push_back(c.component(i));
    diffs.push_back(i == k + 1 ? z.corestrict(c.differential(i)) : c.differential(i));
  }
  return ChainComplex(k, c.upper_bound(), std::move(comps), std::move(diffs));
}

ChainComplex truncate_ge_tilde(const ChainComplex& c, int k) {
  if (k <= c.lower_bound()) return c;
  if (k > c.upper_bound()) return ChainComplex::zero(k);
  Subgroup b = image(c.differential(k));
  std::vector<FgAbGroup> comps{b.group()};
  std::vector<AbHom> diffs;
  for (int i = k; i <= c.upper_bound(); ++i) {
    comps.push_back(c.component(i));
    diffs.push_back(i == k ? b.corestrict(c.differential(i)) : c.differential(i));
  }
  return ChainComplex(k - 1, c.upper_bound(), std::move(comps), std::move(diffs));
}

ChainComplex truncate_le(const ChainComplex& c, int k) {
  if (k >= c.upper_bound()) return c;
  if (k < c.lower_bound()) return ChainComplex::zero(k);
  Quotient q = cokernel(c.differential(k + 1));
  std::vector<FgAbGroup> comps;
  std::vector<AbHom> diffs;
  for (int i = c.lower_bound(); i < k; ++i) {
    comps.push_back(c.component(i));
    if (i > c.lower_bound()) diffs.push_back(c.differential(i));
  }
  comps.push_back(q.group());
  if (k > c.lower_bound())
    diffs.emplace_back(q.group(), c.component(k - 1), c.differential(k).matrix() * q.lift_matrix());
  return ChainComplex(c.lower_bound(), k, std::move(comps), std::move(diffs));
}

ChainMap truncation_comparison(const ChainComplex& c, int k) {
  ChainComplex src = truncate_ge(c, k), tgt = truncate_ge_tilde(c, k);
  if (k <= c.lower_bound()) return ChainMap::identity(c);
  if (k > c.upper_bound()) return ChainMap::identity(src);
  ChainMap f{src, tgt, {}};
  f.levels.emplace(k, kernel(c.differential(k)).inclusion());
  for (int i = k + 1; i <= c.upper_bound(); ++i) f.levels.emplace(i, AbHom::identity(c.component(i)));
  return f;
}

ChainComplex em_complex(const FgAbGroup& a, int n) { return ChainComplex(n, n, {a}, {}); }

ChainComplex direct_sum_complex(std::span<const ChainComplex> cs) {
  if (cs.empty()) return ChainComplex::zero(0);
  int lo = cs[0].lower_bound(), hi = cs[0].upper_bound();
  for (const auto& c : cs) {
    lo = std::min(lo, c.lower_bound());
    hi = std::max(hi, c.upper_bound());
  }
  std::vector<DirectSum> sums;
  for (int i = lo; i <= hi; ++i) {
    std::vector<FgAbGroup> parts;
    for (const auto& c : cs) parts.push_back(c.component(i));
    sums.push_back(direct_sum_maps(parts));
  }
  std::vector<FgAbGroup> comps;
  std::vector<AbHom> diffs;
  for (int i = lo; i <= hi; ++i) {
    const DirectSum& here = sums[static_cast<std::size_t>(i - lo)];
    comps.push_back(here.group);
    if (i == lo) continue;
    const DirectSum& below = sums[static_cast<std::size_t>(i - lo - 1)];
    AbHom d = AbHom::zero(here.group, below.group);
    for (std::size_t k = 0; k < cs.size(); ++k)
      d = d + compose(below.injections[k], compose(cs[k].differential(i), here.projections[k]));
    diffs.push_back(d);
  }
  return ChainComplex(lo, hi, std::move(comps), std::move(diffs));
}

ChainComplex restrict_lower(const ChainComplex& c, int k) {
  if (k <= c.lower_bound()) return c;
  for (int i = c.lower_bound(); i < k && i <= c.upper_bound(); ++i)
    if (!c.component(i).is_trivial()) throw InvalidInput("restrict_lower: C_" + deg(i) + " is not trivial");
  if (k > c.upper_bound()) return ChainComplex::zero(k);
  std::vector<FgAbGroup> comps;
  std::vector<AbHom> diffs;
  for (int i = k; i <= c.upper_bound(); ++i) {
    comps.push_back(c.component(i));
    if (i > k) diffs.push_back(c.differential(i));
  }
  return ChainComplex(k, c.upper_bound(), std::move(comps), std::move(diffs));
}

AbHom induced_map(const ChainMap& f, int n) {
  HomologyData hs = homology_data(f.source, n), ht = homology_data(f.target, n);
  AbHom fn = f.level(n);
  IntMatrix m(ht.group().generator_count(), hs.group().generator_count());
  for (std::size_t g = 0; g < m.cols(); ++g) {
    IntVector e(m.cols());
    e[g] = 1;
    m.set_col(g, ht.class_of(fn(hs.representative(e))));
  }
  return AbHom(hs.group(), ht.group(), std::move(m));
}

bool is_quasi_iso(const ChainMap& f) {
  auto bad = validate(f);
  if (!bad.empty()) throw InvalidInput("is_quasi_iso: not a chain map (" + bad.front().message + ")");
  const int lo = std::min(f.source.lower_bound(), f.target.lower_bound());
  const int hi = std::max(f.source.upper_bound(), f.target.upper_bound());
  for (int n = lo; n <= hi; ++n)
    if (!is_isomorphism(induced_map(f, n))) return false;
  return true;
}

HomologyDecomposition decompose_to_homology(const ChainComplex& c) {
  if (!c.all_free()) throw InvalidInput("decompose_to_homology: components must be free");
  if (!validate(c).empty()) throw InvalidInput("decompose_to_homology: d d != 0");
  const int lo = c.lower_bound(), hi = c.upper_bound();
  HomologyDecomposition out;
  std::vector<FgAbGroup> hs;
  std::vector<AbHom> fs;
  for (int n = lo; n <= hi; ++n) {
    // Retraction of C_n onto the cycles, read off the column transform of d_n.
    SnfResult dn = snf(c.differential(n).matrix());
    IntMatrix retract = dn.v_inv.row_range(dn.rank, dn.v_inv.rows());
    IntMatrix bounds = retract * c.differential(n + 1).matrix();
    Presentation p = present(bounds);
    hs.push_back(p.group);
    fs.emplace_back(c.component(n), p.group, p.to_canonical * retract);

    SnfResult bn = snf(bounds);
    for (std::size_t k = 0; k < bn.rank; ++k) out.report.pieces.push_back({n, bn.diag(k)});
    for (std::size_t k = bn.rank; k < bounds.rows(); ++k) out.report.pieces.push_back({n, Integer(0)});
  }
  std::vector<AbHom> zeros;
  for (std::size_t m = 1; m < hs.size(); ++m) zeros.push_back(AbHom::zero(hs[m], hs[m - 1]));
  out.reduced = ChainComplex(lo, hi, hs, std::move(zeros));
  out.map = ChainMap{c, out.reduced, {}};
  for (int n = lo; n <= hi; ++n) out.map.levels.emplace(n, fs[static_cast<std::size_t>(n - lo)]);

  auto bad = validate(out.map);
  if (!bad.empty()) throw InvariantFailure("decompose_to_homology: projection is not a chain map: " + bad.front().message);
  out.report.quasi_iso = is_quasi_iso(out.map);
  out.report.homology_equal = true;
  for (int n = lo; n <= hi; ++n) {
    if (!(homology(out.reduced, n) == homology(c, n))) {
      out.report.homology_equal = false;
      out.report.notes.push_back("H_" + deg(n) + " differs");
    }
  }
  std::size_t rank_total = 0, piece_total = 0;
  for (int n = lo; n <= hi; ++n) rank_total += c.component(n).free_rank();
  for (const auto& p : out.report.pieces) piece_total += p.divisor == 0 ? 1 : 2;
  if (rank_total != piece_total) {
    out.report.notes.push_back("piece ranks do not add up");
    out.report.quasi_iso = false;
  }
  if (!out.report.quasi_iso || !out.report.homology_equal)
    throw InvariantFailure("decompose_to_homology: certificate failed");
  return out;
}

} // namespace ogk
