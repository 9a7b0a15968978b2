#include "ogk/htpy.hpp"

#include "ogk/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace ogk {

std::size_t FiniteGroup::inverse(std::size_t a) const {
  for (std::size_t b = 0; b < size(); ++b)
    if (mul(a, b) == identity) return b;
  throw InvalidInput("group element '" + elements[a] + "' has no inverse");
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity; x = mul(x, a)) {
    if (++k > size()) throw InvalidInput("group element '" + elements[a] + "' has no finite order");
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclic group of order 0");
  FiniteGroup g;
  for (std::size_t a = 0; a < n; ++a) {
    g.elements.push_back(std::to_string(a));
    g.table.emplace_back(n);
    for (std::size_t b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
  }
  return g;
}

FiniteGroup FiniteGroup::from_fgab(const FgAbGroup& a) {
  if (!a.is_finite()) throw InvalidInput("from_fgab: group is infinite");
  FiniteAbEnumerator e(a);
  FiniteGroup g;
  const std::size_t n = e.size();
  g.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    auto cx = e.decode(x);
    std::string nm;
    for (std::size_t k = 0; k < cx.size(); ++k) nm += (k ? "," : "") + std::to_string(cx[k]);
    g.elements.push_back(cx.empty() ? "0" : nm);
    for (std::size_t y = 0; y < n; ++y) {
      auto cy = e.decode(y);
      for (std::size_t k = 0; k < cx.size(); ++k) cy[k] = (cx[k] + cy[k]) % e.orders()[k];
      g.table[x][y] = e.encode(std::span<const std::int64_t>(cy));
    }
  }
  return g;
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < perms.size(); ++k) index[perms[k]] = k;
  FiniteGroup g;
  for (const auto& a : perms) {
    std::string nm;
    for (auto x : a) nm += std::to_string(x);
    g.elements.push_back(nm.empty() ? "e" : nm);
    std::vector<std::size_t> row;
    for (const auto& b : perms) {
      std::vector<std::size_t> ab(n);
      for (std::size_t i = 0; i < n; ++i) ab[i] = a[b[i]];
      row.push_back(index.at(ab));
    }
    g.table.push_back(std::move(row));
  }
  return g;
}

std::vector<std::string> validate(const FiniteGroup& g) {
  std::vector<std::string> out;
  const std::size_t n = g.size();
  if (n == 0) return {"empty group"};
  if (g.table.size() != n || g.identity >= n) return {"table shape"};
  for (const auto& row : g.table) {
    if (row.size() != n) return {"table shape"};
    for (auto x : row)
      if (x >= n) return {"table entry out of range"};
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a) out.push_back("identity law fails at '" + g.elements[a] + "'");
    bool inv = false;
    for (std::size_t b = 0; b < n && !inv; ++b) inv = g.mul(a, b) == g.identity && g.mul(b, a) == g.identity;
    if (!inv) out.push_back("'" + g.elements[a] + "' has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
          out.push_back("associativity fails at ('" + g.elements[a] + "', '" + g.elements[b] + "', '" + g.elements[c] + "')");
          return out;
        }
  return out;
}

namespace {

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> ps;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::vector<std::size_t> order_profile(const FiniteGroup& g) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < g.size(); ++a) out.push_back(g.element_order(a));
  std::sort(out.begin(), out.end());
  return out;
}

// Small generating set, greedily.
std::vector<std::size_t> generators(const FiniteGroup& g) {
  std::vector<bool> in(g.size(), false);
  in[g.identity] = true;
  std::vector<std::size_t> gens;
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (in[a]) continue;
    gens.push_back(a);
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < g.size(); ++x)
      if (in[x]) members.push_back(x);
    for (std::size_t k = 0; k < members.size(); ++k)
      for (auto s : gens) {
        const std::size_t y = g.mul(members[k], s);
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
        }
      }
  }
  return gens;
}

// Extends generator images to a map by words; nullopt on conflict.
std::optional<std::vector<std::size_t>> extend(const FiniteGroup& a, const FiniteGroup& b, const std::vector<std::size_t>& gens,
                                              const std::vector<std::size_t>& images) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> m(a.size(), unset);
  m[a.identity] = b.identity;
  std::vector<std::size_t> queue{a.identity};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const std::size_t x = a.mul(queue[k], gens[s]);
      const std::size_t y = b.mul(m[queue[k]], images[s]);
      if (m[x] == unset) {
        m[x] = y;
        queue.push_back(x);
      } else if (m[x] != y) {
        return std::nullopt;
      }
    }
  return m;
}

bool search_iso(const FiniteGroup& a, const FiniteGroup& b) {
  const auto gens = generators(a);
  std::vector<std::vector<std::size_t>> candidates;
  for (auto s : gens) {
    std::vector<std::size_t> c;
    const std::size_t o = a.element_order(s);
    for (std::size_t y = 0; y < b.size(); ++y)
      if (b.element_order(y) == o) c.push_back(y);
    candidates.push_back(std::move(c));
  }
  std::vector<std::size_t> images(gens.size());
  auto rec = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) {
      auto m = extend(a, b, gens, images);
      if (!m) return false;
      std::vector<bool> hit(b.size(), false);
      for (auto y : *m) {
        if (hit[y]) return false;
        hit[y] = true;
      }
      for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < a.size(); ++y)
          if ((*m)[a.mul(x, y)] != b.mul((*m)[x], (*m)[y])) return false;
      return true;
    }
    for (auto y : candidates[k]) {
      images[k] = y;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

} // namespace

FgAbGroup to_fgab(const FiniteGroup& g) {
  if (!g.is_abelian()) throw InvalidInput("to_fgab: group is not abelian");
  std::vector<std::size_t> orders(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) orders[a] = g.element_order(a);
  std::vector<Integer> factors;
  for (std::size_t p : prime_factors(g.size())) {
    // log_p of the number of elements killed by p^k, for k = 0, 1, ...
    std::vector<std::size_t> logs{0};
    for (std::size_t pk = p;; pk *= p) {
      std::size_t count = 0;
      for (auto o : orders) count += pk % o == 0;
      std::size_t lg = 0;
      for (std::size_t c = count; c > 1; c /= p) ++lg;
      if (lg == logs.back()) break;
      logs.push_back(lg);
    }
    // logs[k] - logs[k-1] factors have exponent ≥ k.
    for (std::size_t k = 1; k < logs.size(); ++k) {
      const std::size_t at_least = logs[k] - logs[k - 1];
      const std::size_t above = k + 1 < logs.size() ? logs[k + 1] - logs[k] : 0;
      Integer pk = 1;
      for (std::size_t e = 0; e < k; ++e) pk *= static_cast<unsigned long>(p);
      for (std::size_t r = above; r < at_least; ++r) factors.push_back(pk);
    }
  }
  return FgAbGroup(0, factors);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  const std::size_t nb = b.size();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < nb; ++y) g.elements.push_back("(" + a.elements[x] + "," + b.elements[y] + ")");
  g.table.assign(g.size(), std::vector<std::size_t>(g.size()));
  for (std::size_t p = 0; p < g.size(); ++p)
    for (std::size_t q = 0; q < g.size(); ++q) g.table[p][q] = a.mul(p / nb, q / nb) * nb + b.mul(p % nb, q % nb);
  g.identity = a.identity * nb + b.identity;
  return g;
}

bool group_iso(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.size() != b.size()) return false;
  const bool ab = a.is_abelian(), bb = b.is_abelian();
  if (ab != bb) return false;
  if (ab) return to_fgab(a) == to_fgab(b);
  if (order_profile(a) != order_profile(b)) return false;
  if (a.size() > 24) throw Unsupported("group_iso: non-abelian groups of order " + std::to_string(a.size()) + " are not supported");
  return search_iso(a, b);
}

namespace {

std::uint64_t key(std::size_t g, std::size_t f) { return static_cast<std::uint64_t>(g) << 32 | static_cast<std::uint64_t>(f); }

} // namespace

std::size_t Groupoid1::compose(std::size_t g, std::size_t f) const {
  auto it = comp.find(key(g, f));
  if (it == comp.end()) throw InvalidInput("arrows are not composable");
  return it->second;
}

std::vector<std::string> validate(const Groupoid1& g) {
  std::vector<std::string> out;
  const std::size_t n = g.arrows();
  if (g.tgt.size() != n || g.inverse.size() != n || g.identity.size() != g.objects) return {"shape"};
  for (std::size_t x = 0; x < g.objects; ++x)
    if (g.identity[x] >= n || g.src[g.identity[x]] != x || g.tgt[g.identity[x]] != x) out.push_back("bad identity");
  if (!out.empty()) return out;
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t h = 0; h < n; ++h) {
      if (g.src[h] != g.tgt[f]) continue;
      auto it = g.comp.find(key(h, f));
      if (it == g.comp.end()) {
        out.push_back("missing composite");
        continue;
      }
      if (g.src[it->second] != g.src[f] || g.tgt[it->second] != g.tgt[h]) out.push_back("composite has the wrong boundary");
    }
  if (!out.empty()) return out;
  for (std::size_t f = 0; f < n; ++f) {
    if (g.compose(g.identity[g.tgt[f]], f) != f || g.compose(f, g.identity[g.src[f]]) != f) out.push_back("identity law");
    const std::size_t i = g.inverse[f];
    if (i >= n || g.src[i] != g.tgt[f] || g.tgt[i] != g.src[f] || g.compose(i, f) != g.identity[g.src[f]] ||
        g.compose(f, i) != g.identity[g.tgt[f]])
      out.push_back("inverse law");
  }
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t h = 0; h < n; ++h) {
      if (g.src[h] != g.tgt[f]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (g.src[k] == g.tgt[h] && g.compose(k, g.compose(h, f)) != g.compose(g.compose(k, h), f)) {
          out.push_back("associativity");
          return out;
        }
    }
  return out;
}

namespace {

void check_level(const TruncatedOmegaCat& g, int n, const char* what) {
  if (n < 0 || n > g.level()) throw InvalidInput(std::string(what) + ": dimension " + std::to_string(n) + " out of range");
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Classes of n-cells from s to t, in increasing order of their representatives.
std::vector<std::size_t> classes_between(const TruncatedOmegaCat& g, const HomotopyClasses& h, CellId s, CellId t) {
  std::vector<std::size_t> out;
  for (CellId a : g.with_src(h.n, h.n - 1, s))
    if (g.tgt(h.n, a) == t) out.push_back(h.class_of[a]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FiniteGroup loop_group(const TruncatedOmegaCat& g, const HomotopyClasses& h, CellId u) {
  const int n = h.n;
  auto cls = classes_between(g, h, u, u);
  if (cls.empty()) throw InvariantFailure("no unit loop at the basepoint");
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < cls.size(); ++k) pos[cls[k]] = k;
  FiniteGroup out;
  for (auto c : cls) out.elements.push_back(g.name(n, h.representative[c]));
  out.table.assign(cls.size(), std::vector<std::size_t>(cls.size()));
  for (std::size_t a = 0; a < cls.size(); ++a)
    for (std::size_t b = 0; b < cls.size(); ++b) {
      const CellId r = g.compose(n, n - 1, h.representative[cls[a]], h.representative[cls[b]]);
      if (r == kNoCell) throw InvariantFailure("composition of loops is missing");
      out.table[a][b] = pos.at(h.class_of[r]);
    }
  out.identity = pos.at(h.class_of[g.unit(n - 1, u)]);
  if (n >= 2 && !out.is_abelian())
    throw InvariantFailure("π" + std::to_string(n) + " is not abelian at '" + g.name(n - 1, u) + "'");
  return out;
}

} // namespace

HomotopyClasses homotopy_classes(const TruncatedOmegaCat& g, int n) {
  check_level(g, n, "homotopy_classes");
  HomotopyClasses h;
  h.n = n;
  const std::size_t count = g.count(n);
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  if (n < g.level())
    for (CellId w = 0; w < g.count(n + 1); ++w) {
      std::size_t a = find_root(parent, g.src(n + 1, w)), b = find_root(parent, g.tgt(n + 1, w));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  h.class_of.resize(count);
  std::vector<std::size_t> root_class(count, static_cast<std::size_t>(-1));
  for (std::size_t u = 0; u < count; ++u) {
    const std::size_t r = find_root(parent, u);
    if (root_class[r] == static_cast<std::size_t>(-1)) {
      root_class[r] = h.representative.size();
      h.representative.push_back(static_cast<CellId>(u));
    }
    h.class_of[u] = root_class[r];
  }
  return h;
}

bool homotopic(const TruncatedOmegaCat& g, int n, CellId u, CellId v) {
  check_level(g, n, "homotopic");
  if (u >= g.count(n) || v >= g.count(n)) throw InvalidInput("homotopic: cells must both have dimension " + std::to_string(n));
  if (n == g.level()) return u == v;
  for (CellId w : g.with_src(n + 1, n, u))
    if (g.tgt(n + 1, w) == v) return true;
  return false;
}

HomotopyClasses pi0(const TruncatedOmegaCat& g) { return homotopy_classes(g, 0); }

FiniteGroup pi_n_at(const TruncatedOmegaCat& g, CellId u, int n) {
  if (n < 1) throw InvalidInput("pi_n: n must be ≥ 1");
  if (n - 1 > g.level() || u >= g.count(n - 1)) throw InvalidInput("pi_n: unknown basepoint");
  if (n > g.level()) return FiniteGroup::trivial();
  return loop_group(g, homotopy_classes(g, n), u);
}

FiniteGroup pi_n(const TruncatedOmegaCat& g, CellId x, int n) {
  if (x >= g.count(0)) throw InvalidInput("pi_n: unknown object");
  if (n < 1) throw InvalidInput("pi_n: n must be ≥ 1");
  if (n > g.level()) return FiniteGroup::trivial();
  return pi_n_at(g, g.unit(n - 1, 0, x), n);
}

HomSet pi_n_homset(const TruncatedOmegaCat& g, CellId u, CellId v, int n) {
  if (n < 1 || n > g.level()) throw InvalidInput("pi_n_homset: n out of range");
  if (u >= g.count(n - 1) || v >= g.count(n - 1)) throw InvalidInput("pi_n_homset: unknown cell");
  if (n >= 2 && (g.src(n - 1, u) != g.src(n - 1, v) || g.tgt(n - 1, u) != g.tgt(n - 1, v)))
    throw InvalidInput("pi_n_homset: cells are not parallel");
  auto h = homotopy_classes(g, n);
  HomSet out;
  out.group = loop_group(g, h, u);
  auto cls = classes_between(g, h, u, v);
  auto loops = classes_between(g, h, u, u);
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < cls.size(); ++k) {
    pos[cls[k]] = k;
    out.classes.push_back(h.representative[cls[k]]);
  }
  for (auto c : cls) {
    std::vector<std::size_t> row;
    for (auto a : loops) row.push_back(pos.at(h.class_of[g.compose(n, n - 1, h.representative[c], h.representative[a])]));
    out.act.push_back(std::move(row));
  }
  return out;
}

Groupoid1 Pi_n(const TruncatedOmegaCat& g, int n) {
  if (n < 1 || n > g.level()) throw InvalidInput("Pi_n: n out of range");
  auto h = homotopy_classes(g, n);
  Groupoid1 out;
  out.objects = g.count(n - 1);
  for (CellId r : h.representative) {
    out.src.push_back(g.src(n, r));
    out.tgt.push_back(g.tgt(n, r));
  }
  for (CellId x = 0; x < out.objects; ++x) out.identity.push_back(h.class_of[g.unit(n - 1, x)]);
  for (CellId r : h.representative) {
    auto inv = find_inverse(g, r, n, n - 1);
    if (!inv) throw InvalidInput("Pi_n: '" + g.name(n, r) + "' has no inverse");
    out.inverse.push_back(h.class_of[*inv]);
  }
  std::vector<std::vector<std::size_t>> by_tgt(out.objects);
  for (std::size_t c = 0; c < h.count(); ++c) by_tgt[out.tgt[c]].push_back(c);
  for (std::size_t c = 0; c < h.count(); ++c)
    for (auto f : by_tgt[out.src[c]]) {
      const CellId r = g.compose(n, n - 1, h.representative[c], h.representative[f]);
      if (r == kNoCell) throw InvalidInput("Pi_n: missing composite");
      out.comp[key(c, f)] = h.class_of[r];
    }
  return out;
}

std::vector<std::size_t> Pi_n_map(const OmegaMorphism& f, int n) {
  auto ha = homotopy_classes(*f.source, n), hb = homotopy_classes(*f.target, n);
  std::vector<std::size_t> out;
  for (CellId r : ha.representative) out.push_back(hb.class_of[f(n, r)]);
  return out;
}

namespace {

bool bijective_on_classes(const std::vector<std::size_t>& src_classes, const std::vector<std::size_t>& images,
                          std::vector<std::size_t> tgt_classes) {
  std::vector<std::size_t> img(images);
  std::sort(img.begin(), img.end());
  if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
  std::sort(tgt_classes.begin(), tgt_classes.end());
  return img.size() == src_classes.size() && img == tgt_classes;
}

} // namespace

bool weq_by_definition(const OmegaMorphism& f) {
  const auto& a = *f.source;
  const auto& b = *f.target;
  auto pa = pi0(a), pb = pi0(b);
  std::vector<std::size_t> all_b(pb.count()), img;
  std::iota(all_b.begin(), all_b.end(), 0);
  std::vector<std::size_t> all_a(pa.count());
  for (CellId r : pa.representative) img.push_back(pb.class_of[f(0, r)]);
  if (!bijective_on_classes(all_a, img, all_b)) return false;
  for (int n = 1; n <= a.level(); ++n) {
    auto ha = homotopy_classes(a, n), hb = homotopy_classes(b, n);
    for (CellId x = 0; x < a.count(0); ++x) {
      const CellId u = a.unit(n - 1, 0, x);
      auto ca = classes_between(a, ha, u, u);
      auto cb = classes_between(b, hb, f(n - 1, u), f(n - 1, u));
      std::vector<std::size_t> im;
      for (auto c : ca) im.push_back(hb.class_of[f(n, ha.representative[c])]);
      std::sort(im.begin(), im.end());
      im.erase(std::unique(im.begin(), im.end()), im.end());
      if (im.size() != ca.size() || im != cb) return false;
    }
  }
  return true;
}

bool weq_by_fullness(const OmegaMorphism& f) {
  const auto& a = *f.source;
  const auto& b = *f.target;
  const int top = a.level();
  {
    auto pb = pi0(b);
    std::vector<bool> hit(pb.count(), false);
    for (CellId x = 0; x < a.count(0); ++x) hit[pb.class_of[f(0, x)]] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  for (int n = 1; n <= top; ++n) {
    auto hb = homotopy_classes(b, n);
    // Parallel (n−1)-cells share their boundary pair; all objects are parallel.
    std::map<std::pair<CellId, CellId>, std::vector<CellId>> groups;
    for (CellId u = 0; u < a.count(n - 1); ++u)
      groups[n == 1 ? std::pair<CellId, CellId>{0, 0} : std::pair{a.src(n - 1, u), a.tgt(n - 1, u)}].push_back(u);
    for (const auto& [bd, members] : groups)
      for (CellId u : members) {
        std::unordered_map<CellId, std::set<std::size_t>> reached, wanted;
        for (CellId w : a.with_src(n, n - 1, u)) reached[a.tgt(n, w)].insert(hb.class_of[f(n, w)]);
        for (CellId w : b.with_src(n, n - 1, f(n - 1, u))) wanted[b.tgt(n, w)].insert(hb.class_of[w]);
        for (CellId v : members) {
          auto it = wanted.find(f(n - 1, v));
          if (it == wanted.end()) continue;
          auto have = reached.find(v);
          if (have == reached.end()) return false;
          if (!std::includes(have->second.begin(), have->second.end(), it->second.begin(), it->second.end())) return false;
        }
      }
  }
  // Above the top level the only cells are units, so parallel top cells must stay apart.
  std::set<std::tuple<CellId, CellId, CellId>> seen;
  for (CellId u = 0; u < a.count(top); ++u) {
    auto k = top == 0 ? std::tuple<CellId, CellId, CellId>{0, 0, f(0, u)} : std::tuple{a.src(top, u), a.tgt(top, u), f(top, u)};
    if (!seen.insert(k).second) return false;
  }
  return true;
}

bool is_weak_equivalence(const OmegaMorphism& f) {
  auto bad = validate_morphism(f);
  if (!bad.empty()) throw InvalidInput("is_weak_equivalence: invalid morphism (" + bad.front().axiom + ")");
  if (!is_groupoid(*f.source).ok || !is_groupoid(*f.target).ok) throw InvalidInput("is_weak_equivalence: both sides must be groupoids");
  const bool by_def = weq_by_definition(f);
  const bool by_full = weq_by_fullness(f);
  if (by_def != by_full) throw InvariantFailure("weak-equivalence deciders disagree");
  return by_def;
}

bool is_simply_connected(const TruncatedOmegaCat& g) {
  if (pi0(g).count() > 1) return false;
  if (g.level() < 1) return true;
  auto h = homotopy_classes(g, 1);
  for (CellId x = 0; x < g.count(0); ++x)
    if (classes_between(g, h, x, x).size() != 1) return false;
  return true;
}

bool is_one_reduced(const TruncatedOmegaCat& g) { return g.count(0) == 1 && (g.level() < 1 || g.count(1) == 1); }

OneReduction one_reduce(std::shared_ptr<const TruncatedOmegaCat> gp, CellId x) {
  const auto& g = *gp;
  if (x >= g.count(0)) throw InvalidInput("one_reduce: unknown object");
  if (!is_simply_connected(g)) throw InvalidInput("one_reduce: groupoid is not simply connected");
  const int n = g.level();
  std::vector<std::vector<CellId>> keep(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<CellId>> where(static_cast<std::size_t>(n) + 1);
  keep[0] = {x};
  if (n >= 1) keep[1] = {g.unit(0, x)};
  for (int d = 2; d <= n; ++d) {
    const CellId k = keep[1][0];
    for (CellId u = 0; u < g.count(d); ++u)
      if (g.src(d, 1, u) == k && g.tgt(d, 1, u) == k) keep[static_cast<std::size_t>(d)].push_back(u);
  }
  for (int d = 0; d <= n; ++d) {
    auto& w = where[static_cast<std::size_t>(d)];
    w.assign(g.count(d), kNoCell);
    const auto& kd = keep[static_cast<std::size_t>(d)];
    for (CellId p = 0; p < kd.size(); ++p) w[kd[p]] = p;
  }
  auto at = [&](int d, CellId u) {
    const CellId p = where[static_cast<std::size_t>(d)][u];
    if (p == kNoCell) throw InvariantFailure("one_reduce: sub-groupoid is not closed");
    return p;
  };
  TruncatedGlobularSet s(n);
  for (int d = 0; d <= n; ++d)
    for (CellId u : keep[static_cast<std::size_t>(d)])
      s.add(d, g.name(d, u), d ? at(d - 1, g.src(d, u)) : kNoCell, d ? at(d - 1, g.tgt(d, u)) : kNoCell);
  std::vector<std::vector<CellId>> units(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d)
    for (CellId u : keep[static_cast<std::size_t>(d)]) units[static_cast<std::size_t>(d)].push_back(at(d + 1, g.unit(d, u)));
  auto r = std::make_shared<TruncatedOmegaCat>(std::move(s), std::move(units));
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      for (CellId vp = 0; vp < r->count(i); ++vp) {
        const CellId v = keep[static_cast<std::size_t>(i)][vp];
        for (CellId up : r->with_tgt(i, j, r->src(i, j, vp))) {
          const CellId res = g.compose(i, j, v, keep[static_cast<std::size_t>(i)][up]);
          if (res == kNoCell) throw InvalidInput("one_reduce: composition table is incomplete");
          r->set_composition(i, j, vp, up, at(i, res));
        }
      }
  OneReduction out{r, OmegaMorphism{r, gp, std::move(keep)}};
  return out;
}

} // namespace ogk
