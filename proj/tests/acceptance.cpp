// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "corpus.hpp"
#include "ogk/bourn.hpp"
#include "ogk/error.hpp"
#include "ogk/random.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace ogk;

namespace {

using Gpd = std::shared_ptr<const TruncatedOmegaCat>;

// Cells per materialized instance; larger random draws are rejected and redrawn.
constexpr std::size_t kBudget = 4000;

Gpd share(TruncatedOmegaCat c) { return std::make_shared<const TruncatedOmegaCat>(std::move(c)); }

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

ChainComplex random_finite(Rng& rng, int lower, int upper, std::size_t rank, long order) {
  RandomComplexSpec spec;
  spec.lower = lower;
  spec.upper = upper;
  spec.max_rank = rank;
  spec.max_order = order;
  spec.kind = ComponentKind::finite;
  return random_complex(rng, spec);
}

bool bijective(const OmegaMorphism& f) {
  for (int d = 0; d <= f.source->level(); ++d) {
    if (f.source->count(d) != f.target->count(d)) return false;
    auto v = f.levels[static_cast<std::size_t>(d)];
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  }
  return true;
}

struct Outcome {
  bool pass = false;
  std::string summary;
};

// Shared groupoids for criteria 4 to 9.
struct Corpus {
  std::vector<std::pair<std::string, Gpd>> em;          // Eilenberg-Mac Lane, 1-reduced
  std::vector<Gpd> k_images;                            // random K images in degrees ≥ 2
  std::vector<std::pair<std::string, Gpd>> hand;        // hand-built simply connected
  std::vector<Gpd> simply_connected;                    // not 1-reduced
  std::size_t rejected = 0;
};

// (A -id→ A) in degrees 1, 0 plus a random complex in degrees ≥ 2: simply connected, several objects.
ChainComplex with_contractible_bottom(Rng& rng) {
  const auto a = FgAbGroup::cyclic(pick(rng, 2, 3));
  const ChainComplex bottom(0, 1, {a, a}, {AbHom::identity(a)});
  const ChainComplex top = random_finite(rng, 2, 3, 1, 3);
  const ChainComplex parts[] = {bottom, top};
  return direct_sum_complex(parts);
}

Corpus build_corpus(Rng& rng) {
  Corpus c;
  const std::pair<std::string, FgAbGroup> groups[] = {
      {"Z/2", FgAbGroup::cyclic(2)}, {"Z/3", FgAbGroup::cyclic(3)}, {"Z/4", FgAbGroup::cyclic(4)}, {"Z/2+Z/2", FgAbGroup(0, {2, 2})}};
  for (const auto& [name, a] : groups)
    for (int n : {2, 3}) c.em.emplace_back(name + "," + std::to_string(n), share(materialize(em_groupoid(a, n, n + 1), kBudget)));
  while (c.k_images.size() < 20) {
    const int upper = static_cast<int>(pick(rng, 2, 4));
    auto cx = random_finite(rng, 2, upper, 2, 6);
    try {
      c.k_images.push_back(share(materialize(k_functor(cx, upper + 1), kBudget)));
    } catch (const SizeLimitExceeded&) {
      ++c.rejected;
    }
  }
  const auto z2 = FgAbGroup::cyclic(2), z3 = FgAbGroup::cyclic(3), z4 = FgAbGroup::cyclic(4);
  c.hand.emplace_back("Z/2 -x2-> Z/4 in degrees 3,2", share(materialize(k_functor(ChainComplex(2, 3, {z4, z2}, {AbHom(z2, z4, {{2}})}), 4), kBudget)));
  c.hand.emplace_back("Z/2 + Z/3[1], zero differential", share(materialize(k_functor(ChainComplex(2, 3, {z2, z3}, {AbHom::zero(z3, z2)}), 3), kBudget)));
  c.hand.emplace_back("K(Z/2,2) x K(Z/2,3)", share(product_groupoid({materialize(em_groupoid(z2, 2, 3), kBudget), materialize(em_groupoid(z2, 3, 3), kBudget)}, 3)));
  c.hand.emplace_back("K(Z/3,2) x K(Z/2,2)", share(product_groupoid({materialize(em_groupoid(z3, 2, 3), kBudget), materialize(em_groupoid(z2, 2, 3), kBudget)}, 3)));
  c.hand.emplace_back("Z/2 -id-> Z/2 + Z/3 in degree 2",
                      share(materialize(k_functor(ChainComplex(0, 2, {z2, z2, z3}, {AbHom::identity(z2), AbHom::zero(z3, z2)}), 3), kBudget)));
  while (c.simply_connected.size() < 25) {
    try {
      c.simply_connected.push_back(share(materialize(k_functor(with_contractible_bottom(rng), 3), kBudget)));
    } catch (const SizeLimitExceeded&) {
      ++c.rejected;
    }
  }
  return c;
}

Outcome snf_soundness(Rng& rng) {
  int ok = 0, oracle = 0;
  for (int t = 0; t < 500; ++t) {
    const auto rows = static_cast<std::size_t>(pick(rng, 1, 8)), cols = static_cast<std::size_t>(pick(rng, 1, 8));
    const IntMatrix a = random_matrix(rng, rows, cols, 20);
    const auto f = snf(a);
    bool good = f.u * a * f.v == f.s && f.u * f.u_inv == IntMatrix::identity(rows) && f.v * f.v_inv == IntMatrix::identity(cols);
    good = good && abs(determinant(f.u)) == 1 && abs(determinant(f.v)) == 1;
    const std::size_t m = std::min(rows, cols);
    for (std::size_t r = 0; r < rows && good; ++r)
      for (std::size_t c = 0; c < cols && good; ++c) {
        if (r != c && f.s(r, c) != 0) good = false;
        if (r == c && f.s(r, c) < 0) good = false;
      }
    for (std::size_t i = 0; i + 1 < m && good; ++i) {
      const Integer& x = f.s(i, i);
      const Integer& y = f.s(i + 1, i + 1);
      if (x == 0 ? y != 0 : y % x != 0) good = false;
    }
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < m; ++i) nonzero += f.s(i, i) != 0;
    good = good && nonzero == f.rank && f.rank == rank(a);
    // Determinantal divisors: d₁⋯d_k is the gcd of the k×k minors.
    if (good && m <= 5) {
      ++oracle;
      Integer prod = 1;
      for (std::size_t k = 1; k <= m && good; ++k) {
        Integer g = 0;
        std::vector<std::size_t> ri(k), ci(k);
        std::vector<bool> rmask(rows), cmask(cols);
        std::fill(rmask.begin(), rmask.begin() + static_cast<long>(k), true);
        do {
          ri.clear();
          for (std::size_t r = 0; r < rows; ++r)
            if (rmask[r]) ri.push_back(r);
          std::fill(cmask.begin(), cmask.end(), false);
          std::fill(cmask.begin(), cmask.begin() + static_cast<long>(k), true);
          do {
            ci.clear();
            for (std::size_t c = 0; c < cols; ++c)
              if (cmask[c]) ci.push_back(c);
            g = gcd(g, determinant(a.select_rows(ri).select_cols(ci)));
          } while (std::prev_permutation(cmask.begin(), cmask.end()));
        } while (std::prev_permutation(rmask.begin(), rmask.end()));
        prod *= f.s(k - 1, k - 1);
        if (abs(prod) != g) good = false;
      }
    }
    ok += good;
  }
  return {ok == 500, std::to_string(ok) + "/500 matrices; " + std::to_string(oracle) + " also against determinantal divisors"};
}

Outcome bourn_round_trips(Rng& rng) {
  int accepted = 0, ok = 0, rejected = 0;
  std::vector<int> by_upper(6, 0);
  while (accepted < 100) {
    const int upper = static_cast<int>(pick(rng, 0, 5));
    auto c = random_finite(rng, 0, upper, 2, 6);
    const int level = upper;
    TruncatedOmegaGpd m;
    try {
      m = materialize(k_functor(c, level), kBudget);
    } catch (const SizeLimitExceeded&) {
      ++rejected;
      continue;
    }
    ++accepted;
    ++by_upper[static_cast<std::size_t>(upper)];
    bool good = true;
    // HK: the unit is a chain map, bijective on elements in every degree.
    auto unit = hk_unit(c, level);
    good = good && validate(unit).empty();
    for (int i = 0; i <= level && good; ++i) {
      const auto& f = unit.level(i);
      const FiniteAbMap fm(f);
      const std::size_t n = FiniteAbEnumerator(f.source()).size();
      std::vector<std::size_t> img;
      for (std::size_t x = 0; x < n; ++x) img.push_back(fm(x));
      std::sort(img.begin(), img.end());
      good = std::adjacent_find(img.begin(), img.end()) == img.end() && n == FiniteAbEnumerator(f.target()).size() && is_isomorphism(f);
    }
    // KH: the counit is a bijective morphism of the materialized groupoids.
    auto g = k_functor(c, level);
    auto kh = k_functor(h_functor(g), level);
    auto e = kh_counit(g);
    good = good && validate_ab_morphism(kh, g, e).empty();
    if (good) {
      auto src = share(materialize(kh, kBudget));
      auto tgt = share(std::move(m));
      auto f = materialize_map(e, src, tgt);
      good = validate_morphism(f).empty() && bijective(f);
    }
    ok += good;
  }
  std::string dist;
  for (int u = 0; u <= 5; ++u) dist += (u ? "," : "") + std::to_string(by_upper[static_cast<std::size_t>(u)]);
  return {ok == 100, std::to_string(ok) + "/100 complexes (top degree 0..5: " + dist + "; " + std::to_string(rejected) + " draws over budget)"};
}

Outcome pi_equals_homology(Rng& rng) {
  int accepted = 0, ok = 0, rejected = 0, checks = 0;
  while (accepted < 50) {
    const int lower = static_cast<int>(pick(rng, 0, 2));
    const int upper = lower + static_cast<int>(pick(rng, 0, 3));
    auto c = random_finite(rng, lower, upper, 2, 6);
    bool good = true;
    try {
      for (int n = 0; n <= upper + 1 && good; ++n) {
        good = pi_equals_homology_check(c, n, kBudget);
        ++checks;
      }
    } catch (const SizeLimitExceeded&) {
      ++rejected;
      continue;
    }
    ++accepted;
    ok += good;
  }
  return {ok == 50, std::to_string(ok) + "/50 complexes, " + std::to_string(checks) + " degrees (" + std::to_string(rejected) + " draws over budget)"};
}

Outcome em_homotopy(const Corpus& c) {
  int ok = 0;
  std::size_t k = 0;
  for (const auto& a : {FgAbGroup::cyclic(2), FgAbGroup::cyclic(3), FgAbGroup::cyclic(4), FgAbGroup(0, {2, 2})})
    for (int n : {2, 3}) {
      const auto& g = *c.em[k++].second;
      bool good = pi0(g).count() == 1;
      for (int m = 1; m <= n + 2; ++m) good = good && to_fgab(pi_n(g, 0, m)) == (m == n ? a : FgAbGroup::trivial());
      ok += good;
    }
  return {ok == 8, std::to_string(ok) + "/8 (A, n) pairs, π₀..π_{n+2} checked at N = n+1"};
}

Outcome eckmann_hilton(const Corpus& c) {
  std::vector<Gpd> all;
  for (const auto& [_, g] : c.em) all.push_back(g);
  for (const auto& g : c.k_images) all.push_back(g);
  for (const auto& [_, g] : c.hand) all.push_back(is_one_reduced(*g) ? g : one_reduce(g, 0).reduced);
  for (const auto& g : c.simply_connected) all.push_back(one_reduce(g, 0).reduced);
  int ok = 0;
  for (const auto& g : all) ok += is_one_reduced(*g) && check_eckmann_hilton(*g).empty();
  const int n = static_cast<int>(all.size());
  return {ok == n, std::to_string(ok) + "/" + std::to_string(n) + " 1-reduced groupoids"};
}

Outcome decomposition(const Corpus& c) {
  int ok = 0;
  std::string failed;
  for (const auto& g : c.k_images) ok += decompose_simply_connected(g, 0, kBudget).ok;
  const int random_ok = ok;
  for (const auto& [name, g] : c.hand) {
    const bool good = decompose_simply_connected(g, 0, kBudget).ok;
    ok += good;
    if (!good) failed += " [" + name + "]";
  }
  return {ok == 25, std::to_string(random_ok) + "/20 random K images and " + std::to_string(ok - random_ok) + "/5 hand-built verdict OK" + failed};
}

Outcome decider_agreement(Rng& rng, const Corpus& c) {
  std::vector<std::pair<OmegaMorphism, int>> cases;  // expected verdict: 1 yes, 0 no, -1 open
  std::vector<Gpd> pool;
  for (const auto& [_, g] : c.em) pool.push_back(g);
  for (const auto& g : c.k_images) pool.push_back(g);
  for (const auto& g : c.simply_connected) pool.push_back(g);
  for (int k = 0; k < 25; ++k) cases.emplace_back(OmegaMorphism::identity(pool[static_cast<std::size_t>(k * 7) % pool.size()]), 1);
  for (int k = 0; k < 25; ++k) cases.emplace_back(one_reduce(c.simply_connected[static_cast<std::size_t>(k)], 0).inclusion, 1);
  for (int k = 0; k < 25; ++k) {
    const auto& g = pool[static_cast<std::size_t>(k * 5 + 3) % pool.size()];
    OmegaMorphism f{g, share(trivial_groupoid(g->level())), {}};
    for (int d = 0; d <= g->level(); ++d) f.levels.emplace_back(g->count(d), 0);
    cases.emplace_back(std::move(f), -1);
  }
  // K(m · id) on random complexes: a weak equivalence iff a quasi-isomorphism.
  std::vector<bool> quasi;
  while (cases.size() < 100) {
    auto cx = random_finite(rng, static_cast<int>(pick(rng, 0, 2)), 3, 1, 6);
    const long m = pick(rng, 0, 3);
    ChainMap f{cx, cx, {}};
    for (int i = cx.lower_bound(); i <= cx.upper_bound(); ++i) {
      const auto& g = cx.component(i);
      f.levels[i] = AbHom(g, g, Integer(m) * IntMatrix::identity(g.generator_count()));
    }
    try {
      auto src = share(materialize(k_functor(cx, 3), kBudget));
      cases.emplace_back(materialize_map(k_functor_map(f, 3), src, src), is_quasi_iso(f) ? 1 : 0);
    } catch (const SizeLimitExceeded&) {
      continue;
    }
  }
  int agree = 0, expected = 0, positive = 0;
  for (const auto& [f, want] : cases) {
    const bool a = weq_by_definition(f), b = weq_by_fullness(f);
    agree += a == b;
    expected += want < 0 || a == (want == 1);
    positive += a;
  }
  return {agree == 100 && expected == 100, std::to_string(agree) + "/100 agree (" + std::to_string(positive) + " weak equivalences, " +
                                               std::to_string(100 - positive) + " not); " + std::to_string(expected) + "/100 match the expected verdict"};
}

struct MutationTally {
  std::size_t total = 0, caught = 0, same_invariants = 0, new_invariants = 0;
};

// π₀ count and the orders of π₁..π_N at object 0.
std::vector<std::size_t> invariants(const TruncatedOmegaCat& g) {
  std::vector<std::size_t> out{pi0(g).count()};
  for (int n = 1; n <= g.level(); ++n) out.push_back(pi_n(g, 0, n).size());
  return out;
}

void mutate(const TruncatedOmegaCat& g, Rng& rng, MutationTally& t) {
  struct Site {
    int i, j;
    CellId v, u, old;
  };
  std::vector<Site> sites;  // j = -1 for the unit table
  for (int i = 1; i <= g.level(); ++i)
    for (int j = 0; j < i; ++j)
      for (CellId v = 0; v < g.count(i); ++v)
        for (CellId u : g.with_tgt(i, j, g.src(i, j, v))) sites.push_back({i, j, v, u, g.compose(i, j, v, u)});
  for (int d = 0; d < g.level(); ++d)
    for (CellId u = 0; u < g.count(d); ++u) sites.push_back({d, -1, u, 0, g.unit(d, u)});
  std::vector<std::pair<std::size_t, CellId>> all;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const int dim = sites[s].j < 0 ? sites[s].i + 1 : sites[s].i;
    for (CellId r = 0; r < g.count(dim); ++r)
      if (r != sites[s].old) all.emplace_back(s, r);
  }
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > 40) all.resize(40);
  const auto before = invariants(g);
  for (const auto& [s, r] : all) {
    const auto& site = sites[s];
    const auto m = site.j < 0 ? g.with_unit(site.i, site.v, r) : g.with_composition(site.i, site.j, site.v, site.u, r);
    bool caught = !validate_category(m, Exec::serial).empty();
    if (!caught) {
      try {
        caught = !is_groupoid(m, Exec::serial).ok;
      } catch (const InvariantFailure&) {
        caught = true;
      }
    }
    ++t.total;
    if (caught) {
      ++t.caught;
    } else if (invariants(m) == before) {
      ++t.same_invariants;
    } else {
      ++t.new_invariants;
    }
  }
}

Outcome mutation_testing(Rng& rng, const Corpus& c) {
  std::vector<Gpd> pool;
  for (const auto& [_, g] : c.em) pool.push_back(g);
  for (int n = 2; n <= 7; ++n) pool.push_back(share(TruncatedOmegaGpd(corpus::cyclic_group(n))));
  pool.push_back(share(em_groupoid1(FiniteGroup::symmetric(3), 1)));
  pool.push_back(share(em_groupoid1(FiniteGroup::symmetric(3), 2)));
  pool.push_back(share(em_groupoid0({"a", "b", "c"}, 2)));
  pool.push_back(share(trivial_groupoid(3)));
  for (const auto& [_, g] : c.hand)
    if (g->count(g->level()) <= 16) pool.push_back(g);
  while (pool.size() < 50) {
    auto cx = random_finite(rng, 0, static_cast<int>(pick(rng, 1, 2)), 1, 3);
    auto g = materialize(k_functor(cx, cx.upper_bound()), kBudget);
    if (g.count(g.level()) <= 27) pool.push_back(share(std::move(g)));
  }
  MutationTally t;
  for (const auto& g : pool) mutate(*g, rng, t);
  const double rate = static_cast<double>(t.caught) / static_cast<double>(t.total);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100 * rate);
  return {rate >= 0.95, std::to_string(t.caught) + "/" + std::to_string(t.total) + " mutations on " + std::to_string(pool.size()) + " groupoids caught (" +
                            buf + "); uncaught: " + std::to_string(t.same_invariants) + " valid with the same homotopy groups, " +
                            std::to_string(t.new_invariants) + " valid with different ones"};
}

Outcome quasi_strict(const Corpus& c) {
  std::vector<Gpd> strict;
  for (const auto& [_, g] : c.em) strict.push_back(g);
  for (const auto& g : c.k_images) strict.push_back(g);
  for (const auto& [_, g] : c.hand) strict.push_back(g);
  for (const auto& g : c.simply_connected) strict.push_back(g);
  for (int n = 1; n <= 6; ++n) strict.push_back(share(corpus::cyclic_group(n)));
  strict.push_back(share(em_groupoid1(FiniteGroup::symmetric(3), 2)));
  strict.push_back(share(corpus::trivial(3)));
  int accepted = 0;
  for (const auto& g : strict) accepted += is_quasi_strict_groupoid(*g);
  const std::pair<const char*, TruncatedOmegaCat> reject[] = {{"capped N, k=2", corpus::capped_monoid(2)},
                                                              {"capped N, k=4", corpus::capped_monoid(4)},
                                                              {"one-sided inverses, strict", corpus::one_sided_strict()},
                                                              {"one-sided inverses, weak", corpus::one_sided_weak()}};
  int rejected = 0;
  for (const auto& [_, g] : reject) rejected += !is_quasi_strict_groupoid(g);
  const int n = static_cast<int>(strict.size());
  return {accepted == n && rejected == 4, std::to_string(accepted) + "/" + std::to_string(n) + " strict groupoids accepted, " + std::to_string(rejected) +
                                              "/4 non-groupoids rejected"};
}

Outcome decomposition_certificate(Rng& rng) {
  int ok = 0;
  std::size_t pieces = 0;
  for (int t = 0; t < 50; ++t) {
    RandomComplexSpec spec;
    spec.lower = static_cast<int>(pick(rng, -1, 2));
    spec.upper = spec.lower + static_cast<int>(pick(rng, 0, 4));
    spec.kind = ComponentKind::free;
    auto c = random_complex(rng, spec);
    if (t % 2) c = random_basis_change(rng, c);
    auto d = decompose_to_homology(c);
    bool good = validate(d.map).empty() && is_quasi_iso(d.map) && d.report.quasi_iso && d.report.homology_equal;
    for (int n = c.lower_bound() - 1; n <= c.upper_bound() + 1 && good; ++n) {
      good = homology(d.reduced, n) == homology(c, n);
      good = good && d.reduced.differential(n).is_zero();
    }
    pieces += d.report.pieces.size();
    ok += good;
  }
  return {ok == 50, std::to_string(ok) + "/50 free complexes, " + std::to_string(pieces) + " elementary pieces"};
}

} // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240611;
  Rng rng(seed);
  std::cout << "acceptance, seed " << seed << "\n";
  auto t0 = std::chrono::steady_clock::now();
  const Corpus corpus = build_corpus(rng);
  std::cout << "corpus: " << corpus.em.size() << " Eilenberg-Mac Lane, " << corpus.k_images.size() << " random K images, " << corpus.hand.size()
            << " hand-built, " << corpus.simply_connected.size() << " not 1-reduced (" << corpus.rejected << " draws over budget)\n";

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"SNF soundness", [&] { return snf_soundness(rng); }},
      {"Bourn round trips HK = id, KH = id", [&] { return bourn_round_trips(rng); }},
      {"pi_n = H_n", [&] { return pi_equals_homology(rng); }},
      {"Eilenberg-Mac Lane homotopy groups", [&] { return em_homotopy(corpus); }},
      {"Eckmann-Hilton", [&] { return eckmann_hilton(corpus); }},
      {"simply connected decomposition", [&] { return decomposition(corpus); }},
      {"weak-equivalence deciders agree", [&] { return decider_agreement(rng, corpus); }},
      {"axiom-checker mutation testing", [&] { return mutation_testing(rng, corpus); }},
      {"quasi-strict detection", [&] { return quasi_strict(corpus); }},
      {"constructive decomposition certificate", [&] { return decomposition_certificate(rng); }},
  };
  int failures = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::cout << (o.pass ? "PASS " : "FAIL ") << k << ". " << name << ": " << o.summary << " [" << t << "]\n" << std::flush;
    failures += !o.pass;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (failures ? "FAILED " : "ALL PASS ") << 10 - failures << "/10 in " << static_cast<int>(total) << "s\n";
  return failures ? 1 : 0;
}
