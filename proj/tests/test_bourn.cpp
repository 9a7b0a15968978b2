#include <doctest.h>

#include "ogk/bourn.hpp"
#include "ogk/error.hpp"
#include "ogk/random.hpp"
#include "support.hpp"

#include <algorithm>

using namespace ogk;

namespace {

std::shared_ptr<const TruncatedOmegaCat> share(TruncatedOmegaCat c) { return std::make_shared<const TruncatedOmegaCat>(std::move(c)); }

ChainComplex two_term(const FgAbGroup& top, const FgAbGroup& bottom, const IntMatrix& d, int lower) {
  return ChainComplex(lower, lower + 1, {bottom, top}, {AbHom(top, bottom, d)});
}

bool same_groupoid(const AbOmegaGroupoid& a, const AbOmegaGroupoid& b) {
  if (a.level != b.level || a.groups != b.groups) return false;
  for (int d = 1; d <= a.level; ++d)
    if (!same_map(a.src[d], b.src[d]) || !same_map(a.tgt[d], b.tgt[d])) return false;
  for (int d = 0; d < a.level; ++d)
    if (!same_map(a.units[d], b.units[d])) return false;
  return true;
}

bool bijective(const OmegaMorphism& f) {
  for (int d = 0; d <= f.source->level(); ++d) {
    if (f.source->count(d) != f.target->count(d)) return false;
    auto v = f.levels[d];
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  }
  return true;
}

// The complexes of the round-trip tests: finite, at most two cyclic factors of order ≤ 3.
ChainComplex small_finite(Rng& rng, int lower, int upper) {
  RandomComplexSpec spec;
  spec.lower = lower;
  spec.upper = upper;
  spec.max_rank = 1;
  spec.max_order = 3;
  spec.kind = ComponentKind::finite;
  return random_complex(rng, spec);
}

} // namespace

TEST_CASE("K on the doubling complex") {
  const auto z = FgAbGroup::free(1);
  auto c = two_term(z, z, {{2}}, 0);
  auto k = k_functor_blocks(c, 1);
  const auto& g = k.groupoid;
  CHECK(validate(g).empty());
  // (x₁, x₀) in G₁ = C₁ ⊕ C₀
  auto cell = [&](long x1, long x0) {
    IntVector a = k.blocks[1].injections[0](IntVector{x1});
    IntVector b = k.blocks[1].injections[1](IntVector{x0});
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return g.groups[1].reduce(a);
  };
  CHECK(g.src[1](cell(5, 7)) == IntVector{7});
  CHECK(g.tgt[1](cell(5, 7)) == IntVector{17});
  CHECK(g.compose(1, 0, cell(5, 7), cell(3, 1)) == cell(8, 1));
  CHECK(g.inverse(1, 0, cell(5, 7)) == cell(-5, 17));
  CHECK(g.compose(1, 0, cell(5, 7), cell(-5, 17)) == g.units[0](IntVector{17}));
  CHECK(g.compose(1, 0, cell(-5, 17), cell(5, 7)) == g.units[0](IntVector{7}));
  CHECK_THROWS_AS(g.compose(1, 0, cell(5, 7), cell(3, 2)), InvalidInput);
  CHECK_THROWS_AS(materialize(g, 1000), Unsupported);
}

TEST_CASE("K of Eilenberg-Mac Lane complexes") {
  for (auto a : {FgAbGroup::cyclic(2), FgAbGroup(0, {2, 4}), FgAbGroup::free(1), FgAbGroup(1, {3})})
    for (int n = 0; n <= 3; ++n)
      for (int level = n; level <= 4; ++level) {
        auto em = em_groupoid(a, n, level);
        CHECK(validate(em).empty());
        CHECK(same_groupoid(k_functor(em_complex(a, n), level), em));
        auto h = h_functor(em);
        for (int i = 0; i <= level; ++i) {
          CHECK(h.component(i) == (i == n ? a : FgAbGroup::trivial()));
          CHECK(h.differential(i).is_zero());
        }
      }
  CHECK_THROWS_AS(em_groupoid(FgAbGroup::cyclic(2), 3, 2), InvalidInput);
  CHECK_THROWS_AS(k_functor(em_complex(FgAbGroup::cyclic(2), 3), 2), InvalidInput);

  auto t = h_functor(em_groupoid(FgAbGroup::trivial(), 0, 3));
  for (int i = 0; i <= 3; ++i) CHECK(t.component(i).is_trivial());
  CHECK(h_functor(k_functor(ChainComplex::zero(0), 2)).component(0).is_trivial());
}

TEST_CASE("AbOmegaGroupoid validation") {
  auto g = k_functor(two_term(FgAbGroup::cyclic(4), FgAbGroup::cyclic(4), {{2}}, 0), 2);
  CHECK(validate(g).empty());
  auto bad = g;
  bad.tgt[2] = AbHom::zero(bad.groups[2], bad.groups[1]);
  CHECK_FALSE(validate(bad).empty());
  CHECK_THROWS_AS(h_functor(bad), InvalidInput);
  auto shape = g;
  shape.units.pop_back();
  CHECK_FALSE(validate(shape).empty());
}

TEST_CASE("HK is isomorphic to the identity") {
  auto rng = test::rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    RandomComplexSpec spec;
    spec.upper = 1 + trial % 4;
    spec.kind = trial % 3 == 0 ? ComponentKind::free : ComponentKind::mixed;
    auto c = random_complex(rng, spec);
    const int level = spec.upper + trial % 2;
    auto f = hk_unit(c, level);
    CHECK(validate(f).empty());
    for (int i = 0; i <= level; ++i) {
      CHECK(f.target.component(i) == c.component(i));
      CHECK(is_isomorphism(f.level(i)));
    }
  }
}

TEST_CASE("KH is isomorphic to the identity") {
  auto rng = test::rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    auto c = small_finite(rng, 0, 2);
    auto g = k_functor(c, 2);
    auto kh = k_functor(h_functor(g), 2);
    auto e = kh_counit(g);
    CHECK(validate_ab_morphism(kh, g, e).empty());
    for (const auto& f : e) CHECK(is_isomorphism(f));
    auto src = share(materialize(kh, 20000));
    auto tgt = share(materialize(g, 20000));
    auto m = materialize_map(e, src, tgt);
    CHECK(validate_morphism(m).empty());
    CHECK(bijective(m));
  }
  // Not a K image on the nose: a direct sum of Eilenberg-Mac Lane groupoids.
  auto g = direct_sum_groupoid({em_groupoid(FgAbGroup::cyclic(2), 1, 2), em_groupoid(FgAbGroup::cyclic(3), 2, 2)}, 2);
  CHECK(validate(g).empty());
  auto e = kh_counit(g);
  CHECK(validate_ab_morphism(k_functor(h_functor(g), 2), g, e).empty());
  for (const auto& f : e) CHECK(is_isomorphism(f));
}

TEST_CASE("materialized K images are groupoids") {
  auto rng = test::rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    auto c = small_finite(rng, 0, 1);
    auto m = materialize(k_functor(c, 2), 20000);
    if (m.count(2) > 36) continue;
    CHECK(validate_category(m).empty());
    CHECK(is_groupoid(m).ok);
  }
  auto a = materialize(k_functor(two_term(FgAbGroup::cyclic(4), FgAbGroup::cyclic(2), {{1}}, 0), 2), 1000);
  CHECK(validate_category(a, Exec::serial).empty());
  auto b = materialize(k_functor(two_term(FgAbGroup::cyclic(4), FgAbGroup::cyclic(2), {{1}}, 0), 2), 1000, Exec::serial);
  CHECK(static_cast<const TruncatedOmegaCat&>(a) == static_cast<const TruncatedOmegaCat&>(b));
  CHECK(a.inverse_tables() == b.inverse_tables());
}

TEST_CASE("cell budget") {
  auto g = em_groupoid(FgAbGroup::cyclic(2), 2, 3);
  CHECK_NOTHROW(materialize(g, 6));
  CHECK_THROWS_AS(materialize(g, 5), SizeLimitExceeded);
  // 130 cells but 2·128² + 1 composable pairs.
  auto wide = em_groupoid(FgAbGroup(0, {2, 2, 2, 2, 2, 2, 2}), 2, 2);
  CHECK_THROWS_AS(materialize(wide, 130), SizeLimitExceeded);
}

TEST_CASE("horizontal inverses from vertical ones") {
  auto c = ChainComplex(0, 2, {FgAbGroup::cyclic(2), FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)},
                        {AbHom::identity(FgAbGroup::cyclic(2)), AbHom::zero(FgAbGroup::cyclic(2), FgAbGroup::cyclic(2))});
  auto g = materialize(k_functor(c, 2), 1000);
  REQUIRE(g.count(2) == 8);
  for (CellId a = 0; a < g.count(2); ++a) {
    const CellId w = horizontal_inverse_from_vertical(g, a, g.inverse(2, 1, a));
    CHECK(w == g.inverse(2, 0, a));
    CHECK(is_inverse(g, 2, 0, a, w));
  }
}

TEST_CASE("abelianization") {
  auto em = materialize(em_groupoid(FgAbGroup::cyclic(2), 2, 3), 1000);
  auto a = abelianize_one_reduced(em);
  CHECK(a.groupoid.groups == std::vector<FgAbGroup>{FgAbGroup{}, FgAbGroup{}, FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)});
  CHECK(check_eckmann_hilton(em).empty());

  auto rng = test::rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    auto c = small_finite(rng, 2, 3);
    auto k = k_functor(c, 3);
    auto m = share(materialize(k, 20000));
    REQUIRE(is_one_reduced(*m));
    auto ab = abelianize_one_reduced(*m);
    CHECK(validate(ab.groupoid).empty());
    CHECK(ab.groupoid.groups == k.groups);
    auto image = share(materialize(ab.groupoid, 20000));
    OmegaMorphism f{m, image, abelianization_cells(ab)};
    CHECK(validate_morphism(f).empty());
    CHECK(bijective(f));
    auto hc = h_functor(ab.groupoid);
    for (int n = 0; n <= 3; ++n) CHECK(homology(hc, n) == homology(c, n));
  }

  // 1 ∗²₀ 1 = 0 breaks exchange against ∗²₁.
  auto z3 = materialize(em_groupoid(FgAbGroup::cyclic(3), 2, 2), 1000);
  REQUIRE(z3.compose(2, 0, 1, 1) == 2);
  auto broken = z3.with_composition(2, 0, 1, 1, 0);
  CHECK_FALSE(check_eckmann_hilton(broken).empty());
  CHECK_THROWS_AS(abelianize_one_reduced(broken), InvariantFailure);
  CHECK_THROWS_AS(abelianize_one_reduced(em_groupoid1(FiniteGroup::cyclic(2), 2)), InvalidInput);
}

TEST_CASE("products of groupoids") {
  auto e2 = materialize(em_groupoid(FgAbGroup::cyclic(2), 2, 3), 1000);
  auto e3 = materialize(em_groupoid(FgAbGroup::cyclic(2), 3, 3), 1000);
  auto p = product_groupoid({e2, e3}, 3);
  CHECK(is_groupoid(p).ok);
  CHECK(to_fgab(pi_n(p, 0, 2)) == FgAbGroup::cyclic(2));
  CHECK(to_fgab(pi_n(p, 0, 3)) == FgAbGroup::cyclic(2));

  auto f3 = materialize(em_groupoid(FgAbGroup::cyclic(3), 2, 3), 1000);
  auto q = product_groupoid({e2, f3}, 3);
  CHECK(validate_category(q).empty());
  CHECK(group_iso(pi_n(q, 0, 2), direct_product(pi_n(e2, 0, 2), pi_n(f3, 0, 2))));
  CHECK(to_fgab(pi_n(q, 0, 2)) == FgAbGroup::cyclic(6));

  auto t = product_groupoid({e2, trivial_groupoid(3)}, 3);
  for (int d = 0; d <= 3; ++d) CHECK(t.count(d) == e2.count(d));
  for (int n = 1; n <= 3; ++n) CHECK(group_iso(pi_n(t, 0, n), pi_n(e2, 0, n)));
  CHECK(product_groupoid({}, 2).count(2) == 1);
  CHECK_THROWS_AS(product_groupoid({e2, materialize(em_groupoid(FgAbGroup::cyclic(2), 2, 2), 100)}, 3), InvalidInput);
}

TEST_CASE("pi_n against homology") {
  auto em = em_complex(FgAbGroup::cyclic(2), 2);
  for (int n = 0; n <= 3; ++n) CHECK(pi_equals_homology_check(em, n));
  auto c = two_term(FgAbGroup::cyclic(4), FgAbGroup::cyclic(4), {{2}}, 2);
  CHECK(homology(c, 2) == FgAbGroup::cyclic(2));
  CHECK(homology(c, 3) == FgAbGroup::cyclic(2));
  for (int n = 0; n <= 4; ++n) CHECK(pi_equals_homology_check(c, n));
  for (int n = 0; n <= 2; ++n) CHECK(pi_equals_homology_check(ChainComplex::zero(0), n));
  CHECK_THROWS_AS(pi_equals_homology_check(em_complex(FgAbGroup::free(1), 2), 2), Unsupported);
}

TEST_CASE("quasi-isomorphisms and weak equivalences") {
  const auto z2 = FgAbGroup::cyclic(2), z4 = FgAbGroup::cyclic(4);
  auto acyclic = two_term(z2, z2, {{1}}, 2);
  auto em4 = em_complex(z4, 2);
  std::vector<ChainMap> maps{
      ChainMap::identity(acyclic),
      ChainMap::zero(acyclic, ChainComplex::zero(2)),
      ChainMap::zero(em4, em4),
      ChainMap{em4, em4, {{2, AbHom(z4, z4, {{2}})}}},
      ChainMap{em4, em4, {{2, AbHom(z4, z4, {{3}})}}},
      ChainMap::zero(ChainComplex::zero(2), acyclic),
  };
  const std::vector<bool> expected{true, true, false, false, true, true};
  const int level = 3;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const auto& f = maps[k];
    REQUIRE(validate(f).empty());
    auto src = share(materialize(k_functor(f.source, level), 20000));
    auto tgt = share(materialize(k_functor(f.target, level), 20000));
    auto m = materialize_map(k_functor_map(f, level), src, tgt);
    CHECK(validate_morphism(m).empty());
    CHECK(is_quasi_iso(f) == expected[k]);
    CHECK(is_weak_equivalence(m) == expected[k]);
  }
}

TEST_CASE("zero differentials and src = tgt") {
  const auto z2 = FgAbGroup::cyclic(2), z4 = FgAbGroup::cyclic(4);
  for (const auto& c : {two_term(z2, z4, {{2}}, 2), two_term(z4, z4, {{0}}, 1), em_complex(z2, 2), two_term(z2, z2, {{1}}, 0)}) {
    bool zero_d = true;
    for (int i = c.lower_bound() + 1; i <= c.upper_bound(); ++i) zero_d = zero_d && c.differential(i).is_zero();
    auto g = k_functor(c, 3);
    bool same = true;
    for (int d = 1; d <= 3; ++d) same = same && same_map(g.src[d], g.tgt[d]);
    CHECK(same == zero_d);
  }
}

TEST_CASE("decomposition of simply connected groupoids") {
  const auto z2 = FgAbGroup::cyclic(2), z3 = FgAbGroup::cyclic(3), z4 = FgAbGroup::cyclic(4);
  // ℤ/2 -×2→ ℤ/4 in degrees 3, 2: H₂ = ℤ/2, H₃ = 0.
  auto g = share(materialize(k_functor(two_term(z2, z4, {{2}}, 2), 4), 20000));
  auto r = decompose_simply_connected(g, 0);
  CHECK(r.ok);
  CHECK(r.failing_degree == -1);
  REQUIRE(r.factors.size() == 1);
  CHECK(r.factors[0].first == 2);
  CHECK(r.factors[0].second == z2);
  CHECK(r.homology.at(2) == z2);
  CHECK(r.homology.at(3).is_trivial());
  CHECK(std::any_of(r.certificates.begin(), r.certificates.end(), [](const Certificate& c) { return c.kind == "homology-only"; }));

  auto zero_d = ChainComplex(2, 3, {z2, z3}, {AbHom::zero(z3, z2)});
  auto h = share(materialize(k_functor(zero_d, 3), 20000));
  auto s = decompose_simply_connected(h, 0);
  CHECK(s.ok);
  REQUIRE(s.factors.size() == 2);
  CHECK(s.factors[0] == std::pair<int, FgAbGroup>{2, z2});
  CHECK(s.factors[1] == std::pair<int, FgAbGroup>{3, z3});
  CHECK(to_fgab(pi_n(*s.product, 0, 2)) == z2);
  CHECK(to_fgab(pi_n(*s.product, 0, 3)) == z3);

  // Already a product: the same factors come back.
  auto p = share(product_groupoid({materialize(em_groupoid(z2, 2, 3), 100), materialize(em_groupoid(z2, 3, 3), 100)}, 3));
  auto pr = decompose_simply_connected(p, 0);
  CHECK(pr.ok);
  CHECK(pr.factors == std::vector<std::pair<int, FgAbGroup>>{{2, z2}, {3, z2}});

  // Not 1-reduced: the reduction step does real work.
  auto c = ChainComplex(0, 3, {z2, z2, z3, FgAbGroup::trivial()},
                        {AbHom::identity(z2), AbHom::zero(z3, z2), AbHom::zero(FgAbGroup::trivial(), z3)});
  auto big = share(materialize(k_functor(c, 3), 20000));
  auto br = decompose_simply_connected(big, 1);
  CHECK(br.ok);
  CHECK(br.one_reduced->count(2) < big->count(2));
  CHECK(br.factors == std::vector<std::pair<int, FgAbGroup>>{{2, z3}});

  CHECK_THROWS_AS(decompose_simply_connected(share(em_groupoid1(FiniteGroup::cyclic(2), 2)), 0), InvalidInput);
  CHECK_THROWS_AS(decompose_simply_connected(share(em_groupoid0({"a", "b"}, 2)), 0), InvalidInput);
  CHECK_THROWS_AS(decompose_simply_connected(g, 7), InvalidInput);
}
