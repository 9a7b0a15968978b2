#include <doctest.h>

#include "corpus.hpp"
#include "ogk/error.hpp"
#include "ogk/gpd.hpp"

using namespace ogk;

namespace {

bool has_axiom(const std::vector<Violation>& v, const std::string& axiom) {
  for (const auto& x : v)
    if (x.axiom == axiom) return true;
  return false;
}

} // namespace

TEST_CASE("globular sets") {
  TruncatedGlobularSet one(0);
  one.add(0, "x");
  CHECK(validate_globular(one).empty());

  TruncatedGlobularSet g(2);
  g.add(0, "x");
  g.add(0, "y");
  g.add(1, "f", 0, 1);
  g.add(1, "h", 1, 1);
  g.add(2, "bad", 0, 1);  // from x → y to y → y
  auto v = validate_globular(g);
  REQUIRE(v.size() == 1);
  CHECK(v[0].axiom == "globular");
  CHECK(v[0].i == 2);
  CHECK_THROWS_AS(TruncatedOmegaCat(g, {{0, 1}, {0, 0}}), InvalidInput);

  TruncatedGlobularSet dup(0);
  dup.add(0, "x");
  dup.add(0, "x");
  CHECK(has_axiom(validate_globular(dup), "names"));
}

TEST_CASE("composability is checked on insertion") {
  auto c = corpus::one_sided_strict();
  CellId u = c.lookup(1, "u"), e = c.lookup(1, "e");
  CHECK_THROWS_AS(c.set_composition(1, 0, e, u, e), InvalidInput);
  CHECK(c.compose(1, 0, e, u) == kNoCell);
  CHECK(c.compose(1, 0, u, e) == u);
}

TEST_CASE("valid hand-built categories") {
  for (const auto& c : {corpus::trivial(0), corpus::trivial(1), corpus::trivial(3), corpus::capped_monoid(4),
                        corpus::cyclic_group(5), corpus::one_sided_strict(), corpus::one_sided_weak()}) {
    CHECK(validate_category(c, Exec::serial).empty());
    CHECK(validate_category(c, Exec::parallel).empty());
  }
}

TEST_CASE("missing entries and broken units are reported") {
  TruncatedGlobularSet g(1);
  g.add(0, "*");
  g.add(1, "a", 0, 0);
  g.add(1, "b", 0, 0);
  TruncatedOmegaCat c(g, {{0}});
  auto v = validate_category(c);
  CHECK(has_axiom(v, "defined"));

  auto m = corpus::capped_monoid(3);
  auto broken = m.with_composition(1, 0, 0, 2, 1);  // 0 * 2 = 1
  CHECK(has_axiom(validate_category(broken), "unit-left"));
  auto w = corpus::one_sided_weak();
  auto theta = w.lookup(2, "theta"), theta2 = w.lookup(2, "theta'");
  auto mutated = w.with_composition(2, 1, theta, theta2, theta);
  CHECK(has_axiom(validate_category(mutated), "boundary-source"));
  auto bad_unit = w.with_unit(1, w.lookup(1, "u"), theta);
  CHECK_FALSE(validate_category(bad_unit).empty());
}

TEST_CASE("inverses") {
  auto n = corpus::capped_monoid(4);
  CHECK(find_inverse(n, n.unit(0, 0), 1, 0) == n.unit(0, 0));
  CHECK_FALSE(find_inverse(n, n.lookup(1, "1"), 1, 0));
  CHECK_FALSE(is_groupoid(n).ok);

  auto z = corpus::cyclic_group(6);
  auto check = is_groupoid(z);
  CHECK(check.ok);
  CHECK(check.inverses[1][z.lookup(1, "2")] == z.lookup(1, "4"));

  for (const auto& c : {n, z, corpus::one_sided_strict(), corpus::one_sided_weak(), corpus::trivial(3)}) {
    bool adj = has_inverses(c, InverseCondition::adjacent);
    CHECK(adj == has_inverses(c, InverseCondition::to_objects));
    CHECK(adj == has_inverses(c, InverseCondition::some_j));
    CHECK(adj == has_inverses(c, InverseCondition::all_pairs));
    CHECK(adj == is_groupoid(c, Exec::serial).ok);
  }
  CHECK_THROWS_AS(TruncatedOmegaGpd{n}, InvalidInput);
  TruncatedOmegaGpd zg(z);
  CHECK(zg.inverse(1, 0, zg.lookup(1, "1")) == zg.lookup(1, "5"));
}

TEST_CASE("weak invertibility") {
  auto n = corpus::capped_monoid(4);
  auto w = weakly_invertible_cells(n);
  CHECK(w[1][n.lookup(1, "0")]);
  CHECK_FALSE(w[1][n.lookup(1, "1")]);
  CHECK_FALSE(is_quasi_strict_groupoid(n));

  for (const auto& c : {corpus::one_sided_strict(), corpus::one_sided_weak()}) {
    auto wk = weakly_invertible_cells(c);
    CHECK_FALSE(wk[1][c.lookup(1, "u")]);
    CHECK_FALSE(wk[1][c.lookup(1, "v")]);
    CHECK_FALSE(wk[1][c.lookup(1, "e")]);
    CHECK(wk[1][c.lookup(1, "1x")]);
    CHECK_FALSE(wk[2][c.lookup(2, "eta")]);
    CHECK_FALSE(is_quasi_strict_groupoid(c));
  }
  auto weak = corpus::one_sided_weak();
  auto wk = weakly_invertible_cells(weak);
  CHECK(wk[1][weak.lookup(1, "z")]);
  CHECK(wk[2][weak.lookup(2, "theta")]);

  CHECK(is_quasi_strict_groupoid(corpus::cyclic_group(4)));
  CHECK(is_quasi_strict_groupoid(corpus::trivial(3)));
}

TEST_CASE("morphisms") {
  auto z = std::make_shared<const TruncatedOmegaCat>(corpus::cyclic_group(4));
  auto id = OmegaMorphism::identity(z);
  CHECK(validate_morphism(id).empty());
  // x ↦ 2x is an endomorphism of ℤ/4, x ↦ x + 1 is not.
  OmegaMorphism dbl{z, z, {{0}, {0, 2, 0, 2}}};
  CHECK(validate_morphism(dbl).empty());
  OmegaMorphism shift{z, z, {{0}, {1, 2, 3, 0}}};
  CHECK(has_axiom(validate_morphism(shift), "morphism-unit"));
  auto t = std::make_shared<const TruncatedOmegaCat>(corpus::trivial(2));
  OmegaMorphism mismatch{z, t, {{0}, {0, 0, 0, 0}}};
  CHECK(has_axiom(validate_morphism(mismatch), "morphism-shape"));
}
