#include <doctest.h>

#include "ogk/error.hpp"
#include "ogk/fgab.hpp"
#include "support.hpp"

#include <map>
#include <numeric>

using namespace ogk;

namespace {

// Number of elements of each order, by enumerating ⊕ ℤ/d_i directly.
std::map<long, long> order_profile(const std::vector<long>& orders) {
  std::map<long, long> out;
  long size = 1;
  for (long d : orders) size *= d;
  for (long idx = 0; idx < size; ++idx) {
    long rest = idx, ord = 1;
    for (long d : orders) {
      long x = rest % d;
      rest /= d;
      long o = d / std::gcd(x, d);
      ord = std::lcm(ord, o);
    }
    ++out[ord];
  }
  return out;
}

FgAbGroup group_of(const std::vector<long>& orders) {
  std::vector<Integer> v(orders.begin(), orders.end());
  return FgAbGroup(0, v);
}

} // namespace

TEST_CASE("canonical form") {
  CHECK(FgAbGroup(0, {2, 3}) == FgAbGroup(0, {6}));
  CHECK(FgAbGroup(0, {1, 4, 0}) == FgAbGroup(1, {4}));
  CHECK(FgAbGroup(0, {4, 2}).torsion() == std::vector<Integer>{2, 4});
  CHECK(FgAbGroup(0, {6, 4}).torsion() == std::vector<Integer>{2, 12});
  CHECK(FgAbGroup(2, {3, 9}).to_string() == "Z^2 x Z/3 x Z/9");
  CHECK(FgAbGroup().to_string() == "0");
}

TEST_CASE("cokernel of presentations") {
  CHECK(cokernel(IntMatrix{{2}}) == FgAbGroup::cyclic(2));
  CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}) == FgAbGroup(0, {6}));
  CHECK(cokernel(IntMatrix(2, 0)) == FgAbGroup::free(2));

  auto rng = test::rng(21);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = test::uniform(rng, 1, 4), m = test::uniform(rng, 0, 4);
    auto a = test::random_matrix(rng, n, m, 6);
    auto g = cokernel(a);
    // Random unimodular changes on both sides.
    auto u = IntMatrix::identity(n), v = IntMatrix::identity(m);
    for (int k = 0; k < 6; ++k) {
      if (n > 1) u.add_row_multiple(test::uniform(rng, 0, n - 1), 0, test::uniform(rng, -2, 2));
      if (n > 1) u.swap_rows(0, test::uniform(rng, 0, n - 1));
      if (m > 1) v.add_col_multiple(test::uniform(rng, 1, m - 1), 0, test::uniform(rng, -2, 2));
      if (m > 1) v.swap_cols(0, test::uniform(rng, 0, m - 1));
    }
    if (abs(determinant(u)) != 1 || (m > 0 && abs(determinant(v)) != 1)) continue;
    CHECK(cokernel(u * a * v) == g);
  }
}

TEST_CASE("isomorphism and direct sums") {
  CHECK(is_isomorphic(direct_sum({FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)}), FgAbGroup::cyclic(6)));
  CHECK_FALSE(is_isomorphic(FgAbGroup::free(1), FgAbGroup::cyclic(2)));
  CHECK(is_isomorphic(FgAbGroup::free(2), FgAbGroup::free(2)));
  CHECK(direct_sum({FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)}) == FgAbGroup(0, {2, 2}));
  CHECK(direct_sum({FgAbGroup::free(1), FgAbGroup::cyclic(4)}) == FgAbGroup(1, {4}));

  auto rng = test::rng(8);
  for (int t = 0; t < 40; ++t) {
    std::vector<FgAbGroup> gs;
    for (int k = 0; k < 3; ++k) gs.push_back(FgAbGroup(test::uniform(rng, 0, 1), {test::uniform(rng, 1, 6)}));
    CHECK(direct_sum({gs[0], gs[1]}) == direct_sum({gs[1], gs[0]}));
    CHECK(direct_sum({direct_sum({gs[0], gs[1]}), gs[2]}) == direct_sum({gs[0], direct_sum({gs[1], gs[2]})}));
    auto ds = direct_sum_maps(gs);
    CHECK(ds.group == direct_sum(gs));
    for (std::size_t k = 0; k < gs.size(); ++k) {
      CHECK(same_map(compose(ds.projections[k], ds.injections[k]), AbHom::identity(gs[k])));
      for (std::size_t l = 0; l < gs.size(); ++l)
        if (l != k) CHECK(compose(ds.projections[l], ds.injections[k]).is_zero());
    }
  }
}

TEST_CASE("isomorphism test agrees with the order-profile oracle up to order 64") {
  // Every abelian group of order ≤ 64 as a list of cyclic factors, in many non-canonical spellings.
  std::vector<std::vector<long>> spellings;
  for (long a = 1; a <= 64; ++a)
    for (long b = 1; a * b <= 64; ++b)
      for (long c = 1; a * b * c <= 64; ++c) spellings.push_back({a, b, c});
  std::vector<std::pair<FgAbGroup, std::map<long, long>>> data;
  for (const auto& s : spellings) {
    data.emplace_back(group_of(s), order_profile(s));
  }
  std::size_t checked = 0;
  for (std::size_t i = 0; i < data.size(); i += 3)
    for (std::size_t j = i; j < data.size(); j += 5) {
      CHECK(is_isomorphic(data[i].first, data[j].first) == (data[i].second == data[j].second));
      ++checked;
    }
  CHECK(checked > 1000);
  // Order and exponent alone cannot tell these apart.
  CHECK_FALSE(is_isomorphic(group_of({2, 4, 4}), group_of({2, 2, 2, 4})));
  CHECK(order_profile({2, 4, 4}) != order_profile({2, 2, 2, 4}));
}

TEST_CASE("subquotient") {
  CHECK(subquotient(IntMatrix{{1}}, IntMatrix{{2}}, FgAbGroup::free(1)) == FgAbGroup::cyclic(2));
  CHECK(subquotient(IntMatrix{{1}, {1}}, IntMatrix{{3}, {3}}, FgAbGroup::free(2)) == FgAbGroup::cyclic(3));
  CHECK(subquotient(IntMatrix{{1}, {1}}, IntMatrix{{1}, {1}}, FgAbGroup::free(2)).is_trivial());
  CHECK_THROWS_AS(subquotient(IntMatrix{{1}, {1}}, IntMatrix{{1}, {0}}, FgAbGroup::free(2)), InvalidInput);
  // Inside a torsion ambient group.
  CHECK(subquotient(IntMatrix{{2}}, IntMatrix{{4}}, FgAbGroup::cyclic(8)) == FgAbGroup::cyclic(2));
}

TEST_CASE("homomorphisms, kernels, images") {
  FgAbGroup z4 = FgAbGroup::cyclic(4), z2 = FgAbGroup::cyclic(2);
  CHECK_THROWS_AS(AbHom(z2, FgAbGroup::free(1), IntMatrix{{1}}), InvalidInput);
  AbHom twice(z4, z4, IntMatrix{{2}});
  CHECK(kernel(twice).group() == z2);
  CHECK(image(twice).group() == z2);
  CHECK(cokernel(twice).group() == z2);
  CHECK_FALSE(is_injective(twice));
  AbHom three(z4, z4, IntMatrix{{3}});
  CHECK(is_isomorphism(three));
  CHECK(same_map(compose(inverse(three), three), AbHom::identity(z4)));

  AbHom m(FgAbGroup::free(2), FgAbGroup::free(1), IntMatrix{{2, -2}});
  auto k = kernel(m);
  CHECK(k.group() == FgAbGroup::free(1));
  CHECK(k.contains(IntVector{3, 3}));
  CHECK_FALSE(k.contains(IntVector{1, 0}));
  CHECK(compose(m, k.inclusion()).is_zero());
}

TEST_CASE("enumeration of finite groups") {
  FgAbGroup g(0, {2, 6});
  FiniteAbEnumerator e(g);
  CHECK(e.size() == 12);
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(e.encode(e.decode(i)) == i);
  AbHom f(g, FgAbGroup::cyclic(6), IntMatrix{{3, 1}});
  FiniteAbMap fm(f);
  FiniteAbEnumerator t(FgAbGroup::cyclic(6));
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(fm(i) == t.encode(f(e.element(i))));
  CHECK_THROWS_AS(FiniteAbEnumerator(FgAbGroup::free(1)), Unsupported);
}
