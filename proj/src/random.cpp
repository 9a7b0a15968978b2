#include "ogk/random.hpp"

#include "ogk/error.hpp"

#include <numeric>

namespace ogk {

namespace {

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Random unimodular matrix together with its inverse.
std::pair<IntMatrix, IntMatrix> random_unimodular(Rng& rng, std::size_t n) {
  IntMatrix p = IntMatrix::identity(n), q = IntMatrix::identity(n);
  if (n < 2) return {p, q};
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    auto a = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(n) - 1));
    auto b = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(n) - 1));
    if (a == b) continue;
    Integer k = pick(rng, -2, 2);
    p.add_row_multiple(a, b, k);   // p ← E p
    q.add_col_multiple(b, a, -k);  // q ← q E⁻¹
  }
  return {p, q};
}

} // namespace

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = pick(rng, -bound, bound);
  return m;
}

FgAbGroup random_group(Rng& rng, std::size_t max_rank, long max_order, ComponentKind kind) {
  const auto factors = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(max_rank)));
  std::size_t free = 0;
  std::vector<Integer> orders;
  for (std::size_t k = 0; k < factors; ++k) {
    bool make_free = kind == ComponentKind::free || (kind == ComponentKind::mixed && pick(rng, 0, 2) == 0);
    if (make_free || max_order < 2)
      ++free;
    else
      orders.emplace_back(pick(rng, 2, max_order));
  }
  if (kind == ComponentKind::finite) free = 0;
  return FgAbGroup(free, orders);
}

AbHom random_hom(Rng& rng, const FgAbGroup& source, const FgAbGroup& target, long bound) {
  IntMatrix m(target.generator_count(), source.generator_count());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const Integer o = source.generator_order(c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const Integer e = target.generator_order(r);
      if (o == 0) {
        m(r, c) = pick(rng, -bound, bound);
      } else if (e != 0) {
        // o * y ≡ 0 (mod e) forces y to be a multiple of e / gcd(o, e).
        Integer g;
        mpz_gcd(g.get_mpz_t(), o.get_mpz_t(), e.get_mpz_t());
        m(r, c) = (e / g) * pick(rng, -bound, bound);
      }
    }
  }
  return AbHom(source, target, std::move(m));
}

ChainComplex random_complex(Rng& rng, const RandomComplexSpec& spec) {
  if (spec.upper < spec.lower) throw InvalidInput("random_complex: upper < lower");
  std::vector<FgAbGroup> comps;
  for (int i = spec.lower; i <= spec.upper; ++i) comps.push_back(random_group(rng, spec.max_rank, spec.max_order, spec.kind));
  std::vector<AbHom> diffs;
  for (std::size_t m = 1; m < comps.size(); ++m) {
    Subgroup room = m == 1 ? Subgroup(comps[0], IntMatrix::identity(comps[0].generator_count()))
                           : kernel(diffs.back());
    AbHom into = pick(rng, 0, 4) == 0 ? AbHom::zero(comps[m], room.group()) : random_hom(rng, comps[m], room.group());
    diffs.push_back(compose(room.inclusion(), into));
  }
  return ChainComplex(spec.lower, spec.upper, std::move(comps), std::move(diffs));
}

ChainComplex random_basis_change(Rng& rng, const ChainComplex& c) {
  if (!c.all_free()) throw InvalidInput("random_basis_change: complex must be free");
  std::vector<std::pair<IntMatrix, IntMatrix>> changes;
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) changes.push_back(random_unimodular(rng, c.component(i).generator_count()));
  std::vector<FgAbGroup> comps;
  std::vector<AbHom> diffs;
  for (int i = c.lower_bound(); i <= c.upper_bound(); ++i) {
    comps.push_back(c.component(i));
    if (i == c.lower_bound()) continue;
    const auto& below = changes[static_cast<std::size_t>(i - 1 - c.lower_bound())];
    const auto& here = changes[static_cast<std::size_t>(i - c.lower_bound())];
    diffs.emplace_back(c.component(i), c.component(i - 1), below.first * c.differential(i).matrix() * here.second);
  }
  return ChainComplex(c.lower_bound(), c.upper_bound(), std::move(comps), std::move(diffs));
}

} // namespace ogk
