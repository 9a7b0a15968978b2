#pragma once

// Seeded generators for self-test corpora.

#include "ogk/chain.hpp"

#include <random>

namespace ogk {

using Rng = std::mt19937_64;

enum class ComponentKind { free, finite, mixed };

struct RandomComplexSpec {
  int lower = 0;
  int upper = 3;
  std::size_t max_rank = 2;   // cyclic factors per component
  long max_order = 6;         // torsion orders drawn from [2, max_order]
  ComponentKind kind = ComponentKind::mixed;
};

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);
FgAbGroup random_group(Rng& rng, std::size_t max_rank, long max_order, ComponentKind kind);
// A random homomorphism source → target.
AbHom random_hom(Rng& rng, const FgAbGroup& source, const FgAbGroup& target, long bound = 3);
// Differentials are drawn inside the kernel of the one below, so d d = 0 by construction.
ChainComplex random_complex(Rng& rng, const RandomComplexSpec& spec);
// Conjugates every differential of a free complex by random unimodular matrices.
ChainComplex random_basis_change(Rng& rng, const ChainComplex& c);

} // namespace ogk
