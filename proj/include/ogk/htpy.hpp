#pragma once

// Homotopy invariants of finite strict ∞-groupoids.

#include "ogk/fgab.hpp"
#include "ogk/gpd.hpp"

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace ogk {

/// A finite group by its multiplication table; table[a][b] = a·b.
struct FiniteGroup {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table;
  std::size_t identity = 0;

  std::size_t size() const { return elements.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
  std::size_t inverse(std::size_t a) const;
  std::size_t element_order(std::size_t a) const;
  bool is_abelian() const;

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  // Elements of a finite canonical group in enumerator order.
  static FiniteGroup from_fgab(const FgAbGroup& g);
  // Permutations of {0..n-1}, composed right to left.
  static FiniteGroup symmetric(std::size_t n);
};

// Associativity, identity and inverse laws; empty when the table is a group.
std::vector<std::string> validate(const FiniteGroup& g);
// Invariant-factor form of an abelian group; InvalidInput otherwise.
FgAbGroup to_fgab(const FiniteGroup& g);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
// Abelian groups by canonical form, non-abelian ones of order ≤ 24 by
// search; larger non-abelian groups throw Unsupported.
bool group_iso(const FiniteGroup& a, const FiniteGroup& b);

/// An ordinary finite groupoid.
struct Groupoid1 {
  std::size_t objects = 0;
  std::vector<std::size_t> src, tgt;
  std::vector<std::size_t> identity;                    // per object
  std::vector<std::size_t> inverse;                     // per arrow
  std::unordered_map<std::uint64_t, std::size_t> comp;  // key g << 32 | f, value g∘f

  std::size_t arrows() const { return src.size(); }
  std::size_t compose(std::size_t g, std::size_t f) const;  // InvalidInput if not composable
};

std::vector<std::string> validate(const Groupoid1& g);

/// ∼ₙ-classes of the n-cells of a groupoid.
struct HomotopyClasses {
  int n = 0;
  std::vector<std::size_t> class_of;          // per n-cell
  std::vector<CellId> representative;         // per class, smallest member
  std::size_t count() const { return representative.size(); }
};

// At the top level the relation is equality.
HomotopyClasses homotopy_classes(const TruncatedOmegaCat& g, int n);
bool homotopic(const TruncatedOmegaCat& g, int n, CellId u, CellId v);

HomotopyClasses pi0(const TruncatedOmegaCat& g);

// πₙ at an (n−1)-cell basepoint u: classes of n-cells u → u under ∗ⁿₙ₋₁.
// Element names are representative cell names. Trivial for n above the level.
FiniteGroup pi_n_at(const TruncatedOmegaCat& g, CellId u, int n);
// πₙ(G, x) for an object x.
FiniteGroup pi_n(const TruncatedOmegaCat& g, CellId x, int n);

/// Hom-set of Πₙ between parallel (n−1)-cells, with the right action of πₙ(G, u).
struct HomSet {
  std::vector<CellId> classes;                // representatives
  FiniteGroup group;                          // πₙ(G, u)
  std::vector<std::vector<std::size_t>> act;  // act[c][a] = class of c ∗ a
};
HomSet pi_n_homset(const TruncatedOmegaCat& g, CellId u, CellId v, int n);

// Objects are the (n−1)-cells, arrows the ∼ₙ-classes of n-cells.
Groupoid1 Pi_n(const TruncatedOmegaCat& g, int n);
// The functor Πₙ(f) on arrows, as class indices.
std::vector<std::size_t> Pi_n_map(const OmegaMorphism& f, int n);

// π₀ bijection and πₙ(f, x) bijective for every object x and 1 ≤ n ≤ level.
bool weq_by_definition(const OmegaMorphism& f);
// Essential surjectivity, fullness up to homotopy on parallel pairs at every
// level, and injectivity on parallel top cells.
bool weq_by_fullness(const OmegaMorphism& f);
// Runs both deciders; InvariantFailure if they disagree.
bool is_weak_equivalence(const OmegaMorphism& f);

bool is_simply_connected(const TruncatedOmegaCat& g);
bool is_one_reduced(const TruncatedOmegaCat& g);

struct OneReduction {
  std::shared_ptr<const TruncatedOmegaCat> reduced;
  OmegaMorphism inclusion;  // reduced → g
};
// Cells whose 1-boundaries are both κ(x), for a simply connected g.
OneReduction one_reduce(std::shared_ptr<const TruncatedOmegaCat> g, CellId x);

} // namespace ogk
