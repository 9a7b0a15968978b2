#pragma once

// Strict ∞-groupoids in abelian groups, the functors K and H between them and
// chain complexes, Eilenberg-Mac Lane groupoids and the decomposition of
// simply connected groupoids.

#include "ogk/chain.hpp"
#include "ogk/gpd.hpp"
#include "ogk/htpy.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ogk {

/// Groups G_0..G_N with homomorphisms s, t : G_d → G_{d-1} and κ : G_d → G_{d+1}.
/// Composition is forced: v ∗ⁱⱼ u = v − κ(sⁱⱼ v) + u.
struct AbOmegaGroupoid {
  int level = 0;
  std::vector<FgAbGroup> groups;
  std::vector<AbHom> src, tgt;  // index d = 1..level; index 0 is a placeholder
  std::vector<AbHom> units;     // index d = 0..level-1

  AbHom src_to(int i, int j) const;   // sⁱⱼ
  AbHom tgt_to(int i, int j) const;   // tⁱⱼ
  AbHom unit_from(int i, int j) const; // κⁱⱼ : G_j → G_i
  bool all_finite() const;

  // v ∗ⁱⱼ u on element coordinates; InvalidInput unless sⁱⱼ v = tⁱⱼ u.
  IntVector compose(int i, int j, const IntVector& v, const IntVector& u) const;
  // κ s u + κ t u − u
  IntVector inverse(int i, int j, const IntVector& u) const;
};

std::vector<std::string> validate(const AbOmegaGroupoid& g);

/// K(c) together with the splitting G_i = C_i ⊕ C_{i-1} ⊕ ⋯ ⊕ C_0.
struct KImage {
  AbOmegaGroupoid groupoid;
  std::vector<DirectSum> blocks;  // blocks[i].injections[k] embeds C_{i-k}
};

// Requires lower_bound ≥ 0 and upper_bound ≤ level.
KImage k_functor_blocks(const ChainComplex& c, int level);
AbOmegaGroupoid k_functor(const ChainComplex& c, int level);
// K on a chain map between complexes accepted by k_functor.
std::vector<AbHom> k_functor_map(const ChainMap& f, int level);

/// H(g) with the inclusions C_i = ker s_i → G_i and the retractions x ↦ x − κ s x.
struct HImage {
  ChainComplex complex;
  std::vector<AbHom> inclusions, retractions;
};
HImage h_functor_data(const AbOmegaGroupoid& g);
ChainComplex h_functor(const AbOmegaGroupoid& g);

// c → H K c, x ↦ (x, 0, …, 0).
ChainMap hk_unit(const ChainComplex& c, int level);
// K H g → g, (x_i, …, x_0) ↦ Σ κ(x_m).
std::vector<AbHom> kh_counit(const AbOmegaGroupoid& g);
// Levelwise maps commuting with s, t and κ.
std::vector<std::string> validate_ab_morphism(const AbOmegaGroupoid& a, const AbOmegaGroupoid& b, const std::vector<AbHom>& f);

// Cell budget for enumeration, from OGK_MAX_CELLS (default 20000).
std::size_t max_cells_from_env();

// Set-level tables of a finite groupoid. Cells are group elements in
// enumerator order, named by their coordinates. Throws SizeLimitExceeded
// when the cells exceed max_cells or the composable pairs exceed 200·max_cells.
TruncatedOmegaGpd materialize(const AbOmegaGroupoid& g, std::size_t max_cells, Exec exec = Exec::parallel);
OmegaMorphism materialize_map(const std::vector<AbHom>& f, std::shared_ptr<const TruncatedOmegaCat> source,
                              std::shared_ptr<const TruncatedOmegaCat> target);

// ∗ⁱ₀ = ∗ⁱ₁, commutativity and the unit law on a 1-reduced groupoid, i ≥ 2.
std::vector<Violation> check_eckmann_hilton(const TruncatedOmegaCat& g);

struct Abelianization {
  AbOmegaGroupoid groupoid;
  // Canonical coordinates of each cell; the cell map into materialize(groupoid)
  // is coords ↦ enumerator index.
  std::vector<std::vector<IntVector>> coords;
};
// InvalidInput if g is not 1-reduced, InvariantFailure if Eckmann-Hilton fails
// or a structure map is not a homomorphism.
Abelianization abelianize_one_reduced(const TruncatedOmegaCat& g);
// Cell map from g to materialize(a.groupoid).
std::vector<std::vector<CellId>> abelianization_cells(const Abelianization& a);

AbOmegaGroupoid em_groupoid(const FgAbGroup& a, int n, int level);
TruncatedOmegaGpd em_groupoid0(const std::vector<std::string>& objects, int level);
TruncatedOmegaGpd em_groupoid1(const FiniteGroup& g, int level);
// A level-L category seen at a higher level: every new cell is a unit.
TruncatedOmegaCat raise_level(const TruncatedOmegaCat& c, int level);
TruncatedOmegaGpd trivial_groupoid(int level);
// Levelwise cartesian product; `level` is used for the empty product.
TruncatedOmegaGpd product_groupoid(const std::vector<TruncatedOmegaGpd>& gs, int level);
AbOmegaGroupoid direct_sum_groupoid(const std::vector<AbOmegaGroupoid>& gs, int level);

struct Certificate {
  std::string kind;
  int degree = -1;
  bool ok = false;
  std::string detail;
};

struct DecompositionReport {
  int level = 0;
  std::string basepoint;
  std::shared_ptr<const TruncatedOmegaCat> input, one_reduced;
  AbOmegaGroupoid abelian;
  ChainComplex complex;
  std::map<int, FgAbGroup> homology;
  std::vector<std::pair<int, FgAbGroup>> factors;  // (n, πₙ), nontrivial only
  std::shared_ptr<const TruncatedOmegaGpd> product;
  std::vector<Certificate> certificates;
  bool ok = false;
  int failing_degree = -1;
};

// InvalidInput if g is not a simply connected groupoid.
DecompositionReport decompose_simply_connected(std::shared_ptr<const TruncatedOmegaCat> g, CellId x,
                                               std::size_t max_cells = max_cells_from_env());

// πₙ of the materialized K(c) at 0 against Hₙ(c); n = 0 compares π₀ with H₀.
bool pi_equals_homology_check(const ChainComplex& c, int n, std::size_t max_cells = max_cells_from_env());

} // namespace ogk
