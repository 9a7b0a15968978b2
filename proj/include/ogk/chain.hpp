#pragma once

// Bounded chain complexes of finitely generated abelian groups.

#include "ogk/fgab.hpp"

#include <map>
#include <string>
#include <vector>

namespace ogk {

struct ChainViolation {
  int degree = 0;
  std::string message;
};

/// C_k ← C_{k+1} ← ... ← C_N, all other degrees implicitly zero.
class ChainComplex {
public:
  ChainComplex() : ChainComplex(0, 0, {FgAbGroup{}}, {}) {}
  // `differentials[m]` is d_{lower + 1 + m} : C_{lower+1+m} → C_{lower+m}.
  ChainComplex(int lower, int upper, std::vector<FgAbGroup> components, std::vector<AbHom> differentials);

  static ChainComplex zero(int degree = 0) { return ChainComplex(degree, degree, {FgAbGroup{}}, {}); }

  int lower_bound() const { return lower_; }
  int upper_bound() const { return upper_; }
  // Trivial outside [lower, upper].
  const FgAbGroup& component(int i) const;
  // d_i : C_i → C_{i-1}; the zero map outside (lower, upper].
  AbHom differential(int i) const;

  bool all_free() const;
  bool all_finite() const;

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

private:
  int lower_ = 0, upper_ = 0;
  std::vector<FgAbGroup> components_;
  std::vector<AbHom> differentials_;
};

/// A degreewise family f_i : C_i → C'_i; missing degrees are zero maps.
struct ChainMap {
  ChainComplex source, target;
  std::map<int, AbHom> levels;

  AbHom level(int i) const;
  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);
};

// Empty iff d_{i-1} d_i = 0 in every degree.
std::vector<ChainViolation> validate(const ChainComplex& c);
// Type errors and failures of f_{i-1} d_i = d'_i f_i.
std::vector<ChainViolation> validate(const ChainMap& f);

/// Cycles and the quotient by boundaries in one degree.
struct HomologyData {
  Subgroup cycles;      // ker d_n ⊂ C_n
  Quotient classes;     // cycles / im d_{n+1}
  const FgAbGroup& group() const { return classes.group(); }
  // Homology class of a cycle given in C_n coordinates.
  IntVector class_of(std::span<const Integer> cycle) const;
  // A cycle (in C_n coordinates) representing a homology class.
  IntVector representative(std::span<const Integer> cls) const;
};

HomologyData homology_data(const ChainComplex& c, int n);
// ker d_n / im d_{n+1}; throws InvalidInput on an invalid complex.
FgAbGroup homology(const ChainComplex& c, int n);
std::map<int, FgAbGroup> homology_all(const ChainComplex& c);

// Degrees move up by one, differentials unchanged.
ChainComplex shift(const ChainComplex& c);

// ... → C_{k+1} → Ker d_k → 0
ChainComplex truncate_ge(const ChainComplex& c, int k);
// ... → C_{k+1} → C_k → Im d_k → 0
ChainComplex truncate_ge_tilde(const ChainComplex& c, int k);
// 0 → Coker d_{k+1} → C_{k-1} → ...
ChainComplex truncate_le(const ChainComplex& c, int k);
// The comparison map truncate_ge(c, k) → truncate_ge_tilde(c, k).
ChainMap truncation_comparison(const ChainComplex& c, int k);

ChainComplex em_complex(const FgAbGroup& a, int n);
ChainComplex direct_sum_complex(std::span<const ChainComplex> cs);
// Drops the lower degrees below k, which must carry trivial groups.
ChainComplex restrict_lower(const ChainComplex& c, int k);

// Map induced on H_n.
AbHom induced_map(const ChainMap& f, int n);
bool is_quasi_iso(const ChainMap& f);

struct ElementaryPiece {
  int degree = 0;     // lower degree of the piece
  Integer divisor;    // 0 for (0 → ℤ → 0) in `degree`, d for (ℤ -d→ ℤ) in degree+1, degree
};

struct DecompositionCertificate {
  std::vector<ElementaryPiece> pieces;
  bool quasi_iso = false;
  bool homology_equal = false;
  std::vector<std::string> notes;
};

struct HomologyDecomposition {
  ChainComplex reduced;   // zero differentials, H_n in degree n
  ChainMap map;           // c → reduced
  DecompositionCertificate report;
};

// Splits a free complex into elementary pieces and maps it onto its homology.
// Throws InvalidInput if some component has torsion.
HomologyDecomposition decompose_to_homology(const ChainComplex& c);

} // namespace ogk
