#pragma once

// Finitely generated abelian groups in invariant-factor form.
//
// Generator convention, used by every matrix in the library: the free
// generators come first, then one generator per invariant factor in
// increasing order. A group element is an integer vector in these
// coordinates; torsion coordinates are meaningful modulo their factor.

#include "ogk/intlin.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ogk {

class FgAbGroup {
public:
  FgAbGroup() = default;
  // Canonicalizes: factors equal to 1 are dropped, zeros become free rank,
  // the rest are rewritten into a divisibility chain.
  FgAbGroup(std::size_t free_rank, std::span<const Integer> orders);
  FgAbGroup(std::size_t free_rank, std::initializer_list<long> orders);

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, std::span<const Integer>{}); }
  static FgAbGroup cyclic(const Integer& order);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  std::size_t generator_count() const { return free_rank_ + torsion_.size(); }

  bool is_trivial() const { return generator_count() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_free() const { return torsion_.empty(); }
  // Product of the invariant factors; only meaningful for finite groups.
  Integer order() const;
  // Order of the i-th generator, 0 for free generators.
  Integer generator_order(std::size_t i) const;

  // Columns generate the relation lattice in ℤ^generator_count.
  IntMatrix relations() const;
  // Reduce torsion coordinates into [0, d).
  IntVector reduce(IntVector x) const;
  bool is_zero(std::span<const Integer> x) const;

  // "Z^r x Z/d1 x ... x Z/dk", "0" for the trivial group.
  std::string to_string() const;

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

// A homomorphism given on generators: column c is the image of source
// generator c, in target coordinates.
class AbHom {
public:
  AbHom() = default;
  // Validates that the matrix respects the source relations, then reduces.
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

  static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);
  static AbHom identity(const FgAbGroup& g);

  const FgAbGroup& source() const { return source_; }
  const FgAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector operator()(std::span<const Integer> x) const;

  bool is_zero() const { return matrix_.is_zero(); }

  friend bool operator==(const AbHom&, const AbHom&) = default;

private:
  FgAbGroup source_, target_;
  IntMatrix matrix_;
};

// g ∘ f
AbHom compose(const AbHom& g, const AbHom& f);
AbHom operator+(const AbHom& f, const AbHom& g);
AbHom operator-(const AbHom& f);
// Equality of the underlying maps (matrices may differ by target relations).
bool same_map(const AbHom& f, const AbHom& g);
// Checks that `matrix` defines a homomorphism between the given groups.
bool respects_relations(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& matrix);

/// Canonical form of ℤ^n / L together with the coordinate changes.
///
/// `to_canonical` maps ℤ^n onto the canonical generators (it kills L);
/// `from_canonical` lifts canonical generators back to ℤ^n. Their product
/// to_canonical * from_canonical is the identity on canonical coordinates.
struct Presentation {
  FgAbGroup group;
  IntMatrix to_canonical;
  IntMatrix from_canonical;
};

// `relations` is n × r; its columns generate L.
Presentation present(const IntMatrix& relations);

/// A subgroup of a canonical ambient group, itself in canonical form.
class Subgroup {
public:
  Subgroup() = default;
  // Subgroup generated by the columns of `gens` (ambient coordinates).
  Subgroup(const FgAbGroup& ambient, const IntMatrix& gens);

  const FgAbGroup& ambient() const { return ambient_; }
  const FgAbGroup& group() const { return pres_.group; }
  // Inclusion as a homomorphism group() → ambient().
  AbHom inclusion() const;
  bool contains(std::span<const Integer> x) const;
  // Canonical coordinates of an ambient element lying in the subgroup.
  IntVector coords(std::span<const Integer> x) const;
  // Corestriction of f to this subgroup (f must land inside it).
  AbHom corestrict(const AbHom& f) const;

private:
  FgAbGroup ambient_;
  IntMatrix basis_;   // lattice basis in ℤ^ambient.generator_count
  LatticeSolver solver_{IntMatrix()};
  Presentation pres_; // of the basis coordinates modulo ambient relations
};

/// A quotient of a canonical group, with the projection.
class Quotient {
public:
  Quotient() = default;
  // Quotient of `ambient` by the subgroup generated by the columns of `gens`.
  Quotient(const FgAbGroup& ambient, const IntMatrix& gens);

  const FgAbGroup& ambient() const { return ambient_; }
  const FgAbGroup& group() const { return pres_.group; }
  AbHom projection() const;
  // A section of the projection on generators (not a homomorphism in general).
  IntVector lift(std::span<const Integer> y) const;
  IntMatrix lift_matrix() const { return pres_.from_canonical; }

private:
  FgAbGroup ambient_;
  Presentation pres_;
};

Subgroup kernel(const AbHom& f);
Subgroup image(const AbHom& f);
Quotient cokernel(const AbHom& f);
bool is_injective(const AbHom& f);
bool is_surjective(const AbHom& f);
bool is_isomorphism(const AbHom& f);
// Inverse of an isomorphism.
AbHom inverse(const AbHom& f);

// Canonical form of ℤ^rows / column-lattice(presentation).
FgAbGroup cokernel(const IntMatrix& presentation);
bool is_isomorphic(const FgAbGroup& g, const FgAbGroup& h);

struct DirectSum {
  FgAbGroup group;
  std::vector<AbHom> injections;
  std::vector<AbHom> projections;
};
DirectSum direct_sum_maps(std::span<const FgAbGroup> gs);
FgAbGroup direct_sum(std::span<const FgAbGroup> gs);
FgAbGroup direct_sum(std::initializer_list<FgAbGroup> gs);

// ⟨kernel_gens⟩ / ⟨image_gens⟩ inside `ambient`; throws InvalidInput when the
// image is not contained in the kernel subgroup.
FgAbGroup subquotient(const IntMatrix& kernel_gens, const IntMatrix& image_gens, const FgAbGroup& ambient);

/// Dense enumeration of a finite canonical group. Elements are indexed in
/// mixed radix over the invariant factors, first factor fastest.
class FiniteAbEnumerator {
public:
  explicit FiniteAbEnumerator(const FgAbGroup& g);

  std::size_t size() const { return size_; }
  std::vector<std::int64_t> decode(std::size_t index) const;
  std::size_t encode(std::span<const std::int64_t> coords) const;
  std::size_t encode(std::span<const Integer> coords) const;
  IntVector element(std::size_t index) const;
  std::span<const std::int64_t> orders() const { return orders_; }

private:
  std::vector<std::int64_t> orders_;
  std::size_t size_ = 1;
};

/// A homomorphism between finite groups, precomputed for fast application
/// on enumerator indices.
class FiniteAbMap {
public:
  FiniteAbMap() = default;
  explicit FiniteAbMap(const AbHom& f);
  std::size_t operator()(std::size_t index) const;

private:
  FiniteAbEnumerator src_{FgAbGroup{}}, tgt_{FgAbGroup{}};
  std::vector<std::int64_t> matrix_; // reduced entries, row-major
  std::size_t rows_ = 0, cols_ = 0;
};

} // namespace ogk
