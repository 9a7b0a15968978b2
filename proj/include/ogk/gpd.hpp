#pragma once

// Finite truncated strict ∞-categories and ∞-groupoids given by explicit tables.
//
// Cells are numbered 0..count-1 in each dimension and carry a name unique in
// that dimension. A category of level N stands for the ∞-category whose cells
// above N are all iterated units.

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ogk {

using CellId = std::uint32_t;
inline constexpr CellId kNoCell = std::numeric_limits<CellId>::max();

enum class Exec { serial, parallel };

struct Violation {
  std::string axiom;
  int i = -1, j = -1, k = -1;
  std::string detail;

  auto operator<=>(const Violation&) const = default;
};

struct TruncatedGlobularSet {
  int level = 0;
  std::vector<std::vector<std::string>> names;  // names[d] for d = 0..level
  std::vector<std::vector<CellId>> src, tgt;    // src[d], tgt[d] for d ≥ 1; src[0], tgt[0] unused

  explicit TruncatedGlobularSet(int level = 0);
  std::size_t count(int d) const { return names[static_cast<std::size_t>(d)].size(); }
  CellId add(int d, std::string name, CellId s = kNoCell, CellId t = kNoCell);
};

// Range errors and the relations s s = s t, t s = t t.
std::vector<Violation> validate_globular(const TruncatedGlobularSet& g);

class TruncatedOmegaCat {
public:
  TruncatedOmegaCat() : TruncatedOmegaCat(TruncatedGlobularSet(0), {}) {}
  // Requires a globular carrier; composition tables start out empty.
  // `units[i][u]` is κ_i(u) for 0 ≤ i < level.
  TruncatedOmegaCat(TruncatedGlobularSet carrier, std::vector<std::vector<CellId>> units);
  virtual ~TruncatedOmegaCat() = default;
  TruncatedOmegaCat(const TruncatedOmegaCat&) = default;
  TruncatedOmegaCat& operator=(const TruncatedOmegaCat&) = default;
  TruncatedOmegaCat(TruncatedOmegaCat&&) = default;
  TruncatedOmegaCat& operator=(TruncatedOmegaCat&&) = default;

  int level() const { return carrier_.level; }
  const TruncatedGlobularSet& carrier() const { return carrier_; }
  std::size_t count(int d) const { return carrier_.count(d); }
  const std::string& name(int d, CellId u) const { return carrier_.names[static_cast<std::size_t>(d)][u]; }
  std::optional<CellId> find(int d, std::string_view name) const;
  CellId lookup(int d, std::string_view name) const;  // throws InvalidInput

  // σ and τ of an i-cell, i ≥ 1.
  CellId src(int i, CellId u) const { return carrier_.src[static_cast<std::size_t>(i)][u]; }
  CellId tgt(int i, CellId u) const { return carrier_.tgt[static_cast<std::size_t>(i)][u]; }
  // Iterated boundaries sⁱⱼ, tⁱⱼ of an i-cell; the cell itself when j = i.
  CellId src(int i, int j, CellId u) const;
  CellId tgt(int i, int j, CellId u) const;
  // κ_i : X_i → X_{i+1} for i < level.
  CellId unit(int i, CellId u) const { return units_[static_cast<std::size_t>(i)][u]; }
  // κⁱⱼ : X_j → X_i, iterated units.
  CellId unit(int i, int j, CellId x) const;

  bool composable(int i, int j, CellId v, CellId u) const { return src(i, j, v) == tgt(i, j, u); }
  // v ∗ⁱⱼ u, or kNoCell when the pair is not composable or the entry is missing.
  CellId compose(int i, int j, CellId v, CellId u) const;
  // Throws InvalidInput for non-composable pairs.
  void set_composition(int i, int j, CellId v, CellId u, CellId result);
  void set_unit(int i, CellId u, CellId result);

  // i-cells with a given j-source (resp. j-target), in increasing order.
  std::span<const CellId> with_src(int i, int j, CellId x) const;
  std::span<const CellId> with_tgt(int i, int j, CellId x) const;
  // Results of v ∗ⁱⱼ u for u running over with_tgt(i, j, src(i, j, v)).
  std::span<CellId> row(int i, int j, CellId v);
  std::span<const CellId> row(int i, int j, CellId v) const;
  std::size_t composable_pairs(int i, int j) const;
  std::size_t composable_pairs() const;

  // Copies with a single entry changed.
  TruncatedOmegaCat with_composition(int i, int j, CellId v, CellId u, CellId result) const;
  TruncatedOmegaCat with_unit(int i, CellId u, CellId result) const;

  friend bool operator==(const TruncatedOmegaCat& a, const TruncatedOmegaCat& b);

  // Position of the table for (i, j) among all composition tables.
  static std::size_t slot(int i, int j) { return static_cast<std::size_t>(i * (i - 1) / 2 + j); }

private:
  struct Index {
    std::vector<std::size_t> src_off, tgt_off;  // CSR offsets over X_j
    std::vector<CellId> src_ids, tgt_ids;
    std::vector<CellId> s, t;                   // iterated boundaries of each i-cell
    std::vector<std::uint32_t> tgt_pos;         // position of u inside its with_tgt list
    std::vector<std::size_t> row_base;          // start of v's row in `results`
    std::vector<CellId> results;
  };
  const Index& index(int i, int j) const { return tables_[slot(i, j)]; }
  void check_cell(int d, CellId u, const char* what) const;

  TruncatedGlobularSet carrier_;
  std::vector<std::vector<CellId>> units_;
  std::vector<std::unordered_map<std::string, CellId>> by_name_;
  std::vector<Index> tables_;
};

// Exhaustive check of the boundary, associativity, exchange, unit and
// unit-functoriality axioms. Violations come back sorted.
std::vector<Violation> validate_category(const TruncatedOmegaCat& c, Exec exec = Exec::parallel);

// The unique ∗ⁱⱼ-inverse of u, if any; InvariantFailure if two distinct ones exist.
std::optional<CellId> find_inverse(const TruncatedOmegaCat& c, CellId u, int i, int j);

struct GroupoidCheck {
  bool ok = false;
  // inverses[i][u] is the ∗ⁱ_{i-1}-inverse of u, kNoCell when absent; inverses[0] unused.
  std::vector<std::vector<CellId>> inverses;
  std::vector<Violation> missing;
};
GroupoidCheck is_groupoid(const TruncatedOmegaCat& c, Exec exec = Exec::parallel);

enum class InverseCondition { all_pairs, adjacent, to_objects, some_j };
bool has_inverses(const TruncatedOmegaCat& c, InverseCondition which, Exec exec = Exec::parallel);

class TruncatedOmegaGpd : public TruncatedOmegaCat {
public:
  TruncatedOmegaGpd() = default;
  // Searches every ∗ⁱⱼ-inverse; throws InvalidInput if one is missing.
  explicit TruncatedOmegaGpd(TruncatedOmegaCat c, Exec exec = Exec::parallel);
  // Supplied tables, inverses[slot] per pair (i, j) in the order of the
  // composition tables; each entry is checked against the inverse equations.
  TruncatedOmegaGpd(TruncatedOmegaCat c, std::vector<std::vector<CellId>> inverses);

  CellId inverse(int i, int j, CellId u) const;
  const std::vector<std::vector<CellId>>& inverse_tables() const { return inverses_; }

private:
  std::vector<std::vector<CellId>> inverses_;
};

// Checks that `w` is the ∗ⁱⱼ-inverse of u.
bool is_inverse(const TruncatedOmegaCat& c, int i, int j, CellId u, CellId w);

// κ(v⁻¹) ∗²₀ (α⁻¹ ∗²₀ κ(u⁻¹)) for α : u ⇒ v, asserted to be the ∗²₀-inverse of α.
CellId horizontal_inverse_from_vertical(const TruncatedOmegaCat& c, CellId alpha, CellId vertical_inverse);

// Per level, whether each cell is weakly invertible; level 0 is all true.
std::vector<std::vector<bool>> weakly_invertible_cells(const TruncatedOmegaCat& c);
bool is_quasi_strict_groupoid(const TruncatedOmegaCat& c);

struct OmegaMorphism {
  std::shared_ptr<const TruncatedOmegaCat> source, target;
  std::vector<std::vector<CellId>> levels;  // levels[d][u] = f(u)

  static OmegaMorphism identity(std::shared_ptr<const TruncatedOmegaCat> c);
  CellId operator()(int d, CellId u) const { return levels[static_cast<std::size_t>(d)][u]; }
};

std::vector<Violation> validate_morphism(const OmegaMorphism& f);

} // namespace ogk
