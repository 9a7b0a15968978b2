#include "ogk/fgab.hpp"

#include "ogk/error.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ogk {

namespace {

std::vector<Integer> invariant_factors(std::span<const Integer> orders, std::size_t& free_rank) {
  std::vector<Integer> nonzero;
  for (const Integer& d : orders) {
    if (d == 0)
      ++free_rank;
    else if (abs(d) != 1)
      nonzero.push_back(abs(d));
  }
  if (nonzero.empty()) return {};
  bool chain = true;
  for (std::size_t i = 1; i < nonzero.size() && chain; ++i)
    chain = mpz_divisible_p(nonzero[i].get_mpz_t(), nonzero[i - 1].get_mpz_t()) != 0;
  if (chain) return nonzero;
  SnfResult f = snf(IntMatrix::diagonal(nonzero, nonzero.size(), nonzero.size()));
  std::vector<Integer> out;
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.s(i, i) != 1) out.push_back(f.s(i, i));
  return out;
}

} // namespace

FgAbGroup::FgAbGroup(std::size_t free_rank, std::span<const Integer> orders) : free_rank_(free_rank) {
  torsion_ = invariant_factors(orders, free_rank_);
}

FgAbGroup::FgAbGroup(std::size_t free_rank, std::initializer_list<long> orders) : free_rank_(free_rank) {
  std::vector<Integer> v(orders.begin(), orders.end());
  torsion_ = invariant_factors(v, free_rank_);
}

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
  Integer o = order;
  return FgAbGroup(0, std::span<const Integer>(&o, 1));
}

Integer FgAbGroup::order() const {
  if (free_rank_ > 0) throw Unsupported("order of an infinite group");
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

Integer FgAbGroup::generator_order(std::size_t i) const {
  return i < free_rank_ ? Integer(0) : torsion_[i - free_rank_];
}

IntMatrix FgAbGroup::relations() const {
  IntMatrix r(generator_count(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) r(free_rank_ + i, i) = torsion_[i];
  return r;
}

IntVector FgAbGroup::reduce(IntVector x) const {
  if (x.size() != generator_count()) throw InvalidInput("element has wrong number of coordinates for " + to_string());
  for (std::size_t i = 0; i < torsion_.size(); ++i) x[free_rank_ + i] = mod_floor(x[free_rank_ + i], torsion_[i]);
  return x;
}

bool FgAbGroup::is_zero(std::span<const Integer> x) const {
  if (x.size() != generator_count()) throw InvalidInput("element has wrong number of coordinates for " + to_string());
  for (std::size_t i = 0; i < free_rank_; ++i)
    if (x[i] != 0) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    if (!mpz_divisible_p(x[free_rank_ + i].get_mpz_t(), torsion_[i].get_mpz_t())) return false;
  return true;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ == 1) {
    os << "Z";
    first = false;
  } else if (free_rank_ > 1) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    if (!first) os << " x ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

bool respects_relations(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& matrix) {
  if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count()) return false;
  for (std::size_t c = source.free_rank(); c < source.generator_count(); ++c) {
    IntVector col = matrix.col(c);
    for (auto& x : col) x *= source.generator_order(c);
    if (!target.is_zero(col)) return false;
  }
  return true;
}

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
    throw InvalidInput("AbHom: matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                       ", expected " + std::to_string(target_.generator_count()) + "x" +
                       std::to_string(source_.generator_count()));
  if (!respects_relations(source_, target_, matrix_))
    throw InvalidInput("AbHom: matrix does not respect the relations of " + source_.to_string());
  for (std::size_t c = 0; c < matrix_.cols(); ++c) matrix_.set_col(c, target_.reduce(matrix_.col(c)));
}

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return AbHom(source, target, IntMatrix(target.generator_count(), source.generator_count()));
}

AbHom AbHom::identity(const FgAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.generator_count())); }

IntVector AbHom::operator()(std::span<const Integer> x) const { return target_.reduce(matrix_ * x); }

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(f.target() == g.source())) throw InvalidInput("compose: target/source mismatch");
  return AbHom(f.source(), g.target(), g.matrix() * f.matrix());
}

AbHom operator+(const AbHom& f, const AbHom& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw InvalidInput("AbHom sum: type mismatch");
  return AbHom(f.source(), f.target(), f.matrix() + g.matrix());
}

AbHom operator-(const AbHom& f) { return AbHom(f.source(), f.target(), Integer(-1) * f.matrix()); }

bool same_map(const AbHom& f, const AbHom& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) return false;
  IntMatrix d = f.matrix() - g.matrix();
  for (std::size_t c = 0; c < d.cols(); ++c)
    if (!f.target().is_zero(d.col(c))) return false;
  return true;
}

Presentation present(const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  SnfResult f = snf(relations);
  std::vector<std::size_t> order;
  for (std::size_t p = f.rank; p < n; ++p) order.push_back(p);
  std::vector<Integer> torsion;
  for (std::size_t p = 0; p < f.rank; ++p)
    if (f.s(p, p) != 1) {
      order.push_back(p);
      torsion.push_back(f.s(p, p));
    }
  Presentation out;
  out.group = FgAbGroup(n - f.rank, torsion);
  out.to_canonical = f.u.select_rows(order);
  out.from_canonical = f.u_inv.select_cols(order);
  return out;
}

Subgroup::Subgroup(const FgAbGroup& ambient, const IntMatrix& gens) : ambient_(ambient) {
  if (gens.rows() != ambient.generator_count()) throw InvalidInput("Subgroup: generator length mismatch");
  IntMatrix rel = ambient.relations();
  basis_ = image_basis(hstack(gens, rel));
  solver_ = LatticeSolver(basis_);
  IntMatrix rel_coords(basis_.cols(), rel.cols());
  for (std::size_t c = 0; c < rel.cols(); ++c) {
    auto z = solver_.solve(rel.col(c));
    if (!z) throw InvariantFailure("Subgroup: relation outside its own lattice");
    rel_coords.set_col(c, *z);
  }
  pres_ = present(rel_coords);
}

AbHom Subgroup::inclusion() const { return AbHom(group(), ambient_, basis_ * pres_.from_canonical); }

bool Subgroup::contains(std::span<const Integer> x) const { return solver_.solve(x).has_value(); }

IntVector Subgroup::coords(std::span<const Integer> x) const {
  auto z = solver_.solve(x);
  if (!z) throw InvalidInput("Subgroup::coords: element not in subgroup");
  return group().reduce(pres_.to_canonical * std::span<const Integer>(*z));
}

AbHom Subgroup::corestrict(const AbHom& f) const {
  if (!(f.target() == ambient_)) throw InvalidInput("corestrict: target mismatch");
  IntMatrix m(group().generator_count(), f.source().generator_count());
  for (std::size_t c = 0; c < m.cols(); ++c) m.set_col(c, coords(f.matrix().col(c)));
  return AbHom(f.source(), group(), std::move(m));
}

Quotient::Quotient(const FgAbGroup& ambient, const IntMatrix& gens) : ambient_(ambient) {
  if (gens.rows() != ambient.generator_count()) throw InvalidInput("Quotient: generator length mismatch");
  pres_ = present(hstack(gens, ambient.relations()));
}

AbHom Quotient::projection() const { return AbHom(ambient_, group(), pres_.to_canonical); }

IntVector Quotient::lift(std::span<const Integer> y) const {
  return ambient_.reduce(pres_.from_canonical * y);
}

Subgroup kernel(const AbHom& f) {
  const std::size_t n = f.source().generator_count();
  IntMatrix k = kernel_basis(hstack(f.matrix(), f.target().relations()));
  return Subgroup(f.source(), k.row_range(0, n));
}

Subgroup image(const AbHom& f) { return Subgroup(f.target(), f.matrix()); }

Quotient cokernel(const AbHom& f) { return Quotient(f.target(), f.matrix()); }

bool is_injective(const AbHom& f) { return kernel(f).group().is_trivial(); }
bool is_surjective(const AbHom& f) { return cokernel(f).group().is_trivial(); }
bool is_isomorphism(const AbHom& f) { return is_injective(f) && is_surjective(f); }

AbHom inverse(const AbHom& f) {
  if (!is_isomorphism(f)) throw InvalidInput("inverse: not an isomorphism");
  const std::size_t n = f.source().generator_count(), m = f.target().generator_count();
  LatticeSolver solver(hstack(f.matrix(), f.target().relations()));
  IntMatrix inv(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    IntVector e(m);
    e[c] = 1;
    auto x = solver.solve(e);
    if (!x) throw InvariantFailure("inverse: generator has no preimage");
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = (*x)[r];
  }
  return AbHom(f.target(), f.source(), std::move(inv));
}

FgAbGroup cokernel(const IntMatrix& presentation) { return present(presentation).group; }

bool is_isomorphic(const FgAbGroup& g, const FgAbGroup& h) { return g == h; }

DirectSum direct_sum_maps(std::span<const FgAbGroup> gs) {
  std::vector<IntMatrix> rels;
  for (const auto& g : gs) rels.push_back(g.relations());
  Presentation p = present(block_diagonal(rels));
  DirectSum out;
  out.group = p.group;
  std::size_t offset = 0;
  for (const auto& g : gs) {
    const std::size_t n = g.generator_count();
    out.injections.emplace_back(g, p.group, p.to_canonical.col_range(offset, offset + n));
    out.projections.emplace_back(p.group, g, p.from_canonical.row_range(offset, offset + n));
    offset += n;
  }
  return out;
}

FgAbGroup direct_sum(std::span<const FgAbGroup> gs) {
  std::size_t free = 0;
  std::vector<Integer> orders;
  for (const auto& g : gs) {
    free += g.free_rank();
    orders.insert(orders.end(), g.torsion().begin(), g.torsion().end());
  }
  return FgAbGroup(free, orders);
}

FgAbGroup direct_sum(std::initializer_list<FgAbGroup> gs) {
  return direct_sum(std::span<const FgAbGroup>(gs.begin(), gs.size()));
}

FgAbGroup subquotient(const IntMatrix& kernel_gens, const IntMatrix& image_gens, const FgAbGroup& ambient) {
  Subgroup k(ambient, kernel_gens);
  if (image_gens.rows() != ambient.generator_count()) throw InvalidInput("subquotient: image generator length mismatch");
  IntMatrix coords(k.group().generator_count(), image_gens.cols());
  for (std::size_t c = 0; c < image_gens.cols(); ++c) {
    IntVector y = image_gens.col(c);
    if (!k.contains(y)) throw InvalidInput("subquotient: image generator " + std::to_string(c) + " not in kernel subgroup");
    coords.set_col(c, k.coords(y));
  }
  return Quotient(k.group(), coords).group();
}

FiniteAbEnumerator::FiniteAbEnumerator(const FgAbGroup& g) {
  if (!g.is_finite()) throw Unsupported("enumeration of infinite group " + g.to_string());
  for (const auto& d : g.torsion()) {
    if (!d.fits_slong_p() || d > std::numeric_limits<std::int32_t>::max())
      throw SizeLimitExceeded("invariant factor too large to enumerate: " + d.get_str());
    orders_.push_back(d.get_si());
    if (size_ > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(orders_.back()))
      throw SizeLimitExceeded("group too large to enumerate: " + g.to_string());
    size_ *= static_cast<std::size_t>(orders_.back());
  }
}

std::vector<std::int64_t> FiniteAbEnumerator::decode(std::size_t index) const {
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    c[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(orders_[i]));
    index /= static_cast<std::size_t>(orders_[i]);
  }
  return c;
}

std::size_t FiniteAbEnumerator::encode(std::span<const std::int64_t> coords) const {
  std::size_t index = 0;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    std::int64_t x = coords[i] % orders_[i];
    if (x < 0) x += orders_[i];
    index = index * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(x);
  }
  return index;
}

std::size_t FiniteAbEnumerator::encode(std::span<const Integer> coords) const {
  std::vector<std::int64_t> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) c[i] = mod_floor(coords[i], orders_[i]).get_si();
  return encode(c);
}

IntVector FiniteAbEnumerator::element(std::size_t index) const {
  auto c = decode(index);
  return IntVector(c.begin(), c.end());
}

FiniteAbMap::FiniteAbMap(const AbHom& f) : src_(f.source()), tgt_(f.target()) {
  rows_ = f.matrix().rows();
  cols_ = f.matrix().cols();
  matrix_.resize(rows_ * cols_);
  auto orders = tgt_.orders();
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) matrix_[r * cols_ + c] = mod_floor(f.matrix()(r, c), orders[r]).get_si();
}

std::size_t FiniteAbMap::operator()(std::size_t index) const {
  auto x = src_.decode(index);
  auto orders = tgt_.orders();
  std::vector<std::int64_t> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = (acc + matrix_[r * cols_ + c] * x[c]) % orders[r];
    y[r] = acc;
  }
  return tgt_.encode(y);
}

} // namespace ogk
