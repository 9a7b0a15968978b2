#pragma once

// Exact integer linear algebra over arbitrary-precision integers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ogk {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix column(std::span<const Integer> v);
  static IntMatrix diagonal(std::span<const Integer> d, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector col(std::size_t c) const;
  IntVector row(std::size_t r) const;
  void set_col(std::size_t c, std::span<const Integer> v);

  // Column range [first, last).
  IntMatrix col_range(std::size_t first, std::size_t last) const;
  IntMatrix row_range(std::size_t first, std::size_t last) const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  IntMatrix select_cols(std::span<const std::size_t> idx) const;

  IntMatrix transpose() const;
  bool is_zero() const;

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k); // row dst += k * row src
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k); // col dst += k * col src

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, std::span<const Integer> x);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& k, const IntMatrix& a);

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
// Block diagonal; empty blocks still contribute their (possibly zero) dimensions.
IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::string to_string(const IntMatrix& m);

// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

/// Smith normal form u * a * v = s.
///
/// `u` and `v` are unimodular; the diagonal of `s` is nonnegative, each
/// entry divides the next, and zeros come last. `u_inv` and `v_inv` are the
/// exact inverses, accumulated alongside so callers never have to invert.
struct SnfResult {
  IntMatrix u, s, v;
  IntMatrix u_inv, v_inv;
  std::size_t rank = 0;

  Integer diag(std::size_t i) const { return s(i, i); }
};

// Kronecker-style reduction pivoting on the entry of least absolute value.
SnfResult snf(const IntMatrix& a);

// Columns form a basis of {x : a x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

// Columns form a basis of the lattice spanned by the columns of a.
IntMatrix image_basis(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

// Some integer x with a x = b, if one exists.
std::optional<IntVector> solve(const IntMatrix& a, std::span<const Integer> b);

// Solver for a fixed matrix; amortizes the normal form over many right-hand sides.
class LatticeSolver {
public:
  explicit LatticeSolver(const IntMatrix& a);
  std::optional<IntVector> solve(std::span<const Integer> b) const;
  std::size_t rows() const { return f_.u.cols(); }
  std::size_t cols() const { return f_.v.rows(); }

private:
  SnfResult f_;
};

// Floor-style remainder into [0, |m|).
Integer mod_floor(const Integer& a, const Integer& m);

} // namespace ogk
