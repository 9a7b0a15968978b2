#include "ogk/intlin.hpp"

#include "ogk/error.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace ogk {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::column(std::span<const Integer> v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> d, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size() && i < rows && i < cols; ++i) m(i, i) = d[i];
  return m;
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void IntMatrix::set_col(std::size_t c, std::span<const Integer> v) {
  if (v.size() != rows_) throw InvalidInput("IntMatrix::set_col: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

IntMatrix IntMatrix::col_range(std::size_t first, std::size_t last) const {
  IntMatrix m(rows_, last - first);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = first; c < last; ++c) m(r, c - first) = (*this)(r, c);
  return m;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t last) const {
  IntMatrix m(last - first, cols_);
  for (std::size_t r = first; r < last; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r - first, c) = (*this)(r, c);
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(idx[r], c);
  return m;
}

IntMatrix IntMatrix::select_cols(std::span<const std::size_t> idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = (*this)(r, idx[c]);
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product: dimension mismatch");
  IntMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> x) {
  if (a.cols() != x.size()) throw InvalidInput("matrix-vector product: dimension mismatch");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
  return y;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix sum: dimension mismatch");
  IntMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("matrix difference: dimension mismatch");
  IntMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) - b(i, j);
  return m;
}

IntMatrix operator*(const Integer& k, const IntMatrix& a) {
  IntMatrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) *= k;
  return m;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidInput("hstack: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw InvalidInput("vstack: column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) m(a.rows() + r, c) = b(r, c);
  }
  return m;
}

IntMatrix block_diagonal(std::span<const IntMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  IntMatrix m(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << m(r, c);
    }
    os << ']';
  }
  return os << ']';
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

namespace {

// Working state for the reduction: every row operation on `a` is mirrored on
// `u` (and inversely on `u_inv`), every column operation on `v`/`v_inv`.
struct SnfState {
  IntMatrix a, u, u_inv, v, v_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
  }
  // row dst += k row src
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
    u_inv.add_col_multiple(src, dst, -k);
  }
  // col dst += k col src
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
    v_inv.add_row_multiple(src, dst, -k);
  }

  // Move the nonzero entry of least absolute value in the trailing block
  // starting at (t, t) into position (t, t). False if the block is zero.
  bool bring_min_pivot(std::size_t t) {
    bool found = false;
    std::size_t br = t, bc = t;
    Integer best;
    for (std::size_t r = t; r < a.rows(); ++r)
      for (std::size_t c = t; c < a.cols(); ++c) {
        const Integer& x = a(r, c);
        if (x == 0) continue;
        if (!found || abs(x) < best) {
          best = abs(x);
          br = r;
          bc = c;
          found = true;
          if (best == 1) goto done;
        }
      }
  done:
    if (!found) return false;
    swap_rows(t, br);
    swap_cols(t, bc);
    return true;
  }

  // Same search restricted to row t and column t.
  void bring_min_from_cross(std::size_t t) {
    std::size_t br = t, bc = t;
    Integer best = abs(a(t, t));
    for (std::size_t r = t + 1; r < a.rows(); ++r)
      if (a(r, t) != 0 && abs(a(r, t)) < best) {
        best = abs(a(r, t));
        br = r;
        bc = t;
      }
    for (std::size_t c = t + 1; c < a.cols(); ++c)
      if (a(t, c) != 0 && abs(a(t, c)) < best) {
        best = abs(a(t, c));
        br = t;
        bc = c;
      }
    swap_rows(t, br);
    swap_cols(t, bc);
  }
};

} // namespace

SnfResult snf(const IntMatrix& input) {
  const std::size_t m = input.rows(), n = input.cols();
  SnfState st{input, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
              IntMatrix::identity(n)};
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    if (!st.bring_min_pivot(t)) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (st.a(r, t) == 0) continue;
        Integer q = st.a(r, t) / st.a(t, t);
        st.add_row(r, t, -q);
        if (st.a(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (st.a(t, c) == 0) continue;
        Integer q = st.a(t, c) / st.a(t, t);
        st.add_col(c, t, -q);
        if (st.a(t, c) != 0) dirty = true;
      }
      if (dirty) {
        st.bring_min_from_cross(t);
        continue;
      }
      // Pivot must divide the whole trailing block for the divisibility chain.
      bool fixed = false;
      for (std::size_t r = t + 1; r < m && !fixed; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (!mpz_divisible_p(st.a(r, c).get_mpz_t(), st.a(t, t).get_mpz_t())) {
            st.add_row(t, r, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (st.a(t, t) < 0) st.negate_row(t);
  }
  SnfResult res;
  res.rank = t;
  res.s = std::move(st.a);
  res.u = std::move(st.u);
  res.u_inv = std::move(st.u_inv);
  res.v = std::move(st.v);
  res.v_inv = std::move(st.v_inv);
  return res;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SnfResult f = snf(a);
  return f.v.col_range(f.rank, a.cols());
}

IntMatrix image_basis(const IntMatrix& a) {
  SnfResult f = snf(a);
  IntMatrix b = f.u_inv.col_range(0, f.rank);
  for (std::size_t c = 0; c < f.rank; ++c)
    for (std::size_t r = 0; r < b.rows(); ++r) b(r, c) *= f.s(c, c);
  return b;
}

std::size_t rank(const IntMatrix& a) { return snf(a).rank; }

LatticeSolver::LatticeSolver(const IntMatrix& a) : f_(snf(a)) {}

std::optional<IntVector> LatticeSolver::solve(std::span<const Integer> b) const {
  if (b.size() != f_.u.cols()) throw InvalidInput("solve: right-hand side has wrong length");
  IntVector y = f_.u * b;
  IntVector z(f_.v.rows());
  for (std::size_t p = 0; p < y.size(); ++p) {
    if (p < f_.rank) {
      const Integer& d = f_.s(p, p);
      if (!mpz_divisible_p(y[p].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      mpz_divexact(z[p].get_mpz_t(), y[p].get_mpz_t(), d.get_mpz_t());
    } else if (y[p] != 0) {
      return std::nullopt;
    }
  }
  return f_.v * std::span<const Integer>(z);
}

std::optional<IntVector> solve(const IntMatrix& a, std::span<const Integer> b) {
  if (a.rows() != b.size()) throw InvalidInput("solve: dimension mismatch");
  return LatticeSolver(a).solve(b);
}

} // namespace ogk
