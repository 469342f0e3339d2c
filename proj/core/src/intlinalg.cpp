#include "sparsesolve/intlinalg.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

#include "sparsesolve/error.hpp"

namespace sparsesolve {

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) {
    throw LinalgError("integer does not fit in 64 bits: " + value.get_str());
  }
  return value.get_si();
}

LatticeMatrix::LatticeMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw LinalgError("lattice matrix dimensions must be positive");
  }
}

LatticeMatrix LatticeMatrix::identity(std::size_t n) {
  LatticeMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

LatticeMatrix LatticeMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows == 0 ? 0 : rows.begin()->size();
  LatticeMatrix m(nrows, ncols);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != ncols) throw LinalgError("ragged row list");
    std::size_t c = 0;
    for (long v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

LatticeMatrix LatticeMatrix::from_columns(std::size_t rows,
                                          std::span<const std::vector<std::int64_t>> columns) {
  LatticeMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw LinalgError("column has wrong length");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = static_cast<long>(columns[c][r]);
  }
  return m;
}

bool LatticeMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

bool LatticeMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

LatticeMatrix LatticeMatrix::transpose() const {
  LatticeMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

LatticeMatrix LatticeMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                   std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw LinalgError("block out of range");
  LatticeMatrix b(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c) b(r, c) = (*this)(row0 + r, col0 + c);
  return b;
}

std::vector<std::int64_t> LatticeMatrix::column_i64(std::size_t c) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = to_int64((*this)(r, c));
  return out;
}

std::vector<std::int64_t> LatticeMatrix::apply(std::span<const std::int64_t> v) const {
  if (v.size() != cols_) throw LinalgError("dimension mismatch in matrix-vector product");
  std::vector<std::int64_t> out(rows_);
  Integer acc;
  for (std::size_t r = 0; r < rows_; ++r) {
    acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * static_cast<long>(v[c]);
    out[r] = to_int64(acc);
  }
  return out;
}

void LatticeMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void LatticeMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void LatticeMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void LatticeMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void LatticeMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void LatticeMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

LatticeMatrix operator*(const LatticeMatrix& a, const LatticeMatrix& b) {
  if (a.cols_ != b.rows_) throw LinalgError("dimension mismatch in matrix product");
  LatticeMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& ark = a(r, k);
      if (ark == 0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

bool operator==(const LatticeMatrix& a, const LatticeMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::ostream& operator<<(std::ostream& os, const LatticeMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

namespace {

// Working state for the Smith reduction: the invariant original = P * M * Q
// holds after every elementary operation.
struct SmithState {
  LatticeMatrix P;
  LatticeMatrix M;
  LatticeMatrix Q;

  void swap_rows(std::size_t a, std::size_t b) {
    M.swap_rows(a, b);
    P.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    M.swap_cols(a, b);
    Q.swap_rows(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    M.add_row_multiple(dst, src, f);
    P.add_col_multiple(src, dst, -f);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    M.add_col_multiple(dst, src, f);
    Q.add_row_multiple(src, dst, -f);
  }
  void negate_row(std::size_t r) {
    M.negate_row(r);
    P.negate_col(r);
  }
};

}  // namespace

SmithForm smith_normal_form(const LatticeMatrix& a) {
  if (a.empty() || a.is_zero()) throw LinalgError("Smith normal form of a zero matrix");

  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  SmithState s{LatticeMatrix::identity(n), a, LatticeMatrix::identity(m)};
  LatticeMatrix& M = s.M;
  std::vector<Integer> factors;

  Integer q;
  for (std::size_t t = 0; t < std::min(n, m); ++t) {
    // Global pivot: smallest nonzero entry of the trailing block.
    std::size_t pi = n, pj = m;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < m; ++j)
        if (M(i, j) != 0 && (pi == n || abs(M(i, j)) < abs(M(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == n) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);

    while (true) {
      // Smallest nonzero in row t / column t becomes the pivot.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < n; ++i)
        if (M(i, t) != 0 && abs(M(i, t)) < abs(M(bi, bj))) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < m; ++j)
        if (M(t, j) != 0 && abs(M(t, j)) < abs(M(bi, bj))) {
          bi = t;
          bj = j;
        }
      s.swap_rows(t, bi);
      s.swap_cols(t, bj);

      for (std::size_t i = t + 1; i < n; ++i) {
        if (M(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), M(i, t).get_mpz_t(), M(t, t).get_mpz_t());
        s.add_row(i, t, -q);
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (M(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), M(t, j).get_mpz_t(), M(t, t).get_mpz_t());
        s.add_col(j, t, -q);
      }

      bool cleared = true;
      for (std::size_t i = t + 1; i < n && cleared; ++i) cleared = M(i, t) == 0;
      for (std::size_t j = t + 1; j < m && cleared; ++j) cleared = M(t, j) == 0;
      if (!cleared) continue;

      // Divisibility: fold an offending row into row t and reduce again.
      std::size_t bad_row = n;
      for (std::size_t i = t + 1; i < n && bad_row == n; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (!mpz_divisible_p(M(i, j).get_mpz_t(), M(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == n) break;
      s.add_row(t, bad_row, 1);
    }

    if (M(t, t) < 0) s.negate_row(t);
    factors.push_back(M(t, t));
  }

  return SmithForm{std::move(s.P), std::move(s.M), std::move(s.Q), std::move(factors)};
}

Integer determinant(const LatticeMatrix& a) {
  if (a.rows() != a.cols()) throw LinalgError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  LatticeMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j));
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const LatticeMatrix& a) {
  if (a.empty()) return 0;
  LatticeMatrix m = a;
  const std::size_t n = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) continue;
    m.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(i, j) = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

LatticeMatrix unimodular_inverse(const LatticeMatrix& u) {
  if (u.empty() || u.rows() != u.cols()) throw LinalgError("unimodular inverse needs a square matrix");
  const Integer det = determinant(u);
  if (abs(det) != 1) throw LinalgError("matrix is not unimodular (det = " + det.get_str() + ")");

  // Gauss-Jordan over the rationals; the result is integral because det = +-1.
  const std::size_t n = u.rows();
  std::vector<mpq_class> w(n * 2 * n);
  auto at = [&](std::size_t r, std::size_t c) -> mpq_class& { return w[r * 2 * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = u(r, c);
    at(r, n + r) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (at(piv, c) == 0) ++piv;
    if (piv != c)
      for (std::size_t k = 0; k < 2 * n; ++k) std::swap(at(c, k), at(piv, k));
    const mpq_class inv = 1 / at(c, c);
    for (std::size_t k = 0; k < 2 * n; ++k) at(c, k) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || at(r, c) == 0) continue;
      const mpq_class f = at(r, c);
      for (std::size_t k = 0; k < 2 * n; ++k) at(r, k) -= f * at(c, k);
    }
  }
  LatticeMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const mpq_class& v = at(r, n + c);
      if (v.get_den() != 1) throw LinalgError("non-integral inverse entry");
      inv(r, c) = v.get_num();
    }
  return inv;
}

std::optional<Integer> lattice_index(const LatticeMatrix& a) {
  if (a.empty() || a.is_zero()) return std::nullopt;
  const SmithForm snf = smith_normal_form(a);
  if (snf.rank() < a.rows()) return std::nullopt;
  Integer index = 1;
  for (const Integer& d : snf.invariant_factors) index *= d;
  return index;
}

LatticeMatrix lll_reduce(const LatticeMatrix& basis) {
  if (basis.empty()) throw LinalgError("lll_reduce: empty matrix");
  if (rank(basis) < basis.cols()) throw LinalgError("lll_reduce: columns are dependent");
  const std::size_t m = basis.rows(), k = basis.cols();
  std::vector<std::vector<mpz_class>> b(k, std::vector<mpz_class>(m));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < m; ++r) b[c][r] = basis(r, c);

  auto dot = [m](const auto& x, const auto& y) {
    mpq_class s = 0;
    for (std::size_t r = 0; r < m; ++r) s += mpq_class(x[r]) * mpq_class(y[r]);
    return s;
  };
  // Exact Gram-Schmidt, recomputed after every change; k is small.
  std::vector<std::vector<mpq_class>> star(k, std::vector<mpq_class>(m));
  std::vector<std::vector<mpq_class>> mu(k, std::vector<mpq_class>(k));
  std::vector<mpq_class> norm(k);
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t r = 0; r < m; ++r) star[i][r] = b[i][r];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], star[j]) / norm[j];
        for (std::size_t r = 0; r < m; ++r) star[i][r] -= mu[i][j] * star[j][r];
      }
      norm[i] = dot(star[i], star[i]);
    }
  };
  auto nearest = [](const mpq_class& q) {
    mpz_class f;
    const mpq_class h = q + mpq_class(1, 2);
    mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return f;
  };

  gram_schmidt();
  const mpq_class delta(3, 4);
  std::size_t i = 1;
  while (i < k) {
    for (std::size_t j = i; j-- > 0;) {
      const mpz_class q = nearest(mu[i][j]);
      if (q == 0) continue;
      for (std::size_t r = 0; r < m; ++r) b[i][r] -= q * b[j][r];
      gram_schmidt();
    }
    if (norm[i] >= (delta - mu[i][i - 1] * mu[i][i - 1]) * norm[i - 1]) {
      ++i;
    } else {
      std::swap(b[i], b[i - 1]);
      gram_schmidt();
      i = std::max<std::size_t>(i - 1, 1);
    }
  }

  // Canonical form: shortest first (ties lexicographically descending), first nonzero entry positive.
  for (auto& v : b) {
    const auto nz = std::find_if(v.begin(), v.end(), [](const mpz_class& x) { return x != 0; });
    if (nz != v.end() && *nz < 0)
      for (auto& x : v) x = -x;
  }
  std::stable_sort(b.begin(), b.end(), [&](const auto& x, const auto& y) {
    const mpq_class nx = dot(x, x), ny = dot(y, y);
    if (nx != ny) return nx < ny;
    return x > y;
  });
  LatticeMatrix out(m, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < m; ++r) out(r, c) = b[c][r];
  return out;
}

}  // namespace sparsesolve
