#pragma once

// Exact integer matrices and the Smith normal form.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace sparsesolve {

using Integer = mpz_class;

/// Converts to int64, throwing LinalgError when the value does not fit.
std::int64_t to_int64(const Integer& value);

/// Dense integer matrix with arbitrary precision entries, stored row-major.
class LatticeMatrix {
 public:
  /// Empty 0x0 placeholder; every other constructor requires positive dims.
  LatticeMatrix() = default;
  LatticeMatrix(std::size_t rows, std::size_t cols);

  static LatticeMatrix identity(std::size_t n);
  static LatticeMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  /// Each element of `columns` becomes one column; all must have length `rows`.
  static LatticeMatrix from_columns(std::size_t rows,
                                    std::span<const std::vector<std::int64_t>> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_identity() const;

  LatticeMatrix transpose() const;
  LatticeMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                      std::size_t ncols) const;
  /// Column c as an int64 vector (checked).
  std::vector<std::int64_t> column_i64(std::size_t c) const;
  /// Matrix-vector product with an int64 vector, result checked into int64.
  std::vector<std::int64_t> apply(std::span<const std::int64_t> v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend LatticeMatrix operator*(const LatticeMatrix& a, const LatticeMatrix& b);
  friend bool operator==(const LatticeMatrix& a, const LatticeMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const LatticeMatrix& m);

/// A = P * D * Q with P, Q unimodular and D diagonal with d_1 | d_2 | ... | d_k.
struct SmithForm {
  LatticeMatrix P;
  LatticeMatrix D;
  LatticeMatrix Q;
  std::vector<Integer> invariant_factors;

  std::size_t rank() const { return invariant_factors.size(); }
};

/// Smith normal form by pivoting on the entry of least absolute value.
/// P and Q are accumulated from the elementary operations applied.
/// Throws LinalgError for the zero matrix.
SmithForm smith_normal_form(const LatticeMatrix& a);

/// Exact inverse of a unimodular matrix; throws LinalgError if `u` is not
/// square or |det u| != 1.
LatticeMatrix unimodular_inverse(const LatticeMatrix& u);

/// Index of the column lattice in Z^rows; nullopt when it is not full rank.
std::optional<Integer> lattice_index(const LatticeMatrix& a);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const LatticeMatrix& a);

/// Rank by fraction-free Gaussian elimination.
std::size_t rank(const LatticeMatrix& a);

/// LLL-reduced basis (delta = 3/4, exact arithmetic) of the lattice spanned by
/// the columns, which must be independent. Columns come out shortest first,
/// each with its first nonzero entry positive.
LatticeMatrix lll_reduce(const LatticeMatrix& basis);

}  // namespace sparsesolve
