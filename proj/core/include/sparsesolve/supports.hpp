#pragma once

// Supports (finite point sets in Z^n), support systems and sparse systems.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sparsesolve/intlinalg.hpp"

namespace sparsesolve {

using Point = std::vector<std::int64_t>;
using Complex = std::complex<double>;

/// A nonempty set of distinct lattice points, kept in lexicographic order.
class Support {
 public:
  Support() = default;
  /// Throws SupportError on an empty set, a dimension mismatch or a repeated point.
  Support(std::size_t dim, std::vector<Point> points);
  /// Like the constructor but silently merges repeated points.
  static Support from_multiset(std::size_t dim, std::vector<Point> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  std::optional<std::size_t> index_of(const Point& p) const;
  bool contains(const Point& p) const { return index_of(p).has_value(); }
  bool contains_origin() const;

  /// Points as the columns of a dim x size matrix.
  LatticeMatrix matrix() const;

  friend bool operator==(const Support&, const Support&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Point> points_;
};

/// A square tuple (A_1, ..., A_n) of supports in Z^n.
class SupportSystem {
 public:
  SupportSystem() = default;
  explicit SupportSystem(std::vector<Support> supports);

  std::size_t n() const { return supports_.size(); }
  const Support& operator[](std::size_t i) const { return supports_[i]; }
  const std::vector<Support>& supports() const { return supports_; }
  auto begin() const { return supports_.begin(); }
  auto end() const { return supports_.end(); }

  /// All points of the supports with index in `indices`, as matrix columns.
  LatticeMatrix matrix(std::span<const std::size_t> indices) const;
  LatticeMatrix matrix() const;

  friend bool operator==(const SupportSystem&, const SupportSystem&) = default;

 private:
  std::vector<Support> supports_;
};

/// One Laurent polynomial: a support and coefficients aligned with its points.
struct SparsePolynomial {
  Support support;
  std::vector<Complex> coefficients;

  SparsePolynomial() = default;
  /// Terms are sorted into support order. Repeated exponents and zero
  /// coefficients are rejected.
  SparsePolynomial(std::size_t dim, std::vector<std::pair<Point, Complex>> terms);
  /// Trusted constructor: coefficients already aligned with `support`.
  SparsePolynomial(Support s, std::vector<Complex> c);

  std::size_t size() const { return support.size(); }
};

/// A support system together with one nonzero coefficient per support point.
class SparseSystem {
 public:
  SparseSystem() = default;
  explicit SparseSystem(std::vector<SparsePolynomial> polynomials);

  std::size_t n() const { return polys_.size(); }
  const SparsePolynomial& operator[](std::size_t i) const { return polys_[i]; }
  const std::vector<SparsePolynomial>& polynomials() const { return polys_; }
  SupportSystem supports() const;

 private:
  std::vector<SparsePolynomial> polys_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);
std::ostream& operator<<(std::ostream& os, const Support& s);

/// Translation of each support so that its lexicographically least point is 0.
struct NormalizedSupports {
  SupportSystem system;
  std::vector<Point> translations;
};
struct NormalizedSystem {
  SparseSystem system;
  std::vector<Point> translations;
};

NormalizedSupports normalize(const SupportSystem& s);
/// Coefficients are kept; dividing f_i by x^beta_i does not change V(F).
NormalizedSystem normalize(const SparseSystem& f);

/// Rank of the lattice spanned by the differences of points of A_i, i in I.
std::size_t span_rank(const SupportSystem& s, std::span<const std::size_t> indices);

/// Extreme points of conv(A).
Support vertices(const Support& a);

/// Applies an integer matrix to every point of every support. `m` must be
/// injective on the points (a unimodular change of coordinates in practice).
SupportSystem transform(const SupportSystem& s, const LatticeMatrix& m);
SparseSystem transform(const SparseSystem& f, const LatticeMatrix& m);

/// B_i = phi^{-1}(A_i) together with the bijection between points.
struct Preimage {
  SupportSystem supports;
  /// reindex[i][k] is the position in B_i of the preimage of the k-th point of A_i.
  std::vector<std::vector<std::size_t>> reindex;
};

/// Throws SupportError if some point is not in the image of phi or phi is singular.
Preimage preimage_supports(const SupportSystem& s, const LatticeMatrix& phi);

/// Data of the quotient Z^n -> Z^n / sat(Z A_I), computed from the Smith form
/// of A_I. In the coordinates x' = psi * x, the saturation is Z^k x 0.
struct Quotient {
  std::vector<std::size_t> witness;     ///< I, ascending
  std::vector<std::size_t> complement;  ///< J = [n] \ I, ascending
  std::size_t k = 0;
  LatticeMatrix psi;         ///< n x n unimodular, P^{-1}
  LatticeMatrix phi;         ///< n x k, first k columns of P (basis of the saturation)
  LatticeMatrix projection;  ///< (n-k) x n, last n-k rows of psi
  SupportSystem base;        ///< A_I in Z^k (first k coordinates after psi)
  SupportSystem images;      ///< images of A_J in Z^{n-k}, duplicates merged
};

/// Requires every A_i to contain 0 (see normalize) and span_rank(s, I) = |I|.
Quotient quotient_supports(const SupportSystem& s, std::span<const std::size_t> indices);

}  // namespace sparsesolve
