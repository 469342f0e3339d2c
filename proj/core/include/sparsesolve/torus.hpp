#pragma once

// Points of (C^*)^n, monomial maps between tori, fibers and fiber restriction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsesolve/intlinalg.hpp"
#include "sparsesolve/supports.hpp"

namespace sparsesolve {

using TorusPoint = std::vector<Complex>;

/// Coordinates with modulus at or below this are considered off the torus.
inline constexpr double kTorusThreshold = 1e-10;

bool on_torus(std::span<const Complex> x, double threshold = kTorusThreshold);

/// x^alpha by binary exponentiation; negative exponents use 1/x_i.
Complex character(std::span<const Complex> x, std::span<const std::int64_t> alpha);

Complex evaluate(const SparsePolynomial& f, std::span<const Complex> x);
std::vector<Complex> evaluate(const SparseSystem& f, std::span<const Complex> x);
/// Max-norm of F(x).
double residual(const SparseSystem& f, std::span<const Complex> x);

/// Torus homomorphism (C^*)^m -> (C^*)^k given by an m x k integer matrix:
/// output coordinate i is x^(column i).
class MonomialMap {
 public:
  MonomialMap() = default;
  explicit MonomialMap(LatticeMatrix matrix);

  std::size_t source_dim() const { return matrix_.rows(); }
  std::size_t target_dim() const { return matrix_.cols(); }
  const LatticeMatrix& matrix() const { return matrix_; }

  TorusPoint operator()(std::span<const Complex> x) const;

 private:
  LatticeMatrix matrix_;
  std::vector<std::vector<std::int64_t>> characters_;
};

TorusPoint apply(const MonomialMap& map, std::span<const Complex> x);

/// outer o inner, i.e. x -> outer(inner(x)).
MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner);

/// All prod(d_i) solutions of (x_1^d_1, ..., x_n^d_n) = y, in polar form.
/// Branches j = 0..d_i-1 ascending with the principal argument in (-pi, pi];
/// the last coordinate varies fastest.
std::vector<TorusPoint> diagonal_fiber(std::span<const std::uint64_t> d, std::span<const Complex> y);

/// Point of the fiber through y0 with fiber coordinate z: x_i = y0_i * z^(column i of projection).
TorusPoint fiber_point(const LatticeMatrix& projection, std::span<const Complex> y0,
                       std::span<const Complex> z);

/// Coefficients of the polynomials f_j, j in J, restricted to the fiber through
/// y0, aligned with `images` (the projected supports). Merged coefficients may be zero.
std::vector<std::vector<Complex>> fiber_coefficients(const SparseSystem& f,
                                                     std::span<const std::size_t> complement,
                                                     const LatticeMatrix& projection,
                                                     std::span<const Complex> y0,
                                                     const SupportSystem& images);

/// The restriction of f_j, j in J, to the fiber through y0 as a sparse system
/// on Z^{n-k}; coefficients that cancel are dropped. Throws
/// DegenerateFiberError if a whole polynomial cancels.
SparseSystem restrict_to_fiber(const SparseSystem& f, std::span<const std::size_t> complement,
                               const LatticeMatrix& projection, std::span<const Complex> y0);

/// iota(F): the same coefficients moved onto the preimage supports.
SparseSystem relabel(const SparseSystem& f, const Preimage& preimage);

}  // namespace sparsesolve
