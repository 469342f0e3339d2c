#pragma once

// Shared-monomial evaluation of a family of systems with fixed supports.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "sparsesolve/supports.hpp"

namespace sparsesolve::detail {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

class TermEvaluator {
 public:
  explicit TermEvaluator(const SupportSystem& s);

  std::size_t n() const { return n_; }
  std::size_t terms() const { return exps_.size(); }

  /// Monomials and their gradients at x.
  void update(const Vec& x);
  /// f_i = sum c_k x^a_k over the terms of polynomial i; jac optional.
  void combine(const Vec& coeffs, Vec& f, Mat* jac) const;
  /// sum |c_k x^a_k| per polynomial, the scale for relative residuals.
  Eigen::VectorXd magnitudes(const Vec& coeffs) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> owner_;
  std::vector<Point> exps_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::vector<Complex>> pow_;
  Vec mono_;
  Mat grad_;
};

Vec flatten(const std::vector<std::vector<Complex>>& c);

inline double max_abs(const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace sparsesolve::detail
