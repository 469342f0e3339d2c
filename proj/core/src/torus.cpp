#include "sparsesolve/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sparsesolve/error.hpp"

namespace sparsesolve {

namespace {

Complex ipow(Complex base, std::uint64_t e) {
  Complex r(1.0, 0.0);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

std::vector<std::vector<std::int64_t>> columns_of(const LatticeMatrix& m) {
  std::vector<std::vector<std::int64_t>> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column_i64(c));
  return cols;
}

}  // namespace

bool on_torus(std::span<const Complex> x, double threshold) {
  for (const Complex& v : x)
    if (!(std::abs(v) > threshold)) return false;
  return true;
}

Complex character(std::span<const Complex> x, std::span<const std::int64_t> alpha) {
  Complex r(1.0, 0.0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const std::int64_t a = alpha[i];
    if (a > 0) r *= ipow(x[i], static_cast<std::uint64_t>(a));
    else if (a < 0) r *= ipow(1.0 / x[i], static_cast<std::uint64_t>(-a));
  }
  return r;
}

Complex evaluate(const SparsePolynomial& f, std::span<const Complex> x) {
  if (x.size() != f.support.dim()) throw Error("evaluation point has the wrong dimension");
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) acc += f.coefficients[k] * character(x, f.support[k]);
  return acc;
}

std::vector<Complex> evaluate(const SparseSystem& f, std::span<const Complex> x) {
  std::vector<Complex> out;
  out.reserve(f.n());
  for (const auto& p : f.polynomials()) out.push_back(evaluate(p, x));
  return out;
}

double residual(const SparseSystem& f, std::span<const Complex> x) {
  double r = 0.0;
  for (const Complex& v : evaluate(f, x)) r = std::max(r, std::abs(v));
  return r;
}

// ------------------------------------------------------------ MonomialMap

MonomialMap::MonomialMap(LatticeMatrix matrix)
    : matrix_(std::move(matrix)), characters_(columns_of(matrix_)) {}

TorusPoint MonomialMap::operator()(std::span<const Complex> x) const {
  if (x.size() != source_dim()) throw Error("monomial map applied to a point of the wrong dimension");
  TorusPoint out;
  out.reserve(characters_.size());
  for (const auto& c : characters_) out.push_back(character(x, c));
  return out;
}

TorusPoint apply(const MonomialMap& map, std::span<const Complex> x) { return map(x); }

MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner) {
  return MonomialMap(inner.matrix() * outer.matrix());
}

// ----------------------------------------------------------------- Fibers

std::vector<TorusPoint> diagonal_fiber(std::span<const std::uint64_t> d, std::span<const Complex> y) {
  const std::size_t n = d.size();
  if (y.size() != n) throw Error("diagonal fiber: dimension mismatch");
  std::vector<std::vector<Complex>> roots(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] == 0) throw Error("diagonal fiber: zero exponent");
    const double dd = static_cast<double>(d[i]);
    const double r = std::pow(std::abs(y[i]), 1.0 / dd);
    const double theta = std::arg(y[i]);
    for (std::uint64_t j = 0; j < d[i]; ++j)
      roots[i].push_back(std::polar(r, (theta + 2.0 * std::numbers::pi * static_cast<double>(j)) / dd));
    total *= d[i];
  }
  std::vector<TorusPoint> out;
  out.reserve(total);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t count = 0; count < total; ++count) {
    TorusPoint p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = roots[i][idx[i]];
    out.push_back(std::move(p));
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < d[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

TorusPoint fiber_point(const LatticeMatrix& projection, std::span<const Complex> y0,
                       std::span<const Complex> z) {
  const std::size_t n = y0.size();
  if (projection.cols() != n || projection.rows() != z.size())
    throw Error("fiber point: dimension mismatch");
  TorusPoint x(y0.begin(), y0.end());
  for (std::size_t i = 0; i < n; ++i) x[i] *= character(z, projection.column_i64(i));
  return x;
}

std::vector<std::vector<Complex>> fiber_coefficients(const SparseSystem& f,
                                                     std::span<const std::size_t> complement,
                                                     const LatticeMatrix& projection,
                                                     std::span<const Complex> y0,
                                                     const SupportSystem& images) {
  if (images.n() != complement.size()) throw Error("fiber coefficients: image count mismatch");
  std::vector<std::vector<Complex>> out;
  for (std::size_t t = 0; t < complement.size(); ++t) {
    const SparsePolynomial& p = f[complement[t]];
    std::vector<Complex> c(images[t].size(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < p.size(); ++k) {
      const auto pos = images[t].index_of(projection.apply(p.support[k]));
      if (!pos) throw Error("fiber coefficients: point outside the projected support");
      c[*pos] += p.coefficients[k] * character(y0, p.support[k]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

SparseSystem restrict_to_fiber(const SparseSystem& f, std::span<const std::size_t> complement,
                               const LatticeMatrix& projection, std::span<const Complex> y0) {
  const std::size_t m = projection.rows();
  std::vector<SparsePolynomial> polys;
  for (std::size_t j : complement) {
    const SparsePolynomial& p = f[j];
    std::vector<Point> imgs;
    std::vector<Complex> terms;
    for (std::size_t k = 0; k < p.size(); ++k) {
      imgs.push_back(projection.apply(p.support[k]));
      terms.push_back(p.coefficients[k] * character(y0, p.support[k]));
    }
    const Support merged = Support::from_multiset(m, imgs);
    std::vector<Complex> c(merged.size(), Complex(0.0, 0.0));
    std::vector<double> scale(merged.size(), 0.0);
    for (std::size_t k = 0; k < imgs.size(); ++k) {
      const std::size_t pos = *merged.index_of(imgs[k]);
      c[pos] += terms[k];
      scale[pos] += std::abs(terms[k]);
    }
    // A merged coefficient counts as cancelled when it is at rounding level
    // relative to the terms that produced it.
    std::vector<std::pair<Point, Complex>> kept;
    for (std::size_t q = 0; q < merged.size(); ++q)
      if (std::abs(c[q]) > 1e-13 * scale[q]) kept.emplace_back(merged[q], c[q]);
    if (kept.empty())
      throw DegenerateFiberError("polynomial " + std::to_string(j) + " vanishes on the fiber");
    polys.emplace_back(m, std::move(kept));
  }
  return SparseSystem(std::move(polys));
}

SparseSystem relabel(const SparseSystem& f, const Preimage& preimage) {
  if (preimage.supports.n() != f.n()) throw Error("relabel: size mismatch");
  std::vector<SparsePolynomial> polys;
  for (std::size_t i = 0; i < f.n(); ++i) {
    const auto& idx = preimage.reindex[i];
    if (idx.size() != f[i].size()) throw Error("relabel: support size mismatch");
    std::vector<Complex> c(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) c[idx[k]] = f[i].coefficients[k];
    polys.emplace_back(preimage.supports[i], std::move(c));
  }
  return SparseSystem(std::move(polys));
}

}  // namespace sparsesolve
