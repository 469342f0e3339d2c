#include "sparsesolve/supports.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "hull.hpp"
#include "sparsesolve/error.hpp"

namespace sparsesolve {

namespace {

void check_dims(std::size_t dim, const std::vector<Point>& points) {
  for (const Point& p : points)
    if (p.size() != dim) throw SupportError("point of dimension " + std::to_string(p.size()) +
                                            " in a support of dimension " + std::to_string(dim));
}

// Exact rational inverse of a nonsingular square matrix.
std::vector<mpq_class> rational_inverse(const LatticeMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<mpq_class> w(n * 2 * n);
  auto at = [&](std::size_t r, std::size_t c) -> mpq_class& { return w[r * 2 * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = m(r, c);
    at(r, n + r) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && at(piv, c) == 0) ++piv;
    if (piv == n) throw SupportError("monomial map is not injective");
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
  std::vector<mpq_class> inv(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv[r * n + c] = at(r, n + c);
  return inv;
}

}  // namespace

// ---------------------------------------------------------------- Support

Support::Support(std::size_t dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
  if (points_.empty()) throw SupportError("empty support");
  check_dims(dim_, points_);
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw SupportError("repeated exponent vector in support");
}

Support Support::from_multiset(std::size_t dim, std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return Support(dim, std::move(points));
}

std::optional<std::size_t> Support::index_of(const Point& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool Support::contains_origin() const { return contains(Point(dim_, 0)); }

LatticeMatrix Support::matrix() const { return LatticeMatrix::from_columns(dim_, points_); }

// ---------------------------------------------------------- SupportSystem

SupportSystem::SupportSystem(std::vector<Support> supports) : supports_(std::move(supports)) {
  for (const Support& s : supports_)
    if (s.dim() != supports_.size())
      throw SupportError("support system is not square: " + std::to_string(supports_.size()) +
                         " supports in dimension " + std::to_string(s.dim()));
}

LatticeMatrix SupportSystem::matrix(std::span<const std::size_t> indices) const {
  std::vector<Point> cols;
  for (std::size_t i : indices) cols.insert(cols.end(), supports_[i].begin(), supports_[i].end());
  return LatticeMatrix::from_columns(n(), cols);
}

LatticeMatrix SupportSystem::matrix() const {
  std::vector<std::size_t> all(n());
  for (std::size_t i = 0; i < n(); ++i) all[i] = i;
  return matrix(all);
}

// -------------------------------------------------------------- Polynomials

SparsePolynomial::SparsePolynomial(std::size_t dim, std::vector<std::pair<Point, Complex>> terms) {
  if (terms.empty()) throw SupportError("polynomial without terms");
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Point> pts;
  pts.reserve(terms.size());
  coefficients.reserve(terms.size());
  for (auto& [p, c] : terms) {
    if (c == Complex(0.0, 0.0)) throw SupportError("zero coefficient in sparse polynomial");
    pts.push_back(std::move(p));
    coefficients.push_back(c);
  }
  support = Support(dim, std::move(pts));
}

SparsePolynomial::SparsePolynomial(Support s, std::vector<Complex> c)
    : support(std::move(s)), coefficients(std::move(c)) {
  if (coefficients.size() != support.size())
    throw SupportError("coefficient count does not match support size");
}

SparseSystem::SparseSystem(std::vector<SparsePolynomial> polynomials) : polys_(std::move(polynomials)) {
  for (const auto& p : polys_)
    if (p.support.dim() != polys_.size()) throw SupportError("sparse system is not square");
}

SupportSystem SparseSystem::supports() const {
  std::vector<Support> s;
  s.reserve(polys_.size());
  for (const auto& p : polys_) s.push_back(p.support);
  return SupportSystem(std::move(s));
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const Support& s) {
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
  return os << '}';
}

// --------------------------------------------------------------- Operations

namespace {

Point subtract(const Point& a, const Point& b) {
  Point d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

Support translate(const Support& s, const Point& shift) {
  std::vector<Point> pts;
  pts.reserve(s.size());
  for (const Point& p : s) pts.push_back(subtract(p, shift));
  return Support(s.dim(), std::move(pts));
}

}  // namespace

NormalizedSupports normalize(const SupportSystem& s) {
  NormalizedSupports out;
  std::vector<Support> supports;
  for (const Support& a : s) {
    out.translations.push_back(a[0]);
    supports.push_back(translate(a, a[0]));
  }
  out.system = SupportSystem(std::move(supports));
  return out;
}

NormalizedSystem normalize(const SparseSystem& f) {
  NormalizedSystem out;
  std::vector<SparsePolynomial> polys;
  for (const auto& p : f.polynomials()) {
    out.translations.push_back(p.support[0]);
    // Translation preserves the lexicographic order, so coefficients stay aligned.
    polys.emplace_back(translate(p.support, p.support[0]), p.coefficients);
  }
  out.system = SparseSystem(std::move(polys));
  return out;
}

std::size_t span_rank(const SupportSystem& s, std::span<const std::size_t> indices) {
  std::vector<Point> diffs;
  for (std::size_t i : indices) {
    const Support& a = s[i];
    for (std::size_t k = 1; k < a.size(); ++k) diffs.push_back(subtract(a[k], a[0]));
  }
  if (diffs.empty()) return 0;
  return rank(LatticeMatrix::from_columns(s.n(), diffs));
}

Support vertices(const Support& a) {
  const detail::HullResult hull = detail::convex_hull(a.points(), a.dim());
  std::vector<Point> pts;
  pts.reserve(hull.vertices.size());
  for (std::size_t i : hull.vertices) pts.push_back(a[i]);
  return Support(a.dim(), std::move(pts));
}

SupportSystem transform(const SupportSystem& s, const LatticeMatrix& m) {
  std::vector<Support> out;
  for (const Support& a : s) {
    std::vector<Point> pts;
    pts.reserve(a.size());
    for (const Point& p : a) pts.push_back(m.apply(p));
    out.emplace_back(m.rows(), std::move(pts));
  }
  return SupportSystem(std::move(out));
}

SparseSystem transform(const SparseSystem& f, const LatticeMatrix& m) {
  std::vector<SparsePolynomial> polys;
  for (const auto& p : f.polynomials()) {
    std::vector<std::pair<Point, Complex>> terms;
    terms.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) terms.emplace_back(m.apply(p.support[k]), p.coefficients[k]);
    polys.emplace_back(m.rows(), std::move(terms));
  }
  return SparseSystem(std::move(polys));
}

Preimage preimage_supports(const SupportSystem& s, const LatticeMatrix& phi) {
  const std::size_t n = s.n();
  if (phi.rows() != n || phi.cols() != n) throw SupportError("monomial map has the wrong shape");
  const std::vector<mpq_class> inv = rational_inverse(phi);

  Preimage out;
  std::vector<Support> supports;
  for (const Support& a : s) {
    std::vector<Point> pts;
    pts.reserve(a.size());
    for (const Point& p : a) {
      Point b(n);
      for (std::size_t r = 0; r < n; ++r) {
        mpq_class acc = 0;
        for (std::size_t c = 0; c < n; ++c) acc += inv[r * n + c] * static_cast<long>(p[c]);
        if (acc.get_den() != 1) {
          throw SupportError("point is not in the image lattice of the monomial map");
        }
        b[r] = to_int64(acc.get_num());
      }
      pts.push_back(std::move(b));
    }
    Support b(n, pts);
    std::vector<std::size_t> idx;
    idx.reserve(pts.size());
    for (const Point& p : pts) idx.push_back(*b.index_of(p));
    supports.push_back(std::move(b));
    out.reindex.push_back(std::move(idx));
  }
  out.supports = SupportSystem(std::move(supports));
  return out;
}

Quotient quotient_supports(const SupportSystem& s, std::span<const std::size_t> indices) {
  const std::size_t n = s.n();
  Quotient q;
  q.witness.assign(indices.begin(), indices.end());
  std::sort(q.witness.begin(), q.witness.end());
  q.witness.erase(std::unique(q.witness.begin(), q.witness.end()), q.witness.end());
  q.k = q.witness.size();
  if (q.k == 0 || q.k >= n) throw SupportError("triangular witness must be a nonempty proper subset");
  for (std::size_t i : q.witness) {
    if (i >= n) throw SupportError("witness index out of range");
    if (!s[i].contains_origin()) throw SupportError("quotient_supports requires normalized supports");
  }
  if (span_rank(s, q.witness) != q.k) throw SupportError("witness does not span a lattice of rank |I|");
  for (std::size_t j = 0; j < n; ++j)
    if (!std::binary_search(q.witness.begin(), q.witness.end(), j)) q.complement.push_back(j);

  const SmithForm snf = smith_normal_form(s.matrix(q.witness));
  q.psi = unimodular_inverse(snf.P);
  q.phi = snf.P.block(0, 0, n, q.k);
  q.projection = q.psi.block(q.k, 0, n - q.k, n);

  std::vector<Support> base;
  for (std::size_t i : q.witness) {
    std::vector<Point> pts;
    for (const Point& p : s[i]) {
      Point img = q.psi.apply(p);
      for (std::size_t r = q.k; r < n; ++r)
        if (img[r] != 0) throw LinalgError("saturation basis does not contain A_I");
      img.resize(q.k);
      pts.push_back(std::move(img));
    }
    base.emplace_back(q.k, std::move(pts));
  }
  q.base = SupportSystem(std::move(base));

  std::vector<Support> images;
  for (std::size_t j : q.complement) {
    std::vector<Point> pts;
    for (const Point& p : s[j]) pts.push_back(q.projection.apply(p));
    images.push_back(Support::from_multiset(n - q.k, std::move(pts)));
  }
  q.images = SupportSystem(std::move(images));
  return q;
}

}  // namespace sparsesolve
