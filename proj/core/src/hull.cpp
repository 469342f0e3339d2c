#include "hull.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "sparsesolve/error.hpp"

namespace sparsesolve::detail {
namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("hull arithmetic overflow");
  return r;
}

i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("hull arithmetic overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("hull arithmetic overflow");
  return r;
}

i128 abs128(i128 a) { return a < 0 ? -a : a; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("hull value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

// Fraction-free determinant of a small square matrix (row-major, size s*s).
i128 bareiss(std::vector<i128> m, std::size_t s) {
  if (s == 0) return 1;
  i128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < s; ++k) {
    if (m[k * s + k] == 0) {
      std::size_t sw = k + 1;
      while (sw < s && m[sw * s + k] == 0) ++sw;
      if (sw == s) return 0;
      for (std::size_t c = 0; c < s; ++c) std::swap(m[k * s + c], m[sw * s + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < s; ++i)
      for (std::size_t j = k + 1; j < s; ++j)
        m[i * s + j] = checked_sub(checked_mul(m[i * s + j], m[k * s + k]),
                                   checked_mul(m[i * s + k], m[k * s + j])) /
                       prev;
    prev = m[k * s + k];
  }
  return sign * m[(s - 1) * s + (s - 1)];
}

// Row echelon basis grown one vector at a time; rows kept primitive.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }

  bool add(std::vector<i128> w) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (w[p] == 0) continue;
      const i128 a = rows_[r][p];
      const i128 b = w[p];
      const i128 g = gcd128(a, b);
      const i128 fa = a / g;
      const i128 fb = b / g;
      for (std::size_t c = 0; c < dim_; ++c)
        w[c] = checked_sub(checked_mul(w[c], fa), checked_mul(rows_[r][c], fb));
      make_primitive(w);
    }
    std::size_t q = 0;
    while (q < dim_ && w[q] == 0) ++q;
    if (q == dim_) return false;
    make_primitive(w);
    const auto pos = static_cast<std::size_t>(
        std::upper_bound(pivots_.begin(), pivots_.end(), q) - pivots_.begin());
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), q);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
    return true;
  }

 private:
  static void make_primitive(std::vector<i128>& w) {
    i128 g = 0;
    for (i128 v : w) g = gcd128(g, v);
    if (g > 1)
      for (i128& v : w) v /= g;
  }

  std::size_t dim_;
  std::vector<std::vector<i128>> rows_;
  std::vector<std::size_t> pivots_;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t v : k) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct Facet {
  std::vector<std::uint32_t> verts;  // sorted
  std::vector<std::int64_t> normal;  // outward, unreduced cofactor vector
  std::int64_t offset = 0;           // normal . x <= offset on the hull
  bool alive = true;
};

// Placing triangulation in R^d of full-dimensional points.
class Triangulation {
 public:
  Triangulation(const std::vector<std::vector<std::int64_t>>& pts, std::size_t d)
      : pts_(pts), d_(d) {}

  void build(const std::vector<std::size_t>& simplex, const std::vector<std::size_t>& order) {
    // Initial simplex: every d-subset is a facet, oriented away from the omitted vertex.
    std::vector<std::uint32_t> s(simplex.begin(), simplex.end());
    std::sort(s.begin(), s.end());
    volume_ = 0;
    for (std::size_t omit = 0; omit <= d_; ++omit) {
      std::vector<std::uint32_t> f;
      for (std::size_t i = 0; i <= d_; ++i)
        if (i != omit) f.push_back(s[i]);
      add_facet(std::move(f), s[omit]);
    }
    {
      const Facet& f0 = facets_.front();
      const i128 v = checked_sub(dot(f0.normal, pts_[s[0]]), f0.offset);
      volume_ = abs128(v);
    }
    simplices_ = 1;

    std::vector<std::size_t> visible;
    for (std::size_t idx : order) {
      const auto& p = pts_[idx];
      visible.clear();
      for (std::size_t fi = 0; fi < facets_.size(); ++fi) {
        const Facet& f = facets_[fi];
        if (f.alive && dot(f.normal, p) > f.offset) visible.push_back(fi);
      }
      if (visible.empty()) continue;
      const auto pid = static_cast<std::uint32_t>(idx);
      for (std::size_t fi : visible) {
        volume_ = checked_add(volume_, checked_sub(dot(facets_[fi].normal, p), facets_[fi].offset));
        ++simplices_;
        kill(fi);
      }
      for (std::size_t fi : visible) {
        const std::vector<std::uint32_t> verts = facets_[fi].verts;
        for (std::size_t m = 0; m < verts.size(); ++m) {
          std::vector<std::uint32_t> key;
          key.reserve(d_);
          for (std::size_t i = 0; i < verts.size(); ++i)
            if (i != m) key.push_back(verts[i]);
          key.insert(std::upper_bound(key.begin(), key.end(), pid), pid);
          auto it = index_.find(key);
          if (it != index_.end()) {
            kill(it->second);
          } else {
            add_facet(std::move(key), verts[m]);
          }
        }
      }
      compact_if_needed();
    }
  }

  i128 volume() const { return volume_; }
  std::size_t simplices() const { return simplices_; }

  std::vector<std::size_t> extreme_points() const {
    std::unordered_map<std::uint32_t, Echelon> ranks;
    std::vector<std::uint32_t> done;
    for (const Facet& f : facets_) {
      if (!f.alive) continue;
      std::vector<i128> nrm(f.normal.begin(), f.normal.end());
      for (std::uint32_t v : f.verts) {
        auto [it, inserted] = ranks.try_emplace(v, d_);
        if (it->second.rank() < d_) it->second.add(nrm);
      }
    }
    std::vector<std::size_t> out;
    for (const auto& [v, e] : ranks)
      if (e.rank() == d_) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  i128 dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    i128 s = 0;
    for (std::size_t i = 0; i < d_; ++i) s += static_cast<i128>(a[i]) * b[i];
    return s;
  }

  void add_facet(std::vector<std::uint32_t> verts, std::uint32_t opposite) {
    Facet f;
    f.normal.resize(d_);
    const auto& v0 = pts_[verts[0]];
    const std::size_t s = d_ - 1;
    std::vector<i128> minor(s * s);
    for (std::size_t k = 0; k < d_; ++k) {
      for (std::size_t r = 0; r < s; ++r) {
        const auto& vr = pts_[verts[r + 1]];
        std::size_t cc = 0;
        for (std::size_t c = 0; c < d_; ++c) {
          if (c == k) continue;
          minor[r * s + cc++] = static_cast<i128>(vr[c]) - v0[c];
        }
      }
      const i128 det = bareiss(minor, s);
      f.normal[k] = narrow((k % 2 == 0) ? det : -det);
    }
    i128 off = dot(f.normal, v0);
    if (dot(f.normal, pts_[opposite]) > off) {
      for (auto& c : f.normal) c = -c;
      off = -off;
    }
    f.offset = narrow(off);
    f.verts = std::move(verts);
    index_.emplace(f.verts, facets_.size());
    facets_.push_back(std::move(f));
    ++alive_;
  }

  void kill(std::size_t fi) {
    Facet& f = facets_[fi];
    if (!f.alive) return;
    f.alive = false;
    index_.erase(f.verts);
    --alive_;
  }

  void compact_if_needed() {
    if (facets_.size() < 1024 || alive_ * 2 > facets_.size()) return;
    std::vector<Facet> kept;
    kept.reserve(alive_);
    index_.clear();
    for (auto& f : facets_) {
      if (!f.alive) continue;
      index_.emplace(f.verts, kept.size());
      kept.push_back(std::move(f));
    }
    facets_ = std::move(kept);
  }

  const std::vector<std::vector<std::int64_t>>& pts_;
  std::size_t d_;
  std::vector<Facet> facets_;
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, KeyHash> index_;
  std::size_t alive_ = 0;
  i128 volume_ = 0;
  std::size_t simplices_ = 0;
};

std::vector<i128> difference(const Point& a, const Point& b) {
  std::vector<i128> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = static_cast<i128>(a[i]) - b[i];
  return d;
}

// Greedy choice of affinely independent points: the first point, then every
// point that increases the rank of the differences.
std::vector<std::size_t> independent_points(std::span<const Point> points, std::size_t dim) {
  std::vector<std::size_t> chosen{0};
  Echelon e(dim);
  for (std::size_t i = 1; i < points.size() && e.rank() < dim; ++i)
    if (e.add(difference(points[i], points[0]))) chosen.push_back(i);
  return chosen;
}

}  // namespace

std::size_t affine_rank(std::span<const Point> points, std::size_t dim) {
  if (points.empty()) return 0;
  return independent_points(points, dim).size() - 1;
}

HullResult convex_hull(std::span<const Point> points, std::size_t dim) {
  if (points.empty()) throw SupportError("convex hull of an empty point set");
  HullResult res;
  const std::vector<std::size_t> simplex = independent_points(points, dim);
  const std::size_t r = simplex.size() - 1;
  res.affine_dim = r;

  if (r == 0) {
    res.vertices = {0};
    return res;
  }

  // Coordinates on which the affine hull projects isomorphically.
  std::vector<std::size_t> coords;
  if (r == dim) {
    coords.resize(dim);
    std::iota(coords.begin(), coords.end(), 0);
  } else {
    Echelon cols(r);
    for (std::size_t c = 0; c < dim && coords.size() < r; ++c) {
      std::vector<i128> col(r);
      for (std::size_t i = 0; i < r; ++i)
        col[i] = static_cast<i128>(points[simplex[i + 1]][c]) - points[simplex[0]][c];
      if (cols.add(col)) coords.push_back(c);
    }
  }

  std::vector<std::vector<std::int64_t>> proj(points.size(), std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t c = 0; c < r; ++c) proj[i][c] = points[i][coords[c]];

  if (r == 1) {
    auto [mn, mx] = std::minmax_element(proj.begin(), proj.end());
    const auto lo = static_cast<std::size_t>(mn - proj.begin());
    const auto hi = static_cast<std::size_t>(mx - proj.begin());
    res.vertices = {std::min(lo, hi), std::max(lo, hi)};
    if (dim == 1) res.normalized_volume = (*mx)[0] - (*mn)[0];
    res.simplices = 1;
    return res;
  }

  std::vector<bool> in_simplex(points.size(), false);
  for (std::size_t i : simplex) in_simplex[i] = true;
  std::vector<std::size_t> order;
  order.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!in_simplex[i]) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });

  Triangulation tri(proj, r);
  tri.build(simplex, order);
  res.vertices = tri.extreme_points();
  res.simplices = tri.simplices();
  if (r == dim) res.normalized_volume = narrow(tri.volume());
  return res;
}

}  // namespace sparsesolve::detail
