#include "sparsesolve/cli/families.hpp"

#include <sstream>

#include "sparsesolve/cli/system_file.hpp"
#include "sparsesolve/intlinalg.hpp"

namespace sparsesolve::cli {

namespace {

std::vector<Point> columns(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t m = rows.begin()->size();
  std::vector<Point> out(m, Point(rows.size()));
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (std::int64_t v : row) out[c++][r] = v;
    ++r;
  }
  return out;
}

std::vector<Point> embed(const std::vector<Point>& pts, const std::array<Point, 2>& m) {
  std::vector<Point> out;
  for (const Point& p : pts) {
    Point q(5, 0);
    for (std::size_t k = 0; k < 5; ++k) q[k] = p[0] * m[0][k] + p[1] * m[1][k];
    out.push_back(std::move(q));
  }
  return out;
}

Point unit(std::size_t k) {
  Point p(5, 0);
  p[k] = 1;
  return p;
}

Point diff(std::size_t a, std::size_t b) {
  Point p(5, 0);
  p[a] = 1;
  p[b] = -1;
  return p;
}

}  // namespace

Embedding standard_embedding() { return {{unit(0), unit(1)}, {unit(2), unit(3)}}; }

Embedding shifted_embedding() { return {{diff(0, 1), diff(1, 2)}, {diff(2, 3), diff(3, 4)}}; }

bool is_independent(const Embedding& e) {
  LatticeMatrix m(5, 4);
  const Point* v[4] = {&e.i[0], &e.i[1], &e.j[0], &e.j[1]};
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 5; ++r) m(r, c) = static_cast<long>((*v[c])[r]);
  return rank(m) == 4;
}

Embedding random_embedding(Rng& rng) {
  while (true) {
    Embedding e;
    for (Point* v : {&e.i[0], &e.i[1], &e.j[0], &e.j[1]}) {
      v->resize(5);
      for (auto& x : *v) x = rng.integer(-2, 2);
    }
    if (is_independent(e)) return e;
  }
}

SupportSystem family_supports(const Embedding& e) {
  const auto a1 = columns({{0, 1, 2, 0, 1}, {0, 0, 0, 1, 1}});
  const auto a2 = columns({{1, 0, 1, 2, 1}, {0, 1, 1, 1, 2}});
  const auto b1 = columns({{0, 2, 0, 2}, {0, 0, 1, 3}});
  const auto b2 = columns({{0, 1, 2, 0, 2, 0}, {0, 0, 0, 1, 1, 2}});
  std::vector<Point> cube;
  for (int m = 0; m < 32; ++m) {
    Point p(5);
    for (int k = 0; k < 5; ++k) p[k] = (m >> k) & 1;
    cube.push_back(std::move(p));
  }
  return SupportSystem({Support(5, embed(a1, e.i)), Support(5, embed(a2, e.i)), Support(5, embed(b1, e.j)),
                        Support(5, embed(b2, e.j)), Support(5, std::move(cube))});
}

std::optional<Embedding> parse_family(const std::string& spec) {
  if (spec == "e-basis") return standard_embedding();
  if (spec == "shifted") return shifted_embedding();
  if (spec == "random") return std::nullopt;
  std::vector<Point> vs;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    Point v;
    std::stringstream ps(part);
    std::string num;
    while (std::getline(ps, num, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(num, &used));
        if (used != num.size()) throw std::invalid_argument(num);
      } catch (const std::exception&) {
        throw ParseError("family: bad integer '" + num + "'");
      }
    }
    if (v.size() != 5) throw ParseError("family: each vector needs 5 entries");
    vs.push_back(std::move(v));
  }
  if (vs.size() != 4) throw ParseError("family: expected e-basis, shifted, random or four vectors i1;i2;j1;j2");
  Embedding e{{vs[0], vs[1]}, {vs[2], vs[3]}};
  if (!is_independent(e)) throw ParseError("family: the four vectors are linearly dependent");
  return e;
}

}  // namespace sparsesolve::cli
