#include "sparsesolve/cli/system_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sparsesolve::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ParseError(field + ": " + msg);
}

std::int64_t as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

double as_double(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

SystemFile parse_system(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");
  if (!doc.contains("n")) fail("n", "missing");
  const std::int64_t n = as_integer(doc["n"], "n");
  if (n <= 0) fail("n", "must be positive");
  if (!doc.contains("polynomials") || !doc["polynomials"].is_array()) fail("polynomials", "expected an array");
  const json& polys = doc["polynomials"];
  if (polys.size() != static_cast<std::size_t>(n))
    fail("polynomials", "expected " + std::to_string(n) + " polynomials, found " + std::to_string(polys.size()));

  std::vector<Support> supports;
  std::vector<SparsePolynomial> system;
  std::size_t with_coefficients = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const std::string at = "polynomials[" + std::to_string(i) + "]";
    const json& p = polys[i];
    if (!p.is_object()) fail(at, "expected an object");
    if (!p.contains("support") || !p["support"].is_array() || p["support"].empty())
      fail(at + ".support", "expected a nonempty array of exponent vectors");
    std::vector<Point> pts;
    for (std::size_t k = 0; k < p["support"].size(); ++k) {
      const std::string f = at + ".support[" + std::to_string(k) + "]";
      const json& v = p["support"][k];
      if (!v.is_array() || v.size() != static_cast<std::size_t>(n))
        fail(f, "expected an array of " + std::to_string(n) + " integers");
      Point q;
      for (std::size_t j = 0; j < v.size(); ++j) q.push_back(as_integer(v[j], f + "[" + std::to_string(j) + "]"));
      pts.push_back(std::move(q));
    }
    {
      std::vector<Point> sorted = pts;
      std::sort(sorted.begin(), sorted.end());
      const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      if (dup != sorted.end()) {
        std::ostringstream os;
        os << "duplicate exponent vector " << *dup;
        fail(at + ".support", os.str());
      }
    }
    if (p.contains("coefficients")) {
      ++with_coefficients;
      const json& c = p["coefficients"];
      if (!c.is_array() || c.size() != pts.size())
        fail(at + ".coefficients", "expected " + std::to_string(pts.size()) + " [re, im] pairs");
      std::vector<std::pair<Point, Complex>> terms;
      for (std::size_t k = 0; k < c.size(); ++k) {
        const std::string f = at + ".coefficients[" + std::to_string(k) + "]";
        if (!c[k].is_array() || c[k].size() != 2) fail(f, "expected [re, im]");
        const Complex z(as_double(c[k][0], f + "[0]"), as_double(c[k][1], f + "[1]"));
        if (z == Complex(0.0, 0.0)) fail(f, "zero coefficient");
        terms.emplace_back(pts[k], z);
      }
      system.emplace_back(static_cast<std::size_t>(n), std::move(terms));
    }
    supports.emplace_back(static_cast<std::size_t>(n), std::move(pts));
  }
  if (with_coefficients != 0 && with_coefficients != polys.size())
    fail("polynomials", "coefficients must be given for every polynomial or for none");

  SystemFile out;
  out.supports = SupportSystem(std::move(supports));
  if (with_coefficients) out.system = SparseSystem(std::move(system));
  return out;
}

SystemFile read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_system(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const SupportSystem& s) {
  json polys = json::array();
  for (const Support& a : s) {
    json pts = json::array();
    for (const Point& p : a) pts.push_back(p);
    polys.push_back({{"support", pts}});
  }
  return {{"n", s.n()}, {"polynomials", polys}};
}

json to_json(const SparseSystem& f) {
  json polys = json::array();
  for (const auto& p : f.polynomials()) {
    json pts = json::array(), cs = json::array();
    for (std::size_t k = 0; k < p.size(); ++k) {
      pts.push_back(p.support[k]);
      cs.push_back(to_json(p.coefficients[k]));
    }
    polys.push_back({{"support", pts}, {"coefficients", cs}});
  }
  return {{"n", f.n()}, {"polynomials", polys}};
}

json to_json(const SolutionSet& s) {
  json pts = json::array();
  for (const TorusPoint& x : s.points) {
    json coords = json::array();
    for (const Complex& z : x) coords.push_back(to_json(z));
    pts.push_back(coords);
  }
  return pts;
}

std::string serialize(const SparseSystem& f) { return to_json(f).dump(2); }
std::string serialize(const SupportSystem& s) { return to_json(s).dump(2); }

}  // namespace sparsesolve::cli
