#include "sparsesolve/decompose.hpp"

#include <sstream>

#include "sparsesolve/error.hpp"
#include "sparsesolve/geometry.hpp"

namespace sparsesolve {

namespace {

std::vector<std::vector<std::size_t>> proper_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 1; size < n; ++size) {
    std::vector<std::size_t> cur(size);
    for (std::size_t i = 0; i < size; ++i) cur[i] = i;
    while (true) {
      out.push_back(cur);
      std::size_t i = size;
      while (i > 0 && cur[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < size; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return out;
}

std::string describe(const std::vector<std::size_t>& w) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i] + 1;
  os << '}';
  return os.str();
}

}  // namespace

Classification classify(const SupportSystem& raw) {
  const ZeroMixedVolume z = mv_is_zero(raw);
  if (z.zero) throw SupportError("mixed volume is zero, witness I = " + describe(z.witness));
  const SupportSystem s = normalize(raw).system;
  const std::size_t n = s.n();

  const SmithForm snf = smith_normal_form(s.matrix());
  if (snf.rank() < n) throw SupportError("supports do not span a full-rank lattice");
  if (snf.invariant_factors.back() > 1) {
    Lacunary lac;
    LatticeMatrix dn = LatticeMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      dn(i, i) = snf.invariant_factors[i];
      lac.factors.push_back(static_cast<std::uint64_t>(to_int64(snf.invariant_factors[i])));
      lac.index *= lac.factors.back();
    }
    const LatticeMatrix smith_basis = snf.P * dn;
    lac.psi = unimodular_inverse(snf.P);
    lac.phi = lll_reduce(smith_basis);
    // phi = smith_basis * U with U = D^{-1} psi phi.
    LatticeMatrix u = lac.psi * lac.phi;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) u(r, c) /= snf.invariant_factors[r];
    lac.to_smith = unimodular_inverse(u);
    lac.preimage = preimage_supports(s, lac.phi);
    return lac;
  }

  for (const auto& subset : proper_subsets(n)) {
    if (span_rank(s, subset) == subset.size()) return triangular_split(s, subset);
  }
  return Indecomposable{};
}

Triangular triangular_split(const SupportSystem& raw, std::span<const std::size_t> indices) {
  Triangular tri;
  tri.quotient = quotient_supports(normalize(raw).system, indices);
  tri.base_mv = mixed_volume(tri.quotient.base);
  tri.fiber_mv = mixed_volume(tri.quotient.images);
  return tri;
}

bool is_strictly_triangular(const SupportSystem& raw, std::span<const std::size_t> indices) {
  const SupportSystem s = normalize(raw).system;
  const Quotient q = quotient_supports(s, indices);
  const std::uint64_t base = mixed_volume(q.base);
  return base > 1 && base < mixed_volume(s);
}

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Lacunary: return "lacunary";
    case NodeKind::Triangular: return "triangular";
    case NodeKind::Blackbox: return "blackbox";
    case NodeKind::Univariate: return "univariate";
    case NodeKind::Homotopy: return "homotopy";
  }
  return "unknown";
}

std::size_t DecompositionTree::total_paths() const {
  std::size_t t = paths;
  for (const auto& c : children) t += c.total_paths();
  return t;
}

std::size_t DecompositionTree::total_raw_paths() const {
  std::size_t t = raw_paths;
  for (const auto& c : children) t += c.total_raw_paths();
  return t;
}

namespace {

DecompositionTree plan_node(const SupportSystem& s, const std::string& role) {
  DecompositionTree t;
  t.role = role;
  t.variables = s.n();
  t.mv = mixed_volume(s);
  const Classification c = classify(s);
  if (const auto* lac = std::get_if<Lacunary>(&c)) {
    t.kind = NodeKind::Lacunary;
    t.index = lac->index;
    t.factors = lac->factors;
    t.children.push_back(plan_node(lac->preimage.supports, "lifted"));
  } else if (const auto* tri = std::get_if<Triangular>(&c)) {
    t.kind = NodeKind::Triangular;
    t.witness = tri->quotient.witness;
    t.children.push_back(plan_node(tri->quotient.base, "base"));
    t.children.push_back(plan_node(tri->quotient.images, "fiber"));
  } else {
    t.kind = s.n() == 1 ? NodeKind::Univariate : NodeKind::Blackbox;
  }
  return t;
}

}  // namespace

DecompositionTree plan(const SupportSystem& s) { return plan_node(s, "root"); }

}  // namespace sparsesolve
