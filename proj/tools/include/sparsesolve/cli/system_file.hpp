#pragma once

// JSON encoding of support systems and sparse systems.
//
//   {"n": 2,
//    "polynomials": [
//      {"support": [[0,0],[1,0],[0,1]], "coefficients": [[1,0],[2,0],[0,-1]]},
//      ...]}
//
// "coefficients" is omitted everywhere for a support-only file.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sparsesolve/error.hpp"
#include "sparsesolve/supports.hpp"
#include "sparsesolve/tracking.hpp"

namespace sparsesolve::cli {

class ParseError : public Error {
 public:
  using Error::Error;
};

struct SystemFile {
  SupportSystem supports;
  std::optional<SparseSystem> system;  ///< present when coefficients were given

  std::size_t n() const { return supports.n(); }
};

/// Throws ParseError naming the line (for JSON syntax errors) or the field path.
SystemFile parse_system(std::string_view text);
SystemFile read_system_file(const std::string& path);

nlohmann::json to_json(const SupportSystem& s);
nlohmann::json to_json(const SparseSystem& f);
nlohmann::json to_json(const SolutionSet& s);
nlohmann::json to_json(const Complex& z);

std::string serialize(const SparseSystem& f);
std::string serialize(const SupportSystem& s);

}  // namespace sparsesolve::cli
