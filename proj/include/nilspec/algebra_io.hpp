#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilspec/forms.hpp"
#include "nilspec/pi_poly.hpp"

namespace nilspec {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Text format (indices are 1-based, rationals "p/q"):
//
//   nilspec-algebra 1
//   dim 3
//   names X Y Z
//   bracket 1 2 0 0 1
//   metric identity          (or "metric" followed by dim rows)
//   twoform NAME             entry i j r ... end
//   derivation NAME          entry i j r ... end   (column j = image of E_j)
//
// '#' starts a comment.
struct AlgebraDocument {
  LieAlgebra algebra;
  std::vector<std::pair<std::string, TwoForm>> twoforms;
  std::vector<std::pair<std::string, Derivation>> derivations;

  [[nodiscard]] const TwoForm* twoform(const std::string& name) const;
  [[nodiscard]] const Derivation* derivation(const std::string& name) const;
};

AlgebraDocument parse_algebra(std::string_view text);
std::string serialize_algebra(const AlgebraDocument& doc);
AlgebraDocument load_algebra_file(const std::string& path);
void save_algebra_file(const AlgebraDocument& doc, const std::string& path);

// Linear combination of named symbols with PiPoly coefficients, e.g.
// "1/2*(z1 + xi)" or "-i*p*A1 + 2". The empty key holds the constant part.
using LinearCombination = std::map<std::string, PiPoly>;
LinearCombination parse_linear_combination(std::string_view text);

}  // namespace nilspec
