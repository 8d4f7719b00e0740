#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilspec/algebra_io.hpp"
#include "nilspec/deformation.hpp"
#include "nilspec/forms.hpp"

namespace nilspec {

enum class ExampleId { I, II };

// Accepts "I"/"II" (also "1"/"2"); throws std::invalid_argument otherwise.
ExampleId parse_example_id(std::string_view s);
std::string to_string(ExampleId id);

// The 6-dim two-step algebra X1..X4, Z1, Z2 with orthonormal basis.
LieAlgebra base_algebra();
Derivation example_S();
Derivation example_A();
TwoForm example_omega(ExampleId id);

struct BundledExample {
  ExampleId id = ExampleId::I;
  LieAlgebra base;
  TwoForm omega;
  Derivation generator;                      // D = S (+ A)
  Derivation skew;                           // S
  std::optional<Derivation> almost_inner;    // A
  std::vector<std::string> dual_names;       // a1..a4 z1 z2 xi
};

BundledExample bundled_example(ExampleId id);

// Reference data for the bundled examples, typed in from the published tables.
namespace golden {

struct BracketEntry {
  std::string_view left, right, value;  // value over X1..X4, Z1, Z2, Z
};
std::vector<BracketEntry> extended_brackets(ExampleId id);

// Row U in X1..X4, column mu in a1..xi; entries over the dual names.
using ConnectionRows = std::array<std::array<std::string_view, 7>, 4>;
const ConnectionRows& connection_table(ExampleId id);

// Row l = Delta of the l-th dual basis vector.
QMatrix laplacian(ExampleId id);

// Symbols N (= p^2 |tau|^2), A1..A4, p, i.
using ETauTemplate = std::array<std::array<std::string_view, 7>, 7>;
const ETauTemplate& etau_template(ExampleId id);

// Image of the generator on the extended algebra (S hat / D hat).
Derivation extended_generator(ExampleId id);
TrigMatrix flow(ExampleId id);
std::vector<TrigVec> deformed_basis(ExampleId id);

// A_i(s) for a character with integer coordinates a.
TrigVec pulled_coordinates(const std::array<int, 4>& a);

}  // namespace golden

// Coordinates of a linear combination over the given names; throws on unknown
// names, constants, or non-rational coefficients.
QVec rational_coordinates(const LinearCombination& lc, const std::vector<std::string>& names);

// Substitutes symbol values into a combination: sum coeff * value[name].
TrigPoly substitute(const LinearCombination& lc, const std::vector<std::string>& names, const TrigVec& values);

}  // namespace nilspec
