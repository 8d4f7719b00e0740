#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nilspec/lattice.hpp"

namespace nilspec {

// Everything about the family exp(sD) on g that does not depend on tau.
struct ConstancyContext {
  LieAlgebra algebra;
  ETauParts parts;
  TrigMatrix phi;
  TrigMatrix phi_inv;
};

ConstancyContext make_constancy_context(const LieAlgebra& g, const Derivation& d);

struct ConstancyReport {
  bool constant = true;
  std::optional<int> witness_coefficient;   // index into coefficients (0 = leading)
  std::optional<TrigPoly::Term> witness_term;
  std::vector<TrigPoly> coefficients;       // P_s, highest degree first
};

ConstancyReport constancy_report(const ConstancyContext& ctx, const Covector& tau);
// a = (a1..a4) on the first four dual basis vectors.
ConstancyReport constancy_report(const ConstancyContext& ctx, const std::array<int, 4>& a);
ConstancyReport constancy_report(const LieAlgebra& g, const Derivation& d, const std::array<int, 4>& a);

// Largest matching distance of the E_{tau_s} eigenvalues against s = 0 over
// the given samples.
double numeric_drift(const ConstancyContext& ctx, const std::array<int, 4>& a, const std::vector<double>& samples);

struct SweepRow {
  std::array<int, 4> a{};
  ConstancyReport report;
};

// All tuples with |a_i| <= bound, lexicographic order.
std::vector<SweepRow> constancy_sweep(const ConstancyContext& ctx, int bound);

}  // namespace nilspec
