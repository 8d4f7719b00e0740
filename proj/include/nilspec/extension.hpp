#pragma once

#include <optional>
#include <string>

#include "nilspec/forms.hpp"

namespace nilspec {

struct ExtensionResult {
  LieAlgebra extended;
  int central_index = 0;
  QMatrix embedding;  // (n+1) x n, g-coordinates -> extended coordinates
  NonsingularityVerdict nonsingular;
};

// g (+) R Z with [X, Y]^ = ([X, Y], omega(X, Y) Z); Z unit and orthogonal to g.
ExtensionResult extend_algebra(const LieAlgebra& g, const TwoForm& omega, const std::string& central_name = "Z");

struct ExtendedDerivation {
  Derivation hat;
  Covector eta;
};

// D^(X) = (D X, -eta(X) Z), D^(Z) = 0 where D* omega = d eta. Empty when
// D* omega is not exact. Throws if D is not a derivation of g.
std::optional<ExtendedDerivation> extend_derivation(const LieAlgebra& g, const TwoForm& omega, const Derivation& d);

enum class GeneratorClass { Trivial, GordonWilson, Beyond };
std::string to_string(GeneratorClass c);

struct GeneratorReport {
  GeneratorClass cls = GeneratorClass::Beyond;
  Derivation skew;
  Derivation almost_inner;
  TwoForm skew_star_omega;
  bool almost_inner_is_inner = false;
};

// Orthogonal projection (Frobenius inner product) onto the skew derivations.
Derivation skew_projection(const LieAlgebra& g, const Derivation& d);

// D = S + A with S skew and A almost inner. Without an explicit split the
// skew part is skew_projection(g, D). Throws std::domain_error when the
// remainder is not almost inner.
GeneratorReport classify_deformation_generator(const LieAlgebra& g, const TwoForm& omega, const Derivation& d,
                                               const std::optional<Derivation>& skew_part = std::nullopt);

}  // namespace nilspec
