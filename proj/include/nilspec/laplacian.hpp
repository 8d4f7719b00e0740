#pragma once

#include <vector>

#include "nilspec/deformation.hpp"
#include "nilspec/forms.hpp"

namespace nilspec {

struct ConnectionTable {
  int dim = 0;
  std::vector<QVec> coeffs;  // (i, j) -> nabla_{E_i} E_j

  [[nodiscard]] const QVec& at(int i, int j) const { return coeffs[static_cast<std::size_t>(i * dim + j)]; }
};

ConnectionTable koszul(const LieAlgebra& g);

// (nabla_{E_i} mu)(V) = -mu(nabla_{E_i} V)
Covector nabla_oneform(const ConnectionTable& t, int i, const Covector& mu);
// Row l lists the coefficients of nabla_{E_i} of the l-th dual basis vector.
QMatrix nabla_matrix(const ConnectionTable& t, int i);

// (nabla_{E_i} sigma)(A, B) for an invariant two-form.
TwoForm nabla_twoform(const ConnectionTable& t, int i, const TwoForm& sigma);
// delta sigma(X) = -sum G^{ab} (nabla_{E_a} sigma)(E_b, X)
Covector codifferential(const LieAlgebra& g, const ConnectionTable& t, const TwoForm& sigma);
// delta mu = -sum G^{ab} (nabla_{E_a} mu)(E_b), a constant for invariant mu
Rational codifferential(const LieAlgebra& g, const ConnectionTable& t, const Covector& mu);

// Row l holds the coefficients of Delta applied to the l-th dual basis vector.
QMatrix hodge_laplacian_invariant(const LieAlgebra& g);

bool is_character(const LieAlgebra& g, const Covector& tau);
// p^2 |tau|^2 in the dual metric; throws if tau does not kill [g, g].
PiPoly function_eigenvalue(const LieAlgebra& g, const Covector& tau);

// Cached pieces of E_tau that do not depend on tau.
struct ETauParts {
  QMatrix laplacian;            // M_Delta
  std::vector<QMatrix> nabla;   // C_j
  QMatrix dual_metric;          // G^{-1}
  Subspace derived;             // [g, g]
};
ETauParts etau_parts(const LieAlgebra& g);

// E_tau = p^2 |tau|^2 I + M_Delta - 2 p i sum_b (G^{-1} tau)_b C_b, row-as-input.
TrigMatrix e_tau(const LieAlgebra& g, const TrigVec& tau);
TrigMatrix e_tau(const ETauParts& parts, const TrigVec& tau);
// |tau|^2 in the dual metric as a TrigPoly.
TrigPoly dual_norm2(const QMatrix& dual_metric, const TrigVec& tau);

// det(xI - E) coefficients, highest degree first (leading 1).
std::vector<TrigPoly> char_poly(const TrigMatrix& e);

// Sorted eigenvalues of the Hermitian evaluation at s.
std::vector<double> eigenvalues_numeric(const TrigMatrix& e, double s);

}  // namespace nilspec
