#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "nilspec/forms.hpp"
#include "nilspec/trig_poly.hpp"

namespace nilspec {

using TrigMatrix = Matrix<TrigPoly>;
using TrigVec = Vec<TrigPoly>;

class SpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

TrigMatrix to_trig(const QMatrix& m);

// Univariate polynomials over Q, coefficients lowest degree first.
using QPoly = std::vector<Rational>;
QPoly char_poly_rational(const QMatrix& m);

// exp(sD) in closed form. Requires every eigenvalue of D to be i*k with k an
// integer; throws SpectrumError otherwise (use exp_numeric instead).
TrigMatrix exp_derivation(const Derivation& d);

struct JordanChevalley {
  QMatrix semisimple;
  QMatrix nilpotent;
  std::vector<int> frequencies;  // k with i*k a root of the squarefree part
};
JordanChevalley jordan_chevalley(const QMatrix& d);

Eigen::MatrixXd exp_numeric(const Derivation& d, double s);
Eigen::MatrixXcd evaluate(const TrigMatrix& m, double s);

bool verify_flow(const TrigMatrix& phi, const Derivation& d);
bool is_automorphism_family(const LieAlgebra& g, const TrigMatrix& phi);
TrigVec trig_bracket(const LieAlgebra& g, const TrigVec& x, const TrigVec& y);

TrigPoly trig_det(const TrigMatrix& m);
// Adjugate over det; the determinant must be a nonzero rational constant.
TrigMatrix trig_inverse(const TrigMatrix& m);

struct OrthogonalFactor {
  TrigMatrix upsilon;
  TrigMatrix psi;
};

// Phi = Upsilon * Psi with Upsilon the block-diagonal part of Phi for the
// orthogonal decomposition along the lower central series and Psi unipotent.
// Throws std::domain_error when the diagonal blocks are not orthogonal.
OrthogonalFactor factor_orthogonal(const TrigMatrix& phi, const LieAlgebra& g);

// Columns of Psi^{-1}: the basis that is orthonormal for Phi_s^* g.
std::vector<TrigVec> deformed_basis(const OrthogonalFactor& f);

}  // namespace nilspec
