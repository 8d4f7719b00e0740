#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilspec/lie_algebra.hpp"

namespace nilspec {

// Coefficients in the dual basis of the host algebra.
using Covector = QVec;

struct TwoForm {
  QMatrix matrix;  // omega(E_i, E_j) = matrix(i, j)

  TwoForm() = default;
  explicit TwoForm(int dim) : matrix(dim, dim) {}
  explicit TwoForm(QMatrix m);

  [[nodiscard]] int dim() const { return matrix.rows(); }
  [[nodiscard]] Rational operator()(const QVec& x, const QVec& y) const { return dot(x, matrix * y); }
  [[nodiscard]] bool is_zero() const { return matrix.is_zero(); }
  // Sets omega(E_i, E_j) = c and omega(E_j, E_i) = -c.
  void set(int i, int j, const Rational& c);
  // e.g. "a1^a2 - 2*a3^a4" using the given dual names
  [[nodiscard]] std::string str(const std::vector<std::string>& dual_names) const;

  TwoForm operator-() const { return TwoForm(-matrix); }
  friend TwoForm operator+(const TwoForm& a, const TwoForm& b) { return TwoForm(a.matrix + b.matrix); }
  friend TwoForm operator-(const TwoForm& a, const TwoForm& b) { return TwoForm(a.matrix - b.matrix); }
  friend TwoForm operator*(const Rational& c, const TwoForm& a) {
    QMatrix m = a.matrix;
    return TwoForm(m.scale(c));
  }
  friend bool operator==(const TwoForm&, const TwoForm&) = default;
};

struct Derivation {
  QMatrix matrix;  // column j is the image of E_j

  Derivation() = default;
  explicit Derivation(QMatrix m) : matrix(std::move(m)) {}
  // Throws std::invalid_argument naming a failing pair if Leibniz fails on g.
  static Derivation checked(const LieAlgebra& g, QMatrix m);
  static Derivation inner(const LieAlgebra& g, const QVec& y) { return Derivation(g.ad(y)); }

  [[nodiscard]] int dim() const { return matrix.rows(); }
  [[nodiscard]] QVec apply(const QVec& x) const { return matrix * x; }
  [[nodiscard]] bool is_zero() const { return matrix.is_zero(); }
  // Sets D(E_j) component i.
  void set(int i, int j, const Rational& c) { matrix(i, j) = c; }

  friend Derivation operator+(const Derivation& a, const Derivation& b) { return Derivation(a.matrix + b.matrix); }
  friend Derivation operator-(const Derivation& a, const Derivation& b) { return Derivation(a.matrix - b.matrix); }
  friend bool operator==(const Derivation&, const Derivation&) = default;
};

Covector dual_basis_vector(int dim, int i);
TwoForm wedge(const Covector& a, const Covector& b);
TwoForm d_oneform(const LieAlgebra& g, const Covector& eta);
TwoForm dstar(const Derivation& d, const TwoForm& omega);

// Violated triple (i < j < k) of d omega = 0, if any.
std::optional<std::array<int, 3>> closedness_witness(const LieAlgebra& g, const TwoForm& omega);
bool is_closed(const LieAlgebra& g, const TwoForm& omega);
bool is_nondegenerate(const TwoForm& omega);
std::optional<QVec> kernel_vector(const TwoForm& omega);

// Solves d eta = sigma. Among the solutions returns the one orthogonal (in the
// dual metric) to the covectors killing [g, g].
std::optional<Covector> is_exact(const LieAlgebra& g, const TwoForm& sigma);

// Image of d on g* (spanned by d of each dual basis vector).
std::vector<TwoForm> exact_forms_basis(const LieAlgebra& g);

std::optional<std::array<int, 2>> leibniz_witness(const LieAlgebra& g, const QMatrix& d);
bool is_derivation(const LieAlgebra& g, const QMatrix& d);
bool is_skew(const LieAlgebra& g, const QMatrix& d);
std::optional<QVec> inner_element(const LieAlgebra& g, const QMatrix& d);
// For every X there is Y with D(X) = [Y, X]; decided by bordered minors on
// each stratum of the lower central filtration and on the center, then
// (for dim <= 8) the grid sweep below to catch rank-drop loci.
bool is_almost_inner(const LieAlgebra& g, const QMatrix& d);
// Same question by brute force over X in {-2..2}^dim (oracle / guard).
bool is_almost_inner_on_grid(const LieAlgebra& g, const QMatrix& d);

struct DerivationClass {
  bool is_derivation = false;
  bool is_skew = false;
  std::optional<QVec> inner;
  bool is_almost_inner = false;
};

DerivationClass classify_derivation(const LieAlgebra& g, const Derivation& d);

}  // namespace nilspec
