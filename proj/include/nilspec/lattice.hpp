#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilspec/laplacian.hpp"

namespace nilspec {

// Baker-Campbell-Hausdorff truncated after the third-order terms; exact on
// algebras of step <= 3, throws std::domain_error otherwise.
QVec bch(const LieAlgebra& g, const QVec& x, const QVec& y);

// Z-span of rational vectors, stored as a Hermite normal form basis.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  // Any spanning set; dependent generators are reduced away.
  static LatticeBasis span(const std::vector<QVec>& generators, int ambient);

  [[nodiscard]] int ambient() const { return ambient_; }
  [[nodiscard]] int rank() const { return static_cast<int>(basis_.size()); }
  [[nodiscard]] const std::vector<QVec>& basis() const { return basis_; }
  [[nodiscard]] bool contains(const QVec& v) const;
  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

 private:
  int ambient_ = 0;
  std::vector<QVec> basis_;
};

struct DefaultLattice {
  LatticeBasis lattice;
  std::vector<QVec> added;  // BCH products not already in the integer span
};

// Z-span of the basis, enlarged once by all pairwise BCH products of basis
// vectors (this only refines the [g, g] directions).
DefaultLattice default_lattice(const LieAlgebra& g);

struct DualLattice {
  std::vector<Covector> generators;  // span {tau in c : tau(V) in Z for V in L}
  std::vector<Covector> characters;  // basis of c, the annihilator of [g, g]
};

// Throws std::invalid_argument if L does not project onto a full-rank lattice
// in g / [g, g].
DualLattice character_lattice(const LieAlgebra& g, const LatticeBasis& l);

// tau o Phi^{-1}; the second form takes the inverse family directly.
TrigVec pull_character(const LieAlgebra& g, const Covector& tau, const TrigMatrix& phi);
TrigVec pull_character_inv(const LieAlgebra& g, const Covector& tau, const TrigMatrix& phi_inv);

// |tau_s|^2 in the dual metric.
TrigPoly norm_invariance(const LieAlgebra& g, const TrigVec& tau_s);

// Lattice points sum k_a b_a of the dual lattice with |tau| <= radius.
// Throws std::length_error when the search box exceeds 10^5 points.
std::vector<Covector> enumerate_characters(const LieAlgebra& g, const DualLattice& dual, const Rational& radius);

struct SpectrumRow {
  Covector tau;
  TrigPoly norm2;  // |tau_s|^2
  std::vector<double> first, second;
  double distance = 0;
};

struct SpectrumReport {
  double s1 = 0, s2 = 0;
  Rational radius;
  std::vector<SpectrumRow> rows;
  bool functions_equal = false;
  bool functions_exact = false;  // every |tau_s|^2 constant in s
  double function_distance = 0;
  double max_oneform_distance = 0;    // worst single character
  double union_oneform_distance = 0;  // all eigenvalues pooled
  std::string limitation;
};

// Compares the character part of the function spectrum and the E_tau part of
// the 1-form spectrum of the deformation exp(sD) at s1 and s2.
SpectrumReport spectrum_compare(const LieAlgebra& g, const Derivation& d, const Rational& radius, double s1, double s2);

// Sorted-list matching distance between two multisets of equal size.
double matching_distance(std::vector<double> a, std::vector<double> b);

}  // namespace nilspec
