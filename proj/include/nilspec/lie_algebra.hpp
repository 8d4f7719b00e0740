#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilspec/coord_poly.hpp"
#include "nilspec/matrix.hpp"
#include "nilspec/rational.hpp"

namespace nilspec {

using QVec = Vec<Rational>;
using QMatrix = Matrix<Rational>;

/// Linear subspace of Q^n, stored as the nonzero rows of a reduced echelon form.
class Subspace {
 public:
  explicit Subspace(int ambient = 0) : ambient_(ambient) {}
  static Subspace span(const std::vector<QVec>& vectors, int ambient);
  static Subspace whole(int ambient);

  [[nodiscard]] int ambient() const { return ambient_; }
  [[nodiscard]] int dim() const { return static_cast<int>(basis_.size()); }
  [[nodiscard]] bool is_zero() const { return basis_.empty(); }
  [[nodiscard]] const std::vector<QVec>& basis() const { return basis_; }
  [[nodiscard]] const std::vector<int>& pivots() const { return pivots_; }
  [[nodiscard]] bool contains(const QVec& v) const;
  [[nodiscard]] bool contains(const Subspace& other) const;
  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  int ambient_ = 0;
  std::vector<QVec> basis_;
  std::vector<int> pivots_;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(int dim, std::vector<std::string> names = {});

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] int index_of(const std::string& name) const;
  [[nodiscard]] const QMatrix& metric() const { return metric_; }
  [[nodiscard]] bool metric_is_identity() const;

  // Sets [E_i, E_j] = v and [E_j, E_i] = -v.
  void set_bracket(int i, int j, const QVec& v);
  // Raw write of one ordered slot (lets tests build non-antisymmetric tables).
  void set_structure_raw(int i, int j, const QVec& v);
  void set_metric(const QMatrix& g);

  [[nodiscard]] const QVec& structure(int i, int j) const;
  [[nodiscard]] QVec bracket(const QVec& x, const QVec& y) const;
  // Column j is [x, E_j].
  [[nodiscard]] QMatrix ad(const QVec& x) const;
  [[nodiscard]] Rational inner(const QVec& x, const QVec& y) const;
  [[nodiscard]] QVec basis_vector(int i) const { return unit_vec<Rational>(dim_, i); }

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  void check_index(int i) const;

  int dim_ = 0;
  std::vector<std::string> names_;
  std::vector<QVec> c_;
  QMatrix metric_;
};

struct ValidationReport {
  std::vector<std::array<int, 2>> antisymmetry;  // (i, j) with c_ij != -c_ji
  std::vector<std::array<int, 3>> jacobi;        // violated triples i < j < k
  std::vector<std::string> metric;               // metric problems
  [[nodiscard]] bool ok() const { return antisymmetry.empty() && jacobi.empty() && metric.empty(); }
  [[nodiscard]] std::string str(const LieAlgebra& g) const;
};

ValidationReport validate(const LieAlgebra& g);

// [g, g], [g, [g, g]], ... ending with the zero subspace. Throws if the
// series stabilizes at a nonzero subspace.
std::vector<Subspace> derived_series(const LieAlgebra& g);
int nilpotency_step(const LieAlgebra& g);
Subspace center(const LieAlgebra& g);

struct NonsingularityVerdict {
  bool value = false;
  bool symbolic = false;     // exact minor test on every stratum
  bool grid = false;         // exhaustive check on {-2..2}^dim
  std::string note;
  std::optional<QVec> witness_x;  // noncentral X whose ad-image misses witness_z
  std::optional<QVec> witness_z;
};

NonsingularityVerdict is_strictly_nonsingular(const LieAlgebra& g);

struct Quotient {
  LieAlgebra algebra;
  // Column a is the ambient vector representing quotient basis element a.
  QMatrix lift;
  Subspace kernel;
};

Quotient quotient_with_basis(const LieAlgebra& g);
LieAlgebra quotient_algebra(const LieAlgebra& g);

// Generic-rank test: true iff for generic y the column v(y) lies in the column
// span of m(y), decided by vanishing of all bordered minors.
bool generic_span_contains(const Matrix<CoordPoly>& m, const Vec<CoordPoly>& v);
int generic_rank(const Matrix<CoordPoly>& m);

// ad of the generic element sum_a y_a b_a (b_a = columns of basis).
Matrix<CoordPoly> generic_ad(const LieAlgebra& g, const std::vector<QVec>& basis);

std::string format_vector(const QVec& v, const std::vector<std::string>& names);

}  // namespace nilspec
