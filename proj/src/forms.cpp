#include "nilspec/forms.hpp"

#include <sstream>
#include <stdexcept>

namespace nilspec {

TwoForm::TwoForm(QMatrix m) : matrix(std::move(m)) {
  if (!matrix.is_square()) throw std::invalid_argument("TwoForm: matrix not square");
  if (!(matrix == -matrix.transpose())) throw std::invalid_argument("TwoForm: matrix not antisymmetric");
}

void TwoForm::set(int i, int j, const Rational& c) {
  if (i == j && !c.is_zero()) throw std::invalid_argument("TwoForm: diagonal entry must vanish");
  matrix(i, j) = c;
  matrix(j, i) = -c;
}

std::string TwoForm::str(const std::vector<std::string>& dual_names) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    for (int j = i + 1; j < dim(); ++j) {
      const Rational& c = matrix(i, j);
      if (c.is_zero()) continue;
      bool neg = c.sign() < 0;
      Rational a = neg ? -c : c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (!a.is_one()) os << a << "*";
      os << dual_names.at(static_cast<std::size_t>(i)) << "^" << dual_names.at(static_cast<std::size_t>(j));
    }
  }
  return first ? "0" : os.str();
}

Derivation Derivation::checked(const LieAlgebra& g, QMatrix m) {
  if (auto w = leibniz_witness(g, m)) {
    throw std::invalid_argument("not a derivation: Leibniz fails on (" + g.names()[static_cast<std::size_t>((*w)[0])] + ", " +
                                g.names()[static_cast<std::size_t>((*w)[1])] + ")");
  }
  return Derivation(std::move(m));
}

Covector dual_basis_vector(int dim, int i) { return unit_vec<Rational>(dim, i); }

TwoForm wedge(const Covector& a, const Covector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("wedge: dimension mismatch");
  const int n = static_cast<int>(a.size());
  TwoForm w(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      w.set(i, j, a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(i)]);
    }
  }
  return w;
}

TwoForm d_oneform(const LieAlgebra& g, const Covector& eta) {
  if (static_cast<int>(eta.size()) != g.dim()) throw std::invalid_argument("d_oneform: dimension mismatch");
  TwoForm w(g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i + 1; j < g.dim(); ++j) w.set(i, j, -dot(eta, g.structure(i, j)));
  }
  return w;
}

TwoForm dstar(const Derivation& d, const TwoForm& omega) {
  if (d.dim() != omega.dim()) throw std::invalid_argument("dstar: dimension mismatch");
  return TwoForm(d.matrix.transpose() * omega.matrix + omega.matrix * d.matrix);
}

std::optional<std::array<int, 3>> closedness_witness(const LieAlgebra& g, const TwoForm& omega) {
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        auto ei = g.basis_vector(i), ej = g.basis_vector(j), ek = g.basis_vector(k);
        Rational s = omega(g.structure(i, j), ek) + omega(g.structure(j, k), ei) + omega(g.structure(k, i), ej);
        if (!s.is_zero()) return std::array<int, 3>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

bool is_closed(const LieAlgebra& g, const TwoForm& omega) { return !closedness_witness(g, omega); }

bool is_nondegenerate(const TwoForm& omega) { return !det(omega.matrix).is_zero(); }

std::optional<QVec> kernel_vector(const TwoForm& omega) {
  auto ns = nullspace(omega.matrix);
  if (ns.empty()) return std::nullopt;
  return ns.front();
}

std::optional<Covector> is_exact(const LieAlgebra& g, const TwoForm& sigma) {
  const int n = g.dim();
  if (sigma.dim() != n) throw std::invalid_argument("is_exact: dimension mismatch");
  // rows: -eta(c_ij) = sigma_ij for i < j, then <eta, kappa>* = 0 for kappa in ker d
  std::vector<QVec> rows;
  QVec rhs;
  QMatrix brackets(n * (n - 1) / 2, n);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++r) {
      const QVec& c = g.structure(i, j);
      QVec row(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        row[static_cast<std::size_t>(k)] = -c[static_cast<std::size_t>(k)];
        brackets(r, k) = c[static_cast<std::size_t>(k)];
      }
      rows.push_back(row);
      rhs.push_back(sigma.matrix(i, j));
    }
  }
  auto ginv = inverse(g.metric());
  if (!ginv) throw std::invalid_argument("is_exact: metric is singular");
  for (const auto& kappa : nullspace(brackets)) {
    rows.push_back(*ginv * kappa);
    rhs.emplace_back(0);
  }
  return solve(QMatrix::from_rows(rows), rhs);
}

std::vector<TwoForm> exact_forms_basis(const LieAlgebra& g) {
  std::vector<TwoForm> out;
  for (int i = 0; i < g.dim(); ++i) {
    TwoForm f = d_oneform(g, dual_basis_vector(g.dim(), i));
    if (!f.is_zero()) out.push_back(f);
  }
  return out;
}

std::optional<std::array<int, 2>> leibniz_witness(const LieAlgebra& g, const QMatrix& d) {
  const int n = g.dim();
  if (d.rows() != n || d.cols() != n) throw std::invalid_argument("derivation has wrong shape");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto ei = g.basis_vector(i), ej = g.basis_vector(j);
      QVec lhs = d * g.structure(i, j);
      QVec rhs = add(g.bracket(d * ei, ej), g.bracket(ei, d * ej));
      if (!(lhs == rhs)) return std::array<int, 2>{i, j};
    }
  }
  return std::nullopt;
}

bool is_derivation(const LieAlgebra& g, const QMatrix& d) { return !leibniz_witness(g, d); }

bool is_skew(const LieAlgebra& g, const QMatrix& d) {
  QMatrix s = d.transpose() * g.metric() + g.metric() * d;
  return s.is_zero();
}

std::optional<QVec> inner_element(const LieAlgebra& g, const QMatrix& d) {
  const int n = g.dim();
  // ad(Y) = sum_a y_a ad(E_a); flatten to n*n equations in y
  QMatrix sys(n * n, n);
  QVec rhs(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    QMatrix ad = g.ad(g.basis_vector(a));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) sys(i * n + j, a) = ad(i, j);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(i * n + j)] = d(i, j);
  }
  return solve(sys, rhs);
}

bool is_almost_inner(const LieAlgebra& g, const QMatrix& d) {
  const int n = g.dim();
  std::vector<Subspace> strata{Subspace::whole(n)};
  for (const auto& s : derived_series(g)) {
    if (!s.is_zero()) strata.push_back(s);
  }
  strata.push_back(center(g));
  for (const auto& f : strata) {
    if (f.is_zero()) continue;
    const auto& basis = f.basis();
    const int m = static_cast<int>(basis.size());
    // {[Y, X]} = image of ad(X); D(X) must lie in it
    Matrix<CoordPoly> ad = generic_ad(g, basis);
    Vec<CoordPoly> dx(static_cast<std::size_t>(n));
    for (int a = 0; a < m; ++a) {
      QVec img = d * basis[static_cast<std::size_t>(a)];
      CoordPoly y = CoordPoly::variable(a, m);
      for (int l = 0; l < n; ++l) {
        if (!img[static_cast<std::size_t>(l)].is_zero()) dx[static_cast<std::size_t>(l)] += y * img[static_cast<std::size_t>(l)];
      }
    }
    if (!generic_span_contains(ad, dx)) return false;
  }
  // Generic points miss rank drops (X = X1 in H3 x H3); sweep the grid too.
  return n > 8 || is_almost_inner_on_grid(g, d);
}

bool is_almost_inner_on_grid(const LieAlgebra& g, const QMatrix& d) {
  const int n = g.dim();
  std::vector<int> x(static_cast<std::size_t>(n), -2);
  while (true) {
    QVec xv(x.begin(), x.end());
    if (!solve(g.ad(xv), d * xv)) return false;
    int i = 0;
    while (i < n && x[static_cast<std::size_t>(i)] == 2) x[static_cast<std::size_t>(i++)] = -2;
    if (i == n) return true;
    ++x[static_cast<std::size_t>(i)];
  }
}

DerivationClass classify_derivation(const LieAlgebra& g, const Derivation& d) {
  DerivationClass c;
  c.is_derivation = is_derivation(g, d.matrix);
  c.is_skew = is_skew(g, d.matrix);
  c.inner = inner_element(g, d.matrix);
  c.is_almost_inner = c.inner.has_value() || is_almost_inner(g, d.matrix);
  return c;
}

}  // namespace nilspec
