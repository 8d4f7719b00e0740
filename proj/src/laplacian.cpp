#include "nilspec/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace nilspec {

ConnectionTable koszul(const LieAlgebra& g) {
  const int n = g.dim();
  auto ginv = inverse(g.metric());
  if (!ginv) throw std::invalid_argument("koszul: metric is singular");
  ConnectionTable t{n, {}};
  t.coeffs.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // lower[k] = <nabla_i E_j, E_k>
      QVec lower(static_cast<std::size_t>(n));
      auto ei = g.basis_vector(i), ej = g.basis_vector(j);
      for (int k = 0; k < n; ++k) {
        auto ek = g.basis_vector(k);
        Rational v = g.inner(g.structure(i, j), ek) - g.inner(g.structure(j, k), ei) + g.inner(g.structure(k, i), ej);
        lower[static_cast<std::size_t>(k)] = v / Rational(2);
      }
      t.coeffs.push_back(*ginv * lower);
    }
  }
  return t;
}

Covector nabla_oneform(const ConnectionTable& t, int i, const Covector& mu) {
  Covector out(static_cast<std::size_t>(t.dim));
  for (int k = 0; k < t.dim; ++k) out[static_cast<std::size_t>(k)] = -dot(mu, t.at(i, k));
  return out;
}

QMatrix nabla_matrix(const ConnectionTable& t, int i) {
  QMatrix m(t.dim, t.dim);
  for (int l = 0; l < t.dim; ++l) {
    Covector r = nabla_oneform(t, i, dual_basis_vector(t.dim, l));
    for (int k = 0; k < t.dim; ++k) m(l, k) = r[static_cast<std::size_t>(k)];
  }
  return m;
}

TwoForm nabla_twoform(const ConnectionTable& t, int i, const TwoForm& sigma) {
  const int n = t.dim;
  // -sigma(nabla A, B) - sigma(A, nabla B); with Gamma_i[k][a] = (nabla_i E_a)_k
  QMatrix gam(n, n);
  for (int a = 0; a < n; ++a) gam.set_col(a, t.at(i, a));
  QMatrix m = gam.transpose() * sigma.matrix + sigma.matrix * gam;
  return TwoForm(-m);
}

Covector codifferential(const LieAlgebra& g, const ConnectionTable& t, const TwoForm& sigma) {
  const int n = g.dim();
  auto ginv = *inverse(g.metric());
  Covector out(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    TwoForm ns = nabla_twoform(t, a, sigma);
    for (int b = 0; b < n; ++b) {
      if (ginv(a, b).is_zero()) continue;
      for (int x = 0; x < n; ++x) out[static_cast<std::size_t>(x)] -= ginv(a, b) * ns.matrix(b, x);
    }
  }
  return out;
}

Rational codifferential(const LieAlgebra& g, const ConnectionTable& t, const Covector& mu) {
  const int n = g.dim();
  auto ginv = *inverse(g.metric());
  Rational out;
  for (int a = 0; a < n; ++a) {
    Covector nm = nabla_oneform(t, a, mu);
    for (int b = 0; b < n; ++b) out -= ginv(a, b) * nm[static_cast<std::size_t>(b)];
  }
  return out;
}

QMatrix hodge_laplacian_invariant(const LieAlgebra& g) {
  const int n = g.dim();
  ConnectionTable t = koszul(g);
  QMatrix m(n, n);
  for (int l = 0; l < n; ++l) {
    Covector mu = dual_basis_vector(n, l);
    // d(delta mu) vanishes: delta mu is a constant function
    (void)codifferential(g, t, mu);
    Covector row = codifferential(g, t, d_oneform(g, mu));
    for (int k = 0; k < n; ++k) m(l, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

bool is_character(const LieAlgebra& g, const Covector& tau) {
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i + 1; j < g.dim(); ++j) {
      if (!dot(tau, g.structure(i, j)).is_zero()) return false;
    }
  }
  return true;
}

PiPoly function_eigenvalue(const LieAlgebra& g, const Covector& tau) {
  if (!is_character(g, tau)) throw std::invalid_argument("function_eigenvalue: tau does not vanish on [g, g]");
  auto ginv = *inverse(g.metric());
  return PiPoly::monomial(2, GaussRational(dot(tau, ginv * tau)));
}

ETauParts etau_parts(const LieAlgebra& g) {
  ETauParts p;
  p.laplacian = hodge_laplacian_invariant(g);
  ConnectionTable t = koszul(g);
  for (int j = 0; j < g.dim(); ++j) p.nabla.push_back(nabla_matrix(t, j));
  p.dual_metric = *inverse(g.metric());
  p.derived = derived_series(g).front();
  return p;
}

TrigPoly dual_norm2(const QMatrix& dual_metric, const TrigVec& tau) {
  const int n = dual_metric.rows();
  TrigPoly acc;
  for (int a = 0; a < n; ++a) {
    if (tau[static_cast<std::size_t>(a)].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (dual_metric(a, b).is_zero() || tau[static_cast<std::size_t>(b)].is_zero()) continue;
      acc += tau[static_cast<std::size_t>(a)] * tau[static_cast<std::size_t>(b)] * PiPoly(dual_metric(a, b));
    }
  }
  return acc;
}

TrigMatrix e_tau(const ETauParts& parts, const TrigVec& tau) {
  const int n = parts.laplacian.rows();
  if (static_cast<int>(tau.size()) != n) throw std::invalid_argument("e_tau: dimension mismatch");
  // tau must kill [g, g]
  for (const auto& v : parts.derived.basis()) {
    TrigPoly val;
    for (int k = 0; k < n; ++k) {
      if (!v[static_cast<std::size_t>(k)].is_zero()) val += tau[static_cast<std::size_t>(k)] * PiPoly(v[static_cast<std::size_t>(k)]);
    }
    if (!val.is_zero()) throw std::invalid_argument("e_tau: tau is not a character");
  }
  TrigMatrix e = to_trig(parts.laplacian);
  TrigPoly norm = dual_norm2(parts.dual_metric, tau) * PiPoly::monomial(2);
  for (int i = 0; i < n; ++i) e(i, i) += norm;
  const PiPoly factor = PiPoly::monomial(1, GaussRational(Rational(0), Rational(-2)));  // -2 p i
  for (int b = 0; b < n; ++b) {
    TrigPoly w;
    for (int a = 0; a < n; ++a) {
      if (!parts.dual_metric(b, a).is_zero()) w += tau[static_cast<std::size_t>(a)] * PiPoly(parts.dual_metric(b, a));
    }
    if (w.is_zero()) continue;
    w *= factor;
    const QMatrix& c = parts.nabla[static_cast<std::size_t>(b)];
    for (int l = 0; l < n; ++l) {
      for (int k = 0; k < n; ++k) {
        if (!c(l, k).is_zero()) e(l, k) += w * PiPoly(c(l, k));
      }
    }
  }
  return e;
}

TrigMatrix e_tau(const LieAlgebra& g, const TrigVec& tau) { return e_tau(etau_parts(g), tau); }

std::vector<TrigPoly> char_poly(const TrigMatrix& e) {
  const int n = e.rows();
  if (e.cols() != n) throw std::invalid_argument("char_poly: matrix not square");
  if (n == 0) return {TrigPoly(1)};
  // Work with A = E - cI (c = E(0,0)) so the diagonal is lighter, then
  // re-expand Q(x - c).
  const TrigPoly c = e(0, 0);
  TrigMatrix a = e;
  for (int i = 0; i < n; ++i) a(i, i) -= c;

  // Faddeev-LeVerrier: q[k] is the coefficient of y^{n-k}
  std::vector<TrigPoly> q(static_cast<std::size_t>(n) + 1);
  q[0] = TrigPoly(1);
  TrigMatrix mk(n, n);
  for (int k = 1; k <= n; ++k) {
    TrigMatrix t = mk;
    for (int i = 0; i < n; ++i) t(i, i) += q[static_cast<std::size_t>(k - 1)];
    mk = a * t;
    TrigPoly tr;
    for (int i = 0; i < n; ++i) tr += mk(i, i);
    q[static_cast<std::size_t>(k)] = tr * PiPoly(Rational(-1, k));
  }

  // P(x) = sum_k q[k] (x - c)^{n-k}
  std::vector<TrigPoly> cpow{TrigPoly(1)};
  for (int k = 1; k <= n; ++k) cpow.push_back(cpow.back() * c);
  std::vector<TrigPoly> p(static_cast<std::size_t>(n) + 1);
  // binomial coefficients
  for (int k = 0; k <= n; ++k) {
    const int m = n - k;
    if (q[static_cast<std::size_t>(k)].is_zero()) continue;
    Rational binom(1);
    for (int j = 0; j <= m; ++j) {
      // (x - c)^m = sum_j C(m, j) x^{m-j} (-c)^j
      TrigPoly term = q[static_cast<std::size_t>(k)] * cpow[static_cast<std::size_t>(j)];
      Rational coef = (j % 2 == 0) ? binom : -binom;
      p[static_cast<std::size_t>(n - (m - j))] += term * PiPoly(coef);
      binom = binom * Rational(m - j) / Rational(j + 1);
    }
  }
  return p;
}

std::vector<double> eigenvalues_numeric(const TrigMatrix& e, double s) {
  Eigen::MatrixXcd m = evaluate(e, s);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::logic_error("eigenvalues_numeric: evaluated matrix is not Hermitian");
  }
  Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalues_numeric: eigensolver failed");
  std::vector<double> out;
  for (int i = 0; i < h.rows(); ++i) {
    const double lam = es.eigenvalues()(i);
    const double res = (h * es.eigenvectors().col(i) - lam * es.eigenvectors().col(i)).norm();
    if (res > 1e-9 * scale) throw std::logic_error("eigenvalues_numeric: residual above tolerance");
    out.push_back(lam);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nilspec
