#include "nilspec/deformation.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace nilspec {

TrigMatrix to_trig(const QMatrix& m) {
  return m.map([](const Rational& r) { return TrigPoly(r); });
}

// ---- univariate helpers

namespace {

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

QPoly poly_derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long long>(i)));
  trim(d);
  return d;
}

// quotient and remainder
std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  QPoly q(a.size() - b.size() + 1);
  const Rational lead = b.back();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    Rational c = a[k] / lead;
    q[k - (b.size() - 1)] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k - (b.size() - 1) + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly poly_gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

QMatrix poly_at(const QPoly& p, const QMatrix& m) {
  const int n = m.rows();
  QMatrix acc(n, n);
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = acc * m;
    for (int i = 0; i < n; ++i) acc(i, i) += p[k];
  }
  return acc;
}

GaussRational poly_at(const QPoly& p, const GaussRational& z) {
  GaussRational acc;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + GaussRational(p[k]);
  return acc;
}

}  // namespace

QPoly char_poly_rational(const QMatrix& m) {
  // Faddeev-LeVerrier; returns det(xI - m), lowest degree first
  const int n = m.rows();
  QPoly c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = Rational(1);
  QMatrix mk(n, n);
  for (int k = 1; k <= n; ++k) {
    QMatrix t = mk;
    for (int i = 0; i < n; ++i) t(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    mk = m * t;
    Rational tr;
    for (int i = 0; i < n; ++i) tr += mk(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / Rational(k);
  }
  return c;
}

JordanChevalley jordan_chevalley(const QMatrix& d) {
  const int n = d.rows();
  QPoly chi = char_poly_rational(d);
  QPoly f = poly_divmod(chi, poly_gcd(chi, poly_derivative(chi))).first;
  QPoly fp = poly_derivative(f);

  // roots i*k of f, searched up to the Cauchy bound
  Rational bound(1);
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    Rational r = (f[k] / f.back()).abs() + Rational(1);
    if (bound < r) bound = r;
  }
  long long kmax = static_cast<long long>(std::ceil(bound.to_double())) + 1;
  JordanChevalley jc;
  for (long long k = -kmax; k <= kmax; ++k) {
    if (poly_at(f, GaussRational(Rational(0), Rational(k))).is_zero()) jc.frequencies.push_back(static_cast<int>(k));
  }
  if (static_cast<int>(jc.frequencies.size()) != static_cast<int>(f.size()) - 1) {
    throw SpectrumError("exp_derivation: spectrum is not contained in iZ; use exp_numeric");
  }

  // Newton iteration S <- S - f(S) f'(S)^{-1}
  QMatrix s = d;
  for (int it = 0; it < 64; ++it) {
    QMatrix fs = poly_at(f, s);
    if (fs.is_zero()) break;
    auto inv = inverse(poly_at(fp, s));
    if (!inv) throw std::logic_error("jordan_chevalley: f'(S) singular");
    s = s - fs * *inv;
  }
  if (!poly_at(f, s).is_zero()) throw std::logic_error("jordan_chevalley: Newton iteration did not converge");
  jc.semisimple = s;
  jc.nilpotent = d - s;
  (void)n;
  return jc;
}

TrigMatrix exp_derivation(const Derivation& d) {
  const int n = d.dim();
  auto jc = jordan_chevalley(d.matrix);

  // exp(sS) = sum_k e^{iks} P_k, P_k Lagrange projectors over Q(i)
  Matrix<GaussRational> sg = jc.semisimple.map([](const Rational& r) { return GaussRational(r); });
  TrigMatrix es(n, n);
  for (int k : jc.frequencies) {
    Matrix<GaussRational> p = Matrix<GaussRational>::identity(n);
    GaussRational lk(Rational(0), Rational(k));
    for (int j : jc.frequencies) {
      if (j == k) continue;
      GaussRational lj(Rational(0), Rational(j));
      Matrix<GaussRational> t = sg;
      for (int i = 0; i < n; ++i) t(i, i) -= lj;
      p = p * t;
      p.scale((lk - lj).inverse());
    }
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const GaussRational& z = p(r, c);
        if (z.is_zero()) continue;
        es(r, c) += TrigPoly::cos(k, PiPoly(z)) + TrigPoly::sin(k, PiPoly(z * GaussRational::i()));
      }
    }
  }

  // unipotent part sum_m s^m N^m / m!
  TrigMatrix un = TrigMatrix::identity(n);
  QMatrix nm = QMatrix::identity(n);
  Rational fact(1);
  for (int m = 1; m <= n; ++m) {
    nm = nm * jc.nilpotent;
    if (nm.is_zero()) break;
    fact *= Rational(m);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (!nm(r, c).is_zero()) un(r, c) += TrigPoly::s_power(m, PiPoly(nm(r, c) / fact));
      }
    }
  }
  return es * un;
}

Eigen::MatrixXd exp_numeric(const Derivation& d, double s) {
  const int n = d.dim();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = s * d.matrix(i, j).to_double();
  }
  return a.exp();
}

Eigen::MatrixXcd evaluate(const TrigMatrix& m, double s) {
  const double pi = std::acos(-1.0);
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(s, pi);
  }
  return out;
}

bool verify_flow(const TrigMatrix& phi, const Derivation& d) {
  const int n = phi.rows();
  if (phi.cols() != n || d.dim() != n) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(phi(i, j).at_zero() == PiPoly(i == j ? 1 : 0))) return false;
    }
  }
  TrigMatrix dphi = phi.map([](const TrigPoly& t) { return t.derivative(); });
  return dphi == to_trig(d.matrix) * phi;
}

TrigVec trig_bracket(const LieAlgebra& g, const TrigVec& x, const TrigVec& y) {
  const int n = g.dim();
  TrigVec out(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    if (x[static_cast<std::size_t>(a)].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (y[static_cast<std::size_t>(b)].is_zero()) continue;
      const QVec& c = g.structure(a, b);
      if (is_zero_vec(c)) continue;
      TrigPoly w = x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)];
      for (int k = 0; k < n; ++k) {
        if (!c[static_cast<std::size_t>(k)].is_zero()) out[static_cast<std::size_t>(k)] += w * PiPoly(c[static_cast<std::size_t>(k)]);
      }
    }
  }
  return out;
}

bool is_automorphism_family(const LieAlgebra& g, const TrigMatrix& phi) {
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      TrigVec cij;
      for (const auto& c : g.structure(i, j)) cij.emplace_back(c);
      TrigVec lhs = phi * cij;
      TrigVec rhs = trig_bracket(g, phi.col(i), phi.col(j));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

TrigPoly trig_det(const TrigMatrix& m) { return det_expand(m); }

TrigMatrix trig_inverse(const TrigMatrix& m) {
  const int n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("trig_inverse: matrix not square");
  auto dv = trig_det(m).constant_value();
  if (!dv || dv->is_zero() || !dv->is_constant() || !dv->coeff(0).is_real()) {
    throw std::domain_error("trig_inverse: determinant is not a nonzero rational constant");
  }
  GaussRational inv_det = dv->coeff(0).inverse();
  TrigMatrix out(n, n);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // cofactor C_ji goes to out(i, j)
      std::vector<int> rows, cols;
      for (int r = 0; r < n; ++r) {
        if (r != j) rows.push_back(r);
      }
      for (int c = 0; c < n; ++c) {
        if (c != i) cols.push_back(c);
      }
      TrigPoly cof = det_expand(submatrix(m, rows, cols));
      if ((i + j) % 2 == 1) cof = -cof;
      out(i, j) = cof * PiPoly(inv_det);
    }
  }
  return out;
}

OrthogonalFactor factor_orthogonal(const TrigMatrix& phi, const LieAlgebra& g) {
  const int n = g.dim();
  if (phi.rows() != n || phi.cols() != n) throw std::invalid_argument("factor_orthogonal: shape mismatch");
  const QMatrix& G = g.metric();

  // graded pieces: orthogonal complements along the lower central series
  std::vector<Subspace> chain{Subspace::whole(n)};
  for (const auto& s : derived_series(g)) chain.push_back(s);
  std::vector<QMatrix> projectors;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const Subspace& big = chain[k];
    const Subspace& small = chain[k + 1];
    // vectors of big orthogonal to small: v = B c with small^T G B c = 0
    std::vector<QVec> piece;
    QMatrix bb = QMatrix::from_columns(big.basis());
    if (small.is_zero()) {
      piece = big.basis();
    } else {
      QMatrix cons = QMatrix::from_rows(small.basis()) * G * bb;
      for (const auto& c : nullspace(cons)) piece.push_back(bb * c);
    }
    if (piece.empty()) continue;
    QMatrix b = QMatrix::from_columns(piece);
    auto gram_inv = inverse(b.transpose() * G * b);
    projectors.push_back(b * *gram_inv * b.transpose() * G);
  }

  TrigMatrix upsilon(n, n);
  for (const auto& p : projectors) {
    TrigMatrix tp = to_trig(p);
    upsilon += tp * phi * tp;
  }
  TrigMatrix tg = to_trig(G);
  if (upsilon.transpose() * tg * upsilon != tg) {
    throw std::domain_error("factor_orthogonal: no orthogonal factor of the graded block shape");
  }
  auto ginv = inverse(G);
  TrigMatrix psi = to_trig(*ginv) * upsilon.transpose() * tg * phi;
  // Psi must be unipotent
  TrigMatrix nil = psi - TrigMatrix::identity(n);
  TrigMatrix pw = nil;
  for (int k = 1; k < n && !pw.is_zero(); ++k) pw = pw * nil;
  if (!pw.is_zero()) throw std::domain_error("factor_orthogonal: remaining factor is not unipotent");
  return {std::move(upsilon), std::move(psi)};
}

std::vector<TrigVec> deformed_basis(const OrthogonalFactor& f) {
  const int n = f.psi.rows();
  // Psi = I - N with N nilpotent, so Psi^{-1} = sum N^m
  TrigMatrix nil = TrigMatrix::identity(n) - f.psi;
  TrigMatrix inv = TrigMatrix::identity(n);
  TrigMatrix pw = TrigMatrix::identity(n);
  for (int m = 1; m < n; ++m) {
    pw = pw * nil;
    if (pw.is_zero()) break;
    inv += pw;
  }
  std::vector<TrigVec> out;
  for (int j = 0; j < n; ++j) out.push_back(inv.col(j));
  return out;
}

}  // namespace nilspec
