#include "nilspec/extension.hpp"

#include <stdexcept>

namespace nilspec {

ExtensionResult extend_algebra(const LieAlgebra& g, const TwoForm& omega, const std::string& central_name) {
  const int n = g.dim();
  if (omega.dim() != n) throw std::invalid_argument("extend_algebra: two-form dimension mismatch");
  if (auto w = closedness_witness(g, omega)) {
    const auto& nm = g.names();
    throw std::invalid_argument("extend_algebra: omega is not closed; d omega fails on (" + nm[static_cast<std::size_t>((*w)[0])] +
                                ", " + nm[static_cast<std::size_t>((*w)[1])] + ", " + nm[static_cast<std::size_t>((*w)[2])] + ")");
  }
  if (auto k = kernel_vector(omega)) {
    throw std::invalid_argument("extend_algebra: omega is degenerate; kernel contains " + format_vector(*k, g.names()));
  }

  auto names = g.names();
  names.push_back(central_name);
  LieAlgebra h(n + 1, names);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      QVec v = g.structure(i, j);
      v.push_back(omega.matrix(i, j));
      h.set_bracket(i, j, v);
    }
  }
  QMatrix metric(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) metric(i, j) = g.metric()(i, j);
  }
  metric(n, n) = Rational(1);
  h.set_metric(metric);

  auto rep = validate(h);
  if (!rep.ok()) throw std::logic_error("extend_algebra: extension failed validation: " + rep.str(h));

  QMatrix emb(n + 1, n);
  for (int i = 0; i < n; ++i) emb(i, i) = Rational(1);
  ExtensionResult out{std::move(h), n, std::move(emb), {}};
  out.nonsingular = is_strictly_nonsingular(out.extended);
  if (!out.nonsingular.value) throw std::logic_error("extend_algebra: extension is not strictly nonsingular");
  return out;
}

std::optional<ExtendedDerivation> extend_derivation(const LieAlgebra& g, const TwoForm& omega, const Derivation& d) {
  const int n = g.dim();
  if (d.dim() != n) throw std::invalid_argument("extend_derivation: dimension mismatch");
  if (auto w = leibniz_witness(g, d.matrix)) {
    throw std::invalid_argument("extend_derivation: not a derivation of g (Leibniz fails on " + g.names()[static_cast<std::size_t>((*w)[0])] +
                                ", " + g.names()[static_cast<std::size_t>((*w)[1])] + ")");
  }
  auto eta = is_exact(g, dstar(d, omega));
  if (!eta) return std::nullopt;
  QMatrix m(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = d.matrix(i, j);
  }
  for (int j = 0; j < n; ++j) m(n, j) = -(*eta)[static_cast<std::size_t>(j)];
  ExtendedDerivation out{Derivation(std::move(m)), *eta};
  // Leibniz on the extension is what makes D^ useful; re-check it.
  LieAlgebra h(n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      QVec v = g.structure(i, j);
      v.push_back(omega.matrix(i, j));
      h.set_bracket(i, j, v);
    }
  }
  if (!is_derivation(h, out.hat.matrix)) throw std::logic_error("extend_derivation: extended map is not a derivation");
  return out;
}

std::string to_string(GeneratorClass c) {
  switch (c) {
    case GeneratorClass::Trivial:
      return "trivial";
    case GeneratorClass::GordonWilson:
      return "gordon_wilson";
    case GeneratorClass::Beyond:
      return "beyond";
  }
  return "?";
}

Derivation skew_projection(const LieAlgebra& g, const Derivation& d) {
  const int n = g.dim();
  const int nn = n * n;
  // unknown matrix K flattened row-major; Leibniz and K^T G + G K = 0 are linear in K
  std::vector<QVec> rows;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const QVec& cij = g.structure(i, j);
      for (int l = 0; l < n; ++l) {
        QVec row(static_cast<std::size_t>(nn));
        // (K c_ij)_l
        for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(l * n + k)] += cij[static_cast<std::size_t>(k)];
        // -[K E_i, E_j]_l - [E_i, K E_j]_l
        for (int k = 0; k < n; ++k) {
          row[static_cast<std::size_t>(k * n + i)] -= g.structure(k, j)[static_cast<std::size_t>(l)];
          row[static_cast<std::size_t>(k * n + j)] -= g.structure(i, k)[static_cast<std::size_t>(l)];
        }
        rows.push_back(std::move(row));
      }
    }
  }
  const QMatrix& G = g.metric();
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      // sum_k K_ka G_kb + G_ak K_kb
      QVec row(static_cast<std::size_t>(nn));
      for (int k = 0; k < n; ++k) {
        row[static_cast<std::size_t>(k * n + a)] += G(k, b);
        row[static_cast<std::size_t>(k * n + b)] += G(a, k);
      }
      rows.push_back(std::move(row));
    }
  }
  auto basis = nullspace(QMatrix::from_rows(rows));
  if (basis.empty()) return Derivation(QMatrix(n, n));
  const int m = static_cast<int>(basis.size());
  QMatrix gram(m, m);
  QVec rhs(static_cast<std::size_t>(m));
  QVec flat(static_cast<std::size_t>(nn));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i * n + j)] = d.matrix(i, j);
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) gram(a, b) = dot(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)]);
    rhs[static_cast<std::size_t>(a)] = dot(basis[static_cast<std::size_t>(a)], flat);
  }
  auto coef = solve(gram, rhs);
  QVec proj(static_cast<std::size_t>(nn));
  for (int a = 0; a < m; ++a) proj = add(proj, scale(basis[static_cast<std::size_t>(a)], (*coef)[static_cast<std::size_t>(a)]));
  QMatrix k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) k(i, j) = proj[static_cast<std::size_t>(i * n + j)];
  }
  return Derivation(std::move(k));
}

GeneratorReport classify_deformation_generator(const LieAlgebra& g, const TwoForm& omega, const Derivation& d,
                                               const std::optional<Derivation>& skew_part) {
  GeneratorReport r;
  r.skew = skew_part ? *skew_part : skew_projection(g, d);
  if (!is_skew(g, r.skew.matrix) || !is_derivation(g, r.skew.matrix)) {
    throw std::invalid_argument("classify_deformation_generator: supplied skew part is not a skew derivation");
  }
  r.almost_inner = d - r.skew;
  if (!is_derivation(g, r.almost_inner.matrix) || !is_almost_inner(g, r.almost_inner.matrix)) {
    throw std::domain_error("hypotheses unmet: remainder D - S is not almost inner");
  }
  r.almost_inner_is_inner = inner_element(g, r.almost_inner.matrix).has_value();
  r.skew_star_omega = dstar(r.skew, omega);
  if (!r.skew_star_omega.is_zero()) {
    r.cls = GeneratorClass::Beyond;
  } else if (r.almost_inner_is_inner) {
    r.cls = GeneratorClass::Trivial;
  } else {
    r.cls = GeneratorClass::GordonWilson;
  }
  return r;
}

}  // namespace nilspec
