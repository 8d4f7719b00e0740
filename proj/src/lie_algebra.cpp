#include "nilspec/lie_algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace nilspec {

// ---- Subspace

Subspace Subspace::span(const std::vector<QVec>& vectors, int ambient) {
  Subspace s(ambient);
  if (vectors.empty()) return s;
  QMatrix m(static_cast<int>(vectors.size()), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<int>(vectors[i].size()) != ambient) throw std::invalid_argument("Subspace: vector length mismatch");
    for (int j = 0; j < ambient; ++j) m(static_cast<int>(i), j) = vectors[i][static_cast<std::size_t>(j)];
  }
  auto e = rref(std::move(m));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.basis_.push_back(e.reduced.row(static_cast<int>(r)));
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::whole(int ambient) {
  std::vector<QVec> b;
  for (int i = 0; i < ambient; ++i) b.push_back(unit_vec<Rational>(ambient, i));
  return span(b, ambient);
}

bool Subspace::contains(const QVec& v) const {
  if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("Subspace::contains: length mismatch");
  QVec r = v;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    Rational c = r[static_cast<std::size_t>(pivots_[k])];
    if (c.is_zero()) continue;
    for (int j = 0; j < ambient_; ++j) {
      if (!basis_[k][static_cast<std::size_t>(j)].is_zero()) r[static_cast<std::size_t>(j)] -= c * basis_[k][static_cast<std::size_t>(j)];
    }
  }
  return is_zero_vec(r);
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const QVec& v) { return contains(v); });
}

// ---- LieAlgebra

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> names)
    : dim_(dim), names_(std::move(names)), metric_(QMatrix::identity(dim)) {
  if (dim <= 0) throw std::invalid_argument("LieAlgebra: dimension must be positive");
  if (dim > 16) throw std::invalid_argument("LieAlgebra: dimension above 16 not supported");
  if (names_.empty()) {
    for (int i = 0; i < dim; ++i) names_.push_back("E" + std::to_string(i + 1));
  }
  if (static_cast<int>(names_.size()) != dim) throw std::invalid_argument("LieAlgebra: wrong number of basis names");
  c_.assign(static_cast<std::size_t>(dim * dim), zero_vec<Rational>(dim));
}

int LieAlgebra::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown basis element " + name);
  return static_cast<int>(it - names_.begin());
}

bool LieAlgebra::metric_is_identity() const { return metric_ == QMatrix::identity(dim_); }

void LieAlgebra::check_index(int i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("basis index out of range");
}

void LieAlgebra::set_bracket(int i, int j, const QVec& v) {
  if (i == j && !is_zero_vec(v)) throw std::invalid_argument("set_bracket: [E_i, E_i] must vanish");
  set_structure_raw(i, j, v);
  set_structure_raw(j, i, scale(v, Rational(-1)));
}

void LieAlgebra::set_structure_raw(int i, int j, const QVec& v) {
  check_index(i);
  check_index(j);
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("bracket vector has wrong length");
  c_[static_cast<std::size_t>(i * dim_ + j)] = v;
}

void LieAlgebra::set_metric(const QMatrix& g) {
  if (g.rows() != dim_ || g.cols() != dim_) throw std::invalid_argument("metric has wrong shape");
  metric_ = g;
}

const QVec& LieAlgebra::structure(int i, int j) const {
  check_index(i);
  check_index(j);
  return c_[static_cast<std::size_t>(i * dim_ + j)];
}

QVec LieAlgebra::bracket(const QVec& x, const QVec& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_) {
    throw std::invalid_argument("bracket: dimension mismatch");
  }
  QVec out = zero_vec<Rational>(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[static_cast<std::size_t>(j)].is_zero()) continue;
      const QVec& c = c_[static_cast<std::size_t>(i * dim_ + j)];
      Rational w = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      for (int k = 0; k < dim_; ++k) {
        if (!c[static_cast<std::size_t>(k)].is_zero()) out[static_cast<std::size_t>(k)] += w * c[static_cast<std::size_t>(k)];
      }
    }
  }
  return out;
}

QMatrix LieAlgebra::ad(const QVec& x) const {
  QMatrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) m.set_col(j, bracket(x, basis_vector(j)));
  return m;
}

Rational LieAlgebra::inner(const QVec& x, const QVec& y) const { return dot(x, metric_ * y); }

// ---- validation

std::string ValidationReport::str(const LieAlgebra& g) const {
  if (ok()) return "valid";
  std::ostringstream os;
  const auto& n = g.names();
  for (auto [i, j] : antisymmetry) os << "antisymmetry fails for (" << n[static_cast<std::size_t>(i)] << ", " << n[static_cast<std::size_t>(j)] << ")\n";
  for (auto [i, j, k] : jacobi) {
    os << "Jacobi fails for (" << n[static_cast<std::size_t>(i)] << ", " << n[static_cast<std::size_t>(j)] << ", " << n[static_cast<std::size_t>(k)] << ")\n";
  }
  for (const auto& m : metric) os << m << "\n";
  return os.str();
}

ValidationReport validate(const LieAlgebra& g) {
  ValidationReport rep;
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (!is_zero_vec(add(g.structure(i, j), g.structure(j, i)))) rep.antisymmetry.push_back({i, j});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        auto ei = g.basis_vector(i), ej = g.basis_vector(j), ek = g.basis_vector(k);
        QVec s = g.bracket(ei, g.bracket(ej, ek));
        s = add(s, g.bracket(ej, g.bracket(ek, ei)));
        s = add(s, g.bracket(ek, g.bracket(ei, ej)));
        if (!is_zero_vec(s)) rep.jacobi.push_back({i, j, k});
      }
    }
  }
  const QMatrix& m = g.metric();
  if (!(m == m.transpose())) rep.metric.emplace_back("metric is not symmetric");
  for (int k = 1; k <= n; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) idx[static_cast<std::size_t>(t)] = t;
    if (det(submatrix(m, idx, idx)).sign() <= 0) {
      rep.metric.push_back("metric leading minor " + std::to_string(k) + " is not positive");
      break;
    }
  }
  return rep;
}

// ---- series, center

std::vector<Subspace> derived_series(const LieAlgebra& g) {
  const int n = g.dim();
  std::vector<Subspace> out;
  Subspace cur = Subspace::whole(n);
  while (true) {
    std::vector<QVec> gens;
    for (int i = 0; i < n; ++i) {
      for (const auto& b : cur.basis()) gens.push_back(g.bracket(g.basis_vector(i), b));
    }
    Subspace next = Subspace::span(gens, n);
    out.push_back(next);
    if (next.is_zero()) return out;
    if (next == cur) throw std::runtime_error("algebra is not nilpotent: lower central series stabilizes");
    cur = next;
  }
}

int nilpotency_step(const LieAlgebra& g) { return static_cast<int>(derived_series(g).size()); }

Subspace center(const LieAlgebra& g) {
  const int n = g.dim();
  QMatrix stacked(n * n, n);
  for (int i = 0; i < n; ++i) {
    QMatrix a = g.ad(g.basis_vector(i));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) stacked(i * n + r, c) = a(r, c);
    }
  }
  return Subspace::span(nullspace(stacked), n);
}

// ---- generic rank machinery

namespace {

Rational sample_value(int var, int round) {
  // deterministic, spread-out sample points
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  int p = primes[(var + 3 * round) % 20];
  return Rational(p * (round + 1) + var, 1 + var % 3);
}

int max_vars(const Matrix<CoordPoly>& m) {
  int nv = 0;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      for (const auto& [mono, c] : m(i, j).terms()) nv = std::max(nv, static_cast<int>(mono.size()));
    }
  }
  return nv;
}

QMatrix eval_at(const Matrix<CoordPoly>& m, const QVec& y) {
  return m.map([&](const CoordPoly& p) { return p.eval(y); });
}

void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (k > n) return;
  while (true) {
    if (!f(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<int> nonzero_rows(const Matrix<CoordPoly>& m) {
  std::vector<int> r;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) {
        r.push_back(i);
        break;
      }
    }
  }
  return r;
}

std::vector<int> nonzero_cols(const Matrix<CoordPoly>& m) { return nonzero_rows(m.transpose()); }

bool all_minors_vanish(const Matrix<CoordPoly>& m, int k) {
  auto rows = nonzero_rows(m);
  auto cols = nonzero_cols(m);
  if (k > static_cast<int>(rows.size()) || k > static_cast<int>(cols.size())) return true;
  bool vanish = true;
  for_each_subset(static_cast<int>(rows.size()), k, [&](const std::vector<int>& rs) {
    std::vector<int> rr;
    for (int r : rs) rr.push_back(rows[static_cast<std::size_t>(r)]);
    for_each_subset(static_cast<int>(cols.size()), k, [&](const std::vector<int>& cs) {
      std::vector<int> cc;
      for (int c : cs) cc.push_back(cols[static_cast<std::size_t>(c)]);
      if (!det_expand(submatrix(m, rr, cc)).is_zero()) vanish = false;
      return vanish;
    });
    return vanish;
  });
  return vanish;
}

}  // namespace

int generic_rank(const Matrix<CoordPoly>& m) {
  const int nv = max_vars(m);
  int r = 0;
  for (int round = 0; round < 3; ++round) {
    QVec y(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) y[static_cast<std::size_t>(v)] = sample_value(v, round);
    r = std::max(r, rank(eval_at(m, y)));
  }
  // a point value only bounds the rank from below; certify with minors
  while (!all_minors_vanish(m, r + 1)) ++r;
  return r;
}

bool generic_span_contains(const Matrix<CoordPoly>& m, const Vec<CoordPoly>& v) {
  if (static_cast<int>(v.size()) != m.rows()) throw std::invalid_argument("generic_span_contains: length mismatch");
  const int r = generic_rank(m);
  Matrix<CoordPoly> aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = v[static_cast<std::size_t>(i)];
  }
  auto rows = nonzero_rows(aug);
  auto cols = nonzero_cols(m);
  if (r + 1 > static_cast<int>(rows.size())) return true;
  if (is_zero_vec(v)) return true;
  bool ok = true;
  for_each_subset(static_cast<int>(rows.size()), r + 1, [&](const std::vector<int>& rs) {
    std::vector<int> rr;
    for (int x : rs) rr.push_back(rows[static_cast<std::size_t>(x)]);
    for_each_subset(static_cast<int>(cols.size()), r, [&](const std::vector<int>& cs) {
      std::vector<int> cc;
      for (int x : cs) cc.push_back(cols[static_cast<std::size_t>(x)]);
      cc.push_back(m.cols());
      if (!det_expand(submatrix(aug, rr, cc)).is_zero()) ok = false;
      return ok;
    });
    return ok;
  });
  return ok;
}

Matrix<CoordPoly> generic_ad(const LieAlgebra& g, const std::vector<QVec>& basis) {
  const int n = g.dim();
  const int m = static_cast<int>(basis.size());
  Matrix<CoordPoly> out(n, n);
  for (int a = 0; a < m; ++a) {
    CoordPoly y = CoordPoly::variable(a, m);
    for (int j = 0; j < n; ++j) {
      QVec col = g.bracket(basis[static_cast<std::size_t>(a)], g.basis_vector(j));
      for (int l = 0; l < n; ++l) {
        if (!col[static_cast<std::size_t>(l)].is_zero()) out(l, j) += y * col[static_cast<std::size_t>(l)];
      }
    }
  }
  return out;
}

// ---- strict nonsingularity

NonsingularityVerdict is_strictly_nonsingular(const LieAlgebra& g) {
  const int n = g.dim();
  NonsingularityVerdict v;
  Subspace z = center(g);
  if (z.dim() == n) {
    v.value = v.symbolic = v.grid = true;
    v.note = "no noncentral elements";
    return v;
  }

  // symbolic: generic X on each stratum of the lower central filtration
  std::vector<Subspace> strata{Subspace::whole(n)};
  for (const auto& s : derived_series(g)) {
    if (!s.is_zero()) strata.push_back(s);
  }
  v.symbolic = true;
  for (const auto& f : strata) {
    if (z.contains(f)) continue;
    auto m = generic_ad(g, f.basis());
    for (const auto& zb : z.basis()) {
      Vec<CoordPoly> col;
      for (const auto& c : zb) col.emplace_back(c);
      if (!generic_span_contains(m, col)) v.symbolic = false;
    }
  }

  // exhaustive grid {-2..2}^n
  std::vector<QMatrix> ads;
  for (int i = 0; i < n; ++i) ads.push_back(g.ad(g.basis_vector(i)));
  v.grid = true;
  std::vector<int> x(static_cast<std::size_t>(n), -2);
  while (true) {
    QVec xv(x.begin(), x.end());
    if (!z.contains(xv)) {
      QMatrix a(n, n);
      for (int i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)] != 0) {
          QMatrix t = ads[static_cast<std::size_t>(i)];
          a += t.scale(Rational(x[static_cast<std::size_t>(i)]));
        }
      }
      for (const auto& zb : z.basis()) {
        if (!solve(a, zb)) {
          v.grid = false;
          v.witness_x = xv;
          v.witness_z = zb;
          break;
        }
      }
      if (!v.grid) break;
    }
    int i = 0;
    while (i < n && x[static_cast<std::size_t>(i)] == 2) x[static_cast<std::size_t>(i++)] = -2;
    if (i == n) break;
    ++x[static_cast<std::size_t>(i)];
  }

  v.value = v.symbolic && v.grid;
  if (v.symbolic != v.grid) v.note = "symbolic and grid verdicts disagree";
  return v;
}

// ---- quotient

Quotient quotient_with_basis(const LieAlgebra& g) {
  auto series = derived_series(g);
  const int k = static_cast<int>(series.size());
  if (k < 2) throw std::invalid_argument("quotient_algebra: algebra is abelian (1-step), nothing to quotient");
  const int n = g.dim();
  const Subspace& kern = series[static_cast<std::size_t>(k - 2)];

  // orthogonal complement of the last nonzero term, Gram-Schmidt in the metric
  QMatrix cons(kern.dim(), n);
  for (int r = 0; r < kern.dim(); ++r) {
    QVec gb = g.metric() * kern.basis()[static_cast<std::size_t>(r)];
    for (int c = 0; c < n; ++c) cons(r, c) = gb[static_cast<std::size_t>(c)];
  }
  std::vector<QVec> w;
  for (auto v : nullspace(cons)) {
    for (const auto& u : w) v = sub(v, scale(u, g.inner(v, u) / g.inner(u, u)));
    w.push_back(std::move(v));
  }
  const int m = static_cast<int>(w.size());

  // coordinates relative to [w | kern]
  QMatrix frame(n, n);
  for (int a = 0; a < m; ++a) frame.set_col(a, w[static_cast<std::size_t>(a)]);
  for (int b = 0; b < kern.dim(); ++b) frame.set_col(m + b, kern.basis()[static_cast<std::size_t>(b)]);
  auto frame_inv = inverse(frame);
  if (!frame_inv) throw std::logic_error("quotient: complement is not complementary");

  std::vector<std::string> names;
  for (const auto& v : w) {
    int idx = -1;
    for (int i = 0; i < n; ++i) {
      if (v == g.basis_vector(i)) idx = i;
    }
    names.push_back(idx >= 0 ? g.names()[static_cast<std::size_t>(idx)] : "W" + std::to_string(names.size() + 1));
  }
  LieAlgebra q(m, names);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      QVec coords = *frame_inv * g.bracket(w[static_cast<std::size_t>(a)], w[static_cast<std::size_t>(b)]);
      coords.resize(static_cast<std::size_t>(m));
      q.set_bracket(a, b, coords);
    }
  }
  QMatrix gram(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) gram(a, b) = g.inner(w[static_cast<std::size_t>(a)], w[static_cast<std::size_t>(b)]);
  }
  q.set_metric(gram);
  return {std::move(q), QMatrix::from_columns(w), kern};
}

LieAlgebra quotient_algebra(const LieAlgebra& g) { return quotient_with_basis(g).algebra; }

std::string format_vector(const QVec& v, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational& c = v[i];
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
    os << (i < names.size() ? names[i] : "e" + std::to_string(i + 1));
  }
  return first ? "0" : os.str();
}

}  // namespace nilspec
