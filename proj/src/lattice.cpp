#include "nilspec/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gmpxx.h>

namespace nilspec {

QVec bch(const LieAlgebra& g, const QVec& x, const QVec& y) {
  if (nilpotency_step(g) > 3) throw std::domain_error("bch: only step <= 3 is supported");
  QVec xy = g.bracket(x, y);
  QVec out = add(add(x, y), scale(xy, Rational(1, 2)));
  out = add(out, scale(g.bracket(x, xy), Rational(1, 12)));
  out = add(out, scale(g.bracket(y, g.bracket(y, x)), Rational(1, 12)));
  return out;
}

namespace {

// Row-style HNF of an integer matrix; zero rows dropped.
std::vector<std::vector<mpz_class>> hnf(std::vector<std::vector<mpz_class>> rows, int cols) {
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c among rows r..end
    while (true) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] != 0 && (piv == rows.size() || abs(rows[i][c]) < abs(rows[piv][c]))) piv = i;
      }
      if (piv == rows.size()) break;
      std::swap(rows[r], rows[piv]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (int k = 0; k < cols; ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0) {
        for (auto& x : rows[r]) x = -x;
      }
      // reduce the entries above the pivot into [0, pivot)
      for (std::size_t i = 0; i < r; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        if (q != 0) {
          for (int k = 0; k < cols; ++k) rows[i][k] -= q * rows[r][k];
        }
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

mpz_class common_denominator(const std::vector<QVec>& vs) {
  mpz_class d = 1;
  for (const auto& v : vs) {
    for (const auto& x : v) {
      mpz_class q = x.denominator();
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t());
    }
  }
  return d;
}

}  // namespace

LatticeBasis LatticeBasis::span(const std::vector<QVec>& generators, int ambient) {
  LatticeBasis l;
  l.ambient_ = ambient;
  mpz_class den = common_denominator(generators);
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& v : generators) {
    if (static_cast<int>(v.size()) != ambient) throw std::invalid_argument("LatticeBasis: dimension mismatch");
    std::vector<mpz_class> row;
    for (const auto& x : v) {
      mpq_class q = x.to_mpq() * den;
      row.push_back(q.get_num());
    }
    rows.push_back(std::move(row));
  }
  for (const auto& row : hnf(std::move(rows), ambient)) {
    QVec v;
    for (const auto& x : row) v.emplace_back(mpq_class(x, den));
    l.basis_.push_back(std::move(v));
  }
  return l;
}

bool LatticeBasis::contains(const QVec& v) const {
  auto vs = basis_;
  vs.push_back(v);
  return LatticeBasis::span(vs, ambient_) == *this;
}

DefaultLattice default_lattice(const LieAlgebra& g) {
  const int n = g.dim();
  std::vector<QVec> gens;
  for (int i = 0; i < n; ++i) gens.push_back(g.basis_vector(i));
  DefaultLattice out;
  LatticeBasis base = LatticeBasis::span(gens, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      QVec p = bch(g, g.basis_vector(i), g.basis_vector(j));
      if (!base.contains(p)) out.added.push_back(p);
      gens.push_back(std::move(p));
    }
  }
  out.lattice = LatticeBasis::span(gens, n);
  return out;
}

DualLattice character_lattice(const LieAlgebra& g, const LatticeBasis& l) {
  const int n = g.dim();
  // c = annihilator of [g, g]
  std::vector<QVec> brackets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) brackets.push_back(g.structure(i, j));
  DualLattice out;
  if (brackets.empty()) {
    for (int i = 0; i < n; ++i) out.characters.push_back(dual_basis_vector(n, i));
  } else {
    out.characters = nullspace(QMatrix::from_rows(brackets));
  }
  const int r = static_cast<int>(out.characters.size());
  if (r == 0) return out;
  // pairing of generators with the character basis, then its lattice in Q^r
  std::vector<QVec> proj;
  for (const auto& v : l.basis()) {
    QVec row;
    for (const auto& c : out.characters) row.push_back(dot(c, v));
    proj.push_back(std::move(row));
  }
  LatticeBasis pl = LatticeBasis::span(proj, r);
  if (pl.rank() != r) throw std::invalid_argument("character_lattice: projected lattice is not of full rank");
  auto binv = inverse(QMatrix::from_rows(pl.basis()));
  for (int k = 0; k < r; ++k) {
    Covector tau(static_cast<std::size_t>(n));
    for (int a = 0; a < r; ++a) tau = add(tau, scale(out.characters[static_cast<std::size_t>(a)], (*binv)(a, k)));
    out.generators.push_back(std::move(tau));
  }
  return out;
}

TrigVec pull_character_inv(const LieAlgebra& g, const Covector& tau, const TrigMatrix& phi_inv) {
  const int n = g.dim();
  if (!is_character(g, tau)) throw std::invalid_argument("pull_character: tau is not a character");
  TrigVec out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (!tau[static_cast<std::size_t>(l)].is_zero() && !phi_inv(l, k).is_zero()) {
        out[static_cast<std::size_t>(k)] += phi_inv(l, k) * PiPoly(tau[static_cast<std::size_t>(l)]);
      }
    }
  }
  // tau_s must again kill [g, g]
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      TrigPoly v;
      const QVec& c = g.structure(i, j);
      for (int k = 0; k < n; ++k) {
        if (!c[static_cast<std::size_t>(k)].is_zero()) v += out[static_cast<std::size_t>(k)] * PiPoly(c[static_cast<std::size_t>(k)]);
      }
      if (!v.is_zero()) throw std::logic_error("pull_character: pulled covector is not a character");
    }
  }
  return out;
}

TrigVec pull_character(const LieAlgebra& g, const Covector& tau, const TrigMatrix& phi) {
  return pull_character_inv(g, tau, trig_inverse(phi));
}

TrigPoly norm_invariance(const LieAlgebra& g, const TrigVec& tau_s) {
  return dual_norm2(*inverse(g.metric()), tau_s);
}

std::vector<Covector> enumerate_characters(const LieAlgebra& g, const DualLattice& dual, const Rational& radius) {
  if (radius.sign() < 0) throw std::invalid_argument("enumerate_characters: negative radius");
  const int n = g.dim();
  const int r = static_cast<int>(dual.generators.size());
  if (r == 0) return {Covector(static_cast<std::size_t>(n))};
  QMatrix ginv = *inverse(g.metric());
  // Gram matrix of the generators; |k_a| <= R sqrt((Gram^{-1})_aa)
  QMatrix gram(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      gram(a, b) = dot(dual.generators[static_cast<std::size_t>(a)], ginv * dual.generators[static_cast<std::size_t>(b)]);
  QMatrix gi = *inverse(gram);
  std::vector<long> bound(static_cast<std::size_t>(r));
  double box = 1;
  for (int a = 0; a < r; ++a) {
    bound[static_cast<std::size_t>(a)] = static_cast<long>(std::floor(radius.to_double() * std::sqrt(gi(a, a).to_double()) + 1e-9));
    box *= 2.0 * static_cast<double>(bound[static_cast<std::size_t>(a)]) + 1;
  }
  if (box > 1e5) throw std::length_error("enumerate_characters: search box exceeds 10^5 points");
  const Rational r2 = radius * radius;
  std::vector<Covector> out;
  std::vector<long> k(static_cast<std::size_t>(r));
  for (int a = 0; a < r; ++a) k[static_cast<std::size_t>(a)] = -bound[static_cast<std::size_t>(a)];
  while (true) {
    Covector tau(static_cast<std::size_t>(n));
    for (int a = 0; a < r; ++a) tau = add(tau, scale(dual.generators[static_cast<std::size_t>(a)], Rational(k[static_cast<std::size_t>(a)])));
    if (dot(tau, ginv * tau) <= r2) out.push_back(std::move(tau));
    int a = 0;
    while (a < r && k[static_cast<std::size_t>(a)] == bound[static_cast<std::size_t>(a)]) {
      k[static_cast<std::size_t>(a)] = -bound[static_cast<std::size_t>(a)];
      ++a;
    }
    if (a == r) break;
    ++k[static_cast<std::size_t>(a)];
  }
  return out;
}

double matching_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("matching_distance: sizes differ");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

SpectrumReport spectrum_compare(const LieAlgebra& g, const Derivation& d, const Rational& radius, double s1, double s2) {
  SpectrumReport rep;
  rep.s1 = s1;
  rep.s2 = s2;
  rep.radius = radius;
  rep.limitation =
      "sub-spectrum certificate: only characters of the default lattice and the E_tau blocks are compared; "
      "multiplicities and the rest of the spectrum are not computed";
  TrigMatrix phi = exp_derivation(d);
  TrigMatrix phi_inv = trig_inverse(phi);
  ETauParts parts = etau_parts(g);
  DualLattice dual = character_lattice(g, default_lattice(g).lattice);
  const double p2 = 4.0 * std::acos(-1.0) * std::acos(-1.0);

  std::vector<double> f1, f2, u1, u2;
  rep.functions_exact = true;
  for (const auto& tau : enumerate_characters(g, dual, radius)) {
    SpectrumRow row;
    row.tau = tau;
    TrigVec ts = pull_character_inv(g, tau, phi_inv);
    row.norm2 = norm_invariance(g, ts);
    if (!row.norm2.is_constant().constant) rep.functions_exact = false;
    f1.push_back(p2 * row.norm2.eval<double>(s1, std::acos(-1.0)).real());
    f2.push_back(p2 * row.norm2.eval<double>(s2, std::acos(-1.0)).real());
    TrigMatrix e = e_tau(parts, ts);
    row.first = eigenvalues_numeric(e, s1);
    row.second = eigenvalues_numeric(e, s2);
    row.distance = matching_distance(row.first, row.second);
    rep.max_oneform_distance = std::max(rep.max_oneform_distance, row.distance);
    u1.insert(u1.end(), row.first.begin(), row.first.end());
    u2.insert(u2.end(), row.second.begin(), row.second.end());
    rep.rows.push_back(std::move(row));
  }
  rep.function_distance = matching_distance(f1, f2);
  // exact when every norm is constant in s: then the multisets coincide term by term
  rep.functions_equal = rep.functions_exact || rep.function_distance < 1e-9;
  rep.union_oneform_distance = matching_distance(u1, u2);
  return rep;
}

}  // namespace nilspec
