#include "nilspec/coord_poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace nilspec {

namespace {

// Monomials of different lengths compare equal when padded with zeros.
CoordPoly::Monomial trimmed(CoordPoly::Monomial m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

}  // namespace

CoordPoly::CoordPoly(Rational c, int /*nvars*/) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

CoordPoly CoordPoly::variable(int index, int nvars) {
  if (index < 0 || index >= nvars) throw std::out_of_range("CoordPoly::variable");
  Monomial m(static_cast<std::size_t>(index) + 1, 0);
  m[static_cast<std::size_t>(index)] = 1;
  CoordPoly p;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

void CoordPoly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  Monomial key = trimmed(m);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int CoordPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

Rational CoordPoly::eval(const std::vector<Rational>& x) const {
  Rational acc;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= x.size()) throw std::out_of_range("CoordPoly::eval: too few coordinates");
      for (int e = 0; e < m[i]; ++e) t *= x[i];
    }
    acc += t;
  }
  return acc;
}

CoordPoly CoordPoly::linear_substitute(const std::vector<std::vector<Rational>>& sub, int m) const {
  std::vector<CoordPoly> images;
  images.reserve(sub.size());
  for (const auto& row : sub) {
    CoordPoly y;
    for (int j = 0; j < m && j < static_cast<int>(row.size()); ++j) {
      if (!row[static_cast<std::size_t>(j)].is_zero()) y += variable(j, m) * row[static_cast<std::size_t>(j)];
    }
    images.push_back(std::move(y));
  }
  CoordPoly out;
  for (const auto& [mono, c] : terms_) {
    CoordPoly t(c);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      if (i >= images.size()) throw std::out_of_range("CoordPoly::linear_substitute");
      for (int e = 0; e < mono[i]; ++e) t *= images[i];
    }
    out += t;
  }
  return out;
}

CoordPoly CoordPoly::operator-() const {
  CoordPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

CoordPoly& CoordPoly::operator+=(const CoordPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CoordPoly& CoordPoly::operator-=(const CoordPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

CoordPoly operator*(const CoordPoly& a, const CoordPoly& b) {
  CoordPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      CoordPoly::Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

CoordPoly& CoordPoly::operator*=(const CoordPoly& o) { return *this = *this * o; }

CoordPoly& CoordPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

bool operator==(const CoordPoly& a, const CoordPoly& b) { return a.terms_ == b.terms_; }

std::string CoordPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool neg = c.sign() < 0;
    Rational a = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (any) mono << "*";
      mono << "x" << i + 1;
      if (m[i] > 1) mono << "^" << m[i];
      any = true;
    }
    if (!any) {
      os << a;
    } else if (a.is_one()) {
      os << mono.str();
    } else {
      os << a << "*" << mono.str();
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CoordPoly& p) { return os << p.str(); }

}  // namespace nilspec
