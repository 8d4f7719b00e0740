#include "nilspec/pi_poly.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace nilspec {

PiPoly::PiPoly(GaussRational c) {
  if (!c.is_zero()) terms_.emplace_back(0, std::move(c));
}

PiPoly PiPoly::monomial(int degree, GaussRational c) {
  PiPoly r;
  if (degree < 0) throw std::invalid_argument("PiPoly: negative degree");
  if (!c.is_zero()) r.terms_.emplace_back(degree, std::move(c));
  return r;
}

PiPoly PiPoly::from_terms(std::vector<Term> terms) {
  std::map<int, GaussRational> acc;
  for (auto& [d, c] : terms) {
    if (d < 0) throw std::invalid_argument("PiPoly: negative degree");
    acc[d] += c;
  }
  PiPoly r;
  for (auto& [d, c] : acc) {
    if (!c.is_zero()) r.terms_.emplace_back(d, std::move(c));
  }
  return r;
}

GaussRational PiPoly::coeff(int degree) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), degree,
                             [](const Term& t, int d) { return t.first < d; });
  if (it != terms_.end() && it->first == degree) return it->second;
  return {};
}

bool PiPoly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

PiPoly PiPoly::conj() const {
  PiPoly r = *this;
  for (auto& t : r.terms_) t.second = t.second.conj();
  return r;
}

PiPoly PiPoly::real_part() const {
  PiPoly r;
  for (const auto& [d, c] : terms_) {
    if (!c.re.is_zero()) r.terms_.emplace_back(d, GaussRational(c.re));
  }
  return r;
}

PiPoly PiPoly::imag_part() const {
  PiPoly r;
  for (const auto& [d, c] : terms_) {
    if (!c.im.is_zero()) r.terms_.emplace_back(d, GaussRational(c.im));
  }
  return r;
}

PiPoly PiPoly::operator-() const {
  PiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <class Op>
std::vector<PiPoly::Term> merge(const std::vector<PiPoly::Term>& a, const std::vector<PiPoly::Term>& b, Op op) {
  std::vector<PiPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, op(GaussRational(), j->second));
      ++j;
    } else {
      GaussRational c = op(i->second, j->second);
      if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

PiPoly& PiPoly::operator+=(const PiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, [](const GaussRational& x, const GaussRational& y) { return x + y; });
  return *this;
}

PiPoly& PiPoly::operator-=(const PiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, [](const GaussRational& x, const GaussRational& y) { return x - y; });
  return *this;
}

PiPoly operator*(const PiPoly& a, const PiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  int deg = a.degree() + b.degree();
  std::vector<GaussRational> acc(static_cast<std::size_t>(deg) + 1);
  for (const auto& [da, ca] : a.terms_) {
    for (const auto& [db, cb] : b.terms_) acc[static_cast<std::size_t>(da + db)] += ca * cb;
  }
  PiPoly r;
  for (int d = 0; d <= deg; ++d) {
    if (!acc[static_cast<std::size_t>(d)].is_zero()) r.terms_.emplace_back(d, std::move(acc[static_cast<std::size_t>(d)]));
  }
  return r;
}

PiPoly& PiPoly::operator*=(const PiPoly& o) { return *this = *this * o; }

PiPoly& PiPoly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

std::string PiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [d, c] = *it;
    std::string cs;
    bool negative = false;
    if (c.is_real()) {
      negative = c.re.sign() < 0;
      cs = (negative ? -c.re : c.re).str();
    } else if (c.re.is_zero()) {
      negative = c.im.sign() < 0;
      Rational m = negative ? -c.im : c.im;
      cs = m.is_one() ? "i" : m.str() + "i";
    } else {
      cs = "(" + c.str() + ")";
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (d == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << "p";
      if (d > 1) os << "^" << d;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PiPoly& p) { return os << p.str(); }

}  // namespace nilspec
