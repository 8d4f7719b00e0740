#include "nilspec/trig_poly.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace nilspec {

std::string TrigKey::str() const {
  std::string out;
  if (m > 0) out += m == 1 ? "s" : "s^" + std::to_string(m);
  if (k == 0) return out.empty() ? "1" : out;
  if (!out.empty()) out += "*";
  out += kind == TrigKind::Cos ? "cos(" : "sin(";
  if (k != 1) out += std::to_string(k);
  out += "s)";
  return out;
}

TrigPoly::TrigPoly(PiPoly c) {
  if (!c.is_zero()) terms_.emplace_back(TrigKey{}, std::move(c));
}

TrigPoly TrigPoly::term(int m, int k, TrigKind kind, PiPoly coeff) {
  if (m < 0) throw std::invalid_argument("TrigPoly: negative power of s");
  TrigPoly r;
  if (coeff.is_zero()) return r;
  if (k < 0) {
    k = -k;
    if (kind == TrigKind::Sin) coeff = -coeff;
  }
  if (k == 0 && kind == TrigKind::Sin) return r;
  r.terms_.emplace_back(TrigKey{m, k, kind}, std::move(coeff));
  return r;
}

TrigPoly TrigPoly::canonicalize(std::vector<Term> terms) {
  std::map<TrigKey, PiPoly> acc;
  for (auto& [key, c] : terms) {
    TrigPoly t = term(key.m, key.k, key.kind, std::move(c));
    for (auto& [k2, c2] : t.terms_) acc[k2] += c2;
  }
  TrigPoly r;
  for (auto& [key, c] : acc) {
    if (!c.is_zero()) r.terms_.emplace_back(key, std::move(c));
  }
  return r;
}

PiPoly TrigPoly::coeff(const TrigKey& key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, const TrigKey& k) { return t.first < k; });
  if (it != terms_.end() && it->first == key) return it->second;
  return {};
}

TrigPoly::Constancy TrigPoly::is_constant() const {
  for (const auto& t : terms_) {
    if (t.first.m != 0 || t.first.k != 0) return {false, t};
  }
  return {};
}

std::optional<PiPoly> TrigPoly::constant_value() const {
  if (!is_constant().constant) return std::nullopt;
  return terms_.empty() ? PiPoly() : terms_.front().second;
}

PiPoly TrigPoly::at_zero() const {
  PiPoly r;
  for (const auto& [key, c] : terms_) {
    if (key.m == 0 && key.kind == TrigKind::Cos) r += c;
  }
  return r;
}

TrigPoly TrigPoly::derivative() const {
  std::vector<Term> out;
  out.reserve(terms_.size() * 2);
  for (const auto& [key, c] : terms_) {
    if (key.m > 0) out.emplace_back(TrigKey{key.m - 1, key.k, key.kind}, c * GaussRational(key.m));
    if (key.k > 0) {
      if (key.kind == TrigKind::Cos) {
        out.emplace_back(TrigKey{key.m, key.k, TrigKind::Sin}, c * GaussRational(-key.k));
      } else {
        out.emplace_back(TrigKey{key.m, key.k, TrigKind::Cos}, c * GaussRational(key.k));
      }
    }
  }
  return canonicalize(std::move(out));
}

TrigPoly TrigPoly::conj() const {
  TrigPoly r = *this;
  for (auto& t : r.terms_) t.second = t.second.conj();
  return r;
}

TrigPoly TrigPoly::reflect() const {
  TrigPoly r = *this;
  for (auto& [key, c] : r.terms_) {
    bool flip = (key.m % 2 == 1) != (key.kind == TrigKind::Sin);
    if (flip) c = -c;
  }
  return r;
}

bool TrigPoly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.is_real(); });
}

int TrigPoly::max_frequency() const {
  int k = 0;
  for (const auto& t : terms_) k = std::max(k, t.first.k);
  return k;
}

int TrigPoly::max_s_power() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.first.m);
  return m;
}

TrigPoly TrigPoly::operator-() const {
  TrigPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <bool Subtract>
std::vector<TrigPoly::Term> merge(const std::vector<TrigPoly::Term>& a, const std::vector<TrigPoly::Term>& b) {
  std::vector<TrigPoly::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, Subtract ? -j->second : j->second);
      ++j;
    } else {
      PiPoly c = Subtract ? i->second - j->second : i->second + j->second;
      if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  if (!o.terms_.empty()) terms_ = merge<false>(terms_, o.terms_);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  if (!o.terms_.empty()) terms_ = merge<true>(terms_, o.terms_);
  return *this;
}

TrigPoly& TrigPoly::operator*=(const PiPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& [key, x] : terms_) {
    PiPoly y = x * c;
    if (!y.is_zero()) out.emplace_back(key, std::move(y));
  }
  terms_ = std::move(out);
  return *this;
}

TrigPoly& TrigPoly::operator*=(const TrigPoly& o) { return *this = *this * o; }

// Product-to-sum into a dense accumulator indexed by (m, k, kind, p-degree).
// Every product lands with weight 1/2, so doubled values are summed and
// halved once at the end.
TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 && a.terms_[0].first == TrigKey{}) return b * a.terms_[0].second;
  if (b.terms_.size() == 1 && b.terms_[0].first == TrigKey{}) return a * b.terms_[0].second;

  int ma = 0, ka = 0, da = 0, mb = 0, kb = 0, db = 0;
  for (const auto& [key, c] : a.terms_) {
    ma = std::max(ma, key.m);
    ka = std::max(ka, key.k);
    da = std::max(da, c.degree());
  }
  for (const auto& [key, c] : b.terms_) {
    mb = std::max(mb, key.m);
    kb = std::max(kb, key.k);
    db = std::max(db, c.degree());
  }
  const int M = ma + mb + 1, K = ka + kb + 1, D = da + db + 1;
  std::vector<GaussRational> acc(static_cast<std::size_t>(M) * K * 2 * D);
  std::vector<char> touched(static_cast<std::size_t>(M) * K * 2, 0);
  auto slot = [&](int m, int k, TrigKind kind) {
    std::size_t s = (static_cast<std::size_t>(m) * K + k) * 2 + static_cast<std::size_t>(kind);
    touched[s] = 1;
    return s * D;
  };
  auto add = [&](std::size_t base, const PiPoly& x, const PiPoly& y, int sign) {
    for (const auto& [dx, cx] : x.terms()) {
      for (const auto& [dy, cy] : y.terms()) {
        GaussRational prod = cx * cy;
        auto& cell = acc[base + static_cast<std::size_t>(dx + dy)];
        if (sign > 0) {
          cell += prod;
        } else {
          cell -= prod;
        }
      }
    }
  };

  for (const auto& [x, cx] : a.terms_) {
    for (const auto& [y, cy] : b.terms_) {
      const int m = x.m + y.m;
      const int kp = x.k + y.k;
      const int diff = x.k - y.k;
      const int km = diff < 0 ? -diff : diff;
      const int sd = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
      using enum TrigKind;
      if (x.kind == Cos && y.kind == Cos) {
        add(slot(m, kp, Cos), cx, cy, 1);
        add(slot(m, km, Cos), cx, cy, 1);
      } else if (x.kind == Sin && y.kind == Sin) {
        add(slot(m, km, Cos), cx, cy, 1);
        add(slot(m, kp, Cos), cx, cy, -1);
      } else if (x.kind == Sin) {
        // sin(x)cos(y) = (sin(x+y) + sin(x-y)) / 2
        add(slot(m, kp, Sin), cx, cy, 1);
        if (sd != 0) add(slot(m, km, Sin), cx, cy, sd);
      } else {
        // cos(x)sin(y) = (sin(x+y) - sin(x-y)) / 2
        add(slot(m, kp, Sin), cx, cy, 1);
        if (sd != 0) add(slot(m, km, Sin), cx, cy, -sd);
      }
    }
  }

  const GaussRational half(Rational(1, 2));
  TrigPoly r;
  for (int m = 0; m < M; ++m) {
    for (int k = 0; k < K; ++k) {
      for (TrigKind kind : {TrigKind::Cos, TrigKind::Sin}) {
        std::size_t s = (static_cast<std::size_t>(m) * K + k) * 2 + static_cast<std::size_t>(kind);
        if (!touched[s]) continue;
        if (k == 0 && kind == TrigKind::Sin) continue;
        std::vector<PiPoly::Term> pt;
        for (int d = 0; d < D; ++d) {
          auto& cell = acc[s * D + static_cast<std::size_t>(d)];
          if (!cell.is_zero()) pt.emplace_back(d, cell * half);
        }
        if (pt.empty()) continue;
        r.terms_.emplace_back(TrigKey{m, k, kind}, PiPoly::from_sorted(std::move(pt)));
      }
    }
  }
  return r;
}

std::string TrigPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    std::string cs = c.str();
    std::string f = key == TrigKey{} ? std::string() : key.str();
    std::string piece;
    if (f.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = f;
    } else if (cs == "-1") {
      piece = "-" + f;
    } else if (c.terms().size() == 1) {
      piece = cs + "*" + f;
    } else {
      piece = "(" + cs + ")*" + f;
    }
    if (first) {
      os << piece;
    } else if (piece[0] == '-') {
      os << " - " << piece.substr(1);
    } else {
      os << " + " << piece;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TrigPoly& t) { return os << t.str(); }

}  // namespace nilspec
