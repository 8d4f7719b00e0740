#include "nilspec/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace nilspec {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  if (a <= std::numeric_limits<std::uint64_t>::max() && b <= std::numeric_limits<std::uint64_t>::max()) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v <= kMax64 && v >= -kMax64; }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n) {
  if (n == std::numeric_limits<long long>::min()) {
    assign_mpq(mpq_class(to_mpz(n)));
  } else {
    num_ = n;
  }
}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  set_small(num, den);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  assign_mpq(c);
}

void Rational::set_small(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (n == 0) d = 1;
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
  } else {
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }
}

void Rational::assign_mpq(const mpq_class& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n != std::numeric_limits<long>::min()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  } else {
    big_ = std::make_shared<const mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) {
      throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

long double Rational::to_long_double() const {
  if (big_) {
    return std::strtold(big_->get_num().get_str().c_str(), nullptr) /
           std::strtold(big_->get_den().get_str().c_str(), nullptr);
  }
  return static_cast<long double>(num_) / static_cast<long double>(den_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str());
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.assign_mpq(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (!big_ && !o.big_) {
    if (den_ == o.den_) {
      set_small(static_cast<i128>(num_) + o.num_, den_);
    } else {
      set_small(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                static_cast<i128>(den_) * o.den_);
    }
    return *this;
  }
  assign_mpq(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (o.is_zero()) return *this;
  if (!big_ && !o.big_) {
    if (den_ == o.den_) {
      set_small(static_cast<i128>(num_) - o.num_, den_);
    } else {
      set_small(static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_,
                static_cast<i128>(den_) * o.den_);
    }
    return *this;
  }
  assign_mpq(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Rational();
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      i128 n = static_cast<i128>(num_) * o.num_;
      if (fits(n)) {
        num_ = static_cast<std::int64_t>(n);
        return *this;
      }
    }
    // Cross-cancel first so the product is already reduced.
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    i128 n = static_cast<i128>(num_ / g1) * (o.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (o.den_ / g1);
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      set_small(n, d);
    }
    return *this;
  }
  assign_mpq(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: division by zero");
  Rational r;
  if (big_) {
    r.assign_mpq(1 / *big_);
  } else {
    r.set_small(den_, num_);
  }
  return r;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

GaussRational GaussRational::inverse() const {
  Rational n = norm2();
  if (n.is_zero()) throw std::domain_error("GaussRational: division by zero");
  return {re / n, -im / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  if (re.is_zero() && o.re.is_zero()) {
    re = -(im * o.im);
    im = Rational();
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string GaussRational::str() const {
  if (im.is_zero()) return re.str();
  std::string imag = im.is_one() ? "i" : (im == Rational(-1) ? "-i" : im.str() + "i");
  if (re.is_zero()) return imag;
  if (imag.front() == '-') return re.str() + imag;
  return re.str() + "+" + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.str(); }

}  // namespace nilspec
