#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nilspec {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to a GMP rational. The representation is
/// canonical (a value is big only if it does not fit the small form), so
/// structural equality is value equality.
class Rational {
 public:
  Rational() = default;
  Rational(long long n);  // NOLINT(google-explicit-constructor)
  Rational(int n) : Rational(static_cast<long long>(n)) {}  // NOLINT
  Rational(long n) : Rational(static_cast<long long>(n)) {}  // NOLINT
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q);

  /// Parses "n", "-n" or "n/d".
  static Rational parse(std::string_view text);

  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] int sign() const;

  [[nodiscard]] mpq_class to_mpq() const;
  [[nodiscard]] mpz_class numerator() const;
  [[nodiscard]] mpz_class denominator() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] long double to_long_double() const;
  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::size_t hash() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }
  [[nodiscard]] Rational inverse() const;

 private:
  void assign_mpq(const mpq_class& q);
  void set_small(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Element of Q(i).
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRational(int n) : re(n) {}                   // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] bool is_real() const { return im.is_zero(); }
  [[nodiscard]] GaussRational conj() const { return {re, -im}; }
  [[nodiscard]] Rational norm2() const { return re * re + im * im; }
  [[nodiscard]] GaussRational inverse() const;
  [[nodiscard]] std::string str() const;

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inverse(); }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational&, const GaussRational&) = default;
};

std::ostream& operator<<(std::ostream& os, const GaussRational& z);

}  // namespace nilspec

template <>
struct std::hash<nilspec::Rational> {
  std::size_t operator()(const nilspec::Rational& r) const noexcept { return r.hash(); }
};
