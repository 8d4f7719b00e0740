#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilspec/pi_poly.hpp"

namespace nilspec {

enum class TrigKind : unsigned char { Cos = 0, Sin = 1 };

// s^m * cos(k s) or s^m * sin(k s), k >= 0
struct TrigKey {
  int m = 0;
  int k = 0;
  TrigKind kind = TrigKind::Cos;

  friend auto operator<=>(const TrigKey&, const TrigKey&) = default;
  friend bool operator==(const TrigKey&, const TrigKey&) = default;
  [[nodiscard]] std::string str() const;
};

/// Quasi-trigonometric polynomial in s with PiPoly coefficients.
/// Canonical: keys sorted, unique, no zero coefficients, no sin(0 s).
class TrigPoly {
 public:
  using Term = std::pair<TrigKey, PiPoly>;

  TrigPoly() = default;
  TrigPoly(PiPoly c);                                          // NOLINT(google-explicit-constructor)
  TrigPoly(GaussRational c) : TrigPoly(PiPoly(std::move(c))) {}  // NOLINT
  TrigPoly(Rational c) : TrigPoly(PiPoly(std::move(c))) {}       // NOLINT
  TrigPoly(int c) : TrigPoly(PiPoly(c)) {}                       // NOLINT

  // Frequencies may be negative here; they get folded.
  static TrigPoly term(int m, int k, TrigKind kind, PiPoly coeff = PiPoly(1));
  static TrigPoly cos(int k, PiPoly coeff = PiPoly(1)) { return term(0, k, TrigKind::Cos, std::move(coeff)); }
  static TrigPoly sin(int k, PiPoly coeff = PiPoly(1)) { return term(0, k, TrigKind::Sin, std::move(coeff)); }
  static TrigPoly s_power(int m, PiPoly coeff = PiPoly(1)) { return term(m, 0, TrigKind::Cos, std::move(coeff)); }
  static TrigPoly canonicalize(std::vector<Term> terms);

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] PiPoly coeff(const TrigKey& key) const;

  struct Constancy {
    bool constant = true;
    std::optional<Term> witness;
  };
  [[nodiscard]] Constancy is_constant() const;
  // The constant term if the polynomial does not depend on s.
  [[nodiscard]] std::optional<PiPoly> constant_value() const;
  [[nodiscard]] PiPoly at_zero() const;

  [[nodiscard]] TrigPoly derivative() const;
  [[nodiscard]] TrigPoly conj() const;
  // s -> -s
  [[nodiscard]] TrigPoly reflect() const;
  [[nodiscard]] bool is_real() const;
  [[nodiscard]] int max_frequency() const;
  [[nodiscard]] int max_s_power() const;
  [[nodiscard]] std::string str() const;

  TrigPoly operator-() const;
  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(const TrigPoly& o);
  TrigPoly& operator*=(const PiPoly& c);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(TrigPoly a, const PiPoly& c) { return a *= c; }
  friend TrigPoly operator*(const PiPoly& c, TrigPoly a) { return a *= c; }
  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

  template <class T>
  [[nodiscard]] std::complex<T> eval(const T& s, const T& pi) const {
    using std::cos;
    using std::sin;
    using std::pow;
    std::complex<T> acc(T(0), T(0));
    for (const auto& [key, c] : terms_) {
      T f = key.kind == TrigKind::Cos ? T(cos(T(key.k) * s)) : T(sin(T(key.k) * s));
      if (key.m > 0) f *= T(pow(s, key.m));
      acc += c.eval(pi) * f;
    }
    return acc;
  }

 private:
  std::vector<Term> terms_;
};

inline TrigPoly trig_mul(const TrigPoly& a, const TrigPoly& b) { return a * b; }
inline TrigPoly trig_derivative(const TrigPoly& a) { return a.derivative(); }
inline TrigPoly::Constancy trig_is_constant(const TrigPoly& a) { return a.is_constant(); }
template <class T>
std::complex<T> trig_eval(const TrigPoly& a, const T& s, const T& pi) {
  return a.eval(s, pi);
}

std::ostream& operator<<(std::ostream& os, const TrigPoly& t);

}  // namespace nilspec
