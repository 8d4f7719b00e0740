#pragma once

#include <complex>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "nilspec/rational.hpp"

namespace nilspec {

/// Converts an exact rational to a floating type (double, long double or a
/// multiprecision float constructible from a decimal string).
template <class T>
T to_real(const Rational& r) {
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<T>(r.to_long_double());
  } else {
    return T(r.numerator().get_str()) / T(r.denominator().get_str());
  }
}

/// Polynomial in the transcendental symbol p (which stands for 2*pi) with
/// Gaussian-rational coefficients. Terms are kept sorted by degree with no
/// zero coefficients, so equality is structural.
class PiPoly {
 public:
  using Term = std::pair<int, GaussRational>;

  PiPoly() = default;
  PiPoly(GaussRational c);  // NOLINT(google-explicit-constructor)
  PiPoly(Rational c) : PiPoly(GaussRational(std::move(c))) {}  // NOLINT
  PiPoly(int c) : PiPoly(GaussRational(c)) {}                  // NOLINT

  /// c * p^degree
  static PiPoly monomial(int degree, GaussRational c = GaussRational(1));
  static PiPoly from_terms(std::vector<Term> terms);
  // Caller guarantees strictly increasing degrees and nonzero coefficients.
  static PiPoly from_sorted(std::vector<Term> terms) {
    PiPoly r;
    r.terms_ = std::move(terms);
    return r;
  }

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  [[nodiscard]] int degree() const { return terms_.empty() ? -1 : terms_.back().first; }
  [[nodiscard]] GaussRational coeff(int degree) const;
  [[nodiscard]] bool is_real() const;
  [[nodiscard]] PiPoly conj() const;
  [[nodiscard]] PiPoly real_part() const;
  [[nodiscard]] PiPoly imag_part() const;
  [[nodiscard]] std::string str() const;

  PiPoly operator-() const;
  PiPoly& operator+=(const PiPoly& o);
  PiPoly& operator-=(const PiPoly& o);
  PiPoly& operator*=(const PiPoly& o);
  PiPoly& operator*=(const GaussRational& c);

  friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
  friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
  friend PiPoly operator*(const PiPoly& a, const PiPoly& b);
  friend PiPoly operator*(PiPoly a, const GaussRational& c) { return a *= c; }
  friend bool operator==(const PiPoly&, const PiPoly&) = default;

  /// Value with p = 2*pi.
  template <class T>
  [[nodiscard]] std::complex<T> eval(const T& pi) const {
    const T p = T(2) * pi;
    T re(0), im(0);
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      // Horner over the sparse degrees.
      int next = std::next(it) == terms_.rend() ? 0 : std::next(it)->first;
      re += to_real<T>(it->second.re);
      im += to_real<T>(it->second.im);
      for (int d = it->first; d > next; --d) {
        re *= p;
        im *= p;
      }
    }
    return {re, im};
  }

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const PiPoly& p);

}  // namespace nilspec
