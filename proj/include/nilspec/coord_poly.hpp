#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilspec/rational.hpp"

namespace nilspec {

/// Multivariate polynomial in x_1..x_n over Q. Monomials are exponent
/// vectors of length n kept in a std::map (lexicographic order); zero
/// coefficients are never stored.
class CoordPoly {
 public:
  using Monomial = std::vector<int>;

  CoordPoly() = default;
  CoordPoly(Rational c, int nvars = 0);  // NOLINT(google-explicit-constructor)
  CoordPoly(int c) : CoordPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static CoordPoly variable(int index, int nvars);

  [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] int total_degree() const;
  [[nodiscard]] Rational eval(const std::vector<Rational>& x) const;
  // Substitutes x_i -> sum_j sub[i][j] y_j (a linear change of variables into m new variables).
  [[nodiscard]] CoordPoly linear_substitute(const std::vector<std::vector<Rational>>& sub, int m) const;
  [[nodiscard]] std::string str() const;

  CoordPoly operator-() const;
  CoordPoly& operator+=(const CoordPoly& o);
  CoordPoly& operator-=(const CoordPoly& o);
  CoordPoly& operator*=(const CoordPoly& o);
  CoordPoly& operator*=(const Rational& c);

  friend CoordPoly operator+(CoordPoly a, const CoordPoly& b) { return a += b; }
  friend CoordPoly operator-(CoordPoly a, const CoordPoly& b) { return a -= b; }
  friend CoordPoly operator*(const CoordPoly& a, const CoordPoly& b);
  friend CoordPoly operator*(CoordPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const CoordPoly& a, const CoordPoly& b);

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::map<Monomial, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const CoordPoly& p);

}  // namespace nilspec
