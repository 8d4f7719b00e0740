#include "nilspec/examples.hpp"

#include <stdexcept>

namespace nilspec {

namespace {

enum : int { X1, X2, X3, X4, Z1, Z2, ZC };

QVec vec6(std::initializer_list<std::pair<int, int>> terms) {
  QVec v(6);
  for (auto [i, c] : terms) v[static_cast<std::size_t>(i)] = Rational(c);
  return v;
}

TrigPoly c(int k) { return TrigPoly::cos(k); }
TrigPoly sn(int k) { return TrigPoly::sin(k); }

}  // namespace

ExampleId parse_example_id(std::string_view s) {
  if (s == "I" || s == "1") return ExampleId::I;
  if (s == "II" || s == "2") return ExampleId::II;
  throw std::invalid_argument("unknown example '" + std::string(s) + "' (expected I or II)");
}

std::string to_string(ExampleId id) { return id == ExampleId::I ? "I" : "II"; }

LieAlgebra base_algebra() {
  LieAlgebra g(6, {"X1", "X2", "X3", "X4", "Z1", "Z2"});
  g.set_bracket(X1, X2, vec6({{Z1, 1}}));
  g.set_bracket(X3, X4, vec6({{Z1, 1}}));
  g.set_bracket(X1, X3, vec6({{Z2, 1}}));
  g.set_bracket(X4, X2, vec6({{Z2, 1}}));
  return g;
}

Derivation example_S() {
  QMatrix m(6, 6);
  m(X4, X1) = Rational(-1);
  m(X3, X2) = Rational(2);
  m(X2, X3) = Rational(-2);
  m(X1, X4) = Rational(1);
  m(Z2, Z1) = Rational(1);
  m(Z1, Z2) = Rational(-1);
  return Derivation(m);
}

Derivation example_A() {
  QMatrix m(6, 6);
  m(Z1, X2) = Rational(-1);
  m(Z2, X3) = Rational(2);
  return Derivation(m);
}

TwoForm example_omega(ExampleId id) {
  TwoForm w(6);
  if (id == ExampleId::I) {
    w.set(X1, X2, Rational(1));
    w.set(X2, X3, Rational(1));
    w.set(X3, X4, Rational(1));
    w.set(X1, Z1, Rational(1));
    w.set(X4, Z2, Rational(-1));
  } else {
    w.set(X2, X3, Rational(1));
    w.set(X2, X4, Rational(1));
    w.set(X1, Z1, Rational(1));
    w.set(X4, Z2, Rational(-1));
  }
  return w;
}

BundledExample bundled_example(ExampleId id) {
  BundledExample ex;
  ex.id = id;
  ex.base = base_algebra();
  ex.omega = example_omega(id);
  ex.skew = example_S();
  if (id == ExampleId::I) {
    ex.generator = ex.skew;
  } else {
    ex.almost_inner = example_A();
    ex.generator = ex.skew + *ex.almost_inner;
  }
  ex.dual_names = {"a1", "a2", "a3", "a4", "z1", "z2", "xi"};
  return ex;
}

QVec rational_coordinates(const LinearCombination& lc, const std::vector<std::string>& names) {
  QVec v(names.size());
  for (const auto& [name, coef] : lc) {
    if (name.empty()) throw std::invalid_argument("constant term in a vector expression");
    std::size_t k = 0;
    while (k < names.size() && names[k] != name) ++k;
    if (k == names.size()) throw std::invalid_argument("unknown symbol '" + name + "'");
    if (!coef.is_constant() || !coef.coeff(0).im.is_zero()) {
      throw std::invalid_argument("coefficient of '" + name + "' is not rational");
    }
    v[k] = coef.coeff(0).re;
  }
  return v;
}

TrigPoly substitute(const LinearCombination& lc, const std::vector<std::string>& names, const TrigVec& values) {
  TrigPoly out;
  for (const auto& [name, coef] : lc) {
    if (name.empty()) {
      out += TrigPoly(coef);
      continue;
    }
    std::size_t k = 0;
    while (k < names.size() && names[k] != name) ++k;
    if (k == names.size()) throw std::invalid_argument("unknown symbol '" + name + "'");
    out += values[k] * coef;
  }
  return out;
}

namespace golden {

std::vector<BracketEntry> extended_brackets(ExampleId id) {
  if (id == ExampleId::I) {
    return {{"X1", "X2", "Z1 + Z"}, {"X3", "X4", "Z1 + Z"}, {"X1", "X3", "Z2"}, {"X4", "X2", "Z2"},
            {"X2", "X3", "Z"},      {"X1", "Z1", "Z"},      {"Z2", "X4", "Z"}};
  }
  return {{"X1", "X2", "Z1"}, {"X3", "X4", "Z1"}, {"X1", "X3", "Z2"}, {"X4", "X2", "Z2 - Z"},
          {"X2", "X3", "Z"},  {"X1", "Z1", "Z"},  {"Z2", "X4", "Z"}};
}

const ConnectionRows& connection_table(ExampleId id) {
  static const ConnectionRows one = {{
      {"0", "1/2*(z1 + xi)", "1/2*z2", "0", "1/2*(-a2 + xi)", "-1/2*a3", "-1/2*(a2 + z1)"},
      {"-1/2*(z1 + xi)", "0", "1/2*xi", "-1/2*z2", "1/2*a1", "1/2*a4", "1/2*(a1 - a3)"},
      {"-1/2*z2", "-1/2*xi", "0", "1/2*(z1 + xi)", "-1/2*a4", "1/2*a1", "1/2*(a2 - a4)"},
      {"0", "1/2*z2", "-1/2*(z1 + xi)", "0", "1/2*a3", "-1/2*(a2 + xi)", "1/2*(a3 + z2)"},
  }};
  static const ConnectionRows two = {{
      {"0", "1/2*z1", "1/2*z2", "0", "1/2*(-a2 + xi)", "-1/2*a3", "-1/2*z1"},
      {"-1/2*z1", "0", "1/2*xi", "1/2*(-z2 + xi)", "1/2*a1", "1/2*a4", "-1/2*(a3 + a4)"},
      {"-1/2*z2", "-1/2*xi", "0", "1/2*z1", "-1/2*a4", "1/2*a1", "1/2*a2"},
      {"0", "1/2*(z2 - xi)", "-1/2*z1", "0", "1/2*a3", "-1/2*(a2 + xi)", "1/2*(a2 + z2)"},
  }};
  return id == ExampleId::I ? one : two;
}

QMatrix laplacian(ExampleId id) {
  QMatrix m(7, 7);
  if (id == ExampleId::I) {
    m(4, 4) = Rational(2), m(4, 6) = Rational(2);
    m(5, 5) = Rational(2);
    m(6, 4) = Rational(2), m(6, 6) = Rational(5);
  } else {
    m(4, 4) = Rational(2);
    m(5, 5) = Rational(2), m(5, 6) = Rational(-1);
    m(6, 4) = Rational(-1), m(6, 6) = Rational(4);
  }
  return m;
}

const ETauTemplate& etau_template(ExampleId id) {
  static const ETauTemplate one = {{
      {"N", "0", "0", "0", "i*p*A2", "i*p*A3", "i*p*A2"},
      {"0", "N", "0", "0", "-i*p*A1", "-i*p*A4", "i*p*(A3 - A1)"},
      {"0", "0", "N", "0", "i*p*A4", "-i*p*A1", "i*p*(A4 - A2)"},
      {"0", "0", "0", "N", "-i*p*A3", "i*p*A2", "-i*p*A3"},
      {"-i*p*A2", "i*p*A1", "-i*p*A4", "i*p*A3", "N + 2", "0", "-i*p*A1 + 2"},
      {"-i*p*A3", "i*p*A4", "i*p*A1", "-i*p*A2", "0", "N + 2", "i*p*A4"},
      {"-i*p*A2", "i*p*(A1 - A3)", "i*p*(A2 - A4)", "i*p*A3", "i*p*A1 + 2", "-i*p*A4", "N + 5"},
  }};
  static const ETauTemplate two = {{
      {"N", "0", "0", "0", "i*p*A2", "i*p*A3", "0"},
      {"0", "N", "0", "0", "-i*p*A1", "-i*p*A4", "i*p*(A3 + A4)"},
      {"0", "0", "N", "0", "i*p*A4", "-i*p*A1", "-i*p*A2"},
      {"0", "0", "0", "N", "-i*p*A3", "i*p*A2", "-i*p*A2"},
      {"-i*p*A2", "i*p*A1", "-i*p*A4", "i*p*A3", "N + 2", "0", "-i*p*A1"},
      {"-i*p*A3", "i*p*A4", "i*p*A1", "-i*p*A2", "0", "N + 2", "i*p*A4 - 1"},
      {"0", "-i*p*(A3 + A4)", "i*p*A2", "i*p*A2", "i*p*A1", "-i*p*A4 - 1", "N + 4"},
  }};
  return id == ExampleId::I ? one : two;
}

Derivation extended_generator(ExampleId id) {
  QMatrix m(7, 7);
  m(X4, X1) = Rational(-1);
  m(X3, X2) = Rational(2);
  m(X2, X3) = Rational(-2);
  m(X1, X4) = Rational(1);
  m(Z2, Z1) = Rational(1);
  m(Z1, Z2) = Rational(-1);
  if (id == ExampleId::I) {
    m(ZC, Z2) = Rational(-1);
  } else {
    m(Z1, X2) = Rational(-1);
    m(Z2, X3) = Rational(2);
  }
  return Derivation(m);
}

TrigMatrix flow(ExampleId id) {
  TrigMatrix f(7, 7);
  // column j = image of E_j
  f(X1, X1) = c(1), f(X4, X1) = -sn(1);
  f(X2, X2) = c(2), f(X3, X2) = sn(2);
  f(X2, X3) = -sn(2), f(X3, X3) = c(2);
  f(X1, X4) = sn(1), f(X4, X4) = c(1);
  f(Z1, Z1) = c(1), f(Z2, Z1) = sn(1);
  f(Z1, Z2) = -sn(1), f(Z2, Z2) = c(1);
  f(ZC, ZC) = TrigPoly(1);
  if (id == ExampleId::I) {
    f(ZC, Z1) = c(1) - TrigPoly(1);
    f(ZC, Z2) = -sn(1);
  } else {
    f(Z1, X2) = -sn(1);
    f(Z2, X2) = c(1) - c(2);
    f(Z2, X3) = sn(2);
  }
  return f;
}

std::vector<TrigVec> deformed_basis(ExampleId id) {
  std::vector<TrigVec> b;
  for (int j = 0; j < 7; ++j) b.push_back(unit_vec<TrigPoly>(7, j));
  if (id == ExampleId::I) {
    b[Z1][ZC] = TrigPoly(1) - c(1);
    b[Z2][ZC] = sn(1);
  } else {
    // sin(s)cos(2s) and friends, expanded by the kernel
    b[X2][Z1] = sn(1) * c(2);
    b[X2][Z2] = -(TrigPoly(1) - c(1) * c(2));
    b[X3][Z1] = -(sn(1) * sn(2));
    b[X3][Z2] = -(c(1) * sn(2));
  }
  return b;
}

TrigVec pulled_coordinates(const std::array<int, 4>& a) {
  TrigVec v(7);
  v[0] = c(1) * PiPoly(a[0]) + sn(1) * PiPoly(a[3]);
  v[1] = c(2) * PiPoly(a[1]) - sn(2) * PiPoly(a[2]);
  v[2] = sn(2) * PiPoly(a[1]) + c(2) * PiPoly(a[2]);
  v[3] = -(sn(1) * PiPoly(a[0])) + c(1) * PiPoly(a[3]);
  return v;
}

}  // namespace golden

}  // namespace nilspec
