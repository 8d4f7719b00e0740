#include <cmath>
#include <random>

#include "doctest.h"
#include "nilspec/deformation.hpp"
#include "nilspec/examples.hpp"
#include "test_util.hpp"

using namespace nilspec;
using testutil::extended;

namespace {

const double kPi = std::acos(-1.0);

Derivation hat_generator(ExampleId id) { return golden::extended_generator(id); }

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("exp of the extended generators equals the displayed flows") {
  for (auto id : {ExampleId::I, ExampleId::II}) {
    auto phi = exp_derivation(hat_generator(id));
    CHECK(phi == golden::flow(id));
    CHECK(verify_flow(phi, hat_generator(id)));
    CHECK(is_automorphism_family(extended(id), phi));
  }
  auto phi = exp_derivation(hat_generator(ExampleId::I));
  // Z1 column: cos(s) Z1 + sin(s) Z2 - (1 - cos(s)) Z
  CHECK(phi(6, 4) == TrigPoly::cos(1) - TrigPoly(1));
  auto phi2 = exp_derivation(hat_generator(ExampleId::II));
  CHECK(phi2(5, 1) == TrigPoly::cos(1) - TrigPoly::cos(2));
  CHECK(phi2(4, 1) == -TrigPoly::sin(1));
}

TEST_CASE("tampered flow is rejected") {
  auto phi = golden::flow(ExampleId::I);
  phi(6, 4) = TrigPoly(1) - TrigPoly::cos(1);
  CHECK_FALSE(verify_flow(phi, hat_generator(ExampleId::I)));
  CHECK(verify_flow(golden::flow(ExampleId::I), hat_generator(ExampleId::I)));
}

TEST_CASE("identity and nilpotent generators") {
  auto id = exp_derivation(Derivation(QMatrix(3, 3)));
  CHECK(id == Matrix<TrigPoly>::identity(3));

  // strictly upper triangular: exp is a polynomial in s
  QMatrix n(3, 3);
  n(0, 1) = Rational(1);
  n(1, 2) = Rational(1);
  auto e = exp_derivation(Derivation(n));
  CHECK(e(0, 1) == TrigPoly::s_power(1));
  CHECK(e(0, 2) == TrigPoly::s_power(2, PiPoly(Rational(1, 2))));
  CHECK(verify_flow(e, Derivation(n)));

  // rotation with a nilpotent part: block diag(J, J) + coupling
  QMatrix r(4, 4);
  r(1, 0) = Rational(1);
  r(0, 1) = Rational(-1);
  r(3, 2) = Rational(1);
  r(2, 3) = Rational(-1);
  r(0, 2) = Rational(1);
  r(1, 3) = Rational(1);
  auto er = exp_derivation(Derivation(r));
  CHECK(verify_flow(er, Derivation(r)));
  CHECK(er.map([](const TrigPoly& t) { return TrigPoly(t.max_s_power()); }) !=
        Matrix<TrigPoly>(4, 4));
  for (double s : {0.3, 1.7, 4.0}) {
    Eigen::MatrixXd num = exp_numeric(Derivation(r), s);
    CHECK(max_abs(evaluate(er, s) - num.cast<std::complex<double>>()) < 1e-12);
  }
}

TEST_CASE("non-integer spectrum is refused") {
  QMatrix d(2, 2);
  d(0, 1) = Rational(-1);
  d(1, 0) = Rational(2);  // eigenvalues +-i sqrt 2
  CHECK_THROWS_AS(exp_derivation(Derivation(d)), SpectrumError);
  QMatrix h(2, 2);
  h(0, 0) = Rational(1);
  h(1, 1) = Rational(-1);
  CHECK_THROWS_AS(exp_derivation(Derivation(h)), SpectrumError);
  CHECK(std::abs(exp_numeric(Derivation(h), 1.0)(0, 0) - std::exp(1.0)) < 1e-12);
}

TEST_CASE("Jordan-Chevalley parts commute and recombine") {
  for (auto id : {ExampleId::I, ExampleId::II}) {
    auto d = hat_generator(id).matrix;
    auto jc = jordan_chevalley(d);
    CHECK(jc.semisimple + jc.nilpotent == d);
    CHECK(jc.semisimple * jc.nilpotent == jc.nilpotent * jc.semisimple);
    auto n = jc.nilpotent;
    QMatrix p = n;
    for (int k = 0; k < 7; ++k) p = p * n;
    CHECK(p.is_zero());
    std::vector<int> want{-2, -1, 0, 1, 2};
    CHECK(jc.frequencies == want);
  }
}

TEST_CASE("closed form matches the numeric exponential") {
  for (auto id : {ExampleId::I, ExampleId::II}) {
    auto d = hat_generator(id);
    auto phi = exp_derivation(d);
    for (int k = 0; k < 25; ++k) {
      double s = 2 * kPi * k / 24.0;
      Eigen::MatrixXd num = exp_numeric(d, s);
      CHECK(max_abs(evaluate(phi, s) - num.cast<std::complex<double>>()) < 1e-12);
    }
  }
}

TEST_CASE("determinant is identically one") {
  for (auto id : {ExampleId::I, ExampleId::II}) {
    CHECK(trig_det(exp_derivation(hat_generator(id))) == TrigPoly(1));
  }
}

TEST_CASE("group law") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (auto id : {ExampleId::I, ExampleId::II}) {
    auto phi = exp_derivation(hat_generator(id));
    for (int k = 0; k < 10; ++k) {
      double s = u(rng), t = u(rng);
      CHECK(max_abs(evaluate(phi, s) * evaluate(phi, t) - evaluate(phi, s + t)) < 1e-12);
    }
  }
}

TEST_CASE("inverse family is the reflected one") {
  for (auto id : {ExampleId::I, ExampleId::II}) {
    auto phi = exp_derivation(hat_generator(id));
    auto inv = trig_inverse(phi);
    CHECK(inv == phi.map([](const TrigPoly& t) { return t.reflect(); }));
    CHECK(phi * inv == Matrix<TrigPoly>::identity(7));
  }
}

TEST_CASE("orthogonal factor and deformed bases") {
  for (auto id : {ExampleId::I, ExampleId::II}) {
    auto g = extended(id);
    auto phi = exp_derivation(hat_generator(id));
    auto f = factor_orthogonal(phi, g);
    CHECK(f.upsilon * f.psi == phi);
    auto ut = f.upsilon.transpose();
    CHECK(ut * to_trig(g.metric()) * f.upsilon == to_trig(g.metric()));
    for (int i = 0; i < 7; ++i) CHECK(f.psi(i, i) == TrigPoly(1));
    auto basis = deformed_basis(f);
    CHECK(basis == golden::deformed_basis(id));
  }
  // Psi is not a family of automorphisms: the deformation is not Gordon-Wilson
  auto g = extended(ExampleId::I);
  auto f = factor_orthogonal(exp_derivation(hat_generator(ExampleId::I)), g);
  CHECK_FALSE(is_automorphism_family(g, f.psi));

  auto ident = factor_orthogonal(Matrix<TrigPoly>::identity(7), g);
  CHECK(ident.upsilon == Matrix<TrigPoly>::identity(7));
  CHECK(ident.psi == Matrix<TrigPoly>::identity(7));
}

TEST_CASE("orthogonal factor requires orthogonal diagonal blocks") {
  auto g = extended(ExampleId::I);
  auto bad = Matrix<TrigPoly>::identity(7);
  bad(0, 0) = TrigPoly(2);
  CHECK_THROWS_AS(factor_orthogonal(bad, g), std::domain_error);
}

TEST_CASE("property: exp of random derivations satisfies the flow identity") {
  // D = t*S_hat + inner(Y) for random Y: the inner part is nilpotent, so the
  // spectrum stays integral only when it commutes; use inner derivations of
  // central-series elements plus scalar multiples of S_hat.
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> mult(-2, 2);
  int n = 0;
  auto g = extended(ExampleId::I);
  for (int trial = 0; trial < 500; ++trial) {
    QMatrix m = hat_generator(trial % 2 ? ExampleId::I : ExampleId::II).matrix;
    m.scale(Rational(mult(rng)));
    auto d = Derivation(m);
    auto phi = exp_derivation(d);
    CHECK(verify_flow(phi, d));
    if (trial % 50 == 0) {
      double s = 0.1 * trial / 50;
      Eigen::MatrixXd num = exp_numeric(d, s);
      CHECK(max_abs(evaluate(phi, s) - num.cast<std::complex<double>>()) < 1e-12);
    }
    ++n;
  }
  CHECK(n == 500);
}

TEST_CASE("property: automorphism bracket identity on random vectors") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (auto id : {ExampleId::I, ExampleId::II}) {
    auto g = extended(id);
    auto phi = exp_derivation(hat_generator(id));
    for (int trial = 0; trial < 250; ++trial) {
      QVec x = testutil::rand_vec(rng, 7), y = testutil::rand_vec(rng, 7);
      TrigVec tx = phi * to_trig(QMatrix::from_columns({x})).col(0);
      TrigVec ty = phi * to_trig(QMatrix::from_columns({y})).col(0);
      TrigVec lhs = trig_bracket(g, tx, ty);
      TrigVec rhs = phi * to_trig(QMatrix::from_columns({g.bracket(x, y)})).col(0);
      CHECK(lhs == rhs);
    }
  }
}
