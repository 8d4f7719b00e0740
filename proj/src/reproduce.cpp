#include "nilspec/reproduce.hpp"

#include <cmath>
#include <sstream>

namespace nilspec {

namespace {

std::string join_first(const std::vector<std::string>& xs, std::size_t n = 3) {
  std::string out;
  for (std::size_t i = 0; i < xs.size() && i < n; ++i) out += (i ? "; " : "") + xs[i];
  if (xs.size() > n) out += "; ...";
  return out;
}

Covector covector_or_zero(std::string_view text, const std::vector<std::string>& names) {
  auto lc = parse_linear_combination(text);
  if (auto it = lc.find(""); it != lc.end() && it->second.is_zero()) lc.erase(it);
  return rational_coordinates(lc, names);
}

TrigVec independent_tau() {
  TrigVec t(7);
  int e = 1;
  for (int j = 0; j < 4; ++j, e *= 3) t[static_cast<std::size_t>(j)] = TrigPoly::s_power(e);
  return t;
}

}  // namespace

ExampleBundle load_example(ExampleId id) {
  auto data = bundled_example(id);
  auto ext = extend_algebra(data.base, data.omega);
  auto hat = extend_derivation(data.base, data.omega, data.generator);
  if (!hat) throw std::logic_error("bundled generator does not extend");
  auto names = data.dual_names;
  return {std::move(data), std::move(ext), hat->hat, std::move(names)};
}

std::vector<std::string> check_connection_table(const ExampleBundle& ex, bool tamper) {
  std::vector<std::string> bad;
  const auto& g = ex.algebra();
  auto t = koszul(g);
  const auto& table = golden::connection_table(ex.data.id);
  for (int u = 0; u < 4; ++u) {
    for (int m = 0; m < 7; ++m) {
      Covector want = covector_or_zero(table[u][m], ex.dual_names);
      if (tamper && u == 0 && m == 4) want = scale(want, Rational(-1));
      Covector got = nabla_oneform(t, u, dual_basis_vector(7, m));
      if (!(got == want)) {
        bad.push_back("nabla_" + g.names()[static_cast<std::size_t>(u)] + " " + ex.dual_names[static_cast<std::size_t>(m)] +
                      ": computed " + format_vector(got, ex.dual_names) + ", expected " + format_vector(want, ex.dual_names));
      }
    }
  }
  return bad;
}

std::vector<std::string> check_laplacian(const ExampleBundle& ex) {
  std::vector<std::string> bad;
  auto m = hodge_laplacian_invariant(ex.algebra());
  auto want = golden::laplacian(ex.data.id);
  for (int l = 0; l < 7; ++l) {
    if (!(m.row(l) == want.row(l))) {
      bad.push_back("Delta " + ex.dual_names[static_cast<std::size_t>(l)] + ": computed " + format_vector(m.row(l), ex.dual_names) +
                    ", expected " + format_vector(want.row(l), ex.dual_names));
    }
  }
  return bad;
}

std::vector<std::string> check_etau(const ExampleBundle& ex) {
  std::vector<std::string> bad;
  TrigVec tau = independent_tau();
  TrigMatrix e = e_tau(ex.algebra(), tau);
  TrigPoly n;
  for (int j = 0; j < 4; ++j) n += tau[static_cast<std::size_t>(j)] * tau[static_cast<std::size_t>(j)];
  n *= PiPoly::monomial(2);
  const std::vector<std::string> names{"N", "A1", "A2", "A3", "A4"};
  TrigVec vals{n, tau[0], tau[1], tau[2], tau[3]};
  const auto& tpl = golden::etau_template(ex.data.id);
  for (int l = 0; l < 7; ++l) {
    for (int k = 0; k < 7; ++k) {
      TrigPoly want = substitute(parse_linear_combination(tpl[l][k]), names, vals);
      if (!(e(l, k) == want)) {
        bad.push_back("E_tau(" + ex.dual_names[static_cast<std::size_t>(l)] + ", " + ex.dual_names[static_cast<std::size_t>(k)] +
                      ") differs from " + std::string(tpl[l][k]));
      }
    }
  }
  return bad;
}

std::vector<std::string> check_flow(const ExampleBundle& ex) {
  std::vector<std::string> bad;
  const auto& g = ex.algebra();
  TrigMatrix phi = exp_derivation(ex.hat_generator);
  TrigMatrix want = golden::flow(ex.data.id);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      if (!(phi(i, j) == want(i, j))) {
        bad.push_back("Phi(" + g.names()[static_cast<std::size_t>(i)] + ", " + g.names()[static_cast<std::size_t>(j)] +
                      "): computed " + phi(i, j).str() + ", expected " + want(i, j).str());
      }
  if (!verify_flow(phi, ex.hat_generator)) bad.emplace_back("d/ds Phi != D Phi");
  if (!is_automorphism_family(g, phi)) bad.emplace_back("Phi is not a family of automorphisms");
  auto f = factor_orthogonal(phi, g);
  if (!(f.upsilon * f.psi == phi)) bad.emplace_back("Upsilon Psi != Phi");
  if (!(deformed_basis(f) == golden::deformed_basis(ex.data.id))) bad.emplace_back("deformed basis differs");
  return bad;
}

std::vector<std::string> check_extension(const ExampleBundle& ex) {
  std::vector<std::string> bad;
  const auto& g = ex.data.base;
  const auto& w = ex.data.omega;
  const auto& s = ex.data.skew;
  TwoForm s_star = dstar(s, w);
  auto eta = is_exact(g, s_star);
  if (ex.data.id == ExampleId::I) {
    if (!(s_star == d_oneform(g, dual_basis_vector(6, 5)))) bad.emplace_back("S*omega != d z2");
    if (!eta) bad.emplace_back("S*omega not exact");
    auto sh = extend_derivation(g, w, s);
    if (!sh) {
      bad.emplace_back("S does not extend");
    } else if (!(sh->hat == golden::extended_generator(ExampleId::I))) {
      bad.emplace_back("S hat differs from the listed images");
    }
  } else {
    const auto& a = *ex.data.almost_inner;
    TwoForm want = wedge(dual_basis_vector(6, 0), dual_basis_vector(6, 1)) -
                   Rational(2) * wedge(dual_basis_vector(6, 2), dual_basis_vector(6, 3));
    if (!(s_star == want)) bad.push_back("S*omega = " + s_star.str(ex.dual_names) + ", expected a1^a2 - 2*a3^a4");
    if (!(dstar(a, w) == -s_star)) bad.emplace_back("A*omega != -S*omega");
    if (!dstar(s + a, w).is_zero()) bad.emplace_back("D*omega != 0");
    if (eta) bad.emplace_back("S*omega unexpectedly exact");
    if (extend_derivation(g, w, s)) bad.emplace_back("S extends");
    if (extend_derivation(g, w, a)) bad.emplace_back("A extends");
    auto dh = extend_derivation(g, w, s + a);
    if (!dh) {
      bad.emplace_back("D does not extend");
    } else if (!(dh->hat == golden::extended_generator(ExampleId::II))) {
      bad.emplace_back("D hat differs from the listed images");
    }
  }
  if (!is_closed(g, w) || !is_nondegenerate(w)) bad.emplace_back("omega not closed and nondegenerate");
  return bad;
}

std::vector<std::string> check_structure(const ExampleBundle& ex) {
  std::vector<std::string> bad;
  const auto& g = ex.algebra();
  auto rep = validate(g);
  if (!rep.ok()) bad.push_back("invalid: " + rep.str(g));
  int step = nilpotency_step(g);
  if (step != 3) bad.push_back("step " + std::to_string(step));
  if (center(g).dim() != 1) bad.emplace_back("center dimension != 1");
  auto ns = is_strictly_nonsingular(g);
  if (!ns.value) bad.emplace_back("not strictly nonsingular");
  if (ns.symbolic != ns.grid) bad.emplace_back("symbolic and grid nonsingularity verdicts differ");
  if (!(quotient_algebra(g) == ex.data.base)) bad.emplace_back("quotient by the center differs from g");
  for (const auto& e : golden::extended_brackets(ex.data.id)) {
    int i = g.index_of(std::string(e.left)), j = g.index_of(std::string(e.right));
    if (!(g.structure(i, j) == rational_coordinates(parse_linear_combination(e.value), g.names()))) {
      bad.push_back("[" + std::string(e.left) + ", " + std::string(e.right) + "] != " + std::string(e.value));
    }
  }
  auto cls = classify_deformation_generator(ex.data.base, ex.data.omega, ex.data.generator, ex.data.skew);
  if (cls.cls != GeneratorClass::Beyond) bad.push_back("generator class " + to_string(cls.cls));
  return bad;
}

SweepSummary constancy_sweep_summary(const ExampleBundle& ex, int bound, const std::vector<double>& samples) {
  SweepSummary sum;
  auto ctx = make_constancy_context(ex.algebra(), ex.hat_generator);
  for (const auto& row : constancy_sweep(ctx, bound)) {
    const auto& a = row.a;
    ++sum.tuples;
    if (row.report.constant) ++sum.constant;
    bool predicted = a[0] * a[1] == a[2] * a[3];
    std::ostringstream tag;
    tag << "(" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << ")";
    if (predicted != row.report.constant) {
      ++sum.disagreements_with_criterion;
      if (sum.examples.size() < 4) {
        sum.examples.push_back(tag.str() + (row.report.constant ? " constant" : " nonconstant") + ", criterion says " +
                               (predicted ? "constant" : "nonconstant"));
      }
    }
    if (!samples.empty()) {
      double drift = numeric_drift(ctx, a, samples);
      bool numeric_constant = drift < 1e-9;
      if (numeric_constant != row.report.constant) ++sum.numeric_disagreements;
    }
  }
  return sum;
}

std::vector<StageResult> reproduce(ExampleId id, const ReproduceOptions& opt) {
  std::vector<StageResult> out;
  ExampleBundle ex = load_example(id);
  auto stage = [&](std::string name, const std::vector<std::string>& bad) {
    out.push_back({std::move(name), bad.empty(), bad.empty() ? "" : join_first(bad)});
  };
  stage("structure", check_structure(ex));
  stage("extension", check_extension(ex));
  stage("flow", check_flow(ex));
  stage("connection-table", check_connection_table(ex, opt.tamper_sign));
  stage("laplacian", check_laplacian(ex));
  stage("etau", check_etau(ex));

  std::vector<double> samples;
  for (int k = 1; k <= 8; ++k) samples.push_back(0.7 * k);
  auto sweep = constancy_sweep_summary(ex, opt.sweep_bound, samples);
  {
    StageResult r{"constancy-sweep", sweep.disagreements_with_criterion == 0 && sweep.numeric_disagreements == 0, ""};
    std::ostringstream os;
    os << sweep.constant << "/" << sweep.tuples << " constant; " << sweep.disagreements_with_criterion
       << " disagree with a1*a2 == a3*a4; " << sweep.numeric_disagreements << " disagree with sampled drift";
    if (!sweep.examples.empty()) os << "; e.g. " << join_first(sweep.examples, 2);
    r.detail = os.str();
    out.push_back(r);
  }

  {
    auto ctx = make_constancy_context(ex.algebra(), ex.hat_generator);
    std::vector<std::string> bad;
    for (int a1 = -2; a1 <= 2; ++a1)
      for (int a2 = -2; a2 <= 2; ++a2)
        for (int a3 = -2; a3 <= 2; ++a3)
          for (int a4 = -2; a4 <= 2; ++a4) {
            QVec tau{a1, a2, a3, a4, 0, 0, 0};
            auto n = norm_invariance(ex.algebra(), pull_character_inv(ex.algebra(), tau, ctx.phi_inv));
            if (!(n == TrigPoly(dot(tau, tau)))) bad.push_back("|tau_s|^2 not constant for " + format_vector(tau, ex.dual_names));
          }
    stage("norm-invariance", bad);
  }

  {
    auto rep = spectrum_compare(ex.algebra(), ex.hat_generator, opt.radius, opt.s1, opt.s2);
    std::ostringstream os;
    os << rep.rows.size() << " characters; function part " << (rep.functions_equal ? "equal" : "differs")
       << (rep.functions_exact ? " (exact)" : "") << "; max 1-form distance " << rep.max_oneform_distance;
    out.push_back({"spectrum-compare", rep.functions_equal && rep.max_oneform_distance > 1e-3, os.str()});
  }
  return out;
}

}  // namespace nilspec
