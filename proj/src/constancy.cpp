#include "nilspec/constancy.hpp"

namespace nilspec {

ConstancyContext make_constancy_context(const LieAlgebra& g, const Derivation& d) {
  ConstancyContext ctx{g, etau_parts(g), exp_derivation(d), {}};
  ctx.phi_inv = trig_inverse(ctx.phi);
  return ctx;
}

ConstancyReport constancy_report(const ConstancyContext& ctx, const Covector& tau) {
  ConstancyReport rep;
  TrigVec ts = pull_character_inv(ctx.algebra, tau, ctx.phi_inv);
  rep.coefficients = char_poly(e_tau(ctx.parts, ts));
  for (std::size_t k = 0; k < rep.coefficients.size(); ++k) {
    auto c = rep.coefficients[k].is_constant();
    if (!c.constant) {
      rep.constant = false;
      rep.witness_coefficient = static_cast<int>(k);
      rep.witness_term = c.witness;
      break;
    }
  }
  return rep;
}

namespace {

Covector tuple_covector(int dim, const std::array<int, 4>& a) {
  Covector tau(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < 4; ++i) tau[i] = Rational(a[i]);
  return tau;
}

}  // namespace

ConstancyReport constancy_report(const ConstancyContext& ctx, const std::array<int, 4>& a) {
  return constancy_report(ctx, tuple_covector(ctx.algebra.dim(), a));
}

ConstancyReport constancy_report(const LieAlgebra& g, const Derivation& d, const std::array<int, 4>& a) {
  return constancy_report(make_constancy_context(g, d), a);
}

double numeric_drift(const ConstancyContext& ctx, const std::array<int, 4>& a, const std::vector<double>& samples) {
  TrigVec ts = pull_character_inv(ctx.algebra, tuple_covector(ctx.algebra.dim(), a), ctx.phi_inv);
  TrigMatrix e = e_tau(ctx.parts, ts);
  auto base = eigenvalues_numeric(e, 0.0);
  double drift = 0;
  for (double s : samples) drift = std::max(drift, matching_distance(base, eigenvalues_numeric(e, s)));
  return drift;
}

std::vector<SweepRow> constancy_sweep(const ConstancyContext& ctx, int bound) {
  std::vector<SweepRow> rows;
  for (int a1 = -bound; a1 <= bound; ++a1)
    for (int a2 = -bound; a2 <= bound; ++a2)
      for (int a3 = -bound; a3 <= bound; ++a3)
        for (int a4 = -bound; a4 <= bound; ++a4) {
          std::array<int, 4> a{a1, a2, a3, a4};
          rows.push_back({a, constancy_report(ctx, a)});
        }
  return rows;
}

}  // namespace nilspec
