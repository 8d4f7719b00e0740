#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "CLI11.hpp"
#include "nilspec/algebra_io.hpp"
#include "nilspec/constancy.hpp"
#include "nilspec/reproduce.hpp"

namespace nilspec::cli {

namespace {

using boost::multiprecision::mpfr_float;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Algebra, optional two-form and derivation the subcommand works on.
struct Problem {
  LieAlgebra algebra;
  std::optional<TwoForm> omega;
  std::optional<Derivation> derivation;
  std::vector<std::string> dual_names;
  std::optional<ExampleBundle> bundle;
};

std::vector<std::string> default_dual_names(const LieAlgebra& g) {
  std::vector<std::string> out;
  for (const auto& n : g.names()) out.push_back(n + "*");
  return out;
}

AlgebraDocument load_document(const std::string& path) {
  try {
    return load_algebra_file(path);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

// For the bundled examples, `base` selects the 6-dim algebra with D and omega
// instead of the extended one with D hat.
Problem load_problem(const RunConfig& cfg, bool base) {
  Problem p;
  if (cfg.example) {
    ExampleBundle ex = load_example(*cfg.example);
    if (base) {
      p.algebra = ex.data.base;
      p.omega = ex.data.omega;
      p.derivation = ex.data.generator;
      p.dual_names = std::vector<std::string>(ex.dual_names.begin(), ex.dual_names.begin() + 6);
    } else {
      p.algebra = ex.algebra();
      p.derivation = ex.hat_generator;
      p.dual_names = ex.dual_names;
    }
    p.bundle = std::move(ex);
    return p;
  }
  AlgebraDocument doc = load_document(*cfg.input);
  p.algebra = doc.algebra;
  if (const auto* w = doc.twoform("omega")) {
    p.omega = *w;
  } else if (!doc.twoforms.empty()) {
    p.omega = doc.twoforms.front().second;
  }
  if (const auto* d = doc.derivation("D")) {
    p.derivation = *d;
  } else if (!doc.derivations.empty()) {
    p.derivation = doc.derivations.front().second;
  }
  p.dual_names = default_dual_names(p.algebra);
  return p;
}

const Derivation& require_derivation(const Problem& p) {
  if (!p.derivation) throw InputError("input has no derivation block");
  return *p.derivation;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

// Real part of t(s), evaluated in MPFR at the configured precision.
double eval_hp(const TrigPoly& t, double s, unsigned bits) {
  const unsigned digits = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1;
  mpfr_float::default_precision(digits);
  mpfr_float pi = boost::math::constants::pi<mpfr_float>();
  return static_cast<double>(t.eval<mpfr_float>(mpfr_float(s), pi).real());
}

std::string format_trig_vector(const TrigVec& v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + v[i].str() + ")*" + names[i];
  }
  return out.empty() ? "0" : out;
}

std::vector<double> sample_points(const RunConfig& cfg) {
  if (!cfg.s_values.empty()) return cfg.s_values;
  std::vector<double> s;
  const double two_pi = 2 * std::acos(-1.0);
  for (int k = 0; k < cfg.samples; ++k) s.push_back(two_pi * k / cfg.samples);
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- commands

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, false);
  const auto& g = p.algebra;
  auto rep = validate(g);
  const bool csv = cfg.format == "csv";
  if (!rep.ok()) {
    if (csv) {
      out << "key,value\nvalid,false\n";
    } else {
      out << "invalid algebra\n" << rep.str(g);
    }
    return 1;
  }
  int step = 0;
  try {
    step = nilpotency_step(g);
  } catch (const std::exception&) {
    out << (csv ? "key,value\nvalid,true\nnilpotent,false\n" : "valid, but not nilpotent\n");
    return 1;
  }
  auto z = center(g);
  auto ns = is_strictly_nonsingular(g);
  if (csv) {
    out << "key,value\nvalid,true\nstep," << step << "\ncenter_dim," << z.dim() << "\nstrictly_nonsingular,"
        << (ns.value ? "true" : "false") << "\n";
    return 0;
  }
  out << "valid: yes\n";
  out << "step: " << step << "\n";
  out << "center:";
  for (const auto& v : z.basis()) out << " " << format_vector(v, g.names());
  out << "\n";
  out << "strictly nonsingular: " << yes_no(ns.value) << " (minor test " << yes_no(ns.symbolic) << ", grid " << yes_no(ns.grid)
      << ")\n";
  if (!ns.value && ns.witness_x) {
    out << "  witness: ad(" << format_vector(*ns.witness_x, g.names()) << ") misses "
        << format_vector(*ns.witness_z, g.names()) << "\n";
  }
  out << step << "-step, center dim " << z.dim() << ", " << (ns.value ? "strictly nonsingular" : "not strictly nonsingular")
      << "\n";
  return 0;
}

int cmd_extend(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, true);
  if (!p.omega) throw InputError("input has no twoform block");
  ExtensionResult r = extend_algebra(p.algebra, *p.omega);
  AlgebraDocument doc;
  doc.algebra = r.extended;
  std::string note;
  if (p.derivation) {
    auto hat = extend_derivation(p.algebra, *p.omega, *p.derivation);
    if (hat) {
      doc.derivations.emplace_back("D", hat->hat);
      note = "# D extends with eta = " + format_vector(hat->eta, p.dual_names) + "\n";
    } else {
      note = "# D does not extend: D*omega is not exact\n";
    }
  }
  out << "# strictly nonsingular: " << yes_no(r.nonsingular.value) << "\n" << note;
  out << serialize_algebra(doc);
  return 0;
}

int cmd_derivation(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, true);
  const auto& g = p.algebra;
  const Derivation& d = require_derivation(p);
  auto c = classify_derivation(g, d);
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("derivation", yes_no(c.is_derivation));
  if (!c.is_derivation) {
    auto w = leibniz_witness(g, d.matrix);
    rows.emplace_back("leibniz_fails", g.names()[static_cast<std::size_t>((*w)[0])] + "," + g.names()[static_cast<std::size_t>((*w)[1])]);
  } else {
    rows.emplace_back("skew", yes_no(c.is_skew));
    rows.emplace_back("inner", c.inner ? format_vector(*c.inner, g.names()) : "no");
    rows.emplace_back("almost_inner", yes_no(c.is_almost_inner));
    if (p.omega) {
      TwoForm ds = dstar(d, *p.omega);
      rows.emplace_back("D*omega", ds.str(p.dual_names));
      auto eta = is_exact(g, ds);
      rows.emplace_back("exact", eta ? format_vector(*eta, p.dual_names) : "no");
      std::optional<Derivation> skew;
      if (p.bundle) skew = p.bundle->data.skew;
      try {
        auto rep = classify_deformation_generator(g, *p.omega, d, skew);
        rows.emplace_back("class", to_string(rep.cls));
      } catch (const std::domain_error& e) {
        rows.emplace_back("class", e.what());
      }
    }
  }
  const bool csv = cfg.format == "csv";
  if (csv) out << "key,value\n";
  for (const auto& [k, v] : rows) out << k << (csv ? "," : ": ") << (csv && v.find(',') != std::string::npos ? "\"" + v + "\"" : v) << "\n";
  return c.is_derivation ? 0 : 1;
}

int cmd_deform(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, false);
  const auto& g = p.algebra;
  const Derivation& d = require_derivation(p);
  if (!is_derivation(g, d.matrix)) {
    out << "not a derivation\n";
    return 1;
  }
  std::optional<TrigMatrix> phi;
  try {
    phi = exp_derivation(d);
  } catch (const SpectrumError& e) {
    if (cfg.format != "csv") out << "# no closed form: " << e.what() << "\n";
  }
  const int n = g.dim();
  auto pts = sample_points(cfg);
  if (cfg.format == "csv" || !pts.empty()) {
    out << "s";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out << ",phi_" << i + 1 << "_" << j + 1;
    out << "\n";
    for (double s : pts) {
      out << fmt17(s);
      Eigen::MatrixXd num;
      if (!phi) num = exp_numeric(d, s);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out << "," << fmt17(phi ? eval_hp((*phi)(i, j), s, cfg.precision) : num(i, j));
      out << "\n";
    }
    return 0;
  }
  if (!phi) return 1;
  out << "Phi_s (image of each basis vector):\n";
  for (int j = 0; j < n; ++j) out << "  " << g.names()[static_cast<std::size_t>(j)] << " -> " << format_trig_vector(phi->col(j), g.names()) << "\n";
  out << "flow identity: " << yes_no(verify_flow(*phi, d)) << "\n";
  bool aut = is_automorphism_family(g, *phi);
  out << "automorphisms: " << yes_no(aut) << "\n";
  if (aut) {
    try {
      auto f = factor_orthogonal(*phi, g);
      out << "deformed orthonormal basis:\n";
      for (const auto& v : deformed_basis(f)) out << "  " << format_trig_vector(v, g.names()) << "\n";
      out << "unipotent factor is an automorphism family: " << yes_no(is_automorphism_family(g, f.psi)) << "\n";
    } catch (const std::domain_error& e) {
      out << "no orthogonal factor: " << e.what() << "\n";
    }
  }
  return 0;
}

int cmd_laplacian(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, false);
  const auto& g = p.algebra;
  auto t = koszul(g);
  auto m = hodge_laplacian_invariant(g);
  const int n = g.dim();
  if (cfg.format == "csv") {
    out << "kind,row,column,value\n";
    for (int u = 0; u < n; ++u)
      for (int k = 0; k < n; ++k)
        out << "nabla," << g.names()[static_cast<std::size_t>(u)] << "," << p.dual_names[static_cast<std::size_t>(k)] << ","
            << format_vector(nabla_oneform(t, u, dual_basis_vector(n, k)), p.dual_names) << "\n";
    for (int l = 0; l < n; ++l)
      out << "laplacian," << p.dual_names[static_cast<std::size_t>(l)] << ",," << format_vector(m.row(l), p.dual_names) << "\n";
    return 0;
  }
  out << "nabla_U mu:\n";
  for (int u = 0; u < n; ++u) {
    out << "  " << g.names()[static_cast<std::size_t>(u)] << ":";
    for (int k = 0; k < n; ++k)
      out << "  " << p.dual_names[static_cast<std::size_t>(k)] << " -> " << format_vector(nabla_oneform(t, u, dual_basis_vector(n, k)), p.dual_names)
          << (k + 1 < n ? ";" : "");
    out << "\n";
  }
  out << "Laplacian on invariant 1-forms:\n";
  for (int l = 0; l < n; ++l)
    out << "  Delta " << p.dual_names[static_cast<std::size_t>(l)] << " = " << format_vector(m.row(l), p.dual_names) << "\n";
  return 0;
}

Covector tau_from(const RunConfig& cfg, const LieAlgebra& g, std::vector<int> fallback) {
  std::vector<int> a = cfg.a ? *cfg.a : std::move(fallback);
  if (static_cast<int>(a.size()) > g.dim()) throw InputError("--a has more entries than the dimension");
  Covector tau(static_cast<std::size_t>(g.dim()));
  for (std::size_t i = 0; i < a.size(); ++i) tau[i] = Rational(a[i]);
  if (!is_character(g, tau)) throw InputError("--a does not vanish on [g, g]");
  return tau;
}

int cmd_etau(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, false);
  const auto& g = p.algebra;
  Covector tau = tau_from(cfg, g, {1});
  TrigVec ts;
  ETauParts parts = etau_parts(g);
  if (p.derivation) {
    ts = pull_character(g, tau, exp_derivation(*p.derivation));
  } else {
    for (const auto& x : tau) ts.emplace_back(x);
  }
  TrigMatrix e = e_tau(parts, ts);
  auto pts = sample_points(cfg);
  if (cfg.format == "csv") {
    out << "s";
    for (int i = 0; i < g.dim(); ++i) out << ",lambda_" << i + 1;
    out << "\n";
    for (double s : pts) {
      out << fmt17(s);
      for (double lam : eigenvalues_numeric(e, s)) out << "," << fmt17(lam);
      out << "\n";
    }
    return 0;
  }
  out << "tau_s = " << format_trig_vector(ts, p.dual_names) << "\n";
  out << "E_tau entries (row, column):\n";
  for (int l = 0; l < g.dim(); ++l)
    for (int k = 0; k < g.dim(); ++k)
      if (!e(l, k).is_zero())
        out << "  (" << p.dual_names[static_cast<std::size_t>(l)] << ", " << p.dual_names[static_cast<std::size_t>(k)] << ") = " << e(l, k) << "\n";
  auto cp = char_poly(e);
  out << "characteristic polynomial coefficients (highest degree first):\n";
  for (std::size_t k = 0; k < cp.size(); ++k) out << "  x^" << cp.size() - 1 - k << ": " << cp[k] << "\n";
  for (double s : pts) {
    out << "eigenvalues at s = " << fmt17(s) << ":";
    for (double lam : eigenvalues_numeric(e, s)) out << " " << fmt17(lam);
    out << "\n";
  }
  return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, false);
  const auto& g = p.algebra;
  auto ctx = make_constancy_context(g, require_derivation(p));
  const bool text = cfg.format == "text" && cfg.samples == 0 && cfg.s_values.empty();

  if (cfg.samples > 0 || !cfg.s_values.empty()) {
    if (!cfg.a) throw InputError("sampling needs --a");
    Covector tau = tau_from(cfg, g, {});
    auto rep = constancy_report(ctx, tau);
    if (cfg.plot_script) {
      out << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 's'\nplot for [i=2:" << rep.coefficients.size() + 1
          << "] 'scan.csv' using 1:i with lines\n";
      return 0;
    }
    out << "s";
    const std::size_t deg = rep.coefficients.size() - 1;
    for (std::size_t k = 0; k < rep.coefficients.size(); ++k) {
      out << ",x^" << deg - k;
      if (!rep.coefficients[k].is_constant().constant) out << " (varies)";
    }
    out << ",constant\n";
    for (double s : sample_points(cfg)) {
      out << fmt17(s);
      for (const auto& c : rep.coefficients) out << "," << fmt17(eval_hp(c, s, cfg.precision));
      out << "," << (rep.constant ? "true" : "false") << "\n";
    }
    return 0;
  }

  std::vector<std::vector<int>> tuples;
  if (cfg.a) {
    tuples.push_back(*cfg.a);
  } else {
    if (!cfg.radius.is_integer()) throw InputError("--radius must be an integer for a sweep");
    const int b = static_cast<int>(cfg.radius.to_double());
    for (const auto& row : constancy_sweep(ctx, b)) tuples.push_back({row.a[0], row.a[1], row.a[2], row.a[3]});
  }
  if (!text) out << "a1,a2,a3,a4,constant,coefficient,frequency\n";
  int constant = 0;
  for (const auto& a : tuples) {
    RunConfig one = cfg;
    one.a = a;
    auto rep = constancy_report(ctx, tau_from(one, g, {}));
    constant += rep.constant;
    std::vector<int> a4 = a;
    a4.resize(4, 0);
    const int deg = static_cast<int>(rep.coefficients.size()) - 1;
    if (text) {
      out << "a=(" << a4[0] << "," << a4[1] << "," << a4[2] << "," << a4[3] << "): ";
      if (rep.constant) {
        out << "constant\n";
      } else {
        out << "nonconstant (coefficient of x^" << deg - *rep.witness_coefficient << ", frequency " << rep.witness_term->first.k
            << ")\n";
      }
    } else {
      out << a4[0] << "," << a4[1] << "," << a4[2] << "," << a4[3] << "," << (rep.constant ? "true" : "false") << ","
          << (rep.constant ? -1 : deg - *rep.witness_coefficient) << "," << (rep.constant ? 0 : rep.witness_term->first.k) << "\n";
    }
  }
  if (text && tuples.size() > 1) out << constant << " of " << tuples.size() << " tuples constant\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  Problem p = load_problem(cfg, false);
  const auto& g = p.algebra;
  std::vector<double> s = cfg.s_values.empty() ? std::vector<double>{0.0, 0.5} : cfg.s_values;
  if (s.size() != 2) throw InputError("spectrum-compare needs exactly two --s values");
  SpectrumReport rep;
  try {
    rep = spectrum_compare(g, require_derivation(p), cfg.radius, s[0], s[1]);
  } catch (const std::length_error& e) {
    throw InputError(e.what());
  }
  if (cfg.format == "csv") {
    for (const auto& n : p.dual_names) out << n << ",";
    out << "s";
    for (int i = 0; i < g.dim(); ++i) out << ",lambda_" << i + 1;
    out << "\n";
    for (const auto& row : rep.rows) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& x : row.tau) out << x << ",";
        out << fmt17(pass ? rep.s2 : rep.s1);
        for (double lam : pass ? row.second : row.first) out << "," << fmt17(lam);
        out << "\n";
      }
    }
  }
  const char* lead = cfg.format == "csv" ? "# " : "";
  out << lead << "characters: " << rep.rows.size() << "\n";
  out << lead << "function part: " << (rep.functions_equal ? "equal" : "differs") << (rep.functions_exact ? " (exact, |tau_s| constant)" : "")
      << ", distance " << fmt17(rep.function_distance) << "\n";
  out << lead << "1-form part: max distance " << fmt17(rep.max_oneform_distance) << ", pooled distance "
      << fmt17(rep.union_oneform_distance) << "\n";
  out << lead << "verdict: "
      << (rep.functions_equal && rep.max_oneform_distance > 1e-3 ? "isospectral on characters, not on 1-forms"
                                                                  : rep.max_oneform_distance > 1e-3 ? "functions differ"
                                                                                                    : "no difference detected")
      << "\n";
  out << lead << "note: " << rep.limitation << "\n";
  return 0;
}

int cmd_reproduce(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.example) throw InputError("reproduce needs --example");
  ReproduceOptions opt;
  opt.tamper_sign = cfg.tamper_sign;
  auto stages = reproduce(*cfg.example, opt);
  const StageResult* first = nullptr;
  for (const auto& st : stages) {
    out << st.name << ": " << (st.pass ? "PASS" : "FAIL");
    if (!st.detail.empty()) out << " (" << st.detail << ")";
    out << "\n";
    if (!st.pass && !first) first = &st;
  }
  if (first) {
    out << "first failure: " << first->name << ": " << first->detail << "\n";
    return 1;
  }
  out << "all stages PASS\n";
  return 0;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoi(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer list '" + s + "'");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad number list '" + s + "'");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nilspec: isospectral deformations of nilmanifolds"};
  app.require_subcommand(1);
  std::string example, input, radius = "2", s_list, a_list, format = "text", output, tamper;
  int samples = 0;
  unsigned precision = 0;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "check brackets, Jacobi, step, center, strict nonsingularity"},
      {"extend", "central extension by the two-form, plus the extended derivation"},
      {"derivation", "classify a derivation and its pullback of omega"},
      {"deform", "closed form of exp(sD), numeric samples as CSV"},
      {"laplacian", "connection table and Laplacian on invariant 1-forms"},
      {"etau", "E_tau for a pulled character, its characteristic polynomial and eigenvalues"},
      {"scan", "constancy of the characteristic polynomial coefficients in s"},
      {"spectrum-compare", "character spectra at two deformation parameters"},
      {"reproduce", "run every check for a bundled example"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    if (name == "scan") sub->alias("charpoly-scan");
    sub->add_option("--example", example, "bundled example (I or II)");
    sub->add_option("--input", input, "algebra file");
    sub->add_option("--a", a_list, "character coordinates, e.g. 1,1,0,0");
    sub->add_option("--radius", radius, "radius (rational) or sweep bound");
    sub->add_option("--s", s_list, "comma-separated parameter values");
    sub->add_option("--samples", samples, "number of equally spaced samples in [0, 2pi)");
    sub->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--precision", precision, "bits for high-precision evaluation (>= 64)");
    sub->add_option("--output", output, "write to this file instead of stdout");
    if (name == "reproduce") sub->add_option("--tamper", tamper, "fault injection (sign)")->check(CLI::IsMember({"sign"}));
    if (name == "scan") sub->add_flag("--plot-script", "emit a gnuplot script for the sample CSV");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  RunConfig cfg;
  try {
    auto* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    const bool has_example = sub->count("--example") > 0, has_input = sub->count("--input") > 0;
    if (has_example == has_input) throw InputError("give exactly one of --example and --input");
    if (has_example) cfg.example = parse_example_id(example);
    if (has_input) cfg.input = input;
    try {
      cfg.radius = Rational::parse(radius);
    } catch (const std::exception&) {
      throw InputError("bad radius '" + radius + "'");
    }
    if (cfg.radius.sign() < 0) throw InputError("radius must be nonnegative");
    if (sub->count("--s")) cfg.s_values = parse_double_list(s_list);
    if (sub->count("--a")) cfg.a = parse_int_list(a_list);
    if (samples < 0) throw InputError("--samples must be nonnegative");
    cfg.samples = samples;
    cfg.format = format;
    cfg.precision = 64;
    if (const char* env = std::getenv("NILSPEC_PRECISION")) {
      try {
        cfg.precision = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception&) {
        throw InputError("NILSPEC_PRECISION is not a number");
      }
    }
    if (sub->count("--precision")) cfg.precision = precision;
    if (cfg.precision < 64) throw InputError("precision must be at least 64 bits");
    cfg.tamper_sign = tamper == "sign";
    cfg.plot_script = sub->get_option_no_throw("--plot-script") && sub->count("--plot-script") > 0;
    if (sub->count("--output")) cfg.output = output;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  if (cfg.output) {
    file.open(*cfg.output);
    if (!file) {
      err << "error: cannot write " << *cfg.output << "\n";
      return 2;
    }
  }
  std::ostream& sink = cfg.output ? file : out;

  try {
    const std::string& c = cfg.subcommand;
    int rc = 0;
    if (c == "validate") rc = cmd_validate(cfg, sink);
    else if (c == "extend") rc = cmd_extend(cfg, sink);
    else if (c == "derivation") rc = cmd_derivation(cfg, sink);
    else if (c == "deform") rc = cmd_deform(cfg, sink);
    else if (c == "laplacian") rc = cmd_laplacian(cfg, sink);
    else if (c == "etau") rc = cmd_etau(cfg, sink);
    else if (c == "scan") rc = cmd_scan(cfg, sink);
    else if (c == "spectrum-compare") rc = cmd_spectrum(cfg, sink);
    else rc = cmd_reproduce(cfg, sink);
    sink.flush();
    return rc;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nilspec::cli
