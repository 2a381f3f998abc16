#include "stechkin/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "stechkin/applications.hpp"
#include "stechkin/core.hpp"
#include "stechkin/errors.hpp"
#include "stechkin/io.hpp"
#include "stechkin/oracle.hpp"
#include "stechkin/orthopoly.hpp"

namespace stechkin::cli {

using io::Json;

namespace {

struct RunConfig {
  std::string phi = "pow:1";
  std::string psi = "pow:2";
  std::string measure;
  std::optional<double> tau;
  std::optional<double> n_target;
  std::string tau_grid;
  std::string format = "json";
  double rel_tol = numerics::kDefaultQuadTol;
  int k = 1, r = 2;
  double h = 1.0;
  std::string family = "hermite";
  double alpha = 0.0, beta = 0.0, t = 0.0;
  int max_n = kOpolyMaxTerms;
  std::string domain;
  std::string suite;
  std::uint64_t seed = 1;
  int count = 10;
};

double env_rel_tol() {
  const char* v = std::getenv(kRelTolEnv);
  if (!v || !*v) return numerics::kDefaultQuadTol;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(x > 0.0 && x < 1.0))
    throw ConfigError(std::string(kRelTolEnv) + " must be a number in (0, 1)");
  return x;
}

std::vector<double> taus(const RunConfig& c) {
  if (!c.tau_grid.empty() && c.tau) throw ConfigError("give either --tau or --tau-grid, not both");
  if (!c.tau_grid.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(c.tau_grid);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("--tau-grid expects lo:hi:steps");
    try {
      return geometric_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
    } catch (const std::invalid_argument&) {
      throw ConfigError("--tau-grid expects lo:hi:steps");
    }
  }
  if (!c.tau) throw ConfigError("--tau or --tau-grid is required");
  return {*c.tau};
}

Json constants_json(const SharpConstants& s, double rel_tol) {
  Json j;
  j["tau"] = s.tau;
  j["N"] = s.N;
  j["M"] = s.M;
  j["E"] = s.E;
  j["N_error"] = s.N_error;
  j["M_error"] = s.M_error;
  j["E_error"] = s.E_error;
  j["rel_tol"] = rel_tol;
  return j;
}

Json point_json(const PointConstants& p, double rel_tol) {
  Json j;
  if (p.t) j["t"] = *p.t;
  j["tau"] = p.tau;
  j["N"] = p.N;
  j["M"] = p.M;
  j["E"] = p.E;
  j["N_error"] = p.N_error;
  j["E_error"] = p.E_error;
  j["terms"] = p.terms;
  j["N_sq_tail_bound"] = p.n_sq_tail;
  j["E_sq_tail_bound"] = p.e_sq_tail;
  j["converged"] = p.converged;
  j["rel_tol"] = rel_tol;
  return j;
}

// rows share their keys; a single row is printed as an object
void emit(const RunConfig& c, const std::vector<Json>& rows, std::ostream& out) {
  if (c.format == "csv") {
    bool header = false;
    for (const auto& row : rows) {
      if (!header) {
        bool first = true;
        for (const auto& [k, v] : row.items()) {
          out << (first ? "" : ",") << k;
          first = false;
        }
        out << '\n';
        header = true;
      }
      bool first = true;
      for (const auto& [k, v] : row.items()) {
        std::string cell = io::dump(v, 0);
        if (!cell.empty() && cell.front() == '"') cell = cell.substr(1, cell.size() - 2);
        out << (first ? "" : ",") << cell;
        first = false;
      }
      out << '\n';
    }
    return;
  }
  if (rows.size() == 1) {
    out << io::dump(rows.front()) << '\n';
  } else {
    Json j;
    j["rows"] = Json::array();
    for (const auto& r : rows) j["rows"].push_back(r);
    out << io::dump(j) << '\n';
  }
}

Problem problem(const RunConfig& c) {
  if (c.measure.empty()) throw ConfigError("--measure is required");
  return Problem(io::load_measure(c.measure), io::parse_symbol(c.phi), io::parse_symbol(c.psi),
                 c.rel_tol);
}

OrthogonalFamily family(const RunConfig& c) {
  if (c.family == "hermite") return OrthogonalFamily::hermite();
  if (c.family == "laguerre") return OrthogonalFamily::laguerre(c.alpha);
  if (c.family == "jacobi") return OrthogonalFamily::jacobi(c.alpha, c.beta);
  throw ConfigError("--family must be hermite, laguerre or jacobi");
}

int cmd_constants(const RunConfig& c, std::ostream& out) {
  const auto p = problem(c);
  std::vector<Json> rows;
  for (double tau : taus(c)) rows.push_back(constants_json(best_approx(p, tau), c.rel_tol));
  emit(c, rows, out);
  return kOk;
}

int cmd_solve_tau(const RunConfig& c, std::ostream& out) {
  if (!c.n_target) throw ConfigError("--N is required");
  const auto p = problem(c);
  const auto s = solve_tau(p, *c.n_target);
  Json j = constants_json(s.constants, c.rel_tol);
  j["N_target"] = *c.n_target;
  j["root_rel_tol"] = numerics::kDefaultRootTol;
  j["bracket_lo"] = s.root.bracket_lo;
  j["bracket_hi"] = s.root.bracket_hi;
  j["iterations"] = s.root.iterations;
  j["monotone_on_bracket"] = s.root.monotone_on_bracket();
  emit(c, {j}, out);
  return kOk;
}

int cmd_taikov(const RunConfig& c, std::ostream& out) {
  const auto t = taikov_constants({c.k, c.r, c.h});
  Json j;
  j["k"] = c.k;
  j["r"] = c.r;
  j["h"] = c.h;
  j["a"] = t.a;
  j["b"] = t.b;
  j["N"] = t.N;
  j["E"] = t.E;
  j["exponent"] = taikov_exponent(c.k, c.r);
  j["error"] = 0.0;
  emit(c, {j}, out);
  return kOk;
}

int cmd_line_or_circle(const RunConfig& c, std::ostream& out, bool line) {
  const auto phi = io::parse_symbol(c.phi);
  const auto psi = io::parse_symbol(c.psi);
  std::vector<Json> rows;
  for (double tau : taus(c)) {
    const auto pc = line ? line_constants(phi, psi, tau, c.rel_tol) : circle_constants(phi, psi, tau, c.rel_tol);
    rows.push_back(point_json(pc, c.rel_tol));
  }
  emit(c, rows, out);
  return kOk;
}

int cmd_opoly(const RunConfig& c, std::ostream& out) {
  const auto fam = family(c);
  const auto phi = io::parse_symbol(c.phi);
  const auto psi = io::parse_symbol(c.psi);
  std::vector<Json> rows;
  for (double tau : taus(c)) {
    auto j = point_json(opoly_constants(fam, phi, psi, tau, c.t, c.max_n, c.rel_tol), c.rel_tol);
    j["family"] = fam.describe();
    rows.push_back(j);
  }
  emit(c, rows, out);
  return kOk;
}

int cmd_extremal(const RunConfig& c, std::ostream& out) {
  const auto p = problem(c);
  std::vector<Json> rows;
  for (double tau : taus(c)) {
    const auto x = extremal_element(p, tau);
    Json j = constants_json(x.constants, c.rel_tol);
    j["norm_x"] = x.norm_x;
    j["norm_psi_x"] = x.norm_psi_x;
    j["functional_value"] = x.functional_value;
    j["hormander_coefficient"] = x.hormander_coefficient;
    j["additive_residual"] = x.additive_residual;
    j["hormander_residual"] = x.hormander_residual;
    j["identity_residual"] = x.identity_residual;
    if (c.format != "csv" && !x.coefficients.empty()) {
      Json coeffs = Json::array();
      for (const auto& [t, z] : x.coefficients) coeffs.push_back(Json{{"t", t}, {"re", z.real()}, {"im", z.imag()}});
      j["coefficients"] = coeffs;
    }
    rows.push_back(j);
  }
  emit(c, rows, out);
  return kOk;
}

int cmd_hlp(const RunConfig& c, std::ostream& out) {
  const auto phi = io::parse_symbol(c.phi);
  const auto psi = io::parse_symbol(c.psi);
  numerics::Interval dom = numerics::kRealLine;
  if (!c.domain.empty()) {
    const auto pos = c.domain.find(':');
    if (pos == std::string::npos) throw ConfigError("--domain expects lo:hi");
    const auto parse = [](const std::string& s) {
      if (s == "inf" || s == "+inf") return numerics::kInf;
      if (s == "-inf") return -numerics::kInf;
      try {
        return std::stod(s);
      } catch (const std::exception&) {
        throw ConfigError("--domain expects lo:hi");
      }
    };
    dom = {parse(c.domain.substr(0, pos)), parse(c.domain.substr(pos + 1))};
    if (!(dom.lo < dom.hi)) throw ConfigError("--domain needs lo < hi");
  }
  std::vector<Json> rows;
  for (double tau : taus(c)) {
    const auto r = hlp_constant(phi, psi, tau, dom);
    Json j;
    j["tau"] = tau;
    j["constant"] = r.constant;
    j["infinite"] = r.infinite;
    j["closed_form"] = r.closed_form;
    if (r.argmax) j["argmax"] = *r.argmax;
    j["at_infinity"] = r.at_infinity;
    j["error"] = r.closed_form ? 0.0 : c.rel_tol;
    if (!r.note.empty()) j["note"] = r.note;
    rows.push_back(j);
  }
  emit(c, rows, out);
  for (const auto& j : rows)
    if (j["infinite"].get<bool>()) return kAdmissibility;
  return kOk;
}

struct SuiteOutcome {
  Json report;
  bool passed = true;
};

void track_max(Json& j, const char* key, double v) {
  if (!j.contains(key) || j[key].get<double>() < v) j[key] = v;
}

SuiteOutcome suite_oracle(const RunConfig& c) {
  std::mt19937_64 rng(c.seed);
  SuiteOutcome o;
  Json& r = o.report;
  r["max_residual"] = 0.0;
  r["max_coefficient_diff"] = 0.0;
  r["max_perturbation_gain"] = 0.0;
  r["max_lambda_vs_tau"] = 0.0;
  for (int i = 0; i < c.count; ++i) {
    const auto inst = random_instance(rng);
    const double tau = random_tau(rng);
    const auto v = verify_theorems(inst, tau, c.seed);
    track_max(r, "max_residual", v.max_relative());
    track_max(r, "max_coefficient_diff", v.coefficient_max_diff);
    track_max(r, "max_perturbation_gain", v.perturbation_gain);
    track_max(r, "max_lambda_vs_tau", v.lambda_vs_tau);
  }
  r["residual_tolerance"] = 1e-10;
  r["coefficient_tolerance"] = 1e-8;
  r["perturbation_tolerance"] = 1e-12;
  o.passed = r["max_residual"].get<double>() <= 1e-10 && r["max_coefficient_diff"].get<double>() <= 1e-8 &&
             r["max_perturbation_gain"].get<double>() <= 1e-12;
  return o;
}

SuiteOutcome suite_extremal(const RunConfig& c) {
  std::mt19937_64 rng(c.seed);
  SuiteOutcome o;
  Json& r = o.report;
  r["max_additive_equality"] = 0.0;
  r["max_hormander_equality"] = 0.0;
  r["max_hormander_identity"] = 0.0;
  r["max_additive_ratio"] = 0.0;
  r["max_hormander_ratio"] = 0.0;
  for (int i = 0; i < c.count; ++i) {
    const auto inst = random_instance(rng);
    const double tau = random_tau(rng);
    const auto v = verify_theorems(inst, tau, c.seed);
    track_max(r, "max_additive_equality", v.extremal_equality);
    track_max(r, "max_hormander_equality", v.hormander_equality);
    track_max(r, "max_hormander_identity", v.hormander_identity);
    const auto q = check_inequalities(inst, tau, rng, 50);
    track_max(r, "max_additive_ratio", q.additive_max_ratio);
    track_max(r, "max_hormander_ratio", q.hormander_max_ratio);
  }
  r["residual_tolerance"] = 1e-10;
  o.passed = r["max_additive_equality"].get<double>() <= 1e-10 &&
             r["max_hormander_equality"].get<double>() <= 1e-10 &&
             r["max_hormander_identity"].get<double>() <= 1e-10 &&
             r["max_additive_ratio"].get<double>() <= 1.0 + 1e-12 &&
             r["max_hormander_ratio"].get<double>() <= 1.0 + 1e-12;
  return o;
}

SuiteOutcome suite_lemmas(const RunConfig& c) {
  std::mt19937_64 rng(c.seed);
  SuiteOutcome o;
  Json& r = o.report;
  const auto grid = geometric_grid(1e-4, 1e4, 50);
  int violations = 0, tau_m_violations = 0;
  r["max_difference_identity_residual"] = 0.0;
  r["max_continuity_jump"] = 0.0;
  r["max_limit_tau0_rel_gap"] = 0.0;
  r["max_decay_ratio"] = 0.0;
  for (int i = 0; i < c.count; ++i) {
    const auto inst = random_instance(rng);
    const Problem p(inst.measure(), inst.phi, inst.psi, c.rel_tol);
    const auto rep = lemma_suite(p, grid);
    violations += rep.monotonicity_violations;
    tau_m_violations += rep.tau_m_monotonicity_violations;
    track_max(r, "max_difference_identity_residual", rep.difference_identity_residual);
    track_max(r, "max_continuity_jump", rep.continuity_max_jump);
    if (rep.f_in_domain && rep.norm_phi_f > 0.0)
      track_max(r, "max_limit_tau0_rel_gap", std::abs(rep.n_at_tau_min - rep.norm_phi_f) / rep.norm_phi_f);
    track_max(r, "max_decay_ratio", rep.decay_ratio);
  }
  r["tau_min"] = grid.front();
  r["tau_max"] = grid.back();
  r["monotonicity_violations"] = violations;
  r["tau_m_monotonicity_violations"] = tau_m_violations;
  r["identity_tolerance"] = 1e-8;
  o.passed = violations == 0 && tau_m_violations == 0 &&
             r["max_difference_identity_residual"].get<double>() <= 1e-8;
  return o;
}

SuiteOutcome suite_opoly(const RunConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SuiteOutcome o;
  Json& r = o.report;
  r["max_consistency_gap"] = 0.0;
  r["max_ode_residual"] = 0.0;
  const Symbol phi = Symbol::power(1.0);
  const Symbol psi = Symbol::power(2.0);
  for (int i = 0; i < c.count; ++i) {
    const int k = pick(rng);
    const auto fam = k == 0   ? OrthogonalFamily::hermite()
                     : k == 1 ? OrthogonalFamily::laguerre(2.0 * unit(rng))
                              : OrthogonalFamily::jacobi(2.0 * unit(rng) - 0.5, 2.0 * unit(rng) - 0.5);
    const double t = k == 0 ? 4.0 * unit(rng) - 2.0 : k == 1 ? 0.1 + 4.0 * unit(rng) : 1.8 * unit(rng) - 0.9;
    const double tau = std::exp(std::log(0.1) + unit(rng) * std::log(100.0));
    const auto pc = opoly_constants(fam, phi, psi, tau, t, kOpolyMaxTerms, c.rel_tol);
    const auto f = fam.eval_all(static_cast<int>(pc.terms) - 1, t);
    std::vector<Atom> atoms;
    for (std::size_t n = 0; n < f.size(); ++n) atoms.push_back({static_cast<double>(n), f[n] * f[n]});
    const auto sc = best_approx(Problem(SpectralMeasure::discrete(atoms), phi, psi), tau);
    const double gap = std::max(std::abs(sc.N - pc.N) / sc.N, std::abs(sc.E - pc.E) / sc.E);
    track_max(r, "max_consistency_gap", gap);
    for (int n = 0; n <= 10; ++n) {
      const double scale = (std::abs(fam.gamma(n)) + 1.0) * std::max(1.0, std::abs(fam.eval(n, t)));
      track_max(r, "max_ode_residual", fam.ode_residual(n, t) / scale);
    }
  }
  r["consistency_tolerance"] = 1e-10;
  r["ode_tolerance"] = 1e-6;
  o.passed = r["max_consistency_gap"].get<double>() <= 1e-10 && r["max_ode_residual"].get<double>() <= 1e-6;
  return o;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.count < 1) throw ConfigError("--count must be positive");
  SuiteOutcome o;
  if (c.suite == "oracle")
    o = suite_oracle(c);
  else if (c.suite == "extremal")
    o = suite_extremal(c);
  else if (c.suite == "lemmas")
    o = suite_lemmas(c);
  else if (c.suite == "opoly")
    o = suite_opoly(c);
  else
    throw ConfigError("--suite must be lemmas, oracle, extremal or opoly");
  Json j;
  j["suite"] = c.suite;
  j["seed"] = c.seed;
  j["count"] = c.count;
  for (const auto& [k, v] : o.report.items()) j[k] = v;
  j["passed"] = o.passed;
  out << io::dump(j) << '\n';
  return o.passed ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Sharp constants of additive operator inequalities and best approximation of functionals"};
  app.name("stechkin");
  app.require_subcommand(1);

  auto symbols = [&](CLI::App* s) {
    s->add_option("--phi", c.phi, "symbol phi: pow:<alpha>, zero or table:<path>")->capture_default_str();
    s->add_option("--psi", c.psi, "symbol psi: pow:<alpha>, zero or table:<path>")->capture_default_str();
  };
  auto tau_opts = [&](CLI::App* s) {
    s->add_option("--tau", c.tau, "tau > 0");
    s->add_option("--tau-grid", c.tau_grid, "geometric sweep lo:hi:steps");
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    s->add_option("--rel-tol", c.rel_tol, "relative tolerance")->check(CLI::Range(0.0, 1.0));
  };

  auto* constants = app.add_subcommand("constants", "N, M and E = tau M for a measure");
  symbols(constants);
  tau_opts(constants);
  common(constants);
  constants->add_option("--measure", c.measure, "measure JSON file or builtin:<name>")->required();

  auto* solve = app.add_subcommand("solve-tau", "tau with N(tau) equal to a target");
  symbols(solve);
  common(solve);
  solve->add_option("--measure", c.measure, "measure JSON file or builtin:<name>")->required();
  solve->add_option("--N", c.n_target, "target value of N")->required();

  auto* taikov = app.add_subcommand("taikov", "closed-form constants for the k-th derivative");
  taikov->set_help_flag("--help", "print this help message and exit");
  common(taikov);
  taikov->add_option("--k", c.k, "derivative order")->capture_default_str();
  taikov->add_option("--r", c.r, "higher derivative order")->capture_default_str();
  taikov->add_option("--h", c.h, "scale h > 0")->capture_default_str();

  auto* line = app.add_subcommand("line", "pointwise constants on the real line");
  symbols(line);
  tau_opts(line);
  common(line);

  auto* circle = app.add_subcommand("circle", "pointwise constants for Fourier series");
  symbols(circle);
  tau_opts(circle);
  common(circle);

  auto* opoly = app.add_subcommand("opoly", "pointwise constants for orthogonal expansions");
  symbols(opoly);
  tau_opts(opoly);
  common(opoly);
  opoly->add_option("--family", c.family, "hermite, laguerre or jacobi")->capture_default_str();
  opoly->add_option("--alpha", c.alpha, "family parameter alpha")->capture_default_str();
  opoly->add_option("--beta", c.beta, "Jacobi parameter beta")->capture_default_str();
  opoly->add_option("--t", c.t, "evaluation point")->capture_default_str();
  opoly->add_option("--max-n", c.max_n, "largest degree summed")->capture_default_str();

  auto* extremal = app.add_subcommand("extremal", "extremal element and its equality residuals");
  symbols(extremal);
  tau_opts(extremal);
  common(extremal);
  extremal->add_option("--measure", c.measure, "measure JSON file or builtin:<name>")->required();

  auto* hlp = app.add_subcommand("hlp", "sup-based constant of ||phi(A)x|| <= C (||x||^2 + tau||psi(A)x||^2)^(1/2)");
  symbols(hlp);
  tau_opts(hlp);
  common(hlp);
  hlp->add_option("--domain", c.domain, "spectral domain lo:hi (default the real line)");

  auto* verify = app.add_subcommand("verify", "randomized verification suites");
  common(verify);
  verify->add_option("--suite", c.suite, "lemmas, oracle, extremal or opoly")->required();
  verify->add_option("--seed", c.seed, "random seed")->capture_default_str();
  verify->add_option("--count", c.count, "number of random cases")->capture_default_str();

  std::vector<const char*> argv{"stechkin"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    c.rel_tol = env_rel_tol();
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  }

  try {
    if (*constants) return cmd_constants(c, out);
    if (*solve) return cmd_solve_tau(c, out);
    if (*taikov) return cmd_taikov(c, out);
    if (*line) return cmd_line_or_circle(c, out, true);
    if (*circle) return cmd_line_or_circle(c, out, false);
    if (*opoly) return cmd_opoly(c, out);
    if (*extremal) return cmd_extremal(c, out);
    if (*hlp) return cmd_hlp(c, out);
    if (*verify) return cmd_verify(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const OutOfRangeError& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const AdmissibilityError& e) {
    err << "admissibility: " << e.what() << '\n';
    return kAdmissibility;
  } catch (const ConvergenceError& e) {
    err << "convergence: " << e.what() << '\n';
    return kNonConvergence;
  }
  return kBadConfig;
}

}  // namespace stechkin::cli
