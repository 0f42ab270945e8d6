// polybound command-line frontend.
//
// Geometrized ("code") units throughout: G = c = M_sun = 1, so masses are in
// solar masses and lengths in units of G M_sun / c^2 (about 1.4766 km).
// Mass and radius flags default to M_sun and R_sun; --geometrized switches
// them to code units.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "polybound/bounds.hpp"
#include "polybound/catalog.hpp"
#include "polybound/eos.hpp"
#include "polybound/error.hpp"
#include "polybound/json_io.hpp"
#include "polybound/relations.hpp"
#include "polybound/scan.hpp"
#include "polybound/structure.hpp"
#include "polybound/units.hpp"

namespace pb = polybound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitNumerical = 4;

int exit_code(pb::ErrorKind kind) {
  switch (kind) {
    case pb::ErrorKind::InvalidInput:
      return kExitInvalid;
    case pb::ErrorKind::NoSolution:
      return kExitNoSolution;
    case pb::ErrorKind::Numerical:
      return kExitNumerical;
  }
  return kExitNumerical;
}

void print(const pb::Json& j) { std::cout << pb::dump_json(j) << '\n'; }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pb::DomainError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw pb::DomainError("cannot write '" + path + "'");
  return out;
}

/// Solar radius in code lengths.
double solar_radius_code() { return pb::units::solar_radii_to_code_length(1.0); }

struct Globals {
  bool geometrized = false;
  double radius_to_code(double r) const {
    return geometrized ? r : pb::units::solar_radii_to_code_length(r);
  }
};

// --- solve -----------------------------------------------------------------

struct SolveArgs {
  double k = 100.0;
  double k0 = 0.0;
  std::optional<double> gamma;
  std::optional<double> n;
  std::string eos_file;
  double rho_c = 5e-4;
  std::string mode = "tov";
  std::string output;
  double rel_tol = 1e-10;
  double surface_fraction = 1e-10;
};

pb::PolytropicEos eos_from(const SolveArgs& a) {
  if (!a.eos_file.empty()) {
    auto in = open_input(a.eos_file);
    return pb::parse_eos(in);
  }
  if (a.gamma && a.n) throw pb::DomainError("give either --gamma or --n, not both");
  if (a.n) return pb::PolytropicEos::from_index(a.k, a.k0, *a.n);
  return pb::PolytropicEos(a.k, a.k0, a.gamma.value_or(2.0));
}

int run_solve(const SolveArgs& a) {
  const auto eos = eos_from(a);
  const auto mode = pb::parse_mode(a.mode);
  pb::IntegrationOptions opts;
  opts.rel_tol = a.rel_tol;
  opts.surface_fraction = a.surface_fraction;
  if (!(a.rho_c > 0.0)) throw pb::DomainError("--rho-c must be positive");
  const auto verdict = pb::is_causal_at_center(eos, a.rho_c);
  const auto profile =
      mode == pb::ScanMode::Tov ? pb::integrate_tov(eos, a.rho_c, opts) : pb::newtonian_star(eos, a.rho_c, opts);
  const auto surface = pb::surface_data(profile);
  if (!a.output.empty()) {
    auto out = open_output(a.output);
    pb::write_profile_csv(out, profile);
  }
  const double m = profile.total_mass;
  const double r = profile.surface_radius;
  print(pb::Json{{"mode", pb::mode_name(mode)},
                 {"k", eos.k()},
                 {"k0", eos.k0()},
                 {"gamma", eos.gamma()},
                 {"n", eos.n()},
                 {"rho_c", a.rho_c},
                 {"mass", m},
                 {"radius", r},
                 {"radius_km", pb::units::code_length_to_km(r)},
                 {"radius_rsun", pb::units::code_length_to_solar_radii(r)},
                 {"compactness", 2.0 * m / r},
                 {"p_prime_surface", surface.p_prime_surface},
                 {"surface_combination", surface.rho_rel_combination},
                 {"causal", verdict.causal},
                 {"v2_center", verdict.v2_max},
                 {"samples", profile.r.size()}});
  return kExitOk;
}

// --- lane-emden ------------------------------------------------------------

struct LaneEmdenArgs {
  double n = 1.0;
  std::string output;
  double rel_tol = 1e-10;
};

int run_lane_emden(const LaneEmdenArgs& a) {
  pb::IntegrationOptions opts;
  opts.rel_tol = a.rel_tol;
  const auto sol = pb::integrate_lane_emden(a.n, opts);
  if (!a.output.empty()) {
    auto out = open_output(a.output);
    out << "xi,theta,theta_prime\n";
    char buf[128];
    for (std::size_t i = 0; i < sol.xi.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", sol.xi[i], sol.theta[i], sol.theta_prime[i]);
      out << buf;
    }
  }
  print(pb::Json{{"n", sol.n},
                 {"finite_radius", sol.finite_radius},
                 {"xi1", sol.xi1},
                 {"theta_prime_at_xi1", sol.theta_prime_at_xi1},
                 {"omega", sol.finite_radius ? sol.omega() : std::nan("")}});
  return kExitOk;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  std::string config;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string output;
  std::string format = "csv";
};

int run_scan(const ScanArgs& a) {
  auto in = open_input(a.config);
  const auto spec = pb::parse_scan_spec(in);
  const auto points = pb::run_scan(spec, a.jobs);
  if (!a.output.empty()) {
    auto out = open_output(a.output);
    if (a.format == "json") {
      out << pb::dump_json(pb::to_json(points)) << '\n';
    } else {
      pb::write_scan_csv(out, points);
    }
  }
  pb::Json counts = pb::Json::object();
  for (auto s : {pb::PointStatus::Ok, pb::PointStatus::HorizonApproach, pb::PointStatus::NoFiniteRadius,
                 pb::PointStatus::NonConvergence, pb::PointStatus::Invalid}) {
    std::size_t c = 0;
    for (const auto& p : points) c += p.status == s;
    counts[std::string(pb::status_name(s))] = c;
  }
  std::size_t causal = 0;
  for (const auto& p : points) causal += p.causal;
  print(pb::Json{{"mode", pb::mode_name(spec.mode)},
                 {"points", points.size()},
                 {"causal", causal},
                 {"status", counts}});
  return kExitOk;
}

// --- bound -----------------------------------------------------------------

struct BoundArgs {
  double n = 0.0;
  double mass = 0.0;
  double radius = 0.0;
  double surface_combination = 1.0;
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double mass_derivative_bound = 0.0;
  double seed_mass = 1.0;
  std::string relation;
  bool consistent = false;
};

pb::Json wrap(const pb::BoundResult& bound, const Globals& g) {
  return pb::Json{{"units", g.geometrized ? "geometrized" : "solar"}, {"bound", pb::to_json(bound)}};
}

int run_causal_k(const BoundArgs& a, const Globals& g) {
  const auto bound = pb::newtonian_causal_k_bound(a.n, a.mass, g.radius_to_code(a.radius), a.surface_combination);
  pb::Json j{{"units", "geometrized"}, {"bound", pb::to_json(bound)}};
  print(j);
  return kExitOk;
}

int run_theorem1(const BoundArgs& a, const Globals& g) {
  const auto bound = pb::theorem1_parameter_bound(a.b, a.mass, a.radius);
  auto j = wrap(bound, g);
  // a carries units of M / R^b.
  const double to_code = g.geometrized ? 1.0 : std::pow(solar_radius_code(), -a.b);
  j["value_geometrized"] = bound.value * to_code;
  j["value_solar"] = bound.value * to_code / std::pow(solar_radius_code(), -a.b);
  print(j);
  return kExitOk;
}

int run_theorem2(const BoundArgs& a, const Globals& g) {
  const auto out = pb::theorem2_density_bound({a.a, a.b}, a.mass_derivative_bound, a.radius, a.gamma);
  const double l3 = std::pow(solar_radius_code(), 3.0);
  const double rho_code = g.geometrized ? out.density.value : out.density.value / l3;
  print(pb::Json{{"units", g.geometrized ? "geometrized" : "solar"},
                 {"regime", pb::regime_name(out.regime)},
                 {"bound", pb::to_json(out.density)},
                 {"density_geometrized", rho_code},
                 {"density_solar", rho_code * l3},
                 {"gamma", pb::to_json(out.gamma)},
                 {"radius", pb::to_json(out.radius)}});
  return kExitOk;
}

int run_monomial_k(const BoundArgs& a, const Globals& g) {
  // Relation and radius go to code units before the bound is formed.
  const double a_code = g.geometrized ? a.a : a.a * std::pow(solar_radius_code(), -a.b);
  const double r_code = g.radius_to_code(a.radius);
  const auto bound = a.consistent ? pb::theorem3_causal_k_bound_monomial_consistent(a_code, a.b, a.gamma, r_code)
                                  : pb::theorem3_causal_k_bound_monomial(a_code, a.b, a.gamma, r_code);
  print(pb::Json{{"units", "geometrized"}, {"bound", pb::to_json(bound)}});
  return kExitOk;
}

pb::RationalRelation relation_in_code_units(const std::string& path, const Globals& g) {
  auto in = open_input(path);
  auto rel = pb::parse_rational(in);
  if (!g.geometrized) {
    auto terms = rel.numerator.terms();
    for (auto& term : terms) term.coefficient *= solar_radius_code();
    rel.numerator = pb::PowerSeries(std::move(terms));
  }
  return rel;
}

int run_rational_k(const BoundArgs& a, const Globals& g) {
  const auto rel = relation_in_code_units(a.relation, g);
  const auto bound = pb::theorem3_causal_k_bound_rational(rel, a.gamma, g.radius_to_code(a.radius), a.seed_mass);
  auto j = pb::Json{{"units", "geometrized"}, {"bound", pb::to_json(bound)}};
  j["relation"] = pb::format_rational(rel);
  print(j);
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string bound_file;
  std::string key = "bound";
  std::size_t grid = 1000;
  double span = 100.0;
  std::string relation;
};

double input(const pb::BoundResult& bound, const std::string& name) {
  for (const auto& [key, value] : bound.inputs) {
    if (key == name) return value;
  }
  throw pb::DomainError("bound JSON lacks input '" + name + "'");
}

pb::VerificationReport verify(const pb::BoundResult& bound, const VerifyArgs& a, const pb::Json& doc) {
  if (a.grid < 4) throw pb::DomainError("--grid must be at least 4");
  const auto k_grid = [&] {
    if (!(bound.value > 0.0) || !std::isfinite(bound.value)) {
      throw pb::DomainError("k grid needs a positive finite bound value");
    }
    return pb::log_space(bound.value / a.span, bound.value * a.span, a.grid);
  };
  switch (bound.route) {
    case pb::BoundRoute::NewtonianCausal:
      return pb::verify_bound_by_bruteforce(
          bound, pb::NewtonianCausalContext{input(bound, "n"), input(bound, "M"), input(bound, "R"),
                                            input(bound, "surface_combination")},
          k_grid());
    case pb::BoundRoute::MonomialCausal:
    case pb::BoundRoute::MonomialCausalConsistent:
      return pb::verify_bound_by_bruteforce(
          bound,
          pb::MonomialCausalContext{input(bound, "a"), input(bound, "b"), input(bound, "gamma"), input(bound, "R0")},
          k_grid());
    case pb::BoundRoute::RationalCausal: {
      pb::RationalRelation rel;
      if (!a.relation.empty()) {
        auto in = open_input(a.relation);
        rel = pb::parse_rational(in);
      } else if (doc.contains("relation")) {
        std::istringstream in(doc.at("relation").get<std::string>());
        rel = pb::parse_rational(in);
      } else {
        throw pb::DomainError("rational bound needs --relation");
      }
      return pb::verify_bound_by_bruteforce(
          bound, pb::RationalCausalContext{rel, input(bound, "gamma"), input(bound, "R0"), input(bound, "seed_M")},
          k_grid());
    }
    case pb::BoundRoute::MassRadiusCorner: {
      const double m = input(bound, "m");
      const double r = input(bound, "r");
      const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(a.grid))));
      std::vector<pb::MassRadiusSample> grid;
      // For b > 0 the bound is scoped to R = r, so r itself is always sampled.
      auto radii = pb::log_space(r / a.span, r * 1.5, side);
      radii.push_back(r);
      for (double mass : pb::log_space(m / a.span, m * 1.5, side)) {
        for (double radius : radii) grid.push_back({mass, radius});
      }
      return pb::verify_bound_by_bruteforce(bound, pb::MassRadiusContext{input(bound, "b"), m, r}, grid);
    }
    case pb::BoundRoute::MassDerivativeDensity: {
      const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(a.grid))));
      std::vector<pb::MonomialRelation> grid;
      for (double coeff : pb::log_space(1e-2, 1e2, side)) {
        for (std::size_t i = 0; i < side; ++i) {
          const double b = -3.0 + 6.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(side);
          grid.push_back({coeff, b});
        }
      }
      return pb::verify_bound_by_bruteforce(bound, pb::MassDerivativeContext{input(bound, "M0"), input(bound, "R0")},
                                            grid);
    }
    default:
      throw pb::DomainError("no brute-force check for route '" + std::string(pb::route_name(bound.route)) + "'");
  }
}

int run_verify(const VerifyArgs& a) {
  auto in = open_input(a.bound_file);
  pb::Json doc;
  try {
    doc = pb::Json::parse(in);
  } catch (const pb::Json::exception& e) {
    throw pb::DomainError(std::string("cannot parse bound JSON: ") + e.what());
  }
  const pb::Json& node = doc.contains("quantity") ? doc : doc.contains(a.key) ? doc.at(a.key) : doc;
  const auto bound = pb::bound_from_json(node);
  const auto report = verify(bound, a, doc);
  print(pb::Json{{"route", pb::route_name(bound.route)},
                 {"direction", pb::direction_name(bound.direction)},
                 {"value", bound.value},
                 {"report", pb::to_json(report)}});
  return report.passed() ? kExitOk : kExitNoSolution;
}

// --- fit -------------------------------------------------------------------

struct FitArgs {
  std::string catalog;
  double mass_floor = pb::kMainSequenceMassFloor;
  std::vector<double> p_exponents{1.0};
  std::vector<double> q_exponents{0.0};
  std::string output;
};

std::vector<pb::CatalogRecord> load(const FitArgs& a) {
  auto in = open_input(a.catalog);
  return pb::load_catalog(in, a.mass_floor);
}

int run_fit(const FitArgs& a, bool rational) {
  const auto records = load(a);
  const auto fit = rational ? pb::fit_rational(records, a.p_exponents, a.q_exponents) : pb::fit_monomial(records);
  if (!a.output.empty()) {
    auto out = open_output(a.output);
    out << (rational ? pb::format_rational(fit.rational()) : pb::format_monomial(fit.monomial()));
  }
  print(pb::to_json(fit));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure of polytropic stars and obstruction bounds on polytropic EOS parameters.\n"
               "Code units: G = c = M_sun = 1 (mass in M_sun, length in G M_sun/c^2 = 1.4766 km)."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_flag("--geometrized", globals.geometrized,
               "Read mass/radius flags in code units instead of M_sun and R_sun");

  int rc = kExitOk;

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Integrate a single polytropic star; summary JSON on stdout");
  solve_cmd->add_option("--k", solve.k, "Polytropic constant k [code units]")->capture_default_str();
  solve_cmd->add_option("--k0", solve.k0, "Pressure offset k0 [code pressure]")->capture_default_str();
  auto* gamma_opt = solve_cmd->add_option("--gamma", solve.gamma, "Polytrope exponent gamma > 1 (default 2) [1]");
  auto* n_opt = solve_cmd->add_option("--n", solve.n, "Polytropic index n = 1/(gamma-1) [1]");
  gamma_opt->excludes(n_opt);
  solve_cmd->add_option("--eos", solve.eos_file, "EOS file with k, k0, gamma|n lines (overrides --k/--gamma)")
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--rho-c", solve.rho_c, "Central density [code density, M_sun/(G M_sun/c^2)^3]")
      ->capture_default_str();
  solve_cmd->add_option("--mode", solve.mode, "Gravity: tov or newtonian")->capture_default_str();
  solve_cmd->add_option("--output,-o", solve.output, "Write profile CSV (r,p,rho,m in code units) here");
  solve_cmd->add_option("--rel-tol", solve.rel_tol, "Integrator relative tolerance [1]")->capture_default_str();
  solve_cmd->add_option("--surface-fraction", solve.surface_fraction, "Surface at p = fraction * p_c [1]")
      ->capture_default_str();
  solve_cmd->callback([&] { rc = run_solve(solve); });

  LaneEmdenArgs le;
  auto* le_cmd = app.add_subcommand("lane-emden", "Solve the Lane-Emden equation for index n");
  le_cmd->add_option("--n", le.n, "Polytropic index n >= 0 [1]")->capture_default_str();
  le_cmd->add_option("--output,-o", le.output, "Write xi,theta,theta_prime CSV here [dimensionless]");
  le_cmd->add_option("--rel-tol", le.rel_tol, "Integrator relative tolerance [1]")->capture_default_str();
  le_cmd->callback([&] { rc = run_lane_emden(le); });

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Sweep a (k, gamma, rho_c) grid in code units from a config file");
  scan_cmd->add_option("--config,-c", scan.config, "Scan config (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  scan_cmd->add_option("--jobs,-j", scan.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--output,-o", scan.output, "Write per-point results here");
  scan_cmd->add_option("--format", scan.format, "Output format: csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->callback([&] { rc = run_scan(scan); });

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Derive a bound on EOS or relation parameters");
  bound_cmd->require_subcommand(1);
  bound_cmd->fallthrough();

  auto* causal = bound_cmd->add_subcommand("causal-k", "Causal k-bound for a Newtonian polytrope with M = A R^2");
  causal->add_option("--n", bound.n, "Polytropic index n != 3 [1]")->required();
  causal->add_option("--mass", bound.mass, "Mass M [M_sun; code mass is the same]")->required();
  causal->add_option("--radius", bound.radius, "Radius R [R_sun, or code length with --geometrized]")->required();
  causal->add_option("--surface-combination,-s", bound.surface_combination,
                     "|p'(R)|/rho_rel [code units, length^-3]")
      ->capture_default_str();
  causal->callback([&] { rc = run_causal_k(bound, globals); });

  auto* t1 = bound_cmd->add_subcommand("theorem1", "Bound on a in M = a R^b from M <= m and R <= r");
  t1->add_option("--b", bound.b, "Exponent b != 0 [1]")->required();
  t1->add_option("--mass", bound.mass, "Mass bound m [M_sun]")->required();
  t1->add_option("--radius", bound.radius, "Radius bound r [R_sun, or code length with --geometrized]")->required();
  t1->callback([&] { rc = run_theorem1(bound, globals); });

  auto* t2 = bound_cmd->add_subcommand("theorem2", "Density, gamma and radius constraints from M'(R0) <= M0");
  t2->add_option("--a", bound.a, "Coefficient a of M = a R^b [M_sun/R_sun^b, or code with --geometrized]")
      ->required();
  t2->add_option("--b", bound.b, "Exponent b [1]")->required();
  t2->add_option("--mass-derivative-bound", bound.mass_derivative_bound,
                 "Bound M0 on dM/dR [M_sun/R_sun, or 1 with --geometrized]")
      ->required();
  t2->add_option("--radius", bound.radius, "Radius R0 [R_sun, or code length with --geometrized]")->required();
  t2->add_option("--gamma", bound.gamma, "Polytrope exponent gamma [1]")->required();
  t2->callback([&] { rc = run_theorem2(bound, globals); });

  auto* mk = bound_cmd->add_subcommand("monomial-k", "Causal k-bound on the monomial relation M = a R^b");
  mk->add_option("--a", bound.a, "Coefficient a [M_sun/R_sun^b, or code with --geometrized]")->required();
  mk->add_option("--b", bound.b, "Exponent b > 0 [1]")->required();
  mk->add_option("--gamma", bound.gamma, "Polytrope exponent gamma [1]")->required();
  mk->add_option("--radius", bound.radius, "Radius R0 [R_sun, or code length with --geometrized]")->required();
  mk->add_flag("--consistent", bound.consistent, "Use k gamma rho(R0)^(gamma-1) < 1 instead of the closed form");
  mk->callback([&] { rc = run_monomial_k(bound, globals); });

  auto* rk = bound_cmd->add_subcommand("rational-k", "Causal k-bound on a rational relation R = p(M)/q(M)");
  rk->add_option("--relation", bound.relation, "Relation file (rows p,coef,exp and q,coef,exp) [R_sun vs M_sun]")
      ->required()
      ->check(CLI::ExistingFile);
  rk->add_option("--gamma", bound.gamma, "Polytrope exponent gamma [1]")->required();
  rk->add_option("--radius", bound.radius, "Radius R0 [R_sun, or code length with --geometrized]")->required();
  rk->add_option("--seed-mass", bound.seed_mass, "Mass selecting the branch of M(R) [M_sun]")->capture_default_str();
  rk->callback([&] { rc = run_rational_k(bound, globals); });

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Brute-force check of a bound JSON produced by 'bound'");
  verify_cmd->add_option("--bound,-b", ver.bound_file, "Bound JSON file (output of 'bound')")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--key", ver.key, "Member holding the bound object")->capture_default_str();
  verify_cmd->add_option("--grid", ver.grid, "Number of grid points")->capture_default_str();
  verify_cmd->add_option("--span", ver.span, "Grid spans [value/span, value*span] [1]")->capture_default_str();
  verify_cmd->add_option("--relation", ver.relation, "Relation file for rational bounds [code units]");
  verify_cmd->callback([&] { rc = run_verify(ver); });

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit mass-radius relations to a catalog (mass in M_sun, radius in R_sun)");
  fit_cmd->require_subcommand(1);
  fit_cmd->fallthrough();
  auto add_catalog = [&](CLI::App* cmd) {
    cmd->add_option("--catalog", fit.catalog, "CSV with header mass,radius[,label][,weight] [M_sun, R_sun]")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--mass-floor", fit.mass_floor, "Reject rows below this mass [M_sun]")->capture_default_str();
    cmd->add_option("--output,-o", fit.output, "Write the fitted relation in relation-file format");
  };
  auto* fm = fit_cmd->add_subcommand("monomial", "Fit M = a R^b in log-log space");
  add_catalog(fm);
  fm->callback([&] { rc = run_fit(fit, false); });
  auto* fr = fit_cmd->add_subcommand("rational", "Fit R = p(M)/q(M) with the first q coefficient pinned to 1");
  add_catalog(fr);
  fr->add_option("--p-exponents", fit.p_exponents, "Numerator exponents [1]")->delimiter(',')->capture_default_str();
  fr->add_option("--q-exponents", fit.q_exponents, "Denominator exponents [1]")->delimiter(',')->capture_default_str();
  fr->callback([&] { rc = run_fit(fit, true); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  } catch (const pb::CatalogError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const pb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return rc;
}
