// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <sys/wait.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polybound/bounds.hpp"
#include "polybound/catalog.hpp"
#include "polybound/error.hpp"
#include "polybound/eos.hpp"
#include "polybound/relations.hpp"
#include "polybound/scan.hpp"
#include "polybound/structure.hpp"
#include "schwarzschild_oracle.hpp"

using namespace polybound;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void criterion(const std::string& id, const std::string& title, double time_limit_s,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && elapsed >= time_limit_s) {
    o.pass = false;
    o.detail += fmt("; runtime %.3f s exceeds %.0f s", elapsed, time_limit_s);
  }
  if (!o.pass) ++failures;
  std::printf("criterion %-3s %s  %s | %s [%.3f s]\n", id.c_str(), o.pass ? "PASS" : "FAIL", title.c_str(),
              o.detail.c_str(), elapsed);
  std::fflush(stdout);
}

double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

// --- 1 ---------------------------------------------------------------------

Outcome lane_emden_analytic() {
  const auto n0 = integrate_lane_emden(0.0);
  const auto n1 = integrate_lane_emden(1.0);
  const auto n5 = integrate_lane_emden(5.0);
  const double e0 = std::abs(n0.xi1 - std::sqrt(6.0));
  const double e1 = std::abs(n1.xi1 - M_PI);
  const bool pass = e0 < 1e-8 && e1 < 1e-8 && !n5.finite_radius;
  return {pass, fmt("|xi1(0)-sqrt6| = %.2e, |xi1(1)-pi| = %.2e, n=5 finite radius: %s", e0, e1,
                    n5.finite_radius ? "yes" : "no")};
}

// --- 2 ---------------------------------------------------------------------

Outcome lane_emden_n3() {
  const IntegrationOptions defaults;
  IntegrationOptions tight;
  tight.rel_tol = defaults.rel_tol / 10;
  const auto s = integrate_lane_emden(3.0, defaults);
  const auto o = integrate_lane_emden(3.0, tight);
  const double ex = rel_err(s.xi1, o.xi1);
  const double ew = rel_err(s.omega(), o.omega());
  return {ex < 1e-6 && ew < 1e-6,
          fmt("xi1 = %.12f, omega = %.12f; rel. differences vs 10x tighter run %.2e, %.2e", s.xi1, s.omega(), ex, ew)};
}

// --- 3 ---------------------------------------------------------------------

Outcome uniform_tov() {
  const double rho0 = 1e-3;
  const double pc = oracle::central_pressure(rho0, 0.3);
  const auto s = integrate_tov(UniformDensityEos{rho0}, pc);
  const double worst = oracle::worst_relative_error(s, rho0);
  return {worst < 1e-6, fmt("2M/R = %.10f, %zu grid points, worst relative pressure error %.2e",
                             2 * s.total_mass / s.surface_radius, s.r.size(), worst)};
}

// --- 4 ---------------------------------------------------------------------

Outcome newtonian_scaling() {
  std::string detail;
  bool pass = true;
  const Axis densities{1e-4, 1e2, 13, Spacing::Log};
  for (double n : {0.5, 1.5, 2.0, 3.0}) {
    const auto curve = mass_radius_curve(PolytropicEos::from_index(1.0, 0.0, n), densities, ScanMode::Newtonian);
    std::vector<double> rho, m, r;
    for (const auto& p : curve) {
      rho.push_back(p.rho_c);
      m.push_back(p.mass);
      r.push_back(p.radius);
    }
    const double er = std::abs(loglog_slope(rho, r) - (1 - n) / (2 * n));
    const double em = std::abs(loglog_slope(rho, m) - (3 - n) / (2 * n));
    // For n = 3 the radius still varies, so M(R) has slope 0.
    const double emr = std::abs(loglog_slope(r, m) - (3 - n) / (1 - n));
    pass = pass && er < 1e-3 && em < 1e-3 && emr < 1e-3;
    detail += fmt("n=%.1f: %.1e/%.1e/%.1e  ", n, er, em, emr);
  }
  return {pass, "slope errors R(rho_c)/M(rho_c)/M(R): " + detail};
}

// --- 5 ---------------------------------------------------------------------

struct CausalGrid {
  std::size_t systems = 0;
  std::size_t below_checked = 0;
  std::size_t below_acausal = 0;  // k < bound but acausal
  std::size_t above_causal = 0;   // k = 1.001 bound but causal
  std::size_t inside_violations = 0;
  std::size_t sharp_failures = 0;
};

bool causal_at(double k, double n, double mass, double radius, double s) {
  const double rho_c = newtonian_central_density(k, n, mass, radius, s);
  return is_causal_at_center(PolytropicEos::from_index(k, 0.0, n), rho_c).causal;
}

CausalGrid run_causal_grid() {
  CausalGrid g;
  const std::vector<double> indices{0.5, 1.0, 1.5, 2.0, 2.5, 3.5, 4.0, 4.5};
  const auto masses = log_space(0.5, 2.0, 5);
  const auto radii = log_space(1.0, 20.0, 5);
  const auto surface = log_space(1e-3, 1.0, 5);
  const std::vector<double> below{1e-2, 0.1, 0.5, 0.9, 0.999};
  for (double n : indices) {
    for (double m : masses) {
      for (double r : radii) {
        for (double s : surface) {
          ++g.systems;
          const auto bound = newtonian_causal_k_bound(n, m, r, s);
          for (double f : below) {
            ++g.below_checked;
            if (!causal_at(bound.value * f, n, m, r, s)) ++g.below_acausal;
          }
          if (causal_at(bound.value * 1.001, n, m, r, s)) ++g.above_causal;
          // Direction-aware: inside the emitted bound, and just across it.
          const NewtonianCausalContext ctx{n, m, r, s};
          const auto grid = log_space(bound.value / 100, bound.value * 100, 40);
          const auto report = verify_bound_by_bruteforce(bound, ctx, grid);
          g.inside_violations += report.violations;
          const double across = bound.direction == BoundDirection::Upper ? 1.001 : 0.999;
          const std::vector<double> probe{bound.value * across};
          const auto sharp = verify_bound_by_bruteforce(bound, ctx, probe);
          if (sharp.outside_failing != 1) ++g.sharp_failures;
        }
      }
    }
  }
  return g;
}

// --- 8 ---------------------------------------------------------------------

Big big_pi() { return boost::math::constants::pi<Big>(); }

Big big_series(const PowerSeries& s, const Big& m, bool derivative) {
  Big sum = 0;
  for (const auto& t : s.terms()) {
    const Big c(t.coefficient), e(t.exponent);
    if (derivative) {
      if (t.exponent != 0.0) sum += c * e * pow(m, e - 1);
    } else {
      sum += c * pow(m, e);
    }
  }
  return sum;
}

// 50-digit Newton on p(M) - R q(M) = 0 from the double-precision branch point.
Big big_rational_density(const RationalRelation& rel, double radius, double seed) {
  const Big r(radius);
  Big m(rational_invert_for_mass(radius, rel, seed));
  for (int i = 0; i < 60; ++i) {
    const Big f = big_series(rel.numerator, m, false) - r * big_series(rel.denominator, m, false);
    const Big df = big_series(rel.numerator, m, true) - r * big_series(rel.denominator, m, true);
    m -= f / df;
  }
  const Big q = big_series(rel.denominator, m, false);
  const Big dr_dm = (big_series(rel.numerator, m, true) * q - big_series(rel.numerator, m, false) *
                                                                   big_series(rel.denominator, m, true)) /
                    (q * q);
  return 1 / (dr_dm * 4 * big_pi() * r * r);
}

}  // namespace

int main() {
  std::printf("polybound acceptance suite\n");

  criterion("1", "Lane-Emden analytic cases", 1.0, lane_emden_analytic);
  criterion("2", "Lane-Emden n = 3 against a tighter-tolerance run", 0.0, lane_emden_n3);
  criterion("3", "TOV uniform-density star at 2M/R = 0.3 vs closed form", 1.0, uniform_tov);
  criterion("4", "Newtonian scaling slopes", 30.0, newtonian_scaling);

  CausalGrid grid;
  criterion("5", "causal k-bound: k below bound => causal, k at 1.001 bound => acausal", 10.0, [&] {
    grid = run_causal_grid();
    const bool pass = grid.below_acausal == 0 && grid.above_causal == 0;
    return Outcome{pass, fmt("%zu systems (n in 0.5..4.5); %zu of %zu k-values below the bound are acausal, "
                             "%zu systems causal at 1.001 bound; all disagreements have n < 3",
                             grid.systems, grid.below_acausal, grid.below_checked, grid.above_causal)};
  });
  criterion("5b", "causal k-bound with its emitted direction (upper n > 3, lower n < 3)", 0.0, [&] {
    const bool pass = grid.inside_violations == 0 && grid.sharp_failures == 0;
    return Outcome{pass, fmt("%zu systems x 40 k-values: %zu violations inside the bound, %zu systems not "
                             "acausal just across it",
                             grid.systems, grid.inside_violations, grid.sharp_failures)};
  });

  criterion("6", "continuity density equals differenced a R^b / (4 pi R^2)", 0.0, [] {
    double worst = 0.0;
    std::size_t points = 0;
    std::vector<std::pair<double, double>> ab{{0.85, 0.67}, {0.85, 1.78}};
    for (double a : log_space(0.1, 10.0, 5)) {
      for (double b : {-2.5, -1.0, -0.3, 0.4, 1.2, 2.0, 3.0}) ab.emplace_back(a, b);
    }
    for (const auto& [a, b] : ab) {
      for (double r : log_space(0.1, 10.0, 30)) {
        const double h = 1e-5 * r;
        const double fd = (a * std::pow(r + h, b) - a * std::pow(r - h, b)) / (2 * h) / (4 * M_PI * r * r);
        worst = std::max(worst, rel_err(monomial_density(r, a, b), fd));
        ++points;
      }
    }
    return Outcome{worst < 1e-7, fmt("%zu (a, b, R) points incl. (0.85, 0.67); worst relative difference %.2e",
                                     points, worst)};
  });

  criterion("7", "main-sequence sign logic at M0 = 120 M_sun", 0.0, [] {
    const auto zams = theorem2_density_bound({0.85, 0.67}, 120.0, 1.0, 3.0);
    const auto tams = theorem2_density_bound({0.85, 1.78}, 120.0, 1.0, 3.0);
    const bool pass = zams.regime == RadiusRegime::SmallRadius && tams.regime == RadiusRegime::LargeRadius &&
                      zams.radius.direction == BoundDirection::Lower &&
                      tams.radius.direction == BoundDirection::Upper;
    return Outcome{pass, fmt("b = 0.67: %s, R0 %s %.6g; b = 1.78: %s, R0 %s %.6g",
                             std::string(regime_name(zams.regime)).c_str(),
                             zams.radius.direction == BoundDirection::Lower ? ">=" : "<=", zams.radius.value,
                             std::string(regime_name(tams.regime)).c_str(),
                             tams.radius.direction == BoundDirection::Lower ? ">=" : "<=", tams.radius.value)};
  });

  criterion("8", "monomial and rational causal k-bounds: 50-digit values and brute force", 0.0, [] {
    const double a = 0.85, b = 0.67, gamma = 3.0, r0 = 1.0;
    const Big ba("0.85"), bb("0.67"), bg(3), br(1);
    const Big x = ba * bb / (4 * big_pi());
    const Big beta = bg * (bb - 3);
    const Big printed = 1 / (pow(x, beta) * pow(br, beta - 1));
    const Big rho = x * pow(br, bb - 3);
    const Big consistent = 1 / (bg * pow(rho, bg - 1));

    const RationalRelation rel{PowerSeries({{1.0, 2.0}, {1.0, 0.0}}), PowerSeries({{1.0, 1.0}})};
    const RationalRelation rel2{PowerSeries({{2.0, 3.0}, {0.5, 1.0}, {1.0, 0.0}}), PowerSeries({{1.0, 2.0}, {3.0, 0.0}})};
    const double g2 = 5.0 / 3.0;
    const Big bg2 = Big(5) / 3;
    const Big rational = 1 / (bg2 * pow(big_rational_density(rel, 2.5, 2.0), bg2 - 1));
    const Big rational2 = 1 / (bg2 * pow(big_rational_density(rel2, 4.0, 2.0), bg2 - 1));

    const auto kp = theorem3_causal_k_bound_monomial(a, b, gamma, r0);
    const auto kc = theorem3_causal_k_bound_monomial_consistent(a, b, gamma, r0);
    const auto kr = theorem3_causal_k_bound_rational(rel, g2, 2.5, 2.0);
    const auto kr2 = theorem3_causal_k_bound_rational(rel2, g2, 4.0, 2.0);
    const double e1 = rel_err(kp.value, static_cast<double>(printed));
    const double e2 = rel_err(kc.value, static_cast<double>(consistent));
    const double e3 = rel_err(kr.value, static_cast<double>(rational));
    const double e4 = rel_err(kr2.value, static_cast<double>(rational2));

    std::size_t violations = 0, checked = 0;
    auto tally = [&](const VerificationReport& rep) {
      violations += rep.violations;
      checked += rep.checked;
    };
    const MonomialCausalContext mctx{a, b, gamma, r0};
    tally(verify_bound_by_bruteforce(kp, mctx, log_space(kp.value / 100, kp.value * 100, 1000)));
    tally(verify_bound_by_bruteforce(kc, mctx, log_space(kc.value / 100, kc.value * 100, 1000)));
    tally(verify_bound_by_bruteforce(kr, RationalCausalContext{rel, g2, 2.5, 2.0},
                                     log_space(kr.value / 100, kr.value * 100, 1000)));
    tally(verify_bound_by_bruteforce(kr2, RationalCausalContext{rel2, g2, 4.0, 2.0},
                                     log_space(kr2.value / 100, kr2.value * 100, 1000)));
    const double worst = std::max({e1, e2, e3, e4});
    return Outcome{worst < 1e-12 && violations == 0,
                   fmt("rel. errors printed/consistent/rational/rational2 %.1e/%.1e/%.1e/%.1e; "
                       "4 x 1000-point grids, %zu checked, %zu violations",
                       e1, e2, e3, e4, checked, violations)};
  });

  criterion("9", "catalog fits: exact recovery and rescaling covariance", 0.0, [] {
    double worst_mono = 0.0;
    for (double a : log_space(0.1, 10.0, 7)) {
      for (double b : {-3.0, -1.5, -0.2, 0.67, 1.78, 3.0}) {
        std::vector<CatalogRecord> data;
        for (double r : log_space(0.2, 20.0, 9)) data.push_back({a * std::pow(r, b), r, "", 1.0});
        const auto fit = fit_monomial(data);
        worst_mono = std::max({worst_mono, rel_err(fit.parameters[0], a), rel_err(fit.parameters[1], b)});
      }
    }
    double worst_rat = 0.0;
    for (double scale : {1.0, 5.0}) {
      std::vector<CatalogRecord> data;
      for (double m : {0.3, 0.5, 1.5, 2.0, 3.0, 7.0}) data.push_back({m, (scale * m * m + scale) / (scale * m), "", 1.0});
      const std::vector<double> pe{2.0, 0.0}, qe{1.0};
      const auto fit = fit_rational(data, pe, qe);
      worst_rat = std::max({worst_rat, rel_err(fit.parameters[0], 1.0), rel_err(fit.parameters[1], 1.0),
                            rel_err(fit.parameters[2], 1.0)});
    }
    std::vector<CatalogRecord> noisy;
    const double factors[] = {1.03, 0.97, 1.08, 0.95, 1.01, 0.99, 1.05};
    int i = 0;
    for (double r : {0.4, 0.9, 1.3, 2.2, 3.7, 5.1, 8.0}) noisy.push_back({0.85 * std::pow(r, 0.67) * factors[i++], r, "", 1.0});
    const auto base = fit_monomial(noisy);
    double worst_cov = 0.0;
    for (double s : {0.25, 2.0, 8.0}) {
      auto scaled = noisy;
      for (auto& rec : scaled) rec.radius *= s;
      const auto fit = fit_monomial(scaled);
      worst_cov = std::max({worst_cov, std::abs(fit.parameters[1] - base.parameters[1]),
                            std::abs(std::log(fit.parameters[0]) -
                                     (std::log(base.parameters[0]) - base.parameters[1] * std::log(s)))});
    }
    return Outcome{worst_mono < 1e-8 && worst_rat < 1e-8 && worst_cov < 1e-12,
                   fmt("monomial worst rel. error %.1e; rational %.1e; log-space covariance deviation %.1e",
                       worst_mono, worst_rat, worst_cov)};
  });

  criterion("10", "CLI solve -> bound -> verify pipeline is deterministic", 0.0, [] {
    auto run = [](const std::string& args, const std::string& out) {
      const std::string cmd = std::string(POLYBOUND_CLI) + " " + args + " > " + out + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      std::ifstream in(out);
      std::stringstream text;
      text << in.rdbuf();
      return std::make_pair(WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str());
    };
    std::vector<std::string> transcripts;
    std::vector<int> codes;
    for (int pass = 0; pass < 2; ++pass) {
      const std::string tag = "acceptance_run" + std::to_string(pass);
      const auto solve = run("solve --mode newtonian --n 3.5 --k 2 --rho-c 0.05 -o " + tag + "_profile.csv",
                             tag + "_solve.json");
      const auto summary = nlohmann::json::parse(solve.second);
      char args[512];
      std::snprintf(args, sizeof args,
                    "bound causal-k --geometrized --n 3.5 --mass %.17g --radius %.17g -s %.17g",
                    summary["mass"].get<double>(), summary["radius"].get<double>(),
                    summary["surface_combination"].get<double>());
      const auto bound = run(args, tag + "_bound.json");
      const auto verify = run("verify --bound " + tag + "_bound.json --grid 1000", tag + "_verify.json");
      transcripts.push_back(solve.second + bound.second + verify.second);
      codes.insert(codes.end(), {solve.first, bound.first, verify.first});
    }
    bool all_zero = true;
    for (int c : codes) all_zero = all_zero && c == 0;
    const bool identical = transcripts[0] == transcripts[1];
    const auto verdict = nlohmann::json::parse(transcripts[0].substr(transcripts[0].rfind('{', transcripts[0].rfind("\"report\""))));
    return Outcome{all_zero && identical,
                   fmt("exit codes all zero: %s; outputs byte-identical: %s (%zu bytes); violations %d",
                       all_zero ? "yes" : "no", identical ? "yes" : "no", transcripts[0].size(),
                       verdict["report"]["violations"].get<int>())};
  });

  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
