#include "polybound/structure.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>

#include "polybound/error.hpp"
#include "polybound/ode.hpp"

namespace polybound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Compactness above which the integration is treated as a horizon approach.
constexpr double kHorizonMargin = 1e-12;

// Integration variables (ln p, m): stepping ln p keeps the pressure error
// relative all the way down to the surface threshold.
using TovState = ode::OdeState<2>;

StellarProfile integrate_tov_impl(const std::function<double(double)>& density_of_pressure,
                                  double rho_c, double p_c, double surface_pressure,
                                  const IntegrationOptions& opts) {
  if (!(p_c > surface_pressure) || !(surface_pressure > 0.0)) {
    throw DomainError("central pressure must exceed the surface threshold");
  }

  // dp/dr from Eq. (TOV); NaN inside the horizon so the step is rejected.
  auto pressure_gradient = [](double r, double p, double m, double rho) {
    const double lapse = 1.0 - 2.0 * m / r;
    if (!(lapse > 0.0)) return kNaN;
    return -(rho + p) * (m + 4.0 * kPi * r * r * r * p) / (r * r * lapse);
  };
  auto rhs = [&](double r, const TovState& y) -> TovState {
    const double p = std::exp(y[0]);
    const double rho = density_of_pressure(p);
    return {pressure_gradient(r, p, y[1], rho) / p, 4.0 * kPi * r * r * rho};
  };

  // Series start away from the r = 0 coordinate singularity.
  const double curvature = (2.0 * kPi / 3.0) * (rho_c + p_c) * (rho_c + 3.0 * p_c);
  const double ell = std::sqrt(p_c / curvature);
  const double r0 = 1e-5 * ell;
  const TovState y0{std::log(p_c - curvature * r0 * r0),
                    (4.0 * kPi / 3.0) * rho_c * r0 * r0 * r0};

  ode::AdaptiveOptions<2> ode_opts;
  ode_opts.rel_tol = opts.rel_tol;
  // An absolute error on ln p is a relative error on p.
  ode_opts.abs_tol = {0.1 * opts.rel_tol, std::numeric_limits<double>::min()};
  ode_opts.rel_weight = {0.0, 1.0};
  ode_opts.initial_step = r0;
  ode_opts.max_steps = opts.max_steps;

  const double log_surface = std::log(surface_pressure);
  auto event = [&](double, const TovState& y) { return y[0] - log_surface; };
  auto on_accept = [&](double r, const TovState& y) {
    if (2.0 * y[1] / r >= 1.0 - kHorizonMargin) {
      throw HorizonApproachError("compactness 2M(r)/r reached 1 before the surface");
    }
  };

  const auto traj = ode::integrate_to_event<2>(rhs, r0, y0, std::numeric_limits<double>::max(),
                                               ode_opts, event, on_accept);
  if (!traj.event_found) throw NonConvergenceError("TOV integration never reached a surface");

  StellarProfile out;
  out.gravity = Gravity::Relativistic;
  out.central_density = rho_c;
  const std::size_t count = traj.t.size() + 1;
  out.r.reserve(count);
  out.p.reserve(count);
  out.rho.reserve(count);
  out.m.reserve(count);
  out.r.push_back(0.0);
  out.p.push_back(p_c);
  out.rho.push_back(rho_c);
  out.m.push_back(0.0);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out.r.push_back(traj.t[i]);
    const double p = std::exp(traj.y[i][0]);
    out.p.push_back(p);
    out.rho.push_back(density_of_pressure(p));
    out.m.push_back(traj.y[i][1]);
  }
  out.surface_radius = out.r.back();
  out.total_mass = out.m.back();
  out.surface_pressure_gradient = std::abs(pressure_gradient(
      out.surface_radius, out.p.back(), out.total_mass, out.rho.back()));
  const double R = out.surface_radius;
  const double M = out.total_mass;
  out.rho_rel_limit = rho_c * M / (R * R * (1.0 - 2.0 * M / R));
  return out;
}

}  // namespace

StellarProfile integrate_tov(const PolytropicEos& eos, double rho_c,
                             const IntegrationOptions& opts) {
  if (!(rho_c > 0.0) || !std::isfinite(rho_c)) {
    throw DomainError("central density must be positive");
  }
  const double p_c = eos.pressure(rho_c);
  const double surface = std::max(eos.k0(), 0.0) + opts.surface_fraction * p_c;
  auto density = [&eos](double p) { return p > eos.k0() ? eos.density_from_pressure(p) : 0.0; };
  return integrate_tov_impl(density, rho_c, p_c, surface, opts);
}

StellarProfile integrate_tov(const UniformDensityEos& eos, double central_pressure,
                             const IntegrationOptions& opts) {
  if (!(eos.rho0 > 0.0)) throw DomainError("uniform density must be positive");
  if (!(central_pressure > 0.0)) throw DomainError("central pressure must be positive");
  const double rho0 = eos.rho0;
  auto density = [rho0](double p) { return p > 0.0 ? rho0 : 0.0; };
  return integrate_tov_impl(density, rho0, central_pressure,
                            opts.surface_fraction * central_pressure, opts);
}

LaneEmdenSolution integrate_lane_emden(double n, const IntegrationOptions& opts) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw DomainError("polytropic index must be >= 0");

  using State = ode::OdeState<2>;  // (theta, theta')
  auto rhs = [n](double xi, const State& y) -> State {
    const double source = std::pow(std::max(y[0], 0.0), n);
    return {y[1], -source - 2.0 * y[1] / xi};
  };

  const double xi0 = 1e-3;
  const double x2 = xi0 * xi0;
  const State y0{1.0 - x2 / 6.0 + n * x2 * x2 / 120.0 - n * (8.0 * n - 5.0) * x2 * x2 * x2 / 15120.0,
                 -xi0 / 3.0 + n * xi0 * x2 / 30.0 -
                     n * (8.0 * n - 5.0) * x2 * x2 * xi0 / 2520.0};

  ode::AdaptiveOptions<2> ode_opts;
  ode_opts.rel_tol = opts.rel_tol;
  ode_opts.abs_tol = {opts.rel_tol * 1e-6, opts.rel_tol * 1e-6};
  ode_opts.initial_step = xi0;
  ode_opts.max_steps = opts.max_steps;

  const bool bounded = n < 5.0;
  const double xi_end = bounded ? 1e5 : opts.lane_emden_xi_max;
  auto event = [bounded](double, const State& y) { return bounded ? y[0] : 1.0; };
  const auto traj =
      ode::integrate_to_event<2>(rhs, xi0, y0, xi_end, ode_opts, event, [](double, const State&) {});

  LaneEmdenSolution out;
  out.n = n;
  out.xi.reserve(traj.t.size() + 1);
  out.theta.reserve(traj.t.size() + 1);
  out.theta_prime.reserve(traj.t.size() + 1);
  out.xi.push_back(0.0);
  out.theta.push_back(1.0);
  out.theta_prime.push_back(0.0);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out.xi.push_back(traj.t[i]);
    out.theta.push_back(traj.y[i][0]);
    out.theta_prime.push_back(traj.y[i][1]);
  }
  if (bounded) {
    if (!traj.event_found) throw NonConvergenceError("Lane-Emden solution found no zero");
    out.finite_radius = true;
    out.theta.back() = 0.0;  // event located to machine precision
    out.xi1 = out.xi.back();
    out.theta_prime_at_xi1 = out.theta_prime.back();
  } else {
    out.finite_radius = false;
    out.xi1 = kNaN;
    out.theta_prime_at_xi1 = kNaN;
  }
  return out;
}

double lane_emden_length_scale(const PolytropicEos& eos, double rho_c) {
  const double n = eos.n();
  return std::sqrt((n + 1.0) * eos.k() * std::pow(rho_c, (1.0 - n) / n) / (4.0 * kPi));
}

StellarProfile newtonian_star(const PolytropicEos& eos, double rho_c,
                              const IntegrationOptions& opts) {
  if (!(rho_c > 0.0) || !std::isfinite(rho_c)) {
    throw DomainError("central density must be positive");
  }
  const double n = eos.n();
  // gamma = 1.2 gives n = 5 only up to rounding.
  if (n >= 5.0 - 1e-9) {
    throw NoFiniteRadiusError("polytropic index n >= 5 has no finite radius");
  }
  const double p_c = eos.pressure(rho_c);
  if (!(p_c > std::max(eos.k0(), 0.0))) {
    throw DomainError("central pressure must exceed the surface threshold");
  }
  const auto le = integrate_lane_emden(n, opts);
  const double alpha = lane_emden_length_scale(eos, rho_c);
  const double mass_scale = 4.0 * kPi * alpha * alpha * alpha * rho_c;

  StellarProfile out;
  out.gravity = Gravity::Newtonian;
  out.central_density = rho_c;
  const std::size_t count = le.xi.size();
  out.r.resize(count);
  out.p.resize(count);
  out.rho.resize(count);
  out.m.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.r[i] = alpha * le.xi[i];
    out.rho[i] = rho_c * std::pow(std::max(le.theta[i], 0.0), n);
    out.p[i] = eos.pressure(out.rho[i]);
    out.m[i] = -mass_scale * le.xi[i] * le.xi[i] * le.theta_prime[i];
  }
  out.m.front() = 0.0;
  out.surface_radius = alpha * le.xi1;
  out.total_mass = mass_scale * le.omega();
  // p' = k rho_c^gamma (n+1) theta^n theta' / alpha, which vanishes on theta = 0.
  out.surface_pressure_gradient = eos.k() * std::pow(rho_c, eos.gamma()) * (n + 1.0) *
                                  std::pow(std::max(le.theta.back(), 0.0), n) *
                                  std::abs(le.theta_prime_at_xi1) / alpha;
  out.rho_rel_limit =
      rho_c * out.total_mass / (out.surface_radius * out.surface_radius);
  return out;
}

SurfaceData surface_data(const StellarProfile& profile) {
  if (profile.r.empty() || !std::isfinite(profile.surface_radius) ||
      !(profile.surface_radius > 0.0)) {
    throw DomainError("profile has no finite surface");
  }
  return {profile.surface_pressure_gradient, profile.rho_rel_limit};
}

void write_profile_csv(std::ostream& out, const StellarProfile& profile) {
  out << "r,p,rho,m\n";
  char buf[128];
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", profile.r[i], profile.p[i],
                  profile.rho[i], profile.m[i]);
    out << buf;
  }
}

}  // namespace polybound
