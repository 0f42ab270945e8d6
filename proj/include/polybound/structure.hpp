#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "polybound/eos.hpp"

namespace polybound {

struct IntegrationOptions {
  /// Per-step relative tolerance of the embedded Runge-Kutta pair.
  double rel_tol = 1e-10;
  /// Surface is the first radius where p <= max(k0, 0) + surface_fraction * p_c.
  double surface_fraction = 1e-10;
  std::size_t max_steps = 1'000'000;
  /// Sampling range used by Lane-Emden runs that never reach a zero (n >= 5).
  double lane_emden_xi_max = 100.0;
};

enum class Gravity { Newtonian, Relativistic };

/// Radial structure of one star in geometrized units. Samples are the
/// integrator's accepted steps; the last sample sits on the surface.
struct StellarProfile {
  Gravity gravity = Gravity::Relativistic;
  double central_density = 0.0;
  std::vector<double> r;
  std::vector<double> p;
  std::vector<double> rho;
  std::vector<double> m;
  double surface_radius = 0.0;
  double total_mass = 0.0;
  /// |p'(R)| evaluated on the surface sample.
  double surface_pressure_gradient = 0.0;
  /// Finite limit of |p'(R)| / rho_rel with rho_rel = rho(R)/rho_c.
  double rho_rel_limit = 0.0;
};

struct LaneEmdenSolution {
  double n = 0.0;
  bool finite_radius = false;
  double xi1 = 0.0;                 // first zero of theta (NaN without one)
  double theta_prime_at_xi1 = 0.0;  // NaN without a finite radius
  std::vector<double> xi;
  std::vector<double> theta;
  std::vector<double> theta_prime;

  /// -xi1^2 theta'(xi1), the dimensionless mass.
  double omega() const { return -xi1 * xi1 * theta_prime_at_xi1; }
};

/// Artificial incompressible branch rho == rho0 used for the Schwarzschild
/// interior solution.
struct UniformDensityEos {
  double rho0 = 0.0;
};

StellarProfile integrate_tov(const PolytropicEos& eos, double rho_c,
                             const IntegrationOptions& opts = {});
StellarProfile integrate_tov(const UniformDensityEos& eos, double central_pressure,
                             const IntegrationOptions& opts = {});

/// theta'' + 2 theta'/xi + theta^n = 0, theta(0) = 1, theta'(0) = 0.
/// n >= 5 yields finite_radius == false rather than an error.
LaneEmdenSolution integrate_lane_emden(double n, const IntegrationOptions& opts = {});

/// Newtonian polytrope built from the Lane-Emden solution with
/// R = alpha xi1, M = 4 pi alpha^3 rho_c xi1^2 |theta'(xi1)|,
/// alpha^2 = (n+1) k rho_c^((1-n)/n) / (4 pi).
/// Throws NoFiniteRadiusError for n >= 5.
StellarProfile newtonian_star(const PolytropicEos& eos, double rho_c,
                              const IntegrationOptions& opts = {});

/// Lane-Emden length scale alpha for the given EOS and central density.
double lane_emden_length_scale(const PolytropicEos& eos, double rho_c);

struct SurfaceData {
  double p_prime_surface = 0.0;
  /// rho_c M / R^2 in the Newtonian case (divided by 1 - 2M/R for TOV).
  double rho_rel_combination = 0.0;
};

SurfaceData surface_data(const StellarProfile& profile);

/// CSV with header "r,p,rho,m", one row per sample, 17 significant digits.
void write_profile_csv(std::ostream& out, const StellarProfile& profile);

}  // namespace polybound
