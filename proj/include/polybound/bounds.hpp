#pragma once

// Obstruction bounds: constraints on equation-of-state parameters induced by
// mass-radius relations together with mass, radius, mass-derivative or
// causality bounds, plus brute-force checks of each derivation.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polybound/relations.hpp"

namespace polybound {

enum class BoundDirection { Upper, Lower };

enum class BoundRoute {
  NewtonianCausal,           // causal condition + Newtonian polytrope relation M = A R^2
  MassRadiusCorner,          // mass and radius bounds through a monotone relation
  MassDerivativeDensity,     // bound on M'(R) through the continuity equation
  MassDerivativeGamma,       // companion constraint M0^{1/gamma} >= a b R0^{b-1}
  MassDerivativeRadius,      // same constraint solved for R0
  MonomialCausal,            // causal k-bound, closed form of the monomial display
  MonomialCausalConsistent,  // causal k-bound from k gamma rho(R0)^{gamma-1} < 1
  RationalCausal,            // causal k-bound on a rational relation branch
};

/// Whether the derived inequality actually restricts the quantity.
enum class BoundStatus { Constrained, Vacuous, Infeasible };

struct BoundResult {
  std::string quantity;
  BoundDirection direction = BoundDirection::Upper;
  double value = 0.0;
  bool strict = true;
  BoundRoute route = BoundRoute::NewtonianCausal;
  std::vector<std::pair<std::string, double>> inputs;
  BoundStatus status = BoundStatus::Constrained;
  /// Free-form qualification, e.g. the validity scope of a corner bound.
  std::string note;

  /// True when x lies inside the bound (honouring direction and strictness).
  bool admits(double x) const;
};

std::string_view route_name(BoundRoute route);
std::string_view direction_name(BoundDirection direction);
std::string_view status_name(BoundStatus status);

/// Central density recovered from M = A(k, n, rho_c) R^2 with the given surface
/// combination. Undefined (DomainError) for n = 3, where A does not depend on rho_c.
double newtonian_central_density(double k, double n, double mass, double radius,
                                 double surface_combination);

/// k-bound from the central causal condition on a Newtonian polytrope with
/// M = A R^2: value = n/(n+1) (R^4 beta / (n^3 M^2))^{1/n}, beta = 64 pi^3 s^2.
/// Eliminating rho_c raises the condition to the power n/(n-3), so the bound
/// is an upper bound for n > 3 and a lower bound for n < 3; n = 3 is rejected.
BoundResult newtonian_causal_k_bound(double n, double mass, double radius,
                                     double surface_combination);

/// Bound on a for M = a R^b given M <= mass_bound and R <= radius_bound,
/// evaluated at the corner that maximizes eta(M, R) = M / R^b. For b < 0 the
/// corner is a true maximum over the whole box; for b > 0 eta is unbounded as
/// R -> 0 and the bound only holds for systems at R = radius_bound (see note).
BoundResult theorem1_parameter_bound(double b, double mass_bound, double radius_bound);

enum class RadiusRegime { SmallRadius, LargeRadius, RadiusIndependent };
std::string_view regime_name(RadiusRegime regime);

struct MassDerivativeBounds {
  BoundResult density;  // rho(R0) <= M0 / (4 pi R0^2)
  BoundResult gamma;    // from M0^{1/gamma} >= a b R0^{b-1}
  BoundResult radius;   // R0 versus (M0^{1/gamma} / (a b))^{1/(b-1)}
  /// Sign of b - 1: b < 1 pushes the radius bound towards small radii.
  RadiusRegime regime = RadiusRegime::RadiusIndependent;
};

MassDerivativeBounds theorem2_density_bound(const MonomialRelation& rel, double mass_derivative_bound,
                                            double radius, double gamma);

/// k < [ (a b / 4 pi)^beta R0^{beta-1} ]^{-1}, beta = gamma (b - 3).
BoundResult theorem3_causal_k_bound_monomial(double a, double b, double gamma, double radius);

/// k < 1 / (gamma rho(R0)^{gamma-1}) with rho from monomial_density; this is the
/// composition consistent with v^2 = k gamma rho^{gamma-1}.
BoundResult theorem3_causal_k_bound_monomial_consistent(double a, double b, double gamma,
                                                        double radius);

/// k < 1 / (gamma rho0^{gamma-1}), rho0 = rational_density(R0) on the seed branch.
BoundResult theorem3_causal_k_bound_rational(const RationalRelation& rel, double gamma,
                                             double radius, double seed_mass);

struct VerificationReport {
  std::size_t grid_size = 0;
  std::size_t checked = 0;     // points inside the bound whose direct check ran
  std::size_t skipped = 0;     // points outside the bound, or direct check undefined
  std::size_t violations = 0;  // checked points failing the direct check
  double worst_margin = 0.0;   // largest amount by which a violation failed
  std::size_t outside = 0;          // points outside the bound with a defined check
  std::size_t outside_failing = 0;  // of those, points failing the direct check

  bool passed() const { return violations == 0; }
  /// Associative, order-independent aggregation.
  VerificationReport& merge(const VerificationReport& other);
};

/// Direct check for the k-bounds: causality at the centre via the EOS with
/// rho_c recovered from M = A R^2.
struct NewtonianCausalContext {
  double n;
  double mass;
  double radius;
  double surface_combination;
};

/// MonomialCausal bounds are checked against the forward causal display they
/// invert; MonomialCausalConsistent bounds against the EOS sound speed at the
/// continuity-equation density.
struct MonomialCausalContext {
  double a;
  double b;
  double gamma;
  double radius;
};

/// Density is recomputed by central differences of the inverted branch M(R).
struct RationalCausalContext {
  RationalRelation relation;
  double gamma;
  double radius;
  double seed_mass;
};

struct MassRadiusSample {
  double mass;
  double radius;
};

/// Grid points are systems (M, R); those inside the hypothesis region are
/// checked by solving for a directly.
struct MassRadiusContext {
  double b;
  double mass_bound;
  double radius_bound;
};

/// Grid points are monomial relations; those with M'(R0) <= bound are checked by
/// finite-differencing M(R) = a R^b at R0.
struct MassDerivativeContext {
  double mass_derivative_bound;
  double radius;
};

VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const NewtonianCausalContext& context,
                                              std::span<const double> k_grid);
VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const MonomialCausalContext& context,
                                              std::span<const double> k_grid);
VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const RationalCausalContext& context,
                                              std::span<const double> k_grid);
VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const MassRadiusContext& context,
                                              std::span<const MassRadiusSample> grid);
VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const MassDerivativeContext& context,
                                              std::span<const MonomialRelation> grid);

/// n log-spaced values in [lo, hi].
std::vector<double> log_space(double lo, double hi, std::size_t n);

}  // namespace polybound
