#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polybound/eos.hpp"

namespace polybound {

/// M = a R^b.
struct MonomialRelation {
  double a = 1.0;
  double b = 1.0;

  /// Throws DomainError unless a > 0 and b != 0.
  void validate() const;
  double mass(double radius) const;
};

/// One term c * M^e of a generalized polynomial.
struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
};

/// Generalized polynomial sum_i c_i M^{e_i}.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<PowerTerm> terms);

  double operator()(double mass) const;
  double derivative(double mass) const;
  const std::vector<PowerTerm>& terms() const { return terms_; }

 private:
  std::vector<PowerTerm> terms_;
};

/// p(M) - R q(M) = 0, solved globally as R = p(M)/q(M).
struct RationalRelation {
  PowerSeries numerator;
  PowerSeries denominator;

  /// Throws DomainError for empty term lists or a denominator with all zero coefficients.
  void validate() const;
  /// dR/dM by the quotient rule.
  double radius_derivative(double mass) const;
};

/// Coefficient of the Newtonian polytrope relation M = A R^2:
/// A = (4 pi / ((n+1) k))^{3/2} rho_c^{(n-3)/(2n)} * surface_combination.
double newtonian_A(double k, double n, double rho_c, double surface_combination);

/// Residual of the length-scale normalization implied by substituting the
/// Newtonian surface limit rho_c M / R^2 into M = A R^2: returns
/// (n+1) k / (4 pi) / rho_c^{(n-1)/n} - 1, which vanishes only for alpha = 1.
double newtonian_A_normalization_residual(double k, double n, double rho_c);

double solve_monomial_for_a(double mass, double radius, double b);

/// rho = a b R^{b-3} / (4 pi), i.e. M'(R) / (4 pi R^2) for M = a R^b.
double monomial_density(double radius, double a, double b);

/// k gamma rho^{gamma-1} with rho = monomial_density(R, a, b).
double monomial_sound_speed_squared(double radius, double a, double b, const PolytropicEos& eos);

/// Singular where |q(M)| < 1e-12 (1 + |p(M)|).
bool is_singular_point(const RationalRelation& rel, double mass);
double rational_radius(double mass, const RationalRelation& rel);

/// Safeguarded Newton from seed_mass with bisection fallback inside a bracket
/// found by scanning +/-50% around the seed.
double rational_invert_for_mass(double radius, const RationalRelation& rel, double seed_mass);

/// M'(R) / (4 pi R^2) with M'(R) = 1 / (dR/dM) on the branch through seed_mass.
double rational_density(double radius, const RationalRelation& rel, double seed_mass);

/// Plain-text forms. Monomial: "a b". Rational: rows "p,<coefficient>,<exponent>"
/// and "q,<coefficient>,<exponent>"; '#' starts a comment.
MonomialRelation parse_monomial(std::istream& in);
RationalRelation parse_rational(std::istream& in);
std::string format_monomial(const MonomialRelation& rel);
std::string format_rational(const RationalRelation& rel);

}  // namespace polybound
