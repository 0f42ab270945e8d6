#include "polybound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "polybound/eos.hpp"
#include "polybound/error.hpp"

namespace polybound {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive");
  }
}

void require_route(const BoundResult& bound, std::initializer_list<BoundRoute> routes) {
  if (std::find(routes.begin(), routes.end(), bound.route) == routes.end()) {
    throw DomainError("verification context does not match bound route '" +
                      std::string(route_name(bound.route)) + "'");
  }
}

// Direct check returns v^2 (causal iff < 1), or nullopt when undefined.
template <class SoundSpeedSquared>
VerificationReport verify_causal_k_grid(const BoundResult& bound, std::span<const double> k_grid,
                                        const SoundSpeedSquared& v2_of_k) {
  if (k_grid.empty()) throw DomainError("verification grid is empty");
  VerificationReport report;
  report.grid_size = k_grid.size();
  for (const double k : k_grid) {
    std::optional<double> v2;
    try {
      v2 = v2_of_k(k);
    } catch (const Error&) {
      v2.reset();
    }
    if (!v2 || !std::isfinite(*v2)) {
      ++report.skipped;
      continue;
    }
    const bool causal = *v2 < 1.0;
    if (bound.admits(k)) {
      ++report.checked;
      if (!causal) {
        ++report.violations;
        report.worst_margin = std::max(report.worst_margin, *v2 - 1.0);
      }
    } else {
      ++report.skipped;
      ++report.outside;
      if (!causal) ++report.outside_failing;
    }
  }
  return report;
}

BoundResult vacuous(std::string quantity, BoundRoute route,
                    std::vector<std::pair<std::string, double>> inputs, std::string note) {
  BoundResult out;
  out.quantity = std::move(quantity);
  out.direction = BoundDirection::Lower;
  out.value = 0.0;
  out.strict = false;
  out.route = route;
  out.inputs = std::move(inputs);
  out.status = BoundStatus::Vacuous;
  out.note = std::move(note);
  return out;
}

}  // namespace

bool BoundResult::admits(double x) const {
  switch (status) {
    case BoundStatus::Vacuous:
      return true;
    case BoundStatus::Infeasible:
      return false;
    case BoundStatus::Constrained:
      break;
  }
  if (direction == BoundDirection::Upper) return strict ? x < value : x <= value;
  return strict ? x > value : x >= value;
}

std::string_view route_name(BoundRoute route) {
  switch (route) {
    case BoundRoute::NewtonianCausal:
      return "newtonian-causal";
    case BoundRoute::MassRadiusCorner:
      return "mass-radius-corner";
    case BoundRoute::MassDerivativeDensity:
      return "mass-derivative-density";
    case BoundRoute::MassDerivativeGamma:
      return "mass-derivative-gamma";
    case BoundRoute::MassDerivativeRadius:
      return "mass-derivative-radius";
    case BoundRoute::MonomialCausal:
      return "monomial-causal";
    case BoundRoute::MonomialCausalConsistent:
      return "monomial-causal-consistent";
    case BoundRoute::RationalCausal:
      return "rational-causal";
  }
  return "unknown";
}

std::string_view direction_name(BoundDirection direction) {
  return direction == BoundDirection::Upper ? "upper" : "lower";
}

std::string_view status_name(BoundStatus status) {
  switch (status) {
    case BoundStatus::Constrained:
      return "constrained";
    case BoundStatus::Vacuous:
      return "vacuous";
    case BoundStatus::Infeasible:
      return "infeasible";
  }
  return "unknown";
}

std::string_view regime_name(RadiusRegime regime) {
  switch (regime) {
    case RadiusRegime::SmallRadius:
      return "small-radius";
    case RadiusRegime::LargeRadius:
      return "large-radius";
    case RadiusRegime::RadiusIndependent:
      return "radius-independent";
  }
  return "unknown";
}

double newtonian_central_density(double k, double n, double mass, double radius,
                                 double surface_combination) {
  require_positive(k, "k");
  require_positive(n, "n");
  require_positive(mass, "mass");
  require_positive(radius, "radius");
  require_positive(surface_combination, "surface combination");
  if (n == 3.0) throw DomainError("rho_c cannot be isolated from M = A R^2 when n = 3");
  // M = (4 pi / ((n+1) k))^{3/2} rho_c^{(n-3)/(2n)} s R^2
  const double prefactor = std::pow(4.0 * kPi / ((n + 1.0) * k), 1.5) * surface_combination;
  return std::pow(mass / (prefactor * radius * radius), 2.0 * n / (n - 3.0));
}

BoundResult newtonian_causal_k_bound(double n, double mass, double radius,
                                     double surface_combination) {
  require_positive(n, "n");
  require_positive(mass, "mass");
  require_positive(radius, "radius");
  require_positive(surface_combination, "surface combination");
  if (n == 3.0) {
    throw DomainError("n = 3: M = A R^2 does not involve rho_c, so no causal k-bound follows");
  }
  const double beta = 64.0 * kPi * kPi * kPi * surface_combination * surface_combination;
  const double r4 = std::pow(radius, 4);
  BoundResult out;
  out.quantity = "k";
  out.direction = n > 3.0 ? BoundDirection::Upper : BoundDirection::Lower;
  out.value = n / (n + 1.0) * std::pow(r4 * beta / (n * n * n * mass * mass), 1.0 / n);
  out.strict = true;
  out.route = BoundRoute::NewtonianCausal;
  out.inputs = {{"n", n}, {"M", mass}, {"R", radius}, {"surface_combination", surface_combination}};
  if (n < 3.0) out.note = "n < 3: eliminating rho_c reverses the inequality";
  return out;
}

BoundResult theorem1_parameter_bound(double b, double mass_bound, double radius_bound) {
  if (b == 0.0) throw DomainError("exponent b = 0 is excluded");
  require_positive(mass_bound, "mass bound");
  require_positive(radius_bound, "radius bound");
  BoundResult out;
  out.quantity = "a";
  out.direction = BoundDirection::Upper;
  out.value = solve_monomial_for_a(mass_bound, radius_bound, b);
  out.strict = false;
  out.route = BoundRoute::MassRadiusCorner;
  out.inputs = {{"b", b}, {"m", mass_bound}, {"r", radius_bound}};
  out.note = b < 0.0 ? "holds for all M <= m, R <= r"
                     : "holds for M <= m at R = r; M/R^b is unbounded as R -> 0 when b > 0";
  return out;
}

MassDerivativeBounds theorem2_density_bound(const MonomialRelation& rel,
                                            double mass_derivative_bound, double radius,
                                            double gamma) {
  rel.validate();
  require_positive(mass_derivative_bound, "mass derivative bound M0");
  require_positive(radius, "radius R0");
  require_positive(gamma, "gamma");
  const double m0 = mass_derivative_bound;
  const std::vector<std::pair<std::string, double>> inputs = {
      {"a", rel.a}, {"b", rel.b}, {"M0", m0}, {"R0", radius}, {"gamma", gamma}};

  MassDerivativeBounds out;
  out.density.quantity = "rho";
  out.density.direction = BoundDirection::Upper;
  out.density.value = m0 / (4.0 * kPi * radius * radius);
  out.density.strict = false;
  out.density.route = BoundRoute::MassDerivativeDensity;
  out.density.inputs = {{"M0", m0}, {"R0", radius}};

  // M0^{1/gamma} >= X with X = a b R0^{b-1}.
  const double slope = rel.a * rel.b * std::pow(radius, rel.b - 1.0);
  if (slope <= 0.0) {
    out.gamma = vacuous("gamma", BoundRoute::MassDerivativeGamma, inputs,
                        "a b R0^(b-1) <= 0 is below every M0^(1/gamma)");
  } else {
    const double log_m0 = std::log(m0);
    const double log_x = std::log(slope);
    out.gamma.quantity = "gamma";
    out.gamma.strict = false;
    out.gamma.route = BoundRoute::MassDerivativeGamma;
    out.gamma.inputs = inputs;
    out.gamma.value = log_m0 / log_x;
    if (log_m0 > 0.0 && log_x > 0.0) {
      out.gamma.direction = BoundDirection::Upper;
    } else if (log_m0 < 0.0 && log_x < 0.0) {
      out.gamma.direction = BoundDirection::Lower;
    } else if (log_x <= 0.0 && log_m0 >= 0.0) {
      out.gamma = vacuous("gamma", BoundRoute::MassDerivativeGamma, inputs,
                          "M0^(1/gamma) >= 1 >= a b R0^(b-1) for every gamma > 0");
    } else {
      out.gamma.value = 0.0;
      out.gamma.status = BoundStatus::Infeasible;
      out.gamma.note = "M0^(1/gamma) <= 1 < a b R0^(b-1) for every gamma > 0";
    }
  }

  // Radius form: R0^{b-1} <= M0^{1/gamma} / (a b).
  out.regime = rel.b < 1.0   ? RadiusRegime::SmallRadius
               : rel.b > 1.0 ? RadiusRegime::LargeRadius
                             : RadiusRegime::RadiusIndependent;
  const double ab = rel.a * rel.b;
  const double scale = std::pow(m0, 1.0 / gamma) / ab;
  if (ab <= 0.0) {
    out.radius = vacuous("R0", BoundRoute::MassDerivativeRadius, inputs,
                         "a b <= 0: the constraint holds for every radius");
  } else if (rel.b == 1.0) {
    if (scale >= 1.0) {
      out.radius = vacuous("R0", BoundRoute::MassDerivativeRadius, inputs,
                           "b = 1: M0^(1/gamma) >= a holds for every radius");
    } else {
      out.radius.quantity = "R0";
      out.radius.route = BoundRoute::MassDerivativeRadius;
      out.radius.inputs = inputs;
      out.radius.status = BoundStatus::Infeasible;
      out.radius.note = "b = 1: M0^(1/gamma) < a for every radius";
    }
  } else {
    out.radius.quantity = "R0";
    out.radius.direction = rel.b > 1.0 ? BoundDirection::Upper : BoundDirection::Lower;
    out.radius.value = std::pow(scale, 1.0 / (rel.b - 1.0));
    out.radius.strict = false;
    out.radius.route = BoundRoute::MassDerivativeRadius;
    out.radius.inputs = inputs;
    out.radius.note = std::string(regime_name(out.regime));
  }
  return out;
}

BoundResult theorem3_causal_k_bound_monomial(double a, double b, double gamma, double radius) {
  require_positive(a, "monomial amplitude a");
  require_positive(radius, "radius R0");
  if (b == 0.0) throw DomainError("exponent b = 0 is excluded");
  if (b < 0.0) throw DomainError("b < 0 gives a negative continuity-equation density");
  const double beta = gamma * (b - 3.0);
  BoundResult out;
  out.quantity = "k";
  out.direction = BoundDirection::Upper;
  out.value = 1.0 / (std::pow(a * b / (4.0 * kPi), beta) * std::pow(radius, beta - 1.0));
  out.strict = true;
  out.route = BoundRoute::MonomialCausal;
  out.inputs = {{"a", a}, {"b", b}, {"gamma", gamma}, {"R0", radius}, {"beta", beta}};
  return out;
}

BoundResult theorem3_causal_k_bound_monomial_consistent(double a, double b, double gamma,
                                                        double radius) {
  require_positive(gamma, "gamma");
  const double rho = monomial_density(radius, a, b);
  if (!(rho > 0.0)) throw DomainError("monomial density is not positive (b <= 0)");
  BoundResult out;
  out.quantity = "k";
  out.direction = BoundDirection::Upper;
  out.value = 1.0 / (gamma * std::pow(rho, gamma - 1.0));
  out.strict = true;
  out.route = BoundRoute::MonomialCausalConsistent;
  out.inputs = {{"a", a}, {"b", b}, {"gamma", gamma}, {"R0", radius}, {"rho0", rho}};
  return out;
}

BoundResult theorem3_causal_k_bound_rational(const RationalRelation& rel, double gamma,
                                             double radius, double seed_mass) {
  require_positive(gamma, "gamma");
  const double rho = rational_density(radius, rel, seed_mass);
  if (!(rho > 0.0)) {
    throw DomainError("rational branch has dR/dM < 0 at R0: density is not positive");
  }
  BoundResult out;
  out.quantity = "k";
  out.direction = BoundDirection::Upper;
  out.value = 1.0 / (gamma * std::pow(rho, gamma - 1.0));
  out.strict = true;
  out.route = BoundRoute::RationalCausal;
  out.inputs = {{"gamma", gamma}, {"R0", radius}, {"seed_M", seed_mass}, {"rho0", rho}};
  return out;
}

VerificationReport& VerificationReport::merge(const VerificationReport& other) {
  grid_size += other.grid_size;
  checked += other.checked;
  skipped += other.skipped;
  violations += other.violations;
  worst_margin = std::max(worst_margin, other.worst_margin);
  outside += other.outside;
  outside_failing += other.outside_failing;
  return *this;
}

VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const NewtonianCausalContext& context,
                                              std::span<const double> k_grid) {
  require_route(bound, {BoundRoute::NewtonianCausal});
  const double gamma = (context.n + 1.0) / context.n;
  return verify_causal_k_grid(bound, k_grid, [&](double k) {
    const double rho_c = newtonian_central_density(k, context.n, context.mass, context.radius,
                                                   context.surface_combination);
    return is_causal_at_center(PolytropicEos(k, 0.0, gamma), rho_c).v2_max;
  });
}

VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const MonomialCausalContext& context,
                                              std::span<const double> k_grid) {
  require_route(bound, {BoundRoute::MonomialCausal, BoundRoute::MonomialCausalConsistent});
  if (bound.route == BoundRoute::MonomialCausal) {
    // Forward evaluation of the causal display v = k (ab/4pi)^beta R0^{beta-1};
    // squared so that the comparison against 1 is unchanged for v > 0.
    const double beta = context.gamma * (context.b - 3.0);
    const double factor = std::pow(context.a * context.b / (4.0 * kPi), beta) *
                          std::pow(context.radius, beta - 1.0);
    return verify_causal_k_grid(bound, k_grid, [&](double k) {
      const double v = k * factor;
      return v * v;
    });
  }
  const double rho = monomial_density(context.radius, context.a, context.b);
  return verify_causal_k_grid(bound, k_grid, [&](double k) {
    return k * context.gamma * std::pow(rho, context.gamma - 1.0);
  });
}

VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const RationalCausalContext& context,
                                              std::span<const double> k_grid) {
  require_route(bound, {BoundRoute::RationalCausal});
  const double r0 = context.radius;
  const double h = 1e-5 * r0;
  const double m0 = rational_invert_for_mass(r0, context.relation, context.seed_mass);
  const double m_plus = rational_invert_for_mass(r0 + h, context.relation, m0);
  const double m_minus = rational_invert_for_mass(r0 - h, context.relation, m0);
  const double rho = (m_plus - m_minus) / (2.0 * h) / (4.0 * kPi * r0 * r0);
  return verify_causal_k_grid(bound, k_grid, [&](double k) -> std::optional<double> {
    if (!(rho > 0.0)) return std::nullopt;
    return k * context.gamma * std::pow(rho, context.gamma - 1.0);
  });
}

VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const MassRadiusContext& context,
                                              std::span<const MassRadiusSample> grid) {
  require_route(bound, {BoundRoute::MassRadiusCorner});
  if (grid.empty()) throw DomainError("verification grid is empty");
  VerificationReport report;
  report.grid_size = grid.size();
  for (const auto& sample : grid) {
    const bool in_box = sample.mass > 0.0 && sample.mass <= context.mass_bound &&
                        sample.radius > 0.0 && sample.radius <= context.radius_bound;
    const bool in_scope = context.b < 0.0 || sample.radius == context.radius_bound;
    if (!in_box || !in_scope) {
      ++report.skipped;
      continue;
    }
    ++report.checked;
    const double a = sample.mass / std::pow(sample.radius, context.b);
    if (!bound.admits(a) && a > bound.value * (1.0 + 1e-12)) {
      ++report.violations;
      report.worst_margin = std::max(report.worst_margin, a / bound.value - 1.0);
    }
  }
  return report;
}

VerificationReport verify_bound_by_bruteforce(const BoundResult& bound,
                                              const MassDerivativeContext& context,
                                              std::span<const MonomialRelation> grid) {
  require_route(bound, {BoundRoute::MassDerivativeDensity});
  if (grid.empty()) throw DomainError("verification grid is empty");
  VerificationReport report;
  report.grid_size = grid.size();
  const double r0 = context.radius;
  const double h = 1e-5 * r0;
  for (const auto& rel : grid) {
    const double slope = rel.a * rel.b * std::pow(r0, rel.b - 1.0);
    if (!(slope <= context.mass_derivative_bound) || !std::isfinite(slope)) {
      ++report.skipped;
      continue;
    }
    ++report.checked;
    const double derivative = (rel.mass(r0 + h) - rel.mass(r0 - h)) / (2.0 * h);
    const double rho = derivative / (4.0 * kPi * r0 * r0);
    if (rho > bound.value * (1.0 + 1e-8)) {
      ++report.violations;
      report.worst_margin = std::max(report.worst_margin, rho / bound.value - 1.0);
    }
  }
  return report;
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  require_positive(lo, "log-space lower end");
  require_positive(hi, "log-space upper end");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + step * static_cast<double>(i));
  out.back() = hi;
  if (n > 0) out.front() = lo;
  return out;
}

}  // namespace polybound
