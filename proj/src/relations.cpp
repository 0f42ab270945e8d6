#include "polybound/relations.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "polybound/error.hpp"

namespace polybound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularThreshold = 1e-12;
constexpr double kFoldThreshold = 1e-10;
constexpr int kMaxNewtonIterations = 100;
constexpr int kBracketScanCells = 64;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive");
  }
}

}  // namespace

void MonomialRelation::validate() const {
  require_positive(a, "monomial amplitude a");
  if (b == 0.0 || !std::isfinite(b)) throw DomainError("monomial exponent b must be nonzero");
}

double MonomialRelation::mass(double radius) const { return a * std::pow(radius, b); }

PowerSeries::PowerSeries(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {}

double PowerSeries::operator()(double mass) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coefficient * std::pow(mass, t.exponent);
  return sum;
}

double PowerSeries::derivative(double mass) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    if (t.exponent == 0.0) continue;
    sum += t.coefficient * t.exponent * std::pow(mass, t.exponent - 1.0);
  }
  return sum;
}

void RationalRelation::validate() const {
  if (numerator.terms().empty() || denominator.terms().empty()) {
    throw DomainError("rational relation needs nonempty p and q term lists");
  }
  const bool q_zero = std::all_of(denominator.terms().begin(), denominator.terms().end(),
                                  [](const PowerTerm& t) { return t.coefficient == 0.0; });
  if (q_zero) throw DomainError("rational relation denominator q is identically zero");
}

double RationalRelation::radius_derivative(double mass) const {
  const double q = denominator(mass);
  return (numerator.derivative(mass) * q - numerator(mass) * denominator.derivative(mass)) /
         (q * q);
}

double newtonian_A(double k, double n, double rho_c, double surface_combination) {
  require_positive(k, "k");
  require_positive(n, "n");
  require_positive(rho_c, "rho_c");
  require_positive(surface_combination, "surface combination");
  return std::pow(4.0 * kPi / ((n + 1.0) * k), 1.5) * std::pow(rho_c, (n - 3.0) / (2.0 * n)) *
         surface_combination;
}

double newtonian_A_normalization_residual(double k, double n, double rho_c) {
  require_positive(k, "k");
  require_positive(n, "n");
  require_positive(rho_c, "rho_c");
  return (n + 1.0) * k / (4.0 * kPi) / std::pow(rho_c, (n - 1.0) / n) - 1.0;
}

double solve_monomial_for_a(double mass, double radius, double b) {
  require_positive(radius, "radius");
  return mass / std::pow(radius, b);
}

double monomial_density(double radius, double a, double b) {
  require_positive(radius, "radius");
  require_positive(a, "monomial amplitude a");
  return a * b * std::pow(radius, b - 3.0) / (4.0 * kPi);
}

double monomial_sound_speed_squared(double radius, double a, double b,
                                    const PolytropicEos& eos) {
  const double rho = monomial_density(radius, a, b);
  if (!(rho > 0.0)) throw DomainError("monomial density is not positive (b <= 0)");
  return eos.sound_speed_squared(rho);
}

bool is_singular_point(const RationalRelation& rel, double mass) {
  const double q = rel.denominator(mass);
  const double p = rel.numerator(mass);
  return !(std::abs(q) >= kSingularThreshold * (1.0 + std::abs(p)));
}

double rational_radius(double mass, const RationalRelation& rel) {
  if (is_singular_point(rel, mass)) {
    throw SingularPointError("rational relation is singular at M = " + std::to_string(mass));
  }
  return rel.numerator(mass) / rel.denominator(mass);
}

namespace {

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

// Sign change of R(M) - target nearest to the seed within +/-50%, skipping
// cells that straddle a pole of R (where q changes sign).
std::optional<Bracket> find_bracket(const RationalRelation& rel, double target, double seed) {
  const double half_width = seed != 0.0 ? 0.5 * std::abs(seed) : 0.5;
  const double lo = seed - half_width;
  const double cell = 2.0 * half_width / kBracketScanCells;
  const int seed_cell = kBracketScanCells / 2;

  auto eval = [&](double m) -> std::optional<std::pair<double, double>> {
    const double q = rel.denominator(m);
    const double f = rel.numerator(m) / q - target;
    if (!std::isfinite(f) || is_singular_point(rel, m)) return std::nullopt;
    return std::make_pair(f, q);
  };
  auto try_cell = [&](int i) -> std::optional<Bracket> {
    if (i < 0 || i >= kBracketScanCells) return std::nullopt;
    const double a = lo + i * cell;
    const double b = lo + (i + 1) * cell;
    const auto fa = eval(a);
    const auto fb = eval(b);
    if (!fa || !fb) return std::nullopt;
    if ((fa->second > 0.0) != (fb->second > 0.0)) return std::nullopt;
    if (fa->first == 0.0 || (fa->first > 0.0) != (fb->first > 0.0)) {
      return Bracket{a, b, fa->first, fb->first};
    }
    return std::nullopt;
  };

  for (int offset = 0; offset <= kBracketScanCells; ++offset) {
    if (auto found = try_cell(seed_cell - 1 - offset)) return found;
    if (auto found = try_cell(seed_cell + offset)) return found;
  }
  return std::nullopt;
}

bool converged(double residual, double radius) {
  return std::abs(residual) < 1e-12 * std::max(1.0, std::abs(radius));
}

void check_fold(const RationalRelation& rel, double mass, double radius) {
  const double slope = rel.radius_derivative(mass);
  if (!(std::abs(slope) * std::max(1.0, std::abs(mass)) >
        kFoldThreshold * std::max(1.0, std::abs(radius)))) {
    throw FoldPointError("dR/dM vanishes at M = " + std::to_string(mass) +
                         "; the relation is not locally invertible there");
  }
}

}  // namespace

double rational_invert_for_mass(double radius, const RationalRelation& rel, double seed_mass) {
  rel.validate();
  if (!std::isfinite(radius) || !std::isfinite(seed_mass)) {
    throw DomainError("radius and seed mass must be finite");
  }
  if (is_singular_point(rel, seed_mass)) {
    throw SingularPointError("seed mass is a singular point of the relation");
  }
  auto residual = [&](double m) { return rel.numerator(m) / rel.denominator(m) - radius; };

  // A root whose residual keeps its sign on both sides is a tangency, i.e. a fold.
  auto check_crossing = [&](double root) {
    check_fold(rel, root, radius);
    const double delta = 1e-6 * std::max(1.0, std::abs(root));
    const double left = residual(root - delta);
    const double right = residual(root + delta);
    if (left * right > 0.0) {
      throw FoldPointError("R(M) touches R = " + std::to_string(radius) + " without crossing near M = " +
                           std::to_string(root) + "; the relation is not locally invertible there");
    }
  };

  const auto bracket = find_bracket(rel, radius, seed_mass);
  if (bracket) {
    // Orient so that residual(lo) <= 0; lo may then exceed hi.
    double lo = bracket->f_lo <= 0.0 ? bracket->lo : bracket->hi;
    double hi = bracket->f_lo <= 0.0 ? bracket->hi : bracket->lo;
    const bool seed_inside = seed_mass > bracket->lo && seed_mass < bracket->hi;
    double m = seed_inside ? seed_mass : 0.5 * (lo + hi);
    double dx_old = hi - lo;
    double dx = dx_old;
    double f = residual(m);
    double df = rel.radius_derivative(m);
    for (int it = 0; it < 200; ++it) {
      if (converged(f, radius)) break;
      const bool newton_leaves = ((m - hi) * df - f) * ((m - lo) * df - f) > 0.0;
      const bool newton_slow = std::abs(2.0 * f) > std::abs(dx_old * df);
      dx_old = dx;
      if (df == 0.0 || newton_leaves || newton_slow) {
        dx = 0.5 * (hi - lo);
        m = lo + dx;
      } else {
        dx = f / df;
        m -= dx;
      }
      if (std::abs(dx) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(m)) {
        f = residual(m);
        break;
      }
      f = residual(m);
      df = rel.radius_derivative(m);
      if (f < 0.0) {
        lo = m;
      } else {
        hi = m;
      }
    }
    if (std::abs(f) < 1e-10 * std::max(1.0, std::abs(radius))) {
      check_crossing(m);
      return m;
    }
    // A bracket around a fold can close onto a tangency; fall through to
    // plain Newton, which reports the fold explicitly.
  }

  double m = seed_mass;
  for (int it = 0; it < kMaxNewtonIterations; ++it) {
    if (is_singular_point(rel, m)) break;
    const double f = residual(m);
    if (converged(f, radius)) {
      check_crossing(m);
      return m;
    }
    const double df = rel.radius_derivative(m);
    if (!(std::abs(df) * std::max(1.0, std::abs(m)) >
          kFoldThreshold * std::max(1.0, std::abs(radius)))) {
      throw FoldPointError("dR/dM vanishes near M = " + std::to_string(m));
    }
    double step = f / df;
    // Keep Newton from jumping across a pole in one step.
    const double limit = std::max(std::abs(m), 1.0);
    if (std::abs(step) > limit) step = std::copysign(limit, step);
    m -= step;
    if (!std::isfinite(m)) break;
  }
  if (std::isfinite(m) && !is_singular_point(rel, m) &&
      std::abs(residual(m)) < 1e-10 * std::max(1.0, std::abs(radius))) {
    check_crossing(m);
    return m;
  }
  throw NonConvergenceError("could not invert the rational relation for R = " +
                            std::to_string(radius));
}

double rational_density(double radius, const RationalRelation& rel, double seed_mass) {
  require_positive(radius, "radius");
  const double mass = rational_invert_for_mass(radius, rel, seed_mass);
  const double slope = rel.radius_derivative(mass);
  return (1.0 / slope) / (4.0 * kPi * radius * radius);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(const std::string& text, int line_no) {
  const auto t = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw DomainError("line " + std::to_string(line_no) + ": not a number: '" + t + "'");
  }
  return value;
}

}  // namespace

MonomialRelation parse_monomial(std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string a_text, b_text, extra;
    fields >> a_text >> b_text;
    if (b_text.empty() || (fields >> extra)) {
      throw DomainError("line " + std::to_string(line_no) + ": expected 'a b'");
    }
    MonomialRelation rel{to_real(a_text, line_no), to_real(b_text, line_no)};
    rel.validate();
    return rel;
  }
  throw DomainError("monomial relation text is empty");
}

RationalRelation parse_rational(std::istream& in) {
  std::vector<PowerTerm> p_terms;
  std::vector<PowerTerm> q_terms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(trim(cell));
    if (cells.size() != 3 || (cells[0] != "p" && cells[0] != "q")) {
      throw DomainError("line " + std::to_string(line_no) +
                        ": expected 'p,<coefficient>,<exponent>' or 'q,...'");
    }
    PowerTerm term{to_real(cells[1], line_no), to_real(cells[2], line_no)};
    (cells[0] == "p" ? p_terms : q_terms).push_back(term);
  }
  RationalRelation rel{PowerSeries(std::move(p_terms)), PowerSeries(std::move(q_terms))};
  rel.validate();
  return rel;
}

std::string format_monomial(const MonomialRelation& rel) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g %.17g\n", rel.a, rel.b);
  return buf;
}

std::string format_rational(const RationalRelation& rel) {
  std::string out;
  char buf[96];
  for (const auto& t : rel.numerator.terms()) {
    std::snprintf(buf, sizeof buf, "p,%.17g,%.17g\n", t.coefficient, t.exponent);
    out += buf;
  }
  for (const auto& t : rel.denominator.terms()) {
    std::snprintf(buf, sizeof buf, "q,%.17g,%.17g\n", t.coefficient, t.exponent);
    out += buf;
  }
  return out;
}

}  // namespace polybound
