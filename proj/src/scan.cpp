#include "polybound/scan.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "polybound/error.hpp"

namespace polybound {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ScanPoint evaluate_point(double k, double gamma, double rho_c, const ScanSpec& spec) {
  ScanPoint point{k, gamma, rho_c, kNaN, kNaN, false, kNaN, PointStatus::Ok};
  try {
    const PolytropicEos eos(k, spec.k0, gamma);
    const auto verdict = is_causal_at_center(eos, rho_c);
    point.causal = verdict.causal;
    point.v2_center = verdict.v2_max;
    const auto profile = spec.mode == ScanMode::Tov ? integrate_tov(eos, rho_c, spec.options)
                                                    : newtonian_star(eos, rho_c, spec.options);
    point.mass = profile.total_mass;
    point.radius = profile.surface_radius;
  } catch (const HorizonApproachError&) {
    point.status = PointStatus::HorizonApproach;
  } catch (const NoFiniteRadiusError&) {
    point.status = PointStatus::NoFiniteRadius;
  } catch (const NonConvergenceError&) {
    point.status = PointStatus::NonConvergence;
  } catch (const DomainError&) {
    point.status = PointStatus::Invalid;
  }
  return point;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(const std::string& text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DomainError(where + ": not a number: '" + text + "'");
  }
  return value;
}

Axis parse_axis(const std::string& text, const std::string& where) {
  std::istringstream fields(text);
  std::string lo, hi, count, spacing, extra;
  fields >> lo >> hi >> count >> spacing;
  if (count.empty() || (fields >> extra)) {
    throw DomainError(where + ": expected 'min max count [linear|log]'");
  }
  Axis axis;
  axis.min = to_real(lo, where);
  axis.max = to_real(hi, where);
  const double n = to_real(count, where);
  if (!(n >= 0.0) || n != std::floor(n)) throw DomainError(where + ": count must be an integer");
  axis.count = static_cast<std::size_t>(n);
  if (spacing.empty() || spacing == "linear") {
    axis.spacing = Spacing::Linear;
  } else if (spacing == "log") {
    axis.spacing = Spacing::Log;
  } else {
    throw DomainError(where + ": spacing must be 'linear' or 'log'");
  }
  return axis;
}

}  // namespace

void Axis::validate(std::string_view name) const {
  const std::string n(name);
  if (count < 1) throw DomainError("axis " + n + ": count must be at least 1");
  if (!std::isfinite(min) || !std::isfinite(max)) throw DomainError("axis " + n + ": non-finite range");
  if (min > max) throw DomainError("axis " + n + ": min exceeds max");
  if (spacing == Spacing::Log && !(min > 0.0)) {
    throw DomainError("axis " + n + ": log spacing requires min > 0");
  }
}

std::vector<double> Axis::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  const double denom = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / denom;
    out[i] = spacing == Spacing::Log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min)))
                                     : min + t * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void ScanSpec::validate() const {
  k.validate("k");
  gamma.validate("gamma");
  rho_c.validate("rho_c");
  if (!(k.min > 0.0)) throw DomainError("axis k: polytropic constant must be positive");
  if (!(gamma.min > 1.0)) throw DomainError("axis gamma: polytrope exponent must exceed 1");
  if (!(rho_c.min > 0.0)) throw DomainError("axis rho_c: central density must be positive");
  if (!std::isfinite(k0)) throw DomainError("k0 must be finite");
}

std::string_view status_name(PointStatus status) {
  switch (status) {
    case PointStatus::Ok:
      return "ok";
    case PointStatus::HorizonApproach:
      return "horizon-approach";
    case PointStatus::NoFiniteRadius:
      return "no-finite-radius";
    case PointStatus::NonConvergence:
      return "non-convergence";
    case PointStatus::Invalid:
      return "invalid";
  }
  return "unknown";
}

std::string_view mode_name(ScanMode mode) { return mode == ScanMode::Tov ? "tov" : "newtonian"; }

ScanMode parse_mode(std::string_view text) {
  if (text == "tov") return ScanMode::Tov;
  if (text == "newtonian") return ScanMode::Newtonian;
  throw DomainError("mode must be 'tov' or 'newtonian'");
}

std::vector<ScanPoint> run_scan(const ScanSpec& spec, unsigned jobs) {
  spec.validate();
  const auto ks = spec.k.values();
  const auto gammas = spec.gamma.values();
  const auto densities = spec.rho_c.values();
  const std::size_t total = ks.size() * gammas.size() * densities.size();
  if (total == 0) throw DomainError("scan grid is empty");

  std::vector<ScanPoint> points(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      const std::size_t ik = i / (gammas.size() * densities.size());
      const std::size_t ig = (i / densities.size()) % gammas.size();
      const std::size_t ir = i % densities.size();
      points[i] = evaluate_point(ks[ik], gammas[ig], densities[ir], spec);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return points;
}

std::vector<CurvePoint> mass_radius_curve(const PolytropicEos& eos, const Axis& rho_c_range,
                                          ScanMode mode, const IntegrationOptions& opts) {
  rho_c_range.validate("rho_c");
  if (!(rho_c_range.min > 0.0)) throw DomainError("central densities must be positive");
  std::vector<CurvePoint> curve;
  curve.reserve(rho_c_range.count);
  for (const double rho_c : rho_c_range.values()) {
    const auto profile =
        mode == ScanMode::Tov ? integrate_tov(eos, rho_c, opts) : newtonian_star(eos, rho_c, opts);
    curve.push_back({rho_c, profile.total_mass, profile.surface_radius});
  }
  return curve;
}

ScanSpec parse_scan_spec(std::istream& in) {
  ScanSpec spec;
  std::map<std::string, bool> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string::npos) throw DomainError(where + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (seen[key]) throw DomainError(where + ": duplicate key '" + key + "'");
    seen[key] = true;
    if (key == "k") {
      spec.k = parse_axis(value, where);
    } else if (key == "gamma") {
      spec.gamma = parse_axis(value, where);
    } else if (key == "rho_c") {
      spec.rho_c = parse_axis(value, where);
    } else if (key == "mode") {
      spec.mode = parse_mode(value);
    } else if (key == "k0") {
      spec.k0 = to_real(value, where);
    } else if (key == "rel_tol") {
      spec.options.rel_tol = to_real(value, where);
    } else if (key == "surface_fraction") {
      spec.options.surface_fraction = to_real(value, where);
    } else {
      throw DomainError(where + ": unknown key '" + key + "'");
    }
  }
  for (const char* required : {"k", "gamma", "rho_c"}) {
    if (!seen[required]) throw DomainError(std::string("scan spec is missing '") + required + "'");
  }
  spec.validate();
  return spec;
}

void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points) {
  out << "k,gamma,rho_c,mass,radius,causal,v2_center,status\n";
  char buf[256];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s,%.17g,", p.k, p.gamma, p.rho_c,
                  p.mass, p.radius, p.causal ? "true" : "false", p.v2_center);
    out << buf << status_name(p.status) << '\n';
  }
}

}  // namespace polybound
