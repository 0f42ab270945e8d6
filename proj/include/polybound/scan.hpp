#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polybound/eos.hpp"
#include "polybound/structure.hpp"

namespace polybound {

enum class Spacing { Linear, Log };

struct Axis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  Spacing spacing = Spacing::Linear;

  /// Throws DomainError for count 0, min > max, or log spacing with min <= 0.
  void validate(std::string_view name) const;
  std::vector<double> values() const;
};

enum class ScanMode { Tov, Newtonian };

struct ScanSpec {
  Axis k;
  Axis gamma;
  Axis rho_c;
  ScanMode mode = ScanMode::Tov;
  double k0 = 0.0;
  IntegrationOptions options;

  void validate() const;
};

enum class PointStatus { Ok, HorizonApproach, NoFiniteRadius, NonConvergence, Invalid };

std::string_view status_name(PointStatus status);
std::string_view mode_name(ScanMode mode);
ScanMode parse_mode(std::string_view text);

struct ScanPoint {
  double k = 0.0;
  double gamma = 0.0;
  double rho_c = 0.0;
  double mass = 0.0;    // NaN unless status == Ok
  double radius = 0.0;  // NaN unless status == Ok
  bool causal = false;  // central causal condition at rho_c
  double v2_center = 0.0;
  PointStatus status = PointStatus::Ok;
};

/// Evaluates every (k, gamma, rho_c) cell, k-major then gamma then rho_c.
/// Failed integrations are recorded in the point status. `jobs` workers
/// share the grid; the output does not depend on the worker count.
std::vector<ScanPoint> run_scan(const ScanSpec& spec, unsigned jobs = 1);

struct CurvePoint {
  double rho_c = 0.0;
  double mass = 0.0;
  double radius = 0.0;
};

/// Mass-radius curve along rho_c. Integration errors propagate.
std::vector<CurvePoint> mass_radius_curve(const PolytropicEos& eos, const Axis& rho_c_range,
                                          ScanMode mode = ScanMode::Newtonian,
                                          const IntegrationOptions& opts = {});

/// "key = value" lines. Axis keys k, gamma, rho_c take "min max count [linear|log]";
/// scalar keys are mode, k0, rel_tol, surface_fraction.
ScanSpec parse_scan_spec(std::istream& in);

void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points);

}  // namespace polybound
