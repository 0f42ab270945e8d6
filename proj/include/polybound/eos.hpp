#pragma once

#include <iosfwd>
#include <string>

namespace polybound {

/// Polytropic state function p = k*rho^gamma + k0, gamma = (n+1)/n.
class PolytropicEos {
 public:
  /// Throws DomainError unless k > 0 and gamma > 1 (both finite).
  PolytropicEos(double k, double k0, double gamma);

  static PolytropicEos from_index(double k, double k0, double n);

  double k() const { return k_; }
  double k0() const { return k0_; }
  double gamma() const { return gamma_; }
  /// Polytropic index n = 1/(gamma - 1).
  double n() const { return 1.0 / (gamma_ - 1.0); }

  double pressure(double rho) const;
  /// Inverse of pressure() on rho >= 0. Throws OutOfBranchError for p < k0.
  double density_from_pressure(double p) const;
  /// dp/drho = k*gamma*rho^(gamma-1). Independent of k0.
  double sound_speed_squared(double rho) const;

  bool operator==(const PolytropicEos&) const = default;

 private:
  double k_;
  double k0_;
  double gamma_;
};

struct CausalityVerdict {
  bool causal = false;
  double v2_max = 0.0;
  double evaluation_density = 0.0;
};

/// Strict test k*gamma*rho_c^(gamma-1) < 1; v^2 == 1 counts as acausal.
CausalityVerdict is_causal_at_center(const PolytropicEos& eos, double rho_c);

/// "key = value" block with keys k, k0, gamma (or n in place of gamma).
/// Blank lines and '#' comments are ignored.
PolytropicEos parse_eos(std::istream& in);
std::string format_eos(const PolytropicEos& eos);

}  // namespace polybound
