#include "polybound/eos.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>

#include "polybound/error.hpp"

namespace polybound {

PolytropicEos::PolytropicEos(double k, double k0, double gamma) : k_(k), k0_(k0), gamma_(gamma) {
  if (!std::isfinite(k) || k <= 0.0) throw DomainError("polytropic constant k must be positive");
  if (!std::isfinite(k0)) throw DomainError("stiffness constant k0 must be finite");
  if (!std::isfinite(gamma) || gamma <= 1.0) {
    throw DomainError("polytrope exponent gamma must exceed 1");
  }
}

PolytropicEos PolytropicEos::from_index(double k, double k0, double n) {
  if (!std::isfinite(n) || n <= 0.0) throw DomainError("polytropic index n must be positive");
  return {k, k0, (n + 1.0) / n};
}

double PolytropicEos::pressure(double rho) const {
  if (!(rho >= 0.0)) throw DomainError("density must be nonnegative");
  return k_ * std::pow(rho, gamma_) + k0_;
}

double PolytropicEos::density_from_pressure(double p) const {
  if (!(p >= k0_)) throw OutOfBranchError("pressure below stiffness constant has no density");
  return std::pow((p - k0_) / k_, 1.0 / gamma_);
}

double PolytropicEos::sound_speed_squared(double rho) const {
  if (!(rho > 0.0)) throw DomainError("sound speed requires positive density");
  return k_ * gamma_ * std::pow(rho, gamma_ - 1.0);
}

CausalityVerdict is_causal_at_center(const PolytropicEos& eos, double rho_c) {
  const double v2 = eos.sound_speed_squared(rho_c);
  return {v2 < 1.0, v2, rho_c};
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, const std::string& key) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw DomainError("bad value for '" + key + "': " + text);
  return value;
}

}  // namespace

PolytropicEos parse_eos(std::istream& in) {
  std::map<std::string, double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    if (key != "k" && key != "k0" && key != "gamma" && key != "n") {
      throw DomainError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    values[key] = parse_real(trim(line.substr(eq + 1)), key);
  }
  if (!values.count("k")) throw DomainError("EOS block is missing 'k'");
  const double k0 = values.count("k0") ? values["k0"] : 0.0;
  if (values.count("gamma") && values.count("n")) {
    throw DomainError("EOS block gives both 'gamma' and 'n'");
  }
  if (values.count("n")) return PolytropicEos::from_index(values["k"], k0, values["n"]);
  if (!values.count("gamma")) throw DomainError("EOS block is missing 'gamma'");
  return {values["k"], k0, values["gamma"]};
}

std::string format_eos(const PolytropicEos& eos) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "k = %.17g\nk0 = %.17g\ngamma = %.17g\n", eos.k(), eos.k0(),
                eos.gamma());
  return buf;
}

}  // namespace polybound
