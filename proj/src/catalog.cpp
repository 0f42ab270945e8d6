#include "polybound/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <tuple>

#include <Eigen/Dense>

namespace polybound {

namespace {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}


std::string join_diagnostics(const std::vector<CatalogDiagnostic>& diagnostics) {
  std::string out = "catalog rejected:";
  for (const auto& d : diagnostics) out += "\n  row " + std::to_string(d.row) + ": " + d.message;
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream row(line);
  for (std::string cell; std::getline(row, cell, ',');) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> to_real(const std::string& text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Sorted copy so that sums do not depend on record order.
std::vector<CatalogRecord> canonical_order(std::span<const CatalogRecord> records) {
  std::vector<CatalogRecord> sorted(records.begin(), records.end());
  std::sort(sorted.begin(), sorted.end(), [](const CatalogRecord& l, const CatalogRecord& r) {
    return std::tie(l.radius, l.mass, l.weight, l.label) <
           std::tie(r.radius, r.mass, r.weight, r.label);
  });
  return sorted;
}

double rational_residual(const FitResult& fit, const CatalogRecord& rec) {
  const std::size_t np = fit.p_exponents.size();
  double p = 0.0;
  for (std::size_t i = 0; i < np; ++i) p += fit.parameters[i] * std::pow(rec.mass, fit.p_exponents[i]);
  double q = 0.0;
  for (std::size_t j = 0; j < fit.q_exponents.size(); ++j) {
    q += fit.parameters[np + j] * std::pow(rec.mass, fit.q_exponents[j]);
  }
  return p - rec.radius * q;
}

}  // namespace

CatalogError::CatalogError(std::vector<CatalogDiagnostic> diagnostics)
    : Error(ErrorKind::InvalidInput, join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

std::vector<CatalogRecord> load_catalog(std::istream& in, double mass_floor) {
  std::string line;
  if (!std::getline(in, line)) throw CatalogError({{0, "empty input: missing header"}});
  const auto header = split_csv(trim(line));
  int label_col = -1;
  int weight_col = -1;
  const bool header_ok = header.size() >= 2 && header.size() <= 4 && header[0] == "mass" &&
                         header[1] == "radius";
  if (header_ok) {
    for (std::size_t i = 2; i < header.size(); ++i) {
      if (header[i] == "label" && label_col < 0 && weight_col < 0) {
        label_col = static_cast<int>(i);
      } else if (header[i] == "weight" && weight_col < 0) {
        weight_col = static_cast<int>(i);
      } else {
        throw CatalogError({{0, "unexpected header column '" + header[i] + "'"}});
      }
    }
  } else {
    throw CatalogError({{0, "header must be 'mass,radius[,label][,weight]'"}});
  }

  std::vector<CatalogRecord> records;
  std::vector<CatalogDiagnostic> diagnostics;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    ++row;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      diagnostics.push_back({row, "expected " + std::to_string(header.size()) + " fields, got " +
                                      std::to_string(cells.size())});
      continue;
    }
    const auto mass = to_real(cells[0]);
    const auto radius = to_real(cells[1]);
    if (!mass || !radius) {
      diagnostics.push_back({row, "parse error: mass and radius must be numbers"});
      continue;
    }
    CatalogRecord rec;
    rec.mass = *mass;
    rec.radius = *radius;
    if (label_col >= 0) rec.label = cells[label_col];
    if (weight_col >= 0) {
      const auto weight = to_real(cells[weight_col]);
      if (!weight) {
        diagnostics.push_back({row, "parse error: weight must be a number"});
        continue;
      }
      rec.weight = *weight;
    }
    if (!std::isfinite(rec.mass) || rec.mass < mass_floor) {
      diagnostics.push_back({row, "mass " + cells[0] + " is below the main-sequence floor of " +
                                      format_number(mass_floor) + " M_sun"});
      continue;
    }
    if (!std::isfinite(rec.radius) || !(rec.radius > 0.0)) {
      diagnostics.push_back({row, "radius must be positive and finite"});
      continue;
    }
    if (!std::isfinite(rec.weight) || !(rec.weight > 0.0)) {
      diagnostics.push_back({row, "weight must be positive"});
      continue;
    }
    records.push_back(std::move(rec));
  }
  if (!diagnostics.empty()) throw CatalogError(std::move(diagnostics));
  return records;
}

MonomialRelation FitResult::monomial() const {
  if (model != FitModel::Monomial || parameters.size() != 2) {
    throw DomainError("fit result is not a monomial fit");
  }
  return {parameters[0], parameters[1]};
}

RationalRelation FitResult::rational() const {
  if (model != FitModel::Rational) throw DomainError("fit result is not a rational fit");
  std::vector<PowerTerm> p;
  std::vector<PowerTerm> q;
  for (std::size_t i = 0; i < p_exponents.size(); ++i) p.push_back({parameters[i], p_exponents[i]});
  for (std::size_t j = 0; j < q_exponents.size(); ++j) {
    q.push_back({parameters[p_exponents.size() + j], q_exponents[j]});
  }
  return {PowerSeries(std::move(p)), PowerSeries(std::move(q))};
}

FitResult fit_monomial(std::span<const CatalogRecord> records) {
  const auto sorted = canonical_order(records);
  for (const auto& rec : sorted) {
    if (!(rec.mass > 0.0) || !(rec.radius > 0.0) || !(rec.weight > 0.0)) {
      throw DomainError("monomial fit needs positive masses, radii and weights");
    }
  }
  const bool distinct = !sorted.empty() && sorted.front().radius != sorted.back().radius;
  if (sorted.size() < 2 || !distinct) {
    throw UnderdeterminedError("monomial fit needs at least two distinct radii");
  }

  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& rec : sorted) {
    sw += rec.weight;
    sx += rec.weight * std::log(rec.radius);
    sy += rec.weight * std::log(rec.mass);
  }
  const double x_mean = sx / sw;
  const double y_mean = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& rec : sorted) {
    const double dx = std::log(rec.radius) - x_mean;
    sxx += rec.weight * dx * dx;
    sxy += rec.weight * dx * (std::log(rec.mass) - y_mean);
  }
  const double b = sxy / sxx;
  const double log_a = y_mean - b * x_mean;

  FitResult out;
  out.model = FitModel::Monomial;
  out.parameters = {std::exp(log_a), b};
  out.n_points = sorted.size();
  out.residual_rms = fit_residual_rms(out, sorted);
  return out;
}

FitResult fit_rational(std::span<const CatalogRecord> records, std::span<const double> p_exponents,
                       std::span<const double> q_exponents) {
  if (p_exponents.empty() || q_exponents.empty()) {
    throw DomainError("rational fit needs at least one p and one q exponent");
  }
  const auto sorted = canonical_order(records);
  const std::size_t np = p_exponents.size();
  const std::size_t unknowns = np + q_exponents.size() - 1;
  if (sorted.size() < unknowns) {
    throw UnderdeterminedError("rational fit needs at least " + std::to_string(unknowns) +
                               " records");
  }

  // Columns: M^{p_i} for every p term, -R M^{q_j} for the free q terms.
  // Right-hand side: R M^{q_0}, from pinning the leading q coefficient to 1.
  Eigen::MatrixXd design(sorted.size(), unknowns);
  Eigen::VectorXd rhs(sorted.size());
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    const auto& rec = sorted[r];
    const double w = std::sqrt(rec.weight);
    for (std::size_t i = 0; i < np; ++i) design(r, i) = w * std::pow(rec.mass, p_exponents[i]);
    for (std::size_t j = 1; j < q_exponents.size(); ++j) {
      design(r, np + j - 1) = -w * rec.radius * std::pow(rec.mass, q_exponents[j]);
    }
    rhs(r) = w * rec.radius * std::pow(rec.mass, q_exponents[0]);
  }
  if (!design.allFinite() || !rhs.allFinite()) {
    throw DomainError("rational fit design is not finite (check exponents against masses)");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(unknowns)) {
    throw UnderdeterminedError("rational fit design is rank deficient");
  }
  const Eigen::VectorXd solution = qr.solve(rhs);

  FitResult out;
  out.model = FitModel::Rational;
  out.p_exponents.assign(p_exponents.begin(), p_exponents.end());
  out.q_exponents.assign(q_exponents.begin(), q_exponents.end());
  out.parameters.reserve(np + q_exponents.size());
  for (std::size_t i = 0; i < np; ++i) out.parameters.push_back(solution(i));
  out.parameters.push_back(1.0);
  for (std::size_t j = 1; j < q_exponents.size(); ++j) out.parameters.push_back(solution(np + j - 1));
  out.n_points = sorted.size();
  out.residual_rms = fit_residual_rms(out, sorted);
  return out;
}

double fit_residual_rms(const FitResult& fit, std::span<const CatalogRecord> records) {
  double sw = 0.0;
  double ss = 0.0;
  for (const auto& rec : records) {
    double r = 0.0;
    if (fit.model == FitModel::Monomial) {
      r = std::log(rec.mass) - std::log(fit.parameters[0]) - fit.parameters[1] * std::log(rec.radius);
    } else {
      r = rational_residual(fit, rec);
    }
    sw += rec.weight;
    ss += rec.weight * r * r;
  }
  return sw > 0.0 ? std::sqrt(ss / sw) : 0.0;
}

}  // namespace polybound
