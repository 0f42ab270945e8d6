#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polybound/error.hpp"
#include "polybound/relations.hpp"

namespace polybound {

/// One observed star in solar units.
struct CatalogRecord {
  double mass = 0.0;    // M_sun
  double radius = 0.0;  // R_sun
  std::string label;    // e.g. ZAMS, TAMS; empty when absent
  double weight = 1.0;
};

struct CatalogDiagnostic {
  std::size_t row;  // 1-based data row (the header is row 0)
  std::string message;
};

/// Aggregates every rejected row of a catalog.
class CatalogError : public Error {
 public:
  explicit CatalogError(std::vector<CatalogDiagnostic> diagnostics);
  const std::vector<CatalogDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<CatalogDiagnostic> diagnostics_;
};

/// Main-sequence stars carry at least 0.1 M_sun.
inline constexpr double kMainSequenceMassFloor = 0.1;

/// CSV with header "mass,radius[,label][,weight]".
std::vector<CatalogRecord> load_catalog(std::istream& in,
                                        double mass_floor = kMainSequenceMassFloor);

enum class FitModel { Monomial, Rational };

struct FitResult {
  FitModel model = FitModel::Monomial;
  /// Monomial: {a, b}. Rational: p coefficients then q coefficients, with the
  /// first q coefficient pinned to 1.
  std::vector<double> parameters;
  std::vector<double> p_exponents;
  std::vector<double> q_exponents;
  double residual_rms = 0.0;
  std::size_t n_points = 0;

  MonomialRelation monomial() const;
  RationalRelation rational() const;
};

/// Weighted least squares of log M = log a + b log R.
FitResult fit_monomial(std::span<const CatalogRecord> records);

/// Linear least squares on sum_i c_i M^{p_i} - R sum_j d_j M^{q_j} with d_0 = 1.
FitResult fit_rational(std::span<const CatalogRecord> records, std::span<const double> p_exponents,
                       std::span<const double> q_exponents);

/// Residual RMS recomputed from the returned parameters, in the fit's own space.
double fit_residual_rms(const FitResult& fit, std::span<const CatalogRecord> records);

}  // namespace polybound
