#pragma once

// Geometrized units (G = c = 1). Internally every quantity is expressed in
// centimetre-based geometrized units: masses and lengths in cm, densities and
// pressures in cm^-2. The "solar code" system additionally sets M_sun = 1,
// which is the raw unit system the CLI exposes with --geometrized.

#include <string_view>

namespace polybound::units {

// CODATA 2018 and IAU 2015 nominal values, cgs.
inline constexpr double kGravitationalConstant = 6.67430000000e-8;   // cm^3 g^-1 s^-2
inline constexpr double kSpeedOfLight = 2.99792458000e10;            // cm s^-1
inline constexpr double kSolarMassParameter = 1.32712440000e26;      // G*M_sun, cm^3 s^-2
inline constexpr double kSolarMass = kSolarMassParameter / kGravitationalConstant;  // g
inline constexpr double kSolarRadius = 6.95700000000e10;             // cm
inline constexpr double kKilometer = 1.0e5;                          // cm

/// G/c^2 in cm/g: converts grams to geometrized centimetres.
inline constexpr double kMassToLength = kGravitationalConstant / (kSpeedOfLight * kSpeedOfLight);
/// G/c^4 in cm^-2 per dyn cm^-2.
inline constexpr double kPressureToGeometrized =
    kMassToLength / (kSpeedOfLight * kSpeedOfLight);
/// GM_sun/c^2 in cm (about 1.4766 km).
inline constexpr double kSolarMassLength = kSolarMassParameter / (kSpeedOfLight * kSpeedOfLight);

enum class Dimension { Mass, Length, Density, Pressure, Dimensionless };

enum class Unit {
  SolarMass,
  Gram,
  SolarRadius,
  Kilometer,
  Centimeter,
  GramPerCubicCentimeter,
  DynePerSquareCentimeter,
  Dimensionless,
};

constexpr Dimension dimension_of(Unit unit) {
  switch (unit) {
    case Unit::SolarMass:
    case Unit::Gram:
      return Dimension::Mass;
    case Unit::SolarRadius:
    case Unit::Kilometer:
    case Unit::Centimeter:
      return Dimension::Length;
    case Unit::GramPerCubicCentimeter:
      return Dimension::Density;
    case Unit::DynePerSquareCentimeter:
      return Dimension::Pressure;
    case Unit::Dimensionless:
      return Dimension::Dimensionless;
  }
  return Dimension::Dimensionless;
}

/// Mass and length share cm; density and pressure share cm^-2.
constexpr bool same_geometrized_dimension(Dimension a, Dimension b) {
  auto family = [](Dimension d) {
    switch (d) {
      case Dimension::Mass:
      case Dimension::Length:
        return 1;
      case Dimension::Density:
      case Dimension::Pressure:
        return 2;
      case Dimension::Dimensionless:
        return 0;
    }
    return 0;
  };
  return family(a) == family(b);
}

/// Power of centimetres carried by a geometrized quantity of this dimension.
constexpr int length_power(Dimension d) {
  switch (d) {
    case Dimension::Mass:
    case Dimension::Length:
      return 1;
    case Dimension::Density:
    case Dimension::Pressure:
      return -2;
    case Dimension::Dimensionless:
      return 0;
  }
  return 0;
}

struct GeomQuantity {
  double value = 0.0;  // cm-based geometrized units
  Dimension dimension = Dimension::Dimensionless;
};

/// Accepts "Msun", "g", "Rsun", "km", "cm", "g/cm3", "dyn/cm2", "1" and a few
/// spelled-out aliases. Throws DomainError on anything else.
Unit parse_unit(std::string_view tag);
std::string_view unit_tag(Unit unit);

GeomQuantity to_geometrized(double value, Unit unit);
/// Throws DomainError when the quantity's dimension is not convertible to `unit`.
double from_geometrized(const GeomQuantity& quantity, Unit unit);

/// Rescale between cm-based geometrized values and the M_sun = 1 code system.
double to_solar_code(const GeomQuantity& quantity);
GeomQuantity from_solar_code(double value, Dimension dimension);

/// Shorthands used at the CLI boundary.
double solar_radii_to_code_length(double radius_solar);
double code_length_to_solar_radii(double length_code);
double code_length_to_km(double length_code);

}  // namespace polybound::units
