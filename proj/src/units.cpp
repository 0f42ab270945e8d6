#include "polybound/units.hpp"

#include <cmath>
#include <string>

#include "polybound/error.hpp"

namespace polybound::units {

namespace {

// Multiplier taking a value in `unit` to cm-based geometrized units.
double factor(Unit unit) {
  switch (unit) {
    case Unit::SolarMass:
      return kSolarMassLength;
    case Unit::Gram:
      return kMassToLength;
    case Unit::SolarRadius:
      return kSolarRadius;
    case Unit::Kilometer:
      return kKilometer;
    case Unit::Centimeter:
      return 1.0;
    case Unit::GramPerCubicCentimeter:
      return kMassToLength;
    case Unit::DynePerSquareCentimeter:
      return kPressureToGeometrized;
    case Unit::Dimensionless:
      return 1.0;
  }
  return 1.0;
}

}  // namespace

Unit parse_unit(std::string_view tag) {
  if (tag == "Msun" || tag == "solar_mass" || tag == "M_sun") return Unit::SolarMass;
  if (tag == "g" || tag == "gram") return Unit::Gram;
  if (tag == "Rsun" || tag == "solar_radius" || tag == "R_sun") return Unit::SolarRadius;
  if (tag == "km") return Unit::Kilometer;
  if (tag == "cm") return Unit::Centimeter;
  if (tag == "g/cm3" || tag == "g/cm^3") return Unit::GramPerCubicCentimeter;
  if (tag == "dyn/cm2" || tag == "dyn/cm^2") return Unit::DynePerSquareCentimeter;
  if (tag == "1" || tag == "dimensionless") return Unit::Dimensionless;
  throw DomainError("unknown unit tag '" + std::string(tag) + "'");
}

std::string_view unit_tag(Unit unit) {
  switch (unit) {
    case Unit::SolarMass:
      return "Msun";
    case Unit::Gram:
      return "g";
    case Unit::SolarRadius:
      return "Rsun";
    case Unit::Kilometer:
      return "km";
    case Unit::Centimeter:
      return "cm";
    case Unit::GramPerCubicCentimeter:
      return "g/cm3";
    case Unit::DynePerSquareCentimeter:
      return "dyn/cm2";
    case Unit::Dimensionless:
      return "1";
  }
  return "?";
}

GeomQuantity to_geometrized(double value, Unit unit) {
  return {value * factor(unit), dimension_of(unit)};
}

double from_geometrized(const GeomQuantity& quantity, Unit unit) {
  if (!same_geometrized_dimension(quantity.dimension, dimension_of(unit))) {
    throw DomainError("cannot express geometrized quantity in unit '" +
                      std::string(unit_tag(unit)) + "'");
  }
  return quantity.value / factor(unit);
}

double to_solar_code(const GeomQuantity& quantity) {
  return quantity.value / std::pow(kSolarMassLength, length_power(quantity.dimension));
}

GeomQuantity from_solar_code(double value, Dimension dimension) {
  return {value * std::pow(kSolarMassLength, length_power(dimension)), dimension};
}

double solar_radii_to_code_length(double radius_solar) {
  return radius_solar * kSolarRadius / kSolarMassLength;
}

double code_length_to_solar_radii(double length_code) {
  return length_code * kSolarMassLength / kSolarRadius;
}

double code_length_to_km(double length_code) {
  return length_code * kSolarMassLength / kKilometer;
}

}  // namespace polybound::units
