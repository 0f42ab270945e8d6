#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <sstream>

#include "polybound/eos.hpp"
#include "polybound/error.hpp"
#include "polybound/scan.hpp"

using namespace polybound;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("pressure") {
  const PolytropicEos unit(1.0, 0.0, 2.0);
  CHECK(unit.pressure(0.0) == 0.0);
  CHECK(unit.pressure(1.0) == 1.0);
  const PolytropicEos e(0.5, 0.1, 5.0 / 3.0);
  const Big oracle = Big("0.5") * pow(Big(8), Big(5) / 3) + Big("0.1");
  CHECK(e.pressure(8.0) == doctest::Approx(oracle.convert_to<double>()).epsilon(1e-14));
  CHECK(e.pressure(8.0) == doctest::Approx(16.1).epsilon(1e-14));
  CHECK_THROWS_AS(unit.pressure(-1.0), DomainError);
}

TEST_CASE("density from pressure") {
  CHECK(PolytropicEos(1.0, 0.0, 2.0).density_from_pressure(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(PolytropicEos(1.0, 1.0, 2.0).density_from_pressure(1.0) == 0.0);
  CHECK(PolytropicEos(0.5, 0.1, 5.0 / 3.0).density_from_pressure(16.1) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK_THROWS_AS(PolytropicEos(1.0, 1.0, 2.0).density_from_pressure(0.5), OutOfBranchError);
}

TEST_CASE("sound speed") {
  CHECK(PolytropicEos(1.0, 0.0, 2.0).sound_speed_squared(0.5) == 1.0);
  CHECK(PolytropicEos(0.25, 0.0, 2.0).sound_speed_squared(1.0) == 0.5);
  const PolytropicEos e(0.3, 0.0, 5.0 / 3.0);
  const double h = 1e-6;
  const double fd = (e.pressure(1.7 + h) - e.pressure(1.7 - h)) / (2 * h);
  CHECK(e.sound_speed_squared(1.7) == doctest::Approx(fd).epsilon(1e-8));
  CHECK_THROWS_AS(e.sound_speed_squared(0.0), DomainError);
}

TEST_CASE("causality at the centre") {
  auto v = is_causal_at_center(PolytropicEos(1.0, 0.0, 2.0), 0.4);
  CHECK(v.causal);
  CHECK(v.v2_max == doctest::Approx(0.8));
  CHECK(v.evaluation_density == 0.4);
  v = is_causal_at_center(PolytropicEos(1.0, 0.0, 2.0), 0.5);
  CHECK_FALSE(v.causal);
  CHECK(v.v2_max == 1.0);
  v = is_causal_at_center(PolytropicEos(0.1, 0.0, 3.0), 1.0);
  CHECK(v.causal);
  CHECK(v.v2_max == doctest::Approx(0.3));
  CHECK_THROWS_AS(is_causal_at_center(PolytropicEos(1.0, 0.0, 2.0), 0.0), DomainError);
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(PolytropicEos(0.0, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(PolytropicEos(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(PolytropicEos(1.0, 0.0, 0.5), DomainError);
  for (double n : {0.5, 1.0, 1.5, 3.0, 4.5}) {
    const auto e = PolytropicEos::from_index(1.0, 0.0, n);
    CHECK(std::abs(e.gamma() - (n + 1.0) / n) < 1e-12);
    CHECK(e.n() == doctest::Approx(n).epsilon(1e-12));
  }
}

TEST_CASE("pressure increases with density") {
  for (double gamma : {1.1, 4.0 / 3.0, 2.0, 3.0}) {
    const PolytropicEos e(2.0, 0.0, gamma);
    const auto grid = Axis{1e-6, 1e3, 400, Spacing::Log}.values();
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(e.pressure(grid[i]) > e.pressure(grid[i - 1]));
  }
}

TEST_CASE("density_from_pressure inverts pressure") {
  const PolytropicEos e(0.7, 0.2, 1.8);
  for (double rho : Axis{1e-3, 1e3, 200, Spacing::Log}.values()) {
    CHECK(e.density_from_pressure(e.pressure(rho)) == doctest::Approx(rho).epsilon(1e-10));
  }
  CHECK(e.density_from_pressure(e.pressure(0.0)) == 0.0);
}

TEST_CASE("sound speed matches finite differences and ignores k0") {
  const PolytropicEos e(0.3, 0.0, 5.0 / 3.0);
  const PolytropicEos shifted(0.3, 12.5, 5.0 / 3.0);
  for (double rho : Axis{1e-4, 1e4, 60, Spacing::Log}.values()) {
    const double h = rho * 1e-5;
    const double fd = (e.pressure(rho + h) - e.pressure(rho - h)) / (2 * h);
    CHECK(e.sound_speed_squared(rho) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(e.sound_speed_squared(rho) == shifted.sound_speed_squared(rho));
  }
}

TEST_CASE("text form round trips") {
  const PolytropicEos e(123.456, -0.25, 1.7);
  std::istringstream in(format_eos(e));
  CHECK(parse_eos(in) == e);
  std::istringstream by_index("# star\nk = 100\nn = 1\n");
  const auto f = parse_eos(by_index);
  CHECK(f.gamma() == 2.0);
  CHECK(f.k0() == 0.0);
  std::istringstream both("k = 1\ngamma = 2\nn = 1\n");
  CHECK_THROWS_AS(parse_eos(both), DomainError);
  std::istringstream unknown("k = 1\ngamma = 2\ncolour = red\n");
  CHECK_THROWS_AS(parse_eos(unknown), DomainError);
}
