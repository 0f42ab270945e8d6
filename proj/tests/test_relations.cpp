#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "polybound/error.hpp"
#include "polybound/relations.hpp"
#include "polybound/scan.hpp"

using namespace polybound;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

RationalRelation quadratic_over_linear() {
  // R = (M^2 + 1) / M
  return {PowerSeries({{1.0, 2.0}, {1.0, 0.0}}), PowerSeries({{1.0, 1.0}})};
}

RationalRelation identity() { return {PowerSeries({{1.0, 1.0}}), PowerSeries({{1.0, 0.0}})}; }

}  // namespace

TEST_CASE("Newtonian A coefficient") {
  CHECK(newtonian_A(1.0, 3.0, 1.0, 1.0) == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-14));
  CHECK(newtonian_A(1.0, 3.0, 7.0, 1.0) == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-14));
  CHECK(newtonian_A(4 * M_PI, 1.0, 1.0, 1.0) == doctest::Approx(0.3535533905932737622).epsilon(1e-14));
  CHECK(newtonian_A(16.0, 2.0, 3.0, 0.7) ==
        doctest::Approx(std::pow(4.0, -1.5) * newtonian_A(4.0, 2.0, 3.0, 0.7)).epsilon(1e-14));
  CHECK_THROWS_AS(newtonian_A(0.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(newtonian_A(1.0, -1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("Newtonian A follows exact power laws") {
  for (double n : {0.5, 1.0, 1.5, 2.0, 4.0}) {
    for (double lambda : {0.1, 3.0, 250.0}) {
      const double base = newtonian_A(2.0, n, 0.3, 1.2);
      CHECK(newtonian_A(2.0 * lambda, n, 0.3, 1.2) ==
            doctest::Approx(std::pow(lambda, -1.5) * base).epsilon(1e-13));
      CHECK(newtonian_A(2.0, n, 0.3 * lambda, 1.2) ==
            doctest::Approx(std::pow(lambda, (n - 3) / (2 * n)) * base).epsilon(1e-13));
    }
  }
}

TEST_CASE("Newtonian A normalization residual vanishes only at unit length scale") {
  // (n+1) k / (4 pi) = rho_c^{(n-1)/n}
  CHECK(newtonian_A_normalization_residual(4 * M_PI / 2, 1.0, 5.0) == doctest::Approx(0.0));
  CHECK(newtonian_A_normalization_residual(1.0, 1.0, 1.0) != doctest::Approx(0.0));
}

TEST_CASE("solve monomial for a") {
  CHECK(solve_monomial_for_a(1.0, 1.0, 0.3) == 1.0);
  CHECK(solve_monomial_for_a(4.0, 2.0, 2.0) == 1.0);
  CHECK(solve_monomial_for_a(0.85 * std::pow(3.0, 0.67), 3.0, 0.67) == doctest::Approx(0.85).epsilon(1e-15));
  CHECK_THROWS_AS(solve_monomial_for_a(1.0, 0.0, 1.0), DomainError);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> la(std::log(0.1), std::log(10.0)), lb(-3.0, 3.0), lr(std::log(0.1), std::log(10.0));
  for (int i = 0; i < 500; ++i) {
    const double a = std::exp(la(rng)), b = lb(rng), r = std::exp(lr(rng));
    CHECK(solve_monomial_for_a(a * std::pow(r, b), r, b) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("monomial density") {
  CHECK(monomial_density(1.0, 4 * M_PI, 3.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(monomial_density(2.0, 1.0, 1.0) == doctest::Approx(1.0 / (16 * M_PI)).epsilon(1e-15));
  const double h = 1e-6;
  const auto m = [](double r) { return 0.85 * std::pow(r, 0.67); };
  const double fd = (m(1.5 + h) - m(1.5 - h)) / (2 * h) / (4 * M_PI * 1.5 * 1.5);
  CHECK(monomial_density(1.5, 0.85, 0.67) == doctest::Approx(fd).epsilon(1e-8));
  CHECK_THROWS_AS(monomial_density(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("monomial density is the continuity-equation density") {
  for (double a : {0.1, 0.85, 3.0}) {
    for (double b : {-2.0, -0.5, 0.67, 1.78, 3.0}) {
      for (double r : Axis{0.1, 10.0, 25, Spacing::Log}.values()) {
        const double h = 1e-5 * r;
        const double fd = (a * std::pow(r + h, b) - a * std::pow(r - h, b)) / (2 * h) / (4 * M_PI * r * r);
        CHECK(monomial_density(r, a, b) == doctest::Approx(fd).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("monomial sound speed") {
  CHECK(monomial_sound_speed_squared(1.0, 4 * M_PI, 3.0, PolytropicEos(1.0 / 6.0, 0.0, 2.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const Big x = Big("0.85") * Big("0.67") / (4 * boost::math::constants::pi<Big>());
  const double oracle = static_cast<double>(3 * x * x);
  const PolytropicEos eos(1.0, 0.0, 3.0);
  CHECK(monomial_sound_speed_squared(1.0, 0.85, 0.67, eos) == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(oracle == doctest::Approx(6.15e-3).epsilon(2e-3));
  CHECK(monomial_sound_speed_squared(1.3, 0.85, 0.67, eos) == eos.sound_speed_squared(monomial_density(1.3, 0.85, 0.67)));
}

TEST_CASE("rational radius") {
  CHECK(rational_radius(3.0, identity()) == 3.0);
  CHECK(rational_radius(2.0, quadratic_over_linear()) == 2.5);
  const RationalRelation pole{PowerSeries({{1.0, 0.0}}), PowerSeries({{1.0, 1.0}, {-1.0, 0.0}})};
  CHECK(is_singular_point(pole, 1.0));
  CHECK_THROWS_AS(rational_radius(1.0, pole), SingularPointError);
  CHECK_FALSE(is_singular_point(pole, 1.1));
}

TEST_CASE("rational inversion selects the seed branch") {
  CHECK(rational_invert_for_mass(3.0, identity(), 2.0) == doctest::Approx(3.0).epsilon(1e-12));
  // Roots of M^2 - 2.5 M + 1 are 0.5 and 2.
  CHECK(rational_invert_for_mass(2.5, quadratic_over_linear(), 1.8) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rational_invert_for_mass(2.5, quadratic_over_linear(), 0.6) == doctest::Approx(0.5).epsilon(1e-12));
  // R = (M^2 + 1)/M has a fold at M = 1.
  CHECK_THROWS_AS(rational_invert_for_mass(2.0, quadratic_over_linear(), 1.0), FoldPointError);
}

TEST_CASE("rational inversion round trip on random regular points") {
  const auto rel = quadratic_over_linear();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> upper(1.2, 20.0), lower(0.05, 0.85);
  for (int i = 0; i < 300; ++i) {
    for (double m : {upper(rng), lower(rng)}) {
      const double r = rational_radius(m, rel);
      CHECK(rational_invert_for_mass(r, rel, m * (1 + 1e-3)) == doctest::Approx(m).epsilon(1e-9));
    }
  }
  const RationalRelation cubic{PowerSeries({{2.0, 3.0}, {0.5, 1.0}, {1.0, 0.0}}), PowerSeries({{1.0, 2.0}, {3.0, 0.0}})};
  for (double m : Axis{0.1, 10.0, 50, Spacing::Log}.values()) {
    if (std::abs(cubic.radius_derivative(m)) < 1e-3) continue;
    const double r = rational_radius(m, cubic);
    const double back = rational_invert_for_mass(r, cubic, m * (1 + 1e-3));
    CHECK(std::abs(rational_radius(back, cubic) - r) < 1e-10 * std::max(1.0, r));
    CHECK(back == doctest::Approx(m).epsilon(1e-9));
  }
}

TEST_CASE("rational density") {
  CHECK(rational_density(1.0, identity(), 1.0) == doctest::Approx(1.0 / (4 * M_PI)).epsilon(1e-12));
  // M = R^2 written as R = M^{1/2}.
  const RationalRelation root{PowerSeries({{1.0, 0.5}}), PowerSeries({{1.0, 0.0}})};
  CHECK(rational_density(2.0, root, 3.9) == doctest::Approx(1.0 / (4 * M_PI)).epsilon(1e-10));
  // dR/dM = (M^2 - 1)/M^2 = 3/4 at M = 2.
  CHECK(rational_density(2.5, quadratic_over_linear(), 2.0) ==
        doctest::Approx(0.01697652726313550248).epsilon(1e-12));
  CHECK_THROWS_AS(rational_density(2.0, quadratic_over_linear(), 1.0), FoldPointError);
}

TEST_CASE("relation validation") {
  CHECK_THROWS_AS((MonomialRelation{0.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((MonomialRelation{1.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((RationalRelation{PowerSeries({{1.0, 1.0}}), PowerSeries({{0.0, 0.0}})}.validate()), DomainError);
  CHECK_THROWS_AS((RationalRelation{PowerSeries(), PowerSeries({{1.0, 0.0}})}.validate()), DomainError);
}

TEST_CASE("text forms") {
  std::istringstream in(format_monomial({0.85, 0.67}));
  const auto m = parse_monomial(in);
  CHECK(m.a == 0.85);
  CHECK(m.b == 0.67);
  std::istringstream rin(format_rational(quadratic_over_linear()));
  const auto r = parse_rational(rin);
  CHECK(rational_radius(3.0, r) == rational_radius(3.0, quadratic_over_linear()));
  std::istringstream bad("p,1,2\nx,1,1\n");
  CHECK_THROWS_AS(parse_rational(bad), DomainError);
}
