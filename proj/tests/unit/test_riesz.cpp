#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/riesz.hpp"

using namespace jhol;

TEST_SUITE("riesz") {

TEST_CASE("|zeta|^2: cell masses are 4 times the area and the formula holds") {
  auto rho = testing::scalar(32, 64, [](Complex z) { return std::norm(z); });
  auto rep = riesz_diagnostics(rho, {});
  for (int j = 0; j < 32; ++j)
    CHECK(rep.cell_masses[static_cast<std::size_t>(j * 64 + 5)] ==
          doctest::Approx(4.0 * rho.cell_area(j)).epsilon(1e-8));
  CHECK(rep.boundary_mean == doctest::Approx(1.0));
  CHECK(rep.log_term == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.representation_residual <= 1e-3);
  CHECK(rep.subharmonic);
  CHECK(rep.point_masses.empty());
  CHECK(rep.blaschke_sum == 0.0);
}

TEST_CASE("harmonic Re zeta has no mass") {
  auto rho = testing::scalar(32, 64, [](Complex z) { return Complex(z.real()); });
  auto rep = riesz_diagnostics(rho, {});
  for (int j = 0; j < 32; ++j) {
    double ring = 0.0;
    for (int k = 0; k < 64; ++k) ring += rep.cell_masses[static_cast<std::size_t>(j * 64 + k)];
    CHECK(std::abs(ring) < 1e-12);
  }
  CHECK(rep.representation_residual < 1e-10);
  CHECK(std::abs(rep.weighted_integral) < 1e-10);
}

TEST_CASE("log|zeta| has a point mass of 2 pi at the origin") {
  auto rho = testing::scalar(64, 128, [](Complex z) { return Complex(std::log(std::abs(z))); });
  auto rep = riesz_diagnostics(rho, {Complex(0.0)});
  REQUIRE(rep.point_masses.size() == 1);
  const auto& pm = rep.point_masses[0];
  CHECK(pm.mass == doctest::Approx(kTwoPi).epsilon(0.01));
  CHECK(pm.certified_ge_2pi);
  CHECK(pm.multiplicity == 1);
  CHECK(pm.ladder.size() == RieszOptions{}.ladder.size());
  CHECK(rep.weighted_integral == doctest::Approx(kTwoPi).epsilon(0.02));
  CHECK(rep.blaschke_sum == doctest::Approx(1.0));
}

TEST_CASE("off-centre pole of log|zeta - zeta0|") {
  const Complex z0(0.3, -0.2);
  auto rho = testing::scalar(64, 128, [z0](Complex z) { return Complex(std::log(std::abs(z - z0))); });
  auto rep = riesz_diagnostics(rho, {z0});
  REQUIRE(rep.point_masses.size() == 1);
  CHECK(rep.point_masses[0].mass == doctest::Approx(kTwoPi).epsilon(0.01));
  CHECK(rep.blaschke_sum == doctest::Approx(1.0 - std::abs(z0)));
}

TEST_CASE("regularized logarithm satisfies the representation formula") {
  auto rho = testing::scalar(64, 128, [](Complex z) { return Complex(0.5 * std::log(std::norm(z) + 0.01)); });
  auto rep = riesz_diagnostics(rho, {});
  CHECK(rep.representation_residual <= 1e-3);
  CHECK(rep.subharmonic);
}

TEST_CASE("superharmonic input is flagged") {
  auto rho = testing::scalar(32, 64, [](Complex z) { return -std::norm(z); });
  auto rep = riesz_diagnostics(rho, {});
  CHECK_FALSE(rep.subharmonic);
  CHECK(rep.min_cell_mass < 0.0);
}

TEST_CASE("input validation") {
  auto rho = testing::scalar(16, 32, [](Complex z) { return std::norm(z); });
  rho(0, 3, 3) = -std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(riesz_diagnostics(rho, {}), InputError);
  auto nan = testing::scalar(16, 32, [](Complex) { return std::nan(""); });
  CHECK_THROWS_AS(riesz_diagnostics(nan, {}), InputError);
  auto ok = testing::scalar(16, 32, [](Complex z) { return std::norm(z); });
  CHECK_THROWS_AS(riesz_diagnostics(ok, {Complex(1.2)}), InputError);
  CHECK_THROWS_AS(riesz_diagnostics(DiscGrid(16, 32, 2), {}), InputError);
}

TEST_CASE("composition samples lambda along the map") {
  auto u = testing::scalar(32, 64, [](Complex z) { return 0.5 * z; });
  auto f = compose(squared_norm_function(1.0), u);
  CHECK(testing::max_error(f.grid, [](Complex z) { return Complex(0.25 * std::norm(z)); }) < 1e-15);
  CHECK(f.sampler(Complex(0.4, 0.1)) == doctest::Approx(0.25 * std::norm(Complex(0.4, 0.1))).epsilon(1e-6));
}

}
