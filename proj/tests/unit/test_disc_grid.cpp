#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/disc_grid.hpp"

using namespace jhol;

TEST_SUITE("disc_grid") {

TEST_CASE("node geometry") {
  DiscGrid g(8, 16, 2);
  CHECK(g.nodes() == 128);
  CHECK(g.data().size() == 256);
  CHECK(g.r(0) == doctest::Approx(1.0 / 16));
  CHECK(g.r(7) == doctest::Approx(15.0 / 16));
  double area = 0.0;
  for (int j = 0; j < g.n_r(); ++j) area += g.cell_area(j) * g.n_theta();
  CHECK(area == doctest::Approx(kPi));
  for (int j = 0; j < g.n_r(); ++j)
    for (int k = 0; k < g.n_theta(); ++k) CHECK(std::abs(g.z(j, k)) < 1.0);
}

TEST_CASE("resolution checks") {
  CHECK_THROWS_AS(DiscGrid(4, 16), InputError);
  CHECK_THROWS_AS(DiscGrid(8, 24), InputError);
  CHECK_THROWS_AS(DiscGrid(8, 8), InputError);
  CHECK_NOTHROW(DiscGrid(8, 16));
}

TEST_CASE("component-major storage") {
  DiscGrid g(8, 16, 2);
  g(1, 2, 3) = {4.0, 5.0};
  CHECK(g.data()[(1 * 8 + 2) * 16 + 3] == Complex(4.0, 5.0));
  CHECK(g.component(1)[2 * 16 + 3] == Complex(4.0, 5.0));
  auto v = g.value(2, 3);
  CHECK(v[0] == Complex(0.0));
  CHECK(v[1] == Complex(4.0, 5.0));
}

TEST_CASE("arithmetic and norms") {
  auto a = testing::scalar(8, 16, [](Complex z) { return z; });
  auto b = testing::scalar(8, 16, [](Complex z) { return 2.0 * z; });
  auto c = b - a;
  CHECK(sup_distance(c, a) == 0.0);
  CHECK(sup_norm(a) == doctest::Approx(15.0 / 16));
  CHECK(sup_distance(Complex(2.0) * a, b) == 0.0);
  CHECK_THROWS_AS(a + DiscGrid(8, 32), InputError);
}

TEST_CASE("bilinear interpolation reproduces affine maps") {
  auto u = testing::scalar(16, 32, [](Complex z) { return Complex(0.3, 0.1) + 2.0 * z; });
  for (Complex z : {Complex(0.0), Complex(0.5, 0.0), Complex(-0.2, 0.4)}) {
    CHECK(std::abs(interp_bilinear(u, 0, z) - (Complex(0.3, 0.1) + 2.0 * z)) < 2e-2);
  }
  // The value at the centre is exact by symmetry of the reflected rings.
  CHECK(std::abs(interp_bilinear(u, 0, 0.0) - Complex(0.3, 0.1)) < 1e-12);
}

TEST_CASE("interpolation orders converge") {
  auto f = [](Complex z) { return std::exp(z) + 0.5 * std::conj(z) * z; };
  auto u = testing::scalar(32, 64, f);
  const Complex z(0.37, -0.21);
  const double e_lin = std::abs(interp_bilinear(u, 0, z) - f(z));
  const double e_cub = std::abs(interp_cubic(u, 0, z) - f(z));
  const double e_lag = std::abs(interp_lagrange(u, 0, z, 12) - f(z));
  CHECK(e_cub < e_lin);
  CHECK(e_lag < 1e-9);
  CHECK(e_cub < 1e-5);
  CHECK_THROWS_AS(interp_lagrange(u, 0, z, 3), InputError);
}

TEST_CASE("interpolation near the centre and rim") {
  auto f = [](Complex z) { return z * z - Complex(0.0, 1.0) * z; };
  auto u = testing::scalar(32, 64, f);
  for (Complex z : {Complex(0.001, 0.002), Complex(0.0, -0.01), Complex(0.99, 0.0)}) {
    CHECK(std::abs(interp_cubic(u, 0, z) - f(z)) < 1e-4);
    CHECK(std::abs(interp_lagrange(u, 0, z, 8) - f(z)) < 1e-6);
  }
  CHECK(resolvable_radius(u) == doctest::Approx(1.0 - 0.5 / 32));
}

TEST_CASE("theta upsampling is band-limited refinement") {
  auto f = [](Complex z) { return z * z * z + std::conj(z); };
  auto u = testing::scalar(8, 16, f);
  auto v = upsample_theta(u, 4);
  CHECK(v.n_theta() == 64);
  CHECK(testing::max_error(v, f) < 1e-13);
  CHECK_THROWS_AS(upsample_theta(u, 3), InputError);
}

}
