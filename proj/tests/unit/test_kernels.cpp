#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/kernels.hpp"
#include "jhol/reference.hpp"

using namespace jhol;

namespace {

DiscGrid probe(int n_r, int n_theta) {
  return DiscGrid::sample(n_r, n_theta, 2, [](Complex z) {
    return CVec{std::exp(z) * std::conj(z), std::sin(3.0 * z) + std::norm(z)};
  });
}

bool bitwise_equal(const DiscGrid& a, const DiscGrid& b) {
  return a.same_shape(b) && a.data() == b.data();
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("parallel kernels match their serial twins bitwise") {
  auto u = probe(16, 32);
  auto ws = wirtinger_kernel(u, Exec::serial);
  auto wp = wirtinger_kernel(u, Exec::parallel);
  CHECK(bitwise_equal(ws.dz, wp.dz));
  CHECK(bitwise_equal(ws.dzbar, wp.dzbar));
  CHECK(bitwise_equal(cauchy_green_modal(u, Exec::serial), cauchy_green_modal(u, Exec::parallel)));
  CHECK(bitwise_equal(cauchy_green_direct(u, Exec::serial), cauchy_green_direct(u, Exec::parallel)));
  CHECK(cell_flux_kernel(u, Exec::serial) == cell_flux_kernel(u, Exec::parallel));
}

TEST_CASE("production kernels agree with the reference implementations") {
  auto u = probe(16, 32);
  auto w = wirtinger_kernel(u, Exec::parallel);
  auto wr = reference::wirtinger(u);
  CHECK(sup_distance(w.dz, wr.dz) < 1e-11);
  CHECK(sup_distance(w.dzbar, wr.dzbar) < 1e-11);
  CHECK(sup_distance(cauchy_green_modal(u, Exec::parallel), reference::cauchy_green(u)) < 1e-11);
}

TEST_CASE("modal and direct Cauchy-Green agree to discretization error") {
  auto one = testing::scalar(32, 64, [](Complex) { return Complex(1.0); });
  auto m = cauchy_green_modal(one, Exec::parallel);
  auto d = cauchy_green_direct(one, Exec::parallel);
  auto zbar = [](Complex z) { return std::conj(z); };
  CHECK(testing::max_error(m, zbar) < 1e-2);
  CHECK(testing::max_error(d, zbar) < 2e-2);
  CHECK(sup_distance(m, d) < 2e-2);
}

TEST_CASE("cell kernel integral matches a fine midpoint sum") {
  const Complex z(0.3, 0.2);
  const double r0 = 0.5, r1 = 0.6, t0 = 1.0, t1 = 1.3;
  Complex sum = 0.0;
  const int m = 400;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double r = r0 + (a + 0.5) * (r1 - r0) / m;
      const double t = t0 + (b + 0.5) * (t1 - t0) / m;
      sum += r * (r1 - r0) / m * (t1 - t0) / m / (std::polar(r, t) - z);
    }
  CHECK(std::abs(cell_kernel_integral(z, r0, r1, t0, t1) - sum) < 1e-6);
}

TEST_CASE("cell kernel integral is finite for a target inside the cell") {
  const Complex z = std::polar(0.55, 1.15);
  auto v = cell_kernel_integral(z, 0.5, 0.6, 1.0, 1.3);
  CHECK(std::isfinite(v.real()));
  CHECK(std::isfinite(v.imag()));
}

TEST_CASE("cell flux of |zeta|^2 is 4 times the cell area") {
  auto rho = testing::scalar(16, 32, [](Complex z) { return std::norm(z); });
  auto m = cell_flux_kernel(rho, Exec::parallel);
  for (int j = 0; j < 16; ++j)
    CHECK(m[static_cast<std::size_t>(j * 32)] == doctest::Approx(4.0 * rho.cell_area(j)).epsilon(1e-9));
}

TEST_CASE("cell flux of harmonic functions") {
  auto lin = testing::scalar(16, 32, [](Complex z) { return Complex(z.real() - 2.0 * z.imag()); });
  const auto ml = cell_flux_kernel(lin, Exec::serial);
  for (int j = 0; j < 16; ++j) {
    double ring = 0.0;
    for (int k = 0; k < 32; ++k) ring += ml[static_cast<std::size_t>(j * 32 + k)];
    CHECK(std::abs(ring) < 1e-12);
  }
  auto worst = [](int n_r) {
    auto rho = testing::scalar(n_r, 2 * n_r, [](Complex z) { return z * z * z; });
    const auto m = cell_flux_kernel(rho, Exec::serial);
    double w = 0.0;
    for (int j = 0; j < n_r; ++j)
      for (int k = 0; k < 2 * n_r; ++k)
        w = std::max(w, std::abs(m[static_cast<std::size_t>(j * 2 * n_r + k)]) / rho.cell_area(j));
    return w;
  };
  CHECK(worst(32) < 0.3 * worst(16));
}

}
