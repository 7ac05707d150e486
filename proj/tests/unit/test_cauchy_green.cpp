#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/cauchy_green.hpp"

using namespace jhol;

namespace {

double dzbar_error(const std::function<Complex(Complex)>& f, int n_r, int n_theta) {
  auto g = testing::scalar(n_r, n_theta, f);
  auto w = wirtinger_derivatives(apply_cauchy_green(g));
  return sup_distance(w.dzbar, g);
}

}  // namespace

TEST_SUITE("cauchy_green") {

TEST_CASE("Wirtinger derivatives of z, zbar and |z|^2") {
  auto w1 = wirtinger_derivatives(testing::scalar(32, 64, [](Complex z) { return z; }));
  CHECK(testing::max_error(w1.dz, [](Complex) { return Complex(1.0); }) < 1e-12);
  CHECK(testing::max_error(w1.dzbar, [](Complex) { return Complex(0.0); }) < 1e-12);
  auto w2 = wirtinger_derivatives(testing::scalar(32, 64, [](Complex z) { return std::conj(z); }));
  CHECK(testing::max_error(w2.dz, [](Complex) { return Complex(0.0); }) < 1e-12);
  CHECK(testing::max_error(w2.dzbar, [](Complex) { return Complex(1.0); }) < 1e-12);
  auto w3 = wirtinger_derivatives(testing::scalar(32, 64, [](Complex z) { return std::norm(z); }));
  CHECK(testing::max_error(w3.dz, [](Complex z) { return std::conj(z); }) < 1e-12);
  CHECK(testing::max_error(w3.dzbar, [](Complex z) { return z; }) < 1e-12);
}

TEST_CASE("Wirtinger error decays under refinement") {
  auto f = [](Complex z) { return std::exp(z) * std::conj(z); };
  auto exact = [](Complex z) { return std::exp(z) * std::conj(z); };
  auto e1 = testing::max_error(wirtinger_derivatives(testing::scalar(32, 64, f)).dz, exact);
  auto e2 = testing::max_error(wirtinger_derivatives(testing::scalar(64, 128, f)).dz, exact);
  CHECK(e2 < 0.3 * e1);
}

TEST_CASE("transform of zero and of one") {
  auto zero = apply_cauchy_green(DiscGrid(16, 32));
  CHECK(sup_norm(zero) == 0.0);
  auto one = testing::scalar(kDefaultNr, kDefaultNtheta, [](Complex) { return Complex(1.0); });
  CHECK(testing::max_error(apply_cauchy_green(one), [](Complex z) { return std::conj(z); }) <= kTolCg);
}

TEST_CASE("transform of one halves under refinement") {
  auto err = [](int n_r) {
    auto one = testing::scalar(n_r, 2 * n_r, [](Complex) { return Complex(1.0); });
    return testing::max_error(apply_cauchy_green(one), [](Complex z) { return std::conj(z); });
  };
  CHECK(err(128) <= 0.5 * err(64) + 1e-12);
}

TEST_CASE("right-inverse property for smooth data") {
  std::vector<std::function<Complex(Complex)>> fs = {
      [](Complex z) { return z; },
      [](Complex z) { return std::conj(z) * z; },
      [](Complex z) { return std::exp(z); },
      [](Complex z) { return std::cos(2.0 * std::conj(z)); },
  };
  for (const auto& f : fs) {
    const double e1 = dzbar_error(f, kDefaultNr, kDefaultNtheta);
    const double e2 = dzbar_error(f, 2 * kDefaultNr, 2 * kDefaultNtheta);
    CHECK(e1 <= kTolCg);
    CHECK(e2 <= 0.5 * e1 + 1e-12);
  }
}

TEST_CASE("holomorphic data keeps the dzbar part of the output clean") {
  auto f = testing::scalar(kDefaultNr, kDefaultNtheta, [](Complex z) { return z * z; });
  auto w = wirtinger_derivatives(f);
  CHECK(sup_norm(w.dzbar) < 1e-12);
}

TEST_CASE("Sobolev norm axioms") {
  SobolevSetting s;
  s.scale_constant = 1.3;
  std::mt19937 gen(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 10; ++trial) {
    const Complex a(nd(gen), nd(gen)), b(nd(gen), nd(gen)), c(nd(gen), nd(gen));
    auto f = testing::scalar(16, 32, [&](Complex z) { return a + b * z + c * std::conj(z) * z; });
    auto g = testing::scalar(16, 32, [&](Complex z) { return b * std::exp(z) - a * std::conj(z); });
    const double nf = sobolev_norm(f, s), ng = sobolev_norm(g, s);
    CHECK(sobolev_norm(f + g, s) <= nf + ng + 1e-10);
    CHECK(sobolev_norm(c * f, s) == doctest::Approx(std::abs(c) * nf).epsilon(1e-10));
  }
  CHECK(sobolev_norm(DiscGrid(16, 32), s) == 0.0);
}

TEST_CASE("L^p norm of a constant is |c| pi^{1/p}") {
  auto f = testing::scalar(16, 32, [](Complex) { return Complex(3.0, 4.0); });
  CHECK(lp_norm(f, 4.0) == doctest::Approx(5.0 * std::pow(kPi, 0.25)));
}

TEST_CASE("calibrated scale gives the sup bound on the corpus") {
  auto s = make_sobolev_setting(4.0, 32, 64, 8);
  CHECK(s.scale_constant > 0.0);
  for (const auto& f : calibration_corpus(32, 64)) CHECK(sup_norm(f) <= sobolev_norm(f, s));
  auto c = testing::scalar(32, 64, [](Complex) { return Complex(2.0); });
  CHECK(sobolev_norm(c, s) >= 2.0);
  auto id = testing::scalar(32, 64, [](Complex z) { return z; });
  CHECK(sobolev_norm(id, s) >= sup_norm(id));
}

TEST_CASE("C_p estimate is monotone in the trial count and bounded below by the constant trial") {
  auto s = make_sobolev_setting(4.0, 32, 64, 8);
  const double c8 = estimate_cp(s, 8);
  const double c16 = estimate_cp(s, 16);
  CHECK(c16 >= c8);
  CHECK(std::isfinite(c16));
  auto one = testing::scalar(32, 64, [](Complex) { return Complex(1.0); });
  const double lower = sobolev_norm(apply_cauchy_green(one), s) / (s.scale_constant * lp_norm(one, s.p));
  CHECK(c8 >= lower - 1e-12);
}

TEST_CASE("trial functions do not depend on the trial count") {
  auto a = cp_trial_function(3, 16, 32);
  auto b = cp_trial_function(3, 16, 32);
  CHECK(a.data() == b.data());
}

}
