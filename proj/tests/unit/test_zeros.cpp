#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/zeros.hpp"

using namespace jhol;

namespace {

Complex blaschke(Complex z, const std::vector<Complex>& zs) {
  Complex v = 1.0;
  for (Complex a : zs) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

}  // namespace

TEST_SUITE("zeros") {

TEST_CASE("identity has a single simple zero at 0") {
  auto u = testing::scalar(32, 64, [](Complex z) { return z; });
  auto zs = extract_zeros(u, {Complex(0.0)});
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0].zeta) < 1e-9);
  CHECK(zs[0].multiplicity == 1);
  CHECK(zs[0].certified);
}

TEST_CASE("two-factor Blaschke product") {
  auto u = testing::scalar(32, 64, [](Complex z) { return z * (z - 0.5) / (1.0 - z / 2.0); });
  auto zs = extract_zeros(u, {Complex(0.0)});
  REQUIRE(zs.size() == 2);
  CHECK(std::abs(zs[0].zeta) < 1e-6);
  CHECK(std::abs(zs[1].zeta - 0.5) < 1e-6);
  CHECK(blaschke_sum(zs) == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("double zero of z^2") {
  auto u = testing::scalar(32, 64, [](Complex z) { return z * z; });
  auto zs = extract_zeros(u, {Complex(0.0)});
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].multiplicity == 2);
}

TEST_CASE("preimages of a nonzero value") {
  const Complex p(0.1, 0.05);
  auto u = testing::scalar(32, 64, [](Complex z) { return z * z; });
  auto zs = extract_zeros(u, {p});
  REQUIRE(zs.size() == 2);
  for (const auto& z : zs) CHECK(std::abs(z.zeta * z.zeta - p) < 1e-6);
}

TEST_CASE("zeros near the rim are recovered") {
  const std::vector<Complex> roots = {0.0, 0.5, 8.0 / 9.0, 15.0 / 16.0};
  auto u = testing::scalar(64, 128, [&](Complex z) { return blaschke(z, roots); });
  auto zs = extract_zeros(u, {Complex(0.0)});
  REQUIRE(zs.size() == roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(zs[i].zeta - roots[i]) < 1e-4);
}

TEST_CASE("map without preimages") {
  auto u = testing::scalar(16, 32, [](Complex z) { return 2.0 + z; });
  CHECK(extract_zeros(u, {Complex(0.0)}).empty());
}

TEST_CASE("higher dimension uses flagged proximity clustering") {
  auto u = DiscGrid::sample(32, 64, 2, [](Complex z) { return CVec{z - 0.3, 0.5 * (z - 0.3)}; });
  auto zs = extract_zeros(u, {Complex(0.0), Complex(0.0)});
  REQUIRE(zs.size() == 1);
  CHECK_FALSE(zs[0].certified);
  CHECK(std::abs(zs[0].zeta - 0.3) < 1e-3);
}

TEST_CASE("Blaschke sum arithmetic") {
  CHECK(blaschke_sum({}) == 0.0);
  CHECK(blaschke_sum({{Complex(0.0), 1, true}, {Complex(0.5), 1, true}}) == doctest::Approx(1.5));
  CHECK(blaschke_sum({{Complex(0.0, 0.5), 3, true}}) == doctest::Approx(1.5));
  std::vector<Zero> zs;
  double expected = 0.0;
  for (int k = 1; k <= 100; ++k) {
    zs.push_back({Complex(1.0 - 1.0 / (k * k)), 1, true});
    expected += 1.0 / (k * k);
  }
  CHECK(blaschke_sum(zs) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(blaschke_sum(zs) == doctest::Approx(1.63498).epsilon(1e-5));
  CHECK_THROWS_AS(blaschke_sum({{Complex(1.0), 1, true}}), InputError);
}

}
