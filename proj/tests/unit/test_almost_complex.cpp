#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/almost_complex.hpp"

using namespace jhol;
using testing::lambda_j;
using testing::mat2;

TEST_SUITE("almost_complex") {

TEST_CASE("standard structure validates with zero deviation") {
  for (int n : {1, 2, 3}) {
    auto rep = validate_structure(Structure::standard(n), 64);
    CHECK(rep.passed);
    CHECK(rep.max_deviation == 0.0);
    CHECK(rep.samples == 64);
  }
}

TEST_CASE("rotation by pi/2 + 0.1 is not a complex structure") {
  const double a = kPi / 2 + 0.1;
  RealMat rot = mat2(std::cos(a), -std::sin(a), std::sin(a), std::cos(a));
  Structure j(1, [rot](const RealVec&) { return rot; }, 1.0);
  auto rep = validate_structure(j, 16);
  CHECK_FALSE(rep.passed);
  RealMat dev = rot * rot + RealMat::Identity(2, 2);
  CHECK(rep.max_deviation == doctest::Approx(operator_norm(dev)).epsilon(1e-12));
}

TEST_CASE("point-dependent lambda structure validates") {
  Structure j(1, [](const RealVec& x) { return lambda_j(1.0 + x.squaredNorm()); }, 1.0);
  auto rep = validate_structure(j, 256);
  CHECK(rep.passed);
  CHECK(rep.max_deviation < 1e-14);
}

TEST_CASE("evaluation failure is reported with the point") {
  Structure j(1, [](const RealVec& x) -> RealMat {
    if (x.norm() > 0.5) throw DomainError("boom");
    return standard_j(1);
  }, 1.0);
  CHECK_THROWS_AS(validate_structure(j, 64), StructureError);
}

TEST_CASE("evaluator is deterministic") {
  auto j = Structure::radial_lambda(2, 1.0, 0.3);
  RealVec x(4);
  x << 0.1, -0.2, 0.3, 0.05;
  CHECK((j(x) - j(x)).norm() == 0.0);
}

TEST_CASE("q of the standard structure vanishes") {
  auto j = Structure::standard(2);
  for (const auto& x : ball_samples(4, 1.0, 32)) CHECK(q_from_j(j, x).norm() == 0.0);
}

TEST_CASE("q for lambda = 2 matches 2x2 arithmetic and anti-commutes") {
  RealMat jm = lambda_j(2.0);
  RealMat jst = standard_j(1);
  RealMat sum = jm + jst;
  const double det = sum(0, 0) * sum(1, 1) - sum(0, 1) * sum(1, 0);
  RealMat inv = mat2(sum(1, 1), -sum(0, 1), -sum(1, 0), sum(0, 0)) / det;
  RealMat expected = inv * (jm - jst);
  RealMat q = q_from_j(jm);
  CHECK((q - expected).norm() < 1e-14);
  CHECK((q * jst + jst * q).norm() < kStructTol);
  // Closed form: Q = diag(-1/3, 1/3).
  CHECK(q(0, 0) == doctest::Approx(-1.0 / 3.0));
  CHECK(q(1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(q(0, 1)) < 1e-15);
}

TEST_CASE("q is bounded by d / (2 - d) on random structures") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    RealMat jm = testing::random_structure(gen, n, 0.15);
    const double d = operator_norm(jm - standard_j(n));
    if (d >= 2.0) continue;
    RealMat q = q_from_j(jm);
    CHECK(operator_norm(q) <= d / (2.0 - d) + 1e-12);
    CHECK((q * standard_j(n) + standard_j(n) * q).norm() < kStructTol);
    CHECK((j_from_q(q) - jm).norm() < 1e-10);
  }
}

TEST_CASE("q is Lipschitz in J away from the singular set") {
  std::mt19937 gen(11);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RealMat j1 = testing::random_structure(gen, 2, 0.1);
    RealMat j2 = testing::random_structure(gen, 2, 0.1);
    const double dj = operator_norm(j1 - j2);
    if (dj == 0.0) continue;
    worst = std::max(worst, operator_norm(q_from_j(j1) - q_from_j(j2)) / dj);
  }
  CHECK(worst < 10.0);
}

TEST_CASE("q too far from standard raises") {
  RealMat jm = -standard_j(1);
  CHECK_THROWS_AS(q_from_j(jm), StructureError);
}

TEST_CASE("q_sup_norm on constant and lambda structures") {
  CHECK(q_sup_norm(Structure::standard(2), 64) == 0.0);
  RealMat q = mat2(0.2, 0.1, 0.1, -0.2);
  auto j = Structure::constant_q(q);
  CHECK(q_sup_norm(j, 64) == doctest::Approx(operator_norm(q)).epsilon(1e-12));
  Structure l2(1, [](const RealVec&) { return lambda_j(2.0); }, 1.0);
  CHECK(q_sup_norm(l2, 16) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("q_sup_norm is monotone in nested sample counts") {
  auto j = Structure::radial_lambda(1, 1.0, 0.4);
  double prev = 0.0;
  for (int m : {8, 16, 32, 64, 128}) {
    const double q = q_sup_norm(j, m);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("constant_q rejects non-antilinear and large matrices") {
  CHECK_THROWS_AS(Structure::constant_q(mat2(0.1, 0.0, 0.0, 0.1)), StructureError);
  CHECK_THROWS_AS(Structure::constant_q(mat2(1.0, 0.0, 0.0, -1.0)), StructureError);
}

TEST_CASE("normalize_at_origin with identity frame for standard J(0)") {
  auto j = Structure::radial_lambda(1, 1.0, 0.5);
  auto nrm = normalize_at_origin(j);
  CHECK((nrm.frame - RealMat::Identity(2, 2)).norm() < 1e-14);
  RealVec x(2);
  x << 0.3, -0.1;
  CHECK((nrm.structure(x) - j(x)).norm() < 1e-14);
}

TEST_CASE("normalize_at_origin for J(0) = lambda 2") {
  Structure j(1, [](const RealVec&) { return lambda_j(2.0); }, 1.0);
  auto nrm = normalize_at_origin(j);
  RealVec z = RealVec::Zero(2);
  CHECK((nrm.structure(z) - standard_j(1)).norm() < 1e-12);
  RealMat l = nrm.frame;
  CHECK((nrm.frame_inverse * j(z) * l - standard_j(1)).norm() < 1e-12);
  // diag(sqrt 2, 1/sqrt 2) conjugates J(0) to J_st as well.
  RealMat d = mat2(std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));
  CHECK((d.inverse() * j(z) * d - standard_j(1)).norm() < 1e-14);
}

TEST_CASE("normalize_at_origin on random constant structures") {
  std::mt19937 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    RealMat jm = testing::random_structure(gen, n, 0.3);
    Structure j(n, [jm](const RealVec&) { return jm; }, 1.0);
    auto nrm = normalize_at_origin(j);
    CHECK((nrm.structure(RealVec::Zero(2 * n)) - standard_j(n)).norm() < 1e-12);
    CHECK((nrm.frame * nrm.frame_inverse - RealMat::Identity(2 * n, 2 * n)).norm() < 1e-12);
  }
}

TEST_CASE("normalize_at_origin rejects an invalid J(0)") {
  Structure j(1, [](const RealVec&) { return mat2(1.0, 0.0, 0.0, 1.0); }, 1.0);
  CHECK_THROWS_AS(normalize_at_origin(j), StructureError);
}

TEST_CASE("rescale_structure identities") {
  auto j = Structure::radial_lambda(1, 1.0, 0.5);
  auto same = rescale_structure(j, 1.0);
  auto st = rescale_structure(Structure::standard(1), 0.3);
  for (const auto& x : ball_samples(2, 1.0, 32)) {
    CHECK((same(x) - j(x)).norm() == 0.0);
    CHECK((st(x) - standard_j(1)).norm() == 0.0);
  }
  CHECK_THROWS_AS(rescale_structure(j, 0.0), DomainError);
  CHECK_THROWS_AS(rescale_structure(j, 1.5), DomainError);
}

TEST_CASE("rescale composition agrees with the product factor") {
  auto j = Structure::radial_lambda(2, 1.0, 0.7);
  auto twice = rescale_structure(rescale_structure(j, 0.5), 0.4);
  auto once = rescale_structure(j, 0.2);
  for (const auto& x : ball_samples(4, 1.0, 64)) CHECK((twice(x) - once(x)).norm() < 1e-14);
}

TEST_CASE("rescaling a Lipschitz structure shrinks q linearly") {
  auto j = Structure::radial_lambda(1, 1.0, 0.5);
  const double q1 = q_sup_norm(rescale_structure(j, 0.2), 256, 1.0);
  const double q2 = q_sup_norm(rescale_structure(j, 0.1), 256, 1.0);
  CHECK(q1 <= 0.2 * 0.5 * 1.1);
  CHECK(q2 / q1 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("translate_structure shifts the base point") {
  auto j = Structure::radial_lambda(1, 1.0, 0.5);
  RealVec a(2);
  a << 0.3, 0.1;
  auto t = translate_structure(j, a);
  CHECK(t.domain_radius() == doctest::Approx(1.0 - a.norm()));
  CHECK((t(RealVec::Zero(2)) - j(a)).norm() == 0.0);
}

TEST_CASE("domain checks") {
  auto j = Structure::standard(1);
  RealVec x(2);
  x << 1.5, 0.0;
  CHECK_THROWS_AS(j(x), DomainError);
  CHECK_THROWS_AS(Structure::radial_lambda(1, 0.1, -1.0), StructureError);
  CHECK_THROWS_AS(Structure::standard(0), InputError);
}

TEST_CASE("ball samples are nested and inside the ball") {
  auto small = ball_samples(4, 0.7, 20);
  auto big = ball_samples(4, 0.7, 50);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK((small[i] - big[i]).norm() == 0.0);
  for (const auto& x : big) CHECK(x.norm() <= 0.7 + 1e-15);
}

TEST_CASE("projection onto complex structures") {
  RealMat m = 1.05 * standard_j(2);
  m(0, 2) += 0.01;
  RealMat p = project_to_complex_structure(m);
  CHECK((p * p + RealMat::Identity(4, 4)).norm() < 1e-12);
  CHECK(operator_norm(p - standard_j(2)) < 0.1);
}

}
