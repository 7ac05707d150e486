#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "jhol/almost_complex.hpp"
#include "jhol/disc_grid.hpp"

namespace testing {

inline const std::filesystem::path kDataDir = JHOL_DATA_DIR;

inline jhol::RealMat mat2(double a, double b, double c, double d) {
  jhol::RealMat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline jhol::RealMat lambda_j(double l) { return mat2(0.0, -l, 1.0 / l, 0.0); }

/// Random complex structure near J_st: conjugate J_st by I + eps * noise.
inline jhol::RealMat random_structure(std::mt19937& gen, int n, double eps) {
  std::normal_distribution<double> nd(0.0, 1.0);
  const int d = 2 * n;
  jhol::RealMat p = jhol::RealMat::Identity(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) p(r, c) += eps * nd(gen);
  return p * jhol::standard_j(n) * p.inverse();
}

inline jhol::DiscGrid scalar(int n_r, int n_theta, const std::function<jhol::Complex(jhol::Complex)>& f) {
  return jhol::DiscGrid::sample_scalar(n_r, n_theta, f);
}

inline double max_error(const jhol::DiscGrid& u, const std::function<jhol::Complex(jhol::Complex)>& f,
                        int c = 0) {
  double e = 0.0;
  for (int j = 0; j < u.n_r(); ++j)
    for (int k = 0; k < u.n_theta(); ++k) e = std::max(e, std::abs(u(c, j, k) - f(u.z(j, k))));
  return e;
}

/// Fresh scratch directory under the test working directory.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::current_path() / "scratch" / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testing
