#pragma once

#include <vector>

#include "jhol/disc_grid.hpp"
#include "jhol/kernels.hpp"

namespace jhol {

inline constexpr int kDefaultNr = 64;
inline constexpr int kDefaultNtheta = 128;
inline constexpr double kDefaultP = 4.0;
/// Accuracy target for the transform at default resolution.
inline constexpr double kTolCg = 5e-3;

/// Exponent, norm scaling and the operator-norm estimate of the transform
/// L^p -> W^{1,p} at a fixed grid resolution.
struct SobolevSetting {
  double p = kDefaultP;
  double scale_constant = 1.0;
  double cp_estimate = 1.0;
  int n_r = kDefaultNr;
  int n_theta = kDefaultNtheta;
};

Wirtinger wirtinger_derivatives(const DiscGrid& u, Exec exec = Exec::parallel);

enum class CgMethod { modal, direct };

/// Tf(z) = -(1/pi) int_disc f(zeta)/(zeta - z) dA, a right inverse of d/dzbar.
DiscGrid apply_cauchy_green(const DiscGrid& f, CgMethod method = CgMethod::modal,
                            Exec exec = Exec::parallel);

/// (sum over cells of area * |f|^p)^{1/p}, |.| the Euclidean norm on C^n.
double lp_norm(const DiscGrid& f, double p);
/// Unscaled (|f|_p^p + |f_z|_p^p + |f_zbar|_p^p)^{1/p}.
double raw_sobolev_norm(const DiscGrid& f, double p, Exec exec = Exec::parallel);
double sobolev_norm(const DiscGrid& f, const SobolevSetting& s, Exec exec = Exec::parallel);

/// Functions used to fix the scale constant: constants, tilted constants,
/// boundary-peaked powers and Gaussians near the rim.
std::vector<DiscGrid> calibration_corpus(int n_r, int n_theta);
/// margin * max over the corpus of sup|f| / raw_sobolev_norm(f); cached per
/// (p, resolution).
double calibrate_scale(double p, int n_r, int n_theta, double margin = 1.1);

/// Deterministic trial sequence; trial i does not depend on how many are used.
DiscGrid cp_trial_function(int index, int n_r, int n_theta);
/// max over the first trial_count trials of
///   sobolev_norm(T f) / (scale_constant * lp_norm(f)).
/// Dividing by the scaled L^p norm keeps q * C_p the contraction factor of
/// the scaled W^{1,p} norm.
double estimate_cp(const SobolevSetting& s, int trial_count);

/// Calibrated scale plus C_p estimate; cached per (p, resolution, trials).
SobolevSetting make_sobolev_setting(double p = kDefaultP, int n_r = kDefaultNr,
                                    int n_theta = kDefaultNtheta, int trial_count = 16);

}  // namespace jhol
