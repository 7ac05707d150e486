#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "jhol/boundary.hpp"
#include "jhol/disc_solver.hpp"
#include "jhol/psh.hpp"
#include "jhol/riesz.hpp"
#include "jhol/zeros.hpp"

namespace jhol {

struct SobolevConfig {
  double p = kDefaultP;
  int n_r = kDefaultNr;
  int n_theta = kDefaultNtheta;
  int cp_trials = 16;
};

struct ConeConfig {
  double alpha = 0.5;
  double r_min = 0.0;
  double nu = 0.0;
  double cauchy_tol = kCauchyTol;
  int window = kCauchyWindow;
};

struct PshConfig {
  double tol = 1e-6;
  double corpus_residual = 1e-3;
  double a_hi = 65536.0;
  double bisect_rel_tol = 1e-3;
  int max_radius_steps = 4;
  int samples = 128;
};

struct RieszConfig {
  double tol_mass = kTolMass;
  int flux_samples = 256;
  double absorb_radius = 0.0;
};

struct ZerosConfig {
  double location_tol = 1e-10;
  int interp_points = 12;
};

/// Parameters of one CLI run. Text form is flat "key = value" lines under
/// [section] headers; '#' starts a comment line.
struct RunConfig {
  long seed = 0;
  std::string output_dir = "out";
  SobolevConfig sobolev;
  SolveConfig solve;
  ConeConfig cone;
  PshConfig psh;
  RieszConfig riesz;
  ZerosConfig zeros;

  /// Throws InputError on non-positive tolerances or invalid sizes.
  void validate() const;
};

/// Starts from `base` and overrides the keys present. Unknown sections or
/// keys are InputError with a line number.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>", RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
/// Every key, reals at 17 significant digits, so parsing the text gives back
/// an identical config.
std::string serialize_config(const RunConfig& cfg);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace jhol
