#pragma once

#include <functional>
#include <vector>

#include "jhol/disc_grid.hpp"
#include "jhol/psh.hpp"

namespace jhol {

inline constexpr double kTolMass = 1e-6;

struct PointMass {
  Complex center;
  double mass = 0.0;              ///< extrapolated flux at the top of the ladder
  std::vector<double> ladder;     ///< extrapolated flux of rho_n for each n in RieszOptions::ladder
  double log_bound_slope = 0.0;   ///< growth rate of sup(rho - log|zeta - zeta0|) as circles shrink
  bool certified_ge_2pi = false;  ///< rho <= log|zeta - zeta0| + C holds on the circles
  int multiplicity = 0;           ///< round(mass / 2 pi)
};

struct RieszOptions {
  double tol_mass = kTolMass;
  int flux_samples = 256;
  std::vector<int> ladder = {1, 2, 4, 8, 16, 32, 64};
  double absorb_radius = 0.0;  ///< cells this close to a pole are carried by its point mass; 0 means 4h
  double max_flux_radius = 0.25;
  /// Point evaluation of rho for the flux circles; defaults to interpolation of the grid.
  std::function<double(Complex)> sampler;
};

struct RieszReport {
  std::vector<double> cell_masses;  ///< flux of grad rho through each polar cell, (j, k) row-major
  std::vector<char> absorbed;       ///< cells carried by a point mass
  std::vector<PointMass> point_masses;
  double blaschke_sum = 0.0;        ///< sum over poles of multiplicity * (1 - |zeta0|)
  double weighted_integral = 0.0;   ///< integral of (1 - |zeta|) Delta rho
  double rho_at_zero = 0.0;
  double boundary_mean = 0.0;       ///< (1/2pi) integral of rho(e^{i theta})
  double log_term = 0.0;            ///< (1/2pi) integral of Delta rho log(1/|zeta|)
  double representation_residual = 0.0;
  double min_cell_mass = 0.0;
  bool subharmonic = false;         ///< every unabsorbed cell mass >= -tol_mass
};

/// Discrete Riesz measure of a scalar grid: cell fluxes, point masses at the
/// pole candidates through the regularization ladder
/// rho_n = max(rho, (1 - 1/n) log|zeta - zeta0| - n), the weighted mass
/// integral and the residual of the representation formula at 0.
/// Throws InputError when rho is -inf away from every pole candidate.
RieszReport riesz_diagnostics(const DiscGrid& rho, const std::vector<Complex>& poles, const RieszOptions& opts = {});

/// rho = lambda o u at the nodes, with point evaluation through cubic
/// interpolation of u after 4x theta refinement.
struct ComposedFunction {
  DiscGrid grid;
  std::function<double(Complex)> sampler;
};
ComposedFunction compose(const ScalarFunction& lambda, const DiscGrid& u);

}  // namespace jhol
