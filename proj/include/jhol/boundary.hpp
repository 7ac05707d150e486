#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "jhol/disc_grid.hpp"

namespace jhol {

/// Approach region e^{i theta} Omega_alpha, optionally truncated to |zeta| > r_min.
struct ConeSpec {
  double theta = 0.0;
  double alpha = 0.5;
  double r_min = 0.0;
};

/// |zeta - e^{i theta}|zeta|| < alpha (1 - |zeta|), and |zeta| > r_min.
bool cone_contains(const ConeSpec& c, Complex zeta);

/// Union over angles in E of the truncated cones of aperture alpha.
std::function<bool(Complex)> truncated_cone_region(std::vector<double> angles, double alpha, double r);

/// Rasterized membership mask of a region at the nodes of a grid shape.
std::vector<char> region_mask(const std::function<bool(Complex)>& region, int n_r, int n_theta);

/// Point evaluation of a map on the disc, backed either by grid samples
/// (cubic interpolation after theta refinement) or by a closed form.
class BoundaryMap {
 public:
  static BoundaryMap from_grid(const DiscGrid& u, int upsample = 4);
  static BoundaryMap analytic(int n, std::function<CVec(Complex)> f);

  CVec operator()(Complex z) const;
  int n() const { return n_; }
  bool grid_backed() const { return grid_ != nullptr; }
  /// Largest |zeta| at which the map can be evaluated (grid: 1 - h/2).
  double resolvable_radius() const { return rmax_; }
  bool resolvable(Complex z) const { return std::abs(z) <= rmax_ * (1.0 + 1e-13); }

 private:
  int n_ = 1;
  double rmax_ = 1.0;
  std::shared_ptr<const DiscGrid> grid_;
  std::function<CVec(Complex)> f_;
};

inline constexpr double kCauchyTol = 1e-4;
inline constexpr int kCauchyWindow = 8;

struct RaySample {
  double t = 0.0;
  CVec value;
};

struct RayTrace {
  double theta = 0.0;
  double nu = 0.0;
  std::vector<RaySample> samples;
  std::optional<CVec> limit_estimate;
  double cauchy_gap = 0.0;  ///< max pairwise gap over the tail window
  bool truncated = false;   ///< the ray left the resolvable annulus early
};

/// t_i = t0 * ratio^i, i = 0..count-1.
std::vector<double> geometric_schedule(double t0, double ratio, int count);
/// Default schedule: down to 2^-40 for closed forms, to the rim of the
/// resolvable annulus for grids.
std::vector<double> default_schedule(const BoundaryMap& u, double nu);

/// Samples u along zeta(t) = e^{i theta} - t e^{i (theta - nu)}.
RayTrace ray_trace(const BoundaryMap& u, double theta, double nu, const std::vector<double>& t_schedule,
                   double cauchy_tol = kCauchyTol, int window = kCauchyWindow);

struct NtLimitOptions {
  double cauchy_tol = kCauchyTol;
  int window = kCauchyWindow;
  int levels = 48;          ///< geometric levels 1 - |zeta| = t0 ratio^i
  double t0 = 0.25;
  double ratio = 0.5;
  bool restricted = false;  ///< test only the first aperture
};

/// Common limit of u over deterministic nets in the cones e^{i theta}
/// Omega_alpha, if every net is Cauchy and the estimates agree.
std::optional<CVec> nontangential_limit(const BoundaryMap& u, double theta, const std::vector<double>& alphas,
                                        const NtLimitOptions& opts = {});

struct SchwarzReport {
  double c_tested = 0.0;
  double minimal_c = 0.0;        ///< max of derivative and distance constants
  double derivative_c = 0.0;     ///< max ||du|| (1 - |zeta|)
  double distance_c = 0.0;       ///< max |u(z) - u(z')| / delta(z, z')
  long pairs = 0;
  bool passed = false;
};

/// Poincare distance 2 artanh(|z - w| / |1 - conj(w) z|).
double poincare_distance(Complex z, Complex w);

/// ||du|| <= C / (1 - |zeta|) at the nodes and |u(z) - u(z')| <= C delta(z, z')
/// on sampled node pairs, restricted to |zeta| <= radius_limit.
SchwarzReport schwarz_bound_check(const DiscGrid& u, double c, double radius_limit = 1.0);

}  // namespace jhol
