#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "jhol/almost_complex.hpp"
#include "jhol/disc_grid.hpp"

namespace jhol {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class Smoothness { C0, C1, C2 };

/// Real function on C^n with values in R u {-inf}. -inf is allowed only at
/// the listed poles.
struct ScalarFunction {
  std::function<double(const CVec&)> value;
  Smoothness smoothness = Smoothness::C0;
  /// Real gradient in the (Re, Im) coordinates; required from C^1 up.
  std::function<RealVec(const CVec&)> gradient;
  std::vector<CVec> poles;
  std::string name;
};

/// log|z - p| + A|z - p|; -inf exactly at z = p.
double chirka(const CVec& z, const CVec& p, double A);
/// -log(-log|f|^2) + A|z|^2 with |f|^2 = sum |f_j|^2. DomainError if |f|^2 >= 1.
double loglog_barrier(const CVec& z, const CVec& f_values, double A);

ScalarFunction constant_function(double c);
/// sign * |z|^2.
ScalarFunction squared_norm_function(double sign = 1.0);
ScalarFunction chirka_function(const CVec& p, double A);
/// The log-log barrier for f(z) = scale * z_1 (a single linear defining
/// function); defined where |scale z_1| < 1.
ScalarFunction loglog_function(double scale, double A);

/// chi(|z - p|) (log|L^{-1}(z - p)| + A |L^{-1}(z - p)|) + B |z|^2 - C, with
/// chi a C^2 smoothstep equal to 1 on |z - p| < R/6 and 0 beyond R/3.
ScalarFunction local_barrier_function(const CVec& p, const RealMat& frame_inverse, double A, double B,
                                      double C, double radius);

struct SubmeanOptions {
  int max_radius_steps = 4;  ///< test radii m / n_r, m = 1..max
  int j_stride = 1;          ///< centre stride across rings
  int k_stride = 1;          ///< centre stride around rings
  int samples = 128;         ///< quadrature points per circle
  int upsample = 4;          ///< theta refinement before interpolation
  double floor = -1e6;       ///< stand-in for -inf in circle averages
  std::vector<Complex> disc_poles;  ///< known poles in disc coordinates
};

struct SubmeanReport {
  bool passed = true;
  double tol = 0.0;
  double worst_violation = -std::numeric_limits<double>::infinity();  ///< max of centre - mean
  Complex worst_center{};
  double worst_radius = 0.0;
  double min_defect_ratio = std::numeric_limits<double>::infinity();  ///< min of (mean - centre)/r^2
  long centers = 0;
  long circles = 0;
  long excluded_centers = 0;
  long excluded_circles = 0;
};

/// Precomputed circle geometry and map samples on one disc, so that many
/// functions can be tested against the same disc cheaply.
struct CircleNet {
  struct Circle {
    int center = 0;
    double radius = 0.0;
    std::vector<Complex> values;   ///< map samples, n consecutive entries per point
    std::vector<double> dnorm;     ///< |u_z| + |u_zbar| at each sample
    double disc_pole_clearance = 0.0;  ///< distance to the nearest declared disc pole
  };
  int n = 1;
  double h = 0.0;
  std::vector<Complex> centers;
  std::vector<CVec> center_values;
  std::vector<double> center_dnorm;
  std::vector<double> center_pole_clearance;
  std::vector<Circle> circles;
};

CircleNet build_circle_net(const DiscGrid& u, const SubmeanOptions& opts);
SubmeanReport submean_on_net(const CircleNet& net, const ScalarFunction& rho, double tol,
                             const SubmeanOptions& opts = {});

/// Sub-mean-value test of Re(lambda) at grid centres on circles of radius
/// m / n_r; centres at -inf pass vacuously.
SubmeanReport is_subharmonic_on_disc(const DiscGrid& lambda, double tol, const SubmeanOptions& opts = {});

struct Witness {
  DiscGrid u;
  double residual = 0.0;
};

struct DiscCorpus {
  std::vector<CircleNet> nets;
  std::vector<int> accepted;  ///< witness indices kept
  std::vector<int> rejected;  ///< witness indices above the residual threshold
};

DiscCorpus prepare_corpus(const std::vector<Witness>& discs, double residual_threshold,
                          const SubmeanOptions& opts);

struct PshReport {
  bool passed = false;
  int accepted = 0;
  int rejected = 0;
  int worst_disc = -1;
  double worst_violation = -std::numeric_limits<double>::infinity();
  double min_defect_ratio = std::numeric_limits<double>::infinity();
  std::vector<SubmeanReport> per_disc;
};

PshReport check_psh_on_corpus(const ScalarFunction& rho, const DiscCorpus& corpus, double tol,
                              const SubmeanOptions& opts = {});
/// rho composed with each accepted disc must pass the sub-mean-value test.
/// Discs whose residual exceeds the threshold are rejected as witnesses.
PshReport check_psh_along_discs(const ScalarFunction& rho, const std::vector<Witness>& discs, double tol,
                                double residual_threshold, const SubmeanOptions& opts = {});

struct BisectionResult {
  bool found = false;
  double value = 0.0;
  int evaluations = 0;
};

/// Smallest t in [lo, hi] with passes(t), assuming monotonicity; relative
/// resolution rel_tol.
BisectionResult bisect_threshold(const std::function<bool(double)>& passes, double lo = 0.0,
                                 double hi = 65536.0, double rel_tol = 1e-3);
BisectionResult find_chirka_threshold(const CVec& p, const DiscCorpus& corpus, double tol,
                                      const SubmeanOptions& opts = {});

struct Bump {
  Complex center;
  double radius = 0.0;
  double height = 1.0;
};

double bump_value(const Bump& b, Complex z);
/// Integral of the bump over the plane: height * pi R^2 / 3.
double bump_integral(const Bump& b);

struct WeakLaplacianReport {
  std::vector<double> pairings;  ///< -int grad(phi) . grad(mu), one per accepted bump
  std::vector<int> accepted;
  std::vector<int> rejected;     ///< bumps whose support reaches the rim
  double min_pairing = std::numeric_limits<double>::infinity();
  bool passed = false;
};

/// -int dphi ^ d^c mu = -int grad(phi) . grad(mu) for each bump phi, with
/// grad(mu) from the Wirtinger derivatives of Re(mu).
WeakLaplacianReport weak_laplacian_test(const DiscGrid& mu, const std::vector<Bump>& bumps, double tol);

struct Mollified {
  Structure structure;
  int k = 0;
  double eps = 0.0;           ///< sup over samples of ||J_k - J||
  double c1_estimate = 0.0;   ///< sup ||J_k|| + sup ||D J_k|| over samples
};

/// J_k(x) = polar projection of sum_y psi(y) J(x + y / k) with psi a tensor
/// Gauss-Legendre discretized product bump on [-1, 1]^{2n}; points outside
/// the domain are pulled back radially onto its boundary.
Mollified mollify_structure(const Structure& j, int k, int sample_count = 256, int gauss_points = 4);

}  // namespace jhol
