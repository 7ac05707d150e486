#pragma once

#include <optional>
#include <vector>

#include "jhol/almost_complex.hpp"
#include "jhol/cauchy_green.hpp"

namespace jhol {

struct SolveConfig {
  double inner_tol = 1e-12;   ///< W^{1,p} gap between successive inner iterates
  double outer_tol = 1e-12;   ///< sup gap between successive outer iterates
  int max_inner = 200;
  int max_outer = 100;
  double safety_factor = 2.0; ///< multiplies the C_p estimate
  bool auto_rescale = true;
  double residual_tol = 1e-3;
  /// Largest admissible 4 q C_p; the default mirrors q < 1/(8 C_p).
  double contraction_limit = 0.5;
  int q_samples = 512;
  int max_halvings = 20;
};

/// Real 2n x 2n deficiency matrices Q(J(v(z))), one per grid node.
struct QField {
  int n_r = 0;
  int n_theta = 0;
  int n = 0;
  std::vector<RealMat> q;
};

/// Evaluates Q along v; throws DomainError naming the worst node when v
/// leaves the domain ball of J.
QField q_field(const DiscGrid& v, const Structure& j);
/// Node-wise Q applied to the real vector of g (antilinear action on C^n).
DiscGrid apply_q(const QField& q, const DiscGrid& g);

/// -T[Q(J(u)) u_z].
DiscGrid phi(const DiscGrid& u, const Structure& j);
/// The same with coefficients frozen along another map.
DiscGrid phi_frozen(const DiscGrid& u, const QField& q);

/// Affine disc a + 2 z (b - a) on the given grid shape.
DiscGrid affine_disc(int n_r, int n_theta, const CVec& a, const CVec& b);

/// Grid values at z = 0 and z = 1/2 by bilinear interpolation.
CVec value_at_zero(const DiscGrid& u);
CVec value_at_half(const DiscGrid& u);

/// w - w[0] - 2z (w[1/2] - w[0]) + a + 2z (b - a).
DiscGrid normalize_ab(const DiscGrid& w, const CVec& a, const CVec& b);
DiscGrid phi_ab(const DiscGrid& u, const Structure& j, const CVec& a, const CVec& b);

struct InnerTrace {
  std::vector<double> gaps;    ///< sobolev_norm(u_{m+1} - u_m)
  std::vector<double> ratios;  ///< gaps[m+1] / gaps[m]
  std::vector<double> norms;   ///< sobolev_norm(u_{m+1})
  int iterations = 0;
};

struct InnerResult {
  DiscGrid u;
  InnerTrace trace;
};

/// Contraction data shared by inner and outer solves.
struct ContractionSetup {
  double q = 0.0;       ///< sup of ||Q|| over the unit ball
  double cp = 0.0;      ///< safety_factor * cp_estimate
  double factor = 0.0;  ///< 4 q cp
};

ContractionSetup contraction_setup(const Structure& j, const SobolevSetting& s, const SolveConfig& cfg);

/// Iterates u_{m+1} = Phi^v_{a,b}(u_m) from u_0 = a + 2z(b - a) with
/// coefficients frozen along v. Throws ContractionError if 4 q C_p exceeds
/// the limit and BallEscapeError if an iterate leaves the unit W^{1,p} ball.
InnerResult inner_solve(const DiscGrid& v, const Structure& j, const CVec& a, const CVec& b,
                        const SobolevSetting& s, const SolveConfig& cfg);

struct SolveReport {
  DiscGrid u;
  std::vector<int> inner_iterations;
  int outer_iterations = 0;
  std::vector<double> outer_gaps;
  std::vector<std::vector<double>> inner_gap_ratios;
  /// Largest inner gap ratio after the second iterate; absent when no
  /// inner solve took two steps.
  std::optional<double> contraction_rate_observed;
  double residual_lp = 0.0;
  double q_used = 0.0;
  double cp_used = 0.0;
  double contraction_factor = 0.0;
  double rescale_factor = 1.0;
  /// A-priori bound, evaluated in the solver's normalized coordinates.
  double solution_norm = 0.0;
  double bound_rhs = 0.0;
  bool bound_holds = false;
  bool residual_ok = false;
};

/// Picard iteration v_{k+1} = T(v_k) on the inner solve. Throws
/// ConvergenceError with the outer gap history when max_outer is reached.
SolveReport outer_solve(const Structure& j, const CVec& a, const CVec& b, const SobolevSetting& s,
                        const SolveConfig& cfg);

/// || u_zbar + Q(J(u)) u_z ||_{L^p} (unscaled).
double pde_residual_lp(const DiscGrid& u, const Structure& j, double p);

/// Thrown when no admissible rescaling makes a and b close enough.
class SeparationError : public Error {
 public:
  SeparationError(const std::string& what, double max_separation)
      : Error(what), max_separation_(max_separation) {}
  double max_separation() const { return max_separation_; }

 private:
  double max_separation_;
};

/// Disc through a (at z = 0) and b (at z = 1/2): translate to a, normalize
/// J(a) to J_st, pick a rescale factor meeting both the q threshold and the
/// ball condition, solve, and map back to the original coordinates.
SolveReport solve_disc_through(const Structure& j, const CVec& a, const CVec& b,
                               const SobolevSetting& s, const SolveConfig& cfg);

}  // namespace jhol
