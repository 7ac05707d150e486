#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jhol/common.hpp"

namespace jhol {

inline constexpr double kStructTol = 1e-9;

/// The standard structure on R^{2n}: multiplication by i on each (x, y) pair.
RealMat standard_j(int n);

/// Largest singular value.
double operator_norm(const RealMat& m);

/// Closest complex structure in the polar sense: M (-M^2)^{-1/2}.
/// Throws StructureError when -M^2 has no principal square root.
RealMat project_to_complex_structure(const RealMat& m);

/// A field of real 2n x 2n matrices J(x) with J(x)^2 = -Id on a ball of
/// R^{2n}. Cheap to copy; the evaluator is shared and immutable.
class AlmostComplexStructure {
 public:
  using Field = std::function<RealMat(const RealVec&)>;

  AlmostComplexStructure(int n, Field field, double domain_radius,
                         std::optional<double> lipschitz = std::nullopt,
                         std::string description = "custom");

  static AlmostComplexStructure standard(int n, double radius = 1.0);
  /// Constant structure J = J_st (I + Q)(I - Q)^{-1}; q must anti-commute
  /// with J_st and have operator norm < 1.
  static AlmostComplexStructure constant_q(const RealMat& q, double radius = 1.0);
  /// Block-diagonal [[0, -l], [1/l, 0]] with l(x) = l0 + l1 |x|. Lipschitz
  /// but not C^1 at the origin when l1 != 0.
  static AlmostComplexStructure radial_lambda(int n, double l0, double l1, double radius = 1.0);
  /// Tensor-grid samples; evaluation is multilinear followed by re-projection.
  /// axes[d] lists the sorted coordinates along real axis d and values are in
  /// row-major order over the axes (last axis fastest).
  static AlmostComplexStructure from_samples(int n, double radius,
                                             std::vector<std::vector<double>> axes,
                                             std::vector<RealMat> values);

  int n() const { return n_; }
  int real_dim() const { return 2 * n_; }
  double domain_radius() const { return radius_; }
  std::optional<double> lipschitz_estimate() const { return lipschitz_; }
  const std::string& description() const { return description_; }

  /// Throws DomainError outside the (closed) domain ball.
  RealMat operator()(const RealVec& x) const;
  bool contains(const RealVec& x) const;

 private:
  int n_;
  std::shared_ptr<const Field> field_;
  double radius_;
  std::optional<double> lipschitz_;
  std::string description_;
};

using Structure = AlmostComplexStructure;

struct ValidationReport {
  double max_deviation = 0.0;
  RealVec worst_point;
  int samples = 0;
  double tolerance = kStructTol;
  bool passed = false;
};

/// Deterministic Halton points filling the closed ball of the given radius.
/// The sequence is nested: a longer request extends a shorter one.
std::vector<RealVec> ball_samples(int dim, double radius, int count);

ValidationReport validate_structure(const Structure& j, int sample_count, double tol = kStructTol);

/// [J + J_st]^{-1} [J - J_st] for a single matrix.
RealMat q_from_j(const RealMat& j);
RealMat q_from_j(const Structure& j, const RealVec& x);
/// Inverse map: J = J_st (I + Q)(I - Q)^{-1}.
RealMat j_from_q(const RealMat& q);

/// max over ball samples of ||Q(J(x))||. The ball defaults to the domain
/// ball; a smaller radius restricts the sup to where maps actually live.
double q_sup_norm(const Structure& j, int sample_count, std::optional<double> radius = std::nullopt);

struct Normalization {
  Structure structure;
  RealMat frame;          ///< L, with J'(x) = L^{-1} J(L x) L
  RealMat frame_inverse;  ///< L^{-1}
};

Normalization normalize_at_origin(const Structure& j, double tol = kStructTol);

/// x -> J(a + x) on the ball of radius R - |a|.
Structure translate_structure(const Structure& j, const RealVec& a);

/// x -> J(s x). The returned domain radius is R / s.
Structure rescale_structure(const Structure& j, double s);

}  // namespace jhol
