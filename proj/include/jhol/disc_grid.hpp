#pragma once

#include <functional>
#include <span>
#include <vector>

#include "jhol/common.hpp"

namespace jhol {

/// Polar grid on the closed unit disc carrying C^n samples.
///
/// Nodes are zeta_jk = r_j e^{i theta_k}, r_j = (j + 1/2)/n_r,
/// theta_k = 2 pi k / n_theta. Storage is component-major:
/// value(c, j, k) lives at (c * n_r + j) * n_theta + k.
class DiscGrid {
 public:
  DiscGrid() = default;
  DiscGrid(int n_r, int n_theta, int n = 1);

  static DiscGrid sample(int n_r, int n_theta, int n,
                         const std::function<CVec(Complex)>& f);
  static DiscGrid sample_scalar(int n_r, int n_theta, const std::function<Complex(Complex)>& f);
  /// Same resolution and dimension as `like`, zero values.
  static DiscGrid zeros_like(const DiscGrid& like, int n = -1);

  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  int n() const { return n_; }
  std::size_t nodes() const { return static_cast<std::size_t>(n_r_) * static_cast<std::size_t>(n_theta_); }

  double h() const { return 1.0 / n_r_; }
  double dtheta() const { return kTwoPi / n_theta_; }
  double r(int j) const { return (j + 0.5) / n_r_; }
  double theta(int k) const { return kTwoPi * k / n_theta_; }
  Complex z(int j, int k) const { return std::polar(r(j), theta(k)); }
  /// Area of the polar cell around ring j; the cells tile the disc.
  double cell_area(int j) const { return r(j) * h() * dtheta(); }

  Complex& operator()(int c, int j, int k) { return values_[index(c, j, k)]; }
  Complex operator()(int c, int j, int k) const { return values_[index(c, j, k)]; }
  CVec value(int j, int k) const;
  void set_value(int j, int k, std::span<const Complex> v);

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
  std::vector<Complex>& data() { return values_; }
  const std::vector<Complex>& data() const { return values_; }

  bool same_shape(const DiscGrid& o) const {
    return n_r_ == o.n_r_ && n_theta_ == o.n_theta_ && n_ == o.n_;
  }

  DiscGrid& operator+=(const DiscGrid& o);
  DiscGrid& operator-=(const DiscGrid& o);
  DiscGrid& operator*=(Complex s);

 private:
  std::size_t index(int c, int j, int k) const {
    return (static_cast<std::size_t>(c) * static_cast<std::size_t>(n_r_) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n_theta_) +
           static_cast<std::size_t>(k);
  }

  int n_r_ = 0;
  int n_theta_ = 0;
  int n_ = 0;
  std::vector<Complex> values_;
};

DiscGrid operator+(DiscGrid a, const DiscGrid& b);
DiscGrid operator-(DiscGrid a, const DiscGrid& b);
DiscGrid operator*(Complex s, DiscGrid a);

/// Throws InputError unless n_theta is a power of two >= 16 and n_r >= 8.
void check_resolution(int n_r, int n_theta);

/// max over nodes of the Euclidean norm in C^n.
double sup_norm(const DiscGrid& u);
double sup_distance(const DiscGrid& a, const DiscGrid& b);

/// Largest radius at which interpolation stays inside the sampled annulus.
double resolvable_radius(const DiscGrid& u);

/// Bilinear interpolation in (r, theta). Radii below r_0 use the reflection
/// u(-r, theta) = u(r, theta + pi); beyond r_{n-1} the outer two rings are
/// extended linearly.
CVec interp_bilinear(const DiscGrid& u, Complex z);
Complex interp_bilinear(const DiscGrid& u, int c, Complex z);

/// Cubic Lagrange in r (reflected rings near the centre, stencil shifted
/// inward at the rim) times periodic cubic Lagrange in theta.
CVec interp_cubic(const DiscGrid& u, Complex z);
Complex interp_cubic(const DiscGrid& u, int c, Complex z);

/// Lagrange interpolation with `points` nodes per direction (even, up to 12).
/// Rings below the centre are reflected, at most points/2 of them.
Complex interp_lagrange(const DiscGrid& u, int c, Complex z, int points);

/// Band-limited refinement in theta: each ring is resampled at
/// factor * n_theta angles by zero-padding its spectrum. Radial nodes are
/// unchanged, so cubic interpolation on the result is spectrally accurate in
/// theta.
DiscGrid upsample_theta(const DiscGrid& u, int factor);

}  // namespace jhol
