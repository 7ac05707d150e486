#include "jhol/disc_grid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "jhol/fft.hpp"

namespace jhol {

void check_resolution(int n_r, int n_theta) {
  if (n_r < 8) throw InputError("n_r must be at least 8");
  if (n_theta < 16 || !std::has_single_bit(static_cast<unsigned>(n_theta)))
    throw InputError("n_theta must be a power of two >= 16");
}

DiscGrid::DiscGrid(int n_r, int n_theta, int n) : n_r_(n_r), n_theta_(n_theta), n_(n) {
  check_resolution(n_r, n_theta);
  if (n < 1) throw InputError("grid dimension must be positive");
  values_.assign(static_cast<std::size_t>(n) * nodes(), Complex{});
}

DiscGrid DiscGrid::sample(int n_r, int n_theta, int n, const std::function<CVec(Complex)>& f) {
  DiscGrid g(n_r, n_theta, n);
  for (int j = 0; j < n_r; ++j)
    for (int k = 0; k < n_theta; ++k) {
      CVec v = f(g.z(j, k));
      if (static_cast<int>(v.size()) != n) throw InputError("sampled function has wrong dimension");
      g.set_value(j, k, v);
    }
  return g;
}

DiscGrid DiscGrid::sample_scalar(int n_r, int n_theta, const std::function<Complex(Complex)>& f) {
  DiscGrid g(n_r, n_theta, 1);
  for (int j = 0; j < n_r; ++j)
    for (int k = 0; k < n_theta; ++k) g(0, j, k) = f(g.z(j, k));
  return g;
}

DiscGrid DiscGrid::zeros_like(const DiscGrid& like, int n) {
  return {like.n_r(), like.n_theta(), n < 0 ? like.n() : n};
}

CVec DiscGrid::value(int j, int k) const {
  CVec v(static_cast<std::size_t>(n_));
  for (int c = 0; c < n_; ++c) v[static_cast<std::size_t>(c)] = (*this)(c, j, k);
  return v;
}

void DiscGrid::set_value(int j, int k, std::span<const Complex> v) {
  for (int c = 0; c < n_; ++c) (*this)(c, j, k) = v[static_cast<std::size_t>(c)];
}

std::span<Complex> DiscGrid::component(int c) {
  return {values_.data() + index(c, 0, 0), nodes()};
}

std::span<const Complex> DiscGrid::component(int c) const {
  return {values_.data() + index(c, 0, 0), nodes()};
}

DiscGrid& DiscGrid::operator+=(const DiscGrid& o) {
  if (!same_shape(o)) throw InputError("grid shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

DiscGrid& DiscGrid::operator-=(const DiscGrid& o) {
  if (!same_shape(o)) throw InputError("grid shape mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

DiscGrid& DiscGrid::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

DiscGrid operator+(DiscGrid a, const DiscGrid& b) { return a += b; }
DiscGrid operator-(DiscGrid a, const DiscGrid& b) { return a -= b; }
DiscGrid operator*(Complex s, DiscGrid a) { return a *= s; }

double sup_norm(const DiscGrid& u) {
  double best = 0.0;
  for (int j = 0; j < u.n_r(); ++j)
    for (int k = 0; k < u.n_theta(); ++k) {
      double s = 0.0;
      for (int c = 0; c < u.n(); ++c) s += std::norm(u(c, j, k));
      best = std::max(best, s);
    }
  return std::sqrt(best);
}

double sup_distance(const DiscGrid& a, const DiscGrid& b) { return sup_norm(a - b); }

double resolvable_radius(const DiscGrid& u) { return 1.0 - 0.5 * u.h(); }

namespace {

// Ring jj may be -1 or -2: reflected through the centre.
Complex ring_value(const DiscGrid& u, int c, int jj, int k) {
  const int nt = u.n_theta();
  if (jj < 0) {
    jj = -1 - jj;
    k += nt / 2;
  }
  k %= nt;
  if (k < 0) k += nt;
  return u(c, jj, k);
}

struct PolarCoord {
  double rpos;  // (r - r_0) / h, ring coordinate
  double tpos;  // theta / dtheta in [0, n_theta)
};

PolarCoord polar_coord(const DiscGrid& u, Complex z) {
  double th = std::arg(z);
  if (th < 0.0) th += kTwoPi;
  double tpos = th / u.dtheta();
  if (tpos >= u.n_theta()) tpos -= u.n_theta();
  return {std::abs(z) * u.n_r() - 0.5, tpos};
}

std::array<double, 4> lagrange4(double t) {
  // Nodes -1, 0, 1, 2.
  return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
          -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

}  // namespace

Complex interp_bilinear(const DiscGrid& u, int c, Complex z) {
  const auto [rpos, tpos] = polar_coord(u, z);
  int j0 = static_cast<int>(std::floor(rpos));
  j0 = std::clamp(j0, -1, u.n_r() - 2);
  const double tr = rpos - j0;
  const int k0 = static_cast<int>(std::floor(tpos));
  const double tt = tpos - k0;
  auto ring = [&](int jj) {
    return (1.0 - tt) * ring_value(u, c, jj, k0) + tt * ring_value(u, c, jj, k0 + 1);
  };
  return (1.0 - tr) * ring(j0) + tr * ring(j0 + 1);
}

CVec interp_bilinear(const DiscGrid& u, Complex z) {
  CVec v(static_cast<std::size_t>(u.n()));
  for (int c = 0; c < u.n(); ++c) v[static_cast<std::size_t>(c)] = interp_bilinear(u, c, z);
  return v;
}

Complex interp_cubic(const DiscGrid& u, int c, Complex z) {
  const auto [rpos, tpos] = polar_coord(u, z);
  int j0 = static_cast<int>(std::floor(rpos));
  j0 = std::clamp(j0, -1, u.n_r() - 3);
  const auto wr = lagrange4(rpos - j0);
  const int k0 = static_cast<int>(std::floor(tpos));
  const auto wt = lagrange4(tpos - k0);
  Complex acc{};
  for (int a = 0; a < 4; ++a) {
    Complex ring{};
    for (int b = 0; b < 4; ++b) ring += wt[static_cast<std::size_t>(b)] * ring_value(u, c, j0 - 1 + a, k0 - 1 + b);
    acc += wr[static_cast<std::size_t>(a)] * ring;
  }
  return acc;
}

CVec interp_cubic(const DiscGrid& u, Complex z) {
  CVec v(static_cast<std::size_t>(u.n()));
  for (int c = 0; c < u.n(); ++c) v[static_cast<std::size_t>(c)] = interp_cubic(u, c, z);
  return v;
}

Complex interp_lagrange(const DiscGrid& u, int c, Complex z, int points) {
  if (points < 2 || points % 2 != 0 || points > 12) throw InputError("interp_lagrange: points must be even, 2..12");
  const int half = points / 2;
  const auto [rpos, tpos] = polar_coord(u, z);
  int j0 = static_cast<int>(std::floor(rpos));
  j0 = std::clamp(j0, -half, u.n_r() - half - 1);
  const int k0 = static_cast<int>(std::floor(tpos));
  // Nodes offset -half+1 .. half relative to the base index.
  auto weights = [&](double t) {
    std::array<double, 12> w{};
    for (int a = 0; a < points; ++a) {
      const double xa = a - half + 1;
      double v = 1.0;
      for (int b = 0; b < points; ++b)
        if (b != a) v *= (t - (b - half + 1)) / (xa - (b - half + 1));
      w[static_cast<std::size_t>(a)] = v;
    }
    return w;
  };
  const auto wr = weights(rpos - j0);
  const auto wt = weights(tpos - k0);
  Complex acc{};
  for (int a = 0; a < points; ++a) {
    Complex ring{};
    for (int b = 0; b < points; ++b)
      ring += wt[static_cast<std::size_t>(b)] * ring_value(u, c, j0 - half + 1 + a, k0 - half + 1 + b);
    acc += wr[static_cast<std::size_t>(a)] * ring;
  }
  return acc;
}

DiscGrid upsample_theta(const DiscGrid& u, int factor) {
  if (factor < 1 || !std::has_single_bit(static_cast<unsigned>(factor)))
    throw InputError("upsampling factor must be a power of two");
  if (factor == 1) return u;
  const int nt = u.n_theta();
  const int nf = nt * factor;
  DiscGrid out(u.n_r(), nf, u.n());
  std::vector<Complex> line(static_cast<std::size_t>(nt));
  std::vector<Complex> spec(static_cast<std::size_t>(nt));
  std::vector<Complex> wide(static_cast<std::size_t>(nf));
  std::vector<Complex> fine(static_cast<std::size_t>(nf));
  for (int c = 0; c < u.n(); ++c)
    for (int j = 0; j < u.n_r(); ++j) {
      for (int k = 0; k < nt; ++k) line[static_cast<std::size_t>(k)] = u(c, j, k);
      fft_forward(line, spec);
      std::fill(wide.begin(), wide.end(), Complex{});
      for (int i = 0; i < nt; ++i) {
        const Complex v = spec[static_cast<std::size_t>(i)] / static_cast<double>(nt);
        const int m = mode_of_bin(i, nt);
        if (i == nt / 2) {
          // Split the Nyquist term evenly so node values are reproduced.
          wide[static_cast<std::size_t>(bin_of_mode(m, nf))] += 0.5 * v;
          wide[static_cast<std::size_t>(bin_of_mode(-m, nf))] += 0.5 * v;
        } else {
          wide[static_cast<std::size_t>(bin_of_mode(m, nf))] += v;
        }
      }
      fft_backward(wide, fine);
      for (int k = 0; k < nf; ++k) out(c, j, k) = fine[static_cast<std::size_t>(k)];
    }
  return out;
}

}  // namespace jhol
