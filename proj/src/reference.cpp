#include "jhol/reference.hpp"

#include <cmath>

namespace jhol::reference {

namespace {

// c_m = (1/N) sum_k x_k e^{-i m theta_k}, m in [-N/2, N/2).
std::vector<Complex> dft(const std::vector<Complex>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Complex> out(x.size());
  for (int i = 0; i < n; ++i) {
    const int m = i < n / 2 ? i : i - n;
    Complex s{};
    for (int k = 0; k < n; ++k) s += x[static_cast<std::size_t>(k)] * std::polar(1.0, -kTwoPi * m * k / n);
    out[static_cast<std::size_t>(i)] = s / static_cast<double>(n);
  }
  return out;
}

std::vector<Complex> ring(const DiscGrid& u, int c, int j) {
  std::vector<Complex> x(static_cast<std::size_t>(u.n_theta()));
  for (int k = 0; k < u.n_theta(); ++k) x[static_cast<std::size_t>(k)] = u(c, j, k);
  return x;
}

// int_a^b rho^e (c0 + c1 rho) drho scaled by rt^{-e}, by composite
// Gauss-Legendre on a polynomial-times-power integrand.
Complex radial_piece(double a, double b, double rt, int e, Complex c0, Complex c1) {
  static const double gx[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                              -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                              0.7966664774136267,  0.9602898564975363};
  static const double gw[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                              0.2223810344533745, 0.1012285362903763};
  const int sub = 8;
  Complex acc{};
  for (int s = 0; s < sub; ++s) {
    const double lo = a + (b - a) * s / sub;
    const double hi = a + (b - a) * (s + 1) / sub;
    for (int g = 0; g < 8; ++g) {
      const double rho = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[g];
      acc += 0.5 * (hi - lo) * gw[g] * std::pow(rho / rt, e) * (c0 + c1 * rho);
    }
  }
  return acc;
}

}  // namespace

Wirtinger wirtinger(const DiscGrid& u) {
  const int nr = u.n_r();
  const int nt = u.n_theta();
  const double h = u.h();
  Wirtinger out{DiscGrid::zeros_like(u), DiscGrid::zeros_like(u)};
  for (int c = 0; c < u.n(); ++c)
    for (int j = 0; j < nr; ++j) {
      auto coef = dft(ring(u, c, j));
      for (int k = 0; k < nt; ++k) {
        Complex ut{};
        for (int i = 0; i < nt; ++i) {
          const int m = i < nt / 2 ? i : i - nt;
          if (i == nt / 2) continue;
          ut += Complex(0.0, m) * coef[static_cast<std::size_t>(i)] * std::polar(1.0, m * u.theta(k));
        }
        Complex ur;
        if (j == 0)
          ur = (u(c, 1, k) - u(c, 0, (k + nt / 2) % nt)) / (2.0 * h);
        else if (j == nr - 1)
          ur = (3.0 * u(c, j, k) - 4.0 * u(c, j - 1, k) + u(c, j - 2, k)) / (2.0 * h);
        else
          ur = (u(c, j + 1, k) - u(c, j - 1, k)) / (2.0 * h);
        const double r = u.r(j);
        const double th = u.theta(k);
        const Complex iut = Complex(0.0, 1.0) * ut / r;
        out.dz(c, j, k) = 0.5 * std::polar(1.0, -th) * (ur - iut);
        out.dzbar(c, j, k) = 0.5 * std::polar(1.0, th) * (ur + iut);
      }
    }
  return out;
}

DiscGrid cauchy_green(const DiscGrid& f) {
  const int nr = f.n_r();
  const int nt = f.n_theta();
  DiscGrid out = DiscGrid::zeros_like(f);
  for (int c = 0; c < f.n(); ++c) {
    std::vector<std::vector<Complex>> coef(static_cast<std::size_t>(nr));
    for (int j = 0; j < nr; ++j) coef[static_cast<std::size_t>(j)] = dft(ring(f, c, j));
    for (int i = 0; i < nt; ++i) {
      if (i == nt / 2) continue;
      const int m = i < nt / 2 ? i : i - nt;
      // Knots 0, r_0, ..., r_{n-1}, 1 with the mode profile piecewise linear.
      std::vector<double> knot{0.0};
      std::vector<Complex> val;
      const Complex first = coef[0][static_cast<std::size_t>(i)];
      val.push_back(m % 2 == 0 ? first : Complex{});
      for (int j = 0; j < nr; ++j) {
        knot.push_back(f.r(j));
        val.push_back(coef[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      }
      knot.push_back(1.0);
      val.push_back(val[static_cast<std::size_t>(nr)] + 0.5 * (val[static_cast<std::size_t>(nr)] - val[static_cast<std::size_t>(nr - 1)]));
      for (int j = 0; j < nr; ++j) {
        const double rt = f.r(j);
        Complex s{};
        for (std::size_t p = 0; p + 1 < knot.size(); ++p) {
          const double a = knot[p];
          const double b = knot[p + 1];
          const bool inside = m <= 0 ? b <= rt + 1e-15 : a >= rt - 1e-15;
          if (!inside) continue;
          const Complex slope = (val[p + 1] - val[p]) / (b - a);
          s += radial_piece(a, b, rt, 1 - m, val[p] - slope * a, slope);
        }
        const Complex g = m <= 0 ? 2.0 * s : -2.0 * s;
        for (int k = 0; k < nt; ++k) out(c, j, k) += g * std::polar(1.0, (m - 1) * f.theta(k));
      }
    }
  }
  return out;
}

}  // namespace jhol::reference
