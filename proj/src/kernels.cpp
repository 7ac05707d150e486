#include "jhol/kernels.hpp"

#include <array>
#include <cmath>

#include "jhol/fft.hpp"

namespace jhol {

namespace {

int ring_count(const DiscGrid& u) { return u.n() * u.n_r(); }

// int_a^b (rho/rt)^k (c0 + c1 rho) drho.
Complex piece_integral(double a, double b, double rt, int k, Complex c0, Complex c1) {
  const double A = a / rt;
  const double B = b / rt;
  auto moment = [&](int e) {
    if (e == -1) return std::log(B / A);
    return (std::pow(B, e + 1) - std::pow(A, e + 1)) / (e + 1);
  };
  return c0 * (rt * moment(k)) + c1 * (rt * rt * moment(k + 1));
}

// Line coefficients (c0, c1) through (x0, y0) and (x1, y1).
std::pair<Complex, Complex> line_through(double x0, Complex y0, double x1, Complex y1) {
  const Complex slope = (y1 - y0) / (x1 - x0);
  return {y0 - slope * x0, slope};
}

constexpr std::array<double, 16> kGaussX = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr std::array<double, 16> kGaussW = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace

Wirtinger wirtinger_kernel(const DiscGrid& u, Exec exec) {
  const int nr = u.n_r();
  const int nt = u.n_theta();
  const double h = u.h();
  DiscGrid ut = DiscGrid::zeros_like(u);
  Wirtinger out{DiscGrid::zeros_like(u), DiscGrid::zeros_like(u)};
  const int rings = ring_count(u);

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int ring = 0; ring < rings; ++ring) {
    const int c = ring / nr;
    const int j = ring % nr;
    std::vector<Complex> spec(static_cast<std::size_t>(nt));
    std::vector<Complex> line(static_cast<std::size_t>(nt));
    for (int k = 0; k < nt; ++k) line[static_cast<std::size_t>(k)] = u(c, j, k);
    fft_forward(line, spec);
    for (int i = 0; i < nt; ++i) {
      const int m = mode_of_bin(i, nt);
      spec[static_cast<std::size_t>(i)] *= (i == nt / 2) ? Complex{} : Complex(0.0, m / static_cast<double>(nt));
    }
    fft_backward(spec, line);
    for (int k = 0; k < nt; ++k) ut(c, j, k) = line[static_cast<std::size_t>(k)];
  }

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int ring = 0; ring < rings; ++ring) {
    const int c = ring / nr;
    const int j = ring % nr;
    const double r = u.r(j);
    for (int k = 0; k < nt; ++k) {
      Complex ur;
      if (j == 0) {
        ur = (u(c, 1, k) - u(c, 0, (k + nt / 2) % nt)) / (2.0 * h);
      } else if (j == nr - 1) {
        ur = (3.0 * u(c, j, k) - 4.0 * u(c, j - 1, k) + u(c, j - 2, k)) / (2.0 * h);
      } else {
        ur = (u(c, j + 1, k) - u(c, j - 1, k)) / (2.0 * h);
      }
      const Complex e = std::polar(1.0, u.theta(k));
      const Complex iut = Complex(0.0, 1.0 / r) * ut(c, j, k);
      out.dz(c, j, k) = 0.5 * std::conj(e) * (ur - iut);
      out.dzbar(c, j, k) = 0.5 * e * (ur + iut);
    }
  }
  return out;
}

DiscGrid cauchy_green_modal(const DiscGrid& f, Exec exec) {
  const int nr = f.n_r();
  const int nt = f.n_theta();
  const int n = f.n();
  const int rings = ring_count(f);
  // Mode coefficients f_m(r_j), stored [(c * nr + j) * nt + bin].
  std::vector<Complex> fm(static_cast<std::size_t>(rings) * static_cast<std::size_t>(nt));
  std::vector<Complex> gm(fm.size(), Complex{});
  auto at = [nt, nr](std::vector<Complex>& v, int c, int j, int bin) -> Complex& {
    return v[(static_cast<std::size_t>(c) * static_cast<std::size_t>(nr) + static_cast<std::size_t>(j)) *
                 static_cast<std::size_t>(nt) +
             static_cast<std::size_t>(bin)];
  };

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int ring = 0; ring < rings; ++ring) {
    const int c = ring / nr;
    const int j = ring % nr;
    std::vector<Complex> line(static_cast<std::size_t>(nt));
    for (int k = 0; k < nt; ++k) line[static_cast<std::size_t>(k)] = f(c, j, k);
    std::span<Complex> dst(&at(fm, c, j, 0), static_cast<std::size_t>(nt));
    fft_forward(line, dst);
    for (auto& v : dst) v /= static_cast<double>(nt);
  }

  const int modes = n * nt;
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int task = 0; task < modes; ++task) {
    const int c = task / nt;
    const int bin = task % nt;
    if (bin == nt / 2) continue;  // Nyquist input mode dropped
    const int m = mode_of_bin(bin, nt);
    const int obin = bin_of_mode(m - 1, nt);
    auto val = [&](int j) { return at(fm, c, j, bin); };
    if (m <= 0) {
      const int k = 1 - m;
      const Complex v0 = (m % 2 == 0) ? val(0) : Complex{};
      auto [c0, c1] = line_through(0.0, v0, f.r(0), val(0));
      Complex s = piece_integral(0.0, f.r(0), f.r(0), k, c0, c1);
      at(gm, c, 0, obin) = 2.0 * s;
      for (int j = 0; j + 1 < nr; ++j) {
        const double ra = f.r(j);
        const double rb = f.r(j + 1);
        auto [d0, d1] = line_through(ra, val(j), rb, val(j + 1));
        s = std::pow(ra / rb, k) * s + piece_integral(ra, rb, rb, k, d0, d1);
        at(gm, c, j + 1, obin) = 2.0 * s;
      }
    } else {
      const int e = m - 1;
      const double rl = f.r(nr - 1);
      const Complex v1 = val(nr - 1) + 0.5 * (val(nr - 1) - val(nr - 2));
      auto [c0, c1] = line_through(rl, val(nr - 1), 1.0, v1);
      Complex s = piece_integral(rl, 1.0, rl, -e, c0, c1);
      at(gm, c, nr - 1, obin) = -2.0 * s;
      for (int j = nr - 2; j >= 0; --j) {
        const double ra = f.r(j);
        const double rb = f.r(j + 1);
        auto [d0, d1] = line_through(ra, val(j), rb, val(j + 1));
        s = std::pow(ra / rb, e) * s + piece_integral(ra, rb, ra, -e, d0, d1);
        at(gm, c, j, obin) = -2.0 * s;
      }
    }
  }

  DiscGrid out = DiscGrid::zeros_like(f);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int ring = 0; ring < rings; ++ring) {
    const int c = ring / nr;
    const int j = ring % nr;
    std::vector<Complex> line(static_cast<std::size_t>(nt));
    std::span<const Complex> src(&at(gm, c, j, 0), static_cast<std::size_t>(nt));
    fft_backward(src, line);
    for (int k = 0; k < nt; ++k) out(c, j, k) = line[static_cast<std::size_t>(k)];
  }
  return out;
}

Complex cell_kernel_integral(Complex z, double r0, double r1, double t0, double t1) {
  // int_cell dA/(zeta - z) = (1/2i) oint (conj(zeta) - conj(z))/(zeta - z) dzeta.
  auto edge = [&](auto point, auto tangent) {
    Complex acc{};
    for (std::size_t g = 0; g < kGaussX.size(); ++g) {
      const double s = 0.5 * (kGaussX[g] + 1.0);
      const Complex zeta = point(s);
      const Complex d = zeta - z;
      if (d == Complex{}) continue;
      acc += 0.5 * kGaussW[g] * (std::conj(d) / d) * tangent(s);
    }
    return acc;
  };
  const Complex I(0.0, 1.0);
  Complex total{};
  total += edge([&](double s) { return std::polar(r1, t0 + (t1 - t0) * s); },
                [&](double s) { return I * (t1 - t0) * std::polar(r1, t0 + (t1 - t0) * s); });
  total += edge([&](double s) { return std::polar(r1 + (r0 - r1) * s, t1); },
                [&](double) { return (r0 - r1) * std::polar(1.0, t1); });
  if (r0 > 0.0)
    total += edge([&](double s) { return std::polar(r0, t1 + (t0 - t1) * s); },
                  [&](double s) { return I * (t0 - t1) * std::polar(r0, t1 + (t0 - t1) * s); });
  total += edge([&](double s) { return std::polar(r0 + (r1 - r0) * s, t0); },
                [&](double) { return (r1 - r0) * std::polar(1.0, t0); });
  return total / (2.0 * I);
}

DiscGrid cauchy_green_direct(const DiscGrid& f, Exec exec) {
  const int nr = f.n_r();
  const int nt = f.n_theta();
  const int n = f.n();
  const double h = f.h();
  const double dt = f.dtheta();
  const double near = 2.5 * h;
  const int total = nr * nt;
  std::vector<Complex> zs(static_cast<std::size_t>(total));
  std::vector<double> area(static_cast<std::size_t>(total));
  for (int j = 0; j < nr; ++j)
    for (int k = 0; k < nt; ++k) {
      zs[static_cast<std::size_t>(j * nt + k)] = f.z(j, k);
      area[static_cast<std::size_t>(j * nt + k)] = f.cell_area(j);
    }
  DiscGrid out = DiscGrid::zeros_like(f);

#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
  for (int target = 0; target < total; ++target) {
    const Complex z = zs[static_cast<std::size_t>(target)];
    std::vector<Complex> acc(static_cast<std::size_t>(n), Complex{});
    for (int src = 0; src < total; ++src) {
      const Complex d = zs[static_cast<std::size_t>(src)] - z;
      Complex w;
      if (std::abs(d) < near) {
        const int j = src / nt;
        const int k = src % nt;
        const double r = f.r(j);
        const double t = f.theta(k);
        w = cell_kernel_integral(z, r - 0.5 * h, r + 0.5 * h, t - 0.5 * dt, t + 0.5 * dt);
      } else {
        w = area[static_cast<std::size_t>(src)] / d;
      }
      for (int c = 0; c < n; ++c)
        acc[static_cast<std::size_t>(c)] += w * f.component(c)[static_cast<std::size_t>(src)];
    }
    for (int c = 0; c < n; ++c)
      out.component(c)[static_cast<std::size_t>(target)] = -acc[static_cast<std::size_t>(c)] / kPi;
  }
  return out;
}

std::vector<double> cell_flux_kernel(const DiscGrid& rho, Exec exec) {
  const int nr = rho.n_r();
  const int nt = rho.n_theta();
  const double h = rho.h();
  const double dt = rho.dtheta();
  std::vector<double> mass(rho.nodes());
  auto v = [&](int j, int k) {
    k = (k + nt) % nt;
    if (j < 0) return rho(0, -1 - j, (k + nt / 2) % nt).real();
    return rho(0, j, k).real();
  };
  // d rho / dr on the face r = (f) h, f = 1..nr, fourth order.
  auto face_slope = [&](int f, int k) {
    if (f == nr)
      return (71.0 * v(nr - 1, k) - 141.0 * v(nr - 2, k) + 93.0 * v(nr - 3, k) - 23.0 * v(nr - 4, k)) / (24.0 * h);
    if (f == nr - 1)
      return (23.0 * v(nr - 1, k) - 21.0 * v(nr - 2, k) - 3.0 * v(nr - 3, k) + v(nr - 4, k)) / (24.0 * h);
    return (v(f - 2, k) - 27.0 * v(f - 1, k) + 27.0 * v(f, k) - v(f + 1, k)) / (24.0 * h);
  };

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int j = 0; j < nr; ++j) {
    const double r = rho.r(j);
    const double ro = r + 0.5 * h;
    const double ri = r - 0.5 * h;
    for (int k = 0; k < nt; ++k) {
      const double outer_slope = face_slope(j + 1, k);
      const double inner_slope = (j == 0) ? 0.0 : face_slope(j, k);
      const double angular = (v(j, k + 1) - 2.0 * v(j, k) + v(j, k - 1)) / dt;
      mass[static_cast<std::size_t>(j * nt + k)] =
          ro * dt * outer_slope - ri * dt * inner_slope + (h / r) * angular;
    }
  }
  return mass;
}

}  // namespace jhol
