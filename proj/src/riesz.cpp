#include "jhol/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "jhol/kernels.hpp"

namespace jhol {

namespace {

// Theta refinement of the map before the sampler interpolates it.
constexpr int kComposeUpsample = 4;

// Least-squares fit of y = M + c1 x + c2 x^2 (fewer terms when data is short); returns M.
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m == 0) return std::numeric_limits<double>::quiet_NaN();
  if (m == 1) return y[0];
  const int terms = m >= 3 ? 3 : 2;
  RealMat A(static_cast<Eigen::Index>(m), terms);
  RealVec b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    A(ii, 0) = 1.0;
    A(ii, 1) = x[i];
    if (terms == 3) A(ii, 2) = x[i] * x[i];
    b[ii] = y[i];
  }
  const RealVec c = A.colPivHouseholderQr().solve(b);
  return c[0];
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  if (m < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

// int_0^1 g(r) dr from g at r = f h, f = 0..m: Simpson, with a 3/8 panel when m is odd.
double simpson(const std::vector<double>& g, double h) {
  const int m = static_cast<int>(g.size()) - 1;
  const int even = (m % 2 == 0) ? m : m - 3;
  double s = 0.0;
  for (int f = 0; f + 2 <= even; f += 2) s += h / 3.0 * (g[f] + 4.0 * g[f + 1] + g[f + 2]);
  if (even != m) s += 3.0 * h / 8.0 * (g[m - 3] + 3.0 * g[m - 2] + 3.0 * g[m - 1] + g[m]);
  return s;
}

double circle_mean(const std::function<double(Complex)>& f, Complex c, double R, int samples) {
  double s = 0.0;
  for (int l = 0; l < samples; ++l) s += f(c + std::polar(R, kTwoPi * l / samples));
  return s / samples;
}

PointMass point_mass(const std::function<double(Complex)>& rho, Complex z0, double r_max, double r_min,
                     const RieszOptions& opts) {
  PointMass pm;
  pm.center = z0;
  std::vector<double> radii;
  for (double R = r_max; R >= r_min * (1.0 - 1e-12); R /= std::sqrt(2.0)) radii.push_back(R);
  if (radii.empty()) radii.push_back(r_max);

  std::vector<double> bound_x, bound_y;
  for (double R : radii) {
    double sup = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < opts.flux_samples; ++l)
      sup = std::max(sup, rho(z0 + std::polar(R, kTwoPi * l / opts.flux_samples)));
    bound_x.push_back(std::log(1.0 / R));
    bound_y.push_back(sup - std::log(R));
  }
  pm.log_bound_slope = slope(bound_x, bound_y);
  pm.certified_ge_2pi = std::isfinite(pm.log_bound_slope) && pm.log_bound_slope <= 0.05;

  for (int n : opts.ladder) {
    auto rho_n = [&](Complex z) {
      const double d = std::abs(z - z0);
      const double floor = (1.0 - 1.0 / n) * std::log(d) - n;
      return std::max(rho(z), floor);
    };
    std::vector<double> flux;
    for (double R : radii) {
      const double dl = R / 8.0;
      const double d1 = 8.0 * (circle_mean(rho_n, z0, R + dl, opts.flux_samples) -
                               circle_mean(rho_n, z0, R - dl, opts.flux_samples));
      const double d2 = circle_mean(rho_n, z0, R + 2 * dl, opts.flux_samples) -
                        circle_mean(rho_n, z0, R - 2 * dl, opts.flux_samples);
      flux.push_back(kTwoPi * R * (d1 - d2) / (12.0 * dl));
    }
    pm.ladder.push_back(extrapolate_to_zero(radii, flux));
  }
  pm.mass = pm.ladder.back();
  pm.multiplicity = static_cast<int>(std::lround(std::max(0.0, pm.mass) / kTwoPi));
  return pm;
}

}  // namespace

RieszReport riesz_diagnostics(const DiscGrid& rho_in, const std::vector<Complex>& poles, const RieszOptions& opts) {
  if (rho_in.n() != 1) throw InputError("riesz_diagnostics: rho must be a scalar grid");
  if (opts.ladder.empty()) throw InputError("riesz_diagnostics: empty regularization ladder");
  for (int n : opts.ladder)
    if (n < 1) throw InputError("riesz_diagnostics: ladder entries must be positive");
  for (auto p : poles)
    if (!(std::abs(p) < resolvable_radius(rho_in))) throw InputError("riesz_diagnostics: pole candidate outside the grid");
  const int nr = rho_in.n_r();
  const int nt = rho_in.n_theta();
  const double h = rho_in.h();
  const double absorb = opts.absorb_radius > 0.0 ? opts.absorb_radius : 4.0 * h;
  const int n_top = opts.ladder.back();

  // Replace the pole values by the top of the ladder and reject -inf elsewhere.
  DiscGrid rho(nr, nt, 1);
  RieszReport rep;
  rep.absorbed.assign(rho.nodes(), 0);
  for (int j = 0; j < nr; ++j)
    for (int k = 0; k < nt; ++k) {
      const Complex z = rho.z(j, k);
      double v = rho_in(0, j, k).real();
      if (std::isnan(v)) throw InputError("riesz_diagnostics: NaN value in rho");
      bool near = false;
      for (auto p : poles) {
        const double d = std::abs(z - p);
        if (d < absorb) near = true;
        v = std::max(v, (1.0 - 1.0 / n_top) * std::log(d) - n_top);
      }
      if (!std::isfinite(v) || (v == -std::numeric_limits<double>::infinity() && !near))
        throw InputError("riesz_diagnostics: rho is -inf outside the declared pole candidates");
      if (v > 1e300) throw InputError("riesz_diagnostics: rho is not bounded above");
      rho(0, j, k) = v;
      rep.absorbed[static_cast<std::size_t>(j * nt + k)] = near ? 1 : 0;
    }

  rep.cell_masses = cell_flux_kernel(rho, Exec::parallel);

  std::function<double(Complex)> sampler = opts.sampler;
  if (!sampler) {
    // No theta refinement: band-limited resampling rings around log poles.
    auto grid = std::make_shared<const DiscGrid>(rho);
    sampler = [grid](Complex z) { return interp_cubic(*grid, 0, z).real(); };
  }

  // Point masses: circles stay inside the resolvable disc and away from other poles.
  rep.point_masses.resize(poles.size());
  const int np = static_cast<int>(poles.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < np; ++i) {
    const Complex z0 = poles[static_cast<std::size_t>(i)];
    double r_max = std::min(opts.max_flux_radius, 0.95 * (resolvable_radius(rho) - std::abs(z0)) / 1.25);
    for (int o = 0; o < np; ++o)
      if (o != i) r_max = std::min(r_max, 0.95 * std::abs(poles[static_cast<std::size_t>(o)] - z0) / 1.25);
    rep.point_masses[static_cast<std::size_t>(i)] = point_mass(sampler, z0, r_max, 4.0 * h, opts);
  }

  // Cumulative unabsorbed mass mu(r) on the ring faces. Integrating by parts,
  // int (1 - |z|) dmu = int_0^1 mu dr and int log(1/|z|) dmu = int_0^1 mu / r dr.
  std::vector<double> mu(static_cast<std::size_t>(nr) + 1, 0.0);
  double min_mass = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nr; ++j) {
    double ring = 0.0;
    for (int k = 0; k < nt; ++k) {
      const auto idx = static_cast<std::size_t>(j * nt + k);
      if (rep.absorbed[idx]) continue;
      min_mass = std::min(min_mass, rep.cell_masses[idx]);
      ring += rep.cell_masses[idx];
    }
    mu[static_cast<std::size_t>(j) + 1] = mu[static_cast<std::size_t>(j)] + ring;
  }
  std::vector<double> mu_over_r(mu.size(), 0.0);
  for (std::size_t f = 1; f < mu.size(); ++f) mu_over_r[f] = mu[f] / (static_cast<double>(f) * h);
  double weighted = simpson(mu, h);
  double logsum = simpson(mu_over_r, h);
  bool pole_at_zero = false;
  for (const auto& pm : rep.point_masses) {
    const double r0 = std::abs(pm.center);
    weighted += (1.0 - r0) * pm.mass;
    rep.blaschke_sum += pm.multiplicity * (1.0 - r0);
    if (r0 < absorb) pole_at_zero = true;
    else logsum += std::log(1.0 / r0) * pm.mass;
  }
  rep.weighted_integral = weighted;
  rep.min_cell_mass = std::isfinite(min_mass) ? min_mass : 0.0;
  rep.subharmonic = rep.min_cell_mass >= -opts.tol_mass;
  rep.log_term = logsum / kTwoPi;

  // Boundary values by cubic extrapolation of the outer four rings to r = 1.
  double bsum = 0.0;
  for (int k = 0; k < nt; ++k) {
    double val = 0.0;
    for (int a = 0; a < 4; ++a) {
      const int ja = nr - 4 + a;
      double w = 1.0;
      for (int b = 0; b < 4; ++b)
        if (b != a) w *= (1.0 - rho.r(nr - 4 + b)) / (rho.r(ja) - rho.r(nr - 4 + b));
      val += w * rho(0, ja, k).real();
    }
    bsum += val;
  }
  rep.boundary_mean = bsum / nt;
  if (pole_at_zero) {
    rep.rho_at_zero = -std::numeric_limits<double>::infinity();
    rep.representation_residual = std::numeric_limits<double>::infinity();
  } else {
    rep.rho_at_zero = sampler(Complex(0.0, 0.0));
    rep.representation_residual = std::abs(rep.rho_at_zero - (rep.boundary_mean - rep.log_term));
  }
  return rep;
}

ComposedFunction compose(const ScalarFunction& lambda, const DiscGrid& u) {
  ComposedFunction out{DiscGrid(u.n_r(), u.n_theta(), 1), {}};
  for (int j = 0; j < u.n_r(); ++j)
    for (int k = 0; k < u.n_theta(); ++k) out.grid(0, j, k) = lambda.value(u.value(j, k));
  auto grid = std::make_shared<const DiscGrid>(upsample_theta(u, kComposeUpsample));
  out.sampler = [grid, f = lambda.value](Complex z) { return f(interp_cubic(*grid, z)); };
  return out;
}

}  // namespace jhol
