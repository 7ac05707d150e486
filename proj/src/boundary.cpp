#include "jhol/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jhol/cauchy_green.hpp"

namespace jhol {

bool cone_contains(const ConeSpec& c, Complex zeta) {
  const double r = std::abs(zeta);
  if (c.r_min > 0.0 && r <= c.r_min) return false;
  return std::abs(zeta - std::polar(r, c.theta)) < c.alpha * (1.0 - r);
}

std::function<bool(Complex)> truncated_cone_region(std::vector<double> angles, double alpha, double r) {
  if (angles.empty()) throw InputError("truncated_cone_region: empty angle set");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("truncated_cone_region: alpha must lie in (0, 1)");
  if (!(r >= 0.0 && r < 1.0)) throw InputError("truncated_cone_region: r must lie in [0, 1)");
  return [angles = std::move(angles), alpha, r](Complex z) {
    return std::any_of(angles.begin(), angles.end(),
                       [&](double t) { return cone_contains({t, alpha, r}, z); });
  };
}

std::vector<char> region_mask(const std::function<bool(Complex)>& region, int n_r, int n_theta) {
  DiscGrid g(n_r, n_theta, 1);
  std::vector<char> mask(g.nodes());
  for (int j = 0; j < n_r; ++j)
    for (int k = 0; k < n_theta; ++k)
      mask[static_cast<std::size_t>(j * n_theta + k)] = region(g.z(j, k)) ? 1 : 0;
  return mask;
}

BoundaryMap BoundaryMap::from_grid(const DiscGrid& u, int upsample) {
  BoundaryMap m;
  m.n_ = u.n();
  m.rmax_ = jhol::resolvable_radius(u);
  m.grid_ = std::make_shared<const DiscGrid>(upsample > 1 ? upsample_theta(u, upsample) : u);
  return m;
}

BoundaryMap BoundaryMap::analytic(int n, std::function<CVec(Complex)> f) {
  BoundaryMap m;
  m.n_ = n;
  m.rmax_ = 1.0;
  m.f_ = std::move(f);
  return m;
}

CVec BoundaryMap::operator()(Complex z) const {
  if (grid_) return interp_cubic(*grid_, z);
  return f_(z);
}

std::vector<double> geometric_schedule(double t0, double ratio, int count) {
  std::vector<double> t(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = t0 * std::pow(ratio, i);
  return t;
}

std::vector<double> default_schedule(const BoundaryMap& u, double nu) {
  const double cn = std::cos(nu);
  const double t0 = 0.5 * cn;
  if (!u.grid_backed()) return geometric_schedule(t0, 0.5, 40);
  // Smallest t with |zeta(t)| still inside the resolvable radius.
  const double rr = u.resolvable_radius();
  const double t_min = cn - std::sqrt(cn * cn - (1.0 - rr * rr));
  if (!(t_min < t0)) return {t0};
  const int count = static_cast<int>(std::ceil(std::log(t_min / t0) / std::log(0.75))) + 1;
  return geometric_schedule(t0, std::pow(t_min / t0, 1.0 / (count - 1)), count);
}

namespace {

double max_pairwise_gap(const std::vector<CVec>& v) {
  double gap = 0.0;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      double s = 0.0;
      for (std::size_t c = 0; c < v[a].size(); ++c) s += std::norm(v[a][c] - v[b][c]);
      gap = std::max(gap, std::sqrt(s));
    }
  return gap;
}

}  // namespace

RayTrace ray_trace(const BoundaryMap& u, double theta, double nu, const std::vector<double>& t_schedule,
                   double cauchy_tol, int window) {
  if (!(std::abs(nu) < kPi / 2)) throw DomainError("ray_trace: |nu| must be below pi/2");
  if (window < 2) throw InputError("ray_trace: Cauchy window must be at least 2");
  for (std::size_t i = 0; i < t_schedule.size(); ++i) {
    if (!(t_schedule[i] > 0.0)) throw InputError("ray_trace: t values must be positive");
    if (i > 0 && !(t_schedule[i] < t_schedule[i - 1])) throw InputError("ray_trace: t must strictly decrease");
  }
  RayTrace out;
  out.theta = theta;
  out.nu = nu;
  const Complex vertex = std::polar(1.0, theta);
  const Complex dir = std::polar(1.0, theta - nu);
  for (double t : t_schedule) {
    const Complex zeta = vertex - t * dir;
    if (std::abs(zeta) > 1.0) throw DomainError("ray_trace: sample point outside the closed disc");
    if (!u.resolvable(zeta)) {
      out.truncated = true;
      break;
    }
    out.samples.push_back({t, u(zeta)});
  }
  const int m = std::min<int>(window, static_cast<int>(t_schedule.size()));
  if (m >= 2 && static_cast<int>(out.samples.size()) >= m) {
    std::vector<CVec> tail;
    for (std::size_t i = out.samples.size() - static_cast<std::size_t>(m); i < out.samples.size(); ++i)
      tail.push_back(out.samples[i].value);
    out.cauchy_gap = max_pairwise_gap(tail);
    if (out.cauchy_gap < cauchy_tol) out.limit_estimate = out.samples.back().value;
  } else {
    out.cauchy_gap = std::numeric_limits<double>::infinity();
  }
  return out;
}

std::optional<CVec> nontangential_limit(const BoundaryMap& u, double theta, const std::vector<double>& alphas,
                                        const NtLimitOptions& opts) {
  if (alphas.empty()) throw InputError("nontangential_limit: no apertures given");
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0)) throw InputError("nontangential_limit: apertures must lie in (0, 1)");
  static constexpr double kOffsets[] = {0.0, -0.45, 0.45, -0.9, 0.9};
  const std::size_t used = opts.restricted ? 1 : alphas.size();
  std::optional<CVec> common;
  for (std::size_t ia = 0; ia < used; ++ia) {
    const double alpha = alphas[ia];
    std::vector<std::vector<CVec>> levels;
    for (int i = 0; i < opts.levels; ++i) {
      const double t = opts.t0 * std::pow(opts.ratio, i);
      const double rho = 1.0 - t;
      if (rho > u.resolvable_radius()) break;
      const double width = 2.0 * std::asin(std::min(1.0, alpha * t / (2.0 * rho)));
      std::vector<CVec> net;
      for (double f : kOffsets) net.push_back(u(std::polar(rho, theta + f * width)));
      levels.push_back(std::move(net));
    }
    if (static_cast<int>(levels.size()) < opts.window) return std::nullopt;
    std::vector<CVec> tail;
    for (std::size_t i = levels.size() - static_cast<std::size_t>(opts.window); i < levels.size(); ++i)
      tail.insert(tail.end(), levels[i].begin(), levels[i].end());
    if (!(max_pairwise_gap(tail) < opts.cauchy_tol)) return std::nullopt;
    const CVec estimate = levels.back().front();
    if (common && !(max_pairwise_gap({*common, estimate}) < opts.cauchy_tol)) return std::nullopt;
    if (!common) common = estimate;
  }
  return common;
}

double poincare_distance(Complex z, Complex w) {
  const double x = std::abs(z - w) / std::abs(1.0 - std::conj(w) * z);
  return 2.0 * std::atanh(std::min(x, 1.0));
}

SchwarzReport schwarz_bound_check(const DiscGrid& u, double c, double radius_limit) {
  if (!(c > 0.0)) throw InputError("schwarz_bound_check: C must be positive");
  const int nr = u.n_r();
  const int nt = u.n_theta();
  const Wirtinger d = wirtinger_derivatives(u, Exec::parallel);

  std::vector<std::pair<int, int>> nodes;
  for (int j = 0; j < nr; ++j)
    if (u.r(j) <= radius_limit)
      for (int k = 0; k < nt; ++k) nodes.emplace_back(j, k);
  if (nodes.empty()) throw InputError("schwarz_bound_check: no nodes inside the radius limit");

  SchwarzReport rep;
  rep.c_tested = c;
  double dc = 0.0;
  for (auto [j, k] : nodes) {
    // Gram matrix of the real Jacobian columns d/dx and d/dy.
    double gxx = 0.0, gyy = 0.0, gxy = 0.0;
    for (int cc = 0; cc < u.n(); ++cc) {
      const Complex ux = d.dz(cc, j, k) + d.dzbar(cc, j, k);
      const Complex uy = Complex(0.0, 1.0) * (d.dz(cc, j, k) - d.dzbar(cc, j, k));
      gxx += std::norm(ux);
      gyy += std::norm(uy);
      gxy += ux.real() * uy.real() + ux.imag() * uy.imag();
    }
    const double tr = gxx + gyy;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (gxx - gyy) * (gxx - gyy) + gxy * gxy));
    const double sigma = std::sqrt(std::max(0.0, 0.5 * tr + disc));
    dc = std::max(dc, sigma * (1.0 - u.r(j)));
  }
  rep.derivative_c = dc;

  auto dist = [&](int j0, int k0, int j1, int k1) {
    double s = 0.0;
    for (int cc = 0; cc < u.n(); ++cc) s += std::norm(u(cc, j0, k0) - u(cc, j1, k1));
    return std::sqrt(s);
  };
  // Neighbouring pairs plus all pairs of a strided subsample of about 400 nodes.
  const std::size_t stride = std::max<std::size_t>(1, nodes.size() / 400);
  std::vector<std::pair<int, int>> sub;
  for (std::size_t i = 0; i < nodes.size(); i += stride) sub.push_back(nodes[i]);
  const int ns = static_cast<int>(sub.size());
  double pc = 0.0;
  long pairs = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : pc) reduction(+ : pairs)
  for (int a = 0; a < ns; ++a) {
    const auto [ja, ka] = sub[static_cast<std::size_t>(a)];
    for (int b = a + 1; b < ns; ++b) {
      const auto [jb, kb] = sub[static_cast<std::size_t>(b)];
      const double delta = poincare_distance(u.z(ja, ka), u.z(jb, kb));
      pc = std::max(pc, dist(ja, ka, jb, kb) / delta);
      ++pairs;
    }
  }
  for (auto [j, k] : nodes) {
    const int k1 = (k + 1) % nt;
    pc = std::max(pc, dist(j, k, j, k1) / poincare_distance(u.z(j, k), u.z(j, k1)));
    ++pairs;
    if (j + 1 < nr && u.r(j + 1) <= radius_limit) {
      pc = std::max(pc, dist(j, k, j + 1, k) / poincare_distance(u.z(j, k), u.z(j + 1, k)));
      ++pairs;
    }
  }
  rep.distance_c = pc;
  rep.pairs = pairs;
  rep.minimal_c = std::max(dc, pc);
  rep.passed = rep.minimal_c <= c;
  return rep;
}

}  // namespace jhol
