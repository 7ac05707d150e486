#include "jhol/psh.hpp"

#include <algorithm>
#include <cmath>

#include "jhol/cauchy_green.hpp"

namespace jhol {

namespace {

// Cubic interpolation stencils span two cells on either side of a sample.
constexpr double kStencilReach = 2.0;

double cnorm(const CVec& z) { return norm(std::span<const Complex>(z)); }

CVec sub(const CVec& a, const CVec& b) {
  CVec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
  std::vector<double> x(static_cast<std::size_t>(m));
  std::vector<double> w(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = t;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

double smoothstep_cutoff(double d, double radius) {
  const double inner = radius / 6.0;
  const double t = std::clamp((d - inner) / inner, 0.0, 1.0);
  return 1.0 - t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

void check_options(const SubmeanOptions& o) {
  if (o.max_radius_steps < 1 || o.j_stride < 1 || o.k_stride < 1 || o.samples < 8 || o.upsample < 1)
    throw InputError("invalid sub-mean-value options");
}

double euclid(const DiscGrid& g, int j, int k) {
  double s = 0.0;
  for (int c = 0; c < g.n(); ++c) s += std::norm(g(c, j, k));
  return std::sqrt(s);
}

}  // namespace

double chirka(const CVec& z, const CVec& p, double A) {
  const double d = cnorm(sub(z, p));
  if (d == 0.0) return kNegInf;
  return std::log(d) + A * d;
}

double loglog_barrier(const CVec& z, const CVec& f_values, double A) {
  const double s = std::pow(cnorm(f_values), 2);
  if (s >= 1.0) throw DomainError("log-log barrier needs |f|^2 < 1");
  if (s == 0.0) return kNegInf;
  return -std::log(-std::log(s)) + A * std::pow(cnorm(z), 2);
}

ScalarFunction constant_function(double c) {
  ScalarFunction f;
  f.value = [c](const CVec&) { return c; };
  f.gradient = [](const CVec& z) { return RealVec::Zero(2 * static_cast<Eigen::Index>(z.size())).eval(); };
  f.smoothness = Smoothness::C2;
  f.name = "constant";
  return f;
}

ScalarFunction squared_norm_function(double sign) {
  ScalarFunction f;
  f.value = [sign](const CVec& z) { return sign * std::pow(cnorm(z), 2); };
  f.gradient = [sign](const CVec& z) { return (2.0 * sign * to_real(z)).eval(); };
  f.smoothness = Smoothness::C2;
  f.name = sign >= 0 ? "|z|^2" : "-|z|^2";
  return f;
}

ScalarFunction chirka_function(const CVec& p, double A) {
  ScalarFunction f;
  f.value = [p, A](const CVec& z) { return chirka(z, p, A); };
  f.smoothness = Smoothness::C0;
  f.poles = {p};
  f.name = "chirka";
  return f;
}

ScalarFunction loglog_function(double scale, double A) {
  ScalarFunction f;
  f.value = [scale, A](const CVec& z) { return loglog_barrier(z, CVec{scale * z.at(0)}, A); };
  f.smoothness = Smoothness::C0;
  f.poles = {CVec{Complex{}}};
  f.name = "loglog";
  return f;
}

ScalarFunction local_barrier_function(const CVec& p, const RealMat& frame_inverse, double A, double B,
                                      double C, double radius) {
  ScalarFunction f;
  f.value = [=](const CVec& z) {
    const CVec d = sub(z, p);
    const double chi = smoothstep_cutoff(cnorm(d), radius);
    double local = 0.0;
    if (chi > 0.0) {
      const double l = (frame_inverse * to_real(d)).norm();
      if (l == 0.0) return kNegInf;
      local = chi * (std::log(l) + A * l);
    }
    return local + B * std::pow(cnorm(z), 2) - C;
  };
  f.smoothness = Smoothness::C0;
  f.poles = {p};
  f.name = "local_barrier";
  return f;
}

CircleNet build_circle_net(const DiscGrid& u, const SubmeanOptions& opts) {
  check_options(opts);
  const DiscGrid fine = upsample_theta(u, opts.upsample);
  const auto w = wirtinger_derivatives(u);
  const DiscGrid dz = upsample_theta(w.dz, opts.upsample);
  const DiscGrid dzb = upsample_theta(w.dzbar, opts.upsample);
  CircleNet net;
  net.n = u.n();
  net.h = u.h();
  const double rmax = resolvable_radius(u);
  auto pole_clearance = [&](Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex p : opts.disc_poles) d = std::min(d, std::abs(z - p));
    return d;
  };
  for (int j = 0; j < u.n_r(); j += opts.j_stride)
    for (int k = 0; k < u.n_theta(); k += opts.k_stride) {
      const Complex c = u.z(j, k);
      const int idx = static_cast<int>(net.centers.size());
      net.centers.push_back(c);
      net.center_values.push_back(u.value(j, k));
      net.center_dnorm.push_back(euclid(w.dz, j, k) + euclid(w.dzbar, j, k));
      net.center_pole_clearance.push_back(pole_clearance(c));
      for (int m = 1; m <= opts.max_radius_steps; ++m) {
        const double r = m * u.h();
        if (std::abs(c) + r > rmax + 1e-12) break;
        CircleNet::Circle circ;
        circ.center = idx;
        circ.radius = r;
        net.circles.push_back(std::move(circ));
      }
    }
  const int count = static_cast<int>(net.circles.size());
  const int ns = opts.samples;
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < count; ++i) {
    auto& circ = net.circles[static_cast<std::size_t>(i)];
    const Complex c = net.centers[static_cast<std::size_t>(circ.center)];
    const auto n = static_cast<std::size_t>(net.n);
    circ.values.resize(static_cast<std::size_t>(ns) * n);
    circ.dnorm.resize(static_cast<std::size_t>(ns));
    circ.disc_pole_clearance = std::numeric_limits<double>::infinity();
    for (int s = 0; s < ns; ++s) {
      const Complex z = c + std::polar(circ.radius, kTwoPi * s / ns);
      const CVec v = interp_cubic(fine, z);
      std::copy(v.begin(), v.end(), circ.values.begin() + static_cast<std::ptrdiff_t>(s * n));
      const double dn = norm(std::span<const Complex>(interp_cubic(dz, z))) +
                        norm(std::span<const Complex>(interp_cubic(dzb, z)));
      circ.dnorm[static_cast<std::size_t>(s)] = dn;
      for (Complex p : opts.disc_poles)
        circ.disc_pole_clearance = std::min(circ.disc_pole_clearance, std::abs(z - p));
    }
  }
  return net;
}

SubmeanReport submean_on_net(const CircleNet& net, const ScalarFunction& rho, double tol,
                             const SubmeanOptions& opts) {
  SubmeanReport rep;
  rep.tol = tol;
  const double h = net.h;
  // Estimated distance in the disc to a preimage of a pole of rho.
  auto target_clearance = [&](std::span<const Complex> v, double dnorm) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : rho.poles) {
      if (p.size() != v.size()) continue;
      double s2 = 0.0;
      for (std::size_t c = 0; c < v.size(); ++c) s2 += std::norm(v[c] - p[c]);
      d = std::min(d, std::sqrt(s2) / std::max(dnorm, 1e-300));
    }
    return d;
  };
  const auto n = static_cast<std::size_t>(net.n);
  const std::size_t nc = net.centers.size();
  std::vector<double> cval(nc);
  std::vector<char> cuse(nc, 0);
  for (std::size_t i = 0; i < nc; ++i) {
    const double v = rho.value(net.center_values[i]);
    cval[i] = v;
    const bool near_pole = net.center_pole_clearance[i] < kStencilReach * h ||
                           target_clearance(net.center_values[i], net.center_dnorm[i]) < h;
    if (near_pole) {
      ++rep.excluded_centers;
      continue;
    }
    if (!(v > opts.floor)) continue;  // -inf centres pass vacuously
    cuse[i] = 1;
    ++rep.centers;
  }
  const int count = static_cast<int>(net.circles.size());
  std::vector<double> viol(static_cast<std::size_t>(count), 0.0);
  std::vector<char> state(static_cast<std::size_t>(count), 0);  // 0 skip, 1 tested, 2 excluded
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < count; ++i) {
    const auto& circ = net.circles[static_cast<std::size_t>(i)];
    if (!cuse[static_cast<std::size_t>(circ.center)]) continue;
    bool excluded = circ.disc_pole_clearance < kStencilReach * h;
    double sum = 0.0;
    CVec v(n);
    for (std::size_t s = 0; s < circ.dnorm.size() && !excluded; ++s) {
      const std::span<const Complex> sample(circ.values.data() + s * n, n);
      if (target_clearance(sample, circ.dnorm[s]) < 0.5 * h) {
        excluded = true;
        break;
      }
      std::copy(sample.begin(), sample.end(), v.begin());
      sum += std::max(rho.value(v), opts.floor);
    }
    if (excluded) {
      state[static_cast<std::size_t>(i)] = 2;
      continue;
    }
    const double mean = sum / static_cast<double>(circ.dnorm.size());
    viol[static_cast<std::size_t>(i)] = cval[static_cast<std::size_t>(circ.center)] - mean;
    state[static_cast<std::size_t>(i)] = 1;
  }
  for (int i = 0; i < count; ++i) {
    const auto& circ = net.circles[static_cast<std::size_t>(i)];
    if (state[static_cast<std::size_t>(i)] == 2) {
      ++rep.excluded_circles;
      continue;
    }
    if (state[static_cast<std::size_t>(i)] != 1) continue;
    ++rep.circles;
    const double v = viol[static_cast<std::size_t>(i)];
    if (v > rep.worst_violation) {
      rep.worst_violation = v;
      rep.worst_center = net.centers[static_cast<std::size_t>(circ.center)];
      rep.worst_radius = circ.radius;
    }
    rep.min_defect_ratio = std::min(rep.min_defect_ratio, -v / (circ.radius * circ.radius));
  }
  rep.passed = !(rep.worst_violation > tol);
  return rep;
}

SubmeanReport is_subharmonic_on_disc(const DiscGrid& lambda, double tol, const SubmeanOptions& opts) {
  DiscGrid g = DiscGrid::zeros_like(lambda, 1);
  for (int j = 0; j < lambda.n_r(); ++j)
    for (int k = 0; k < lambda.n_theta(); ++k) {
      const double v = lambda(0, j, k).real();
      g(0, j, k) = std::isnan(v) ? Complex(opts.floor) : Complex(std::max(v, opts.floor));
    }
  const CircleNet net = build_circle_net(g, opts);
  ScalarFunction re;
  re.value = [](const CVec& z) { return z[0].real(); };
  return submean_on_net(net, re, tol, opts);
}

DiscCorpus prepare_corpus(const std::vector<Witness>& discs, double residual_threshold,
                          const SubmeanOptions& opts) {
  DiscCorpus corpus;
  for (std::size_t i = 0; i < discs.size(); ++i) {
    if (!(discs[i].residual <= residual_threshold)) {
      corpus.rejected.push_back(static_cast<int>(i));
      continue;
    }
    corpus.accepted.push_back(static_cast<int>(i));
    corpus.nets.push_back(build_circle_net(discs[i].u, opts));
  }
  return corpus;
}

PshReport check_psh_on_corpus(const ScalarFunction& rho, const DiscCorpus& corpus, double tol,
                              const SubmeanOptions& opts) {
  PshReport rep;
  rep.accepted = static_cast<int>(corpus.nets.size());
  rep.rejected = static_cast<int>(corpus.rejected.size());
  bool all = true;
  for (std::size_t i = 0; i < corpus.nets.size(); ++i) {
    auto r = submean_on_net(corpus.nets[i], rho, tol, opts);
    all = all && r.passed;
    if (r.worst_violation > rep.worst_violation) {
      rep.worst_violation = r.worst_violation;
      rep.worst_disc = corpus.accepted[i];
    }
    rep.min_defect_ratio = std::min(rep.min_defect_ratio, r.min_defect_ratio);
    rep.per_disc.push_back(std::move(r));
  }
  rep.passed = all && rep.accepted > 0;
  return rep;
}

PshReport check_psh_along_discs(const ScalarFunction& rho, const std::vector<Witness>& discs, double tol,
                                double residual_threshold, const SubmeanOptions& opts) {
  return check_psh_on_corpus(rho, prepare_corpus(discs, residual_threshold, opts), tol, opts);
}

BisectionResult bisect_threshold(const std::function<bool(double)>& passes, double lo, double hi,
                                 double rel_tol) {
  BisectionResult res;
  ++res.evaluations;
  if (passes(lo)) {
    res.found = true;
    res.value = lo;
    return res;
  }
  ++res.evaluations;
  if (!passes(hi)) return res;
  while (hi - lo > rel_tol * hi && hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    ++res.evaluations;
    (passes(mid) ? hi : lo) = mid;
  }
  res.found = true;
  res.value = hi;
  return res;
}

BisectionResult find_chirka_threshold(const CVec& p, const DiscCorpus& corpus, double tol,
                                      const SubmeanOptions& opts) {
  return bisect_threshold(
      [&](double A) { return check_psh_on_corpus(chirka_function(p, A), corpus, tol, opts).passed; });
}

double bump_value(const Bump& b, Complex z) {
  const double s2 = std::norm(z - b.center) / (b.radius * b.radius);
  if (s2 >= 1.0) return 0.0;
  return b.height * (1.0 - s2) * (1.0 - s2);
}

double bump_integral(const Bump& b) { return b.height * kPi * b.radius * b.radius / 3.0; }

WeakLaplacianReport weak_laplacian_test(const DiscGrid& mu, const std::vector<Bump>& bumps, double tol) {
  WeakLaplacianReport rep;
  DiscGrid re = DiscGrid::zeros_like(mu, 1);
  for (int j = 0; j < mu.n_r(); ++j)
    for (int k = 0; k < mu.n_theta(); ++k) re(0, j, k) = mu(0, j, k).real();
  const auto d = wirtinger_derivatives(re);
  for (std::size_t i = 0; i < bumps.size(); ++i) {
    const Bump& b = bumps[i];
    if (!(b.radius > 0.0) || std::abs(b.center) + b.radius >= 1.0 || b.height < 0.0) {
      rep.rejected.push_back(static_cast<int>(i));
      continue;
    }
    double acc = 0.0;
    for (int j = 0; j < mu.n_r(); ++j) {
      double ring = 0.0;
      for (int k = 0; k < mu.n_theta(); ++k) {
        const Complex z = mu.z(j, k);
        const double s2 = std::norm(z - b.center) / (b.radius * b.radius);
        if (s2 >= 1.0) continue;
        // grad(phi) and grad(mu) as complex numbers x + i y.
        const Complex gphi = -4.0 * b.height * (1.0 - s2) * (z - b.center) / (b.radius * b.radius);
        const Complex gmu = 2.0 * std::conj(d.dz(0, j, k));
        ring += (std::conj(gphi) * gmu).real();
      }
      acc += mu.cell_area(j) * ring;
    }
    rep.accepted.push_back(static_cast<int>(i));
    rep.pairings.push_back(-acc);
    rep.min_pairing = std::min(rep.min_pairing, -acc);
  }
  rep.passed = !rep.accepted.empty() && rep.min_pairing >= -tol;
  return rep;
}

Mollified mollify_structure(const Structure& j, int k, int sample_count, int gauss_points) {
  if (k < 1) throw InputError("mollification index k must be positive");
  if (gauss_points < 2 || gauss_points > 16) throw InputError("gauss_points must lie in [2, 16]");
  const int d = j.real_dim();
  const auto [gx, gw] = gauss_legendre(gauss_points);
  // Tensor nodes of the product bump prod (1 - y_i^2)^2, weights normalized.
  std::vector<RealVec> offsets;
  std::vector<double> weights;
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(gauss_points);
  double wsum = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    RealVec y(d);
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      const auto g = rem % static_cast<std::size_t>(gauss_points);
      rem /= static_cast<std::size_t>(gauss_points);
      y[a] = gx[g];
      w *= gw[g] * std::pow(1.0 - gx[g] * gx[g], 2);
    }
    offsets.push_back(y / static_cast<double>(k));
    weights.push_back(w);
    wsum += w;
  }
  for (auto& w : weights) w /= wsum;
  const double radius = j.domain_radius();
  auto base = j;
  auto field = [base, offsets, weights, radius, d](const RealVec& x) -> RealMat {
    RealMat acc = RealMat::Zero(d, d);
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      RealVec y = x + offsets[i];
      const double r = y.norm();
      if (r > radius) y *= radius / r;
      acc += weights[i] * base(y);
    }
    return project_to_complex_structure(acc);
  };
  Structure jk(j.n(), field, radius, std::nullopt, j.description() + " mollified");

  Mollified out{jk, k, 0.0, 0.0};
  double sup = 0.0;
  double dsup = 0.0;
  const double delta = 1e-3 / k;
  for (const auto& x : ball_samples(d, radius, sample_count)) {
    const RealMat jx = jk(x);
    out.eps = std::max(out.eps, operator_norm(jx - j(x)));
    sup = std::max(sup, operator_norm(jx));
    for (int a = 0; a < d; ++a) {
      RealVec xp = x + delta * RealVec::Unit(d, a);
      double step = delta;
      if (xp.norm() > radius) {
        xp = x - delta * RealVec::Unit(d, a);
        step = -delta;
      }
      dsup = std::max(dsup, operator_norm(jk(xp) - jx) / std::abs(step));
    }
  }
  out.c1_estimate = sup + dsup;
  out.structure = Structure(j.n(), field, radius, dsup, j.description() + " mollified");
  return out;
}

}  // namespace jhol
