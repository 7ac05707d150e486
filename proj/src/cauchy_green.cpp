#include "jhol/cauchy_green.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace jhol {

namespace {

void check_p(double p) {
  if (!(p > 2.0) || !std::isfinite(p)) throw InputError("p must lie in (2, inf)");
}

double node_norm_pow(const DiscGrid& f, int j, int k, double p) {
  double s = 0.0;
  for (int c = 0; c < f.n(); ++c) s += std::norm(f(c, j, k));
  return std::pow(s, 0.5 * p);
}

double lp_sum(const DiscGrid& f, double p) {
  double total = 0.0;
  for (int j = 0; j < f.n_r(); ++j) {
    double ring = 0.0;
    for (int k = 0; k < f.n_theta(); ++k) ring += node_norm_pow(f, j, k, p);
    total += f.cell_area(j) * ring;
  }
  return total;
}

double halton(int i, int base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

}  // namespace

Wirtinger wirtinger_derivatives(const DiscGrid& u, Exec exec) { return wirtinger_kernel(u, exec); }

DiscGrid apply_cauchy_green(const DiscGrid& f, CgMethod method, Exec exec) {
  return method == CgMethod::modal ? cauchy_green_modal(f, exec) : cauchy_green_direct(f, exec);
}

double lp_norm(const DiscGrid& f, double p) {
  if (!(p >= 1.0)) throw InputError("p must be at least 1");
  return std::pow(lp_sum(f, p), 1.0 / p);
}

double raw_sobolev_norm(const DiscGrid& f, double p, Exec exec) {
  check_p(p);
  const auto d = wirtinger_derivatives(f, exec);
  return std::pow(lp_sum(f, p) + lp_sum(d.dz, p) + lp_sum(d.dzbar, p), 1.0 / p);
}

double sobolev_norm(const DiscGrid& f, const SobolevSetting& s, Exec exec) {
  return s.scale_constant * raw_sobolev_norm(f, s.p, exec);
}

std::vector<DiscGrid> calibration_corpus(int n_r, int n_theta) {
  std::vector<DiscGrid> out;
  out.push_back(DiscGrid::sample_scalar(n_r, n_theta, [](Complex) { return Complex(1.0); }));
  for (double eps : {0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0})
    out.push_back(DiscGrid::sample_scalar(n_r, n_theta, [eps](Complex z) { return 1.0 + eps * z; }));
  for (int m = 1; m <= 6; ++m)
    out.push_back(DiscGrid::sample_scalar(n_r, n_theta, [m](Complex z) {
      return std::pow(0.5 * (1.0 + z * std::polar(1.0, 0.7)), m);
    }));
  for (double sigma : {0.2, 0.4, 0.8, 1.6})
    out.push_back(DiscGrid::sample_scalar(n_r, n_theta, [sigma](Complex z) {
      return Complex(std::exp(-std::norm(z - 0.9) / (sigma * sigma)));
    }));
  for (int i = 0; i < 16; ++i) out.push_back(cp_trial_function(i, n_r, n_theta));
  return out;
}

double calibrate_scale(double p, int n_r, int n_theta, double margin) {
  check_p(p);
  static std::mutex mutex;
  static std::map<std::tuple<double, int, int, double>, double> cache;
  const auto key = std::make_tuple(p, n_r, n_theta, margin);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  double worst = 0.0;
  for (const auto& f : calibration_corpus(n_r, n_theta)) {
    const double raw = raw_sobolev_norm(f, p);
    if (raw > 0.0) worst = std::max(worst, sup_norm(f) / raw);
  }
  const double scale = margin * worst;
  std::lock_guard lock(mutex);
  cache.emplace(key, scale);
  return scale;
}

DiscGrid cp_trial_function(int index, int n_r, int n_theta) {
  using F = std::function<Complex(Complex)>;
  static const F fixed[] = {
      [](Complex) { return Complex(1.0); },
      [](Complex z) { return z; },
      [](Complex z) { return std::conj(z); },
      [](Complex z) { return Complex(std::norm(z)); },
      [](Complex z) { return std::conj(z) * std::conj(z); },
      [](Complex z) { return std::exp(z); },
      [](Complex z) { return Complex(std::sin(3.0 * z.real()) * std::cos(2.0 * z.imag())); },
      [](Complex z) { return z * std::conj(z) * std::conj(z); },
  };
  constexpr int n_fixed = static_cast<int>(std::size(fixed));
  if (index < 0) throw InputError("trial index must be nonnegative");
  if (index < n_fixed) return DiscGrid::sample_scalar(n_r, n_theta, fixed[index]);
  // Gaussian bumps with Halton centres, cycling widths and phases.
  const int i = index - n_fixed + 1;
  const double rad = 0.85 * std::sqrt(halton(i, 2));
  const double ang = kTwoPi * halton(i, 3);
  const Complex centre = std::polar(rad, ang);
  static const double widths[] = {0.5, 0.35, 0.25, 0.18};
  const double sigma = widths[i % 4];
  const Complex phase = std::polar(1.0, 0.5 * i);
  return DiscGrid::sample_scalar(n_r, n_theta, [=](Complex z) {
    return phase * std::exp(-std::norm(z - centre) / (sigma * sigma));
  });
}

double estimate_cp(const SobolevSetting& s, int trial_count) {
  if (trial_count < 8) throw InputError("estimate_cp needs at least 8 trials");
  check_p(s.p);
  double best = 0.0;
  for (int i = 0; i < trial_count; ++i) {
    const DiscGrid f = cp_trial_function(i, s.n_r, s.n_theta);
    const double denom = s.scale_constant * lp_norm(f, s.p);
    if (denom <= 0.0) continue;
    best = std::max(best, sobolev_norm(apply_cauchy_green(f), s) / denom);
  }
  return best;
}

SobolevSetting make_sobolev_setting(double p, int n_r, int n_theta, int trial_count) {
  check_p(p);
  check_resolution(n_r, n_theta);
  static std::mutex mutex;
  static std::map<std::tuple<double, int, int, int>, SobolevSetting> cache;
  const auto key = std::make_tuple(p, n_r, n_theta, trial_count);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  SobolevSetting s;
  s.p = p;
  s.n_r = n_r;
  s.n_theta = n_theta;
  s.scale_constant = calibrate_scale(p, n_r, n_theta);
  s.cp_estimate = estimate_cp(s, trial_count);
  std::lock_guard lock(mutex);
  cache.emplace(key, s);
  return s;
}

}  // namespace jhol
