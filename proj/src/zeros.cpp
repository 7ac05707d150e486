#include "jhol/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>

namespace jhol {

namespace {

// Axis-aligned box in (r, theta) when polar, in (x, y) otherwise.
struct Box {
  double a0, a1, b0, b1;
  bool polar;

  Complex point(double a, double b) const { return polar ? std::polar(a, b) : Complex(a, b); }
  double size() const { return polar ? std::max(a1 - a0, a1 * (b1 - b0)) : std::max(a1 - a0, b1 - b0); }
  Complex centre() const { return point(0.5 * (a0 + a1), 0.5 * (b0 + b1)); }
};

class Winder {
 public:
  Winder(std::function<Complex(Complex)> f, double eps) : f_(std::move(f)), eps_(eps) {}

  // Winding number of f along the box boundary; nullopt if f nearly vanishes on it.
  std::optional<int> winding(const Box& box, int samples) {
    degenerate_ = false;
    const std::array<std::array<double, 2>, 5> corners = {
        {{box.a0, box.b0}, {box.a1, box.b0}, {box.a1, box.b1}, {box.a0, box.b1}, {box.a0, box.b0}}};
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
      const auto& s = corners[static_cast<std::size_t>(e)];
      const auto& t = corners[static_cast<std::size_t>(e + 1)];
      Complex prev = eval(box, s[0], s[1]);
      for (int i = 1; i <= samples; ++i) {
        const double w0 = static_cast<double>(i - 1) / samples;
        const double w1 = static_cast<double>(i) / samples;
        const double pa = s[0] + w0 * (t[0] - s[0]), pb = s[1] + w0 * (t[1] - s[1]);
        const double qa = s[0] + w1 * (t[0] - s[0]), qb = s[1] + w1 * (t[1] - s[1]);
        const Complex next = eval(box, qa, qb);
        total += segment(box, pa, pb, prev, qa, qb, next, 0);
        prev = next;
      }
    }
    if (degenerate_) return std::nullopt;
    return static_cast<int>(std::lround(total / kTwoPi));
  }

 private:
  Complex eval(const Box& box, double a, double b) {
    const Complex v = f_(box.point(a, b));
    if (std::abs(v) < eps_) degenerate_ = true;
    return v;
  }

  double segment(const Box& box, double pa, double pb, Complex fp, double qa, double qb, Complex fq, int depth) {
    const double step = std::arg(fq / fp);
    if (std::abs(step) < kPi / 3 || degenerate_) return step;
    if (depth >= 40) {
      degenerate_ = true;  // unresolved crossing: the zero lies on the edge
      return step;
    }
    const double ma = 0.5 * (pa + qa), mb = 0.5 * (pb + qb);
    const Complex fm = eval(box, ma, mb);
    return segment(box, pa, pb, fp, ma, mb, fm, depth + 1) + segment(box, ma, mb, fm, qa, qb, fq, depth + 1);
  }

  std::function<Complex(Complex)> f_;
  double eps_;
  bool degenerate_ = false;
};

constexpr std::array<double, 4> kSplits = {0.4371, 0.5813, 0.3127, 0.6642};

// Bisects a box of known winding w down to zeros; appends (location, multiplicity).
void refine(Winder& wd, const Box& box, int w, const ZeroOptions& opts, std::vector<Zero>& out, int depth) {
  if (box.size() < opts.location_tol || depth > 200) {
    out.push_back({box.centre(), w, true});
    return;
  }
  for (double s : kSplits) {
    const double am = box.a0 + s * (box.a1 - box.a0);
    const double bm = box.b0 + s * (box.b1 - box.b0);
    const std::array<Box, 4> kids = {Box{box.a0, am, box.b0, bm, box.polar}, Box{am, box.a1, box.b0, bm, box.polar},
                                     Box{box.a0, am, bm, box.b1, box.polar}, Box{am, box.a1, bm, box.b1, box.polar}};
    std::array<int, 4> wk{};
    bool ok = true;
    int sum = 0;
    for (std::size_t i = 0; i < 4 && ok; ++i) {
      auto r = wd.winding(kids[i], opts.edge_samples);
      if (!r) ok = false;
      else {
        wk[i] = *r;
        sum += *r;
      }
    }
    if (!ok || sum != w) continue;
    for (std::size_t i = 0; i < 4; ++i)
      if (wk[i] != 0) refine(wd, kids[i], wk[i], opts, out, depth + 1);
    return;
  }
  // No split separated cleanly: the zero sits on every trial line to working precision.
  out.push_back({box.centre(), w, true});
}

std::vector<Zero> dedupe(std::vector<Zero> zs, double tol) {
  std::vector<Zero> out;
  for (const auto& z : zs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Zero& o) { return std::abs(o.zeta - z.zeta) < tol; });
    if (it == out.end()) out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](const Zero& a, const Zero& b) {
    if (std::abs(a.zeta) != std::abs(b.zeta)) return std::abs(a.zeta) < std::abs(b.zeta);
    return std::arg(a.zeta) < std::arg(b.zeta);
  });
  return out;
}

std::vector<Zero> planar_zeros(const DiscGrid& u, Complex p, const ZeroOptions& opts) {
  const DiscGrid fine = opts.upsample > 1 ? upsample_theta(u, opts.upsample) : u;
  double scale = 0.0;
  for (auto v : u.data()) scale = std::max(scale, std::abs(v - p));
  Winder wd([&](Complex z) { return interp_lagrange(fine, 0, z, opts.interp_points) - p; }, 1e-13 * (1.0 + scale));

  const int nr = u.n_r();
  const int nt = u.n_theta();
  const double r0 = u.r(0);
  std::vector<std::pair<Box, int>> hits;
  auto test = [&](Box b) {
    // A zero on the boundary merges the box with its neighbours.
    for (int grow = 0; grow < 3; ++grow) {
      auto w = wd.winding(b, 2);
      if (w) {
        if (*w != 0) hits.emplace_back(b, *w);
        return;
      }
      if (b.polar) {
        const double dr = u.h(), dt = u.dtheta();
        b = {std::max(r0, b.a0 - dr), std::min(u.r(nr - 1), b.a1 + dr), b.b0 - dt, b.b1 + dt, true};
      } else {
        b = {b.a0 - 0.5 * r0, b.a1 + 0.5 * r0, b.b0 - 0.5 * r0, b.b1 + 0.5 * r0, false};
      }
    }
  };
  test(Box{-r0, r0, -r0, r0, false});
  for (int j = 0; j + 1 < nr; ++j)
    for (int k = 0; k < nt; ++k) test(Box{u.r(j), u.r(j + 1), u.theta(k), u.theta(k) + u.dtheta(), true});

  std::vector<Zero> found;
  for (const auto& [b, w] : hits) {
    if (w < 0) continue;  // orientation-reversing preimages are not holomorphic zeros
    refine(wd, b, w, opts, found, 0);
  }
  std::erase_if(found, [](const Zero& z) { return z.multiplicity <= 0; });
  return dedupe(std::move(found), std::max(1e-8, 100.0 * opts.location_tol));
}

std::vector<Zero> clustered_zeros(const DiscGrid& u, const CVec& p) {
  const int nr = u.n_r();
  const int nt = u.n_theta();
  auto g = [&](int j, int k) {
    double s = 0.0;
    for (int c = 0; c < u.n(); ++c) s += std::norm(u(c, j, k) - p[static_cast<std::size_t>(c)]);
    return std::sqrt(s);
  };
  auto gz = [&](Complex z) {
    const CVec v = interp_cubic(u, z);
    double s = 0.0;
    for (int c = 0; c < u.n(); ++c) s += std::norm(v[static_cast<std::size_t>(c)] - p[static_cast<std::size_t>(c)]);
    return std::sqrt(s);
  };
  std::vector<Zero> found;
  for (int j = 0; j < nr; ++j)
    for (int k = 0; k < nt; ++k) {
      const double v = g(j, k);
      double spread = 0.0;
      bool minimum = true;
      for (int dj = -1; dj <= 1; ++dj)
        for (int dk = -1; dk <= 1; ++dk) {
          if (dj == 0 && dk == 0) continue;
          int jj = j + dj, kk = (k + dk + nt) % nt;
          if (jj < 0) {
            jj = 0;
            kk = (kk + nt / 2) % nt;
          }
          if (jj >= nr) continue;
          const double w = g(jj, kk);
          if (w < v) minimum = false;
          spread = std::max(spread, std::abs(w - v));
        }
      if (!minimum || v > spread) continue;
      // Pattern search on the interpolant.
      Complex z = u.z(j, k);
      double best = gz(z);
      for (double step = u.h(); step > 1e-12; step *= 0.5) {
        bool moved = true;
        while (moved) {
          moved = false;
          for (Complex d : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
            const Complex c = z + step * d;
            if (std::abs(c) >= resolvable_radius(u)) continue;
            const double val = gz(c);
            if (val < best) {
              best = val;
              z = c;
              moved = true;
            }
          }
        }
      }
      found.push_back({z, 1, false});
    }
  return dedupe(std::move(found), 2.0 * u.h());
}

}  // namespace

std::vector<Zero> extract_zeros(const DiscGrid& u, const CVec& p, const ZeroOptions& opts) {
  if (static_cast<int>(p.size()) != u.n()) throw InputError("extract_zeros: target dimension does not match grid");
  if (u.n() == 1) return planar_zeros(u, p[0], opts);
  return clustered_zeros(u, p);
}

double blaschke_sum(const std::vector<Zero>& zeros) {
  double s = 0.0;
  for (const auto& z : zeros) {
    const double r = std::abs(z.zeta);
    if (!(r < 1.0)) throw InputError("blaschke_sum: zero on or outside the unit circle");
    if (z.multiplicity < 0) throw InputError("blaschke_sum: negative multiplicity");
    s += z.multiplicity * (1.0 - r);
  }
  return s;
}

}  // namespace jhol
