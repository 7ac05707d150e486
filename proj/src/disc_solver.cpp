#include "jhol/disc_solver.hpp"

#include <cmath>
#include <exception>
#include <sstream>

namespace jhol {

namespace {

std::size_t node(const DiscGrid& u, int j, int k) {
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(u.n_theta()) + static_cast<std::size_t>(k);
}

RealVec node_real(const DiscGrid& u, int j, int k) {
  RealVec x(2 * u.n());
  for (int c = 0; c < u.n(); ++c) {
    x[2 * c] = u(c, j, k).real();
    x[2 * c + 1] = u(c, j, k).imag();
  }
  return x;
}

CVec check_point(const CVec& x, int n, const char* name) {
  if (static_cast<int>(x.size()) != n)
    throw InputError(std::string("point ") + name + " has wrong dimension");
  return x;
}

InnerResult inner_impl(const DiscGrid& v, const Structure& j, const CVec& a, const CVec& b,
                       const SobolevSetting& s, const SolveConfig& cfg) {
  const QField qf = q_field(v, j);
  InnerResult res{affine_disc(s.n_r, s.n_theta, a, b), {}};
  const double start = sobolev_norm(res.u, s);
  if (start > 1.0)
    throw BallEscapeError("initial affine disc lies outside the unit W^{1,p} ball", start);
  auto& tr = res.trace;
  for (int m = 0; m < cfg.max_inner; ++m) {
    DiscGrid next = normalize_ab(phi_frozen(res.u, qf), a, b);
    const double gap = sobolev_norm(next - res.u, s);
    const double nrm = sobolev_norm(next, s);
    if (!tr.gaps.empty() && tr.gaps.back() > 0.0) tr.ratios.push_back(gap / tr.gaps.back());
    tr.gaps.push_back(gap);
    tr.norms.push_back(nrm);
    tr.iterations = m + 1;
    res.u = std::move(next);
    if (!(nrm <= 1.0)) {
      std::ostringstream os;
      os.precision(12);
      os << "inner iterate " << m + 1 << " left the unit W^{1,p} ball (norm " << nrm << ")";
      throw BallEscapeError(os.str(), nrm);
    }
    if (gap < cfg.inner_tol) return res;
  }
  throw ConvergenceError("inner iteration reached max_inner without converging", tr.gaps);
}

void check_config(const SolveConfig& cfg) {
  if (!(cfg.inner_tol > 0.0) || !(cfg.outer_tol > 0.0) || !(cfg.residual_tol > 0.0))
    throw InputError("solver tolerances must be positive");
  if (cfg.max_inner < 1 || cfg.max_outer < 1) throw InputError("iteration caps must be at least 1");
  if (!(cfg.safety_factor >= 1.0)) throw InputError("safety_factor must be at least 1");
  if (!(cfg.contraction_limit > 0.0 && cfg.contraction_limit < 1.0))
    throw InputError("contraction_limit must lie in (0, 1)");
}

}  // namespace

QField q_field(const DiscGrid& v, const Structure& j) {
  if (v.n() != j.n()) throw InputError("map dimension does not match the structure");
  const int nr = v.n_r();
  const int nt = v.n_theta();
  double worst = -1.0;
  int wj = 0;
  int wk = 0;
  for (int jj = 0; jj < nr; ++jj)
    for (int k = 0; k < nt; ++k) {
      const double r = node_real(v, jj, k).norm();
      if (r > worst) {
        worst = r;
        wj = jj;
        wk = k;
      }
    }
  if (!j.contains(node_real(v, wj, wk))) {
    std::ostringstream os;
    os.precision(12);
    os << "map leaves the domain ball of J at node (j=" << wj << ", k=" << wk << "), |u| = " << worst
       << " > " << j.domain_radius();
    throw DomainError(os.str());
  }
  QField out{nr, nt, v.n(), std::vector<RealMat>(v.nodes())};
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (int jj = 0; jj < nr; ++jj) {
    for (int k = 0; k < nt; ++k) {
      try {
        out.q[node(v, jj, k)] = q_from_j(j, node_real(v, jj, k));
      } catch (...) {
#pragma omp critical(jhol_qfield)
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

DiscGrid apply_q(const QField& q, const DiscGrid& g) {
  if (g.n_r() != q.n_r || g.n_theta() != q.n_theta || g.n() != q.n)
    throw InputError("Q field does not match the grid");
  DiscGrid out = DiscGrid::zeros_like(g);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.n_r(); ++j) {
    for (int k = 0; k < g.n_theta(); ++k) {
      const RealVec y = q.q[node(g, j, k)] * node_real(g, j, k);
      for (int c = 0; c < g.n(); ++c) out(c, j, k) = {y[2 * c], y[2 * c + 1]};
    }
  }
  return out;
}

DiscGrid phi_frozen(const DiscGrid& u, const QField& q) {
  DiscGrid f = apply_q(q, wirtinger_derivatives(u).dz);
  DiscGrid t = apply_cauchy_green(f);
  t *= -1.0;
  return t;
}

DiscGrid phi(const DiscGrid& u, const Structure& j) { return phi_frozen(u, q_field(u, j)); }

DiscGrid affine_disc(int n_r, int n_theta, const CVec& a, const CVec& b) {
  if (a.size() != b.size() || a.empty()) throw InputError("a and b must have the same positive dimension");
  const int n = static_cast<int>(a.size());
  DiscGrid u(n_r, n_theta, n);
  for (int j = 0; j < n_r; ++j)
    for (int k = 0; k < n_theta; ++k) {
      const Complex z = u.z(j, k);
      for (int c = 0; c < n; ++c) {
        const auto ci = static_cast<std::size_t>(c);
        u(c, j, k) = a[ci] + 2.0 * z * (b[ci] - a[ci]);
      }
    }
  return u;
}

CVec value_at_zero(const DiscGrid& u) { return interp_bilinear(u, Complex(0.0, 0.0)); }
CVec value_at_half(const DiscGrid& u) { return interp_bilinear(u, Complex(0.5, 0.0)); }

DiscGrid normalize_ab(const DiscGrid& w, const CVec& a, const CVec& b) {
  check_point(a, w.n(), "a");
  check_point(b, w.n(), "b");
  const CVec w0 = value_at_zero(w);
  const CVec wh = value_at_half(w);
  DiscGrid out = DiscGrid::zeros_like(w);
  for (int c = 0; c < w.n(); ++c) {
    const auto ci = static_cast<std::size_t>(c);
    const Complex slope = (b[ci] - a[ci]) - (wh[ci] - w0[ci]);
    const Complex shift = a[ci] - w0[ci];
    for (int j = 0; j < w.n_r(); ++j)
      for (int k = 0; k < w.n_theta(); ++k) out(c, j, k) = w(c, j, k) + shift + 2.0 * w.z(j, k) * slope;
  }
  return out;
}

DiscGrid phi_ab(const DiscGrid& u, const Structure& j, const CVec& a, const CVec& b) {
  return normalize_ab(phi(u, j), a, b);
}

ContractionSetup contraction_setup(const Structure& j, const SobolevSetting& s, const SolveConfig& cfg) {
  ContractionSetup out;
  out.q = q_sup_norm(j, cfg.q_samples, 1.0);
  out.cp = cfg.safety_factor * s.cp_estimate;
  out.factor = 4.0 * out.q * out.cp;
  return out;
}

InnerResult inner_solve(const DiscGrid& v, const Structure& j, const CVec& a, const CVec& b,
                        const SobolevSetting& s, const SolveConfig& cfg) {
  check_config(cfg);
  check_point(a, j.n(), "a");
  check_point(b, j.n(), "b");
  const auto setup = contraction_setup(j, s, cfg);
  if (setup.factor > cfg.contraction_limit)
    throw ContractionError("contraction not certified: 4 q C_p = " + std::to_string(setup.factor),
                           setup.factor);
  return inner_impl(v, j, a, b, s, cfg);
}

SolveReport outer_solve(const Structure& j, const CVec& a, const CVec& b, const SobolevSetting& s,
                        const SolveConfig& cfg) {
  check_config(cfg);
  check_point(a, j.n(), "a");
  check_point(b, j.n(), "b");
  const auto setup = contraction_setup(j, s, cfg);
  if (setup.factor > cfg.contraction_limit)
    throw ContractionError("contraction not certified: 4 q C_p = " + std::to_string(setup.factor),
                           setup.factor);
  SolveReport rep;
  rep.q_used = setup.q;
  rep.cp_used = setup.cp;
  rep.contraction_factor = setup.factor;
  const DiscGrid start = affine_disc(s.n_r, s.n_theta, a, b);
  DiscGrid v = start;
  for (int k = 1; k <= cfg.max_outer; ++k) {
    InnerResult inner = inner_impl(v, j, a, b, s, cfg);
    const double gap = sup_distance(inner.u, v);
    rep.outer_gaps.push_back(gap);
    rep.inner_iterations.push_back(inner.trace.iterations);
    rep.inner_gap_ratios.push_back(inner.trace.ratios);
    for (double r : inner.trace.ratios)
      rep.contraction_rate_observed = std::max(rep.contraction_rate_observed.value_or(0.0), r);
    v = std::move(inner.u);
    if (gap < cfg.outer_tol) {
      rep.outer_iterations = k;
      rep.u = std::move(v);
      rep.residual_lp = pde_residual_lp(rep.u, j, s.p);
      rep.residual_ok = rep.residual_lp <= cfg.residual_tol;
      rep.solution_norm = sobolev_norm(rep.u, s);
      rep.bound_rhs = sobolev_norm(start, s) / (1.0 - setup.factor);
      rep.bound_holds = rep.solution_norm <= rep.bound_rhs * (1.0 + 1e-12);
      return rep;
    }
  }
  throw ConvergenceError("outer iteration reached max_outer without converging", rep.outer_gaps);
}

double pde_residual_lp(const DiscGrid& u, const Structure& j, double p) {
  const auto d = wirtinger_derivatives(u);
  DiscGrid r = d.dzbar + apply_q(q_field(u, j), d.dz);
  return lp_norm(r, p);
}

SolveReport solve_disc_through(const Structure& j, const CVec& a, const CVec& b,
                               const SobolevSetting& s, const SolveConfig& cfg) {
  check_config(cfg);
  check_point(a, j.n(), "a");
  check_point(b, j.n(), "b");
  const RealVec ar = to_real(a);
  const RealVec br = to_real(b);
  if (!j.contains(ar) || !j.contains(br)) throw DomainError("a and b must lie in the domain ball of J");

  const Normalization norm = normalize_at_origin(translate_structure(j, ar));
  const RealVec db = norm.frame_inverse * (br - ar);
  const CVec zero(a.size(), Complex{});
  // Iterates stay in the unit ball, which must fit in the rescaled domain.
  const double s0 = std::min(1.0, norm.structure.domain_radius());

  double best_sep = 0.0;
  double last_factor = 0.0;
  bool q_ever = false;
  for (int halving = 0; halving <= cfg.max_halvings; ++halving) {
    const double scale = std::ldexp(s0, -halving);
    const Structure js = rescale_structure(norm.structure, scale);
    const auto setup = contraction_setup(js, s, cfg);
    last_factor = setup.factor;
    if (setup.factor <= cfg.contraction_limit) {
      q_ever = true;
      const CVec bpp = to_complex(db / scale);
      const double start = sobolev_norm(affine_disc(s.n_r, s.n_theta, zero, bpp), s);
      const double budget = 1.0 - setup.factor;
      if (start <= budget) {
        SolveReport rep = outer_solve(js, zero, bpp, s, cfg);
        DiscGrid u = DiscGrid::zeros_like(rep.u);
        for (int jj = 0; jj < u.n_r(); ++jj)
          for (int k = 0; k < u.n_theta(); ++k) {
            const RealVec x = ar + scale * (norm.frame * node_real(rep.u, jj, k));
            u.set_value(jj, k, to_complex(x));
          }
        rep.u = std::move(u);
        rep.rescale_factor = scale;
        rep.residual_lp = pde_residual_lp(rep.u, j, s.p);
        rep.residual_ok = rep.residual_lp <= cfg.residual_tol;
        return rep;
      }
      const double sep = (br - ar).norm() * budget / start;
      best_sep = std::max(best_sep, sep);
    }
    if (!cfg.auto_rescale) break;
  }
  if (!q_ever)
    throw ContractionError("no admissible rescaling brings 4 q C_p below the limit (last " +
                               std::to_string(last_factor) + ")",
                           last_factor);
  std::ostringstream os;
  os.precision(12);
  os << "points not sufficiently close; maximal admissible separation " << best_sep;
  throw SeparationError(os.str(), best_sep);
}

}  // namespace jhol
