#include "jhol/almost_complex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace jhol {

namespace {

std::string format_point(const RealVec& x) {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

constexpr std::uint64_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                     37, 41, 43, 47, 53, 59, 61, 67, 71, 73};

}  // namespace

RealMat standard_j(int n) {
  RealMat j = RealMat::Zero(2 * n, 2 * n);
  for (int c = 0; c < n; ++c) {
    j(2 * c, 2 * c + 1) = -1.0;
    j(2 * c + 1, 2 * c) = 1.0;
  }
  return j;
}

double operator_norm(const RealMat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMat> svd(m);
  return svd.singularValues()(0);
}

RealMat project_to_complex_structure(const RealMat& m) {
  const RealMat a = -(m * m);
  Eigen::EigenSolver<RealMat> es(a, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) <= 1e-12 * (1.0 + std::abs(ev.real())) && ev.real() <= 0.0)
      throw StructureError("matrix has no complex-structure polar correction");
  }
  RealMat root = a.sqrt();
  return m * root.inverse();
}

AlmostComplexStructure::AlmostComplexStructure(int n, Field field, double domain_radius,
                                               std::optional<double> lipschitz,
                                               std::string description)
    : n_(n),
      field_(std::make_shared<const Field>(std::move(field))),
      radius_(domain_radius),
      lipschitz_(lipschitz),
      description_(std::move(description)) {
  if (n < 1) throw InputError("complex dimension must be positive");
  if (!(domain_radius > 0.0)) throw InputError("domain radius must be positive");
}

bool AlmostComplexStructure::contains(const RealVec& x) const {
  return x.size() == real_dim() && x.norm() <= radius_ * (1.0 + 1e-12);
}

RealMat AlmostComplexStructure::operator()(const RealVec& x) const {
  if (x.size() != real_dim())
    throw DomainError("point has wrong dimension for this structure");
  if (!contains(x))
    throw DomainError("point " + format_point(x) + " outside domain ball of radius " +
                      std::to_string(radius_));
  return (*field_)(x);
}

AlmostComplexStructure AlmostComplexStructure::standard(int n, double radius) {
  RealMat js = standard_j(n);
  return {n, [js](const RealVec&) { return js; }, radius, 0.0, "standard"};
}

AlmostComplexStructure AlmostComplexStructure::constant_q(const RealMat& q, double radius) {
  if (q.rows() != q.cols() || q.rows() % 2 != 0 || q.rows() == 0)
    throw InputError("constant_q needs a square matrix of even size");
  const int n = static_cast<int>(q.rows() / 2);
  const RealMat js = standard_j(n);
  const double anti = (q * js + js * q).norm();
  if (anti > 1e-12 * (1.0 + q.norm()))
    throw StructureError("constant_q matrix does not anti-commute with J_st");
  if (operator_norm(q) >= 1.0) throw StructureError("constant_q matrix must have norm < 1");
  RealMat j = j_from_q(q);
  return {n, [j](const RealVec&) { return j; }, radius, 0.0, "constant_q"};
}

AlmostComplexStructure AlmostComplexStructure::radial_lambda(int n, double l0, double l1,
                                                             double radius) {
  const double lmin = l1 < 0.0 ? l0 + l1 * radius : l0;
  if (!(lmin > 0.0)) throw StructureError("radial_lambda: lambda must stay positive on the ball");
  auto field = [n, l0, l1](const RealVec& x) {
    const double l = l0 + l1 * x.norm();
    RealMat j = RealMat::Zero(2 * n, 2 * n);
    for (int c = 0; c < n; ++c) {
      j(2 * c, 2 * c + 1) = -l;
      j(2 * c + 1, 2 * c) = 1.0 / l;
    }
    return j;
  };
  const double lip = std::abs(l1) * std::max(1.0, 1.0 / (lmin * lmin));
  std::ostringstream desc;
  desc.precision(12);
  desc << "radial_lambda " << l0 << ' ' << l1;
  return {n, field, radius, lip, desc.str()};
}

AlmostComplexStructure AlmostComplexStructure::from_samples(int n, double radius,
                                                            std::vector<std::vector<double>> axes,
                                                            std::vector<RealMat> values) {
  const int d = 2 * n;
  if (static_cast<int>(axes.size()) != d) throw InputError("grid structure: wrong number of axes");
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.size() < 2) throw InputError("grid structure: each axis needs at least 2 samples");
    if (!std::is_sorted(ax.begin(), ax.end()) ||
        std::adjacent_find(ax.begin(), ax.end()) != ax.end())
      throw InputError("grid structure: axis coordinates must be strictly increasing");
    if (ax.front() > -radius * (1 - 1e-12) || ax.back() < radius * (1 - 1e-12))
      throw InputError("grid structure: samples do not cover the domain ball");
    total *= ax.size();
  }
  if (values.size() != total) throw InputError("grid structure: sample count mismatch");
  for (const auto& v : values)
    if (v.rows() != d || v.cols() != d) throw InputError("grid structure: matrix size mismatch");

  std::vector<std::size_t> strides(d, 1);
  for (int a = d - 2; a >= 0; --a) strides[a] = strides[a + 1] * axes[a + 1].size();

  // Lipschitz estimate from neighbouring samples.
  double lip = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int a = 0; a < d; ++a) {
      const std::size_t ia = rem / strides[a];
      rem %= strides[a];
      if (ia + 1 < axes[a].size()) {
        const double dx = axes[a][ia + 1] - axes[a][ia];
        lip = std::max(lip, operator_norm(values[idx + strides[a]] - values[idx]) / dx);
      }
    }
  }

  auto data = std::make_shared<const std::pair<std::vector<std::vector<double>>, std::vector<RealMat>>>(
      std::move(axes), std::move(values));
  auto field = [data, strides, d](const RealVec& x) {
    const auto& ax = data->first;
    const auto& vals = data->second;
    std::vector<std::size_t> lo(d);
    std::vector<double> t(d);
    for (int a = 0; a < d; ++a) {
      const auto& g = ax[a];
      auto it = std::upper_bound(g.begin(), g.end(), x[a]);
      std::size_t i = it == g.begin() ? 0 : static_cast<std::size_t>(it - g.begin()) - 1;
      i = std::min(i, g.size() - 2);
      lo[a] = i;
      t[a] = std::clamp((x[a] - g[i]) / (g[i + 1] - g[i]), 0.0, 1.0);
    }
    RealMat acc = RealMat::Zero(d, d);
    for (std::uint32_t corner = 0; corner < (1u << d); ++corner) {
      double w = 1.0;
      std::size_t idx = 0;
      for (int a = 0; a < d; ++a) {
        const bool up = (corner >> a) & 1u;
        w *= up ? t[a] : 1.0 - t[a];
        idx += (lo[a] + (up ? 1 : 0)) * strides[a];
      }
      if (w != 0.0) acc += w * vals[idx];
    }
    return project_to_complex_structure(acc);
  };
  return {n, field, radius, lip, "grid " + std::to_string(total)};
}

std::vector<RealVec> ball_samples(int dim, double radius, int count) {
  if (dim > static_cast<int>(std::size(kPrimes))) throw InputError("dimension too large for sampling");
  std::vector<RealVec> pts;
  pts.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    RealVec x = RealVec::Zero(dim);
    if (i > 0) {
      for (int a = 0; a < dim; ++a)
        x[a] = 2.0 * radical_inverse(static_cast<std::uint64_t>(i), kPrimes[a]) - 1.0;
      // Radial stretch of the cube onto the ball; cube faces land on the sphere.
      const double l2 = x.norm();
      if (l2 > 0.0) x *= x.cwiseAbs().maxCoeff() / l2;
    }
    pts.push_back(radius * x);
  }
  return pts;
}

ValidationReport validate_structure(const Structure& j, int sample_count, double tol) {
  if (sample_count < 1) throw InputError("validate_structure needs at least one sample");
  ValidationReport rep;
  rep.tolerance = tol;
  rep.samples = sample_count;
  rep.worst_point = RealVec::Zero(j.real_dim());
  const RealMat id = RealMat::Identity(j.real_dim(), j.real_dim());
  for (const auto& x : ball_samples(j.real_dim(), j.domain_radius(), sample_count)) {
    RealMat jx;
    try {
      jx = j(x);
    } catch (const std::exception& e) {
      throw StructureError("structure evaluation failed at " + format_point(x) + ": " + e.what());
    }
    if (jx.rows() != j.real_dim() || jx.cols() != j.real_dim() || !jx.allFinite())
      throw StructureError("structure evaluation returned an invalid matrix at " + format_point(x));
    const double dev = operator_norm(jx * jx + id);
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_point = x;
    }
  }
  rep.passed = rep.max_deviation <= tol;
  return rep;
}

RealMat q_from_j(const RealMat& j) {
  const int n = static_cast<int>(j.rows() / 2);
  const RealMat js = standard_j(n);
  Eigen::PartialPivLU<RealMat> lu(j + js);
  if (!(lu.rcond() > 1e-13)) {
    throw StructureError("structure too far from standard: |J - J_st| = " +
                         std::to_string(operator_norm(j - js)));
  }
  return lu.solve(j - js);
}

RealMat q_from_j(const Structure& j, const RealVec& x) { return q_from_j(j(x)); }

RealMat j_from_q(const RealMat& q) {
  const int n = static_cast<int>(q.rows() / 2);
  const RealMat id = RealMat::Identity(2 * n, 2 * n);
  Eigen::PartialPivLU<RealMat> lu((id - q).transpose());
  // J = J_st (I + Q)(I - Q)^{-1}; solve from the right via the transpose.
  RealMat lhs = (standard_j(n) * (id + q)).transpose();
  return lu.solve(lhs).transpose();
}

double q_sup_norm(const Structure& j, int sample_count, std::optional<double> radius) {
  const double r = radius ? std::min(*radius, j.domain_radius()) : j.domain_radius();
  double q = 0.0;
  for (const auto& x : ball_samples(j.real_dim(), r, sample_count))
    q = std::max(q, operator_norm(q_from_j(j, x)));
  return q;
}

Normalization normalize_at_origin(const Structure& j, double tol) {
  const int d = j.real_dim();
  const RealMat j0 = j(RealVec::Zero(d));
  const RealMat id = RealMat::Identity(d, d);
  if (operator_norm(j0 * j0 + id) > tol)
    throw StructureError("J(0) is not a complex structure within tolerance");

  // Pair each new basis vector v with J(0) v; pick v from the standard basis
  // vector least captured by the span so far, then balance |v| |J v| = 1.
  RealMat frame(d, d);
  RealMat ortho(d, 0);
  for (int k = 0; k < j.n(); ++k) {
    RealVec best;
    double best_norm = -1.0;
    for (int i = 0; i < d; ++i) {
      RealVec e = RealVec::Unit(d, i);
      RealVec r = e - ortho * (ortho.transpose() * e);
      if (r.norm() > best_norm + 1e-12) {
        best_norm = r.norm();
        best = r;
      }
    }
    RealVec v = best / best.norm();
    v /= std::sqrt((j0 * v).norm());
    RealVec jv = j0 * v;
    frame.col(2 * k) = v;
    frame.col(2 * k + 1) = jv;
    for (const RealVec* w : {&v, &jv}) {
      RealVec r = *w - ortho * (ortho.transpose() * *w);
      ortho.conservativeResize(d, ortho.cols() + 1);
      ortho.col(ortho.cols() - 1) = r / r.norm();
    }
  }
  const RealMat inv = frame.inverse();
  auto base = j;
  auto field = [base, frame, inv](const RealVec& x) -> RealMat { return inv * base(frame * x) * frame; };
  const double lnorm = operator_norm(frame);
  std::optional<double> lip;
  if (j.lipschitz_estimate())
    lip = *j.lipschitz_estimate() * lnorm * lnorm * operator_norm(inv);
  return {Structure(j.n(), field, j.domain_radius() / lnorm, lip, j.description()), frame, inv};
}

Structure translate_structure(const Structure& j, const RealVec& a) {
  if (!j.contains(a)) throw DomainError("translation point outside the domain ball");
  const double r = j.domain_radius() - a.norm();
  if (!(r > 0.0)) throw DomainError("translation point on the boundary of the domain ball");
  auto base = j;
  return {j.n(), [base, a](const RealVec& x) -> RealMat { return base(a + x); }, r,
          j.lipschitz_estimate(), j.description()};
}

Structure rescale_structure(const Structure& j, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("rescale factor must lie in (0, 1]");
  if (s == 1.0) return j;
  auto base = j;
  std::optional<double> lip;
  if (j.lipschitz_estimate()) lip = *j.lipschitz_estimate() * s;
  return {j.n(), [base, s](const RealVec& x) -> RealMat { return base(s * x); },
          j.domain_radius() / s, lip, j.description()};
}

}  // namespace jhol
