#include "jhol/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "jhol/boundary.hpp"
#include "jhol/config.hpp"
#include "jhol/grid_io.hpp"
#include "jhol/report.hpp"
#include "jhol/structure_io.hpp"

namespace jhol::cli {

namespace {

namespace fs = std::filesystem;

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError(what + ": cannot parse '" + tok + "' as a real");
    }
  }
  if (v.empty()) throw InputError(what + ": empty list");
  return v;
}

CVec parse_point(const std::string& text, int n, const std::string& what) {
  const auto v = parse_reals(text, what);
  if (static_cast<int>(v.size()) != 2 * n)
    throw InputError(what + ": expected " + std::to_string(2 * n) + " reals, got " + std::to_string(v.size()));
  CVec z(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) z[static_cast<std::size_t>(c)] = {v[static_cast<std::size_t>(2 * c)], v[static_cast<std::size_t>(2 * c + 1)]};
  return z;
}

std::vector<Complex> parse_complex_list(const std::string& text, const std::string& what) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ';');) out.push_back(parse_point(tok, 1, what)[0]);
  return out;
}

std::string point_text(const CVec& z) {
  std::vector<double> v;
  for (auto c : z) {
    v.push_back(c.real());
    v.push_back(c.imag());
  }
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_real(v[i]);
  return s;
}

void append_values(std::vector<std::string>& row, const CVec& v) {
  for (auto c : v) {
    row.push_back(format_real(c.real()));
    row.push_back(format_real(c.imag()));
  }
}

std::vector<std::string> value_columns(int n) {
  std::vector<std::string> cols;
  for (int c = 1; c <= n; ++c) {
    cols.push_back("u" + std::to_string(c) + "_re");
    cols.push_back("u" + std::to_string(c) + "_im");
  }
  return cols;
}

struct Globals {
  std::string config;
  long seed = 0;
  std::string out;
  std::string resolution;
  double p = 0.0;
};

SobolevSetting sobolev(const RunConfig& cfg) {
  return make_sobolev_setting(cfg.sobolev.p, cfg.sobolev.n_r, cfg.sobolev.n_theta, cfg.sobolev.cp_trials);
}

SubmeanOptions submean_options(const RunConfig& cfg) {
  SubmeanOptions o;
  o.max_radius_steps = cfg.psh.max_radius_steps;
  o.samples = cfg.psh.samples;
  return o;
}

void emit(const Report& r, const fs::path& path, std::ostream& out) {
  r.write(path);
  out << r.str();
}

// ---- solve-disc ----------------------------------------------------------

int cmd_solve_disc(const RunConfig& cfg, const std::string& structure_file, const std::string& a_text,
                   const std::string& b_text, std::ostream& out) {
  const Structure j = load_structure(structure_file);
  const CVec a = parse_point(a_text, j.n(), "--a");
  const CVec b = parse_point(b_text, j.n(), "--b");
  const fs::path dir = cfg.output_dir;
  Report rep("solve-disc");
  rep.add("structure", fs::path(structure_file).filename().string());
  rep.add("description", j.description());
  rep.add("a", point_text(a));
  rep.add("b", point_text(b));
  rep.add("n_r", cfg.sobolev.n_r);
  rep.add("n_theta", cfg.sobolev.n_theta);
  rep.add("p", cfg.sobolev.p);
  rep.add("seed", cfg.seed);
  const SobolevSetting s = sobolev(cfg);
  rep.add("scale_constant", s.scale_constant);
  rep.add("cp_estimate", s.cp_estimate);
  try {
    const SolveReport r = solve_disc_through(j, a, b, s, cfg.solve);
    const bool ok = r.residual_ok;
    rep.add("status", ok ? "converged" : "residual_above_threshold");
    rep.add("residual_lp", r.residual_lp);
    rep.add("residual_tol", cfg.solve.residual_tol);
    rep.add("residual_ok", r.residual_ok);
    rep.add("outer_iterations", r.outer_iterations);
    rep.add_list("inner_iterations", r.inner_iterations);
    rep.add_list("outer_gaps", r.outer_gaps);
    rep.add("contraction_rate_observed",
            r.contraction_rate_observed ? *r.contraction_rate_observed : std::numeric_limits<double>::quiet_NaN());
    rep.add("q_used", r.q_used);
    rep.add("cp_used", r.cp_used);
    rep.add("contraction_factor", r.contraction_factor);
    rep.add("rescale_factor", r.rescale_factor);
    rep.add("solution_norm", r.solution_norm);
    rep.add("bound_rhs", r.bound_rhs);
    rep.add("bound_holds", r.bound_holds);
    CVec u0 = value_at_zero(r.u), uh = value_at_half(r.u);
    double e0 = 0.0, eh = 0.0;
    for (int c = 0; c < j.n(); ++c) {
      e0 = std::max(e0, std::abs(u0[static_cast<std::size_t>(c)] - a[static_cast<std::size_t>(c)]));
      eh = std::max(eh, std::abs(uh[static_cast<std::size_t>(c)] - b[static_cast<std::size_t>(c)]));
    }
    rep.add("interpolation_error_0", e0);
    rep.add("interpolation_error_half", eh);
    rep.add("grid_file", "u.grid");
    save_grid(dir / "u.grid", r.u);
    emit(rep, dir / "solve_report.txt", out);
    return ok ? kExitOk : kExitNegative;
  } catch (const ConvergenceError& e) {
    rep.add("status", "not_converged");
    rep.add("message", e.what());
    rep.add_list("outer_gaps", e.gaps());
  } catch (const ContractionError& e) {
    rep.add("status", "contraction_not_certified");
    rep.add("message", e.what());
    rep.add("contraction_factor", e.factor());
  } catch (const SeparationError& e) {
    rep.add("status", "points_too_far_apart");
    rep.add("message", e.what());
    rep.add("max_separation", e.max_separation());
  } catch (const BallEscapeError& e) {
    rep.add("status", "left_unit_ball");
    rep.add("message", e.what());
    rep.add("norm", e.norm());
  } catch (const DomainError& e) {
    rep.add("status", "left_domain");
    rep.add("message", e.what());
  } catch (const StructureError& e) {
    rep.add("status", "structure_error");
    rep.add("message", e.what());
  }
  emit(rep, dir / "solve_report.txt", out);
  return kExitNegative;
}

// ---- check-psh -----------------------------------------------------------

ScalarFunction parse_function(const std::string& spec, const std::optional<CVec>& point) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need = [&](std::size_t count) {
    const auto v = args.empty() ? std::vector<double>{} : parse_reals(args, "--function " + name);
    if (v.size() != count) throw InputError("--function " + name + " expects " + std::to_string(count) + " parameters");
    return v;
  };
  if (name == "sqnorm" || name == "neg-sqnorm") {
    need(0);
    return squared_norm_function(name == "sqnorm" ? 1.0 : -1.0);
  }
  if (name == "constant") return constant_function(need(1)[0]);
  if (name == "chirka") {
    if (!point) throw InputError("--function chirka requires --point");
    return chirka_function(*point, need(1)[0]);
  }
  if (name == "loglog") {
    const auto v = need(2);
    return loglog_function(v[0], v[1]);
  }
  throw InputError("unknown --function '" + name + "' (sqnorm, neg-sqnorm, constant:c, chirka:A, loglog:s,A)");
}

int cmd_check_psh(const RunConfig& cfg, const std::string& function, const std::string& structure_file,
                  const std::string& corpus_dir, bool chirka, const std::string& point_text_in, std::ostream& out) {
  const Structure j = load_structure(structure_file);
  std::optional<CVec> point;
  if (!point_text_in.empty()) point = parse_point(point_text_in, j.n(), "--point");
  if (function.empty() && !chirka) throw InputError("check-psh needs --function or --chirka");
  if (chirka && !point) throw InputError("--chirka requires --point");
  std::optional<ScalarFunction> rho;
  if (!function.empty()) rho = parse_function(function, point);

  if (!fs::is_directory(corpus_dir)) throw InputError("corpus directory not found: " + corpus_dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(corpus_dir))
    if (e.is_regular_file() && e.path().extension() == ".grid") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("empty disc corpus in " + corpus_dir);
  std::vector<Witness> discs;
  for (const auto& f : files) {
    DiscGrid u = load_grid(f);
    if (u.n() != j.n()) throw InputError(f.string() + ": disc dimension does not match the structure");
    const double res = pde_residual_lp(u, j, cfg.sobolev.p);
    discs.push_back({std::move(u), res});
  }
  const SubmeanOptions opts = submean_options(cfg);
  const DiscCorpus corpus = prepare_corpus(discs, cfg.psh.corpus_residual, opts);

  const fs::path dir = cfg.output_dir;
  Report rep("check-psh");
  rep.add("structure", fs::path(structure_file).filename().string());
  rep.add("corpus_files", static_cast<int>(files.size()));
  rep.add("accepted", static_cast<int>(corpus.accepted.size()));
  rep.add("rejected", static_cast<int>(corpus.rejected.size()));
  rep.add("tol", cfg.psh.tol);
  rep.add("seed", cfg.seed);
  if (corpus.accepted.empty()) {
    rep.add("status", "no_disc_passes_residual_threshold");
    emit(rep, dir / "psh_report.txt", out);
    return kExitInput;
  }
  bool ok = true;
  CsvTable table({"disc", "file", "residual", "passed", "worst_violation", "worst_center_re", "worst_center_im",
                  "worst_radius", "min_defect_ratio"});
  if (rho) {
    const PshReport r = check_psh_on_corpus(*rho, corpus, cfg.psh.tol, opts);
    rep.add("function", rho->name);
    rep.add("passed", r.passed);
    rep.add("worst_violation", r.worst_violation);
    rep.add("min_defect_ratio", r.min_defect_ratio);
    if (r.worst_disc >= 0) {
      const auto pos = std::find(corpus.accepted.begin(), corpus.accepted.end(), r.worst_disc) - corpus.accepted.begin();
      const auto& w = r.per_disc[static_cast<std::size_t>(pos)];
      rep.add("worst_disc", files[static_cast<std::size_t>(r.worst_disc)].filename().string());
      rep.add("worst_center", point_text({w.worst_center}));
      rep.add("worst_radius", w.worst_radius);
    }
    for (std::size_t i = 0; i < r.per_disc.size(); ++i) {
      const auto& d = r.per_disc[i];
      const int idx = corpus.accepted[i];
      table.add_row({std::to_string(idx), files[static_cast<std::size_t>(idx)].filename().string(),
                     format_real(discs[static_cast<std::size_t>(idx)].residual), d.passed ? "true" : "false",
                     format_real(d.worst_violation), format_real(d.worst_center.real()),
                     format_real(d.worst_center.imag()), format_real(d.worst_radius), format_real(d.min_defect_ratio)});
    }
    ok = r.passed;
  }
  if (chirka) {
    auto passes = [&](double A) { return check_psh_on_corpus(chirka_function(*point, A), corpus, cfg.psh.tol, opts).passed; };
    const BisectionResult b = bisect_threshold(passes, 0.0, cfg.psh.a_hi, cfg.psh.bisect_rel_tol);
    rep.add("chirka_point", point_text(*point));
    rep.add("chirka_found", b.found);
    rep.add("chirka_a_star", b.found ? b.value : std::numeric_limits<double>::infinity());
    rep.add("chirka_evaluations", b.evaluations);
    ok = ok && b.found;
  }
  table.write(dir / "psh_discs.csv");
  emit(rep, dir / "psh_report.txt", out);
  return ok ? kExitOk : kExitNegative;
}

// ---- boundary ------------------------------------------------------------

struct BoundaryParams {
  std::string mode;
  std::string theta;
  double nu = 0.0;
  std::string alpha;
  bool restricted = false;
  int count = 0;
  std::string point;
  std::string poles;
};

int cmd_boundary(const RunConfig& cfg, const std::string& grid_file, const BoundaryParams& bp,
                 const std::map<std::string, bool>& given, std::ostream& out) {
  static const std::map<std::string, std::vector<std::string>> allowed = {
      {"trace", {"--theta", "--nu"}},
      {"ntlimit", {"--theta", "--alpha", "--restricted", "--count"}},
      {"zeros", {"--point"}},
      {"blaschke", {"--point"}},
      {"riesz", {"--poles"}},
  };
  const auto mode_it = allowed.find(bp.mode);
  if (mode_it == allowed.end()) throw InputError("unknown --mode '" + bp.mode + "'");
  for (const auto& [opt, present] : given)
    if (present && std::find(mode_it->second.begin(), mode_it->second.end(), opt) == mode_it->second.end())
      throw InputError("option " + opt + " does not apply to mode " + bp.mode);

  const DiscGrid u = load_grid(grid_file);
  const fs::path dir = cfg.output_dir;
  Report rep("boundary " + bp.mode);
  rep.add("grid", fs::path(grid_file).filename().string());
  rep.add("n", u.n());
  rep.add("n_r", u.n_r());
  rep.add("n_theta", u.n_theta());
  rep.add("seed", cfg.seed);
  const std::string stem = "boundary_" + bp.mode;

  if (bp.mode == "trace") {
    if (!given.at("--theta")) throw InputError("mode trace requires --theta");
    const double theta = parse_reals(bp.theta, "--theta").at(0);
    const double nu = given.at("--nu") ? bp.nu : cfg.cone.nu;
    const BoundaryMap map = BoundaryMap::from_grid(u);
    const RayTrace tr = ray_trace(map, theta, nu, default_schedule(map, nu), cfg.cone.cauchy_tol, cfg.cone.window);
    std::vector<std::string> cols = {"t", "zeta_re", "zeta_im"};
    for (auto& c : value_columns(u.n())) cols.push_back(c);
    CsvTable table(cols);
    for (const auto& s : tr.samples) {
      const Complex z = std::polar(1.0, theta) - s.t * std::polar(1.0, theta - nu);
      std::vector<std::string> row = {format_real(s.t), format_real(z.real()), format_real(z.imag())};
      append_values(row, s.value);
      table.add_row(std::move(row));
    }
    table.write(dir / (stem + ".csv"));
    rep.add("theta", theta);
    rep.add("nu", nu);
    rep.add("samples", static_cast<int>(tr.samples.size()));
    rep.add("truncated", tr.truncated);
    rep.add("cauchy_gap", tr.cauchy_gap);
    rep.add("limit_exists", tr.limit_estimate.has_value());
    if (tr.limit_estimate) rep.add("limit", point_text(*tr.limit_estimate));
  } else if (bp.mode == "ntlimit") {
    if (given.at("--theta") == given.at("--count")) throw InputError("mode ntlimit requires exactly one of --theta, --count");
    std::vector<double> thetas;
    if (given.at("--theta")) {
      thetas = parse_reals(bp.theta, "--theta");
    } else {
      if (bp.count < 1) throw InputError("--count must be positive");
      std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
      std::uniform_real_distribution<double> jitter(0.0, 1.0);
      for (int i = 0; i < bp.count; ++i) thetas.push_back(kTwoPi * (i + jitter(rng)) / bp.count);
    }
    const std::vector<double> alphas = given.at("--alpha") ? parse_reals(bp.alpha, "--alpha") : std::vector<double>{cfg.cone.alpha};
    NtLimitOptions o;
    o.cauchy_tol = cfg.cone.cauchy_tol;
    o.window = cfg.cone.window;
    o.restricted = bp.restricted;
    const BoundaryMap map = BoundaryMap::from_grid(u);
    std::vector<std::string> cols = {"theta", "exists"};
    for (auto& c : value_columns(u.n())) cols.push_back(c);
    CsvTable table(cols);
    int found = 0;
    for (double t : thetas) {
      const auto lim = nontangential_limit(map, t, alphas, o);
      std::vector<std::string> row = {format_real(t), lim ? "true" : "false"};
      append_values(row, lim ? *lim : CVec(static_cast<std::size_t>(u.n()), Complex(std::nan(""), std::nan(""))));
      table.add_row(std::move(row));
      found += lim ? 1 : 0;
    }
    table.write(dir / (stem + ".csv"));
    rep.add_list("alphas", alphas);
    rep.add("restricted", bp.restricted);
    rep.add("angles", static_cast<int>(thetas.size()));
    rep.add("limits_found", found);
    rep.add("fraction_found", static_cast<double>(found) / static_cast<double>(thetas.size()));
  } else if (bp.mode == "zeros" || bp.mode == "blaschke") {
    if (!given.at("--point")) throw InputError("mode " + bp.mode + " requires --point");
    const CVec p = parse_point(bp.point, u.n(), "--point");
    ZeroOptions zo;
    zo.location_tol = cfg.zeros.location_tol;
    zo.interp_points = cfg.zeros.interp_points;
    const auto zs = extract_zeros(u, p, zo);
    CsvTable table({"zeta_re", "zeta_im", "multiplicity", "certified"});
    for (const auto& z : zs)
      table.add_row({format_real(z.zeta.real()), format_real(z.zeta.imag()), std::to_string(z.multiplicity),
                     z.certified ? "true" : "false"});
    table.write(dir / (stem + ".csv"));
    rep.add("point", point_text(p));
    rep.add("zeros", static_cast<int>(zs.size()));
    rep.add("certified", std::all_of(zs.begin(), zs.end(), [](const Zero& z) { return z.certified; }));
    if (bp.mode == "blaschke") rep.add("blaschke_sum", blaschke_sum(zs));
  } else {
    if (u.n() != 1) throw InputError("mode riesz needs a scalar grid (n=1)");
    const std::vector<Complex> poles = given.at("--poles") ? parse_complex_list(bp.poles, "--poles") : std::vector<Complex>{};
    RieszOptions ro;
    ro.tol_mass = cfg.riesz.tol_mass;
    ro.flux_samples = cfg.riesz.flux_samples;
    ro.absorb_radius = cfg.riesz.absorb_radius;
    const RieszReport r = riesz_diagnostics(u, poles, ro);
    CsvTable cells({"j", "k", "r", "theta", "mass", "absorbed"});
    for (int jj = 0; jj < u.n_r(); ++jj)
      for (int k = 0; k < u.n_theta(); ++k) {
        const auto idx = static_cast<std::size_t>(jj * u.n_theta() + k);
        cells.add_row({std::to_string(jj), std::to_string(k), format_real(u.r(jj)), format_real(u.theta(k)),
                       format_real(r.cell_masses[idx]), r.absorbed[idx] ? "true" : "false"});
      }
    cells.write(dir / "boundary_riesz_cells.csv");
    CsvTable pt({"zeta_re", "zeta_im", "mass", "multiplicity", "certified_ge_2pi", "log_bound_slope"});
    for (const auto& pm : r.point_masses)
      pt.add_row({format_real(pm.center.real()), format_real(pm.center.imag()), format_real(pm.mass),
                  std::to_string(pm.multiplicity), pm.certified_ge_2pi ? "true" : "false",
                  format_real(pm.log_bound_slope)});
    pt.write(dir / "boundary_riesz_poles.csv");
    rep.add("poles", static_cast<int>(poles.size()));
    rep.add("blaschke_sum", r.blaschke_sum);
    rep.add("weighted_integral", r.weighted_integral);
    rep.add("rho_at_zero", r.rho_at_zero);
    rep.add("boundary_mean", r.boundary_mean);
    rep.add("log_term", r.log_term);
    rep.add("representation_residual", r.representation_residual);
    rep.add("min_cell_mass", r.min_cell_mass);
    rep.add("subharmonic", r.subharmonic);
  }
  emit(rep, dir / (stem + ".txt"), out);
  return kExitOk;
}

// ---- validate-structure / estimate-cp -------------------------------------

int cmd_validate(const RunConfig& cfg, const std::string& file, int samples, std::ostream& out) {
  const Structure j = load_structure(file);
  const ValidationReport v = validate_structure(j, samples);
  Report rep("validate-structure");
  rep.add("structure", fs::path(file).filename().string());
  rep.add("description", j.description());
  rep.add("n", j.n());
  rep.add("domain_radius", j.domain_radius());
  rep.add("samples", v.samples);
  rep.add("tolerance", v.tolerance);
  rep.add("max_deviation", v.max_deviation);
  rep.add("worst_point", point_text(to_complex(v.worst_point)));
  rep.add("q_sup", q_sup_norm(j, samples));
  rep.add("valid", v.passed);
  emit(rep, fs::path(cfg.output_dir) / "validate_report.txt", out);
  return v.passed ? kExitOk : kExitNegative;
}

int cmd_estimate_cp(const RunConfig& cfg, std::ostream& out) {
  const SobolevSetting s = sobolev(cfg);
  Report rep("estimate-cp");
  rep.add("p", s.p);
  rep.add("n_r", s.n_r);
  rep.add("n_theta", s.n_theta);
  rep.add("trials", cfg.sobolev.cp_trials);
  rep.add("scale_constant", s.scale_constant);
  rep.add("cp_estimate", s.cp_estimate);
  rep.add("q_threshold", 1.0 / (8.0 * cfg.solve.safety_factor * s.cp_estimate));
  emit(rep, fs::path(cfg.output_dir) / "cp_report.txt", out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"jhol: pseudoholomorphic discs, plurisubharmonicity checks and boundary diagnostics", "jhol"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "configuration file");
  app.add_option("--seed", g.seed, "seed for sampled angles");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--resolution", g.resolution, "grid resolution n_r,n_theta");
  app.add_option("--p", g.p, "Sobolev exponent p > 2");

  auto* solve = app.add_subcommand("solve-disc", "disc through a (at 0) and b (at 1/2)")->fallthrough();
  std::string structure_file, a_text, b_text;
  solve->add_option("structure", structure_file, "structure file")->required();
  solve->add_option("--a", a_text, "value at 0 as 2n comma-separated reals")->required();
  solve->add_option("--b", b_text, "value at 1/2 as 2n comma-separated reals")->required();

  auto* psh = app.add_subcommand("check-psh", "sub-mean-value test along a corpus of discs")->fallthrough();
  std::string function, psh_structure, corpus, psh_point;
  bool chirka = false;
  psh->add_option("--function", function, "sqnorm | neg-sqnorm | constant:c | chirka:A | loglog:s,A");
  psh->add_option("--structure", psh_structure, "structure file")->required();
  psh->add_option("--corpus", corpus, "directory of .grid discs")->required();
  psh->add_flag("--chirka", chirka, "bisect the Chirka constant A at --point");
  psh->add_option("--point", psh_point, "target point as 2n comma-separated reals");

  auto* boundary = app.add_subcommand("boundary", "boundary diagnostics of a grid map")->fallthrough();
  std::string grid_file;
  BoundaryParams bp;
  boundary->add_option("grid", grid_file, "grid file")->required();
  boundary->add_option("--mode", bp.mode, "trace | ntlimit | zeros | blaschke | riesz")->required();
  auto* o_theta = boundary->add_option("--theta", bp.theta, "angle(s), comma-separated");
  auto* o_nu = boundary->add_option("--nu", bp.nu, "ray direction in (-pi/2, pi/2)");
  auto* o_alpha = boundary->add_option("--alpha", bp.alpha, "cone apertures, comma-separated");
  auto* o_restricted = boundary->add_flag("--restricted", bp.restricted, "use only the first aperture");
  auto* o_count = boundary->add_option("--count", bp.count, "number of sampled angles");
  auto* o_point = boundary->add_option("--point", bp.point, "target point as 2n comma-separated reals");
  auto* o_poles = boundary->add_option("--poles", bp.poles, "pole candidates x,y;x,y");

  auto* validate = app.add_subcommand("validate-structure", "check J^2 = -Id on ball samples")->fallthrough();
  std::string validate_file;
  int samples = 1024;
  validate->add_option("structure", validate_file, "structure file")->required();
  validate->add_option("--samples", samples, "number of sample points");

  auto* cp = app.add_subcommand("estimate-cp", "calibrate the Sobolev scale and estimate C_p")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    RunConfig cfg;
    if (!g.config.empty()) cfg = load_config(g.config, cfg);
    if (app.count("--seed")) cfg.seed = g.seed;
    if (app.count("--out")) cfg.output_dir = g.out;
    if (app.count("--p")) cfg.sobolev.p = g.p;
    if (app.count("--resolution")) {
      const auto v = parse_reals(g.resolution, "--resolution");
      if (v.size() != 2 || v[0] != static_cast<int>(v[0]) || v[1] != static_cast<int>(v[1]))
        throw InputError("--resolution expects two integers n_r,n_theta");
      cfg.sobolev.n_r = static_cast<int>(v[0]);
      cfg.sobolev.n_theta = static_cast<int>(v[1]);
    }
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);

    if (*solve) return cmd_solve_disc(cfg, structure_file, a_text, b_text, out);
    if (*psh) return cmd_check_psh(cfg, function, psh_structure, corpus, chirka, psh_point, out);
    if (*boundary) {
      const std::map<std::string, bool> given = {
          {"--theta", o_theta->count() > 0}, {"--nu", o_nu->count() > 0},       {"--alpha", o_alpha->count() > 0},
          {"--restricted", o_restricted->count() > 0}, {"--count", o_count->count() > 0},
          {"--point", o_point->count() > 0}, {"--poles", o_poles->count() > 0}};
      return cmd_boundary(cfg, grid_file, bp, given, out);
    }
    if (*validate) return cmd_validate(cfg, validate_file, samples, out);
    if (*cp) return cmd_estimate_cp(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"jhol"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace jhol::cli
