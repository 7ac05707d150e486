#include "jhol/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <variant>

namespace jhol {

namespace {

using Field = std::variant<double*, int*, long*, bool*, std::string*>;

struct Entry {
  const char* section;
  const char* key;
  Field field;
};

std::vector<Entry> entries(RunConfig& c) {
  return {
      {"run", "seed", &c.seed},
      {"run", "output_dir", &c.output_dir},
      {"sobolev", "p", &c.sobolev.p},
      {"sobolev", "n_r", &c.sobolev.n_r},
      {"sobolev", "n_theta", &c.sobolev.n_theta},
      {"sobolev", "cp_trials", &c.sobolev.cp_trials},
      {"solve", "inner_tol", &c.solve.inner_tol},
      {"solve", "outer_tol", &c.solve.outer_tol},
      {"solve", "max_inner", &c.solve.max_inner},
      {"solve", "max_outer", &c.solve.max_outer},
      {"solve", "safety_factor", &c.solve.safety_factor},
      {"solve", "auto_rescale", &c.solve.auto_rescale},
      {"solve", "residual_tol", &c.solve.residual_tol},
      {"solve", "contraction_limit", &c.solve.contraction_limit},
      {"solve", "q_samples", &c.solve.q_samples},
      {"solve", "max_halvings", &c.solve.max_halvings},
      {"cone", "alpha", &c.cone.alpha},
      {"cone", "r_min", &c.cone.r_min},
      {"cone", "nu", &c.cone.nu},
      {"cone", "cauchy_tol", &c.cone.cauchy_tol},
      {"cone", "window", &c.cone.window},
      {"psh", "tol", &c.psh.tol},
      {"psh", "corpus_residual", &c.psh.corpus_residual},
      {"psh", "a_hi", &c.psh.a_hi},
      {"psh", "bisect_rel_tol", &c.psh.bisect_rel_tol},
      {"psh", "max_radius_steps", &c.psh.max_radius_steps},
      {"psh", "samples", &c.psh.samples},
      {"riesz", "tol_mass", &c.riesz.tol_mass},
      {"riesz", "flux_samples", &c.riesz.flux_samples},
      {"riesz", "absorb_radius", &c.riesz.absorb_radius},
      {"zeros", "location_tol", &c.zeros.location_tol},
      {"zeros", "interp_points", &c.zeros.interp_points},
  };
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
bool parse_number(const std::string& s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

void positive(double v, const char* what) {
  if (!(v > 0.0)) throw InputError(std::string("config: ") + what + " must be positive");
}

}  // namespace

void RunConfig::validate() const {
  if (!(sobolev.p > 2.0)) throw InputError("config: sobolev.p must exceed 2");
  check_resolution(sobolev.n_r, sobolev.n_theta);
  if (sobolev.cp_trials < 8) throw InputError("config: sobolev.cp_trials must be at least 8");
  positive(solve.inner_tol, "solve.inner_tol");
  positive(solve.outer_tol, "solve.outer_tol");
  positive(solve.residual_tol, "solve.residual_tol");
  positive(solve.safety_factor, "solve.safety_factor");
  positive(solve.contraction_limit, "solve.contraction_limit");
  if (solve.max_inner < 1 || solve.max_outer < 1 || solve.q_samples < 1 || solve.max_halvings < 0)
    throw InputError("config: solve iteration and sample counts must be positive");
  if (!(cone.alpha > 0.0 && cone.alpha < 1.0)) throw InputError("config: cone.alpha must lie in (0, 1)");
  if (!(cone.r_min >= 0.0 && cone.r_min < 1.0)) throw InputError("config: cone.r_min must lie in [0, 1)");
  if (!(std::abs(cone.nu) < kPi / 2)) throw InputError("config: cone.nu must lie in (-pi/2, pi/2)");
  positive(cone.cauchy_tol, "cone.cauchy_tol");
  if (cone.window < 2) throw InputError("config: cone.window must be at least 2");
  positive(psh.tol, "psh.tol");
  positive(psh.corpus_residual, "psh.corpus_residual");
  positive(psh.a_hi, "psh.a_hi");
  positive(psh.bisect_rel_tol, "psh.bisect_rel_tol");
  if (psh.max_radius_steps < 1 || psh.samples < 8) throw InputError("config: psh radii or samples too small");
  positive(riesz.tol_mass, "riesz.tol_mass");
  if (riesz.flux_samples < 8) throw InputError("config: riesz.flux_samples must be at least 8");
  if (riesz.absorb_radius < 0.0) throw InputError("config: riesz.absorb_radius must be non-negative");
  positive(zeros.location_tol, "zeros.location_tol");
  if (zeros.interp_points < 2 || zeros.interp_points > 12 || zeros.interp_points % 2)
    throw InputError("config: zeros.interp_points must be even, 2..12");
}

RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base) {
  RunConfig cfg = std::move(base);
  auto table = entries(cfg);
  std::string section;
  std::string line;
  int number = 0;
  auto fail = [&](const std::string& msg) { throw InputError(source + ":" + std::to_string(number) + ": " + msg); };
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail("malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      const bool known = std::any_of(table.begin(), table.end(), [&](const Entry& e) { return section == e.section; });
      if (!known) fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    if (section.empty()) fail("key outside any section");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    auto it = std::find_if(table.begin(), table.end(),
                           [&](const Entry& e) { return section == e.section && key == e.key; });
    if (it == table.end()) fail("unknown key '" + key + "' in [" + section + "]");
    const bool ok = std::visit(
        [&](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, std::string>) {
            *p = value;
            return !value.empty();
          } else if constexpr (std::is_same_v<T, bool>) {
            if (value == "true") *p = true;
            else if (value == "false") *p = false;
            else return false;
            return true;
          } else {
            return parse_number(value, *p);
          }
        },
        it->field);
    if (!ok) fail("bad value '" + value + "' for " + key);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  return parse_config(in, path.string(), std::move(base));
}

std::string serialize_config(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::ostringstream os;
  std::string section;
  for (const auto& e : entries(copy)) {
    if (section != e.section) {
      if (!section.empty()) os << "\n";
      section = e.section;
      os << "[" << section << "]\n";
    }
    os << e.key << " = ";
    std::visit(
        [&](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, double>) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", *p);
            os << buf;
          } else if constexpr (std::is_same_v<T, bool>) {
            os << (*p ? "true" : "false");
          } else {
            os << *p;
          }
        },
        e.field);
    os << "\n";
  }
  return os.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) { return serialize_config(a) == serialize_config(b); }

}  // namespace jhol
