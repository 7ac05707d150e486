#include "jhol/grid_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace jhol {

namespace {

std::vector<std::string> split_fields(std::string line) {
  std::replace(line.begin(), line.end(), ',', ' ');
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  throw InputError(source + ":" + std::to_string(line) + ": " + msg);
}

long parse_int(const std::string& s, const std::string& source, int line) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(source, line, "expected an integer, got '" + s + "'");
}

double parse_real(const std::string& s, const std::string& source, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(source, line, "expected a number, got '" + s + "'");
}

}  // namespace

void write_grid(std::ostream& out, const DiscGrid& u) {
  out << "discgrid v1 n=" << u.n() << " n_r=" << u.n_r() << " n_theta=" << u.n_theta() << '\n';
  out.precision(17);
  for (int j = 0; j < u.n_r(); ++j)
    for (int k = 0; k < u.n_theta(); ++k) {
      out << j << ',' << k;
      for (int c = 0; c < u.n(); ++c) out << ',' << u(c, j, k).real() << ',' << u(c, j, k).imag();
      out << '\n';
    }
}

DiscGrid read_grid(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++lineno;
      auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') return true;
    }
    return false;
  };
  if (!next()) fail(source, lineno, "empty grid file");
  auto head = split_fields(line);
  if (head.size() != 5 || head[0] != "discgrid" || head[1] != "v1")
    fail(source, lineno, "expected header 'discgrid v1 n=<n> n_r=<n_r> n_theta=<n_theta>'");
  auto kv = [&](const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) fail(source, lineno, "expected '" + key + "=' in header");
    return parse_int(tok.substr(key.size() + 1), source, lineno);
  };
  const long n = kv(head[2], "n");
  const long n_r = kv(head[3], "n_r");
  const long n_theta = kv(head[4], "n_theta");
  if (n < 1 || n > 64) fail(source, lineno, "unsupported dimension n");
  DiscGrid u;
  try {
    u = DiscGrid(static_cast<int>(n_r), static_cast<int>(n_theta), static_cast<int>(n));
  } catch (const InputError& e) {
    fail(source, lineno, e.what());
  }
  std::vector<bool> seen(u.nodes(), false);
  std::size_t count = 0;
  while (next()) {
    auto f = split_fields(line);
    if (f.size() != static_cast<std::size_t>(2 + 2 * n))
      fail(source, lineno, "row needs " + std::to_string(2 + 2 * n) + " fields");
    const long j = parse_int(f[0], source, lineno);
    const long k = parse_int(f[1], source, lineno);
    if (j < 0 || j >= n_r || k < 0 || k >= n_theta) fail(source, lineno, "node index out of range");
    const std::size_t idx = static_cast<std::size_t>(j * n_theta + k);
    if (seen[idx]) fail(source, lineno, "duplicate node");
    seen[idx] = true;
    ++count;
    for (long c = 0; c < n; ++c)
      u(static_cast<int>(c), static_cast<int>(j), static_cast<int>(k)) = {
          parse_real(f[static_cast<std::size_t>(2 + 2 * c)], source, lineno),
          parse_real(f[static_cast<std::size_t>(3 + 2 * c)], source, lineno)};
  }
  if (count != u.nodes())
    fail(source, lineno, "expected " + std::to_string(u.nodes()) + " rows, got " + std::to_string(count));
  return u;
}

void save_grid(const std::filesystem::path& path, const DiscGrid& u) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_grid(out, u);
}

DiscGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open grid file " + path.string());
  return read_grid(in, path.string());
}

}  // namespace jhol
