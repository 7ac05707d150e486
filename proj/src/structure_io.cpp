#include "jhol/structure_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace jhol {

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-blank, non-comment line; false at EOF.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError(source_ + ":" + std::to_string(number_) + ": " + msg);
  }

 private:
  std::istream& in_;
  std::string source_;
  int number_ = 0;
};

double parse_double(const std::string& tok, const LineReader& lr) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) lr.fail("not a number: '" + tok + "'");
    return v;
  } catch (const std::invalid_argument&) {
    lr.fail("not a number: '" + tok + "'");
  } catch (const std::out_of_range&) {
    lr.fail("number out of range: '" + tok + "'");
  }
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

std::string key_value(const std::string& tok, const std::string& key, const LineReader& lr) {
  if (tok.rfind(key + "=", 0) != 0) lr.fail("expected '" + key + "=<value>' in header");
  return tok.substr(key.size() + 1);
}

}  // namespace

Structure read_structure(std::istream& in, const std::string& source) {
  LineReader lr(in, source);
  std::string line;
  if (!lr.next(line)) lr.fail("empty structure file");
  auto head = tokens(line);
  if (head.size() != 4 || head[0] != "acs" || head[1] != "v1")
    lr.fail("expected header 'acs v1 n=<n> radius=<r>'");
  const double nd = parse_double(key_value(head[2], "n", lr), lr);
  const double radius = parse_double(key_value(head[3], "radius", lr), lr);
  if (nd != static_cast<int>(nd) || nd < 1) lr.fail("n must be a positive integer");
  const int n = static_cast<int>(nd);
  if (n > kMaxFileDimension) lr.fail("complex dimension above " + std::to_string(kMaxFileDimension));
  if (!(radius > 0.0)) lr.fail("radius must be positive");
  const int d = 2 * n;

  if (!lr.next(line)) lr.fail("missing body after header");
  auto body = tokens(line);
  try {
    if (body[0] == "family") {
      if (body.size() < 2) lr.fail("missing family name");
      const std::string& name = body[1];
      std::vector<double> params;
      for (std::size_t i = 2; i < body.size(); ++i) params.push_back(parse_double(body[i], lr));
      Structure s = [&]() -> Structure {
        if (name == "standard") {
          if (!params.empty()) lr.fail("family standard takes no parameters");
          return Structure::standard(n, radius);
        }
        if (name == "constant_q") {
          if (static_cast<int>(params.size()) != d * d)
            lr.fail("constant_q expects " + std::to_string(d * d) + " entries");
          RealMat q(d, d);
          for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) q(r, c) = params[static_cast<std::size_t>(r * d + c)];
          return Structure::constant_q(q, radius);
        }
        if (name == "radial_lambda") {
          if (params.size() != 2) lr.fail("radial_lambda expects <l0> <l1>");
          return Structure::radial_lambda(n, params[0], params[1], radius);
        }
        lr.fail("unknown family '" + name + "'");
      }();
      if (lr.next(line)) lr.fail("unexpected content after family line");
      return s;
    }
    if (body[0] == "grid") {
      if (body.size() != 2) lr.fail("expected 'grid <m>'");
      const double md = parse_double(body[1], lr);
      if (md != static_cast<long>(md) || md < 1) lr.fail("grid count must be a positive integer");
      const auto m = static_cast<std::size_t>(md);
      std::vector<RealVec> xs;
      std::vector<RealMat> js;
      for (std::size_t i = 0; i < m; ++i) {
        if (!lr.next(line)) lr.fail("expected " + std::to_string(m) + " grid records, got " + std::to_string(i));
        auto t = tokens(line);
        if (static_cast<int>(t.size()) != d + d * d)
          lr.fail("grid record needs " + std::to_string(d + d * d) + " numbers");
        RealVec x(d);
        RealMat j(d, d);
        for (int a = 0; a < d; ++a) x[a] = parse_double(t[static_cast<std::size_t>(a)], lr);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c)
            j(r, c) = parse_double(t[static_cast<std::size_t>(d + r * d + c)], lr);
        xs.push_back(x);
        js.push_back(j);
      }
      if (lr.next(line)) lr.fail("unexpected content after grid records");

      std::vector<std::vector<double>> axes(d);
      for (int a = 0; a < d; ++a) {
        for (const auto& x : xs) axes[a].push_back(x[a]);
        std::sort(axes[a].begin(), axes[a].end());
        axes[a].erase(std::unique(axes[a].begin(), axes[a].end()), axes[a].end());
      }
      std::size_t total = 1;
      std::vector<std::size_t> strides(d, 1);
      for (int a = d - 1; a >= 0; --a) {
        strides[a] = total;
        total *= axes[a].size();
      }
      if (total != m) lr.fail("grid records do not form a tensor-product grid");
      std::vector<RealMat> values(m);
      std::vector<bool> seen(m, false);
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t idx = 0;
        for (int a = 0; a < d; ++a) {
          auto it = std::lower_bound(axes[a].begin(), axes[a].end(), xs[i][a]);
          idx += static_cast<std::size_t>(it - axes[a].begin()) * strides[a];
        }
        if (seen[idx]) lr.fail("duplicate grid record");
        seen[idx] = true;
        values[idx] = js[i];
      }
      return Structure::from_samples(n, radius, std::move(axes), std::move(values));
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    lr.fail(e.what());
  }
  lr.fail("expected 'family ...' or 'grid <m>'");
}

Structure load_structure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open structure file " + path.string());
  return read_structure(in, path.string());
}

void write_structure_family(std::ostream& out, int n, double radius, const std::string& family) {
  out.precision(17);
  out << "acs v1 n=" << n << " radius=" << radius << "\nfamily " << family << "\n";
}

void save_structure_family(const std::filesystem::path& path, int n, double radius,
                           const std::string& family) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_structure_family(out, n, radius, family);
}

}  // namespace jhol
