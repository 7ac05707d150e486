#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/cli.hpp"
#include "jhol/grid_io.hpp"

using namespace jhol;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const char* name) { return (testing::kDataDir / name).string(); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve-disc on the standard structure") {
  auto dir = testing::scratch_dir("cli_solve");
  auto r = run({"solve-disc", data("standard.acs"), "--a", "0,0", "--b", "0.1,0", "--out", dir.string(),
                "--resolution", "32,64"});
  CHECK(r.code == cli::kExitOk);
  const auto rep = slurp(dir / "solve_report.txt");
  CHECK(rep.find("status = converged") != std::string::npos);
  auto u = load_grid(dir / "u.grid");
  CHECK(testing::max_error(u, [](Complex z) { return 0.2 * z; }) < 1e-12);
}

TEST_CASE("solve-disc reports nonconvergence with exit 2") {
  auto dir = testing::scratch_dir("cli_nonconv");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "[solve]\nmax_outer = 1\n";
  }
  auto r = run({"--config", (dir / "run.cfg").string(), "--out", dir.string(), "--resolution", "32,64",
                "solve-disc", data("radial_lambda.acs"), "--a", "0,0,0,0", "--b", "0.05,0,0,0"});
  CHECK(r.code == cli::kExitNegative);
  const auto rep = slurp(dir / "solve_report.txt");
  CHECK(rep.find("status = not_converged") != std::string::npos);
  CHECK(rep.find("outer_gaps = ") != std::string::npos);
}

TEST_CASE("input errors exit 1") {
  auto dir = testing::scratch_dir("cli_input");
  CHECK(run({"solve-disc", "/nonexistent.acs", "--a", "0,0", "--b", "0.1,0", "--out", dir.string()}).code ==
        cli::kExitInput);
  {
    std::ofstream bad(dir / "bad.acs");
    bad << "acs v1 n=1 radius=1\nfamily nonsense\n";
  }
  auto r = run({"solve-disc", (dir / "bad.acs").string(), "--a", "0,0", "--b", "0.1,0", "--out", dir.string()});
  CHECK(r.code == cli::kExitInput);
  CHECK(r.err.find("bad.acs:2:") != std::string::npos);
  CHECK(run({"solve-disc", data("standard.acs"), "--a", "0", "--b", "0.1,0", "--out", dir.string()}).code ==
        cli::kExitInput);
  CHECK(run({"no-such-command"}).code == cli::kExitInput);
  CHECK(run({"--resolution", "30,60", "estimate-cp", "--out", dir.string()}).code == cli::kExitInput);
}

TEST_CASE("check-psh on an affine corpus") {
  auto dir = testing::scratch_dir("cli_psh");
  fs::create_directories(dir / "corpus");
  save_grid(dir / "corpus" / "d0.grid", testing::scalar(32, 64, [](Complex z) { return 0.4 * z; }));
  save_grid(dir / "corpus" / "d1.grid", testing::scalar(32, 64, [](Complex z) { return Complex(0.1) + 0.3 * z; }));
  const std::vector<std::string> base = {"check-psh", "--structure", data("standard.acs"), "--corpus",
                                         (dir / "corpus").string(), "--out", dir.string()};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  CHECK(with({"--function", "constant:2"}).code == cli::kExitOk);
  CHECK(with({"--function", "sqnorm"}).code == cli::kExitOk);
  auto neg = with({"--function", "neg-sqnorm"});
  CHECK(neg.code == cli::kExitNegative);
  CHECK(slurp(dir / "psh_report.txt").find("worst_center = ") != std::string::npos);
  auto ch = with({"--chirka", "--point", "0,0"});
  CHECK(ch.code == cli::kExitOk);
  CHECK(slurp(dir / "psh_report.txt").find("chirka_a_star = 0\n") != std::string::npos);
  CHECK(with({"--function", "bogus"}).code == cli::kExitInput);
  fs::create_directories(dir / "empty");
  CHECK(run({"check-psh", "--structure", data("standard.acs"), "--corpus", (dir / "empty").string(),
             "--function", "sqnorm", "--out", dir.string()})
            .code == cli::kExitInput);
}

TEST_CASE("boundary modes") {
  auto dir = testing::scratch_dir("cli_boundary");
  save_grid(dir / "id.grid", testing::scalar(32, 64, [](Complex z) { return z; }));
  save_grid(dir / "b.grid", testing::scalar(32, 64, [](Complex z) { return z * (z - 0.5) / (1.0 - z / 2.0); }));
  save_grid(dir / "sq.grid", testing::scalar(32, 64, [](Complex z) { return std::norm(z); }));
  const std::string out = dir.string();

  CHECK(run({"boundary", (dir / "id.grid").string(), "--mode", "trace", "--theta", "0.5", "--out", out}).code == 0);
  CHECK(slurp(dir / "boundary_trace.csv").rfind("t,zeta_re,zeta_im,u1_re,u1_im\n", 0) == 0);

  CHECK(run({"boundary", (dir / "id.grid").string(), "--mode", "ntlimit", "--count", "12", "--out", out}).code == 0);
  CHECK(slurp(dir / "boundary_ntlimit.txt").find("angles = 12") != std::string::npos);

  CHECK(run({"boundary", (dir / "b.grid").string(), "--mode", "blaschke", "--point", "0,0", "--out", out}).code == 0);
  const auto bl = slurp(dir / "boundary_blaschke.txt");
  CHECK(bl.find("zeros = 2") != std::string::npos);
  const auto at = bl.find("blaschke_sum = ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(bl.substr(at + 15)) == doctest::Approx(1.5).epsilon(1e-9));

  CHECK(run({"boundary", (dir / "sq.grid").string(), "--mode", "riesz", "--out", out}).code == 0);
  CHECK(fs::exists(dir / "boundary_riesz_cells.csv"));
  CHECK(fs::exists(dir / "boundary_riesz_poles.csv"));

  CHECK(run({"boundary", (dir / "id.grid").string(), "--mode", "zeros", "--theta", "0.1", "--point", "0,0", "--out", out})
            .code == cli::kExitInput);
  CHECK(run({"boundary", (dir / "id.grid").string(), "--mode", "sideways", "--out", out}).code == cli::kExitInput);
  CHECK(run({"boundary", (dir / "id.grid").string(), "--mode", "ntlimit", "--out", out}).code == cli::kExitInput);
}

TEST_CASE("validate-structure and estimate-cp") {
  auto dir = testing::scratch_dir("cli_validate");
  CHECK(run({"validate-structure", data("radial_lambda.acs"), "--samples", "64", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "validate_report.txt").find("valid = true") != std::string::npos);
  {
    std::ofstream bad(dir / "rot.acs");
    bad << "acs v1 n=1 radius=1\ngrid 4\n";
    for (double x : {-1.0, 1.0})
      for (double y : {-1.0, 1.0}) bad << x << " " << y << " 1 0 0 1\n";
  }
  CHECK(run({"validate-structure", (dir / "rot.acs").string(), "--out", dir.string()}).code == cli::kExitNegative);
  CHECK(run({"estimate-cp", "--resolution", "16,32", "--out", dir.string()}).code == 0);
  CHECK(slurp(dir / "cp_report.txt").find("cp_estimate = ") != std::string::npos);
}

TEST_CASE("identical runs produce identical reports") {
  auto d1 = testing::scratch_dir("cli_det1");
  auto d2 = testing::scratch_dir("cli_det2");
  save_grid(d1 / "id.grid", testing::scalar(32, 64, [](Complex z) { return z; }));
  for (const auto& d : {d1, d2}) {
    auto r = run({"--seed", "5", "boundary", (d1 / "id.grid").string(), "--mode", "ntlimit", "--count", "8",
                  "--out", d.string()});
    CHECK(r.code == 0);
  }
  CHECK(slurp(d1 / "boundary_ntlimit.csv") == slurp(d2 / "boundary_ntlimit.csv"));
  CHECK(slurp(d1 / "boundary_ntlimit.txt") == slurp(d2 / "boundary_ntlimit.txt"));
  auto d3 = testing::scratch_dir("cli_det3");
  run({"--seed", "6", "boundary", (d1 / "id.grid").string(), "--mode", "ntlimit", "--count", "8", "--out",
       d3.string()});
  CHECK(slurp(d1 / "boundary_ntlimit.csv") != slurp(d3 / "boundary_ntlimit.csv"));
}

}
