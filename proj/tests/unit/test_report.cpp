#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "jhol/report.hpp"

using namespace jhol;

TEST_SUITE("report") {

TEST_CASE("reals print with 12 significant digits") {
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_real(std::nan("")) == "nan");
}

TEST_CASE("report layout is ordered key = value lines") {
  Report r("demo");
  r.add("alpha", 0.5);
  r.add("count", 3);
  r.add("ok", true);
  r.add("name", "x");
  r.add_list("values", std::vector<double>{1.0, 0.25});
  const std::string s = r.str();
  CHECK(s.rfind("# demo\n", 0) == 0);
  CHECK(s.find("alpha = 0.5\ncount = 3\nok = true\nname = x\n") != std::string::npos);
  CHECK(s.find("values = ") != std::string::npos);
}

TEST_CASE("reports and tables write into new directories") {
  auto dir = testing::scratch_dir("report");
  Report r("t");
  r.add("k", 1);
  r.write(dir / "a" / "r.txt");
  std::ifstream in(dir / "a" / "r.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.str());
  CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  CHECK(t.str() == "a,b\n1,2\n");
  CHECK_THROWS(t.add_row({"1"}));
  t.write(dir / "b" / "t.csv");
  CHECK(std::filesystem::exists(dir / "b" / "t.csv"));
}

}
