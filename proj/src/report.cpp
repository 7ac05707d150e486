#include "jhol/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jhol/common.hpp"

namespace jhol {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

namespace {

template <class T, class F>
std::string join(const std::vector<T>& v, F fmt) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt(v[i]);
  }
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace

void Report::add_list(const std::string& key, const std::vector<double>& v) {
  lines_.emplace_back(key, join(v, format_real));
}

void Report::add_list(const std::string& key, const std::vector<int>& v) {
  lines_.emplace_back(key, join(v, [](int x) { return std::to_string(x); }));
}

std::string Report::str() const {
  std::ostringstream os;
  os << "# " << title_ << "\n";
  for (const auto& [k, v] : lines_) os << k << " = " << v << "\n";
  return os.str();
}

void Report::write(const std::filesystem::path& path) const { write_text(path, str()); }

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw InputError("csv row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  os << join(header_, [](const std::string& s) { return s; }) << "\n";
  for (const auto& r : rows_) os << join(r, [](const std::string& s) { return s; }) << "\n";
  return os.str();
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

}  // namespace jhol
