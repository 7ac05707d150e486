#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace jhol {

/// 12 significant digits; "inf", "-inf" and "nan" spelled out.
std::string format_real(double v);

/// Ordered "key = value" report. No timestamps, so identical runs produce
/// identical bytes.
class Report {
 public:
  explicit Report(std::string title) : title_(std::move(title)) {}

  void add(const std::string& key, double v) { lines_.emplace_back(key, format_real(v)); }
  void add(const std::string& key, int v) { lines_.emplace_back(key, std::to_string(v)); }
  void add(const std::string& key, long v) { lines_.emplace_back(key, std::to_string(v)); }
  void add(const std::string& key, bool v) { lines_.emplace_back(key, v ? "true" : "false"); }
  void add(const std::string& key, const std::string& v) { lines_.emplace_back(key, v); }
  void add(const std::string& key, const char* v) { lines_.emplace_back(key, v); }
  void add_list(const std::string& key, const std::vector<double>& v);
  void add_list(const std::string& key, const std::vector<int>& v);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string title_;
  std::vector<std::pair<std::string, std::string>> lines_;
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::string str() const;
  void write(const std::filesystem::path& path) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace jhol
