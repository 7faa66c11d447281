#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace unicorr {

inline constexpr int kCsvSchemaVersion = 1;

// Flat table written as '#'-prefixed metadata lines, a header row and data
// rows. Reals are formatted with 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void meta(std::string key, std::string value);
  void add_row(std::vector<std::string> cells);
  void footer(std::string line);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> footer_;
};

std::string fmt(double v);
std::string fmt(bool v);
std::string fmt(long long v);
inline std::string fmt(int v) { return fmt(static_cast<long long>(v)); }
inline std::string fmt(unsigned long long v) { return std::to_string(v); }
std::string fmt_list(const std::vector<double>& v);

}  // namespace unicorr
