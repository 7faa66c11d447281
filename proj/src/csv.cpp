#include "unicorr/csv.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "unicorr/error.hpp"

namespace unicorr {

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  meta("schema", std::to_string(kCsvSchemaVersion));
}

void CsvTable::meta(std::string key, std::string value) {
  meta_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw Error(ErrorCode::BadLength, "row width does not match the header");
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::footer(std::string line) { footer_.push_back(std::move(line)); }

void CsvTable::write(std::ostream& out) const {
  for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  for (const auto& f : footer_) out << "# " << f << '\n';
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(bool v) { return v ? "true" : "false"; }

std::string fmt(long long v) { return std::to_string(v); }

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace unicorr
