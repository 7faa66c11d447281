#include "unicorr/state_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace unicorr {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool skip(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

DensityOperator parse_state(std::istream& in) {
  std::string line;
  int lineno = 0;
  Dims dims;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != "dims:") fail(lineno, "expected 'dims:' header");
    int d = 0;
    while (ls >> d) {
      if (d < 1) fail(lineno, "dimensions must be positive");
      dims.push_back(d);
    }
    if (!ls.eof()) fail(lineno, "malformed dimension list");
    if (dims.empty()) fail(lineno, "no dimensions given");
    break;
  }
  if (dims.empty()) fail(lineno, "missing 'dims:' header");

  const int n = dims_product(dims);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  while (std::getline(in, line)) {
    ++lineno;
    if (skip(line)) continue;
    std::istringstream ls(line);
    long row = -1, col = -1;
    double re = 0.0, im = 0.0;
    if (!(ls >> row >> col >> re >> im)) fail(lineno, "expected 'row col real imag'");
    std::string extra;
    if (ls >> extra) fail(lineno, "trailing text '" + extra + "'");
    if (row < 0 || col < 0 || row >= n || col >= n) fail(lineno, "index out of range");
    char& flag = seen[static_cast<std::size_t>(row) * n + col];
    if (flag) fail(lineno, "duplicate entry");
    flag = 1;
    m(row, col) = Complex(re, im);
  }
  return make_density(m, dims);
}

DensityOperator read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_state(in);
}

void write_state(std::ostream& out, const DensityOperator& rho) {
  out << "dims:";
  for (int d : rho.dims()) out << ' ' << d;
  out << '\n';
  char buf[96];
  const ComplexMatrix& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == Complex(0.0, 0.0)) continue;
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g %.17g", static_cast<long>(i),
                    static_cast<long>(j), m(i, j).real(), m(i, j).imag());
      out << buf << '\n';
    }
}

}  // namespace unicorr
