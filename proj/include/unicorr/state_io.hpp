#pragma once

#include <iosfwd>
#include <string>

#include "unicorr/matrix_core.hpp"

namespace unicorr {

// Plain-text state file:
//   dims: d1 d2
//   row col real imag
//   ...
// Entries not listed are zero. Blank lines and lines starting with '#' are
// skipped. The matrix goes through make_density.
DensityOperator parse_state(std::istream& in);
DensityOperator read_state_file(const std::string& path);

// Writes every nonzero entry with 17 significant digits.
void write_state(std::ostream& out, const DensityOperator& rho);

}  // namespace unicorr
