#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

namespace kcurve {

// Reads a two-column numeric text table. Columns may be separated by a
// comma or whitespace; blank lines and '#' comments are skipped. The
// first column must be finite and strictly increasing, the second finite.
// Throws ParseError with the offending line number otherwise.
std::pair<Eigen::ArrayXd, Eigen::ArrayXd> read_two_column_table(const std::string& path);

}  // namespace kcurve
