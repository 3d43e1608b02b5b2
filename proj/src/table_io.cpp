#include "kcurve/table_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "kcurve/errors.hpp"

namespace kcurve {

std::pair<Eigen::ArrayXd, Eigen::ArrayXd> read_two_column_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");

    std::vector<double> xs, ys;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (auto& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ss(line);
        double x, y;
        if (!(ss >> x)) continue;  // blank or comment-only line
        if (!(ss >> y)) throw ParseError(path, lineno, "expected two numeric columns");
        double extra;
        if (ss >> extra) throw ParseError(path, lineno, "more than two columns");
        if (!std::isfinite(x) || !std::isfinite(y))
            throw ParseError(path, lineno, "non-finite value");
        if (!xs.empty() && x <= xs.back())
            throw ParseError(path, lineno, "first column must be strictly increasing");
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < 2) throw ParseError(path, lineno, "table needs at least two rows");

    Eigen::ArrayXd ax = Eigen::Map<Eigen::ArrayXd>(xs.data(), static_cast<long>(xs.size()));
    Eigen::ArrayXd ay = Eigen::Map<Eigen::ArrayXd>(ys.data(), static_cast<long>(ys.size()));
    return {ax, ay};
}

}  // namespace kcurve
