#include "kcurve/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "kcurve/errors.hpp"

namespace kcurve {

std::vector<double> merge_partition(double a, double b,
                                    const std::vector<const Eigen::ArrayXd*>& break_sets,
                                    const std::vector<double>& extra) {
    if (!(b > a)) throw DomainError("merge_partition: empty interval");
    std::vector<double> pts{a, b};
    auto push = [&](double x) {
        if (x > a && x < b) pts.push_back(x);
    };
    for (const auto* set : break_sets)
        for (long i = 0; i < set->size(); ++i) push((*set)(i));
    for (double x : extra) push(x);
    std::sort(pts.begin(), pts.end());
    // drop near-duplicates
    std::vector<double> out;
    out.reserve(pts.size());
    const double eps = 1e-14 * (std::abs(a) + std::abs(b) + (b - a));
    for (double x : pts)
        if (out.empty() || x - out.back() > eps) out.push_back(x);
    if (out.back() != b) out.back() = b;
    return out;
}

double integrate_pieces(const std::vector<double>& partition,
                        const std::function<double(double)>& f,
                        double max_h) {
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < partition.size(); ++p) {
        double l = partition[p], r = partition[p + 1];
        double w = r - l;
        if (w <= 0) continue;
        int m = std::max(1, static_cast<int>(std::ceil(w / max_h)));
        double h = w / m;
        // composite Simpson on m sub-cells of the piece; the outermost
        // samples are nudged into the piece so a piecewise-constant factor
        // is never read on the wrong side of a breakpoint
        double nudge = 1e-9 * w;
        double acc = 0.0;
        double fl = f(l + nudge);
        for (int k = 0; k < m; ++k) {
            double x0 = l + k * h;
            double x1 = x0 + h;
            double fm = f(x0 + 0.5 * h);
            double fr = (k + 1 == m) ? f(r - nudge) : f(x1);
            acc += (h / 6.0) * (fl + 4.0 * fm + fr);
            fl = fr;
        }
        total += acc;
    }
    return total;
}

Eigen::ArrayXd linspace(double a, double b, int n) {
    return Eigen::ArrayXd::LinSpaced(n, a, b);
}

}  // namespace kcurve
