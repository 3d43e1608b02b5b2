#include "kcurve/sampled_function.hpp"

#include <algorithm>

#include "kcurve/table_io.hpp"

namespace kcurve {

SampledFunction::SampledFunction(Eigen::ArrayXd xs, Eigen::ArrayXd ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size() || xs_.size() < 2)
        throw DomainError("SampledFunction: need matching node/value arrays with >= 2 nodes");
    for (long i = 1; i < xs_.size(); ++i)
        if (!(xs_(i) > xs_(i - 1)))
            throw DomainError("SampledFunction: nodes must be strictly increasing");
    // node slopes from local quadratic fits; one-sided at the ends
    const long n = xs_.size();
    ds_.resize(n);
    if (n == 2) {
        ds_(0) = ds_(1) = (ys_(1) - ys_(0)) / (xs_(1) - xs_(0));
        return;
    }
    for (long i = 1; i + 1 < n; ++i) {
        double hl = xs_(i) - xs_(i - 1), hr = xs_(i + 1) - xs_(i);
        ds_(i) = (hl * hl * ys_(i + 1) - hr * hr * ys_(i - 1) +
                  (hr * hr - hl * hl) * ys_(i)) /
                 (hl * hr * (hl + hr));
    }
    auto end_slope = [&](long i0, long i1, long i2) {
        double h1 = xs_(i1) - xs_(i0), h2 = xs_(i2) - xs_(i0);
        // derivative at x(i0) of the quadratic through the three nodes
        double d1 = (ys_(i1) - ys_(i0)) / h1;
        double d2 = (ys_(i2) - ys_(i0)) / h2;
        return (d1 * h2 - d2 * h1) / (h2 - h1);
    };
    ds_(0) = end_slope(0, 1, 2);
    ds_(n - 1) = end_slope(n - 1, n - 2, n - 3);
}

SampledFunction SampledFunction::from_function(const std::function<double(double)>& f,
                                               double a, double b, int n_nodes) {
    if (n_nodes < 2 || !(b > a)) throw DomainError("SampledFunction::from_function: bad range");
    Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(n_nodes, a, b);
    Eigen::ArrayXd ys(n_nodes);
    for (int i = 0; i < n_nodes; ++i) ys(i) = f(xs(i));
    return SampledFunction(xs, ys);
}

SampledFunction SampledFunction::from_table(const std::string& path) {
    auto [xs, ys] = read_two_column_table(path);
    return SampledFunction(xs, ys);
}

long SampledFunction::cell_of(double x) const {
    const long n = xs_.size();
    if (x <= xs_(0)) return 0;
    if (x >= xs_(n - 1)) return n - 2;
    const double* begin = xs_.data();
    return std::upper_bound(begin, begin + n, x) - begin - 1;
}

double SampledFunction::operator()(double x) const {
    const long n = xs_.size();
    if (x <= xs_(0)) return ys_(0);
    if (x >= xs_(n - 1)) return ys_(n - 1);
    long i = cell_of(x);
    double h = xs_(i + 1) - xs_(i);
    double u = (x - xs_(i)) / h;
    double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * ys_(i) + (u3 - 2 * u2 + u) * h * ds_(i) +
           (-2 * u3 + 3 * u2) * ys_(i + 1) + (u3 - u2) * h * ds_(i + 1);
}

double SampledFunction::slope(double x) const {
    long i = cell_of(x);
    double h = xs_(i + 1) - xs_(i);
    double u = std::clamp((x - xs_(i)) / h, 0.0, 1.0);
    double u2 = u * u;
    return ((6 * u2 - 6 * u) * ys_(i) + (3 * u2 - 4 * u + 1) * h * ds_(i) +
            (-6 * u2 + 6 * u) * ys_(i + 1) + (3 * u2 - 2 * u) * h * ds_(i + 1)) /
           h;
}

}  // namespace kcurve
