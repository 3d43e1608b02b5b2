#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "kcurve/errors.hpp"

namespace kcurve {

// A scalar function of one variable given by node samples. Evaluation is
// cubic Hermite through the samples with quadratic-fit node slopes, so node
// values are reproduced exactly and quadratics interpolate with no error.
// Nodes are strictly increasing.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(Eigen::ArrayXd xs, Eigen::ArrayXd ys);

    static SampledFunction from_function(const std::function<double(double)>& f,
                                         double a, double b, int n_nodes);
    // Two-column text table (x,y), '#' comments allowed.
    static SampledFunction from_table(const std::string& path);

    double operator()(double x) const;
    // Derivative of the interpolant at x (right cell at nodes).
    double slope(double x) const;

    double xmin() const { return xs_(0); }
    double xmax() const { return xs_(xs_.size() - 1); }
    const Eigen::ArrayXd& nodes() const { return xs_; }
    const Eigen::ArrayXd& values() const { return ys_; }

    bool contains(double x, double tol = 0.0) const {
        return x >= xmin() - tol && x <= xmax() + tol;
    }

private:
    long cell_of(double x) const;
    Eigen::ArrayXd xs_, ys_, ds_;
};

}  // namespace kcurve
