#pragma once

#include <Eigen/Dense>
#include <optional>

#include "kcurve/curvature.hpp"

namespace kcurve {

// Green function of [0,1] for -u'' with zero boundary values:
// g(s,t) = s(1-t) for s <= t, t(1-s) otherwise.
double green_kernel(double s, double t);

// Sampled solution pair of v'' + kappa v = 0 with v(0)=0, v'(0)=1.
// c is the derivative v'. Dense output between grid nodes is cubic Hermite
// using the exact node derivatives (s' = c, c' = -kappa s), so off-grid
// evaluation keeps the solver's fourth-order accuracy.
class GeneralizedSine {
public:
    GeneralizedSine() = default;
    GeneralizedSine(Eigen::ArrayXd xs, Eigen::ArrayXd s, Eigen::ArrayXd c,
                    CurvatureField curv);

    double s_at(double x) const;
    double c_at(double x) const;

    const Eigen::ArrayXd& grid() const { return xs_; }
    const Eigen::ArrayXd& s_values() const { return s_; }
    const Eigen::ArrayXd& c_values() const { return c_; }
    double domain_length() const { return xs_(xs_.size() - 1) - xs_(0); }

    // Smallest x > 0 with s(x) = 0, bisected to 1e-10, if any sign change
    // exists on the grid. Grid values below 1e-12 in magnitude count as zeros.
    std::optional<double> first_zero() const { return first_zero_; }

private:
    int cell_of(double x) const;
    Eigen::ArrayXd xs_, s_, c_;
    CurvatureField curv_;
    std::optional<double> first_zero_;
    friend GeneralizedSine solve_generalized_sin(const CurvatureField&, double);
};

// Classical fixed-step RK4 on the first-order system (v, v'). The solver
// grid always contains every node of `curv`, so discontinuities of a
// piecewise-constant coefficient never fall inside a step. step must be
// <= domain length / 10.
GeneralizedSine solve_generalized_sin(const CurvatureField& curv, double step);

struct SturmReport {
    bool pass = false;
    double min_margin = 0.0;  // min over grid of s_lo - s_hi
    double at_x = 0.0;
};

// Sturm comparison: curv_hi >= curv_lo pointwise and s_hi > 0 on the open
// domain imply s_lo >= s_hi. Throws DomainError when the preconditions are
// violated (mismatched domains, ordering failure, s_hi not positive).
SturmReport check_sturm_comparison(const CurvatureField& curv_lo,
                                   const CurvatureField& curv_hi,
                                   double step = 1e-3, double tol = 1e-8);

}  // namespace kcurve
