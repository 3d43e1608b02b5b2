#include "kcurve/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kcurve/quadrature.hpp"

namespace kcurve {

namespace {

// crop the along-geodesic field to its first `theta` units of arclength
CurvatureField crop_to(const CurvatureField& kappa_along, double theta) {
    const double a = kappa_along.xmin();
    return restrict_to_geodesic(kappa_along, ModelSegment{a, a + theta}).forward_field();
}

double effective_step(double theta, const SigmaOptions& opt) {
    return std::min(opt.step, theta / 16.0);
}

struct SolvedSigma {
    bool finite = false;
    GeneralizedSine gs;
    double s_theta = 0.0;
};

SolvedSigma solve_sigma(const CurvatureField& kappa_along, double theta,
                        const SigmaOptions& opt) {
    SolvedSigma out;
    CurvatureField cropped = crop_to(kappa_along, theta);
    out.gs = solve_generalized_sin(cropped, effective_step(theta, opt));
    auto fz = out.gs.first_zero();
    out.s_theta = out.gs.s_values()(out.gs.s_values().size() - 1);
    out.finite = !(fz && *fz <= theta) && out.s_theta >= opt.zero_eps;
    return out;
}

}  // namespace

DistortionValue sigma(const CurvatureField& kappa_along, double t, double theta,
                      const SigmaOptions& opt) {
    if (t < 0.0 || t > 1.0) throw DomainError("sigma: t must lie in [0,1]");
    if (theta < 0.0) throw DomainError("sigma: theta must be >= 0");
    if (theta == 0.0) return DistortionValue{t, theta, true, t};
    if (theta > kappa_along.length() + 1e-12)
        throw DomainError("sigma: theta exceeds the field's domain");

    SolvedSigma sol = solve_sigma(kappa_along, theta, opt);
    if (!sol.finite) return DistortionValue::infinite(t, theta);
    if (t == 0.0) return DistortionValue{t, theta, true, 0.0};
    if (t == 1.0) return DistortionValue{t, theta, true, 1.0};
    return DistortionValue{t, theta, true, sol.gs.s_at(t * theta) / sol.s_theta};
}

SigmaProfile sigma_profile(const CurvatureField& kappa_along, double theta,
                           const Eigen::ArrayXd& t_grid, const SigmaOptions& opt) {
    SigmaProfile prof;
    prof.theta = theta;
    prof.grid = t_grid;
    for (long i = 0; i < t_grid.size(); ++i)
        if (t_grid(i) < 0.0 || t_grid(i) > 1.0)
            throw DomainError("sigma_profile: t must lie in [0,1]");
    if (theta == 0.0) {
        prof.values = t_grid;
        return prof;
    }
    SolvedSigma sol = solve_sigma(kappa_along, theta, opt);
    if (!sol.finite) {
        prof.finite = false;
        return prof;
    }
    prof.values.resize(t_grid.size());
    for (long i = 0; i < t_grid.size(); ++i) {
        double t = t_grid(i);
        if (t == 0.0) prof.values(i) = 0.0;
        else if (t == 1.0) prof.values(i) = 1.0;
        else prof.values(i) = sol.gs.s_at(t * theta) / sol.s_theta;
    }
    return prof;
}

DistortionValue sigma_via_approximants(const CurvatureField& kappa_along, double t,
                                       double theta, int n0, double rel_tol,
                                       const SigmaOptions& opt) {
    if (theta == 0.0) return DistortionValue{t, theta, true, t};
    CurvatureField cropped = crop_to(kappa_along, theta);
    std::vector<double> tail;
    for (int k = 0; k <= 10; ++k) {
        int n = n0 << k;
        DistortionValue v = sigma(lsc_approx(cropped, n), t, theta, opt);
        if (!v.finite) return DistortionValue::infinite(t, theta);
        tail.push_back(v.value);
    }
    // The monotone tail converges like O(1/n) when sigma is finite (the
    // approximant differs from a discontinuous kappa on ramps of width ~1/n),
    // so the increments must decay geometrically over the last two doublings;
    // a growing tail signals the infinite branch.
    const std::size_t m = tail.size();
    double d1 = tail[m - 1] - tail[m - 2];
    double d2 = tail[m - 2] - tail[m - 3];
    double d3 = tail[m - 3] - tail[m - 4];
    double cushion = rel_tol * std::max(1.0, std::abs(tail[m - 1]));
    bool stagnated = std::abs(d1) < cushion ||
                     (std::abs(d1) <= 0.75 * std::abs(d2) + cushion &&
                      std::abs(d2) <= 0.75 * std::abs(d3) + cushion);
    if (!stagnated) return DistortionValue::infinite(t, theta);
    // geometric extrapolation of the remaining tail estimates the supremum
    double value = tail[m - 1];
    if (std::abs(d2) > cushion) {
        double r = std::clamp(d1 / d2, 0.0, 0.9);
        value += d1 * r / (1.0 - r);
    }
    return DistortionValue{t, theta, true, value};
}

namespace {

// integral over s in [0,1] of weight(s) * theta^2 * kappa(s * theta) * sigma^(s),
// split so kappa discontinuities and the kink of the weight never fall inside
// a quadrature piece
double weighted_sigma_integral(const CurvatureField& cropped, const GeneralizedSine& gs,
                               double s_theta, double theta,
                               const std::function<double(double)>& weight,
                               const std::vector<double>& extra_breaks, double max_h) {
    std::vector<double> breaks = extra_breaks;
    for (long i = 0; i < cropped.nodes().size(); ++i) {
        double s = (cropped.nodes()(i) - cropped.xmin()) / theta;
        if (s > 0.0 && s < 1.0) breaks.push_back(s);
    }
    Eigen::ArrayXd empty(0);
    auto partition = merge_partition(0.0, 1.0, {&empty}, breaks);
    auto integrand = [&](double s) {
        double sig = gs.s_at(s * theta) / s_theta;
        return weight(s) * theta * theta * cropped.value(cropped.xmin() + s * theta) * sig;
    };
    return integrate_pieces(partition, integrand, max_h);
}

}  // namespace

double fixed_point_residual(const CurvatureField& kappa_along, double theta,
                            const Eigen::ArrayXd& t_grid, const SigmaOptions& opt) {
    if (theta == 0.0) return 0.0;
    SolvedSigma sol = solve_sigma(kappa_along, theta, opt);
    if (!sol.finite)
        throw NotApplicableError("fixed_point_residual: sigma is infinite for this (kappa, theta)");
    CurvatureField cropped = crop_to(kappa_along, theta);
    const double max_h = t_grid.size() >= 2
                             ? (t_grid(t_grid.size() - 1) - t_grid(0)) / double(t_grid.size() - 1)
                             : 1e-3;
    double worst = 0.0;
    for (long i = 0; i < t_grid.size(); ++i) {
        double t = t_grid(i);
        if (t < 0.0 || t > 1.0) throw DomainError("fixed_point_residual: grid point outside [0,1]");
        double sig_t = (t == 0.0) ? 0.0 : (t == 1.0 ? 1.0 : sol.gs.s_at(t * theta) / sol.s_theta);
        double integral = weighted_sigma_integral(
            cropped, sol.gs, sol.s_theta, theta,
            [t](double s) { return green_kernel(s, t); }, {t}, max_h);
        worst = std::max(worst, std::abs(sig_t - integral - t));
    }
    return worst;
}

BoundaryDerivatives boundary_derivatives(const CurvatureField& kappa_along, double theta,
                                         const SigmaOptions& opt) {
    BoundaryDerivatives bd;
    if (theta == 0.0) {
        bd.at0 = 1.0;
        bd.at1 = 1.0;
        return bd;
    }
    SolvedSigma sol = solve_sigma(kappa_along, theta, opt);
    if (!sol.finite) {
        bd.finite = false;
        bd.at0 = std::numeric_limits<double>::infinity();
        bd.at1 = -std::numeric_limits<double>::infinity();
        return bd;
    }
    CurvatureField cropped = crop_to(kappa_along, theta);
    const double max_h = 1e-3;
    double i0 = weighted_sigma_integral(cropped, sol.gs, sol.s_theta, theta,
                                        [](double s) { return 1.0 - s; }, {}, max_h);
    double i1 = weighted_sigma_integral(cropped, sol.gs, sol.s_theta, theta,
                                        [](double s) { return s; }, {}, max_h);
    bd.at0 = 1.0 + i0;
    bd.at1 = 1.0 - i1;
    return bd;
}

double taylor_remainder(const CurvatureField& kappa_along, double t, double h,
                        const SigmaOptions& opt) {
    DistortionValue v = sigma(kappa_along, t, h, opt);
    if (!v.finite) throw NotApplicableError("taylor_remainder: sigma infinite at this h");
    double k0 = kappa_along.value(kappa_along.xmin());
    return v.value - t * (1.0 + (1.0 - t * t) * k0 * h * h / 6.0);
}

double log_convex_combine(const CurvatureField& kappa_a, const CurvatureField& kappa_b,
                          double lambda, double t, double theta, const SigmaOptions& opt) {
    if (lambda < 0.0 || lambda > 1.0) throw DomainError("log_convex_combine: lambda in [0,1]");
    DistortionValue sa = sigma(kappa_a, t, theta, opt);
    DistortionValue sb = sigma(kappa_b, t, theta, opt);
    DistortionValue sc = sigma(affine_combine(kappa_a, kappa_b, lambda), t, theta, opt);
    if (!sa.finite || !sb.finite || !sc.finite)
        throw NotApplicableError("log_convex_combine: infinite distortion coefficient");
    double lhs = std::pow(sa.value, 1.0 - lambda) * std::pow(sb.value, lambda);
    return lhs - sc.value;
}

double log_sigma_combination(const GeodesicCurvature& curv, double t, double x, double y,
                             const SigmaOptions& opt) {
    const double theta = curv.length();
    if (theta == 0.0) return std::log((1.0 - t) * std::exp(x) + t * std::exp(y));
    DistortionValue minus = sigma(curv.reversed_field(), 1.0 - t, theta, opt);
    DistortionValue plus = sigma(curv.forward_field(), t, theta, opt);
    if (!minus.finite || !plus.finite)
        throw NotApplicableError("log_sigma_combination: infinite distortion coefficient");
    return std::log(minus.value * std::exp(x) + plus.value * std::exp(y));
}

}  // namespace kcurve
