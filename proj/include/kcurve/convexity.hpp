#pragma once

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "kcurve/curvature.hpp"
#include "kcurve/distortion.hpp"
#include "kcurve/sampled_function.hpp"

namespace kcurve {

// N = infinity marker for dimensional parameters.
inline constexpr double INFINITE_DIMENSION = std::numeric_limits<double>::infinity();

// A concavity/convexity certification problem on [a,b]: a sampled
// non-negative function u (or a potential S with U_N = exp(-S/N)) against a
// curvature field kappa.
struct ConvexityProblem {
    SampledFunction u;      // >= 0
    CurvatureField curv;
    double tolerance = 1e-7;  // absolute margin tolerance at grid 1e-3, scaled linearly

    double domain_min() const { return u.xmin(); }
    double domain_max() const { return u.xmax(); }
};

struct ConvexityWitness {
    enum class Kind { Segment, TestFunction } kind = Kind::Segment;
    double seg_start = 0.0;  // Segment witnesses
    double seg_end = 0.0;
    double t = 0.0;
    int test_index = -1;     // TestFunction witnesses
};

// Verdict plus the worst margin seen; failing verdicts always carry a
// witness that reproduces the negative margin. On intervals geodesics are
// unique, so weak and strong convexity coincide ("weak=strong on 1-D").
struct ConvexityCertificate {
    bool pass = false;
    double worst_margin = 0.0;  // most negative inequality slack
    ConvexityWitness witness;
};

// Quadratic B-spline bump family: n_centers centers x n_widths dyadic widths,
// supports clamped inside (a,b). phi >= 0, C^1, phi'' piecewise constant.
struct BumpFamily {
    struct Bump {
        double center;
        double width;  // scale w; support is [center - 1.5 w, center + 1.5 w]
    };
    std::vector<Bump> bumps;

    static BumpFamily standard(double a, double b, int n_centers = 64, int n_widths = 4);
    static double phi(const Bump& b, double x);
    static double phi_second(const Bump& b, double x);
    // knots of phi'' (breakpoints for exact quadrature)
    static std::array<double, 4> knots(const Bump& b);
};

// Segment families for the geodesic-based criteria.
std::vector<ModelSegment> segment_grid(double a, double b, int n_endpoints);

// (i) distributional inequality: int phi'' u <= -int phi kappa u for every
// bump. Throws DomainError for an empty family.
ConvexityCertificate distributional_residual(const ConvexityProblem& prob,
                                             const BumpFamily& family);

// (ii) Green-kernel integral inequality along sampled segments.
ConvexityCertificate green_inequality_check(const ConvexityProblem& prob,
                                            const std::vector<ModelSegment>& segments,
                                            const Eigen::ArrayXd& t_grid);

// (iii)/(iv) distortion-coefficient concavity; when max_length is given only
// segments with theta <= max_length are tested (criterion (iii)), otherwise
// all segments (criterion (iv)). INFINITE coefficients follow the
// infinity * 0 = 0 convention and force u(endpoint) = 0.
ConvexityCertificate sigma_concavity_check(const ConvexityProblem& prob,
                                           const std::vector<ModelSegment>& segments,
                                           const Eigen::ArrayXd& t_grid,
                                           std::optional<double> max_length = std::nullopt);

// (kappa, N)-convexity of a potential S: for finite N delegates to the
// sigma-concavity of U_N = exp(-S/N) with field kappa/N; for
// N = INFINITE_DIMENSION checks the Green-weighted form
//   S(gamma_t) <= (1-t) S(x0) + t S(x1) - int g(s,t) theta^2 kappa(gamma(s)) ds.
ConvexityCertificate certify_kappa_N_convex(const SampledFunction& S,
                                            const CurvatureField& curv, double N,
                                            const std::vector<ModelSegment>& segments,
                                            const Eigen::ArrayXd& t_grid,
                                            std::optional<double> max_length = std::nullopt,
                                            double tolerance = 1e-7);

// First-variation inequality for continuously differentiable u certified by
// the sigma criterion: returns the minimum over segments of
//   (u o gamma)'(0) + at1(kappa^-) u(gamma(0)) - at0(kappa^+) u(gamma(1)).
double first_variation_margin(const ConvexityProblem& prob,
                              const std::vector<ModelSegment>& segments);

// Largest max_length for which sigma_concavity_check passes, found by
// bisection; a diagnostic for the existence constant in criterion (iii).
double largest_passing_max_length(const ConvexityProblem& prob,
                                  const std::vector<ModelSegment>& segments,
                                  const Eigen::ArrayXd& t_grid, double resolution = 1e-3);

}  // namespace kcurve
