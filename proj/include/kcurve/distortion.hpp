#pragma once

#include <Eigen/Dense>

#include "kcurve/curvature.hpp"
#include "kcurve/ode.hpp"

namespace kcurve {

// A distortion coefficient value. INFINITE is a distinguished tag, never a
// floating-point overflow; the convention infinity * 0 = 0 is applied on
// the tag by callers.
struct DistortionValue {
    double t = 0.0;
    double theta = 0.0;
    bool finite = true;
    double value = 0.0;  // meaningful iff finite

    static DistortionValue infinite(double t, double theta) {
        return DistortionValue{t, theta, false, 0.0};
    }
};

struct SigmaOptions {
    double step = 1e-3;          // ODE step (capped at theta/16)
    double zero_eps = 1e-10;     // s(theta) below this classifies as INFINITE
};

// sigma_kappa^(t)(theta) = s_kappa(t*theta) / s_kappa(theta) when s_kappa > 0
// on (0, theta], INFINITE otherwise; theta = 0 gives t. `kappa_along` is the
// forward or reversed field of a GeodesicCurvature, defined on [0, L] with
// theta <= L. Throws DomainError for t outside [0,1].
DistortionValue sigma(const CurvatureField& kappa_along, double t, double theta,
                      const SigmaOptions& opt = {});

// Batched evaluation over a t-grid with a single ODE solve.
struct SigmaProfile {
    bool finite = true;
    double theta = 0.0;
    Eigen::ArrayXd grid;    // t values
    Eigen::ArrayXd values;  // sigma at each t (empty when infinite)
};
SigmaProfile sigma_profile(const CurvatureField& kappa_along, double theta,
                           const Eigen::ArrayXd& t_grid, const SigmaOptions& opt = {});

// sup over Lipschitz approximants kappa_n, n = n0 * 2^k, k = 0..10, with a
// monotone-tail stagnation check. A tail that keeps growing by more than
// rel_tol over the last two doublings is reported INFINITE.
DistortionValue sigma_via_approximants(const CurvatureField& kappa_along, double t,
                                       double theta, int n0 = 1,
                                       double rel_tol = 1e-8,
                                       const SigmaOptions& opt = {});

// Max over the grid of | sigma^(t) - integral g(s,t) theta^2 kappa(s theta)
// sigma^(s) ds - t |, quadrature on the same grid. Throws NotApplicableError
// when sigma is infinite for this (kappa, theta).
double fixed_point_residual(const CurvatureField& kappa_along, double theta,
                            const Eigen::ArrayXd& t_grid, const SigmaOptions& opt = {});

// One-sided derivatives of t -> sigma^(t)(theta) at the endpoints, computed
// from the Green-integral representation:
//   at0 = 1 + int (1-s) theta^2 kappa(s theta) sigma^(s)(theta) ds
//   at1 = 1 - int s theta^2 kappa(s theta) sigma^(s)(theta) ds.
// When sigma is INFINITE, at0 carries the infinite tag per the convention.
struct BoundaryDerivatives {
    bool finite = true;
    double at0 = 0.0;
    double at1 = 0.0;
};
BoundaryDerivatives boundary_derivatives(const CurvatureField& kappa_along, double theta,
                                         const SigmaOptions& opt = {});

// sigma^(t)(h) - t [ 1 + (1 - t^2) kappa(0) h^2 / 6 ].
double taylor_remainder(const CurvatureField& kappa_along, double t, double h,
                        const SigmaOptions& opt = {});

// LHS - RHS of the log-convexity inequality
//   sigma_a^(1-lambda) * sigma_b^lambda >= sigma_{(1-lambda)a + lambda b}.
// Throws NotApplicableError when any operand is INFINITE.
double log_convex_combine(const CurvatureField& kappa_a, const CurvatureField& kappa_b,
                          double lambda, double t, double theta,
                          const SigmaOptions& opt = {});

// G(x, y, kappa) = log[ sigma_{kappa^-}^(1-t) e^x + sigma_{kappa^+}^(t) e^y ],
// the convex functional behind the aggregation arguments. Throws
// NotApplicableError when a coefficient is INFINITE.
double log_sigma_combination(const GeodesicCurvature& curv, double t,
                             double x, double y, const SigmaOptions& opt = {});

}  // namespace kcurve
