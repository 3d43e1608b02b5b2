#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kcurve/errors.hpp"

namespace kcurve {

// A lower-semi-continuous curvature bound on a closed interval.
//
// Two storage modes:
//  - PiecewiseConstant: left-closed cells [x_i, x_{i+1}) with one value per
//    cell; the right endpoint carries its own value. Cell values are the
//    infimum of the represented function over the cell, which keeps the
//    sampled field a lower-semi-continuous minorant.
//  - PiecewiseLinear: continuous interpolation through node values (used for
//    the Lipschitz approximants, which are piecewise linear by construction).
class CurvatureField {
public:
    enum class Interp { PiecewiseConstant, PiecewiseLinear };

    CurvatureField() = default;

    // nodes: m+1 strictly increasing breakpoints. For PiecewiseConstant,
    // node_values has m+1 entries: value i applies on [x_i, x_{i+1}), the
    // last entry at {x_m}. For PiecewiseLinear the entries are node values.
    CurvatureField(Eigen::ArrayXd nodes, Eigen::ArrayXd node_values, Interp interp);

    static CurvatureField constant(double a, double b, double value);
    // Loader for the `x,kappa` table interface; records K = min of the table.
    static CurvatureField from_table(const std::string& path);

    double value(double x) const;
    double lower_bound() const { return lower_bound_; }  // K
    double xmin() const { return nodes_(0); }
    double xmax() const { return nodes_(nodes_.size() - 1); }
    double length() const { return xmax() - xmin(); }
    Interp interp() const { return interp_; }

    const Eigen::ArrayXd& nodes() const { return nodes_; }
    const Eigen::ArrayXd& node_values() const { return values_; }

    bool contains(double x, double tol = 1e-12) const {
        return x >= xmin() - tol && x <= xmax() + tol;
    }

private:
    Eigen::ArrayXd nodes_, values_;
    Interp interp_ = Interp::PiecewiseConstant;
    double lower_bound_ = 0.0;
};

// Pointwise algebra; results live on the union grid of the operands.
CurvatureField scale_field(const CurvatureField& f, double factor);
CurvatureField shift_field(const CurvatureField& f, double offset);
// (1-lambda)*a + lambda*b on a shared domain.
CurvatureField affine_combine(const CurvatureField& a, const CurvatureField& b, double lambda);

// Moreau-Yosida style approximant kappa_n(x) = min( inf_y { kappa(y) + n|x-y| }, n ).
// Exact for the stored field: the output is the true piecewise-linear lower
// envelope with analytically located kinks.
CurvatureField lsc_approx(const CurvatureField& field, int n);

// A curvature bound restricted to a constant-speed geodesic of a 1-D model
// space, i.e. an oriented segment. `forward` is kappa composed with the
// unit-speed parametrization; `reversed(x) = forward(theta - x)` exactly.
class GeodesicCurvature {
public:
    GeodesicCurvature() = default;
    GeodesicCurvature(double theta, CurvatureField forward);

    double length() const { return theta_; }
    bool empty() const { return theta_ <= 0.0; }

    double forward(double r) const { return forward_.value(r); }
    double reversed(double r) const { return forward_.value(theta_ - r); }

    const CurvatureField& forward_field() const { return forward_; }
    // Materialized reflection (same nodes mirrored); cell values agree with
    // reversed() except possibly at isolated breakpoints.
    CurvatureField reversed_field() const;

private:
    double theta_ = 0.0;
    CurvatureField forward_;
};

// Oriented segment [start -> end] inside a model-space interval.
struct ModelSegment {
    double start = 0.0;
    double end = 0.0;
    double length() const { return std::abs(end - start); }
};

// kappa composed with the unit-speed parametrization of the segment.
// Throws DomainError if the segment leaves the field's domain.
GeodesicCurvature restrict_to_geodesic(const CurvatureField& field, const ModelSegment& segment);

// Plan-averaged curvature profile t -> integral of kappa(e_t(gamma)) |gamma'|^2 dPi,
// together with Theta = W2(mu0, mu1). profile(t) >= K * Theta^2.
struct PlanCurvature {
    double theta = 0.0;          // Theta
    Eigen::ArrayXd grid;         // t values in [0,1]
    Eigen::ArrayXd profile;      // curvature * length^2 units
};

}  // namespace kcurve
