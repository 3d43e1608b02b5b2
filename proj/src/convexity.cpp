#include "kcurve/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kcurve/quadrature.hpp"

namespace kcurve {

namespace {

// margin tolerance scales linearly with the sample grid, anchored at 1e-3
double effective_tol(const ConvexityProblem& prob) {
    double dx = (prob.u.xmax() - prob.u.xmin()) / double(prob.u.nodes().size() - 1);
    return prob.tolerance * std::max(dx, 1e-6) / 1e-3;
}

void track_worst(ConvexityCertificate& cert, double margin, const ConvexityWitness& wit,
                 bool& first) {
    if (first || margin < cert.worst_margin) {
        cert.worst_margin = margin;
        cert.witness = wit;
    }
    first = false;
}

}  // namespace

BumpFamily BumpFamily::standard(double a, double b, int n_centers, int n_widths) {
    BumpFamily fam;
    const double W = b - a;
    for (int k = 0; k < n_widths; ++k) {
        double w = W / (8.0 * double(1 << k));
        double lo = a + 1.5 * w * 1.0000001;
        double hi = b - 1.5 * w * 1.0000001;
        if (hi <= lo) continue;
        for (int c = 0; c < n_centers; ++c) {
            double center = lo + (hi - lo) * (c + 0.5) / n_centers;
            fam.bumps.push_back({center, w});
        }
    }
    return fam;
}

double BumpFamily::phi(const Bump& b, double x) {
    double xi = std::abs((x - b.center) / b.width);
    if (xi <= 0.5) return 0.75 - xi * xi;
    if (xi <= 1.5) {
        double d = 1.5 - xi;
        return 0.5 * d * d;
    }
    return 0.0;
}

double BumpFamily::phi_second(const Bump& b, double x) {
    double xi = std::abs((x - b.center) / b.width);
    double w2 = b.width * b.width;
    if (xi < 0.5) return -2.0 / w2;
    if (xi < 1.5) return 1.0 / w2;
    return 0.0;
}

std::array<double, 4> BumpFamily::knots(const Bump& b) {
    return {b.center - 1.5 * b.width, b.center - 0.5 * b.width,
            b.center + 0.5 * b.width, b.center + 1.5 * b.width};
}

std::vector<ModelSegment> segment_grid(double a, double b, int n_endpoints) {
    Eigen::ArrayXd pts = linspace(a, b, n_endpoints);
    std::vector<ModelSegment> segs;
    for (int i = 0; i < n_endpoints; ++i)
        for (int j = i + 1; j < n_endpoints; ++j) segs.push_back({pts(i), pts(j)});
    return segs;
}

ConvexityCertificate distributional_residual(const ConvexityProblem& prob,
                                             const BumpFamily& family) {
    if (family.bumps.empty())
        throw DomainError("distributional_residual: empty test-function family");
    const double tol = effective_tol(prob);
    ConvexityCertificate cert;
    bool first = true;
    for (std::size_t j = 0; j < family.bumps.size(); ++j) {
        const auto& bump = family.bumps[j];
        auto kn = BumpFamily::knots(bump);
        double lo = std::max(kn[0], prob.domain_min());
        double hi = std::min(kn[3], prob.domain_max());
        if (hi <= lo) continue;
        std::vector<double> extra(kn.begin(), kn.end());
        std::vector<const Eigen::ArrayXd*> sets{&prob.curv.nodes(), &prob.u.nodes()};
        auto partition = merge_partition(lo, hi, sets, extra);
        // both integrands are piecewise cubic between partition points
        double second_term = integrate_pieces(
            partition, [&](double x) { return BumpFamily::phi_second(bump, x) * prob.u(x); },
            hi - lo);
        double zero_term = integrate_pieces(
            partition,
            [&](double x) { return BumpFamily::phi(bump, x) * prob.curv.value(x) * prob.u(x); },
            hi - lo);
        double margin = -(second_term + zero_term);  // >= 0 when the inequality holds
        ConvexityWitness wit;
        wit.kind = ConvexityWitness::Kind::TestFunction;
        wit.test_index = static_cast<int>(j);
        track_worst(cert, margin, wit, first);
    }
    cert.pass = cert.worst_margin >= -tol;
    return cert;
}

ConvexityCertificate green_inequality_check(const ConvexityProblem& prob,
                                            const std::vector<ModelSegment>& segments,
                                            const Eigen::ArrayXd& t_grid) {
    const double tol = effective_tol(prob);
    ConvexityCertificate cert;
    bool first = true;
    for (const auto& seg : segments) {
        if (!prob.u.contains(seg.start) || !prob.u.contains(seg.end))
            throw DomainError("green_inequality_check: segment outside [a,b]");
        const double theta = seg.length();
        if (theta == 0.0) continue;
        const double dir = seg.end - seg.start;
        std::vector<double> extra;
        auto add_images = [&](const Eigen::ArrayXd& nodes) {
            for (long i = 0; i < nodes.size(); ++i) {
                double s = (nodes(i) - seg.start) / dir;
                if (s > 0.0 && s < 1.0) extra.push_back(s);
            }
        };
        add_images(prob.curv.nodes());
        add_images(prob.u.nodes());
        for (long it = 0; it < t_grid.size(); ++it) {
            double t = t_grid(it);
            double gt = seg.start + t * dir;
            std::vector<double> part_extra = extra;
            part_extra.push_back(t);
            Eigen::ArrayXd none(0);
            auto partition = merge_partition(0.0, 1.0, {&none}, part_extra);
            double integral = integrate_pieces(
                partition,
                [&](double s) {
                    double x = seg.start + s * dir;
                    return green_kernel(t, s) * prob.curv.value(x) * theta * theta * prob.u(x);
                },
                1.0);
            double rhs = (1.0 - t) * prob.u(seg.start) + t * prob.u(seg.end) + integral;
            double margin = prob.u(gt) - rhs;
            ConvexityWitness wit;
            wit.seg_start = seg.start;
            wit.seg_end = seg.end;
            wit.t = t;
            track_worst(cert, margin, wit, first);
        }
    }
    cert.pass = cert.worst_margin >= -tol;
    return cert;
}

ConvexityCertificate sigma_concavity_check(const ConvexityProblem& prob,
                                           const std::vector<ModelSegment>& segments,
                                           const Eigen::ArrayXd& t_grid,
                                           std::optional<double> max_length) {
    const double tol = effective_tol(prob);
    ConvexityCertificate cert;
    bool first = true;
    Eigen::ArrayXd rev_grid = 1.0 - t_grid;
    for (const auto& seg : segments) {
        if (!prob.u.contains(seg.start) || !prob.u.contains(seg.end))
            throw DomainError("sigma_concavity_check: segment outside [a,b]");
        const double theta = seg.length();
        if (theta == 0.0) continue;
        if (max_length && theta > *max_length) continue;
        GeodesicCurvature along = restrict_to_geodesic(prob.curv, seg);
        SigmaProfile fwd = sigma_profile(along.forward_field(), theta, t_grid);
        SigmaProfile rev = sigma_profile(along.reversed_field(), theta, rev_grid);
        double u0 = prob.u(seg.start);
        double u1 = prob.u(seg.end);
        for (long it = 0; it < t_grid.size(); ++it) {
            double t = t_grid(it);
            double gt = seg.start + t * (seg.end - seg.start);
            double rhs = 0.0;
            bool violated_infinite = false;
            // infinite coefficients: infinity * 0 = 0 with endpoint mass zero
            // up to the margin tolerance, anything else fails
            if (rev.finite) {
                rhs += rev.values(it) * u0;
            } else if (u0 > tol && t < 1.0) {
                violated_infinite = true;
            }
            if (fwd.finite) {
                rhs += fwd.values(it) * u1;
            } else if (u1 > tol && t > 0.0) {
                violated_infinite = true;
            }
            ConvexityWitness wit;
            wit.seg_start = seg.start;
            wit.seg_end = seg.end;
            wit.t = t;
            double margin = violated_infinite ? -std::numeric_limits<double>::infinity()
                                              : prob.u(gt) - rhs;
            track_worst(cert, margin, wit, first);
        }
    }
    cert.pass = cert.worst_margin >= -tol;
    return cert;
}

ConvexityCertificate certify_kappa_N_convex(const SampledFunction& S,
                                            const CurvatureField& curv, double N,
                                            const std::vector<ModelSegment>& segments,
                                            const Eigen::ArrayXd& t_grid,
                                            std::optional<double> max_length,
                                            double tolerance) {
    if (!(N >= 1.0)) throw DomainError("certify_kappa_N_convex: need N >= 1");
    if (std::isinf(N)) {
        // Green-weighted kappa-convexity of S itself
        ConvexityProblem sprob{S, curv, tolerance};
        const double tol = effective_tol(sprob);
        ConvexityCertificate cert;
        bool first = true;
        for (const auto& seg : segments) {
            const double theta = seg.length();
            if (theta == 0.0) continue;
            if (max_length && theta > *max_length) continue;
            const double dir = seg.end - seg.start;
            std::vector<double> extra;
            for (long i = 0; i < curv.nodes().size(); ++i) {
                double s = (curv.nodes()(i) - seg.start) / dir;
                if (s > 0.0 && s < 1.0) extra.push_back(s);
            }
            for (long it = 0; it < t_grid.size(); ++it) {
                double t = t_grid(it);
                std::vector<double> part_extra = extra;
                part_extra.push_back(t);
                Eigen::ArrayXd none(0);
                auto partition = merge_partition(0.0, 1.0, {&none}, part_extra);
                double integral = integrate_pieces(
                    partition,
                    [&](double s) {
                        return green_kernel(s, t) * theta * theta *
                               curv.value(seg.start + s * dir);
                    },
                    0.02);
                double rhs = (1.0 - t) * S(seg.start) + t * S(seg.end) - integral;
                double margin = rhs - S(seg.start + t * dir);
                ConvexityWitness wit;
                wit.seg_start = seg.start;
                wit.seg_end = seg.end;
                wit.t = t;
                track_worst(cert, margin, wit, first);
            }
        }
        cert.pass = cert.worst_margin >= -tol;
        return cert;
    }
    // finite N: U_N = exp(-S/N) must be kappa/N * U_N - concave
    Eigen::ArrayXd uvals = (-S.values() / N).exp();
    ConvexityProblem uprob{SampledFunction(S.nodes(), uvals), scale_field(curv, 1.0 / N),
                           tolerance};
    return sigma_concavity_check(uprob, segments, t_grid, max_length);
}

double first_variation_margin(const ConvexityProblem& prob,
                              const std::vector<ModelSegment>& segments) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& seg : segments) {
        const double theta = seg.length();
        if (theta == 0.0) continue;
        GeodesicCurvature along = restrict_to_geodesic(prob.curv, seg);
        BoundaryDerivatives fwd = boundary_derivatives(along.forward_field(), theta);
        BoundaryDerivatives rev = boundary_derivatives(along.reversed_field(), theta);
        if (!fwd.finite || !rev.finite) continue;
        const double dir = seg.end - seg.start;
        double du0 = dir * prob.u.slope(seg.start + 1e-9 * dir);
        double margin = du0 + rev.at1 * prob.u(seg.start) - fwd.at0 * prob.u(seg.end);
        worst = std::min(worst, margin);
    }
    return worst;
}

double largest_passing_max_length(const ConvexityProblem& prob,
                                  const std::vector<ModelSegment>& segments,
                                  const Eigen::ArrayXd& t_grid, double resolution) {
    double lo = 0.0, hi = prob.domain_max() - prob.domain_min();
    if (sigma_concavity_check(prob, segments, t_grid, hi).pass) return hi;
    if (!sigma_concavity_check(prob, segments, t_grid, resolution).pass) return 0.0;
    lo = resolution;
    while (hi - lo > resolution) {
        double mid = 0.5 * (lo + hi);
        if (sigma_concavity_check(prob, segments, t_grid, mid).pass) lo = mid;
        else hi = mid;
    }
    return lo;
}

}  // namespace kcurve
