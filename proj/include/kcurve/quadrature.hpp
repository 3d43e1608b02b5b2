#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace kcurve {

// Merges breakpoint lists into a sorted, deduplicated partition of [a,b].
// Points outside [a,b] are dropped; a and b are always included.
std::vector<double> merge_partition(double a, double b,
                                    const std::vector<const Eigen::ArrayXd*>& break_sets,
                                    const std::vector<double>& extra = {});

// Composite Simpson over [a,b], split at the given partition points so the
// integrand is only ever sampled within one smooth piece. Each piece is
// further subdivided until its width is <= max_h. Exact for integrands that
// are piecewise cubic between partition points.
double integrate_pieces(const std::vector<double>& partition,
                        const std::function<double(double)>& f,
                        double max_h);

// Convenience: uniform grid of n points on [a,b] (n >= 2).
Eigen::ArrayXd linspace(double a, double b, int n);

}  // namespace kcurve
