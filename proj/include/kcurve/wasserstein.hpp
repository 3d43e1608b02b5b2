#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kcurve/convexity.hpp"
#include "kcurve/curvature.hpp"
#include "kcurve/sampled_function.hpp"

namespace kcurve {

// A weighted interval (X, d, m = w dx) with a reference point p.
struct MMSpace1D {
    SampledFunction weight;  // w >= 0, locally finite
    double reference = 0.0;  // p

    double xmin() const { return weight.xmin(); }
    double xmax() const { return weight.xmax(); }

    static MMSpace1D lebesgue(double a, double b);
    static MMSpace1D from_table(const std::string& path);
    // total mass of a closed ball (clipped to the interval)
    double ball_mass(double center, double radius) const;
};

// A probability measure on an interval in quantile form: positions of the
// standard midpoint levels u_j = (j - 1/2) / M. The CDF is the generalized
// inverse of the quantile table.
class ProbMeasure1D {
public:
    static constexpr int kLevels = 2048;

    static ProbMeasure1D from_density(const SampledFunction& density);
    static ProbMeasure1D from_table(const std::string& path);
    static ProbMeasure1D dirac(double x);
    static ProbMeasure1D from_quantiles(Eigen::ArrayXd q);

    int levels() const { return static_cast<int>(q_.size()); }
    const Eigen::ArrayXd& quantiles() const { return q_; }
    double level(int j) const { return (j + 0.5) / double(levels()); }

    double quantile(double u) const;  // linear interpolation between levels
    double cdf(double x) const;       // generalized inverse of the quantile
    bool has_atoms(double tol = 1e-12) const;
    double support_min() const { return q_(0); }
    double support_max() const { return q_(q_.size() - 1); }

private:
    explicit ProbMeasure1D(Eigen::ArrayXd q) : q_(std::move(q)) {}
    Eigen::ArrayXd q_;  // non-decreasing
};

// L2-Wasserstein distance via the quantile formula.
double w2_distance(const ProbMeasure1D& mu, const ProbMeasure1D& nu);

// The displacement geodesic t -> mu_t with quantile (1-t) q_mu + t q_nu.
struct WassersteinGeodesic {
    Eigen::ArrayXd q0, q1;  // endpoint quantiles per level
    double theta = 0.0;     // W2(mu0, mu1)

    Eigen::ArrayXd quantiles_at(double t) const { return (1.0 - t) * q0 + t * q1; }
    ProbMeasure1D at(double t) const { return ProbMeasure1D::from_quantiles(quantiles_at(t)); }
    Eigen::ArrayXd particle_speeds() const { return (q1 - q0).abs(); }
};

WassersteinGeodesic displacement_geodesic(const ProbMeasure1D& mu, const ProbMeasure1D& nu);

// Plan-averaged curvature profile K(t) = integral kappa(e_t) |gamma'|^2 dPi
// over the quantile coupling; theta = 0 gives the zero profile.
PlanCurvature plan_curvature(const CurvatureField& field, const WassersteinGeodesic& plan,
                             const Eigen::ArrayXd& t_grid);
// Profile of a convex combination of plans sharing the same theta.
PlanCurvature plan_curvature_mixture(const CurvatureField& field,
                                     const std::vector<WassersteinGeodesic>& plans,
                                     const std::vector<double>& weights,
                                     const Eigen::ArrayXd& t_grid);

// Relative entropy of mu against m = w dx; +infinity for atoms or mass where
// the weight vanishes.
double entropy(const ProbMeasure1D& mu, const MMSpace1D& space);

// U_N = exp(-Ent/N), with Ent = +infinity mapped to 0.
double u_n(const ProbMeasure1D& mu, const MMSpace1D& space, double N);
double u_n_from_entropy(double ent, double N);

struct EntropicCdOptions {
    double tolerance = 1e-4;
    SigmaOptions sigma_opt = {};
};

// Entropic curvature-dimension check along the unique displacement geodesic:
// finite N checks U_N(mu_t) >= sigma^-(1-t) U_N(mu0) + sigma^+(t) U_N(mu1)
// with the plan-averaged coefficients; N = INFINITE_DIMENSION checks the
// Green-weighted entropy convexity form.
ConvexityCertificate check_entropic_cd(const MMSpace1D& space, const CurvatureField& curv,
                                       double N, const ProbMeasure1D& mu0,
                                       const ProbMeasure1D& mu1, const Eigen::ArrayXd& t_grid,
                                       const EntropicCdOptions& opt = {});

// Pointwise density inequality along individual particles (quantile levels).
// Throws NotApplicableError when either endpoint has atoms.
ConvexityCertificate density_inequality_check(const MMSpace1D& space,
                                              const CurvatureField& curv, double N,
                                              const ProbMeasure1D& mu0,
                                              const ProbMeasure1D& mu1,
                                              const Eigen::ArrayXd& t_grid,
                                              int level_stride = 16,
                                              double tolerance = 1e-4);

struct BishopGromovReport {
    double r = 0.0, R = 0.0;
    double v_ratio = 0.0, s_ratio = 0.0;            // observed
    double model_v_ratio = 0.0, model_s_ratio = 0.0;  // comparison bound
    double margin_v = 0.0, margin_s = 0.0;           // observed - model
};

// Ball-volume and Minkowski-content ratios against the constant-curvature
// model bounds. Throws DomainError when 0 < r < R <= pi sqrt(N / max(k,0))
// fails.
BishopGromovReport bishop_gromov_check(const MMSpace1D& space, double x0, double r, double R,
                                       double kappa_lower, double N);

struct VolumeGrowthReport {
    double value = 0.0;   // integral of exp(-c d(p,x)^2) dm over the table
    bool divergent = false;  // tail contributions growing without stagnation
};

VolumeGrowthReport volume_growth_check(const MMSpace1D& space, double c);

}  // namespace kcurve
