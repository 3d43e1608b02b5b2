#include "kcurve/ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kcurve {

double green_kernel(double s, double t) {
    if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0)
        throw DomainError("green_kernel: arguments must lie in [0,1]");
    return s <= t ? s * (1.0 - t) : t * (1.0 - s);
}

GeneralizedSine::GeneralizedSine(Eigen::ArrayXd xs, Eigen::ArrayXd s, Eigen::ArrayXd c,
                                 CurvatureField curv)
    : xs_(std::move(xs)), s_(std::move(s)), c_(std::move(c)), curv_(std::move(curv)) {}

int GeneralizedSine::cell_of(double x) const {
    const long n = xs_.size();
    if (x <= xs_(0)) return 0;
    if (x >= xs_(n - 1)) return static_cast<int>(n - 2);
    const double* begin = xs_.data();
    long i = std::upper_bound(begin, begin + n, x) - begin - 1;
    return static_cast<int>(std::min(i, n - 2));
}

namespace {
// cubic Hermite on [x0,x1] through (y0,d0),(y1,d1)
double hermite(double x, double x0, double x1, double y0, double y1, double d0, double d1) {
    double h = x1 - x0;
    double u = (x - x0) / h;
    double u2 = u * u, u3 = u2 * u;
    double h00 = 2 * u3 - 3 * u2 + 1;
    double h10 = u3 - 2 * u2 + u;
    double h01 = -2 * u3 + 3 * u2;
    double h11 = u3 - u2;
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}
}  // namespace

double GeneralizedSine::s_at(double x) const {
    int i = cell_of(x);
    if (x == xs_(i)) return s_(i);
    return hermite(x, xs_(i), xs_(i + 1), s_(i), s_(i + 1), c_(i), c_(i + 1));
}

double GeneralizedSine::c_at(double x) const {
    int i = cell_of(x);
    if (x == xs_(i)) return c_(i);
    // c' = -kappa s; within the step the coefficient is the covering cell's value
    double k = curv_.value(0.5 * (xs_(i) + xs_(i + 1)));
    return hermite(x, xs_(i), xs_(i + 1), c_(i), c_(i + 1), -k * s_(i), -k * s_(i + 1));
}

namespace {

struct State {
    double v, w;
};

State rk4_step(const CurvatureField& curv, bool pc, double kcell, double x, double h, State y) {
    auto f = [&](double xx, State s) -> State {
        double k = pc ? kcell : curv.value(xx);
        return {s.w, -k * s.v};
    };
    State k1 = f(x, y);
    State k2 = f(x + 0.5 * h, {y.v + 0.5 * h * k1.v, y.w + 0.5 * h * k1.w});
    State k3 = f(x + 0.5 * h, {y.v + 0.5 * h * k2.v, y.w + 0.5 * h * k2.w});
    State k4 = f(x + h, {y.v + h * k3.v, y.w + h * k3.w});
    return {y.v + (h / 6.0) * (k1.v + 2 * k2.v + 2 * k3.v + k4.v),
            y.w + (h / 6.0) * (k1.w + 2 * k2.w + 2 * k3.w + k4.w)};
}

GeneralizedSine solve_on_partition(const CurvatureField& curv,
                                   const std::vector<double>& partition, double step) {
    const bool pc = curv.interp() == CurvatureField::Interp::PiecewiseConstant;
    std::vector<double> xs{partition.front()};
    std::vector<double> sv{0.0}, cv{1.0};
    State y{0.0, 1.0};
    for (std::size_t p = 0; p + 1 < partition.size(); ++p) {
        const double l = partition[p], r = partition[p + 1];
        const double w = r - l;
        if (w <= 0) continue;
        const int m = std::max(1, static_cast<int>(std::ceil(w / step)));
        const double h = w / m;
        const double kcell = curv.value(0.5 * (l + r));
        for (int k = 0; k < m; ++k) {
            double x = l + k * h;
            y = rk4_step(curv, pc, kcell, x, h, y);
            xs.push_back(k + 1 == m ? r : x + h);
            sv.push_back(y.v);
            cv.push_back(y.w);
        }
    }
    const long n = static_cast<long>(xs.size());
    Eigen::ArrayXd ax(n), as(n), ac(n);
    for (long i = 0; i < n; ++i) {
        ax(i) = xs[static_cast<std::size_t>(i)];
        as(i) = sv[static_cast<std::size_t>(i)];
        ac(i) = cv[static_cast<std::size_t>(i)];
    }
    return GeneralizedSine(ax, as, ac, curv);
}

std::optional<double> locate_first_zero(const GeneralizedSine& gs) {
    const Eigen::ArrayXd& xs = gs.grid();
    const Eigen::ArrayXd& s = gs.s_values();
    const double abs_zero = 1e-12;
    for (long i = 1; i < xs.size(); ++i) {
        if (std::abs(s(i)) < abs_zero) return xs(i);
        if (s(i - 1) > 0.0 && s(i) < 0.0) {
            double lo = xs(i - 1), hi = xs(i);
            while (hi - lo > 1e-10) {
                double mid = 0.5 * (lo + hi);
                if (gs.s_at(mid) > 0.0) lo = mid;
                else hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        if (s(i) < 0.0) return xs(i);  // defensive: crossed without bracketing
    }
    return std::nullopt;
}

std::vector<double> field_partition(const CurvatureField& curv) {
    std::vector<double> p;
    for (long i = 0; i < curv.nodes().size(); ++i) p.push_back(curv.nodes()(i));
    return p;
}

}  // namespace

GeneralizedSine solve_generalized_sin(const CurvatureField& curv, double step) {
    const double L = curv.length();
    if (!(step > 0.0) || step > L / 10.0 + 1e-15)
        throw DomainError("solve_generalized_sin: need 0 < step <= L/10");
    GeneralizedSine gs = solve_on_partition(curv, field_partition(curv), step);
    gs.first_zero_ = locate_first_zero(gs);
    return gs;
}

SturmReport check_sturm_comparison(const CurvatureField& curv_lo,
                                   const CurvatureField& curv_hi,
                                   double step, double tol) {
    const double tiny = 1e-12 * (1.0 + curv_lo.length());
    if (std::abs(curv_lo.xmin() - curv_hi.xmin()) > tiny ||
        std::abs(curv_lo.xmax() - curv_hi.xmax()) > tiny)
        throw DomainError("check_sturm_comparison: fields must share a domain");

    std::vector<double> partition = field_partition(curv_lo);
    for (long i = 0; i < curv_hi.nodes().size(); ++i) partition.push_back(curv_hi.nodes()(i));
    std::sort(partition.begin(), partition.end());
    partition.erase(std::unique(partition.begin(), partition.end(),
                                [](double u, double v) { return std::abs(u - v) < 1e-14; }),
                    partition.end());

    // ordering precondition, sampled inside every cell of the merged grid
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        double mid = 0.5 * (partition[i] + partition[i + 1]);
        for (double x : {partition[i], mid}) {
            if (curv_hi.value(x) < curv_lo.value(x) - 1e-12)
                throw DomainError("check_sturm_comparison: curv_hi < curv_lo at x=" +
                                  std::to_string(x));
        }
    }

    GeneralizedSine lo = solve_on_partition(curv_lo, partition, step);
    GeneralizedSine hi = solve_on_partition(curv_hi, partition, step);
    auto hi_zero = locate_first_zero(hi);
    if (hi_zero && *hi_zero < curv_hi.xmax() - curv_hi.xmin() - 1e-12)
        throw DomainError("check_sturm_comparison: s of curv_hi vanishes inside the domain");

    SturmReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (long i = 0; i < lo.grid().size(); ++i) {
        double margin = lo.s_values()(i) - hi.s_values()(i);
        if (margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.at_x = lo.grid()(i);
        }
    }
    rep.pass = rep.min_margin >= -tol;
    return rep;
}

}  // namespace kcurve
