#include "kcurve/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kcurve/table_io.hpp"

namespace kcurve {

CurvatureField::CurvatureField(Eigen::ArrayXd nodes, Eigen::ArrayXd node_values, Interp interp)
    : nodes_(std::move(nodes)), values_(std::move(node_values)), interp_(interp) {
    if (nodes_.size() != values_.size() || nodes_.size() < 2)
        throw DomainError("CurvatureField: need matching node/value arrays with >= 2 nodes");
    for (long i = 1; i < nodes_.size(); ++i)
        if (!(nodes_(i) > nodes_(i - 1)))
            throw DomainError("CurvatureField: nodes must be strictly increasing");
    for (long i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_(i)))
            throw DomainError("CurvatureField: values must be finite");
    lower_bound_ = values_.minCoeff();
}

CurvatureField CurvatureField::constant(double a, double b, double value) {
    Eigen::ArrayXd nodes(2), vals(2);
    nodes << a, b;
    vals << value, value;
    return CurvatureField(nodes, vals, Interp::PiecewiseConstant);
}

CurvatureField CurvatureField::from_table(const std::string& path) {
    auto [xs, ks] = read_two_column_table(path);
    return CurvatureField(xs, ks, Interp::PiecewiseConstant);
}

double CurvatureField::value(double x) const {
    const long n = nodes_.size();
    if (x <= nodes_(0)) return values_(0);
    if (x >= nodes_(n - 1)) return values_(n - 1);
    const double* begin = nodes_.data();
    long i = std::upper_bound(begin, begin + n, x) - begin - 1;
    if (interp_ == Interp::PiecewiseConstant) return values_(i);
    double w = (x - nodes_(i)) / (nodes_(i + 1) - nodes_(i));
    return (1.0 - w) * values_(i) + w * values_(i + 1);
}

CurvatureField scale_field(const CurvatureField& f, double factor) {
    return CurvatureField(f.nodes(), f.node_values() * factor, f.interp());
}

CurvatureField shift_field(const CurvatureField& f, double offset) {
    return CurvatureField(f.nodes(), f.node_values() + offset, f.interp());
}

CurvatureField affine_combine(const CurvatureField& a, const CurvatureField& b, double lambda) {
    const double lo = std::max(a.xmin(), b.xmin());
    const double hi = std::min(a.xmax(), b.xmax());
    if (!(hi > lo)) throw DomainError("affine_combine: fields do not overlap");
    std::vector<double> nodes;
    for (long i = 0; i < a.nodes().size(); ++i)
        if (a.nodes()(i) >= lo && a.nodes()(i) <= hi) nodes.push_back(a.nodes()(i));
    for (long i = 0; i < b.nodes().size(); ++i)
        if (b.nodes()(i) >= lo && b.nodes()(i) <= hi) nodes.push_back(b.nodes()(i));
    nodes.push_back(lo);
    nodes.push_back(hi);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double u, double v) { return std::abs(u - v) < 1e-14; }),
                nodes.end());
    const long m = static_cast<long>(nodes.size());
    Eigen::ArrayXd xs(m), vals(m);
    const bool linear = a.interp() == CurvatureField::Interp::PiecewiseLinear &&
                        b.interp() == CurvatureField::Interp::PiecewiseLinear;
    for (long i = 0; i < m; ++i) {
        xs(i) = nodes[i];
        // sample inside the cell for piecewise-constant operands
        double probe = linear ? nodes[i]
                              : (i + 1 < m ? 0.5 * (nodes[i] + nodes[i + 1]) : nodes[i]);
        vals(i) = (1.0 - lambda) * a.value(probe) + lambda * b.value(probe);
    }
    return CurvatureField(xs, vals,
                          linear ? CurvatureField::Interp::PiecewiseLinear
                                 : CurvatureField::Interp::PiecewiseConstant);
}

namespace {

// One anchor per endpoint of a piecewise-constant cell (or per node of a
// piecewise-linear field): the cone v + n|x - p| is the contribution of that
// endpoint to the Lipschitz lower envelope.
struct Anchor {
    double p;
    double v;
};

}  // namespace

CurvatureField lsc_approx(const CurvatureField& field, int n) {
    if (n < 1) throw DomainError("lsc_approx: n must be >= 1");
    const double nd = static_cast<double>(n);
    const Eigen::ArrayXd& xs = field.nodes();
    const Eigen::ArrayXd& vs = field.node_values();
    const long m = xs.size();
    const bool pc = field.interp() == CurvatureField::Interp::PiecewiseConstant;

    std::vector<Anchor> anchors;
    if (pc) {
        for (long i = 0; i + 1 < m; ++i) {
            anchors.push_back({xs(i), vs(i)});
            anchors.push_back({xs(i + 1), vs(i)});
        }
        anchors.push_back({xs(m - 1), vs(m - 1)});
    } else {
        for (long i = 0; i < m; ++i) anchors.push_back({xs(i), vs(i)});
    }

    // prefix minima of (v - n p) from the left and (v + n p) from the right
    std::sort(anchors.begin(), anchors.end(),
              [](const Anchor& a, const Anchor& b) { return a.p < b.p; });
    const std::size_t na = anchors.size();
    std::vector<double> lmin(na), rmin(na);
    double acc = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < na; ++i) {
        acc = std::min(acc, anchors[i].v - nd * anchors[i].p);
        lmin[i] = acc;
    }
    acc = std::numeric_limits<double>::infinity();
    for (std::size_t i = na; i-- > 0;) {
        acc = std::min(acc, anchors[i].v + nd * anchors[i].p);
        rmin[i] = acc;
    }
    auto left_const = [&](double x) {  // min over anchors with p <= x of (v - n p)
        long lo = -1, hi = static_cast<long>(na) - 1;
        while (lo < hi) {
            long mid = (lo + hi + 1) / 2;
            if (anchors[mid].p <= x) lo = mid;
            else hi = mid - 1;
        }
        return lo >= 0 ? lmin[lo] : std::numeric_limits<double>::infinity();
    };
    auto right_const = [&](double x) {  // min over anchors with p >= x of (v + n p)
        long lo = 0, hi = static_cast<long>(na);
        while (lo < hi) {
            long mid = (lo + hi) / 2;
            if (anchors[mid].p >= x) hi = mid;
            else lo = mid + 1;
        }
        return lo < static_cast<long>(na) ? rmin[lo] : std::numeric_limits<double>::infinity();
    };

    auto eval = [&](double x) {
        double cover = field.value(x);
        double e = std::min({cover, left_const(x) + nd * x, right_const(x) - nd * x, nd});
        return e;
    };

    // assemble output nodes: field nodes plus every kink of the envelope
    std::vector<double> out_nodes;
    for (long j = 0; j + 1 < m; ++j) {
        const double l = xs(j), r = xs(j + 1);
        out_nodes.push_back(l);
        // the envelope inside (l, r) is the min of at most four lines:
        // cover (constant or linear), A + n x, B - n x, and the cap n
        double A = left_const(l);
        double B = right_const(r);
        double c0, c1;  // cover line: c0 + c1 x
        if (pc) {
            c0 = vs(j);
            c1 = 0.0;
        } else {
            c1 = (vs(j + 1) - vs(j)) / (r - l);
            c0 = vs(j) - c1 * l;
        }
        double lines[4][2] = {{c0, c1}, {A, nd}, {B, -nd}, {nd, 0.0}};
        std::vector<double> cand;
        for (int u = 0; u < 4; ++u)
            for (int w = u + 1; w < 4; ++w) {
                double ds = lines[u][1] - lines[w][1];
                if (std::abs(ds) < 1e-300) continue;
                double x = (lines[w][0] - lines[u][0]) / ds;
                if (x > l + 1e-14 && x < r - 1e-14) cand.push_back(x);
            }
        std::sort(cand.begin(), cand.end());
        for (double x : cand)
            if (out_nodes.empty() || x - out_nodes.back() > 1e-13) out_nodes.push_back(x);
    }
    out_nodes.push_back(xs(m - 1));

    Eigen::ArrayXd onodes(static_cast<long>(out_nodes.size()));
    Eigen::ArrayXd ovals(static_cast<long>(out_nodes.size()));
    for (std::size_t i = 0; i < out_nodes.size(); ++i) {
        onodes(static_cast<long>(i)) = out_nodes[i];
        ovals(static_cast<long>(i)) = eval(out_nodes[i]);
    }
    return CurvatureField(onodes, ovals, CurvatureField::Interp::PiecewiseLinear);
}

GeodesicCurvature::GeodesicCurvature(double theta, CurvatureField forward)
    : theta_(theta), forward_(std::move(forward)) {}

CurvatureField GeodesicCurvature::reversed_field() const {
    const Eigen::ArrayXd& xs = forward_.nodes();
    const long m = xs.size();
    Eigen::ArrayXd rnodes(m), rvals(m);
    for (long i = 0; i < m; ++i) rnodes(i) = theta_ - xs(m - 1 - i);
    if (forward_.interp() == CurvatureField::Interp::PiecewiseLinear) {
        for (long i = 0; i < m; ++i) rvals(i) = forward_.node_values()(m - 1 - i);
    } else {
        for (long i = 0; i < m; ++i) {
            double probe = (i + 1 < m) ? 0.5 * (rnodes(i) + rnodes(i + 1)) : rnodes(i);
            rvals(i) = reversed(probe);
        }
    }
    return CurvatureField(rnodes, rvals, forward_.interp());
}

GeodesicCurvature restrict_to_geodesic(const CurvatureField& field, const ModelSegment& segment) {
    const double tol = 1e-12 * (1.0 + std::abs(field.xmax() - field.xmin()));
    if (!field.contains(segment.start, tol) || !field.contains(segment.end, tol))
        throw DomainError("restrict_to_geodesic: segment leaves the field's domain");
    const double theta = segment.length();
    if (theta == 0.0) {
        // degenerate segment: empty-domain restriction; sigma of it is t
        return GeodesicCurvature(0.0, CurvatureField::constant(0.0, 1.0, field.value(segment.start)));
    }
    const double dir = segment.end > segment.start ? 1.0 : -1.0;
    const double lo = std::min(segment.start, segment.end);
    const double hi = std::max(segment.start, segment.end);

    std::vector<double> rs{0.0, theta};
    for (long i = 0; i < field.nodes().size(); ++i) {
        double x = field.nodes()(i);
        if (x > lo && x < hi) rs.push_back(dir > 0 ? x - segment.start : segment.start - x);
    }
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end(),
                         [](double u, double v) { return std::abs(u - v) < 1e-14; }),
             rs.end());

    const long m = static_cast<long>(rs.size());
    Eigen::ArrayXd nodes(m), vals(m);
    const bool linear = field.interp() == CurvatureField::Interp::PiecewiseLinear;
    for (long i = 0; i < m; ++i) {
        nodes(i) = rs[i];
        double probe = linear ? rs[i] : (i + 1 < m ? 0.5 * (rs[i] + rs[i + 1]) : rs[i]);
        vals(i) = field.value(segment.start + dir * probe);
    }
    return GeodesicCurvature(theta, CurvatureField(nodes, vals, field.interp()));
}

}  // namespace kcurve
