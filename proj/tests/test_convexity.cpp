#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kcurve/convexity.hpp"
#include "kcurve/quadrature.hpp"

using namespace kcurve;

namespace {

ConvexityProblem make_problem(const std::function<double(double)>& u, double a, double b,
                              const CurvatureField& curv, int n = 4001) {
    return ConvexityProblem{SampledFunction::from_function(u, a, b, n), curv, 1e-7};
}

const Eigen::ArrayXd kTGrid = linspace(0.0, 1.0, 13);

}  // namespace

TEST_CASE("distributional residual: linear, sine, and violating parabola") {
    auto zero = CurvatureField::constant(0.0, 1.0, 0.0);
    auto linear = make_problem([](double x) { return x; }, 0.0, 1.0, zero);
    auto fam = BumpFamily::standard(0.0, 1.0);
    auto cert = distributional_residual(linear, fam);
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) <= 1e-10);

    auto one = CurvatureField::constant(0.0, M_PI, 1.0);
    auto sine = make_problem([](double x) { return std::sin(x); }, 0.0, M_PI, one, 6284);
    auto fam_pi = BumpFamily::standard(0.0, M_PI);
    auto cert_sine = distributional_residual(sine, fam_pi);
    CHECK(cert_sine.pass);
    CHECK(std::abs(cert_sine.worst_margin) <= 1e-6);

    auto parabola = make_problem([](double x) { return x * x; }, 0.0, 1.0, zero);
    auto cert_par = distributional_residual(parabola, fam);
    CHECK(!cert_par.pass);
    CHECK(cert_par.witness.kind == ConvexityWitness::Kind::TestFunction);
    // witness reproduces the violation: int phi'' x^2 = 2 int phi > 0
    const auto& w = fam.bumps[static_cast<std::size_t>(cert_par.witness.test_index)];
    CHECK(w.center > 0.0);

    CHECK_THROWS_AS(distributional_residual(linear, BumpFamily{}), DomainError);
}

TEST_CASE("green inequality: equality cases and constant-u failure") {
    auto zero = CurvatureField::constant(0.0, 1.0, 0.0);
    auto linear = make_problem([](double x) { return 1.0 + 0.5 * x; }, 0.0, 1.0, zero);
    auto cert = green_inequality_check(linear, segment_grid(0.0, 1.0, 9), kTGrid);
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) <= 1e-9);

    auto one_pi = CurvatureField::constant(0.0, M_PI, 1.0);
    auto sine = make_problem([](double x) { return std::sin(x); }, 0.0, M_PI, one_pi, 6284);
    std::vector<ModelSegment> seg{{0.1, 2.9}};
    auto cert_sine = green_inequality_check(sine, seg, kTGrid);
    CHECK(cert_sine.pass);
    CHECK(std::abs(cert_sine.worst_margin) <= 5e-8);

    // u = 1 is not 1-concave on long intervals
    auto one_field = CurvatureField::constant(0.0, 3.5, 1.0);
    auto flat = make_problem([](double) { return 1.0; }, 0.0, 3.5, one_field);
    std::vector<ModelSegment> long_seg{{0.2, 3.2}};
    auto cert_flat = green_inequality_check(flat, long_seg, kTGrid);
    CHECK(!cert_flat.pass);
    CHECK(cert_flat.worst_margin < -0.5);
}

TEST_CASE("sigma concavity: model equality cases") {
    auto one_pi = CurvatureField::constant(0.0, M_PI, 1.0);
    auto sine = make_problem([](double x) { return std::sin(x); }, 0.0, M_PI, one_pi, 6284);
    auto cert = sigma_concavity_check(sine, segment_grid(0.0, M_PI, 9), kTGrid);
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) <= 1e-7);

    auto zero = CurvatureField::constant(0.0, 1.0, 0.0);
    auto linear = make_problem([](double x) { return x; }, 0.0, 1.0, zero);
    auto cert_lin = sigma_concavity_check(linear, segment_grid(0.0, 1.0, 9), kTGrid);
    CHECK(cert_lin.pass);
    CHECK(std::abs(cert_lin.worst_margin) <= 1e-9);

    auto neg = CurvatureField::constant(-1.0, 1.0, -1.0);
    auto ch = make_problem([](double x) { return std::cosh(x); }, -1.0, 1.0, neg);
    auto cert_ch = sigma_concavity_check(ch, segment_grid(-1.0, 1.0, 9), kTGrid);
    CHECK(cert_ch.pass);
    CHECK(std::abs(cert_ch.worst_margin) <= 1e-7);
}

TEST_CASE("sigma concavity: infinite coefficients follow infinity*0 = 0") {
    // full segment of the sine model: theta = pi reaches the first zero, u
    // vanishes at both endpoints, so the combination degenerates to 0
    auto one_pi = CurvatureField::constant(0.0, M_PI, 1.0);
    auto sine = make_problem([](double x) { return std::sin(x); }, 0.0, M_PI, one_pi, 6284);
    std::vector<ModelSegment> full{{0.0, M_PI}};
    auto cert = sigma_concavity_check(sine, full, kTGrid);
    CHECK(cert.pass);

    // positive mass against an infinite coefficient fails with a witness
    auto one_long = CurvatureField::constant(0.0, 4.0, 1.0);
    auto flat = make_problem([](double) { return 1.0; }, 0.0, 4.0, one_long);
    std::vector<ModelSegment> long_seg{{0.1, 3.9}};
    auto cert_flat = sigma_concavity_check(flat, long_seg, kTGrid);
    CHECK(!cert_flat.pass);
    CHECK(cert_flat.witness.seg_end == doctest::Approx(3.9));
}

TEST_CASE("criterion (iii) with max_length skips long segments") {
    auto one = CurvatureField::constant(0.0, 3.5, 1.0);
    // sin is 1-concave; a function that only fails on long segments:
    auto flat = make_problem([](double) { return 1.0; }, 0.0, 3.5, one);
    auto segs = segment_grid(0.0, 3.5, 9);
    auto iv = sigma_concavity_check(flat, segs, kTGrid);
    CHECK(!iv.pass);
    // constant positive u fails even on short segments for kappa = 1
    auto iii = sigma_concavity_check(flat, segs, kTGrid, 0.5);
    CHECK(!iii.pass);
    // with kappa = 0 a constant is concave at every length
    auto zero = CurvatureField::constant(0.0, 3.5, 0.0);
    auto flat0 = make_problem([](double) { return 1.0; }, 0.0, 3.5, zero);
    CHECK(sigma_concavity_check(flat0, segs, kTGrid).pass);
}

TEST_CASE("certify_kappa_N_convex: quadratic potential at N = infinity") {
    auto one = CurvatureField::constant(-2.0, 2.0, 1.0);
    auto S = SampledFunction::from_function([](double x) { return 0.5 * x * x; }, -2.0, 2.0, 4001);
    auto segs = segment_grid(-2.0, 2.0, 9);
    auto cert = certify_kappa_N_convex(S, one, INFINITE_DIMENSION, segs, kTGrid);
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) <= 1e-8);  // equality case

    auto overclaim = CurvatureField::constant(-2.0, 2.0, 1.1);
    auto cert_bad = certify_kappa_N_convex(S, overclaim, INFINITE_DIMENSION, segs, kTGrid);
    CHECK(!cert_bad.pass);
    // witness near the center of the domain reproduces the violation
    CHECK(cert_bad.worst_margin < -1e-3);
}

TEST_CASE("certify_kappa_N_convex: log-sine model at finite N") {
    for (double N : {1.0, 2.0, 5.0}) {
        double eps = 1e-3;
        auto field = CurvatureField::constant(eps, M_PI - eps, N);
        auto S = SampledFunction::from_function(
            [N](double x) { return -N * std::log(std::sin(x)); }, eps, M_PI - eps, 6000);
        auto segs = segment_grid(eps, M_PI - eps, 7);
        auto cert = certify_kappa_N_convex(S, field, N, segs, kTGrid, std::nullopt, 2e-7);
        CHECK(cert.pass);
    }
}

TEST_CASE("four criteria agree on synthetic problems with known verdicts") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        // families: (pass) a sin b with kappa=1, linear with kappa=0,
        // cosh with kappa=-1; (fail) x^2 with kappa=0, constant with kappa=1
        int kind = trial % 5;
        double a, b;
        CurvatureField curv;
        std::function<double(double)> fu;
        bool expect;
        switch (kind) {
            case 0: {
                double amp = 0.5 + u01(rng);
                a = 0.2;
                b = M_PI - 0.2;
                curv = CurvatureField::constant(a, b, 1.0);
                fu = [amp](double x) { return amp * std::sin(x); };
                expect = true;
                break;
            }
            case 1: {
                double c0 = 0.5 + u01(rng), c1 = u01(rng);
                a = 0.0;
                b = 1.5;
                curv = CurvatureField::constant(a, b, 0.0);
                fu = [c0, c1](double x) { return c0 + c1 * x; };
                expect = true;
                break;
            }
            case 2: {
                double amp = 0.5 + u01(rng);
                a = -1.0;
                b = 1.0;
                curv = CurvatureField::constant(a, b, -1.0);
                fu = [amp](double x) { return amp * std::cosh(x); };
                expect = true;
                break;
            }
            case 3: {
                a = 0.1;
                b = 1.1;
                curv = CurvatureField::constant(a, b, 0.0);
                fu = [](double x) { return x * x; };
                expect = false;
                break;
            }
            default: {
                a = 0.0;
                b = 3.2;
                curv = CurvatureField::constant(a, b, 1.0);
                fu = [](double) { return 1.0; };
                expect = false;
                break;
            }
        }
        ConvexityProblem prob = make_problem(fu, a, b, curv, 3001);
        auto segs = segment_grid(a, b, 8);
        auto fam = BumpFamily::standard(a, b, 32, 3);
        bool vi = distributional_residual(prob, fam).pass;
        bool vii = green_inequality_check(prob, segs, kTGrid).pass;
        bool viii = sigma_concavity_check(prob, segs, kTGrid, (b - a) / 2.0).pass;
        bool viv = sigma_concavity_check(prob, segs, kTGrid).pass;
        CHECK(vi == expect);
        CHECK(vii == expect);
        CHECK(viii == expect);
        CHECK(viv == expect);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("scaling rule: lambda S is (lambda kappa, lambda N)-convex") {
    auto segs = segment_grid(0.3, M_PI - 0.3, 7);
    for (double lambda : {0.5, 2.0}) {
        for (double N : {2.0, 4.0}) {
            auto field = CurvatureField::constant(0.3, M_PI - 0.3, N);
            auto S = SampledFunction::from_function(
                [N](double x) { return -N * std::log(std::sin(x)); }, 0.3, M_PI - 0.3, 4000);
            REQUIRE(certify_kappa_N_convex(S, field, N, segs, kTGrid).pass);
            SampledFunction lamS(S.nodes(), S.values() * lambda);
            auto lfield = scale_field(field, lambda);
            CHECK(certify_kappa_N_convex(lamS, lfield, lambda * N, segs, kTGrid).pass);
        }
    }
}

TEST_CASE("weakening rule: pass for (kappa, N) implies pass for (kappa - c, N + m)") {
    auto segs = segment_grid(0.3, M_PI - 0.3, 7);
    double N = 2.0;
    auto field = CurvatureField::constant(0.3, M_PI - 0.3, N);
    auto S = SampledFunction::from_function(
        [N](double x) { return -N * std::log(std::sin(x)); }, 0.3, M_PI - 0.3, 4000);
    REQUIRE(certify_kappa_N_convex(S, field, N, segs, kTGrid).pass);
    for (double c : {0.0, 0.5, 1.0})
        for (double m : {0.0, 1.0, 8.0})
            CHECK(certify_kappa_N_convex(S, shift_field(field, -c), N + m, segs, kTGrid).pass);
}

TEST_CASE("sum rule: (k1,N1) + (k2,N2) is (k1+k2, N1+N2)-convex") {
    double a = 0.4, b = M_PI - 0.4;
    auto segs = segment_grid(a, b, 7);
    double N1 = 2.0, N2 = 3.0;
    auto S1 = SampledFunction::from_function(
        [N1](double x) { return -N1 * std::log(std::sin(x)); }, a, b, 4000);
    auto S2 = SampledFunction::from_function([](double x) { return 0.5 * x * x; }, a, b, 4000);
    auto f1 = CurvatureField::constant(a, b, N1);
    // x^2/2 on [a,b]: f'' = 1 >= kappa + (f')^2/N2 with kappa = 1 - b^2/N2
    double k2 = 1.0 - b * b / N2 - 1e-9;
    auto f2 = CurvatureField::constant(a, b, k2);
    REQUIRE(certify_kappa_N_convex(S1, f1, N1, segs, kTGrid).pass);
    REQUIRE(certify_kappa_N_convex(S2, f2, N2, segs, kTGrid).pass);
    SampledFunction sum(S1.nodes(), S1.values() + S2.values());
    auto fsum = CurvatureField::constant(a, b, N1 + k2);
    CHECK(certify_kappa_N_convex(sum, fsum, N1 + N2, segs, kTGrid).pass);
}

TEST_CASE("first-variation inequality holds for certified C1 functions") {
    auto one_pi = CurvatureField::constant(0.0, M_PI, 1.0);
    auto sine = make_problem([](double x) { return std::sin(x); }, 0.0, M_PI, one_pi, 6284);
    auto segs = segment_grid(0.15, M_PI - 0.15, 8);
    REQUIRE(sigma_concavity_check(sine, segs, kTGrid).pass);
    double margin = first_variation_margin(sine, segs);
    CHECK(margin >= -1e-5);
    CHECK(std::abs(margin) <= 1e-3);  // equality case up to interpolation

    auto zero = CurvatureField::constant(0.0, 1.0, 0.0);
    auto linear = make_problem([](double x) { return 2.0 + x; }, 0.0, 1.0, zero);
    CHECK(first_variation_margin(linear, segment_grid(0.0, 1.0, 8)) >= -1e-9);
}

TEST_CASE("largest passing max_length diagnostic") {
    // a passing problem passes at every length
    auto zero = CurvatureField::constant(0.0, 2.0, 0.0);
    auto flat0 = make_problem([](double) { return 1.0; }, 0.0, 2.0, zero);
    auto segs = segment_grid(0.0, 2.0, 9);
    CHECK(largest_passing_max_length(flat0, segs, kTGrid) == doctest::Approx(2.0));

    // a failing problem already fails on the shortest sampled segments
    auto parabola = make_problem([](double x) { return x * x + 0.1; }, 0.0, 2.0, zero);
    double L = largest_passing_max_length(parabola, segs, kTGrid);
    CHECK(L < 0.3);
}
