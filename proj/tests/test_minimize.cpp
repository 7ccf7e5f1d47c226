#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "curveflow/curve.hpp"
#include "curveflow/generators.hpp"
#include "curveflow/minimize.hpp"
#include "curveflow/symmetry.hpp"

using namespace curveflow;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("quarter sector from a perturbed arc") {
    FreeBoundaryProblem pb;
    pb.theta = kPi / 2.0;
    MinimizeOptions opts;
    opts.vertex_count = 256;
    opts.init_perturbation = 0.02;
    opts.seed = 3;
    const MinimizeResult res = minimize_open(pb, opts);
    CHECK(res.report.length == doctest::Approx(std::sqrt(kPi)).epsilon(1e-4));
    CHECK(res.report.area == doctest::Approx(1.0).epsilon(1e-10));
    // radius of the optimal arc is sqrt(4/pi)
    CHECK(norm(res.curve.vertices.front()) == doctest::Approx(std::sqrt(4.0 / kPi)).epsilon(1e-4));
}

TEST_CASE("full turn recovers the unit-area circle") {
    FreeBoundaryProblem pb;
    pb.theta = 2.0 * kPi;
    MinimizeOptions opts;
    opts.vertex_count = 256;
    const MinimizeResult res = minimize_open(pb, opts);
    CHECK(res.report.length == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-4));
}

TEST_CASE("non-convex sector theta = 3 pi / 2") {
    FreeBoundaryProblem pb;
    pb.theta = 1.5 * kPi;
    MinimizeOptions opts;
    opts.vertex_count = 256;
    const MinimizeResult res = minimize_open(pb, opts);
    CHECK(res.report.length == doctest::Approx(std::sqrt(3.0 * kPi)).epsilon(1e-4));
    const SectorCheckReport chk = verify_sector_inequality(res.curve, pb);
    CHECK(chk.kappa_spread < 1e-6);
    CHECK(chk.glue_defect < 1e-6);
    CHECK(chk.perp_defect.value() < 1e-6);
}

TEST_CASE("descent is monotone and the multiplier matches the arc curvature") {
    FreeBoundaryProblem pb;
    pb.theta = kPi;
    MinimizeOptions opts;
    opts.vertex_count = 192;
    opts.init_perturbation = 0.05;
    opts.seed = 11;
    const MinimizeResult res = minimize_open(pb, opts);
    // lambda ~ -1/rho for the optimal arc of radius sqrt(2/theta)
    const double rho = std::sqrt(2.0 / pb.theta);
    CHECK(res.report.multiplier == doctest::Approx(-1.0 / rho).epsilon(1e-3));
    CHECK(res.report.residual < opts.tol);
}

TEST_CASE("minimizer scales with the square root of the area target") {
    FreeBoundaryProblem pb1;
    pb1.theta = kPi / 2.0;
    FreeBoundaryProblem pb4 = pb1;
    pb4.area_target = 4.0;
    MinimizeOptions opts;
    opts.vertex_count = 128;
    const double l1 = minimize_open(pb1, opts).report.length;
    const double l4 = minimize_open(pb4, opts).report.length;
    CHECK(l4 == doctest::Approx(2.0 * l1).epsilon(1e-8));
}

TEST_CASE("exact sector arc passes the optimality checks") {
    FreeBoundaryProblem pb;
    pb.theta = kPi;
    DiscreteCurve arc = sector_arc(pb, 1, 512);
    const SectorCheckReport chk = verify_sector_inequality(arc, pb);
    CHECK(std::abs(chk.margin) < 1e-3);
    CHECK(chk.margin > 0.0); // the polygon inequality is strict
    CHECK(chk.kappa_spread < 1e-8);
    CHECK(chk.glue_defect < 1e-8);
    CHECK(chk.perp_defect.value() < 1e-8);
}

TEST_CASE("sector inequality margin is positive on random admissible curves") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FreeBoundaryProblem pb;
    pb.theta = 2.0;
    int tested = 0;
    for (int trial = 0; trial < 100; ++trial) {
        DiscreteCurve c = sector_arc(pb, 1, 96);
        for (std::size_t k = 1; k + 1 < c.size(); ++k) {
            const double x = static_cast<double>(k) / (c.size() - 1);
            c.vertices[k] += 0.15 * std::sin(kPi * x) * Vec2{u(rng), u(rng)};
        }
        if (open_signed_area(c) <= 0.0) continue;
        const SectorCheckReport chk = verify_sector_inequality(c, pb, 1e-6);
        CHECK(chk.margin > 0.0);
        ++tested;
    }
    CHECK(tested > 80);
}

TEST_CASE("admissibility violations are rejected") {
    FreeBoundaryProblem pb;
    pb.theta = 1.5 * kPi;
    // hemicircle through the origin: optimal without the equal-radius constraint,
    // inadmissible with it
    DiscreteCurve hemi;
    hemi.closed = false;
    for (int k = 0; k <= 64; ++k) {
        const double t = kPi * k / 64.0;
        hemi.vertices.push_back(Vec2{0.5 - 0.5 * std::cos(t), 0.0} +
                                Vec2{0.0, 0.5 * std::sin(t)});
    }
    // endpoints (0,0) and (1,0): first radius 0, second radius 1
    CHECK_THROWS_AS(verify_sector_inequality(hemi, pb), std::invalid_argument);
}

TEST_CASE("theta outside (0, 2 pi] is rejected") {
    FreeBoundaryProblem pb;
    pb.theta = 0.0;
    CHECK_THROWS_AS(minimize_open(pb, MinimizeOptions{}), std::invalid_argument);
    pb.theta = 2.0 * kPi + 0.1;
    CHECK_THROWS_AS(minimize_open(pb, MinimizeOptions{}), std::invalid_argument);
}

TEST_CASE("symmetric inequality on covered circles flags equality") {
    const DiscreteCurve c = covered_circle(2, 1.0, 1024);
    const SymmetricInequalityReport rep = verify_symmetric_inequality(c, make_symmetry_spec(2, 4));
    CHECK(rep.index == 2);
    CHECK(rep.margin >= 0.0);
    CHECK(rep.margin < 1e-4);
    CHECK(rep.period_margin >= 0.0);
    CHECK(rep.equality);
}

TEST_CASE("symmetric inequality on a starry perturbation is strict") {
    RippleParams p;
    p.n = 3;
    p.m = 3;
    p.amplitude = 0.08;
    p.wavenumber = 3;
    p.vertex_count = 768;
    const DiscreteCurve c = rippled_circle(p);
    const SymmetricInequalityReport rep = verify_symmetric_inequality(c, make_symmetry_spec(3, 3));
    CHECK(rep.margin > 1e-3);
    CHECK(!rep.equality);
}

TEST_CASE("symmetric inequality on a vanishing-loop curve: small positive margin") {
    const DiscreteCurve c = vanishing_loop_curve(4, 2, 0.01);
    const SymmetricInequalityReport rep = verify_symmetric_inequality(c, make_symmetry_spec(4, 2));
    CHECK(rep.margin > 0.0);
    CHECK(rep.margin < 0.1);
    CHECK(!rep.equality);
}

TEST_CASE("symmetric inequality preconditions") {
    const DiscreteCurve c = covered_circle(2, 1.0, 1024);
    SymmetrySpec wrong = make_symmetry_spec(3, 4);
    CHECK_THROWS_AS(verify_symmetric_inequality(c, wrong), std::invalid_argument);
}
