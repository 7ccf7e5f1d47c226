#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "curveflow/flow.hpp"
#include "curveflow/generators.hpp"
#include "curveflow/symmetry.hpp"

using namespace curveflow;

namespace {
constexpr double kPi = std::numbers::pi;

// closed-form -d^2 kappa / ds^2 for the ellipse (a cos t, b sin t)
double ellipse_neg_kss(double a, double b, double t) {
    const double s = std::sin(t), c = std::cos(t);
    const double g = a * a * s * s + b * b * c * c;
    const double gp = (a * a - b * b) * std::sin(2.0 * t);
    const double gpp = 2.0 * (a * a - b * b) * std::cos(2.0 * t);
    const double k1 = -1.5 * a * b * std::pow(g, -2.5) * gp;
    const double k2 = -1.5 * a * b * (-2.5 * std::pow(g, -3.5) * gp * gp + std::pow(g, -2.5) * gpp);
    // kappa_ss = (1/sqrt(g)) d/dt ( kappa' / sqrt(g) )
    const double kss = (k2 * std::sqrt(g) - k1 * gp / (2.0 * std::sqrt(g))) / (g * std::sqrt(g));
    return -kss;
}
} // namespace

TEST_CASE("smallness constants") {
    CHECK(kstar(1) == doctest::Approx(0.052790241611740827).epsilon(1e-14));
    CHECK(kstar(2) == doctest::Approx(0.013707680082159314).epsilon(1e-14));
    CHECK(kstar(3) == doctest::Approx(0.0061367188301108335).epsilon(1e-14));
    double prev = kstar(1);
    for (int n = 2; n <= 50; ++n) {
        const double k = kstar(n);
        CHECK(k < prev);
        CHECK(k > 0.0);
        prev = k;
    }
    // n^2-scaled limit stays bounded
    CHECK(kstar(50) * 50.0 * 50.0 < 1.0);
    CHECK_THROWS_AS(kstar(0), std::invalid_argument);
}

TEST_CASE("smallness gate on exact and perturbed circles") {
    const double K = kstar(2);
    const GateResult exact = smallness_gate(covered_circle(2, 1.0, 2048), 2, K);
    CHECK(exact.pass);
    CHECK(exact.kosc_margin == doctest::Approx(K).epsilon(1e-6));
    CHECK(exact.iso_margin > 0.0);

    // 5% ripple: the oscillation branch fails by a wide margin
    RippleParams p;
    p.n = 2;
    p.m = 4;
    p.amplitude = 0.05;
    p.vertex_count = 2048;
    const GateResult ripple = smallness_gate(rippled_circle(p), 2, K);
    CHECK(!ripple.pass);
    CHECK(ripple.kosc_margin < 0.0);

    const GateResult lima = smallness_gate(limacon(1.25, 512), 2, K);
    CHECK(!lima.pass);

    CHECK_THROWS_AS(smallness_gate(covered_circle(1, 1.0, 256), 1, 2.0 * kstar(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(smallness_gate(covered_circle(1, 1.0, 256), 0, 0.01), std::invalid_argument);
}

TEST_CASE("velocity vanishes on covered circles") {
    for (int n : {1, 2, 3}) {
        const VelocityField v = velocity(covered_circle(n, 1.0, 256 * n));
        CHECK(v.max_speed < 1e-9);
    }
}

TEST_CASE("velocity on an ellipse matches the closed-form speed profile") {
    const double a = 2.0, b = 1.0;
    const std::size_t m = 2048;
    DiscreteCurve e;
    e.closed = true;
    e.vertices.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = 2.0 * kPi * k / static_cast<double>(m);
        e.vertices[k] = {a * std::cos(t), b * std::sin(t)};
    }
    const VelocityField v = velocity(e);
    double ref_max = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        ref_max = std::max(ref_max, std::abs(ellipse_neg_kss(a, b, 2.0 * kPi * k / m)));
    }
    for (std::size_t k = 0; k < m; ++k) {
        const double ref = ellipse_neg_kss(a, b, 2.0 * kPi * k / static_cast<double>(m));
        CHECK(std::abs(v.speed[k] - ref) < 1e-3 * ref_max);
    }
}

TEST_CASE("velocity rotates covariantly") {
    const DiscreteCurve c = random_smooth_curve(4, 128, 0.2);
    const VelocityField v0 = velocity(c);
    DiscreteCurve r = c;
    const double angle = 0.91;
    for (Vec2 &p : r.vertices) p = rotate(p, angle);
    const VelocityField v1 = velocity(r);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec2 want = rotate(v0.speed[i] * v0.normal[i], angle);
        const Vec2 got = v1.speed[i] * v1.normal[i];
        CHECK(norm(want - got) < 1e-10 * (1.0 + v0.max_speed));
    }
}

TEST_CASE("covered circles are stationary over many steps") {
    FlowState st;
    st.curve = covered_circle(2, 1.0, 128);
    const DiscreteCurve start = st.curve;
    FlowConfig fc;
    fc.vertex_count = 128;
    fc.dt_max = 1e-3;
    for (int k = 0; k < 10000; ++k) {
        const StepResult sr = step(st, fc);
        REQUIRE(sr.accepted);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < start.size(); ++i) {
        worst = std::max(worst, norm(st.curve.vertices[i] - start.vertices[i]));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("oscillation decays over the first hundred steps of a perturbed circle") {
    RippleParams p;
    p.n = 2;
    p.m = 4;
    p.amplitude = 0.02;
    p.vertex_count = 256;
    FlowState st;
    st.curve = rippled_circle(p);
    refresh_state(st);
    const double k0 = st.metrics.k_osc;
    FlowConfig fc;
    fc.vertex_count = 256;
    for (int k = 0; k < 100; ++k) {
        const StepResult sr = step(st, fc);
        REQUIRE(sr.accepted);
    }
    CHECK(st.metrics.k_osc < k0);
}

TEST_CASE("fixed-dt self convergence of the stepper") {
    RippleParams p;
    p.n = 2;
    p.m = 4;
    p.amplitude = 0.03;
    p.vertex_count = 128;
    const DiscreteCurve init = rippled_circle(p);
    auto terminal = [&](double dt) {
        FlowState st;
        st.curve = init;
        FlowConfig fc;
        fc.vertex_count = 128;
        fc.adaptive_dt = false;
        fc.dt_fixed = dt;
        const int steps = static_cast<int>(std::round(0.01 / dt));
        for (int k = 0; k < steps; ++k) REQUIRE(step(st, fc).accepted);
        return st.curve;
    };
    const DiscreteCurve c1 = terminal(4e-5);
    const DiscreteCurve c2 = terminal(2e-5);
    const DiscreteCurve c3 = terminal(1e-5);
    auto dist = [](const DiscreteCurve &a, const DiscreteCurve &b) {
        double w = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, norm(a.vertices[i] - b.vertices[i]));
        return w;
    };
    const double order = std::log2(dist(c1, c2) / dist(c2, c3));
    CHECK(order > 0.9);
}

TEST_CASE("parabolic rescaling: flowing 2x the curve for 16x the time") {
    RippleParams p;
    p.n = 1;
    p.m = 2;
    p.amplitude = 0.05;
    p.vertex_count = 128;
    const DiscreteCurve base = rippled_circle(p);
    DiscreteCurve doubled = base;
    for (Vec2 &v : doubled.vertices) v *= 2.0;

    const double dt = 2e-5;
    const int steps = 400;
    FlowState s1;
    s1.curve = base;
    FlowState s2;
    s2.curve = doubled;
    FlowConfig f1;
    f1.vertex_count = 128;
    f1.adaptive_dt = false;
    f1.dt_fixed = dt;
    FlowConfig f2 = f1;
    f2.dt_fixed = 16.0 * dt;
    for (int k = 0; k < steps; ++k) {
        REQUIRE(step(s1, f1).accepted);
        REQUIRE(step(s2, f2).accepted);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        worst = std::max(worst, norm(s2.curve.vertices[i] - 2.0 * s1.curve.vertices[i]));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("stable run: conservation, monotonicity, symmetry, monitors") {
    RippleParams p;
    p.n = 2;
    p.m = 4;
    p.amplitude = 0.01;
    p.vertex_count = 256;
    FlowConfig fc;
    fc.vertex_count = 256;
    fc.stop.t_end = 0.15;
    fc.symmetry_projection = make_symmetry_spec(2, 4);
    const FlowReport rep = run(rippled_circle(p), fc);
    CHECK(rep.max_area_drift_rel < 1e-6);
    CHECK(rep.rotation_constant);
    CHECK(rep.max_identity_gap < 1e-9);
    CHECK(rep.max_symmetry_defect < 1e-8);
    CHECK(rep.kosc_log_length_bound_ok);
    CHECK(rep.length_ratio_bound_ok);
    CHECK(rep.gate_evaluated);
    // the monitor series L column never increases
    for (std::size_t k = 1; k < rep.series.size(); ++k) {
        CHECK(rep.series[k].length <= rep.series[k - 1].length + 1e-10 * rep.initial.length);
    }
}

TEST_CASE("symmetry drift stays tiny even without projection") {
    RippleParams p;
    p.n = 2;
    p.m = 4;
    p.amplitude = 0.01;
    p.vertex_count = 256;
    FlowConfig fc;
    fc.vertex_count = 256;
    fc.stop.t_end = 0.05;
    fc.projection_period = 1 << 30; // configured but effectively never applied
    fc.symmetry_projection = make_symmetry_spec(2, 4);
    const FlowReport rep = run(rippled_circle(p), fc);
    CHECK(rep.max_symmetry_defect < 1e-4);
}

TEST_CASE("waiting time: convex perturbations never go non-convex") {
    RippleParams p;
    p.n = 2;
    p.m = 4;
    p.amplitude = 0.01; // delta kappa ~ 3 * 0.01 << kappa_bar
    p.vertex_count = 256;
    FlowConfig fc;
    fc.vertex_count = 256;
    fc.stop.t_end = 0.1;
    const FlowReport rep = run(rippled_circle(p), fc);
    const WaitingTime wt = waiting_time(rep, make_symmetry_spec(2, 4));
    CHECK(wt.measured == 0.0);
    CHECK(wt.measured <= wt.bound);
}

TEST_CASE("waiting time on the exact covered circle") {
    FlowConfig fc;
    fc.vertex_count = 512;
    fc.stop.t_end = 0.005;
    const FlowReport rep = run(covered_circle(2, 1.0, 512), fc);
    const WaitingTime wt = waiting_time(rep, make_symmetry_spec(2, 4));
    CHECK(wt.measured == 0.0);
    // the bound vanishes up to the polygonal length excess, O(M^-2) relative
    CHECK(wt.bound >= 0.0);
    CHECK(wt.bound < 0.005);
}

TEST_CASE("config validation") {
    FlowConfig fc;
    fc.vertex_count = 254; // not divisible by 4
    fc.symmetry_projection = make_symmetry_spec(2, 4);
    CHECK_THROWS_AS(run(covered_circle(2, 1.0, 254), fc), std::invalid_argument);
}
