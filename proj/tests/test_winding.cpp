#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "curveflow/generators.hpp"
#include "curveflow/symmetry.hpp"
#include "curveflow/winding.hpp"

using namespace curveflow;

namespace {
constexpr double kPi = std::numbers::pi;

// crossing-number oracle (independent of the angle-summation implementation)
int winding_by_crossings(const DiscreteCurve &c, const Vec2 &p) {
    int w = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec2 a = c.vertex(i);
        const Vec2 b = c.vertex(i + 1);
        if (a.y <= p.y) {
            if (b.y > p.y && cross(b - a, p - a) > 0.0) ++w;
        } else {
            if (b.y <= p.y && cross(b - a, p - a) < 0.0) --w;
        }
    }
    return w;
}
} // namespace

TEST_CASE("point winding numbers match the crossing oracle") {
    const DiscreteCurve c = random_smooth_curve(11, 128, 0.25);
    for (int i = -8; i <= 8; ++i) {
        for (int j = -8; j <= 8; ++j) {
            const Vec2 p{0.21 * i, 0.21 * j};
            CHECK(winding_number(c, p) == winding_by_crossings(c, p));
        }
    }
    const DiscreteCurve dbl = covered_circle(2, 1.0, 128);
    CHECK(winding_number(dbl, {0.0, 0.0}) == 2);
    CHECK(winding_number(dbl, {2.0, 0.0}) == 0);
}

TEST_CASE("squared-winding area of the unit circle") {
    const WindingField f = winding_field(covered_circle(1, 1.0, 1024), 0.01);
    CHECK(std::abs(f.bp_area - kPi) < 0.02 * kPi);
    CHECK(f.max_abs_winding == 1);
}

TEST_CASE("doubly covered circle quadruples the squared-winding area") {
    const WindingField f = winding_field(covered_circle(2, 1.0, 512), 0.01);
    CHECK(std::abs(f.bp_area - 4.0 * kPi) < 0.02 * 4.0 * kPi);
    CHECK(f.max_abs_winding == 2);
}

TEST_CASE("figure eight with unit-area lobes") {
    const WindingField f = winding_field(figure_eight(1.0, 512), 0.01);
    CHECK(std::abs(f.bp_area - 2.0) < 0.02 * 2.0);

    // brute-force check on a subsample of determinate cells
    const DiscreteCurve c = figure_eight(1.0, 512);
    for (std::size_t iy = 0; iy < f.ny; iy += 7) {
        for (std::size_t ix = 0; ix < f.nx; ix += 7) {
            if (f.is_indeterminate(ix, iy)) continue;
            CHECK(f.value(ix, iy) == winding_by_crossings(c, f.sample_point(ix, iy)));
        }
    }
}

TEST_CASE("winding is zero outside the inflated bounding box") {
    const WindingField f = winding_field(random_smooth_curve(3, 96, 0.2), 0.05);
    for (std::size_t ix = 0; ix < f.nx; ++ix) {
        CHECK(f.value(ix, 0) == 0);
        CHECK(f.value(ix, f.ny - 1) == 0);
        CHECK(!f.is_indeterminate(ix, 0));
    }
    for (std::size_t iy = 0; iy < f.ny; ++iy) {
        CHECK(f.value(0, iy) == 0);
        CHECK(f.value(f.nx - 1, iy) == 0);
    }
}

TEST_CASE("embedded counterclockwise curves take only values 0 and 1") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const DiscreteCurve c = random_smooth_curve(seed, 128, 0.1);
        const WindingField f = winding_field(c, 0.05);
        for (std::size_t iy = 0; iy < f.ny; ++iy) {
            for (std::size_t ix = 0; ix < f.nx; ++ix) {
                if (f.is_indeterminate(ix, iy)) continue;
                const int w = f.value(ix, iy);
                CHECK(w >= 0);
                CHECK(w <= 1);
            }
        }
    }
}

TEST_CASE("error estimate covers the observed error") {
    const WindingField f = winding_field(covered_circle(1, 1.0, 1024), 0.02);
    CHECK(std::abs(f.bp_area - kPi) < f.error_estimate());
    CHECK(f.error_estimate() < 0.5);
}

TEST_CASE("spacing must be positive and the curve closed") {
    CHECK_THROWS_AS(winding_field(covered_circle(1, 1.0, 64), 0.0), std::invalid_argument);
    DiscreteCurve open_curve;
    open_curve.closed = false;
    open_curve.vertices = {{0.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(winding_field(open_curve, 0.1), std::invalid_argument);
}
