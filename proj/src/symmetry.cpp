#include "curveflow/symmetry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curveflow {

namespace {
constexpr double kPi = std::numbers::pi;

int ceil_div(int n, int m) {
    // ceil(n/m) for m > 0
    const int q = n / m;
    return (n % m != 0 && n > 0) ? q + 1 : q;
}
} // namespace

int index_i(int n, int m) {
    if (m <= 0) throw std::invalid_argument("index_i: symmetry order m must be positive");
    return n + m - m * ceil_div(n, m);
}

SymmetrySpec make_symmetry_spec(int n, int m) {
    return {n, m, index_i(n, m)};
}

DiscreteCurve covered_circle(int n, double r, std::size_t vertex_count) {
    if (n < 1) throw std::invalid_argument("covered_circle: cover count must be >= 1");
    if (!(r > 0.0)) throw std::invalid_argument("covered_circle: radius must be positive");
    if (vertex_count < static_cast<std::size_t>(3 * n)) {
        throw std::invalid_argument("covered_circle: too coarse, need at least 3n vertices");
    }
    DiscreteCurve curve;
    curve.closed = true;
    curve.vertices.resize(vertex_count);
    for (std::size_t k = 0; k < vertex_count; ++k) {
        const double a = 2.0 * kPi * n * static_cast<double>(k) / static_cast<double>(vertex_count);
        curve.vertices[k] = {r * std::cos(a), r * std::sin(a)};
    }
    return curve;
}

DiscreteCurve make_symmetric(const DiscreteCurve &fundamental, int m, int i) {
    if (fundamental.closed) throw std::invalid_argument("make_symmetric expects an open fundamental piece");
    if (m < 1) throw std::invalid_argument("make_symmetric: m must be positive");
    if (i < 1 || i > m) throw std::invalid_argument("make_symmetric: index i must lie in {1,...,m}");
    validate(fundamental);

    const double phase = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
    const Vec2 want_end = rotate(fundamental.vertices.front(), phase);
    const double len = length(fundamental);
    if (norm(fundamental.vertices.back() - want_end) > 1e-9 * len) {
        throw std::invalid_argument("fundamental piece not compatible with (m,i): endpoint mismatch");
    }

    const std::size_t piece = fundamental.size() - 1;
    DiscreteCurve out;
    out.closed = true;
    out.vertices.reserve(piece * static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double a = phase * k;
        for (std::size_t j = 0; j < piece; ++j) {
            out.vertices.push_back(rotate(fundamental.vertices[j], a));
        }
    }
    return out;
}

SymmetryCheck check_symmetry(const DiscreteCurve &curve, int m, double tol) {
    if (!curve.closed) throw std::invalid_argument("check_symmetry requires a closed curve");
    if (m < 1) throw std::invalid_argument("check_symmetry: m must be positive");
    validate(curve);
    const std::size_t M = curve.size();
    if (M % static_cast<std::size_t>(m) != 0) {
        throw std::invalid_argument("check_symmetry: vertex count not divisible by m; resample first");
    }
    const double diam = diameter(curve);
    const std::size_t shift = M / static_cast<std::size_t>(m);

    SymmetryCheck best;
    best.defect = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= m; ++i) {
        const double phase = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
        double worst = 0.0;
        for (std::size_t k = 0; k < M; ++k) {
            const Vec2 moved = curve.vertex(k + shift);
            const Vec2 rotated = rotate(curve.vertices[k], phase);
            worst = std::max(worst, norm(moved - rotated));
            if (worst > best.defect) break;
        }
        if (worst < best.defect) {
            best.defect = worst;
            best.i = i;
        }
    }
    best.defect /= diam;
    best.symmetric = best.defect <= tol;
    if (!best.symmetric) best.i.reset();
    return best;
}

double symmetry_defect(const DiscreteCurve &curve, int m, int i) {
    const std::size_t M = curve.size();
    if (m < 1 || M % static_cast<std::size_t>(m) != 0) {
        throw std::invalid_argument("symmetry_defect: vertex count not divisible by m");
    }
    const BoundingBox box = bounding_box(curve);
    const double scale = norm(box.hi - box.lo);
    const std::size_t shift = M / static_cast<std::size_t>(m);
    const double phase = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
    double worst = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        worst = std::max(worst, norm(curve.vertex(k + shift) - rotate(curve.vertices[k], phase)));
    }
    return worst / scale;
}

DiscreteCurve symmetrize(const DiscreteCurve &curve, int m, int i) {
    if (!curve.closed) throw std::invalid_argument("symmetrize requires a closed curve");
    if (m < 1) throw std::invalid_argument("symmetrize: m must be positive");
    const std::size_t M = curve.size();
    if (M % static_cast<std::size_t>(m) != 0) {
        throw std::invalid_argument("symmetrize: vertex count not divisible by m");
    }
    if (m == 1) return curve;

    const std::size_t piece = M / static_cast<std::size_t>(m);
    const double phase = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
    std::vector<Vec2> fund(piece, Vec2{0.0, 0.0});
    for (int j = 0; j < m; ++j) {
        const double back = -phase * j;
        for (std::size_t k = 0; k < piece; ++k) {
            fund[k] += rotate(curve.vertices[static_cast<std::size_t>(j) * piece + k], back);
        }
    }
    for (Vec2 &v : fund) v *= 1.0 / static_cast<double>(m);

    DiscreteCurve out;
    out.closed = true;
    out.vertices.resize(M);
    for (int j = 0; j < m; ++j) {
        const double fwd = phase * j;
        for (std::size_t k = 0; k < piece; ++k) {
            out.vertices[static_cast<std::size_t>(j) * piece + k] = rotate(fund[k], fwd);
        }
    }
    return out;
}

DiscreteCurve vanishing_loop_curve(int n, int m, double loop_radius) {
    if (m < 1) throw std::invalid_argument("vanishing_loop_curve: m must be positive");
    if (n >= 1 && n <= m) {
        throw std::invalid_argument("vanishing_loop_curve: n in [1,m] is the attainment regime, no loops needed");
    }
    if (!(loop_radius > 0.0)) throw std::invalid_argument("vanishing_loop_curve: loop radius must be positive");

    const int i = index_i(n, m);
    const int loops_per_period = ceil_div(n, m) - 1; // negative: clockwise loops
    const int loop_count = std::abs(loops_per_period);
    const bool ccw = loops_per_period > 0;

    constexpr std::size_t kLoopSamples = 48;
    constexpr std::size_t kArcSamples = 256;

    // Fundamental piece: |loops_per_period| tangent loops at (1,0), then the arc
    // of central angle 2 pi i / m along the unit circle. The loops are tangent to
    // the circle so the splice is C^1.
    DiscreteCurve fund;
    fund.closed = false;
    const Vec2 anchor{1.0, 0.0};
    for (int l = 0; l < loop_count; ++l) {
        const Vec2 center = ccw ? Vec2{1.0 - loop_radius, 0.0} : Vec2{1.0 + loop_radius, 0.0};
        for (std::size_t k = 0; k < kLoopSamples; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(kLoopSamples);
            const double theta = ccw ? (2.0 * kPi * t) : (kPi - 2.0 * kPi * t);
            const Vec2 offset{loop_radius * std::cos(theta), loop_radius * std::sin(theta)};
            fund.vertices.push_back(center + offset);
        }
    }
    const double arc_angle = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
    for (std::size_t k = 0; k <= kArcSamples; ++k) {
        const double a = arc_angle * static_cast<double>(k) / static_cast<double>(kArcSamples);
        fund.vertices.push_back({std::cos(a), std::sin(a)});
    }
    (void)anchor;
    return make_symmetric(fund, m, i);
}

} // namespace curveflow
