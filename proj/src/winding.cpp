#include "curveflow/winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace curveflow {

namespace {
constexpr double kPi = std::numbers::pi;

double point_segment_dist2(const Vec2 &p, const Vec2 &a, const Vec2 &b) {
    const Vec2 e = b - a;
    const double len2 = norm2(e);
    double t = len2 > 0.0 ? dot(p - a, e) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm2(p - (a + t * e));
}

} // namespace

int winding_number(const DiscreteCurve &curve, const Vec2 &point) {
    double angle = 0.0;
    const std::size_t m = curve.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 a = curve.vertex(i) - point;
        const Vec2 b = curve.vertex(i + 1) - point;
        angle += std::atan2(cross(a, b), dot(a, b));
    }
    return static_cast<int>(std::lround(angle / (2.0 * kPi)));
}

double WindingField::error_estimate() const {
    // residual of the band imputation: roughly a quarter of the band mass at
    // the squared-winding scale
    const double w2 = std::max(1, max_abs_winding * max_abs_winding);
    return 0.25 * h * h * static_cast<double>(indeterminate_count) * w2;
}

WindingField winding_field(const DiscreteCurve &curve, double h) {
    if (!curve.closed) throw std::invalid_argument("winding_field requires a closed curve");
    if (!(h > 0.0)) throw std::invalid_argument("winding_field: grid spacing must be positive");
    validate(curve);

    const BoundingBox box = bounding_box(curve);
    WindingField field;
    field.h = h;
    // inflate by two cells so the outermost ring is provably outside the curve
    field.origin = {box.lo.x - 2.0 * h, box.lo.y - 2.0 * h};
    field.nx = static_cast<std::size_t>(std::ceil((box.hi.x - field.origin.x) / h)) + 3;
    field.ny = static_cast<std::size_t>(std::ceil((box.hi.y - field.origin.y) / h)) + 3;
    field.values.assign(field.nx * field.ny, 0);
    field.indeterminate.assign(field.nx * field.ny, 0);

    const std::size_t m = curve.size();
    const double h2 = h * h;
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            const Vec2 p = field.sample_point(ix, iy);
            double angle = 0.0;
            double d2 = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                const Vec2 va = curve.vertex(i);
                const Vec2 vb = curve.vertex(i + 1);
                d2 = std::min(d2, point_segment_dist2(p, va, vb));
                const Vec2 a = va - p;
                const Vec2 b = vb - p;
                angle += std::atan2(cross(a, b), dot(a, b));
            }
            const std::size_t idx = iy * field.nx + ix;
            if (d2 <= h2) {
                field.indeterminate[idx] = 1;
                ++field.indeterminate_count;
            } else {
                const int w = static_cast<int>(std::lround(angle / (2.0 * kPi)));
                field.values[idx] = w;
                field.max_abs_winding = std::max(field.max_abs_winding, std::abs(w));
            }
        }
    }

    // Riemann sum over the lattice; band cells take the mean squared winding of
    // their determinate neighbors so the exclusion zone is not counted as zero.
    double total = 0.0;
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            const std::size_t idx = iy * field.nx + ix;
            if (!field.indeterminate[idx]) {
                const double w = field.values[idx];
                total += w * w;
                continue;
            }
            double acc = 0.0;
            int cnt = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const long jx = static_cast<long>(ix) + dx;
                    const long jy = static_cast<long>(iy) + dy;
                    if (jx < 0 || jy < 0 || jx >= static_cast<long>(field.nx) ||
                        jy >= static_cast<long>(field.ny)) {
                        continue;
                    }
                    const std::size_t jdx = static_cast<std::size_t>(jy) * field.nx +
                                            static_cast<std::size_t>(jx);
                    if (field.indeterminate[jdx]) continue;
                    const double w = field.values[jdx];
                    acc += w * w;
                    ++cnt;
                }
            }
            if (cnt > 0) total += acc / cnt;
        }
    }
    field.bp_area = total * h2;
    return field;
}

} // namespace curveflow
