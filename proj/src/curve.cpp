#include "curveflow/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curveflow {

namespace {
constexpr double kPi = std::numbers::pi;
}

void validate(const DiscreteCurve &curve) {
    const std::size_t n = curve.size();
    const std::size_t min_count = curve.closed ? 3 : 2;
    if (n < min_count) {
        throw std::invalid_argument("curve has " + std::to_string(n) + " vertices, needs at least " +
                                    std::to_string(min_count) + (curve.closed ? " (closed)" : " (open)"));
    }
    for (std::size_t i = 0; i < curve.edge_count(); ++i) {
        if (!(norm2(curve.edge(i)) > 0.0)) {
            throw std::invalid_argument("degenerate edge at vertex " + std::to_string(i));
        }
    }
}

double min_edge_length(const DiscreteCurve &curve) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.edge_count(); ++i) {
        best = std::min(best, norm(curve.edge(i)));
    }
    return best;
}

double diameter(const DiscreteCurve &curve) {
    double best = 0.0;
    const auto &v = curve.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            best = std::max(best, norm2(v[i] - v[j]));
        }
    }
    return std::sqrt(best);
}

Vec2 centroid(const DiscreteCurve &curve) {
    Vec2 c{0.0, 0.0};
    for (const Vec2 &v : curve.vertices) c += v;
    return c / static_cast<double>(curve.size());
}

BoundingBox bounding_box(const DiscreteCurve &curve) {
    BoundingBox box;
    box.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    box.hi = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Vec2 &v : curve.vertices) {
        box.lo.x = std::min(box.lo.x, v.x);
        box.lo.y = std::min(box.lo.y, v.y);
        box.hi.x = std::max(box.hi.x, v.x);
        box.hi.y = std::max(box.hi.y, v.y);
    }
    return box;
}

double length(const DiscreteCurve &curve) {
    validate(curve);
    double total = 0.0;
    for (std::size_t i = 0; i < curve.edge_count(); ++i) total += norm(curve.edge(i));
    return total;
}

double open_signed_area(const DiscreteCurve &curve) {
    validate(curve);
    double twice = 0.0;
    for (std::size_t i = 0; i < curve.edge_count(); ++i) {
        twice += cross(curve.vertex(i), curve.vertex(i + 1));
    }
    return 0.5 * twice;
}

double signed_area(const DiscreteCurve &curve) {
    if (!curve.closed) {
        throw std::invalid_argument("signed_area requires a closed curve; "
                                    "use open_signed_area for the free-boundary functional");
    }
    return open_signed_area(curve);
}

CurvatureProfile curvature_profile(const DiscreteCurve &curve) {
    if (!curve.closed) throw std::invalid_argument("curvature_profile requires a closed curve");
    validate(curve);
    const std::size_t n = curve.size();
    CurvatureProfile prof;
    prof.kappa.resize(n);
    prof.ds.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 prev = curve.vertex(i + n - 1);
        const Vec2 here = curve.vertex(i);
        const Vec2 next = curve.vertex(i + 1);
        const Vec2 e0 = here - prev;
        const Vec2 e1 = next - here;
        const double turn = std::atan2(cross(e0, e1), dot(e0, e1));
        const double w = 0.5 * (norm(e0) + norm(e1));
        prof.ds[i] = w;
        prof.kappa[i] = turn / w;
    }
    return prof;
}

RotationNumber rotation_number(const DiscreteCurve &curve) {
    const CurvatureProfile prof = curvature_profile(curve);
    double total_turn = 0.0;
    for (std::size_t i = 0; i < prof.kappa.size(); ++i) total_turn += prof.kappa[i] * prof.ds[i];
    const double turns = total_turn / (2.0 * kPi);
    RotationNumber out;
    out.value = static_cast<int>(std::lround(turns));
    out.residual = std::abs(turns - out.value);
    if (out.residual >= 0.01) {
        throw std::runtime_error("curve too coarse to classify: rotation number residual " +
                                 std::to_string(out.residual));
    }
    return out;
}

double iso_ratio(const DiscreteCurve &curve) {
    const double area = signed_area(curve);
    if (area <= 0.0) return std::numeric_limits<double>::infinity();
    const double len = length(curve);
    return len * len / (4.0 * kPi * area);
}

double kappa_bar(const DiscreteCurve &curve) {
    const CurvatureProfile prof = curvature_profile(curve);
    double total_turn = 0.0, len = 0.0;
    for (std::size_t i = 0; i < prof.kappa.size(); ++i) {
        total_turn += prof.kappa[i] * prof.ds[i];
        len += prof.ds[i];
    }
    return total_turn / len;
}

double k_osc(const DiscreteCurve &curve) {
    const CurvatureProfile prof = curvature_profile(curve);
    double total_turn = 0.0, len = 0.0;
    for (std::size_t i = 0; i < prof.kappa.size(); ++i) {
        total_turn += prof.kappa[i] * prof.ds[i];
        len += prof.ds[i];
    }
    const double mean = total_turn / len;
    double osc = 0.0;
    for (std::size_t i = 0; i < prof.kappa.size(); ++i) {
        const double d = prof.kappa[i] - mean;
        osc += d * d * prof.ds[i];
    }
    return len * osc;
}

CurveMetrics metrics(const DiscreteCurve &curve) {
    CurveMetrics m;
    m.length = length(curve);
    m.signed_area = signed_area(curve);
    const CurvatureProfile prof = curvature_profile(curve);
    double total_turn = 0.0, bending = 0.0;
    for (std::size_t i = 0; i < prof.kappa.size(); ++i) {
        total_turn += prof.kappa[i] * prof.ds[i];
        bending += prof.kappa[i] * prof.kappa[i] * prof.ds[i];
    }
    const RotationNumber rot = rotation_number(curve);
    m.rotation_number = rot.value;
    m.kappa_bar = total_turn / m.length;
    double osc = 0.0;
    for (std::size_t i = 0; i < prof.kappa.size(); ++i) {
        const double d = prof.kappa[i] - m.kappa_bar;
        osc += d * d * prof.ds[i];
    }
    m.k_osc = m.length * osc;
    m.bending = bending;
    m.iso_ratio = m.signed_area > 0.0
                      ? m.length * m.length / (4.0 * kPi * m.signed_area)
                      : std::numeric_limits<double>::infinity();
    return m;
}

namespace {

// Point at chord fraction t in [0,1] on the circumcircular arc through (a,b,c),
// between a and b. Falls back to the chord when the three points are nearly
// collinear.
Vec2 arc_point(const Vec2 &a, const Vec2 &b, const Vec2 &c, bool between_ab, double t) {
    const Vec2 p = between_ab ? a : b;
    const Vec2 q = between_ab ? b : c;
    const double det = 2.0 * cross(b - a, c - a);
    const double scale = norm(b - a) + norm(c - b);
    if (std::abs(det) < 1e-12 * scale * scale) {
        return p + t * (q - p);
    }
    const double a2 = norm2(a), b2 = norm2(b), c2 = norm2(c);
    const Vec2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / det,
                      (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / det};
    const Vec2 rp = p - center, rq = q - center;
    const double sweep = std::atan2(cross(rp, rq), dot(rp, rq));
    return center + rotate(rp, t * sweep);
}

} // namespace

DiscreteCurve reparameterize(const DiscreteCurve &curve, std::size_t target_count,
                             ResampleInterp interp) {
    validate(curve);
    const std::size_t min_count = curve.closed ? 3 : 2;
    if (target_count < min_count) {
        throw std::invalid_argument("reparameterize: target vertex count too small");
    }
    const std::size_t n = curve.size();
    const std::size_t ne = curve.edge_count();

    std::vector<double> cum(ne + 1, 0.0);
    for (std::size_t i = 0; i < ne; ++i) cum[i + 1] = cum[i] + norm(curve.edge(i));
    const double total = cum[ne];

    DiscreteCurve out;
    out.closed = curve.closed;
    out.vertices.resize(target_count);

    const double snap = 1e-12 * total;
    const std::size_t samples = curve.closed ? target_count : target_count - 1;
    std::size_t seg = 0;
    for (std::size_t k = 0; k < target_count; ++k) {
        double s;
        if (curve.closed) {
            s = total * static_cast<double>(k) / static_cast<double>(samples);
        } else {
            s = (k == target_count - 1) ? total
                                        : total * static_cast<double>(k) / static_cast<double>(samples);
        }
        while (seg + 1 < ne && cum[seg + 1] < s - snap) ++seg;
        // snap to an original vertex when the sample lands on one
        if (std::abs(s - cum[seg]) <= snap) {
            out.vertices[k] = curve.vertex(seg);
            continue;
        }
        if (std::abs(s - cum[seg + 1]) <= snap) {
            out.vertices[k] = curve.vertex(seg + 1);
            continue;
        }
        const double t = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
        if (interp == ResampleInterp::Linear) {
            out.vertices[k] = curve.vertex(seg) + t * curve.edge(seg);
        } else {
            // blend the two circumcircle arcs that share this edge
            const bool has_prev = curve.closed || seg > 0;
            const bool has_next = curve.closed || seg + 1 < ne;
            const Vec2 a = curve.vertex(seg);
            const Vec2 b = curve.vertex(seg + 1);
            Vec2 p1{}, p2{};
            if (has_prev) {
                const Vec2 before = curve.vertex((seg + n - 1) % n);
                p1 = arc_point(before, a, b, false, t);
            }
            if (has_next) {
                const Vec2 after = curve.vertex(seg + 2);
                p2 = arc_point(a, b, after, true, t);
            }
            if (has_prev && has_next) {
                out.vertices[k] = (1.0 - t) * p1 + t * p2;
            } else if (has_prev) {
                out.vertices[k] = p1;
            } else if (has_next) {
                out.vertices[k] = p2;
            } else {
                out.vertices[k] = a + t * (b - a);
            }
        }
    }
    return out;
}

} // namespace curveflow
