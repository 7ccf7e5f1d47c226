#pragma once

#include <string>
#include <vector>

#include "curveflow/vec2.hpp"

namespace curveflow {

// Discrete planar curve: an ordered polygon, open or closed.
// Closed curves identify vertex M with vertex 0 (vertex 0 is not repeated).
struct DiscreteCurve {
    std::vector<Vec2> vertices;
    bool closed = true;

    std::size_t size() const { return vertices.size(); }
    std::size_t edge_count() const {
        return closed ? vertices.size() : (vertices.empty() ? 0 : vertices.size() - 1);
    }
    const Vec2 &vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
    Vec2 edge(std::size_t i) const {
        return vertices[(i + 1) % vertices.size()] - vertices[i % vertices.size()];
    }
};

// Throws std::invalid_argument naming the offending vertex if the polygon is
// degenerate (too few vertices, or a zero-length edge).
void validate(const DiscreteCurve &curve);

double min_edge_length(const DiscreteCurve &curve);
double diameter(const DiscreteCurve &curve);
Vec2 centroid(const DiscreteCurve &curve);

struct BoundingBox {
    Vec2 lo, hi;
};
BoundingBox bounding_box(const DiscreteCurve &curve);

// Sum of edge lengths.
double length(const DiscreteCurve &curve);

// Shoelace signed area, positive for counterclockwise loops. Closed curves only;
// open curves are rejected (use open_signed_area for the free-boundary functional).
double signed_area(const DiscreteCurve &curve);

// The origin-centered area functional -(1/2) \int gamma . R dgamma evaluated over
// the open parameter interval. Coincides with signed_area on closed curves.
double open_signed_area(const DiscreteCurve &curve);

// Signed curvature and arclength weights at the vertices of a closed polygon.
// kappa[i] is the turning angle at vertex i divided by the average of the two
// adjacent edge lengths; ds[i] is that average, so sum(kappa .* ds) is the total
// turning angle exactly.
struct CurvatureProfile {
    std::vector<double> kappa;
    std::vector<double> ds;
};
CurvatureProfile curvature_profile(const DiscreteCurve &curve);

struct RotationNumber {
    int value = 0;
    double residual = 0.0; // |total_turning/2pi - value|, must stay < 0.01
};
RotationNumber rotation_number(const DiscreteCurve &curve);

// L^2 / (4 pi A) for A > 0, +infinity otherwise (IEEE infinity, never a large float).
double iso_ratio(const DiscreteCurve &curve);

double kappa_bar(const DiscreteCurve &curve);

// Length-normalized squared oscillation of curvature about its mean; zero on
// covered circles, invariant under dilation.
double k_osc(const DiscreteCurve &curve);

struct CurveMetrics {
    double length = 0.0;
    double signed_area = 0.0;
    int rotation_number = 0;
    double iso_ratio = 0.0;
    double kappa_bar = 0.0;
    double k_osc = 0.0;
    double bending = 0.0; // integral of kappa^2 ds
};
CurveMetrics metrics(const DiscreteCurve &curve);

enum class ResampleInterp {
    Linear, // new vertices on the polygon itself
    Arc,    // new vertices on local three-point circumcircle arcs
};

// Resample to target_count vertices at equal arclength spacing measured along the
// input polygon. Equal-spacing input with the same vertex count is returned
// unchanged.
DiscreteCurve reparameterize(const DiscreteCurve &curve, std::size_t target_count,
                             ResampleInterp interp = ResampleInterp::Linear);

} // namespace curveflow
