#pragma once

#include <optional>

#include "curveflow/curve.hpp"

namespace curveflow {

// Rotation number n, symmetry order m, and the derived phase index
// i = n + m - m*ceil(n/m), the unique element of (n + mZ) in {1,...,m}.
struct SymmetrySpec {
    int n = 1;
    int m = 1;
    int i = 1;
};

int index_i(int n, int m);
SymmetrySpec make_symmetry_spec(int n, int m);

// M vertices tracing the circle of radius r exactly n times counterclockwise.
DiscreteCurve covered_circle(int n, double r, std::size_t vertex_count);

// Closes an open fundamental piece by applying the rotations R_{2 pi i k / m},
// k = 0..m-1. The piece's endpoint must equal the rotated start point.
DiscreteCurve make_symmetric(const DiscreteCurve &fundamental, int m, int i);

struct SymmetryCheck {
    bool symmetric = false;
    std::optional<int> i;
    double defect = 0.0; // max vertex deviation / diameter for the reported i
};
SymmetryCheck check_symmetry(const DiscreteCurve &curve, int m, double tol);

// Orbit average: replaces the curve by the nearest exactly (m,i)-symmetric one.
DiscreteCurve symmetrize(const DiscreteCurve &curve, int m, int i);

// Max orbit deviation divided by a diameter estimate, for monitoring drift.
double symmetry_defect(const DiscreteCurve &curve, int m, int i);

// An (m, i_{n,m})-symmetric curve of rotation number exactly n: the i_{n,m}-covered
// unit circle with ceil(n/m)-1 tangent loops of the given radius per period
// (negative count means clockwise loops). Only defined for n outside [1, m].
DiscreteCurve vanishing_loop_curve(int n, int m, double loop_radius);

} // namespace curveflow
