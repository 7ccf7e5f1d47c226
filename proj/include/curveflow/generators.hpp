#pragma once

#include <cstdint>

#include "curveflow/curve.hpp"
#include "curveflow/symmetry.hpp"

namespace curveflow {

// n-covered circle with a symmetric radial ripple r(theta) = r0 (1 + a cos(w theta)).
// The wavenumber must keep the curve (m, i_{n,m})-symmetric; 0 picks the lowest
// nontrivial admissible one. Vertices come out at equal arclength spacing.
struct RippleParams {
    int n = 2;
    int m = 4;
    double amplitude = 0.03;
    double wavenumber = 0.0; // per cover; 0 = auto
    double radius = 1.0;
    std::size_t vertex_count = 512;
};
DiscreteCurve rippled_circle(const RippleParams &params);

// Lowest admissible nontrivial wavenumber for the (n,m) class.
double admissible_wavenumber(int n, int m);

// Polar limacon r(theta) = 1 + c cos(theta); c > 1 yields a small inner loop and
// rotation number 2.
DiscreteCurve limacon(double c, std::size_t vertex_count);

// Two tangent circular lobes of the given area traversed with opposite
// orientation; signed area zero, rotation number zero. vertex_count must be even.
DiscreteCurve figure_eight(double lobe_area, std::size_t vertex_count);

// Smooth closed test curve from a few random Fourier modes; deterministic in the
// seed. Guaranteed immersed for moderate amplitude.
DiscreteCurve random_smooth_curve(std::uint64_t seed, std::size_t vertex_count,
                                  double amplitude = 0.15, int max_mode = 6);

// Open test curve with the same construction, endpoints free.
DiscreteCurve random_open_curve(std::uint64_t seed, std::size_t vertex_count,
                                double amplitude = 0.2);

} // namespace curveflow
