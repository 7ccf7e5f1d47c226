#pragma once

#include <cstdint>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

// Lattice of winding numbers around a closed curve, plus the squared-winding
// area sum(w^2 h^2). Samples within distance h of the polygon are indeterminate:
// their stored value is 0 and the mask is set; the area sum fills them in from
// the determinate neighbors so the band does not bias the total.
struct WindingField {
    Vec2 origin{};
    double h = 0.0;
    std::size_t nx = 0, ny = 0;
    std::vector<std::int32_t> values;       // row-major, ny rows of nx
    std::vector<std::uint8_t> indeterminate;
    double bp_area = 0.0;
    std::size_t indeterminate_count = 0;
    int max_abs_winding = 0;

    std::int32_t value(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
    bool is_indeterminate(std::size_t ix, std::size_t iy) const {
        return indeterminate[iy * nx + ix] != 0;
    }
    Vec2 sample_point(std::size_t ix, std::size_t iy) const {
        return {origin.x + static_cast<double>(ix) * h, origin.y + static_cast<double>(iy) * h};
    }

    // Coarse bound on the area error caused by the indeterminate band.
    double error_estimate() const;
};

WindingField winding_field(const DiscreteCurve &curve, double h);

// Winding number of a single point by summed subtended angles. Exposed for
// tests and spot checks; not multiplied out over a grid.
int winding_number(const DiscreteCurve &curve, const Vec2 &point);

} // namespace curveflow
