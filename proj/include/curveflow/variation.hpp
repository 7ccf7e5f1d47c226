#pragma once

#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

// Exact gradients of the discrete length and signed-area functionals with
// respect to the vertex positions. For open curves the area functional is the
// origin-centered one (open_signed_area), whose boundary terms these gradients
// carry automatically.
std::vector<Vec2> length_gradient(const DiscreteCurve &curve);
std::vector<Vec2> area_gradient(const DiscreteCurve &curve);

// Directional derivatives dL[phi], dA[phi]. phi has one vector per vertex.
double first_variation_length(const DiscreteCurve &curve, const std::vector<Vec2> &phi);
double first_variation_area(const DiscreteCurve &curve, const std::vector<Vec2> &phi);

} // namespace curveflow
