#include "curveflow/variation.hpp"

#include <stdexcept>

namespace curveflow {

std::vector<Vec2> length_gradient(const DiscreteCurve &curve) {
    validate(curve);
    const std::size_t n = curve.size();
    std::vector<Vec2> grad(n, Vec2{0.0, 0.0});
    for (std::size_t e = 0; e < curve.edge_count(); ++e) {
        const Vec2 t = normalized(curve.edge(e));
        grad[e % n] -= t;
        grad[(e + 1) % n] += t;
    }
    return grad;
}

std::vector<Vec2> area_gradient(const DiscreteCurve &curve) {
    validate(curve);
    const std::size_t n = curve.size();
    std::vector<Vec2> grad(n, Vec2{0.0, 0.0});
    // d/da cross(a,b) = -R b,  d/db cross(a,b) = R a
    for (std::size_t e = 0; e < curve.edge_count(); ++e) {
        const Vec2 a = curve.vertex(e);
        const Vec2 b = curve.vertex(e + 1);
        grad[e % n] -= 0.5 * rot90(b);
        grad[(e + 1) % n] += 0.5 * rot90(a);
    }
    return grad;
}

namespace {
double pairing(const std::vector<Vec2> &grad, const std::vector<Vec2> &phi) {
    if (grad.size() != phi.size()) {
        throw std::invalid_argument("first variation: perturbation size mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) s += dot(grad[i], phi[i]);
    return s;
}
} // namespace

double first_variation_length(const DiscreteCurve &curve, const std::vector<Vec2> &phi) {
    return pairing(length_gradient(curve), phi);
}

double first_variation_area(const DiscreteCurve &curve, const std::vector<Vec2> &phi) {
    return pairing(area_gradient(curve), phi);
}

} // namespace curveflow
