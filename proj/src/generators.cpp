#include "curveflow/generators.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace curveflow {

namespace {
constexpr double kPi = std::numbers::pi;

// dense sample of an analytic loop followed by equal-arclength resampling
template <typename F>
DiscreteCurve sample_closed(F &&point, std::size_t vertex_count, std::size_t oversample = 8) {
    DiscreteCurve dense;
    dense.closed = true;
    const std::size_t nd = vertex_count * oversample;
    dense.vertices.resize(nd);
    for (std::size_t k = 0; k < nd; ++k) {
        dense.vertices[k] = point(static_cast<double>(k) / static_cast<double>(nd));
    }
    return reparameterize(dense, vertex_count, ResampleInterp::Linear);
}

} // namespace

double admissible_wavenumber(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("admissible_wavenumber: need n, m >= 1");
    const int g = std::gcd(n, m);
    const int w = m / g;
    return w >= 2 ? static_cast<double>(w) : 2.0;
}

DiscreteCurve rippled_circle(const RippleParams &p) {
    if (p.n < 1 || p.m < 1) throw std::invalid_argument("rippled_circle: need n, m >= 1");
    if (!(p.radius > 0.0)) throw std::invalid_argument("rippled_circle: radius must be positive");
    const double w = p.wavenumber > 0.0 ? p.wavenumber : admissible_wavenumber(p.n, p.m);
    // (m,i)-symmetry requires the ripple period to divide the parameter period 1/m
    const double cycles = w * p.n; // ripple cycles over the whole parameter circle
    const double per_period = cycles / p.m;
    if (std::abs(per_period - std::round(per_period)) > 1e-9) {
        throw std::invalid_argument("rippled_circle: wavenumber breaks the (n,m) symmetry");
    }
    return sample_closed(
        [&](double x) {
            const double theta = 2.0 * kPi * p.n * x;
            const double r = p.radius * (1.0 + p.amplitude * std::cos(w * theta));
            return Vec2{r * std::cos(theta), r * std::sin(theta)};
        },
        p.vertex_count);
}

DiscreteCurve limacon(double c, std::size_t vertex_count) {
    if (!(c > 1.0)) throw std::invalid_argument("limacon: need c > 1 for an inner loop");
    return sample_closed(
        [&](double x) {
            const double t = 2.0 * kPi * x;
            const double r = 1.0 + c * std::cos(t);
            return Vec2{r * std::cos(t), r * std::sin(t)};
        },
        vertex_count);
}

DiscreteCurve figure_eight(double lobe_area, std::size_t vertex_count) {
    if (!(lobe_area > 0.0)) throw std::invalid_argument("figure_eight: lobe area must be positive");
    if (vertex_count % 2 != 0) throw std::invalid_argument("figure_eight: vertex count must be even");
    const double r = std::sqrt(lobe_area / kPi);
    const std::size_t half = vertex_count / 2;
    DiscreteCurve curve;
    curve.closed = true;
    curve.vertices.resize(vertex_count);
    // right lobe counterclockwise, left lobe clockwise, C^1 at the origin
    for (std::size_t k = 0; k < half; ++k) {
        const double a = kPi + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(half);
        curve.vertices[k] = Vec2{r + r * std::cos(a), r * std::sin(a)};
    }
    for (std::size_t k = 0; k < half; ++k) {
        const double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(half);
        curve.vertices[half + k] = Vec2{-r + r * std::cos(a), r * std::sin(a)};
    }
    return curve;
}

DiscreteCurve random_smooth_curve(std::uint64_t seed, std::size_t vertex_count, double amplitude,
                                  int max_mode) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> ac(max_mode + 1, 0.0), as(max_mode + 1, 0.0);
    for (int k = 2; k <= max_mode; ++k) {
        ac[k] = amplitude * unif(rng) / k;
        as[k] = amplitude * unif(rng) / k;
    }
    return sample_closed(
        [&](double x) {
            const double t = 2.0 * kPi * x;
            double r = 1.0;
            for (int k = 2; k <= max_mode; ++k) {
                r += ac[k] * std::cos(k * t) + as[k] * std::sin(k * t);
            }
            return Vec2{r * std::cos(t), r * std::sin(t)};
        },
        vertex_count);
}

DiscreteCurve random_open_curve(std::uint64_t seed, std::size_t vertex_count, double amplitude) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double a1 = amplitude * unif(rng), a2 = amplitude * unif(rng);
    const double b1 = amplitude * unif(rng), b2 = amplitude * unif(rng);
    DiscreteCurve c;
    c.closed = false;
    c.vertices.resize(vertex_count);
    for (std::size_t k = 0; k < vertex_count; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(vertex_count - 1);
        c.vertices[k] = Vec2{x + a1 * std::sin(kPi * x) + a2 * std::sin(2.0 * kPi * x),
                             b1 * std::sin(kPi * x) + b2 * std::sin(3.0 * kPi * x)};
    }
    return c;
}

} // namespace curveflow
