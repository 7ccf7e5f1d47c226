#pragma once

#include <optional>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/symmetry.hpp"

namespace curveflow {

// Free-boundary class: open curves with endpoints on the half-lines through
// (1,0) and (cos theta, sin theta), equal endpoint radii, and prescribed
// positive signed area.
struct FreeBoundaryProblem {
    double theta = 3.14159265358979323846;
    double area_target = 1.0;

    Vec2 dir0() const { return {1.0, 0.0}; }
    Vec2 dir1() const { return {std::cos(theta), std::sin(theta)}; }
};

struct MinimizeOptions {
    std::size_t vertex_count = 512;
    double tol = 1e-8;    // projected stationarity residual, relative to edge scale
    std::size_t max_iters = 50000;
    bool polish = true;   // Newton refinement of the stationarity system
    std::vector<int> winding_sweep = {1, 2, 3};
    double init_perturbation = 0.0;
    unsigned seed = 1;
};

struct VariationReport {
    std::vector<Vec2> grad_length;
    std::vector<Vec2> grad_area;
    double multiplier = 0.0;      // least-squares estimate on the admissible space
    double boundary_defect = 0.0; // glue-condition violation at the endpoints
    double residual = 0.0;        // final projected stationarity residual
    std::size_t iters = 0;
    std::vector<double> residual_history;
    double length = 0.0;
    double area = 0.0;
};

struct MinimizeResult {
    DiscreteCurve curve;
    VariationReport report;
};

// Projected-gradient descent of length at fixed area over the admissible class,
// followed by an optional Newton polish of the stationarity system. Throws on
// non-convergence, with the residual history in the message.
MinimizeResult minimize_open(const FreeBoundaryProblem &problem, const DiscreteCurve &init,
                             const MinimizeOptions &opts = {});

// Default initialization: circular arcs of winding 1..3 scaled to the target
// area; the shortest converged candidate wins.
MinimizeResult minimize_open(const FreeBoundaryProblem &problem, const MinimizeOptions &opts = {});

// Builds the admissible arc initializer of central angle theta + 2 pi (j - 1).
DiscreteCurve sector_arc(const FreeBoundaryProblem &problem, int winding, std::size_t vertex_count);

struct SectorCheckReport {
    double margin = 0.0;        // L^2 - 2 theta A
    double kappa_spread = 0.0;  // max |kappa - mean| / |mean| over interior vertices
    double glue_defect = 0.0;   // |T(0).v0 - T(1).v_theta| with high-order endpoint tangents
    std::optional<double> perp_defect; // |T(0).v0|; absent at theta = 2 pi
    double length = 0.0;
    double area = 0.0;
};

// Checks the sector inequality L^2 >= 2 theta A and the first-order optimality
// geometry on an admissible curve. Rejects curves violating the class
// constraints beyond constraint_tol * L.
SectorCheckReport verify_sector_inequality(const DiscreteCurve &curve,
                                           const FreeBoundaryProblem &problem,
                                           double constraint_tol = 1e-6);

struct SymmetricInequalityReport {
    double iso_ratio = 0.0;
    int index = 0;
    double margin = 0.0;        // I - i_{n,m}
    double period_margin = 0.0; // L(piece)^2 - 2 (2 pi i / m) A(piece)
    bool equality = false;
    double roundness = 0.0;     // radius spread of the vertex set about its centroid
};

// Checks I >= i_{n,m} and its one-period form on a symmetric curve of the given
// class; flags equality only when the curve is circle-like.
SymmetricInequalityReport verify_symmetric_inequality(const DiscreteCurve &curve,
                                                      const SymmetrySpec &spec,
                                                      double equality_tol = 1e-4);

} // namespace curveflow
