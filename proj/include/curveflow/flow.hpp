#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/symmetry.hpp"

namespace curveflow {

// Smallness constant (2 pi / 3) (sqrt(1 + 3 n^2 pi) - sqrt(3 n^2 pi))^2.
double kstar(int n);

struct GateResult {
    bool pass = false;
    double k_osc = 0.0;
    double iso_over_n = 0.0;
    double kosc_margin = 0.0; // K - K_osc
    double iso_margin = 0.0;  // exp(K / (8 n^2 pi^2)) - I/n
};

// Checks K_osc(gamma) <= K and I(gamma)/n <= exp(K / (8 n^2 pi^2)) for
// K in (0, kstar(n)].
GateResult smallness_gate(const DiscreteCurve &curve, int n, double K);

// Normal speed -d^2 kappa / ds^2 with its normal field and the quadrature
// weights that make the weighted speed sum exactly zero on closed polygons.
struct VelocityField {
    std::vector<double> speed;
    std::vector<Vec2> normal;
    std::vector<double> weight;
    double max_speed = 0.0;
};
VelocityField velocity(const DiscreteCurve &curve);

enum class RedistributionPolicy { EveryStep, None };

struct StopRule {
    double t_end = 1.0;
    double kosc_blow_threshold = 1e6;
    double bending_energy_factor = 1e4; // singular when bending > factor * initial
    double min_edge_fraction = 1e-3;    // of the initial mean spacing
    double convergence_kosc = 1e-8;
};

struct FlowConfig {
    std::size_t vertex_count = 512;
    bool adaptive_dt = true;
    bool second_order_time = true; // Heun corrector on the filtered update
    double dt_fixed = 1e-5;
    double dt_max = 2e-4;
    double dt_min = 1e-16;
    double safety_disp = 0.005; // max displacement per step, fraction of spacing
    double safety_curv = 0.05;  // dt cap 'safety_curv / max(kappa)^4'
    RedistributionPolicy redistribution = RedistributionPolicy::EveryStep;
    ResampleInterp interp = ResampleInterp::Arc;
    std::optional<SymmetrySpec> symmetry_projection;
    int projection_period = 50;
    StopRule stop;
    double gate_constant = 0.0;     // 0: use kstar(n) when n >= 1
    int sample_stride = 10;         // monitor cadence in accepted steps
    double area_guard_rel = 9e-6;   // step rejected beyond this drift
    double length_guard_rel = 1e-10;
    bool track_bp_area = false;     // squared-winding area along the run
    double bp_grid_h = 0.01;
    int bp_sample_count = 12;
    double monitor_tol = 1e-6;      // additive slack for the inequality monitors
    int snapshot_stride = 0;        // keep curve snapshots every k accepted steps
};

struct FlowState {
    double t = 0.0;
    DiscreteCurve curve;
    CurveMetrics metrics;

    // stepper bookkeeping
    double min_kappa = 0.0;
    double max_abs_kappa = 0.0;
    double last_dt = 0.0;
    std::size_t accepted_count = 0;
    bool redistribution_failed = false;

    // frozen at the first step, used by the acceptance guards
    bool primed = false;
    double initial_area = 0.0;
    double initial_length = 0.0;
    double initial_spacing = 0.0;
    int initial_rotation = 0;
};

// Fills metrics and the kappa extrema; used by run() and by step() on priming.
void refresh_state(FlowState &state);

struct StepResult {
    bool accepted = false;
    bool singular = false;
    double dt_used = 0.0;
    int halvings = 0;
    std::string reject_reason;
};

// One semi-implicit step: the fourth-order operator is treated implicitly
// (cyclic banded solve per coordinate), then arclength redistribution and the
// optional symmetry projection. On failure the step retries with halved dt; 20
// halvings mean a singularity.
StepResult step(FlowState &state, const FlowConfig &config);

struct FlowSample {
    double t = 0.0;
    double length = 0.0;
    double area = 0.0;
    int rotation = 0;
    double k_osc = 0.0;
    double bending = 0.0;
    double min_kappa = 0.0;
    double max_abs_kappa = 0.0;
    double sym_defect = std::numeric_limits<double>::quiet_NaN();
    double bp_area = std::numeric_limits<double>::quiet_NaN();
};

enum class FlowVerdict { Converged, Singular, TimeLimit };

struct FlowReport {
    std::vector<FlowSample> series;
    std::vector<std::pair<double, DiscreteCurve>> snapshots;
    FlowVerdict verdict = FlowVerdict::TimeLimit;
    double t_final = 0.0;
    std::optional<double> t_singular_estimate;
    CurveMetrics initial;
    CurveMetrics final_metrics;
    DiscreteCurve final_curve;

    double waiting_time_measured = 0.0; // total time with min kappa <= 0
    double max_area_drift_rel = 0.0;
    double max_length_uptick_rel = 0.0;
    double max_identity_gap = 0.0;      // |K_osc - (L * bending - 4 pi^2 N^2)|
    double max_symmetry_defect = 0.0;
    bool rotation_constant = true;
    bool kosc_log_length_bound_ok = true; // K_osc(t) <= K_osc(0) + 8 pi^2 n^2 log(L0/L)
    bool kosc_ceiling_ok = true;          // K_osc(t) <= 2K
    bool length_ratio_bound_ok = true;    // L0/L(t) <= sqrt(I0/n)
    double limit_radius = 0.0;            // mean vertex radius at the end
    double area_radius = 0.0;             // sqrt(A0 / (n pi)) for comparison
    GateResult gate;
    bool gate_evaluated = false;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::string stop_reason;
};

FlowReport run(const DiscreteCurve &init, const FlowConfig &config);

struct WaitingTime {
    double measured = 0.0;
    double bound = 0.0;
};

// Total non-convex time against the closed-form bound
// (L0^4 - (4 pi n A0)^2) / (16 pi^2 n^2); without a symmetry spec the rotation
// number of the initial curve is used with the unsymmetrized bound.
WaitingTime waiting_time(const FlowReport &report, const std::optional<SymmetrySpec> &spec);

} // namespace curveflow
