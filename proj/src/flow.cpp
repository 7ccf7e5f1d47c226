#include "curveflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "curveflow/banded.hpp"
#include "curveflow/winding.hpp"

namespace curveflow {

namespace {
constexpr double kPi = std::numbers::pi;
}

double kstar(int n) {
    if (n < 1) throw std::invalid_argument("kstar: n must be >= 1");
    const double t = 3.0 * static_cast<double>(n) * n * kPi;
    const double d = std::sqrt(1.0 + t) - std::sqrt(t);
    return (2.0 * kPi / 3.0) * d * d;
}

GateResult smallness_gate(const DiscreteCurve &curve, int n, double K) {
    if (n < 1) throw std::invalid_argument("smallness_gate: n must be >= 1");
    if (!(K > 0.0) || K > kstar(n) + 1e-15) {
        throw std::invalid_argument("smallness_gate: K must lie in (0, kstar(n)]");
    }
    GateResult g;
    g.k_osc = k_osc(curve);
    const double iso = iso_ratio(curve);
    g.iso_over_n = iso / n;
    const double iso_cap = std::exp(K / (8.0 * n * n * kPi * kPi));
    g.kosc_margin = K - g.k_osc;
    g.iso_margin = iso_cap - g.iso_over_n;
    g.pass = g.kosc_margin >= 0.0 && g.iso_margin >= 0.0;
    return g;
}

VelocityField velocity(const DiscreteCurve &curve) {
    if (!curve.closed) throw std::invalid_argument("velocity requires a closed curve");
    const CurvatureProfile prof = curvature_profile(curve);
    const std::size_t m = curve.size();

    VelocityField out;
    out.speed.resize(m);
    out.normal.resize(m);
    out.weight.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 prev = curve.vertex(i + m - 1);
        const Vec2 next = curve.vertex(i + 1);
        const double d_prev = norm(curve.vertex(i) - prev);
        const double d_next = norm(next - curve.vertex(i));
        if (!(d_prev > 0.0) || !(d_next > 0.0)) {
            throw std::runtime_error("velocity: degenerate spacing at vertex " + std::to_string(i));
        }
        const double kp = prof.kappa[(i + m - 1) % m];
        const double kc = prof.kappa[i];
        const double kn = prof.kappa[(i + 1) % m];
        const double d2k = 2.0 / (d_prev + d_next) * ((kn - kc) / d_next - (kc - kp) / d_prev);

        const Vec2 chord = next - prev;
        const double w = 0.5 * norm(chord);
        out.normal[i] = normalized(rot90(chord));
        out.weight[i] = w;
        // scale so that sum(speed * weight) telescopes to zero exactly: the
        // first-order area change of the update then vanishes identically
        out.speed[i] = -d2k * (prof.ds[i] / w);
        out.max_speed = std::max(out.max_speed, std::abs(out.speed[i]));
    }
    return out;
}

void refresh_state(FlowState &state) {
    state.metrics = metrics(state.curve);
    const CurvatureProfile prof = curvature_profile(state.curve);
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (double k : prof.kappa) {
        mn = std::min(mn, k);
        mx = std::max(mx, std::abs(k));
    }
    state.min_kappa = mn;
    state.max_abs_kappa = mx;
}

namespace {

void prime(FlowState &state) {
    if (state.primed) return;
    validate(state.curve);
    refresh_state(state);
    state.initial_area = state.metrics.signed_area;
    state.initial_length = state.metrics.length;
    state.initial_spacing = state.metrics.length / static_cast<double>(state.curve.size());
    state.initial_rotation = state.metrics.rotation_number;
    state.primed = true;
}

struct AttemptResult {
    bool ok = false;
    std::string reason;
    DiscreteCurve curve;
    bool redistribution_failed = false;
};

double max_turning_angle(const DiscreteCurve &curve) {
    const std::size_t m = curve.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 e0 = curve.vertex(i) - curve.vertex(i + m - 1);
        const Vec2 e1 = curve.vertex(i + 1) - curve.vertex(i);
        worst = std::max(worst, std::abs(std::atan2(cross(e0, e1), dot(e0, e1))));
    }
    return worst;
}

// One application of the linearly implicit update map. The stiff fourth-order
// operator acts on the scalar normal speed: (I + dt D4) Vf = Vraw, then the
// vertices move by dt * Vf along the weighted normals. D4 telescopes against
// the ds weights, so the filtered speed keeps its exact weighted zero sum and
// the update changes the signed area only at second order in the displacement.
std::vector<Vec2> implicit_update(const DiscreteCurve &x, double dt, const VelocityField &vel) {
    const std::size_t m = x.size();
    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = norm(x.edge(i));
    std::vector<double> ca(m), cb(m), cc(m), ds(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double dp = d[(i + m - 1) % m];
        const double dn = d[i];
        ca[i] = 2.0 / (dp * (dp + dn));
        cc[i] = 2.0 / (dn * (dp + dn));
        cb[i] = -(ca[i] + cc[i]);
        ds[i] = 0.5 * (dp + dn);
    }

    // I + dt * D2 o D2, cyclic pentadiagonal
    CyclicBandMatrix a(m, 2);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t im = (i + m - 1) % m;
        const std::size_t ip = (i + 1) % m;
        a.at(i, -2) += dt * ca[i] * ca[im];
        a.at(i, -1) += dt * (ca[i] * cb[im] + cb[i] * ca[i]);
        a.at(i, 0) += 1.0 + dt * (ca[i] * cc[im] + cb[i] * cb[i] + cc[i] * ca[ip]);
        a.at(i, 1) += dt * (cb[i] * cc[i] + cc[i] * cb[ip]);
        a.at(i, 2) += dt * cc[i] * cc[ip];
    }

    // vel.speed carries the ds/weight factor; undo it so the filter acts on the
    // raw profile whose ds-weighted sum telescopes to zero
    std::vector<double> raw(m);
    for (std::size_t i = 0; i < m; ++i) raw[i] = vel.speed[i] * vel.weight[i] / ds[i];
    const std::vector<double> filtered = solve_cyclic_banded(a, raw);

    std::vector<Vec2> delta(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(filtered[i])) throw std::runtime_error("non-finite solution");
        delta[i] = dt * filtered[i] * (ds[i] / vel.weight[i]) * vel.normal[i];
    }
    return delta;
}

AttemptResult attempt_step(const FlowState &state, const FlowConfig &config, double dt,
                           const VelocityField &vel, bool do_projection) {
    AttemptResult res;
    res.redistribution_failed = state.redistribution_failed;
    const DiscreteCurve &x = state.curve;
    const std::size_t m = x.size();

    DiscreteCurve next;
    next.closed = true;
    next.vertices.resize(m);
    try {
        const std::vector<Vec2> d1 = implicit_update(x, dt, vel);
        if (config.second_order_time) {
            // Heun corrector on the filtered update map
            DiscreteCurve pred = x;
            for (std::size_t i = 0; i < m; ++i) pred.vertices[i] += d1[i];
            if (!(min_edge_length(pred) > 0.0)) {
                res.reason = "edge collapse (predictor)";
                return res;
            }
            const VelocityField vel2 = velocity(pred);
            const std::vector<Vec2> d2 = implicit_update(pred, dt, vel2);
            for (std::size_t i = 0; i < m; ++i) {
                next.vertices[i] = x.vertices[i] + 0.5 * (d1[i] + d2[i]);
            }
        } else {
            for (std::size_t i = 0; i < m; ++i) next.vertices[i] = x.vertices[i] + d1[i];
        }
    } catch (const std::exception &e) {
        res.reason = std::string("linear solve failed: ") + e.what();
        return res;
    }
    if (!(min_edge_length(next) > 0.0)) {
        res.reason = "edge collapse";
        return res;
    }

    if (config.redistribution == RedistributionPolicy::EveryStep && !res.redistribution_failed) {
        if (max_turning_angle(next) > 1.0) {
            // a near-cusp cannot be resampled faithfully; from here the vertices
            // ride with the flow and crowd into the singular feature
            res.redistribution_failed = true;
        } else {
            next = reparameterize(next, m, config.interp);
        }
    }

    if (do_projection && config.symmetry_projection) {
        next = symmetrize(next, config.symmetry_projection->m, config.symmetry_projection->i);
    }
    if (!(min_edge_length(next) > 0.0)) {
        res.reason = "edge collapse after redistribution";
        return res;
    }

    res.ok = true;
    res.curve = std::move(next);
    return res;
}

} // namespace

StepResult step(FlowState &state, const FlowConfig &config) {
    prime(state);
    StepResult out;

    const VelocityField vel = velocity(state.curve);
    double dt;
    if (config.adaptive_dt) {
        const double h = state.metrics.length / static_cast<double>(state.curve.size());
        const double disp_cap = config.safety_disp * h / (vel.max_speed + 1e-300);
        const double curv = std::max(state.max_abs_kappa, 1e-6);
        const double curv_cap = config.safety_curv / (curv * curv * curv * curv);
        dt = std::min({config.dt_max, disp_cap, curv_cap});
        if (state.last_dt > 0.0) dt = std::min(dt, 1.25 * state.last_dt);
        dt = std::max(dt, config.dt_min);
    } else {
        dt = config.dt_fixed;
    }

    const bool project_now = config.symmetry_projection &&
                             (state.accepted_count + 1) % static_cast<std::size_t>(std::max(1, config.projection_period)) == 0;

    const double area_scale =
        std::max(std::abs(state.initial_area),
                 state.initial_length * state.initial_length / (4.0 * kPi));

    for (int halvings = 0; halvings <= 20; ++halvings) {
        out.halvings = halvings;
        AttemptResult att = attempt_step(state, config, dt, vel, project_now);
        if (att.ok) {
            FlowState cand = state;
            cand.curve = std::move(att.curve);
            cand.redistribution_failed = att.redistribution_failed;
            bool good = true;
            std::string reason;
            try {
                refresh_state(cand);
            } catch (const std::exception &e) {
                good = false;
                reason = e.what();
            }
            if (good && std::abs(cand.metrics.signed_area - state.initial_area) >
                            config.area_guard_rel * area_scale) {
                good = false;
                reason = "area drift";
            }
            if (good && cand.metrics.length >
                            state.metrics.length + config.length_guard_rel * state.initial_length) {
                good = false;
                reason = "length increased";
            }
            if (good && cand.metrics.rotation_number != state.initial_rotation) {
                good = false;
                reason = "rotation number changed";
            }
            if (good) {
                cand.t = state.t + dt;
                cand.last_dt = dt;
                cand.accepted_count = state.accepted_count + 1;
                state = std::move(cand);
                out.accepted = true;
                out.dt_used = dt;
                return out;
            }
            out.reject_reason = reason;
        } else {
            out.reject_reason = att.reason;
        }
        dt *= 0.5;
        if (dt < config.dt_min) break;
    }
    out.singular = true;
    return out;
}

FlowReport run(const DiscreteCurve &init, const FlowConfig &config) {
    DiscreteCurve start = init;
    if (!start.closed) throw std::invalid_argument("run: initial curve must be closed");
    validate(start);
    if (start.size() != config.vertex_count) {
        start = reparameterize(start, config.vertex_count, config.interp);
    } else if (config.redistribution == RedistributionPolicy::EveryStep) {
        start = reparameterize(start, config.vertex_count, config.interp);
    }
    if (config.symmetry_projection) {
        const int m = config.symmetry_projection->m;
        if (m < 1 || config.vertex_count % static_cast<std::size_t>(m) != 0) {
            throw std::invalid_argument("run: vertex count must be divisible by the symmetry order");
        }
    }

    FlowState st;
    st.curve = std::move(start);
    prime(st);

    FlowReport rep;
    rep.initial = st.metrics;
    const int n0 = st.metrics.rotation_number;
    const double l0 = st.metrics.length;
    const double a0 = st.metrics.signed_area;
    const double kosc0 = st.metrics.k_osc;
    const double bending0 = st.metrics.bending;
    const double h0 = st.initial_spacing;
    const double area_scale = std::max(std::abs(a0), l0 * l0 / (4.0 * kPi));

    double gate_k = 0.0;
    if (n0 >= 1) {
        gate_k = config.gate_constant > 0.0 ? config.gate_constant : kstar(n0);
        rep.gate = smallness_gate(st.curve, n0, gate_k);
        rep.gate_evaluated = true;
    }

    bool window_ok = n0 >= 1; // hypothesis window of the oscillation bound
    const double tol = config.monitor_tol;
    double next_bp_t = 0.0;
    const double bp_dt = config.bp_sample_count > 0
                             ? config.stop.t_end / static_cast<double>(config.bp_sample_count)
                             : std::numeric_limits<double>::infinity();

    auto record_sample = [&](bool with_bp) {
        FlowSample s;
        s.t = st.t;
        s.length = st.metrics.length;
        s.area = st.metrics.signed_area;
        s.rotation = st.metrics.rotation_number;
        s.k_osc = st.metrics.k_osc;
        s.bending = st.metrics.bending;
        s.min_kappa = st.min_kappa;
        s.max_abs_kappa = st.max_abs_kappa;
        if (config.symmetry_projection) {
            s.sym_defect = symmetry_defect(st.curve, config.symmetry_projection->m,
                                           config.symmetry_projection->i);
            rep.max_symmetry_defect = std::max(rep.max_symmetry_defect, s.sym_defect);
        }
        if (with_bp && config.track_bp_area) {
            s.bp_area = winding_field(st.curve, config.bp_grid_h).bp_area;
        }
        rep.series.push_back(s);
    };

    record_sample(config.track_bp_area);
    next_bp_t += bp_dt;
    if (config.snapshot_stride > 0) rep.snapshots.emplace_back(st.t, st.curve);

    bool stopped = false;
    double prev_length = l0;
    while (st.t < config.stop.t_end && !stopped) {
        const StepResult sr = step(st, config);
        rep.rejected_steps += static_cast<std::size_t>(sr.halvings);
        if (!sr.accepted) {
            rep.verdict = FlowVerdict::Singular;
            rep.t_singular_estimate = st.t;
            rep.stop_reason = "step failure after halvings: " + sr.reject_reason;
            break;
        }
        ++rep.accepted_steps;
        if (st.min_kappa <= 0.0) rep.waiting_time_measured += sr.dt_used;

        // running monitors
        rep.max_area_drift_rel =
            std::max(rep.max_area_drift_rel, std::abs(st.metrics.signed_area - a0) / area_scale);
        rep.max_length_uptick_rel =
            std::max(rep.max_length_uptick_rel, (st.metrics.length - prev_length) / l0);
        prev_length = st.metrics.length;
        const double identity_gap = std::abs(
            st.metrics.k_osc - (st.metrics.length * st.metrics.bending -
                                4.0 * kPi * kPi * st.metrics.rotation_number * st.metrics.rotation_number));
        rep.max_identity_gap = std::max(rep.max_identity_gap, identity_gap);
        if (st.metrics.rotation_number != n0) rep.rotation_constant = false;
        if (n0 >= 1) {
            if (st.metrics.k_osc > 2.0 * kstar(n0)) window_ok = false;
            if (window_ok) {
                const double bound =
                    kosc0 + 8.0 * kPi * kPi * n0 * n0 * std::log(l0 / st.metrics.length);
                if (st.metrics.k_osc > bound + tol) rep.kosc_log_length_bound_ok = false;
            }
            if (rep.gate_evaluated && st.metrics.k_osc > 2.0 * gate_k + tol) {
                rep.kosc_ceiling_ok = false;
            }
            if (a0 > 0.0) {
                const double ratio_cap = std::sqrt(rep.initial.iso_ratio / n0);
                if (l0 / st.metrics.length > ratio_cap + tol) rep.length_ratio_bound_ok = false;
            }
        }

        const bool bp_due = config.track_bp_area && st.t >= next_bp_t;
        if (bp_due) next_bp_t += bp_dt;
        if (rep.accepted_steps % static_cast<std::size_t>(std::max(1, config.sample_stride)) == 0 ||
            bp_due) {
            record_sample(bp_due);
        }
        if (config.snapshot_stride > 0 &&
            rep.accepted_steps % static_cast<std::size_t>(config.snapshot_stride) == 0) {
            rep.snapshots.emplace_back(st.t, st.curve);
        }

        // stopping rules
        if (st.metrics.bending > config.stop.bending_energy_factor * bending0) {
            rep.verdict = FlowVerdict::Singular;
            rep.stop_reason = "bending energy threshold";
            rep.t_singular_estimate = st.t;
            stopped = true;
            break;
        }
        if (st.metrics.k_osc > config.stop.kosc_blow_threshold) {
            rep.verdict = FlowVerdict::Singular;
            rep.stop_reason = "kosc blow threshold";
            rep.t_singular_estimate = st.t;
            stopped = true;
            break;
        }
        if (min_edge_length(st.curve) < config.stop.min_edge_fraction * h0) {
            rep.verdict = FlowVerdict::Singular;
            rep.stop_reason = "min edge collapse";
            rep.t_singular_estimate = st.t;
            stopped = true;
            break;
        }
        if (st.metrics.k_osc < config.stop.convergence_kosc) {
            const VelocityField v = velocity(st.curve);
            const double l3 = std::pow(st.metrics.length, 3);
            // the fourth-order stencil amplifies coordinate roundoff by ~40/h^4;
            // below that floor the measured speed is pure noise
            const double h = st.metrics.length / static_cast<double>(st.curve.size());
            const double speed_floor = 400.0 * std::numeric_limits<double>::epsilon() /
                                       (h * h * h * h) * l3;
            if (v.max_speed * l3 < std::max(1e-6, speed_floor)) {
                rep.verdict = FlowVerdict::Converged;
                stopped = true;
                break;
            }
        }
    }

    if (rep.series.empty() || rep.series.back().t < st.t) record_sample(false);
    rep.t_final = st.t;
    rep.final_metrics = st.metrics;
    rep.final_curve = st.curve;
    const Vec2 c = centroid(st.curve);
    double rsum = 0.0;
    for (const Vec2 &v : st.curve.vertices) rsum += norm(v - c);
    rep.limit_radius = rsum / static_cast<double>(st.curve.size());
    rep.area_radius = n0 >= 1 && a0 > 0.0 ? std::sqrt(a0 / (n0 * kPi))
                                          : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

WaitingTime waiting_time(const FlowReport &report, const std::optional<SymmetrySpec> &spec) {
    WaitingTime wt;
    wt.measured = report.waiting_time_measured;
    const double l0 = report.initial.length;
    const double a0 = report.initial.signed_area;
    if (spec) {
        const double n = spec->n;
        wt.bound = (std::pow(l0, 4) - std::pow(4.0 * kPi * n * a0, 2)) / (16.0 * kPi * kPi * n * n);
    } else {
        const double n = report.initial.rotation_number;
        if (n == 0.0) {
            wt.bound = std::numeric_limits<double>::infinity();
        } else {
            wt.bound = (std::pow(l0, 4) - std::pow(4.0 * kPi * a0, 2)) / (16.0 * kPi * kPi * n * n);
        }
    }
    return wt;
}

} // namespace curveflow
