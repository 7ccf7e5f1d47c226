#include "curveflow/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "curveflow/generators.hpp"
#include "curveflow/io.hpp"
#include "curveflow/minimize.hpp"
#include "curveflow/winding.hpp"

namespace curveflow {

namespace {

constexpr double kPi = std::numbers::pi;

using nlohmann::json;
using nlohmann::ordered_json;

json value_or(const json &j, const char *key, json def) {
    return j.contains(key) ? j.at(key) : def;
}

std::string verdict_name(FlowVerdict v) {
    switch (v) {
        case FlowVerdict::Converged: return "converged";
        case FlowVerdict::Singular: return "singular";
        case FlowVerdict::TimeLimit: return "t_end reached";
    }
    return "unknown";
}

ordered_json metrics_json(const CurveMetrics &m) {
    ordered_json j;
    j["L"] = m.length;
    j["A"] = m.signed_area;
    j["N"] = m.rotation_number;
    j["I"] = std::isinf(m.iso_ratio) ? json("inf") : json(m.iso_ratio);
    j["kosc"] = m.k_osc;
    j["kappa_bar"] = m.kappa_bar;
    j["bending"] = m.bending;
    return j;
}

void write_json(const std::filesystem::path &path, const ordered_json &j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

} // namespace

CurveSource build_input(const json &input, std::uint64_t seed) {
    CurveSource src;
    if (input.contains("file")) {
        LoadedCurve loaded = read_curve_csv(input.at("file").get<std::string>());
        src.curve = std::move(loaded.curve);
        src.symmetry = loaded.descriptor.symmetry;
        src.name = loaded.descriptor.name;
        return src;
    }
    if (!input.contains("generator")) {
        throw std::invalid_argument("input needs either 'file' or 'generator'");
    }
    const json &g = input.at("generator");
    const std::string kind = g.at("kind").get<std::string>();
    if (kind == "covered-circle") {
        const int n = value_or(g, "n", 1);
        src.curve = covered_circle(n, value_or(g, "r", 1.0), value_or(g, "M", 512));
        src.symmetry = make_symmetry_spec(n, value_or(g, "m", n));
        src.name = "covered-circle";
    } else if (kind == "stable-nm") {
        RippleParams p;
        p.n = value_or(g, "n", 2);
        p.m = value_or(g, "m", 4);
        p.amplitude = value_or(g, "amplitude", 0.03);
        p.wavenumber = value_or(g, "wavenumber", 0.0);
        p.radius = value_or(g, "radius", 1.0);
        p.vertex_count = value_or(g, "M", 512);
        src.curve = rippled_circle(p);
        src.symmetry = make_symmetry_spec(p.n, p.m);
        src.name = "stable-nm";
    } else if (kind == "limacon") {
        src.curve = limacon(value_or(g, "c", 1.25), value_or(g, "M", 512));
        src.name = "limacon";
    } else if (kind == "figure-eight") {
        src.curve = figure_eight(value_or(g, "lobe_area", 1.0), value_or(g, "M", 256));
        src.name = "figure-eight";
    } else if (kind == "vanishing-loop") {
        const int n = g.at("n").get<int>();
        const int m = g.at("m").get<int>();
        src.curve = vanishing_loop_curve(n, m, g.at("loop_radius").get<double>());
        src.symmetry = make_symmetry_spec(n, m);
        src.name = "vanishing-loop";
    } else if (kind == "random") {
        src.curve = random_smooth_curve(seed + static_cast<std::uint64_t>(value_or(g, "offset", 0)),
                                        value_or(g, "M", 256), value_or(g, "amplitude", 0.15));
        src.name = "random";
    } else {
        throw std::invalid_argument("unknown generator kind '" + kind + "'");
    }
    return src;
}

FlowConfig flow_config_from_json(const json &j) {
    FlowConfig c;
    c.vertex_count = value_or(j, "M", 512);
    c.adaptive_dt = value_or(j, "adaptive_dt", true);
    c.second_order_time = value_or(j, "second_order_time", true);
    c.dt_fixed = value_or(j, "dt", 1e-5);
    c.dt_max = value_or(j, "dt_max", 2e-4);
    c.safety_disp = value_or(j, "safety_disp", 0.005);
    c.safety_curv = value_or(j, "safety_curv", 0.05);
    const std::string redist = value_or(j, "redistribution", "every-step");
    c.redistribution =
        redist == "none" ? RedistributionPolicy::None : RedistributionPolicy::EveryStep;
    const std::string interp = value_or(j, "interp", "arc");
    c.interp = interp == "linear" ? ResampleInterp::Linear : ResampleInterp::Arc;
    c.projection_period = value_or(j, "projection_period", 50);
    c.stop.t_end = value_or(j, "t_end", 1.0);
    c.stop.kosc_blow_threshold = value_or(j, "kosc_blow_threshold", 1e6);
    c.stop.bending_energy_factor = value_or(j, "bending_energy_factor", 1e4);
    c.stop.min_edge_fraction = value_or(j, "min_edge_fraction", 1e-3);
    c.stop.convergence_kosc = value_or(j, "convergence_kosc", 1e-8);
    c.gate_constant = value_or(j, "K", 0.0);
    c.sample_stride = value_or(j, "sample_stride", 10);
    c.area_guard_rel = value_or(j, "area_guard_rel", 9e-6);
    c.track_bp_area = value_or(j, "track_bp_area", false);
    c.bp_grid_h = value_or(j, "bp_grid_h", 0.01);
    c.bp_sample_count = value_or(j, "bp_sample_count", 12);
    c.monitor_tol = value_or(j, "monitor_tol", 1e-6);
    if (j.contains("symmetry") && !j.at("symmetry").is_null()) {
        SymmetrySpec s;
        s.n = j.at("symmetry").value("n", 1);
        s.m = j.at("symmetry").value("m", 1);
        s.i = j.at("symmetry").value("i", index_i(s.n, s.m));
        c.symmetry_projection = s;
    }
    return c;
}

namespace {

ordered_json gate_json(const GateResult &g) {
    ordered_json j;
    j["pass"] = g.pass;
    j["kosc"] = g.k_osc;
    j["iso_over_n"] = g.iso_over_n;
    j["kosc_margin"] = g.kosc_margin;
    j["iso_margin"] = g.iso_margin;
    return j;
}

int cmd_metrics(const json &config, const std::filesystem::path &out_dir) {
    const CurveSource src = build_input(config.at("input"), value_or(config, "seed", 1));
    const CurveMetrics m = metrics(src.curve);
    ordered_json j = metrics_json(m);
    if (m.rotation_number >= 1) {
        const double ks = kstar(m.rotation_number);
        j["kstar"] = ks;
        const GateResult g = smallness_gate(src.curve, m.rotation_number, ks);
        j["gate"] = gate_json(g);
    }
    const json mcfg = value_or(config, "metrics", json::object());
    if (value_or(mcfg, "winding_field", false).get<bool>()) {
        const double h = value_or(mcfg, "winding_h", 0.01);
        const WindingField f = winding_field(src.curve, h);
        j["bp_area"] = f.bp_area;
        j["bp_error_estimate"] = f.error_estimate();
        std::ofstream csv(out_dir / "winding.csv");
        csv << "x,y,w,indeterminate\n";
        for (std::size_t iy = 0; iy < f.ny; ++iy) {
            for (std::size_t ix = 0; ix < f.nx; ++ix) {
                const Vec2 p = f.sample_point(ix, iy);
                csv << format_double(p.x) << ',' << format_double(p.y) << ','
                    << f.value(ix, iy) << ',' << (f.is_indeterminate(ix, iy) ? 1 : 0) << '\n';
            }
        }
    }
    write_json(out_dir / "metrics.json", j);
    return kExitOk;
}

ordered_json flow_report_json(const FlowReport &rep, const DiscreteCurve &final_curve) {
    ordered_json j;
    j["verdict"] = verdict_name(rep.verdict);
    j["t_final"] = rep.t_final;
    j["accepted_steps"] = rep.accepted_steps;
    j["rejected_steps"] = rep.rejected_steps;
    j["initial"] = metrics_json(rep.initial);
    j["final"] = metrics_json(rep.final_metrics);
    ordered_json monitors;
    monitors["max_area_drift_rel"] = rep.max_area_drift_rel;
    monitors["max_identity_gap"] = rep.max_identity_gap;
    monitors["rotation_constant"] = rep.rotation_constant;
    monitors["kosc_ceiling_ok"] = rep.kosc_ceiling_ok;
    monitors["kosc_log_length_bound_ok"] = rep.kosc_log_length_bound_ok;
    monitors["length_ratio_bound_ok"] = rep.length_ratio_bound_ok;
    monitors["max_symmetry_defect"] = rep.max_symmetry_defect;
    j["monitors"] = monitors;
    if (rep.gate_evaluated) j["gate"] = gate_json(rep.gate);
    j["waiting_time_measured"] = rep.waiting_time_measured;
    j["limit_radius"] = rep.limit_radius;
    if (!std::isnan(rep.area_radius)) j["area_radius"] = rep.area_radius;
    if (rep.t_singular_estimate) j["t_singular_estimate"] = *rep.t_singular_estimate;
    j["final_vertex_count"] = final_curve.size();
    return j;
}

int cmd_flow(const json &config, const std::filesystem::path &out_dir) {
    const std::uint64_t seed = value_or(config, "seed", 1);
    const CurveSource src = build_input(config.at("input"), seed);
    const json fcfg = value_or(config, "flow", json::object());
    FlowConfig fc = flow_config_from_json(fcfg);
    if (!fc.symmetry_projection && src.symmetry && !fcfg.contains("symmetry") &&
        src.name != "figure-eight" &&
        src.curve.size() % static_cast<std::size_t>(src.symmetry->m) == 0 &&
        value_or(fcfg, "project_symmetry", true).get<bool>()) {
        fc.symmetry_projection = src.symmetry;
    }
    if (src.name == "figure-eight" && !fcfg.contains("track_bp_area")) fc.track_bp_area = true;
    fc.snapshot_stride = value_or(fcfg, "svg_stride", 0);
    if (src.curve.size() != fc.vertex_count && !fcfg.contains("M")) {
        fc.vertex_count = src.curve.size();
    }

    const FlowReport rep = run(src.curve, fc);

    write_series_csv(out_dir / "series.csv", rep.series, fc.track_bp_area);
    ordered_json verdict = flow_report_json(rep, rep.final_curve);

    // gate on a fine sampling of the generated initial data, independent of the
    // flow resolution
    if (src.name == "stable-nm" && src.symmetry && src.symmetry->n >= 1) {
        json gen = config.at("input").at("generator");
        gen["M"] = std::max<std::size_t>(2048, 4 * fc.vertex_count);
        const CurveSource fine = build_input(json{{"generator", gen}}, seed);
        const double K = fc.gate_constant > 0.0 ? fc.gate_constant : kstar(src.symmetry->n);
        verdict["gate_fine"] = gate_json(smallness_gate(fine.curve, src.symmetry->n, K));
        verdict["gate_fine_resolution"] = gen["M"].get<std::size_t>();
    }
    const WaitingTime wt = waiting_time(rep, src.symmetry);
    verdict["waiting_time_bound"] = std::isinf(wt.bound) ? json("inf") : json(wt.bound);
    write_json(out_dir / "verdict.json", verdict);

    const SvgFrameSpec frame{inflate(bounding_box(src.curve), 0.2), 0.0};
    std::filesystem::create_directories(out_dir / "frames");
    write_svg_frame(out_dir / "frames" / "initial.svg", src.curve, frame);
    write_svg_frame(out_dir / "frames" / "final.svg", rep.final_curve, frame);
    for (std::size_t k = 0; k < rep.snapshots.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05zu.svg", k);
        write_svg_frame(out_dir / "frames" / name, rep.snapshots[k].second, frame);
    }

    CurveDescriptor desc;
    desc.closed = true;
    desc.name = src.name + "-final";
    desc.symmetry = src.symmetry;
    write_curve_csv(out_dir / "final.csv", rep.final_curve, desc);
    return kExitOk;
}

int cmd_minimize(const json &config, const std::filesystem::path &out_dir) {
    const json mcfg = value_or(config, "minimize", json::object());
    FreeBoundaryProblem pb;
    pb.theta = mcfg.at("theta").get<double>();
    pb.area_target = value_or(mcfg, "area_target", 1.0);
    if (!(pb.theta > 0.0) || pb.theta > 2.0 * kPi + 1e-12) {
        throw std::invalid_argument("minimize: theta must lie in (0, 2pi]");
    }
    MinimizeOptions opts;
    opts.vertex_count = value_or(mcfg, "M", 512);
    opts.tol = value_or(mcfg, "tol", 1e-8);
    opts.init_perturbation = value_or(mcfg, "perturb_init", 0.0);
    opts.seed = value_or(config, "seed", 1);

    const MinimizeResult res = minimize_open(pb, opts);
    const SectorCheckReport chk = verify_sector_inequality(res.curve, pb);

    std::ofstream hist(out_dir / "residuals.csv");
    hist << "iter,residual\n";
    for (std::size_t k = 0; k < res.report.residual_history.size(); ++k) {
        hist << k << ',' << format_double(res.report.residual_history[k]) << '\n';
    }

    ordered_json j;
    j["theta"] = pb.theta;
    j["L"] = res.report.length;
    j["A"] = res.report.area;
    j["margin"] = chk.margin;
    j["kappa_spread"] = chk.kappa_spread;
    j["glue_defect"] = chk.glue_defect;
    if (chk.perp_defect) j["perp_defect"] = *chk.perp_defect;
    j["iters"] = res.report.iters;
    j["residual"] = res.report.residual;
    j["multiplier"] = res.report.multiplier;
    j["residual_history"] = "residuals.csv";
    write_json(out_dir / "report.json", j);

    CurveDescriptor desc;
    desc.closed = false;
    desc.name = "minimizer";
    write_curve_csv(out_dir / "minimizer.csv", res.curve, desc);
    return kExitOk;
}

int cmd_verify_iso(const json &config, const std::filesystem::path &out_dir) {
    const CurveSource src = build_input(config.at("input"), value_or(config, "seed", 1));
    const json vcfg = value_or(config, "verify", json::object());
    ordered_json j;
    if (src.curve.closed) {
        SymmetrySpec spec;
        if (vcfg.contains("n") && vcfg.contains("m")) {
            spec = make_symmetry_spec(vcfg.at("n").get<int>(), vcfg.at("m").get<int>());
        } else if (src.symmetry) {
            spec = *src.symmetry;
        } else {
            throw std::invalid_argument("verify-iso: need n and m for a closed curve");
        }
        const SymmetricInequalityReport rep = verify_symmetric_inequality(src.curve, spec);
        j["n"] = spec.n;
        j["m"] = spec.m;
        j["index"] = rep.index;
        j["iso_ratio"] = std::isinf(rep.iso_ratio) ? json("inf") : json(rep.iso_ratio);
        j["margin"] = rep.margin;
        j["period_margin"] = rep.period_margin;
        j["equality"] = rep.equality;
        j["roundness"] = rep.roundness;
    } else {
        FreeBoundaryProblem pb;
        pb.theta = vcfg.at("theta").get<double>();
        pb.area_target = value_or(vcfg, "area_target", 1.0);
        const SectorCheckReport rep = verify_sector_inequality(src.curve, pb);
        j["theta"] = pb.theta;
        j["margin"] = rep.margin;
        j["kappa_spread"] = rep.kappa_spread;
        j["glue_defect"] = rep.glue_defect;
        if (rep.perp_defect) j["perp_defect"] = *rep.perp_defect;
    }
    write_json(out_dir / "verify.json", j);
    return kExitOk;
}

int cmd_sweep(const json &config, const std::filesystem::path &out_dir) {
    const json scfg = value_or(config, "sweep", json::object());
    const std::string kind = value_or(scfg, "kind", "flow");
    const std::uint64_t seed = value_or(config, "seed", 1);
    std::ofstream out(out_dir / "sweep.csv");

    if (kind == "loops") {
        out << "n,m,loop_radius,index,N,I,error\n";
        struct Cell {
            int n, m;
            double r;
        };
        std::vector<Cell> cells;
        for (const auto &pair : scfg.at("pairs")) {
            for (const auto &r : scfg.at("loop_radius")) {
                cells.push_back({pair.at(0).get<int>(), pair.at(1).get<int>(), r.get<double>()});
            }
        }
        std::vector<std::future<std::string>> rows;
        rows.reserve(cells.size());
        for (const Cell &cell : cells) {
            rows.push_back(std::async(std::launch::async, [cell]() -> std::string {
                std::ostringstream row;
                row << cell.n << ',' << cell.m << ',' << format_double(cell.r) << ','
                    << index_i(cell.n, cell.m) << ',';
                try {
                    const DiscreteCurve c = vanishing_loop_curve(cell.n, cell.m, cell.r);
                    const CurveMetrics mm = metrics(c);
                    row << mm.rotation_number << ',' << format_double(mm.iso_ratio) << ',';
                } catch (const std::exception &e) {
                    row << ",," << '"' << e.what() << '"';
                }
                return row.str();
            }));
        }
        for (auto &f : rows) out << f.get() << '\n';
        return kExitOk;
    }

    // flow sweep over the stable-nm family
    out << "n,m,amplitude,M,dt,verdict,final_kosc,area_drift,gate_pass,accepted_steps,error\n";
    struct Cell {
        int n, m;
        double amplitude;
        std::size_t M;
        double dt; // 0: adaptive
    };
    std::vector<Cell> cells;
    const json ns = value_or(scfg, "n", json::array({2}));
    const json amps = value_or(scfg, "amplitude", json::array({0.0}));
    const json ms_list = value_or(scfg, "M", json::array({256}));
    const json dts = value_or(scfg, "dt", json::array({0.0}));
    for (const auto &n : ns) {
        const int nn = n.get<int>();
        const int mm = scfg.contains("m") ? scfg.at("m").get<int>() : nn;
        for (const auto &amp : amps) {
            for (const auto &mj : ms_list) {
                for (const auto &dtj : dts) {
                    cells.push_back({nn, std::max(mm, nn), amp.get<double>(),
                                     mj.get<std::size_t>(), dtj.get<double>()});
                }
            }
        }
    }
    (void)seed;
    const json fcfg_base = value_or(config, "flow", json::object());
    std::vector<std::future<std::string>> rows;
    rows.reserve(cells.size());
    for (const Cell &cell : cells) {
        rows.push_back(std::async(std::launch::async, [cell, fcfg_base]() -> std::string {
            std::ostringstream row;
            row << cell.n << ',' << cell.m << ',' << format_double(cell.amplitude) << ',' << cell.M
                << ',' << format_double(cell.dt) << ',';
            try {
                RippleParams p;
                p.n = cell.n;
                p.m = cell.m;
                p.amplitude = cell.amplitude;
                p.vertex_count = cell.M;
                const DiscreteCurve init = rippled_circle(p);
                FlowConfig fc = flow_config_from_json(fcfg_base);
                fc.vertex_count = cell.M;
                if (cell.dt > 0.0) {
                    fc.adaptive_dt = false;
                    fc.dt_fixed = cell.dt;
                }
                fc.symmetry_projection = make_symmetry_spec(cell.n, cell.m);
                const FlowReport rep = run(init, fc);
                row << verdict_name(rep.verdict) << ',' << format_double(rep.final_metrics.k_osc)
                    << ',' << format_double(rep.max_area_drift_rel) << ','
                    << (rep.gate_evaluated && rep.gate.pass ? 1 : 0) << ',' << rep.accepted_steps
                    << ',';
            } catch (const std::exception &e) {
                row << ",,,,," << '"' << e.what() << '"';
            }
            return row.str();
        }));
    }
    for (auto &f : rows) out << f.get() << '\n';
    return kExitOk;
}

} // namespace

void apply_override(json &config, const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("--set expects key=value, got '" + assignment + "'");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    json *node = &config;
    std::size_t start = 0;
    while (true) {
        const auto dotpos = path.find('.', start);
        const std::string key = path.substr(start, dotpos - start);
        if (key.empty()) throw std::invalid_argument("--set: empty key segment in '" + path + "'");
        if (dotpos == std::string::npos) {
            json parsed = json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
            break;
        }
        node = &(*node)[key];
        start = dotpos + 1;
    }
}

int run_command(const std::string &command, const json &config,
                const std::filesystem::path &out_dir) {
    std::filesystem::create_directories(out_dir);
    try {
        if (command == "metrics") return cmd_metrics(config, out_dir);
        if (command == "flow") return cmd_flow(config, out_dir);
        if (command == "minimize") return cmd_minimize(config, out_dir);
        if (command == "verify-iso") return cmd_verify_iso(config, out_dir);
        if (command == "sweep") return cmd_sweep(config, out_dir);
        std::cerr << "unknown command '" << command << "'\n";
        return kExitInputError;
    } catch (const std::invalid_argument &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalError;
    }
}

} // namespace curveflow
