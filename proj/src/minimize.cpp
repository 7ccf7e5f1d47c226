#include "curveflow/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include "curveflow/banded.hpp"
#include "curveflow/variation.hpp"

namespace curveflow {

namespace {

constexpr double kPi = std::numbers::pi;

void project_constraints(DiscreteCurve &c, const FreeBoundaryProblem &pb) {
    const Vec2 d0 = pb.dir0(), d1 = pb.dir1();
    double a = 0.5 * (dot(c.vertices.front(), d0) + dot(c.vertices.back(), d1));
    a = std::max(a, 0.0);
    c.vertices.front() = a * d0;
    c.vertices.back() = a * d1;
    const double area = open_signed_area(c);
    if (!(area > 0.0)) {
        throw std::runtime_error("minimize_open: iterate lost positive signed area");
    }
    const double s = std::sqrt(pb.area_target / area);
    for (Vec2 &v : c.vertices) v *= s;
}

// Projection onto the admissible perturbation space: interior free, endpoints
// share one scalar motion along (dir0, dir1).
std::vector<Vec2> project_field(std::vector<Vec2> g, const Vec2 &d0, const Vec2 &d1) {
    const double beta = dot(g.front(), d0) + dot(g.back(), d1);
    g.front() = 0.5 * beta * d0;
    g.back() = 0.5 * beta * d1;
    return g;
}

double field_dot(const std::vector<Vec2> &a, const std::vector<Vec2> &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
    return s;
}

double field_max(const std::vector<Vec2> &a) {
    double s = 0.0;
    for (const Vec2 &v : a) s = std::max(s, norm(v));
    return s;
}

struct Stationarity {
    std::vector<Vec2> grad_length;
    std::vector<Vec2> grad_area;
    std::vector<Vec2> residual_field; // P(grad L + lambda_ls grad A)
    double lambda_ls = 0.0;
    double residual = 0.0; // sup norm of the residual field, relative to L
};

Stationarity stationarity(const DiscreteCurve &c, const FreeBoundaryProblem &pb) {
    Stationarity st;
    st.grad_length = length_gradient(c);
    st.grad_area = area_gradient(c);
    const Vec2 d0 = pb.dir0(), d1 = pb.dir1();
    const std::vector<Vec2> pl = project_field(st.grad_length, d0, d1);
    const std::vector<Vec2> pa = project_field(st.grad_area, d0, d1);
    const double denom = field_dot(pa, pa);
    st.lambda_ls = denom > 0.0 ? -field_dot(pl, pa) / denom : 0.0;
    st.residual_field.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        st.residual_field[i] = pl[i] + st.lambda_ls * pa[i];
    }
    st.residual = field_max(st.residual_field) / length(c);
    return st;
}

// H^1-style preconditioner: per coordinate, tridiagonal stiffness on the
// interior vertices; the shared endpoint motion gets a matching scalar scale.
std::vector<Vec2> precondition(const std::vector<Vec2> &r, const DiscreteCurve &c,
                               const Vec2 &d0, const Vec2 &d1) {
    const std::size_t nv = c.size();
    const std::size_t ni = nv - 2;
    const double h = length(c) / static_cast<double>(c.edge_count());
    std::vector<Vec2> d(nv, Vec2{0.0, 0.0});
    if (ni > 0) {
        BandedFactor lap(ni, 1, 1);
        const double diag = 2.0 / h + 1e-3 * h;
        const double off = -1.0 / h;
        for (std::size_t i = 0; i < ni; ++i) {
            lap.entry(i, i) = diag;
            if (i + 1 < ni) {
                lap.entry(i, i + 1) = off;
                lap.entry(i + 1, i) = off;
            }
        }
        lap.factor();
        std::vector<double> rx(ni), ry(ni);
        for (std::size_t i = 0; i < ni; ++i) {
            rx[i] = r[i + 1].x;
            ry[i] = r[i + 1].y;
        }
        lap.solve_in_place(rx);
        lap.solve_in_place(ry);
        for (std::size_t i = 0; i < ni; ++i) d[i + 1] = {rx[i], ry[i]};
    }
    const double beta = dot(r.front(), d0) + dot(r.back(), d1);
    const double da = beta * h / 2.0;
    d.front() = 0.5 * da * d0;
    d.back() = 0.5 * da * d1;
    return d;
}

struct HessianAssembly {
    // interleaved interior coordinates, bandwidth 3; border variables (a, lambda)
    BandedFactor h_int;
    std::vector<double> col_a;   // H * e_a restricted to interior
    std::vector<double> col_area;
    double h_aa = 0.0;
    double grad_area_a = 0.0;
    HessianAssembly(std::size_t ni) : h_int(2 * ni, 3, 3), col_a(2 * ni, 0.0), col_area(2 * ni, 0.0) {}
};

// Newton refinement of the stationarity system in reduced coordinates
// (a, interior vertices, lambda). Returns false if it cannot improve.
bool newton_polish(DiscreteCurve &c, double &lambda, const FreeBoundaryProblem &pb,
                   std::size_t max_rounds) {
    const Vec2 d0 = pb.dir0(), d1 = pb.dir1();
    const std::size_t nv = c.size();
    if (nv < 5) return false;
    const std::size_t ni = nv - 2;
    const bool full_turn = std::abs(pb.theta - 2.0 * kPi) < 1e-14;

    auto eval_f = [&](const DiscreteCurve &cur, double lam, std::vector<double> &f_int, double &f_a,
                      double &f_area) {
        const std::vector<Vec2> gl = length_gradient(cur);
        const std::vector<Vec2> ga = area_gradient(cur);
        f_int.assign(2 * ni, 0.0);
        for (std::size_t i = 0; i < ni; ++i) {
            const Vec2 g = gl[i + 1] + lam * ga[i + 1];
            f_int[2 * i] = g.x;
            f_int[2 * i + 1] = g.y;
        }
        f_a = dot(gl.front() + lam * ga.front(), d0) + dot(gl.back() + lam * ga.back(), d1);
        f_area = open_signed_area(cur) - pb.area_target;
    };

    auto f_norm = [&](const std::vector<double> &f_int, double f_a, double f_area) {
        double m = std::abs(f_area);
        m = std::max(m, std::abs(f_a));
        for (double v : f_int) m = std::max(m, std::abs(v));
        return m;
    };

    std::vector<double> f_int;
    double f_a = 0.0, f_area = 0.0;
    eval_f(c, lambda, f_int, f_a, f_area);
    double best = f_norm(f_int, f_a, f_area);
    const bool debug = std::getenv("CF_DEBUG_NEWTON") != nullptr;

    for (std::size_t round = 0; round < max_rounds; ++round) {
        if (best < 1e-14) break;
        HessianAssembly asmb(ni);

        auto var_kind = [&](std::size_t v) -> int {
            // 0: border a, 1: interior
            return (v == 0 || v == nv - 1) ? 0 : 1;
        };
        auto border_dir = [&](std::size_t v) -> Vec2 { return v == 0 ? d0 : d1; };

        auto add_block = [&](std::size_t vi, std::size_t vj, const double b[2][2]) {
            const int ki = var_kind(vi), kj = var_kind(vj);
            if (ki == 1 && kj == 1) {
                const std::size_t r0 = 2 * (vi - 1), c0 = 2 * (vj - 1);
                for (int r = 0; r < 2; ++r)
                    for (int cc = 0; cc < 2; ++cc) asmb.h_int.entry(r0 + r, c0 + cc) += b[r][cc];
            } else if (ki == 1 && kj == 0) {
                const Vec2 dj = border_dir(vj);
                const std::size_t r0 = 2 * (vi - 1);
                asmb.col_a[r0] += b[0][0] * dj.x + b[0][1] * dj.y;
                asmb.col_a[r0 + 1] += b[1][0] * dj.x + b[1][1] * dj.y;
            } else if (ki == 0 && kj == 0) {
                const Vec2 di = border_dir(vi), dj = border_dir(vj);
                asmb.h_aa += di.x * (b[0][0] * dj.x + b[0][1] * dj.y) +
                             di.y * (b[1][0] * dj.x + b[1][1] * dj.y);
            }
            // (border, interior) blocks are recovered from symmetry of the assembly:
            // every edge contributes both (vi,vj) and (vj,vi).
        };

        for (std::size_t e = 0; e + 1 < nv; ++e) {
            const Vec2 ev = c.vertices[e + 1] - c.vertices[e];
            const double len = norm(ev);
            const Vec2 t = ev / len;
            // d^2 |edge| = (I - t t^T)/len on (p,p) and (q,q), negated on cross terms
            const double p[2][2] = {{(1.0 - t.x * t.x) / len, (-t.x * t.y) / len},
                                    {(-t.x * t.y) / len, (1.0 - t.y * t.y) / len}};
            const double pn[2][2] = {{-p[0][0], -p[0][1]}, {-p[1][0], -p[1][1]}};
            add_block(e, e, p);
            add_block(e + 1, e + 1, p);
            add_block(e, e + 1, pn);
            add_block(e + 1, e, pn);
            // area Hessian: d^2 (1/2 cross(p,q)) -> -(lambda/2) R on (p,q), +(lambda/2) R on (q,p)
            const double rq[2][2] = {{0.0, 0.5 * lambda}, {-0.5 * lambda, 0.0}};
            const double rp[2][2] = {{0.0, -0.5 * lambda}, {0.5 * lambda, 0.0}};
            add_block(e, e + 1, rq);
            add_block(e + 1, e, rp);
        }

        const std::vector<Vec2> ga = area_gradient(c);
        for (std::size_t i = 0; i < ni; ++i) {
            asmb.col_area[2 * i] = ga[i + 1].x;
            asmb.col_area[2 * i + 1] = ga[i + 1].y;
        }
        asmb.grad_area_a = dot(ga.front(), d0) + dot(ga.back(), d1);

        auto dot_col = [&](const std::vector<double> &a, const std::vector<double> &b) {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
            return s;
        };

        bool improved = false;
        const double h_scale = length(c) / static_cast<double>(nv - 1);
        for (double mu : {0.0, 1e-10, 1e-7, 1e-4, 1e-2, 1.0}) {
            // at a full turn the whole configuration can translate along the
            // anchor ray, so the undamped system is singular
            if (full_turn && mu == 0.0) continue;
            std::vector<double> y0 = f_int, y1 = asmb.col_a, y2 = asmb.col_area;
            BandedFactor h_try = asmb.h_int;
            try {
                for (std::size_t i = 0; i < 2 * ni; ++i) h_try.entry(i, i) += mu * h_scale;
                h_try.factor();
            } catch (const std::exception &) {
                continue;
            }
            h_try.solve_in_place(y0);
            h_try.solve_in_place(y1);
            h_try.solve_in_place(y2);

            const double s11 = asmb.h_aa + mu * h_scale - dot_col(asmb.col_a, y1);
            const double s12 = asmb.grad_area_a - dot_col(asmb.col_a, y2);
            const double s21 = asmb.grad_area_a - dot_col(asmb.col_area, y1);
            const double s22 = -dot_col(asmb.col_area, y2);
            const double r1 = f_a - dot_col(asmb.col_a, y0);
            const double r2 = f_area - dot_col(asmb.col_area, y0);
            const double det = s11 * s22 - s12 * s21;
            if (std::abs(det) < 1e-300) continue;
            const double da = (r1 * s22 - s12 * r2) / det;
            const double dlam = (s11 * r2 - r1 * s21) / det;

            double step = 1.0;
            for (int halve = 0; halve < 10 && !improved; ++halve) {
                DiscreteCurve trial = c;
                const double a_old = dot(c.vertices.front(), d0);
                const double a_new = a_old - step * da;
                trial.vertices.front() = a_new * d0;
                trial.vertices.back() = a_new * d1;
                for (std::size_t i = 0; i < ni; ++i) {
                    const double dx = y0[2 * i] - y1[2 * i] * da - y2[2 * i] * dlam;
                    const double dy = y0[2 * i + 1] - y1[2 * i + 1] * da - y2[2 * i + 1] * dlam;
                    trial.vertices[i + 1] -= step * Vec2{dx, dy};
                }
                const double lam_trial = lambda - step * dlam;
                if (min_edge_length(trial) <= 0.0) {
                    step *= 0.5;
                    continue;
                }
                std::vector<double> f_int_t;
                double f_a_t = 0.0, f_area_t = 0.0;
                eval_f(trial, lam_trial, f_int_t, f_a_t, f_area_t);
                const double val = f_norm(f_int_t, f_a_t, f_area_t);
                if (std::isfinite(val) && val < 0.995 * best) {
                    c = std::move(trial);
                    lambda = lam_trial;
                    f_int = std::move(f_int_t);
                    f_a = f_a_t;
                    f_area = f_area_t;
                    best = val;
                    improved = true;
                }
                step *= 0.5;
            }
            if (improved) {
                if (debug) std::fprintf(stderr, "  newton round %zu: mu=%g |F|=%g\n", round, mu, best);
                break;
            }
        }
        if (!improved) {
            if (debug) std::fprintf(stderr, "  newton stalled at round %zu, |F|=%g\n", round, best);
            return round > 0;
        }
    }
    return true;
}

} // namespace

DiscreteCurve sector_arc(const FreeBoundaryProblem &problem, int winding, std::size_t vertex_count) {
    if (winding < 1) throw std::invalid_argument("sector_arc: winding must be >= 1");
    const double sweep = problem.theta + 2.0 * kPi * (winding - 1);
    const double rho = std::sqrt(2.0 * problem.area_target / sweep);
    DiscreteCurve c;
    c.closed = false;
    c.vertices.resize(vertex_count);
    for (std::size_t k = 0; k < vertex_count; ++k) {
        const double a = sweep * static_cast<double>(k) / static_cast<double>(vertex_count - 1);
        c.vertices[k] = {rho * std::cos(a), rho * std::sin(a)};
    }
    return c;
}

MinimizeResult minimize_open(const FreeBoundaryProblem &problem, const DiscreteCurve &init,
                             const MinimizeOptions &opts) {
    if (!(problem.theta > 0.0) || problem.theta > 2.0 * kPi + 1e-12) {
        throw std::invalid_argument("minimize_open: theta must lie in (0, 2pi]");
    }
    if (!(problem.area_target > 0.0)) {
        throw std::invalid_argument("minimize_open: area target must be positive");
    }
    if (init.closed) throw std::invalid_argument("minimize_open: init must be an open curve");
    validate(init);

    DiscreteCurve c = init;
    project_constraints(c, problem);
    const Vec2 d0 = problem.dir0(), d1 = problem.dir1();
    const double l0 = length(c);

    VariationReport report;
    report.residual_history.reserve(256);
    double step = 1.0;
    double l_prev = l0;
    std::size_t iter = 0;
    Stationarity st = stationarity(c, problem);
    double best_residual = st.residual;
    std::size_t best_iter = 0;

    for (; iter < opts.max_iters; ++iter) {
        if (st.residual < opts.tol) break;
        // hand a good-enough warm start to the Newton stage
        if (opts.polish && (st.residual < 3e-7 || iter >= 3000 || iter > best_iter + 800)) break;
        if (iter % 16 == 0) report.residual_history.push_back(st.residual);

        // descent on the projected objective; the geometric multiplier -L/2A is
        // the chain-rule term of the area rescaling
        const double lambda_geo = -length(c) / (2.0 * problem.area_target);
        std::vector<Vec2> r(c.size());
        const std::vector<Vec2> pl = project_field(length_gradient(c), d0, d1);
        const std::vector<Vec2> pa = project_field(area_gradient(c), d0, d1);
        for (std::size_t i = 0; i < c.size(); ++i) r[i] = pl[i] + lambda_geo * pa[i];
        const std::vector<Vec2> dir = precondition(r, c, d0, d1);
        const double slope = field_dot(r, dir);
        if (!(slope > 0.0)) break;

        bool accepted = false;
        double s = std::min(2.0 * step, 4.0);
        for (int bt = 0; bt < 40; ++bt) {
            DiscreteCurve trial = c;
            for (std::size_t i = 0; i < trial.size(); ++i) trial.vertices[i] -= s * dir[i];
            if (min_edge_length(trial) <= 0.0 || open_signed_area(trial) <= 0.0) {
                s *= 0.5;
                continue;
            }
            project_constraints(trial, problem);
            const double l_new = length(trial);
            if (l_new <= l_prev - 1e-4 * s * slope) {
                c = std::move(trial);
                l_prev = l_new;
                step = s;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) break;

        // remesh if the polygon is collapsing locally
        const double h_mean = l_prev / static_cast<double>(c.edge_count());
        if (min_edge_length(c) < 0.2 * h_mean) {
            c = reparameterize(c, c.size(), ResampleInterp::Linear);
            project_constraints(c, problem);
            if (min_edge_length(c) < 1e-8 * h_mean) {
                throw std::runtime_error("minimize_open: remeshing failed, polygon degenerate");
            }
            l_prev = length(c);
        }
        st = stationarity(c, problem);
        if (st.residual < best_residual) {
            best_residual = st.residual;
            best_iter = iter;
        }
    }

    st = stationarity(c, problem);
    double lambda = st.lambda_ls;
    if (opts.polish) {
        newton_polish(c, lambda, problem, 150);
        project_constraints(c, problem);
        st = stationarity(c, problem);
    }
    report.residual_history.push_back(st.residual);

    if (st.residual >= opts.tol) {
        std::ostringstream msg;
        msg << "minimize_open did not converge: residual " << st.residual << " after " << iter
            << " iterations";
        if (!report.residual_history.empty()) {
            msg << "; first " << report.residual_history.front() << ", last "
                << report.residual_history.back();
        }
        throw std::runtime_error(msg.str());
    }

    report.grad_length = st.grad_length;
    report.grad_area = st.grad_area;
    report.multiplier = st.lambda_ls;
    report.residual = st.residual;
    report.iters = iter;
    report.length = length(c);
    report.area = open_signed_area(c);
    const SectorCheckReport chk = verify_sector_inequality(c, problem, 1e-6);
    report.boundary_defect = chk.glue_defect;

    return {std::move(c), std::move(report)};
}

MinimizeResult minimize_open(const FreeBoundaryProblem &problem, const MinimizeOptions &opts) {
    std::optional<MinimizeResult> best;
    std::string last_error;
    for (int j : opts.winding_sweep) {
        DiscreteCurve init = sector_arc(problem, j, opts.vertex_count);
        // the perturbation exercises descent robustness on the principal branch;
        // higher-winding candidates start at their own stationary arcs
        if (opts.init_perturbation > 0.0 && j == 1) {
            std::mt19937 rng(opts.seed + static_cast<unsigned>(j));
            std::uniform_real_distribution<double> unif(-1.0, 1.0);
            const double c1 = unif(rng), c2 = unif(rng), c3 = unif(rng);
            const std::size_t nv = init.size();
            for (std::size_t k = 0; k < nv; ++k) {
                const double x = static_cast<double>(k) / static_cast<double>(nv - 1);
                const double envelope = std::sin(kPi * x);
                const double bump = c1 * std::sin(2.0 * kPi * x) + c2 * std::sin(4.0 * kPi * x) +
                                    c3 * std::sin(6.0 * kPi * x);
                const Vec2 v = init.vertices[k];
                const Vec2 nrm = norm(v) > 0.0 ? normalized(v) : Vec2{1.0, 0.0};
                init.vertices[k] = v + opts.init_perturbation * envelope * bump * nrm;
            }
        }
        try {
            MinimizeResult candidate = minimize_open(problem, init, opts);
            if (!best || candidate.report.length < best->report.length) {
                best = std::move(candidate);
            }
        } catch (const std::exception &e) {
            last_error = e.what();
        }
    }
    if (!best) {
        throw std::runtime_error("minimize_open: every winding candidate failed; last: " + last_error);
    }
    return std::move(*best);
}

SectorCheckReport verify_sector_inequality(const DiscreteCurve &curve,
                                           const FreeBoundaryProblem &problem,
                                           double constraint_tol) {
    if (curve.closed) throw std::invalid_argument("verify_sector_inequality expects an open curve");
    validate(curve);
    if (curve.size() < 5) throw std::invalid_argument("verify_sector_inequality: need at least 5 vertices");

    const Vec2 d0 = problem.dir0(), d1 = problem.dir1();
    const double len = length(curve);
    const Vec2 p0 = curve.vertices.front(), p1 = curve.vertices.back();
    const double tol = constraint_tol * len;
    const double off0 = norm(p0 - dot(p0, d0) * d0);
    const double off1 = norm(p1 - dot(p1, d1) * d1);
    if (off0 > tol || off1 > tol || dot(p0, d0) < -tol || dot(p1, d1) < -tol ||
        std::abs(norm(p0) - norm(p1)) > tol) {
        throw std::invalid_argument("verify_sector_inequality: curve violates the class constraints");
    }

    SectorCheckReport rep;
    rep.length = len;
    rep.area = open_signed_area(curve);
    rep.margin = len * len - 2.0 * problem.theta * rep.area;

    // interior turning-angle curvature
    const std::size_t nv = curve.size();
    double total_turn = 0.0, total_w = 0.0;
    std::vector<double> kappa(nv - 2), weight(nv - 2);
    for (std::size_t i = 1; i + 1 < nv; ++i) {
        const Vec2 e0 = curve.vertices[i] - curve.vertices[i - 1];
        const Vec2 e1 = curve.vertices[i + 1] - curve.vertices[i];
        const double turn = std::atan2(cross(e0, e1), dot(e0, e1));
        const double w = 0.5 * (norm(e0) + norm(e1));
        kappa[i - 1] = turn / w;
        weight[i - 1] = w;
        total_turn += turn;
        total_w += w;
    }
    const double mean = total_turn / total_w;
    double spread = 0.0;
    for (double k : kappa) spread = std::max(spread, std::abs(k - mean));
    rep.kappa_spread = std::abs(mean) > 0.0 ? spread / std::abs(mean) : spread;

    // fourth-order one-sided endpoint tangents
    const auto &v = curve.vertices;
    const Vec2 t0 = normalized(-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]);
    const std::size_t l = nv - 1;
    const Vec2 t1 =
        normalized(25.0 * v[l] - 48.0 * v[l - 1] + 36.0 * v[l - 2] - 16.0 * v[l - 3] + 3.0 * v[l - 4]);
    rep.glue_defect = std::abs(dot(t0, d0) - dot(t1, d1));
    if (problem.theta < 2.0 * kPi - 1e-12) {
        rep.perp_defect = std::abs(dot(t0, d0));
    }
    return rep;
}

SymmetricInequalityReport verify_symmetric_inequality(const DiscreteCurve &curve,
                                                      const SymmetrySpec &spec,
                                                      double equality_tol) {
    const RotationNumber rot = rotation_number(curve);
    if (rot.value != spec.n) {
        throw std::invalid_argument("verify_symmetric_inequality: rotation number mismatch");
    }
    const SymmetryCheck chk = check_symmetry(curve, spec.m, 1e-6);
    if (!chk.symmetric || !chk.i || *chk.i != spec.i) {
        throw std::invalid_argument("verify_symmetric_inequality: curve is not (m,i)-symmetric");
    }

    SymmetricInequalityReport rep;
    rep.index = spec.i;
    rep.iso_ratio = iso_ratio(curve);
    rep.margin = rep.iso_ratio - static_cast<double>(spec.i);

    const std::size_t piece = curve.size() / static_cast<std::size_t>(spec.m);
    DiscreteCurve part;
    part.closed = false;
    if (spec.m == 1) {
        part.vertices = curve.vertices;
        part.vertices.push_back(curve.vertices.front());
    } else {
        part.vertices.assign(curve.vertices.begin(),
                             curve.vertices.begin() + static_cast<long>(piece) + 1);
    }
    const double lp = length(part);
    const double ap = open_signed_area(part);
    rep.period_margin = lp * lp - 2.0 * (2.0 * kPi * spec.i / spec.m) * ap;

    const Vec2 c = centroid(curve);
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0, rsum = 0.0;
    for (const Vec2 &p : curve.vertices) {
        const double r = norm(p - c);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        rsum += r;
    }
    const double rmean = rsum / static_cast<double>(curve.size());
    rep.roundness = rmean > 0.0 ? (rmax - rmin) / rmean : 0.0;
    rep.equality = rep.margin <= equality_tol * std::max(1.0, rep.iso_ratio) &&
                   rep.roundness <= equality_tol;
    return rep;
}

} // namespace curveflow
