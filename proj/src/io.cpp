#include "curveflow/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace curveflow {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s, std::size_t row) {
    double v = 0.0;
    const char *first = s.data();
    const char *last = s.data() + s.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw std::invalid_argument("curve CSV row " + std::to_string(row) + ": bad number '" +
                                 std::string(s) + "'");
    }
    return v;
}

std::filesystem::path sidecar_path(const std::filesystem::path &csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_extension(".json");
    return p;
}

} // namespace

void write_curve_csv(const std::filesystem::path &csv_path, const DiscreteCurve &curve,
                     const CurveDescriptor &descriptor) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open " + csv_path.string() + " for writing");
    out << "x,y\n";
    for (const Vec2 &v : curve.vertices) {
        out << format_double(v.x) << ',' << format_double(v.y) << '\n';
    }
    out.close();

    nlohmann::ordered_json j;
    j["closed"] = descriptor.closed;
    j["name"] = descriptor.name;
    if (descriptor.symmetry) {
        j["symmetry"] = {{"n", descriptor.symmetry->n},
                         {"m", descriptor.symmetry->m},
                         {"i", descriptor.symmetry->i}};
    }
    std::ofstream side(sidecar_path(csv_path));
    if (!side) throw std::runtime_error("cannot open sidecar for " + csv_path.string());
    side << j.dump(2) << '\n';
}

LoadedCurve read_curve_csv(const std::filesystem::path &csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("cannot open " + csv_path.string());
    LoadedCurve loaded;

    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("curve CSV is empty");
    ++row;
    if (line == "x,y\r") line.pop_back();
    if (line != "x,y") throw std::invalid_argument("curve CSV row 1: expected header 'x,y'");
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("curve CSV row " + std::to_string(row) + ": missing comma");
        }
        const Vec2 v{parse_double(std::string_view(line).substr(0, comma), row),
                     parse_double(std::string_view(line).substr(comma + 1), row)};
        if (!loaded.curve.vertices.empty()) {
            const Vec2 prev = loaded.curve.vertices.back();
            if (prev.x == v.x && prev.y == v.y) {
                throw std::invalid_argument("curve CSV row " + std::to_string(row) +
                                         ": duplicate consecutive vertex");
            }
        }
        loaded.curve.vertices.push_back(v);
    }

    const std::filesystem::path side = sidecar_path(csv_path);
    if (std::filesystem::exists(side)) {
        std::ifstream sjson(side);
        nlohmann::json j;
        sjson >> j;
        loaded.descriptor.closed = j.value("closed", true);
        loaded.descriptor.name = j.value("name", std::string{});
        if (j.contains("symmetry")) {
            SymmetrySpec s;
            s.n = j["symmetry"].value("n", 1);
            s.m = j["symmetry"].value("m", 1);
            s.i = j["symmetry"].value("i", index_i(s.n, s.m));
            loaded.descriptor.symmetry = s;
        }
    }
    loaded.curve.closed = loaded.descriptor.closed;
    if (loaded.curve.closed && loaded.curve.size() >= 2) {
        const Vec2 first = loaded.curve.vertices.front();
        const Vec2 last = loaded.curve.vertices.back();
        if (first.x == last.x && first.y == last.y) {
            throw std::invalid_argument("curve CSV row " + std::to_string(row) +
                                     ": closed curve repeats the first vertex");
        }
    }
    validate(loaded.curve);
    return loaded;
}

void write_series_csv(const std::filesystem::path &path, const std::vector<FlowSample> &series,
                      bool with_bp_area) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "t,L,A,N,kosc,bending,min_kappa,max_kappa,sym_defect";
    if (with_bp_area) out << ",bp_area";
    out << '\n';
    for (const FlowSample &s : series) {
        out << format_double(s.t) << ',' << format_double(s.length) << ',' << format_double(s.area)
            << ',' << s.rotation << ',' << format_double(s.k_osc) << ',' << format_double(s.bending)
            << ',' << format_double(s.min_kappa) << ',' << format_double(s.max_abs_kappa) << ','
            << format_double(s.sym_defect);
        if (with_bp_area) out << ',' << format_double(s.bp_area);
        out << '\n';
    }
}

BoundingBox inflate(const BoundingBox &box, double factor) {
    const Vec2 mid = 0.5 * (box.lo + box.hi);
    const Vec2 half = 0.5 * (box.hi - box.lo);
    return {mid - (1.0 + factor) * half, mid + (1.0 + factor) * half};
}

void write_svg_frame(const std::filesystem::path &path, const DiscreteCurve &curve,
                     const SvgFrameSpec &spec) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const double w = spec.view.hi.x - spec.view.lo.x;
    const double h = spec.view.hi.y - spec.view.lo.y;
    const double stroke = spec.stroke_width > 0.0 ? spec.stroke_width : 0.004 * std::max(w, h);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(spec.view.lo.x)
        << ' ' << format_double(-spec.view.hi.y) << ' ' << format_double(w) << ' '
        << format_double(h) << "\">\n";
    out << "<poly" << (curve.closed ? "gon" : "line") << " fill=\"none\" stroke=\"black\""
        << " stroke-width=\"" << format_double(stroke) << "\" points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (i) out << ' ';
        out << format_double(curve.vertices[i].x) << ',' << format_double(-curve.vertices[i].y);
    }
    out << "\"/>\n</svg>\n";
}

} // namespace curveflow
