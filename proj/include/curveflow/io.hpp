#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/symmetry.hpp"

namespace curveflow {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

struct CurveDescriptor {
    bool closed = true;
    std::string name;
    std::optional<SymmetrySpec> symmetry;
};

// Curve exchange format: CSV with header "x,y", one vertex per row, and a JSON
// sidecar (<stem>.json next to the CSV) holding the descriptor.
void write_curve_csv(const std::filesystem::path &csv_path, const DiscreteCurve &curve,
                     const CurveDescriptor &descriptor);

struct LoadedCurve {
    DiscreteCurve curve;
    CurveDescriptor descriptor;
};

// Parse errors carry the 1-based row number of the offending line.
LoadedCurve read_curve_csv(const std::filesystem::path &csv_path);

// Monitor series CSV: t,L,A,N,kosc,bending,min_kappa,max_kappa,sym_defect,bp_area
// (bp_area column only when requested).
void write_series_csv(const std::filesystem::path &path, const std::vector<FlowSample> &series,
                      bool with_bp_area);

// Single polyline frame with a fixed viewBox (initial bounding box + 20%).
struct SvgFrameSpec {
    BoundingBox view;
    double stroke_width = 0.0; // 0: derived from the view size
};
void write_svg_frame(const std::filesystem::path &path, const DiscreteCurve &curve,
                     const SvgFrameSpec &spec);

BoundingBox inflate(const BoundingBox &box, double factor);

} // namespace curveflow
