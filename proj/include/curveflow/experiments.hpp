#pragma once

#include <filesystem>

#include "json.hpp"

#include "curveflow/curve.hpp"
#include "curveflow/flow.hpp"

namespace curveflow {

// Exit codes shared by the CLI and the command runners.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalError = 3;

struct CurveSource {
    DiscreteCurve curve;
    std::optional<SymmetrySpec> symmetry; // known class, when generated
    std::string name;
};

// Builds the working curve from config["input"]: either {"file": path} or
// {"generator": {"kind": ..., ...}}.
CurveSource build_input(const nlohmann::json &input, std::uint64_t seed);

FlowConfig flow_config_from_json(const nlohmann::json &j);

// Dispatches one command; writes all artifacts under out_dir. Returns an exit code.
int run_command(const std::string &command, const nlohmann::json &config,
                const std::filesystem::path &out_dir);

// Dotted-path override helper for --set key=value.
void apply_override(nlohmann::json &config, const std::string &assignment);

} // namespace curveflow
