#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curveflow/experiments.hpp"

int main(int argc, char **argv) {
    CLI::App app{"curveflow: planar curve functionals, constrained length minimization, "
                 "and curve diffusion flow experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;

    const std::vector<std::string> commands = {"metrics", "flow", "minimize", "verify-iso", "sweep"};
    for (const std::string &name : commands) {
        CLI::App *sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--set", overrides, "override a config field, e.g. flow.t_end=0.5");
        sub->add_option("--out", out_dir, "output directory");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    nlohmann::json config = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "input error: cannot open config " << config_path << '\n';
            return curveflow::kExitInputError;
        }
        config = nlohmann::json::parse(in, nullptr, false);
        if (config.is_discarded()) {
            std::cerr << "input error: config " << config_path << " is not valid JSON\n";
            return curveflow::kExitInputError;
        }
    }
    try {
        for (const std::string &o : overrides) curveflow::apply_override(config, o);
    } catch (const std::exception &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return curveflow::kExitInputError;
    }

    return curveflow::run_command(command, config, out_dir);
}
