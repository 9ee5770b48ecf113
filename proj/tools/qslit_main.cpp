// Command-line front end: run scenarios, compare methods, list presets.
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qslit/cli.hpp"

namespace {

std::vector<std::string> split_methods(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qslit::cli;
    CLI::App app{"Quantum slit diffraction patterns: exact, semiclassical, truncation and gravity propagators"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir, method, methods;
    int threads = 0;

    auto add_source = [&](CLI::App* cmd) {
        auto* cfg = cmd->add_option("--config", config_path, "Scenario config file (JSON)");
        auto* pre = cmd->add_option("--preset", preset_name, "Built-in preset name (see `presets --list`)");
        cfg->excludes(pre);
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--threads", threads,
                        std::string("Worker threads; overrides ") + kThreadsEnv + " (0 = hardware concurrency)");
    };

    auto* run = app.add_subcommand("run", "Compute a pattern and write CSV plus a JSON sidecar");
    add_source(run);
    run->add_option("--method", method, "exact | semiclassical | truncation | fourth_order | gravity | gravity_semiclassical");

    auto* compare = app.add_subcommand("compare", "Compute several methods on one scenario and report fringe shifts");
    add_source(compare);
    compare->add_option("--methods", methods, "Comma-separated methods, e.g. exact,truncation")->required();

    auto* list = app.add_subcommand("presets", "Show built-in presets");
    bool list_flag = false;
    std::string show;
    list->add_flag("--list", list_flag, "List preset names");
    list->add_option("--show", show, "Print a preset as a config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*list) {
        if (!show.empty()) {
            try {
                std::cout << config_to_json(preset(show)).dump(2) << '\n';
            } catch (const qslit::Error& e) {
                std::cerr << "validation error: " << e.what() << '\n';
                return kExitValidation;
            }
            return kExitOk;
        }
        for (const auto& n : preset_names()) std::cout << n << '\n';
        return kExitOk;
    }

    ScenarioConfig cfg;
    try {
        if (!config_path.empty()) {
            cfg = load_config(config_path);
        } else if (!preset_name.empty()) {
            cfg = preset(preset_name);
        } else {
            std::cerr << "validation error: either --config or --preset is required\n";
            return kExitValidation;
        }
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const qslit::Error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    }

    const int n_threads = resolve_threads(threads);
    if (*run) return run_command(cfg, out_dir, method, n_threads, std::cerr);
    return compare_command(cfg, split_methods(methods), out_dir, n_threads, std::cerr);
}
