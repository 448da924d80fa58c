// gbfiber: mode diagrams, mode tables and interferometer probabilities.
//
//   gbfiber mode-diagram --config run.json [--out file] [--format csv|json]
//   gbfiber solve        --config run.json [--out file]
//   gbfiber interfere    --config run.json [--out file] [--format csv|json]
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <gbfiber/cli/commands.hpp>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gupta-Bleuler fiber modes and interferometry"};
    app.require_subcommand(1);
    std::string config_path, out_path, format;

    auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_path, "output file (default: config 'output' or stdout)");
        if (with_format)
            sub->add_option("--format", format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
    };
    auto* diagram = app.add_subcommand("mode-diagram", "b(V) curves of the guided modes");
    auto* solve = app.add_subcommand("solve", "mode table with coefficients and normalization");
    auto* interfere = app.add_subcommand("interfere", "interferometer output probabilities");
    add_common(diagram, true);
    add_common(solve, true);
    add_common(interfere, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    using namespace gbfiber;
    cli::RunConfig cfg;
    try {
        cfg = cli::load_config(config_path);
        if (!format.empty()) cfg.format = cli::parse_format(format);
        if (!out_path.empty()) cfg.output = out_path;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::string text;
    try {
        if (*diagram)
            text = cli::cmd_mode_diagram(cfg);
        else if (*solve)
            text = cli::cmd_solve(cfg);
        else
            text = cli::cmd_interfere(cfg);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }

    if (cfg.output.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!(out << text)) {
        std::cerr << "cannot write '" << cfg.output << "'\n";
        return kExitConfig;
    }
    return 0;
}
