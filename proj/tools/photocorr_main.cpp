// photocorr: angle-resolved photon correlation maps for driven atom chains

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "photocorr/runner.hpp"

namespace {

struct CommonArgs {
    std::string scenario;
    std::string config_path;
    std::string output_dir;
    int grid = 0;
    int workers = 0;
    bool heatmaps = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario, "named preset (see list-scenarios)");
    cmd->add_option("--config", args.config_path, "configuration file");
    cmd->add_option("--out", args.output_dir, "output directory");
    cmd->add_option("--grid", args.grid, "points per angle axis")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", args.workers, "scanner worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--heatmaps", args.heatmaps, "also emit PNG heatmaps");
}

photocorr::RunConfig resolve_config(const CommonArgs& args) {
    photocorr::RunConfig cfg;
    bool have = false;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path, std::ios::binary);
        if (!in) throw photocorr::ConfigError("cannot read config file " + args.config_path);
        std::ostringstream text;
        text << in.rdbuf();
        cfg = photocorr::parse_config(text.str());
        have = true;
    }
    if (!args.scenario.empty()) {
        if (have)
            throw photocorr::ConfigError("give either --scenario or --config, not both");
        cfg = photocorr::scenario_config(args.scenario);
        have = true;
    }
    if (!have)
        throw photocorr::ConfigError("no configuration: pass --scenario or --config");
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    if (args.grid > 0) cfg.grid_points = args.grid;
    if (args.workers > 0) cfg.workers = args.workers;
    if (args.heatmaps) cfg.emit_heatmaps = true;
    return cfg;
}

int execute(const photocorr::RunConfig& cfg, photocorr::RunMode mode) {
    const photocorr::RunOutcome outcome = photocorr::run(cfg, mode);
    for (const std::string& f : outcome.files)
        std::printf("wrote %s/%s\n", cfg.output_dir.c_str(), f.c_str());
    if (outcome.exit_code != 0)
        std::fprintf(stderr, "error: %s\n", outcome.message.c_str());
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon correlation maps of laser-driven atom chains"};
    app.require_subcommand(1);

    CommonArgs scan_args, contour_args, scaling_args, rabi_args, steady_args;
    double s1 = 0.0, s2 = 0.0;
    bool no_interaction = false;
    double omega_c_1 = -1.0, omega_c_2 = -1.0;
    bool dump_rho = false, dump_liouvillian = false;

    CLI::App* scan = app.add_subcommand("scan", "scan correlation fields over the angle grid");
    add_common(scan, scan_args);

    CLI::App* contours = app.add_subcommand("contours", "extract contour sets only");
    add_common(contours, contour_args);

    CLI::App* scaling =
        app.add_subcommand("scaling", "lattice-spacing rescaling ratio of two chains");
    add_common(scaling, scaling_args);
    scaling->add_option("--s1", s1, "first spacing, probe wavelengths");
    scaling->add_option("--s2", s2, "second spacing, probe wavelengths");
    scaling->add_flag("--no-interaction", no_interaction,
                      "zero the couplings (control run; ratio must be 1)");

    CLI::App* rabi =
        app.add_subcommand("rabi-ratio", "correlation ratio of two control Rabi frequencies");
    add_common(rabi, rabi_args);
    rabi->add_option("--omega-c1", omega_c_1, "first control Rabi frequency");
    rabi->add_option("--omega-c2", omega_c_2, "second control Rabi frequency");

    CLI::App* steady = app.add_subcommand("steady-state", "solve the steady state only");
    add_common(steady, steady_args);
    steady->add_flag("--dump-rho", dump_rho, "write the density matrix");
    steady->add_flag("--dump-liouvillian", dump_liouvillian, "write the generator triplets");

    CLI::App* list = app.add_subcommand("list-scenarios", "print the preset names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const std::string& name : photocorr::scenario_names())
                std::printf("%s\n", name.c_str());
            return 0;
        }
        if (scan->parsed()) return execute(resolve_config(scan_args), photocorr::RunMode::Scan);
        if (contours->parsed())
            return execute(resolve_config(contour_args), photocorr::RunMode::Contours);
        if (scaling->parsed()) {
            photocorr::RunConfig cfg = resolve_config(scaling_args);
            if (s1 > 0.0) cfg.scaling_s1 = s1;
            if (s2 > 0.0) cfg.scaling_s2 = s2;
            if (no_interaction) cfg.disable_interaction = true;
            return execute(cfg, photocorr::RunMode::Scaling);
        }
        if (rabi->parsed()) {
            photocorr::RunConfig cfg = resolve_config(rabi_args);
            if (omega_c_1 >= 0.0) cfg.rabi_omega_c_1 = omega_c_1;
            if (omega_c_2 >= 0.0) cfg.rabi_omega_c_2 = omega_c_2;
            return execute(cfg, photocorr::RunMode::RabiRatio);
        }
        if (steady->parsed()) {
            photocorr::RunConfig cfg = resolve_config(steady_args);
            if (dump_rho) cfg.dump_rho = true;
            if (dump_liouvillian) cfg.dump_liouvillian = true;
            return execute(cfg, photocorr::RunMode::SteadyState);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
