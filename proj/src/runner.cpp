// runner.cpp: pipeline orchestration and artifact emission

#include "photocorr/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "photocorr/experiments.hpp"
#include "photocorr/io.hpp"

namespace photocorr {

namespace {

constexpr double kResidualTolerance = 1e-10;

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string solver_name(SteadyStateSolver s) {
    switch (s) {
        case SteadyStateSolver::TraceRowReplacement: return "trace_row_replacement";
        case SteadyStateSolver::NullSpaceSvd: return "null_space_svd";
        case SteadyStateSolver::TimeIntegration: return "time_integration";
    }
    return "unknown";
}

std::string contour_file_name(const ContourRequest& req) {
    const std::string base = field_name(req.field);
    if (req.kind == ContourKind::RatioThreshold)
        return base + "_ratio" + fmt_g(req.level) + "_contour.txt";
    if (req.level == 0.0) return base + "_contour.txt";
    return base + "_level" + fmt_g(req.level) + "_contour.txt";
}

class ManifestWriter {
  public:
    explicit ManifestWriter(const RunConfig& config) : echo_(emit_config(config)) {}

    void add(const std::string& key, const std::string& value) {
        report_ += key + " = " + value + "\n";
    }
    void add_files(const std::vector<std::string>& files) {
        std::string joined;
        for (std::size_t i = 0; i < files.size(); ++i) joined += (i ? ", " : "") + files[i];
        add("files", joined);
    }

    std::string text(const std::string& status, const std::string& message) const {
        std::string out = echo_ + "\n[report]\nstatus = " + status + "\n";
        if (!message.empty()) {
            std::string flat = message;
            std::replace(flat.begin(), flat.end(), '\n', ' ');
            out += "message = " + flat + "\n";
        }
        return out + report_;
    }

  private:
    std::string echo_;
    std::string report_;
};

void add_field_stats(ManifestWriter& manifest, const std::string& name, const ScalarField& f) {
    manifest.add("masked_" + name, std::to_string(f.masked_count()));
    if (f.display_cap) manifest.add("cap_" + name, fmt_g(*f.display_cap));
}

// Fields the contour requests draw on, beyond those already requested as CSVs.
std::vector<FieldKind> kinds_for(const RunConfig& config) {
    std::set<FieldKind> kinds(config.fields.begin(), config.fields.end());
    for (const ContourRequest& req : config.contours) {
        kinds.insert(req.field);
        if (req.kind == ContourKind::RatioThreshold) kinds.insert(FieldKind::G2);
    }
    return {kinds.begin(), kinds.end()};
}

ContourSet contours_for(const ContourRequest& req, const ScanResult& scan) {
    const ScalarField& f = scan.fields.at(req.field);
    if (req.kind == ContourKind::RatioThreshold)
        return ratio_regions(f, scan.fields.at(FieldKind::G2), req.level);
    return extract_contours(f, req.level);
}

}  // namespace

std::string run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Scan: return "scan";
        case RunMode::Contours: return "contours";
        case RunMode::Scaling: return "scaling";
        case RunMode::RabiRatio: return "rabi-ratio";
        case RunMode::SteadyState: return "steady-state";
    }
    return "unknown";
}

RunOutcome run(const RunConfig& config, RunMode mode) {
    namespace fs = std::filesystem;
    RunOutcome outcome;
    ManifestWriter manifest(config);
    manifest.add("mode", run_mode_name(mode));
    const fs::path dir(config.output_dir);

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    auto emit_text = [&](const std::string& name, const std::string& text) {
        io::write_text_file(dir / name, text);
        outcome.files.push_back(name);
    };
    auto emit_png = [&](const std::string& name, const ScalarField& field) {
        io::write_binary_file(dir / name, io::encode_heatmap_png(field));
        outcome.files.push_back(name);
    };
    auto check_residual = [&](double residual) {
        if (residual > kResidualTolerance)
            throw std::runtime_error("steady-state residual " + fmt_full(residual) +
                                     " exceeds tolerance " + fmt_full(kResidualTolerance));
    };

    try {
        fs::create_directories(dir);
        const AngleGrid grid{config.grid_points};

        if (mode == RunMode::Scan || mode == RunMode::Contours) {
            const ScanResult result = scan(config.spec, grid, kinds_for(config), config.workers);
            manifest.add("solver", solver_name(result.steady.solver));
            manifest.add("residual", fmt_full(result.steady.residual));
            manifest.add("hilbert_dim", std::to_string(config.spec.dim()));
            check_residual(result.steady.residual);

            if (mode == RunMode::Scan) {
                for (FieldKind kind : config.fields) {
                    const ScalarField& f = result.fields.at(kind);
                    emit_text(field_name(kind) + ".csv", io::format_field_csv(f));
                    add_field_stats(manifest, field_name(kind), f);
                    if (config.emit_heatmaps) emit_png(field_name(kind) + ".png", f);
                }
            }
            for (const ContourRequest& req : config.contours) {
                const ContourSet set = contours_for(req, result);
                emit_text(contour_file_name(req), io::format_contours(set));
                manifest.add("polylines_" + contour_file_name(req),
                             std::to_string(set.polylines.size()));
            }
        } else if (mode == RunMode::Scaling) {
            SystemSpec spec = config.spec;
            if (config.disable_interaction) spec.interaction = InteractionKind::None;
            const RatioExperimentResult result = scaling_experiment(
                spec, config.scaling_s1, config.scaling_s2, grid, config.workers);
            manifest.add("residual", fmt_full(result.residual_1));
            manifest.add("residual_2", fmt_full(result.residual_2));
            check_residual(result.residual_1);
            check_residual(result.residual_2);
            emit_text("ratio.csv", io::format_field_csv(result.ratio));
            add_field_stats(manifest, "ratio", result.ratio);
            if (config.emit_heatmaps) emit_png("ratio.png", result.ratio);
        } else if (mode == RunMode::RabiRatio) {
            const RatioExperimentResult result = rabi_ratio_experiment(
                config.spec, config.rabi_omega_c_1, config.rabi_omega_c_2, grid, config.workers);
            manifest.add("residual", fmt_full(result.residual_1));
            manifest.add("residual_2", fmt_full(result.residual_2));
            check_residual(result.residual_1);
            check_residual(result.residual_2);
            emit_text("ratio.csv", io::format_field_csv(result.ratio));
            add_field_stats(manifest, "ratio", result.ratio);
            if (config.emit_heatmaps) emit_png("ratio.png", result.ratio);
        } else {  // SteadyState
            const SteadyStateReport report = solve_steady_state(config.spec);
            manifest.add("solver", solver_name(report.solver));
            manifest.add("residual", fmt_full(report.residual));
            manifest.add("hilbert_dim", std::to_string(config.spec.dim()));
            check_residual(report.residual);
            if (config.dump_rho) emit_text("rho.csv", io::format_density_matrix(report.rho));
            if (config.dump_liouvillian) {
                const Superoperator op =
                    build_liouvillian(config.spec, couplings_for(config.spec));
                manifest.add("liouvillian_storage",
                             op.storage == Superoperator::Storage::Dense ? "dense" : "sparse");
                emit_text("liouvillian.csv", io::format_superoperator(op));
            }
        }

        manifest.add("wall_seconds_total", fmt_g(elapsed()));
        manifest.add_files(outcome.files);
        io::write_text_file(dir / "manifest.ini", manifest.text("ok", ""));
        outcome.files.push_back("manifest.ini");
        outcome.exit_code = 0;
    } catch (const std::exception& e) {
        outcome.exit_code = 1;
        outcome.message = e.what();
        manifest.add("wall_seconds_total", fmt_g(elapsed()));
        manifest.add_files(outcome.files);
        try {
            fs::create_directories(dir);
            io::write_text_file(dir / "manifest.ini", manifest.text("error", e.what()));
            outcome.files.push_back("manifest.ini");
        } catch (...) {
            // the directory itself is unwritable; the message still reaches the caller
        }
    }
    return outcome;
}

}  // namespace photocorr
