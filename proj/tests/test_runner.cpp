#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "photocorr/runner.hpp"
#include "photocorr/scanner.hpp"

using namespace photocorr;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("scan run emits the expected artifact set and a faithful manifest") {
    const fs::path dir = fresh_dir("photocorr_run_scan");
    RunConfig cfg = scenario_config("ddi_fig2");
    cfg.grid_points = 13;
    cfg.output_dir = dir.string();

    const RunOutcome outcome = run(cfg, RunMode::Scan);
    REQUIRE(outcome.exit_code == 0);
    CHECK(outcome.message.empty());

    for (const char* name : {"G2.csv", "C2.csv", "C3.csv", "C4.csv", "g2norm.csv",
                             "intensity_product.csv", "C2_contour.txt", "C4_contour.txt",
                             "C3_ratio10_contour.txt", "manifest.ini"})
        CHECK(fs::exists(dir / name));

    // the manifest echo parses back to the configuration that produced it
    const RunConfig echoed = parse_config(slurp(dir / "manifest.ini"));
    CHECK(echoed == cfg);
    CHECK(slurp(dir / "manifest.ini").find("status = ok") != std::string::npos);

    // emitted CSV text reproduces the in-memory field value for value
    const ScanResult reference = scan(cfg.spec, AngleGrid{cfg.grid_points}, {FieldKind::G2}, 1);
    const ScalarField& g2 = reference.fields.at(FieldKind::G2);
    std::istringstream csv(slurp(dir / "G2.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "alpha1,alpha2,value,masked");
    for (int i = 0; i < cfg.grid_points; ++i) {
        for (int j = 0; j < cfg.grid_points; ++j) {
            REQUIRE(std::getline(csv, line));
            char* end = nullptr;
            std::strtod(line.c_str(), &end);
            std::strtod(end + 1, &end);
            const double v = std::strtod(end + 1, &end);
            CHECK(v == g2.values(i, j));
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("contours run writes only contour files and scaling control stays flat") {
    const fs::path dir = fresh_dir("photocorr_run_contours");
    RunConfig cfg = scenario_config("ddi_fig2");
    cfg.grid_points = 13;
    cfg.output_dir = dir.string();
    const RunOutcome outcome = run(cfg, RunMode::Contours);
    REQUIRE(outcome.exit_code == 0);
    CHECK(fs::exists(dir / "C2_contour.txt"));
    CHECK_FALSE(fs::exists(dir / "G2.csv"));
    fs::remove_all(dir);

    const fs::path dir2 = fresh_dir("photocorr_run_scaling");
    RunConfig sc = scenario_config("scaling_fig8a");
    sc.grid_points = 9;
    sc.output_dir = dir2.string();
    sc.disable_interaction = true;
    const RunOutcome out2 = run(sc, RunMode::Scaling);
    REQUIRE(out2.exit_code == 0);
    const std::string csv = slurp(dir2 / "ratio.csv");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        char* end = nullptr;
        std::strtod(line.c_str(), &end);
        std::strtod(end + 1, &end);
        const double v = std::strtod(end + 1, &end);
        const bool masked = *(end + 1) == '1';
        if (!masked) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    }
    fs::remove_all(dir2);
}

TEST_CASE("steady-state run honors dump flags") {
    const fs::path dir = fresh_dir("photocorr_run_steady");
    RunConfig cfg = scenario_config("ddi_fig2");
    cfg.output_dir = dir.string();
    cfg.dump_rho = true;
    cfg.dump_liouvillian = true;
    const RunOutcome outcome = run(cfg, RunMode::SteadyState);
    REQUIRE(outcome.exit_code == 0);
    CHECK(fs::exists(dir / "rho.csv"));
    CHECK(fs::exists(dir / "liouvillian.csv"));
    CHECK_FALSE(fs::exists(dir / "G2.csv"));
    const std::string manifest = slurp(dir / "manifest.ini");
    CHECK(manifest.find("hilbert_dim = 16") != std::string::npos);
    CHECK(manifest.find("liouvillian_storage = dense") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("a failing run reports through the manifest and exits nonzero") {
    const fs::path dir = fresh_dir("photocorr_run_fail");
    RunConfig cfg = scenario_config("rri_fig6");  // ladder spec cannot drive the scaling protocol
    cfg.grid_points = 9;
    cfg.output_dir = dir.string();
    const RunOutcome outcome = run(cfg, RunMode::Scaling);
    CHECK(outcome.exit_code == 1);
    CHECK_FALSE(outcome.message.empty());
    const std::string manifest = slurp(dir / "manifest.ini");
    CHECK(manifest.find("status = error") != std::string::npos);
    CHECK(manifest.find("message = ") != std::string::npos);
    fs::remove_all(dir);
}
