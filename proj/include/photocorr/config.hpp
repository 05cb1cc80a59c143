#pragma once

#include <string>
#include <vector>

#include "photocorr/contours.hpp"
#include "photocorr/scanner.hpp"
#include "photocorr/types.hpp"

namespace photocorr {

struct ContourRequest {
    FieldKind field{FieldKind::C2};
    ContourKind kind{ContourKind::LevelSet};
    double level{0.0};

    friend bool operator==(const ContourRequest&, const ContourRequest&) = default;
};

// A fully resolved run description: scenario defaults with any overrides
// applied, ready for the pipeline. emit_config/parse_config round-trip it.
struct RunConfig {
    std::string scenario;  // empty for fully inline configurations
    SystemSpec spec;
    int grid_points{201};
    std::vector<FieldKind> fields{FieldKind::G2,           FieldKind::C2,
                                  FieldKind::C3,           FieldKind::C4,
                                  FieldKind::G2Normalized, FieldKind::IntensityProduct};
    std::vector<ContourRequest> contours;
    std::string output_dir{"out"};
    int workers{1};
    bool emit_heatmaps{false};
    bool dump_rho{false};
    bool dump_liouvillian{false};

    double scaling_s1{1.0};
    double scaling_s2{1.5};
    bool disable_interaction{false};
    double rabi_omega_c_1{0.01};
    double rabi_omega_c_2{0.05};
};

bool operator==(const RunConfig& a, const RunConfig& b);

// Named parameter sets for the published maps and protocols.
std::vector<std::string> scenario_names();
RunConfig scenario_config(const std::string& name);

// Flat key-value text with [section] headers; errors carry 1-based line
// numbers. The [report] section of an emitted manifest is ignored, so a
// manifest file parses back to the configuration it echoes.
RunConfig parse_config(const std::string& text);
std::string emit_config(const RunConfig& config);

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace photocorr
