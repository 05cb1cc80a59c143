#pragma once

#include <string>
#include <vector>

#include "photocorr/config.hpp"

namespace photocorr {

enum class RunMode { Scan, Contours, Scaling, RabiRatio, SteadyState };

struct RunOutcome {
    int exit_code{0};
    std::vector<std::string> files;  // relative to the output directory
    std::string message;             // empty on success
};

// Executes one pipeline pass and writes every requested artifact plus a
// manifest into config.output_dir. Exit code 0 means every artifact was
// produced and all solver residuals stayed within tolerance; any failure
// is recorded in the manifest [report] section.
RunOutcome run(const RunConfig& config, RunMode mode);

std::string run_mode_name(RunMode mode);

}  // namespace photocorr
