#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmsplit/report.hpp"

namespace mmsplit::cli {

struct CliConfig {
    std::string command;  // validate | decompose | recommend | report
    std::string model_path;
    OutputFormat format = OutputFormat::text;
    std::string output_path;  // empty means stdout
    bool include_evidence = true;
    bool cluster_by_context = true;
    bool strict = false;
};

// Exit codes: 0 success, 1 validation violations (or diagnostics under
// --strict), 2 parse errors, bad references or bad flags. The artifact
// goes to `out` (or the --output file); messages for humans go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mmsplit::cli
