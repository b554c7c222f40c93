#ifndef PROPALG_CLI_HPP
#define PROPALG_CLI_HPP

#include <string>
#include <vector>

#include "propalg/report.hpp"

namespace propalg {

struct RunResult {
    Report report;
    bool machine = false; // --format machine
    std::string help;     // set when the run only printed usage
};

/// Parses and executes one command line (without the program name).
/// Exit code semantics: 0 = property holds / search found / replay
/// reproduced; 1 = property fails (witness attached); 2 = usage or parse
/// error; 3 = precondition unmet; 4 = internal inconsistency.
RunResult run_command(const std::vector<std::string>& args);

} // namespace propalg

#endif
