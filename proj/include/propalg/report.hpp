#ifndef PROPALG_REPORT_HPP
#define PROPALG_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "propalg/checked.hpp"
#include "propalg/verdict.hpp"

namespace propalg {

struct CheckResult {
    std::string name;
    Verdict verdict;
};

/// One run's results.  The text and machine renderings are produced from
/// the same instance, so they carry identical verdicts and witnesses.
struct Report {
    std::string subcommand;
    std::string command_line;
    std::string file;

    Elem window = 64;
    unsigned depth = 3;
    unsigned threads = 0; // 0 = automatic
    std::optional<std::uint64_t> seed;

    std::vector<CheckResult> checks;
    std::vector<std::string> payload; // extra output (quotients, search notes)
    std::string error;                // set when the run aborted

    std::uint64_t tuples_swept = 0;
    std::uint64_t terms_enumerated = 0;
    double wall_ms = 0;
    int exit_code = 0;
};

std::string render_text(const Report& r);
std::string render_json(const Report& r);

} // namespace propalg

#endif
