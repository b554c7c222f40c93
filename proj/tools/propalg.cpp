#include <iostream>
#include <string>
#include <vector>

#include "propalg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    propalg::RunResult r = propalg::run_command(args);
    if (!r.help.empty()) {
        std::cout << r.help;
        return r.report.exit_code;
    }
    std::cout << (r.machine ? propalg::render_json(r.report)
                            : propalg::render_text(r.report));
    return r.report.exit_code;
}
