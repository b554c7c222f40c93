#include "propalg/report.hpp"

#include <sstream>

#include "json.hpp"

namespace propalg {

std::string render_text(const Report& r) {
    std::ostringstream out;
    out << "propalg " << r.command_line << "\n";
    if (!r.file.empty()) out << "file: " << r.file << "\n";
    out << "parameters: window=" << r.window << " depth=" << r.depth << " threads="
        << (r.threads ? std::to_string(r.threads) : std::string("auto"));
    if (r.seed) out << " seed=" << *r.seed;
    out << "\n";
    for (const CheckResult& c : r.checks) {
        out << c.name << ": " << (c.verdict.holds ? "holds" : "FAILS") << " ["
            << qualifier_name(c.verdict.qualifier) << "]";
        if (c.verdict.swept) out << " swept=" << c.verdict.swept;
        out << "\n";
        if (c.verdict.witness) out << "  witness: " << c.verdict.witness->to_string() << "\n";
        if (!c.verdict.note.empty()) out << "  note: " << c.verdict.note << "\n";
    }
    for (const std::string& line : r.payload) out << line << "\n";
    if (!r.error.empty()) out << "error: " << r.error << "\n";
    out << "stats: tuples-swept=" << r.tuples_swept
        << " terms-enumerated=" << r.terms_enumerated << " wall-ms=" << r.wall_ms << "\n";
    out << "exit: " << r.exit_code << "\n";
    return out.str();
}

std::string render_json(const Report& r) {
    nlohmann::ordered_json j;
    j["tool"] = "propalg";
    j["command"] = r.subcommand;
    j["command-line"] = r.command_line;
    j["file"] = r.file;
    j["parameters"] = {{"window", r.window},
                       {"depth", r.depth},
                       {"threads", r.threads ? nlohmann::ordered_json(r.threads)
                                             : nlohmann::ordered_json("auto")}};
    if (r.seed)
        j["parameters"]["seed"] = *r.seed;
    else
        j["parameters"]["seed"] = nullptr;
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["holds"] = c.verdict.holds;
        jc["qualifier"] = qualifier_name(c.verdict.qualifier);
        if (c.verdict.witness) {
            nlohmann::ordered_json w = nlohmann::ordered_json::object();
            for (const auto& [k, v] : c.verdict.witness->slots) w[k] = v;
            jc["witness"] = w;
        } else {
            jc["witness"] = nullptr;
        }
        jc["swept"] = c.verdict.swept;
        jc["note"] = c.verdict.note;
        j["checks"].push_back(jc);
    }
    j["payload"] = r.payload;
    j["error"] = r.error;
    j["stats"] = {{"tuples-swept", r.tuples_swept},
                  {"terms-enumerated", r.terms_enumerated},
                  {"wall-ms", r.wall_ms}};
    j["exit-code"] = r.exit_code;
    return j.dump(2) + "\n";
}

} // namespace propalg
