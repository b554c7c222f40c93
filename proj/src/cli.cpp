#include "propalg/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "propalg/search.hpp"
#include "propalg/sweep.hpp"

namespace propalg {

namespace {

struct GlobalOpts {
    Elem window = 64;
    unsigned depth = 3;
    unsigned threads = 0;
    std::string format = "text";
    std::optional<std::uint64_t> seed;
};

void add_globals(CLI::App& app, GlobalOpts& g) {
    app.add_option("--window", g.window,
                   "quantifier window for integer-formula algebras (default 64)");
    app.add_option("--depth", g.depth, "witness term depth (default 3)");
    app.add_option("--threads", g.threads, "sweep worker count (default: hardware)");
    app.add_option("--format", g.format, "report format: text | machine")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--seed", g.seed, "seed for randomized search");
}

Resolved load(const std::string& path, const GlobalOpts& g, Report& report) {
    report.file = path;
    ResolveOptions opts;
    opts.default_window = g.window;
    opts.default_depth = g.depth;
    return resolve(parse_spec_file(path), opts);
}

PAlgebra palgebra_of(const Resolved& res, const std::string& rel_name) {
    const RelationPtr& rel = res.relation(rel_name);
    return PAlgebra(rel->source(), rel);
}

std::uint64_t count_terms(const Resolved& res) {
    std::uint64_t total = 0;
    for (const auto& [name, rel] : res.relations) total += rel->terms_enumerated();
    return total;
}

void push_check(Report& report, const std::string& name, Verdict v) {
    report.tuples_swept += v.swept;
    report.checks.push_back({name, std::move(v)});
}

int exit_from_checks(const Report& report) {
    for (const auto& c : report.checks)
        if (!c.verdict.holds) return 1;
    return 0;
}

} // namespace

RunResult run_command(const std::vector<std::string>& args) {
    RunResult out;
    Report& report = out.report;
    {
        std::string echo;
        for (const auto& a : args) echo += (echo.empty() ? "" : " ") + a;
        report.command_line = echo;
    }

    GlobalOpts g;
    CLI::App app{"checks for algebras carrying a 4-ary analogical proportion relation",
                 "propalg"};
    app.fallthrough();
    add_globals(app, g);
    app.require_subcommand(1);

    std::string file, rel, relA, relB, map, mapF, mapG, directed, partition_name, algebra_name;
    std::vector<std::string> axioms{"all"};
    std::vector<std::string> map_list;
    std::string monoid_kind = "phom";

    auto* cmd_axioms = app.add_subcommand("check-axioms", "axioms of one relation");
    cmd_axioms->add_option("file", file)->required();
    cmd_axioms->add_option("--rel", rel)->required();
    cmd_axioms->add_option("--axiom", axioms,
                           "all | symmetry | reflexivity | determinism | p-transitivity");

    auto* cmd_phom = app.add_subcommand("check-phom", "p-homomorphism");
    auto* cmd_aip = app.add_subcommand("check-aip", "analogical inference principle");
    auto* cmd_piso = app.add_subcommand("check-piso", "p-isomorphism");
    auto* cmd_kernel =
        app.add_subcommand("check-kernel-theorem", "kernel of a p-homomorphism");
    for (CLI::App* c : {cmd_phom, cmd_aip, cmd_piso, cmd_kernel}) {
        c->add_option("file", file)->required();
        c->add_option("--map", map)->required();
        c->add_option("--relA", relA)->required();
        c->add_option("--relB", relB)->required();
    }

    auto* cmd_pfun = app.add_subcommand("check-pfunctor", "p-functor");
    auto* cmd_pidem = app.add_subcommand("check-pidem", "proportional idempotency");
    for (CLI::App* c : {cmd_pfun, cmd_pidem}) {
        c->add_option("file", file)->required();
        c->add_option("--map", map)->required();
        c->add_option("--rel", rel)->required();
    }

    auto* cmd_pcong = app.add_subcommand("check-pcong", "p-congruence");
    cmd_pcong->add_option("file", file)->required();
    cmd_pcong->add_option("--partition", partition_name)->required();
    cmd_pcong->add_option("--rel", rel)->required();

    auto* cmd_monoid = app.add_subcommand("check-monoid", "closure under composition");
    cmd_monoid->add_option("file", file)->required();
    cmd_monoid->add_option("--kind", monoid_kind)
        ->check(CLI::IsMember({"phom", "pfunctor"}));
    cmd_monoid->add_option("--maps", map_list, "map names")->required()->delimiter(',');
    cmd_monoid->add_option("--rel", rel)->required();

    auto* cmd_cmp = app.add_subcommand("compare-functions", "functional proportionality");
    cmd_cmp->add_option("file", file)->required();
    cmd_cmp->add_option("--mapF", mapF)->required();
    cmd_cmp->add_option("--mapG", mapG)->required();
    cmd_cmp->add_option("--rel", rel)->required();
    cmd_cmp->add_option("--directed", directed, "directed relation (optional)");

    auto* cmd_quot = app.add_subcommand("quotient", "factor algebra");
    cmd_quot->add_option("file", file)->required();
    cmd_quot->add_option("--algebra", algebra_name)->required();
    cmd_quot->add_option("--partition", partition_name)->required();

    std::string goal_str, signature_str = "empty", out_path = "exhibit.palg";
    std::size_t source_size = 4, target_size = 2;
    std::vector<std::string> require;
    std::uint64_t max_instances = UINT64_MAX;
    double max_seconds = 1e18;
    std::uint64_t random_tries = 200000;

    auto* cmd_search = app.add_subcommand("search", "counterexample search");
    cmd_search->add_option("--goal", goal_str)->required();
    cmd_search->add_option("--source-size", source_size);
    cmd_search->add_option("--target-size", target_size);
    cmd_search->add_option("--signature", signature_str)
        ->check(CLI::IsMember({"empty", "succ"}));
    cmd_search->add_option("--require", require,
                           "reflexivity | determinism | p-transitivity")
        ->delimiter(',');
    cmd_search->add_option("--max-instances", max_instances);
    cmd_search->add_option("--max-seconds", max_seconds);
    cmd_search->add_option("--random-tries", random_tries);
    cmd_search->add_option("--out", out_path, "exhibit output path");

    auto* cmd_replay = app.add_subcommand("replay", "re-run a stored exhibit");
    cmd_replay->add_option("file", file)->required();

    std::vector<const char*> argv;
    argv.push_back("propalg");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out.help = app.help();
        report.exit_code = 0;
        return out;
    } catch (const CLI::ParseError& e) {
        report.error = std::string("usage: ") + e.what();
        report.exit_code = 2;
        out.machine = g.format == "machine";
        return out;
    }

    out.machine = g.format == "machine";
    report.window = g.window;
    report.depth = g.depth;
    report.threads = g.threads;
    report.seed = g.seed;
    set_sweep_threads(g.threads);

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (app.got_subcommand(cmd_axioms)) {
            report.subcommand = "check-axioms";
            Resolved res = load(file, g, report);
            const RelationPtr& r = res.relation(rel);
            bool all = false;
            for (const auto& a : axioms) all |= a == "all";
            auto want = [&](const char* name) {
                if (all) return true;
                for (const auto& a : axioms)
                    if (a == name) return true;
                return false;
            };
            if (want("symmetry")) push_check(report, "symmetry", check_inner_symmetry(*r));
            if (want("reflexivity")) push_check(report, "reflexivity", check_reflexivity(*r));
            if (want("determinism")) push_check(report, "determinism", check_determinism(*r));
            if (want("p-transitivity"))
                push_check(report, "p-transitivity", check_p_transitivity(*r));
            report.terms_enumerated = count_terms(res);
            report.exit_code = exit_from_checks(report);
        } else if (app.got_subcommand(cmd_phom) || app.got_subcommand(cmd_aip) ||
                   app.got_subcommand(cmd_piso) || app.got_subcommand(cmd_kernel)) {
            Resolved res = load(file, g, report);
            PAlgebra pa = palgebra_of(res, relA);
            PAlgebra pb = palgebra_of(res, relB);
            const Mapping& f = res.map(map);
            if (app.got_subcommand(cmd_phom)) {
                report.subcommand = "check-phom";
                push_check(report, "p-homomorphism", is_p_homomorphism(f, pa, pb));
            } else if (app.got_subcommand(cmd_aip)) {
                report.subcommand = "check-aip";
                push_check(report, "analogical-inference-principle",
                           satisfies_aip(f, pa, pb));
            } else if (app.got_subcommand(cmd_piso)) {
                report.subcommand = "check-piso";
                push_check(report, "p-isomorphism", is_p_isomorphism(f, pa, pb));
            } else {
                report.subcommand = "check-kernel-theorem";
                push_check(report, "kernel-is-p-congruence",
                           kernel_is_p_congruence(f, pa, pb));
            }
            report.terms_enumerated = count_terms(res);
            report.exit_code = exit_from_checks(report);
        } else if (app.got_subcommand(cmd_pfun)) {
            report.subcommand = "check-pfunctor";
            Resolved res = load(file, g, report);
            push_check(report, "p-functor", is_p_functor(res.map(map), *res.relation(rel)));
            report.terms_enumerated = count_terms(res);
            report.exit_code = exit_from_checks(report);
        } else if (app.got_subcommand(cmd_pidem)) {
            report.subcommand = "check-pidem";
            Resolved res = load(file, g, report);
            push_check(report, "p-idempotent",
                       is_p_idempotent(res.map(map), palgebra_of(res, rel)));
            report.terms_enumerated = count_terms(res);
            report.exit_code = exit_from_checks(report);
        } else if (app.got_subcommand(cmd_pcong)) {
            report.subcommand = "check-pcong";
            Resolved res = load(file, g, report);
            push_check(report, "p-congruence",
                       is_p_congruence(res.partition(partition_name),
                                       palgebra_of(res, rel)));
            report.terms_enumerated = count_terms(res);
            report.exit_code = exit_from_checks(report);
        } else if (app.got_subcommand(cmd_monoid)) {
            report.subcommand = "check-monoid";
            Resolved res = load(file, g, report);
            std::vector<Mapping> maps;
            for (const auto& name : map_list) maps.push_back(res.map(name));
            PAlgebra pa = palgebra_of(res, rel);
            push_check(report,
                       monoid_kind == "phom" ? "p-homomorphism-monoid-closure"
                                             : "p-functor-monoid-closure",
                       monoid_kind == "phom" ? check_phom_monoid_closure(maps, pa)
                                             : check_pfunctor_monoid_closure(maps, pa));
            report.terms_enumerated = count_terms(res);
            report.exit_code = exit_from_checks(report);
        } else if (app.got_subcommand(cmd_cmp)) {
            report.subcommand = "compare-functions";
            Resolved res = load(file, g, report);
            const ProportionRelation* dir = nullptr;
            RelationPtr dir_ptr;
            if (!directed.empty()) {
                dir_ptr = res.relation(directed);
                dir = dir_ptr.get();
            }
            auto rep = functional_compare(res.map(mapF), res.map(mapG), *res.relation(rel),
                                          dir);
            push_check(report, "F->G", rep.f_to_g);
            push_check(report, "G->F", rep.g_to_f);
            push_check(report, "F::G", rep.both);
            report.terms_enumerated = count_terms(res);
            report.exit_code = rep.both.holds ? 0 : 1;
        } else if (app.got_subcommand(cmd_quot)) {
            report.subcommand = "quotient";
            Resolved res = load(file, g, report);
            AlgebraPtr q = quotient_algebra(res.algebra(algebra_name),
                                            res.partition(partition_name));
            // Render the factor algebra as spec-file text.
            SpecFile spec;
            AlgebraDecl d;
            d.name = "quotient";
            for (std::size_t i = 0; i < q->size(); ++i)
                d.universe.push_back(q->label((Elem)i));
            d.ops = q->signature().ops();
            for (std::size_t oi = 0; oi < q->signature().size(); ++oi) {
                const unsigned arity = q->signature().at(oi).arity;
                std::vector<std::size_t> t(arity, 0);
                while (true) {
                    AlgebraDecl::TableEntry entry;
                    entry.op = q->signature().at(oi).name;
                    std::vector<Elem> in(arity);
                    for (unsigned i = 0; i < arity; ++i) {
                        in[i] = (Elem)t[i];
                        entry.args.push_back(q->label(in[i]));
                    }
                    entry.result = q->label(q->apply(oi, in));
                    d.tables.push_back(std::move(entry));
                    std::size_t pos = arity;
                    while (pos > 0) {
                        if (++t[pos - 1] < q->size()) break;
                        t[pos - 1] = 0;
                        --pos;
                    }
                    if (pos == 0) break;
                }
            }
            spec.order.push_back({'a', 0});
            spec.algebras.push_back(std::move(d));
            std::istringstream lines(serialize_spec(spec));
            for (std::string line; std::getline(lines, line);) report.payload.push_back(line);
            report.exit_code = 0;
        } else if (app.got_subcommand(cmd_search)) {
            report.subcommand = "search";
            auto goal = parse_goal(goal_str);
            if (!goal) throw PreconditionError("unknown goal '" + goal_str + "'");
            SearchSpace space;
            space.source_size = source_size;
            space.target_size = target_size;
            space.with_unary_op = signature_str == "succ";
            for (const auto& c : require) {
                if (c == "reflexivity")
                    space.require_reflexive = true;
                else if (c == "determinism")
                    space.require_deterministic = true;
                else if (c == "p-transitivity")
                    space.require_ptransitive = true;
                else
                    throw PreconditionError("unknown constraint '" + c + "'");
            }
            space.max_instances = max_instances;
            space.max_seconds = max_seconds;
            space.seed = g.seed;
            space.random_tries = random_tries;
            SearchOutcome outcome = find_separation(space, *goal);
            report.payload.push_back("space: " + outcome.space_description);
            report.payload.push_back("instances-checked: " +
                                     std::to_string(outcome.instances));
            if (outcome.exhibit) {
                // Recorded verdicts travel in the exhibit file and as
                // payload text; a successful search must not attach
                // witness-carrying checks to an exit-0 report.
                for (const auto& c : outcome.exhibit->checks) {
                    std::string line = "recorded: " + c.kind;
                    for (const auto& [k, v] : c.args) line += " " + k + "=" + v;
                    line += c.expected.holds ? " holds" : " fails";
                    if (c.expected.witness)
                        line += " witness " + c.expected.witness->to_string();
                    report.payload.push_back(std::move(line));
                }
                if (!out_path.empty()) {
                    std::ofstream f(out_path);
                    if (!f) throw PreconditionError("cannot write '" + out_path + "'");
                    f << serialize_exhibit(*outcome.exhibit);
                    report.payload.push_back("exhibit-written: " + out_path);
                }
                report.exit_code = 0;
            } else if (outcome.budget_exceeded) {
                report.payload.push_back("budget-exceeded: partial sweep, no exhibit found");
                report.exit_code = 1;
            } else {
                report.payload.push_back(
                    "exhausted: no exhibit exists in the swept space");
                report.exit_code = 1;
            }
        } else if (app.got_subcommand(cmd_replay)) {
            report.subcommand = "replay";
            report.file = file;
            std::ifstream in(file);
            if (!in) throw ParseError(0, "cannot open '" + file + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            Exhibit e = parse_exhibit(buf.str());
            ReplayResult rr = replay(e);
            for (auto& [name, verdict] : rr.actual) {
                std::string line = "replayed: " + name;
                line += verdict.holds ? " holds" : " fails";
                if (verdict.witness) line += " witness " + verdict.witness->to_string();
                report.tuples_swept += verdict.swept;
                report.payload.push_back(std::move(line));
            }
            if (rr.reproduced) {
                report.payload.push_back("replay: verdicts reproduced");
                report.exit_code = 0;
            } else {
                for (const auto& m : rr.mismatches)
                    report.payload.push_back("mismatch: " + m);
                report.exit_code = 1;
            }
        }
    } catch (const ParseError& e) {
        report.error = e.what();
        report.exit_code = 2;
    } catch (const InternalInconsistencyError& e) {
        report.error = std::string("internal inconsistency: ") + e.what();
        report.exit_code = 4;
    } catch (const Error& e) {
        report.error = e.what();
        report.exit_code = 3;
    }

    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return out;
}

} // namespace propalg
