#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "propalg/cli.hpp"
#include "propalg/specfile.hpp"

#include "json.hpp"

using namespace propalg;
using namespace testutil;

namespace {

const char* kChainFile = R"(
# four-to-two successor chain
algebra A {
  universe: 1 2 3 4;
  op S/1;
  table S: (1) -> 2; table S: (2) -> 2;
  table S: (3) -> 4; table S: (4) -> 4;
}
algebra B { universe: 5 6; op S/1; table S: (5) -> 6; table S: (6) -> 6 }
map F : A -> B { 1 -> 5; 2 -> 6; 3 -> 5; 4 -> 6 }
relation rAB on A B { extensional: (1,1,5,5) (1,2,5,6); }
partition k on A { {1,3} {2,4} }
)";

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "tmp_" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

} // namespace

TEST_CASE("parsing the chain file") {
    SpecFile spec = parse_spec(kChainFile);
    REQUIRE(spec.algebras.size() == 2);
    REQUIRE(spec.maps.size() == 1);
    REQUIRE(spec.relations.size() == 1);
    REQUIRE(spec.partitions.size() == 1);

    Resolved res = resolve(spec);
    const AlgebraPtr& a = res.algebra("A");
    CHECK(a->size() == 4);
    CHECK(a->label(a->apply(0, std::vector<Elem>{el(a, "1")})) == "2");
    const Mapping& f = res.map("F");
    CHECK(f.target()->label(f.apply(el(a, "3"))) == "5");
    CHECK(res.relation("rAB")->holds(el(a, "1"), el(a, "2"), 0, 1));
    CHECK(res.partition("k").blocks().size() == 2);
    CHECK(is_homomorphism(f).holds);
}

TEST_CASE("empty input parses to an empty file") {
    SpecFile spec = parse_spec("");
    CHECK(spec.algebras.empty());
    CHECK(spec.order.empty());
    Resolved res = resolve(spec);
    CHECK(res.algebras.empty());
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("table entry outside the universe") {
        const char* text = "algebra A {\n  universe: 1 2;\n  op S/1;\n"
                           "  table S: (1) -> 9;\n  table S: (2) -> 1;\n}\n";
        try {
            resolve(parse_spec(text));
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
            CHECK(std::string(e.what()).find("9") != std::string::npos);
        }
    }
    SUBCASE("arity violation") {
        const char* text =
            "algebra A { universe: 1 2; op S/1; table S: (1,2) -> 1; table S: (2) -> 1 }";
        CHECK_THROWS_AS(resolve(parse_spec(text)), ParseError);
    }
    SUBCASE("non-total table") {
        const char* text = "algebra A { universe: 1 2; op S/1; table S: (1) -> 2 }";
        CHECK_THROWS_AS(resolve(parse_spec(text)), ParseError);
    }
    SUBCASE("dangling reference") {
        const char* text = "relation r on A A { builtin boolean-xor }";
        CHECK_THROWS_AS(resolve(parse_spec(text)), ParseError);
    }
    SUBCASE("duplicate names") {
        const char* text = "algebra A { universe: 1 }\nalgebra A { universe: 2 }";
        CHECK_THROWS_AS(resolve(parse_spec(text)), ParseError);
    }
    SUBCASE("garbage") {
        CHECK_THROWS_AS(parse_spec("banana"), ParseError);
    }
}

TEST_CASE("serialization round-trips") {
    const char* files[] = {
        kChainFile,
        "algebra Z builtin int-plus window 32\n"
        "algebra B2 { universe: 0 1; op +/2; op 0/0; op 1/0;\n"
        "  table +: (0,0) -> 0; table +: (0,1) -> 1; table +: (1,0) -> 1;"
        "  table +: (1,1) -> 0; table 0: () -> 0; table 1: () -> 1 }\n"
        "relation wz on Z Z { builtin witness depth 2 }\n"
        "relation xb on B2 B2 { builtin boolean-xor; symmetric-closure: off }\n"
        "map m2 : Z -> B2 builtin mod2\n"
        "map s5 : Z -> Z builtin translate -5\n",
        "algebra N builtin nat-succ\nrelation d on N N { builtin difference }\n",
        "",
    };
    for (const char* text : files) {
        SpecFile once = parse_spec(text);
        SpecFile twice = parse_spec(serialize_spec(once));
        CHECK(once == twice);
        CHECK(serialize_spec(once) == serialize_spec(twice));
    }
}

TEST_CASE("builtin map and relation resolution defaults") {
    const char* text = "algebra Z builtin int-plus\n"
                       "relation w on Z Z { builtin witness }\n"
                       "map t : Z -> Z builtin translate 3\n";
    ResolveOptions opts;
    opts.default_window = 10;
    opts.default_depth = 2;
    Resolved res = resolve(parse_spec(text), opts);
    CHECK(res.algebra("Z")->window() == 10);
    CHECK(res.relation("w")->depth() == 2);
    CHECK(res.map("t").apply(4) == 7);
}

TEST_CASE("run_command exit codes and reports") {
    const std::string negation = write_temp(
        "negation.palg",
        "algebra B { universe: 0 1; op not/1; table not: (0) -> 1; table not: (1) -> 0 }\n"
        "relation xor on B B { builtin boolean-xor }\n"
        "map neg : B -> B builtin negation\n");
    const std::string parity = write_temp(
        "parity.palg",
        "algebra Z builtin int-plus\n"
        "algebra B2 { universe: 0 1; op +/2; op 0/0; op 1/0;\n"
        "  table +: (0,0) -> 0; table +: (0,1) -> 1; table +: (1,0) -> 1;"
        "  table +: (1,1) -> 0; table 0: () -> 0; table 1: () -> 1 }\n"
        "relation wz on Z Z { builtin witness depth 3 }\n"
        "relation xb on B2 B2 { builtin boolean-xor }\n"
        "map m2 : Z -> B2 builtin mod2\n");

    SUBCASE("a passing check exits 0 and attaches no witness") {
        RunResult r = run_command(
            {"check-piso", negation, "--map", "neg", "--relA", "xor", "--relB", "xor"});
        CHECK(r.report.exit_code == 0);
        for (const auto& c : r.report.checks) CHECK_FALSE(c.verdict.witness.has_value());
    }
    SUBCASE("a failing check exits 1 with the canonical witness") {
        RunResult r = run_command(
            {"check-phom", parity, "--map", "m2", "--relA", "wz", "--relB", "xb"});
        CHECK(r.report.exit_code == 1);
        REQUIRE(r.report.checks.size() == 1);
        const auto& v = r.report.checks[0].verdict;
        REQUIRE(v.witness.has_value());
        CHECK(slot(v, "a") == "0");
        CHECK(slot(v, "b") == "0");
        CHECK(slot(v, "c") == "1");
        CHECK(slot(v, "d") == "2");
        CHECK(slot(v, "direction") == "=>");
    }
    SUBCASE("usage errors exit 2") {
        CHECK(run_command({"frobnicate"}).report.exit_code == 2);
        CHECK(run_command({"check-phom"}).report.exit_code == 2);
        CHECK(run_command({"check-phom", "no-such-file.palg", "--map", "m", "--relA", "r",
                           "--relB", "r"})
                  .report.exit_code == 2);
    }
    SUBCASE("precondition failures exit 3") {
        // boolean-xor needs 2-element universes, so the p-algebra cannot
        // be built on a heterogeneous relation; declare one on (Z, B2).
        const std::string bad = write_temp(
            "bad.palg", "algebra Z builtin int-plus\n"
                        "algebra B2 { universe: 0 1; op not/1; table not: (0) -> 1;"
                        " table not: (1) -> 0 }\n"
                        "relation w on Z Z { builtin witness depth 2 }\n"
                        "map id : Z -> Z builtin identity\n"
                        "relation cross on Z B2 { extensional:; }\n");
        RunResult r = run_command(
            {"check-phom", bad, "--map", "id", "--relA", "w", "--relB", "cross"});
        CHECK(r.report.exit_code == 2); // extensional on non-tabular source: parse error
        RunResult r2 = run_command({"check-pidem", parity, "--map", "m2", "--rel", "xb"});
        CHECK(r2.report.exit_code == 3); // m2 is not an endomap of the xor algebra
    }
    SUBCASE("machine and text reports carry identical verdicts") {
        RunResult r = run_command(
            {"check-phom", parity, "--map", "m2", "--relA", "wz", "--relB", "xb"});
        const std::string text = render_text(r.report);
        const auto j = nlohmann::json::parse(render_json(r.report));
        CHECK(j["exit-code"] == 1);
        CHECK(j["checks"][0]["holds"] == false);
        CHECK(j["checks"][0]["witness"]["a"] == "0");
        CHECK(j["checks"][0]["witness"]["d"] == "2");
        CHECK(j["checks"][0]["witness"]["direction"] == "=>");
        CHECK(text.find("witness: a=0 b=0 c=1 d=2 direction==>") != std::string::npos);
        CHECK(text.find("FAILS") != std::string::npos);
    }
    SUBCASE("reports are identical across thread counts") {
        auto strip_wall = [](std::string s) {
            auto p = s.find("\"wall-ms\"");
            if (p != std::string::npos) {
                auto q = s.find('\n', p);
                s.erase(p, q - p);
            }
            return s;
        };
        RunResult one = run_command({"check-phom", parity, "--map", "m2", "--relA", "wz",
                                     "--relB", "xb", "--threads", "1"});
        RunResult four = run_command({"check-phom", parity, "--map", "m2", "--relA", "wz",
                                      "--relB", "xb", "--threads", "4"});
        std::string ja = strip_wall(render_json(one.report));
        std::string jb = strip_wall(render_json(four.report));
        // The thread parameter itself is echoed; normalize it before
        // comparing the rest of the report.
        auto norm = [](std::string s) {
            auto p = s.find("\"threads\"");
            auto q = s.find('\n', p);
            s.erase(p, q - p);
            p = s.find("\"command-line\"");
            q = s.find('\n', p);
            s.erase(p, q - p);
            return s;
        };
        CHECK(norm(ja) == norm(jb));
    }
    SUBCASE("window and depth flags reach the resolver") {
        RunResult r = run_command({"check-phom", parity, "--map", "m2", "--relA", "wz",
                                   "--relB", "xb", "--window", "8", "--depth", "1"});
        CHECK(r.report.exit_code == 1);
        CHECK(slot(r.report.checks[0].verdict, "d") == "2");
        CHECK(r.report.window == 8);
    }

    std::remove(negation.c_str());
    std::remove(parity.c_str());
}

TEST_CASE("every subcommand answers through run_command") {
    const std::string file = write_temp(
        "full.palg",
        "algebra N builtin nat-succ window 16\n"
        "relation d on N N { builtin difference }\n"
        "map s1 : N -> N builtin translate 1\n"
        "map s2 : N -> N builtin translate 2\n"
        "algebra A { universe: 1 2 3 4; op S/1; table S: (1) -> 2; table S: (2) -> 2;"
        " table S: (3) -> 4; table S: (4) -> 4 }\n"
        "relation w on A A { builtin witness depth 2 }\n"
        "partition k on A { {1,3} {2,4} }\n"
        "partition fine on A { {1} {2} {3} {4} }\n"
        "map idA : A -> A builtin identity\n");

    auto exit_of = [&](std::vector<std::string> args) {
        return run_command(args).report.exit_code;
    };

    CHECK(exit_of({"check-axioms", file, "--rel", "d"}) == 0);
    CHECK(exit_of({"check-phom", file, "--map", "s1", "--relA", "d", "--relB", "d"}) == 0);
    CHECK(exit_of({"check-aip", file, "--map", "s1", "--relA", "d", "--relB", "d"}) == 0);
    // s1 is not surjective on the naturals, so no p-isomorphism.
    CHECK(exit_of({"check-piso", file, "--map", "s1", "--relA", "d", "--relB", "d"}) == 1);
    CHECK(exit_of({"check-kernel-theorem", file, "--map", "idA", "--relA", "w",
                   "--relB", "w"}) == 0);
    CHECK(exit_of({"check-pfunctor", file, "--map", "s1", "--rel", "d"}) == 0);
    CHECK(exit_of({"check-pidem", file, "--map", "s2", "--rel", "d"}) == 0);
    // The two-block partition is a congruence but lets block swaps
    // escape the witness relation; only the singletons survive.
    CHECK(exit_of({"check-pcong", file, "--partition", "fine", "--rel", "w"}) == 0);
    CHECK(exit_of({"check-pcong", file, "--partition", "k", "--rel", "w"}) == 1);
    CHECK(exit_of({"check-monoid", file, "--kind", "phom", "--maps", "s1,s2", "--rel",
                   "d"}) == 0);
    CHECK(exit_of({"check-monoid", file, "--kind", "pfunctor", "--maps", "s1,s2", "--rel",
                   "d"}) == 0);
    {
        RunResult r = run_command({"compare-functions", file, "--mapF", "s1", "--mapG",
                                   "s2", "--rel", "d"});
        CHECK(r.report.exit_code == 0);
        REQUIRE(r.report.checks.size() == 3);
        CHECK(r.report.checks[0].name == "F->G");
        CHECK(r.report.checks[2].name == "F::G");
    }
    {
        RunResult r = run_command({"quotient", file, "--algebra", "A", "--partition", "k"});
        CHECK(r.report.exit_code == 0);
        bool found = false;
        for (const auto& line : r.report.payload)
            found |= line.find("table S: ([1]) -> [2]") != std::string::npos;
        CHECK(found);
    }
    std::remove(file.c_str());
}

TEST_CASE("exit code 0 never carries a witness") {
    const std::string negation = write_temp(
        "neg2.palg",
        "algebra B { universe: 0 1; op not/1; table not: (0) -> 1; table not: (1) -> 0 }\n"
        "relation xor on B B { builtin boolean-xor }\n"
        "map neg : B -> B builtin negation\n");
    std::vector<std::vector<std::string>> zero_exit_runs = {
        {"check-piso", negation, "--map", "neg", "--relA", "xor", "--relB", "xor"},
        {"check-axioms", negation, "--rel", "xor"},
        {"search", "--goal", "hom-not-phom", "--source-size", "2", "--target-size", "2",
         "--out", "tmp_exhibit.palg"},
        {"replay", "tmp_exhibit.palg"},
    };
    for (const auto& args : zero_exit_runs) {
        RunResult r = run_command(args);
        REQUIRE(r.report.exit_code == 0);
        for (const auto& c : r.report.checks) CHECK_FALSE(c.verdict.witness.has_value());
    }
    std::remove(negation.c_str());
    std::remove("tmp_exhibit.palg");
}
