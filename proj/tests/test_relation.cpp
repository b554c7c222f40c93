#include "doctest.h"

#include <random>
#include <set>

#include "helpers.hpp"
#include "propalg/sweep.hpp"

using namespace propalg;
using namespace testutil;

TEST_CASE("difference relation") {
    auto nat = FiniteAlgebra::nat_succ("N", 16);
    auto r = ProportionRelation::difference(nat);
    CHECK(r->holds(2, 5, 7, 10));
    CHECK_FALSE(r->holds(1, 2, 3, 5));
    CHECK_THROWS_AS(r->holds(-1, 2, 3, 4), PreconditionError);
}

TEST_CASE("boolean-xor relation") {
    auto b = bool_xor_alg();
    auto r = ProportionRelation::boolean_xor(b, b);
    CHECK(r->holds(0, 0, 1, 1));
    CHECK(r->holds(0, 1, 1, 0));
    CHECK_FALSE(r->holds(0, 0, 0, 1));
    CHECK_THROWS_AS(ProportionRelation::boolean_xor(chain_source(), chain_source()),
                    PreconditionError);
}

TEST_CASE("witness relation over the integers") {
    auto z = FiniteAlgebra::int_plus("Z", 16);
    auto r = ProportionRelation::witness(z, z, 2);
    SUBCASE("doubling certifies 0:0::1:2") {
        CHECK(r->holds(0, 0, 1, 2));
        auto t = r->witness_term(0, 0, 1, 2);
        REQUIRE(t.has_value());
        CHECK(*t == Term::apply("+", {Term::var(), Term::var()}));
    }
    SUBCASE("identity certifies a:a::c:c") {
        CHECK(r->holds(7, 7, -3, -3));
        auto t = r->witness_term(7, 7, -3, -3);
        REQUIRE(t.has_value());
        CHECK(*t == Term::var());
    }
    SUBCASE("no witness for a contradictory pair") {
        CHECK_FALSE(r->holds(0, 0, 0, 2));
        CHECK_FALSE(r->witness_term(0, 0, 0, 2).has_value());
    }
    SUBCASE("depth monotonicity") {
        auto deep = ProportionRelation::witness(z, z, 4);
        for (Elem a = -3; a <= 3; ++a)
            for (Elem b = -3; b <= 3; ++b)
                for (Elem c = -3; c <= 3; ++c)
                    for (Elem d = -3; d <= 3; ++d)
                        if (r->holds(a, b, c, d)) CHECK(deep->holds(a, b, c, d));
    }
}

TEST_CASE("witness relation over tabular algebras") {
    auto a = chain_source();
    auto r = ProportionRelation::witness(a, a, 3);
    SUBCASE("identity witness on equal pairs") {
        CHECK(r->holds(el(a, "1"), el(a, "1"), el(a, "3"), el(a, "3")));
    }
    SUBCASE("S is not injective here, so it cannot certify") {
        // S would map 1 to 2 and 3 to 4, but S(1) = S(2) = 2 kills it.
        CHECK_FALSE(r->holds(el(a, "1"), el(a, "2"), el(a, "3"), el(a, "4")));
    }
    SUBCASE("the same witness certifies the mirror") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 200; ++i) {
            Elem x = rng() % 4, y = rng() % 4, u = rng() % 4, v = rng() % 4;
            if (r->holds(x, y, u, v)) CHECK(r->holds(u, v, x, y));
        }
    }
}

TEST_CASE("extensional relations agree with raw membership") {
    auto a = chain_source();
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        std::set<std::array<Elem, 4>> raw;
        std::vector<Quad> quads;
        for (int k = 0; k < 6; ++k) {
            Quad q{static_cast<Elem>(rng() % 4), static_cast<Elem>(rng() % 4),
                   static_cast<Elem>(rng() % 4), static_cast<Elem>(rng() % 4)};
            quads.push_back(q);
            raw.insert({q.a, q.b, q.c, q.d});
            raw.insert({q.c, q.d, q.a, q.b}); // symmetric closure
        }
        auto r = ProportionRelation::extensional(a, a, quads, true);
        for (Elem x = 0; x < 4; ++x)
            for (Elem y = 0; y < 4; ++y)
                for (Elem u = 0; u < 4; ++u)
                    for (Elem v = 0; v < 4; ++v)
                        CHECK(r->holds(x, y, u, v) == (raw.count({x, y, u, v}) != 0));
    }
}

TEST_CASE("check_inner_symmetry") {
    SUBCASE("difference") {
        auto nat = FiniteAlgebra::nat_succ("N", 8);
        Verdict v = check_inner_symmetry(*ProportionRelation::difference(nat));
        CHECK(v.holds);
        CHECK(v.qualifier == Qualifier::Exact);
    }
    SUBCASE("boolean-xor, exhaustively") {
        auto b = bool_xor_alg();
        CHECK(check_inner_symmetry(*ProportionRelation::boolean_xor(b, b)).holds);
    }
    SUBCASE("an unclosed table fails at the missing mirror") {
        auto n4 = FiniteAlgebra::tabular("N4", {"1", "2", "3", "4"}, Signature({}), {});
        auto r = ProportionRelation::extensional(
            n4, n4, {quad(n4, n4, "1", "2", "3", "4")}, false);
        Verdict v = check_inner_symmetry(*r);
        REQUIRE_FALSE(v.holds);
        CHECK(slot(v, "a") == "3");
        CHECK(slot(v, "b") == "4");
        CHECK(slot(v, "c") == "1");
        CHECK(slot(v, "d") == "2");
    }
}

TEST_CASE("check_cross_symmetry") {
    auto a4 = FiniteAlgebra::tabular("A", {"1", "2", "3", "4"}, Signature({}), {});
    auto b2 = FiniteAlgebra::tabular("B", {"5", "6"}, Signature({}), {});
    SUBCASE("mirrored tables") {
        RelationFamily fam;
        fam.add(ProportionRelation::extensional(a4, b2, {quad(a4, b2, "1", "2", "5", "6")},
                                                true, "rAB"));
        fam.add(ProportionRelation::extensional(b2, a4, {quad(b2, a4, "5", "6", "1", "2")},
                                                true, "rBA"));
        CHECK(check_cross_symmetry(fam, "A", "B").holds);
    }
    SUBCASE("an empty reverse relation fails") {
        RelationFamily fam;
        fam.add(ProportionRelation::extensional(a4, b2, {quad(a4, b2, "1", "2", "5", "6")},
                                                true, "rAB"));
        fam.add(ProportionRelation::extensional(b2, a4, {}, true, "rBA"));
        Verdict v = check_cross_symmetry(fam, "A", "B");
        REQUIRE_FALSE(v.holds);
        CHECK(slot(v, "a") == "1");
        CHECK(slot(v, "b") == "2");
        CHECK(slot(v, "c") == "5");
        CHECK(slot(v, "d") == "6");
    }
    SUBCASE("difference registered for both orders") {
        auto nat = FiniteAlgebra::nat_succ("N", 8);
        RelationFamily fam;
        fam.add(ProportionRelation::difference(nat));
        CHECK(check_cross_symmetry(fam, "N", "N").holds);
    }
    SUBCASE("missing pair") {
        RelationFamily fam;
        fam.add(ProportionRelation::extensional(a4, b2, {}, true));
        CHECK_THROWS_AS(check_cross_symmetry(fam, "A", "B"), PreconditionError);
    }
}

TEST_CASE("check_reflexivity") {
    SUBCASE("difference and boolean-xor") {
        auto nat = FiniteAlgebra::nat_succ("N", 8);
        CHECK(check_reflexivity(*ProportionRelation::difference(nat)).holds);
        auto b = bool_xor_alg();
        CHECK(check_reflexivity(*ProportionRelation::boolean_xor(b, b)).holds);
    }
    SUBCASE("the empty relation fails at the first pair") {
        auto n2 = FiniteAlgebra::tabular("N2", {"0", "1"}, Signature({}), {});
        Verdict v = check_reflexivity(*ProportionRelation::extensional(n2, n2, {}, true));
        REQUIRE_FALSE(v.holds);
        CHECK(slot(v, "a") == "0");
        CHECK(slot(v, "b") == "0");
    }
}

TEST_CASE("check_determinism") {
    SUBCASE("a relation containing 5:5::5:6 is rejected") {
        auto b2 = FiniteAlgebra::tabular("B", {"5", "6"}, Signature({}), {});
        auto r = ProportionRelation::extensional(b2, b2, {quad(b2, b2, "5", "5", "5", "6")},
                                                 true);
        Verdict v = check_determinism(*r);
        REQUIRE_FALSE(v.holds);
        CHECK(slot(v, "a") == "5");
        CHECK(slot(v, "d") == "6");
    }
    SUBCASE("difference and boolean-xor are deterministic") {
        auto nat = FiniteAlgebra::nat_succ("N", 8);
        CHECK(check_determinism(*ProportionRelation::difference(nat)).holds);
        auto b = bool_xor_alg();
        CHECK(check_determinism(*ProportionRelation::boolean_xor(b, b)).holds);
    }
    SUBCASE("witness relations are deterministic by functionality") {
        auto z = FiniteAlgebra::int_plus("Z", 8);
        Verdict v = check_determinism(*ProportionRelation::witness(z, z, 3));
        CHECK(v.holds);
        CHECK(v.qualifier == Qualifier::Exact);
    }
}

TEST_CASE("check_p_transitivity") {
    SUBCASE("difference chains exactly") {
        auto nat = FiniteAlgebra::nat_succ("N", 64);
        Verdict v = check_p_transitivity(*ProportionRelation::difference(nat));
        CHECK(v.holds);
        CHECK(v.qualifier == Qualifier::Exact);
    }
    SUBCASE("boolean-xor, all 64 cases") {
        auto b = bool_xor_alg();
        CHECK(check_p_transitivity(*ProportionRelation::boolean_xor(b, b)).holds);
    }
    SUBCASE("a constructed chain failure") {
        auto n4 = FiniteAlgebra::tabular("N4", {"1", "2", "3", "4"}, Signature({}), {});
        // Symmetric plus reflexive closure of {(1,2,3,4), (3,4,1,3)}.
        std::vector<Quad> quads{quad(n4, n4, "1", "2", "3", "4"),
                                quad(n4, n4, "3", "4", "1", "3")};
        for (Elem x = 0; x < 4; ++x)
            for (Elem y = 0; y < 4; ++y) quads.push_back({x, y, x, y});
        auto r = ProportionRelation::extensional(n4, n4, quads, true);
        Verdict v = check_p_transitivity(*r);
        REQUIRE_FALSE(v.holds);
        CHECK(slot(v, "a") == "1");
        CHECK(slot(v, "b") == "2");
        CHECK(slot(v, "c") == "3");
        CHECK(slot(v, "d") == "4");
        CHECK(slot(v, "e") == "1");
        CHECK(slot(v, "f") == "3");
    }
}

TEST_CASE("difference axioms agree with a small-window brute sweep") {
    // Independent oracle: quantify directly over the formula a-b = c-d.
    auto z = FiniteAlgebra::int_plus("Z", 4);
    auto diff = [](Elem a, Elem b, Elem c, Elem d) { return a - b == c - d; };
    std::vector<Elem> win;
    for (Elem v = -4; v <= 4; ++v) win.push_back(v);

    bool sym = true, refl = true, det = true, trans = true;
    for (Elem a : win)
        for (Elem b : win) {
            if (!diff(a, b, a, b)) refl = false;
            for (Elem c : win) {
                if (c != a && diff(a, a, a, c)) det = false;
                for (Elem d : win) {
                    if (diff(a, b, c, d) != diff(c, d, a, b)) sym = false;
                    if (!diff(a, b, c, d)) continue;
                    for (Elem e : win)
                        for (Elem f : win)
                            if (diff(c, d, e, f) && !diff(a, b, e, f)) trans = false;
                }
            }
        }
    auto r = ProportionRelation::difference(z);
    CHECK(check_inner_symmetry(*r).holds == sym);
    CHECK(check_reflexivity(*r).holds == refl);
    CHECK(check_determinism(*r).holds == det);
    CHECK(check_p_transitivity(*r).holds == trans);
}

TEST_CASE("restriction to a sub-universe") {
    auto a = chain_source();
    auto sub = FiniteAlgebra::tabular("A24", {"2", "4"}, Signature({{"S", 1}}),
                                      {OpTable{{0, 1}}});
    auto r = ProportionRelation::extensional(
        a, a,
        {quad(a, a, "2", "4", "2", "4"), quad(a, a, "1", "2", "3", "4"),
         quad(a, a, "2", "2", "4", "4")},
        true);
    auto rs = r->restricted_to(sub, sub);
    CHECK(rs->holds(el(sub, "2"), el(sub, "4"), el(sub, "2"), el(sub, "4")));
    CHECK(rs->holds(el(sub, "2"), el(sub, "2"), el(sub, "4"), el(sub, "4")));
    CHECK_FALSE(rs->holds(el(sub, "2"), el(sub, "4"), el(sub, "4"), el(sub, "2")));
}

TEST_CASE("witness_term returns the first certifying term of the raw stream") {
    // Oracle: scan the raw enumeration directly, keeping the first
    // injective term that maps a to b and c to d.
    std::mt19937_64 rng(6021023);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 3;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        OpTable t;
        for (std::size_t i = 0; i < n; ++i)
            t.flat.push_back(static_cast<std::uint32_t>(rng() % n));
        auto alg = FiniteAlgebra::tabular("W", labels, Signature({{"S", 1}}), {t});
        auto rel = ProportionRelation::witness(alg, alg, 3);
        auto raw = enumerate_unary_terms(alg->signature(), 3);
        for (Elem a = 0; a < (Elem)n; ++a)
            for (Elem b = 0; b < (Elem)n; ++b)
                for (Elem c = 0; c < (Elem)n; ++c)
                    for (Elem d = 0; d < (Elem)n; ++d) {
                        std::optional<Term> expect;
                        for (const Term& term : raw) {
                            if (!term_function_injective(*alg, term)) continue;
                            if (eval_term(*alg, term, a) == b &&
                                eval_term(*alg, term, c) == d) {
                                expect = term;
                                break;
                            }
                        }
                        auto got = rel->witness_term(a, b, c, d);
                        REQUIRE(got.has_value() == expect.has_value());
                        if (expect) CHECK(*got == *expect);
                        CHECK(rel->holds(a, b, c, d) == expect.has_value());
                    }
    }
}

TEST_CASE("parallel sweeps agree with sequential ones on dense violations") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 30; ++trial) {
        const std::uint64_t count = 40000 + rng() % 200000;
        const std::uint64_t stride = 1 + rng() % 977;
        const std::uint64_t first = rng() % count;
        auto violates = [&](std::uint64_t i) {
            return i >= first && (i - first) % stride == 0;
        };
        set_sweep_threads(1);
        auto seq = find_first_violation(count, violates);
        set_sweep_threads(4);
        auto par = find_first_violation(count, violates);
        set_sweep_threads(0);
        REQUIRE(seq.has_value());
        CHECK(*seq == first);
        REQUIRE(par.has_value());
        CHECK(*par == first);
    }
}
