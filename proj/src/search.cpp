#include "propalg/search.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace propalg {

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
    std::uint64_t max_instances;
    Clock::time_point deadline;
    std::uint64_t used = 0;
    bool exceeded = false;

    bool tick() {
        if (exceeded) return false;
        ++used;
        if (used > max_instances) {
            exceeded = true;
            return false;
        }
        if ((used & 1023) == 0 && Clock::now() > deadline) {
            exceeded = true;
            return false;
        }
        return true;
    }
};

std::vector<std::string> number_labels(std::size_t n, std::size_t start) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(start + i));
    return out;
}

AlgebraPtr make_algebra(const std::string& name, std::size_t n, std::size_t label_start,
                        const std::optional<OpTable>& table) {
    if (!table)
        return FiniteAlgebra::tabular(name, number_labels(n, label_start), Signature({}), {});
    return FiniteAlgebra::tabular(name, number_labels(n, label_start),
                                  Signature({{"S", 1}}), {*table});
}

/// All unary tables over an n-element universe, in flat counter order;
/// a single "no operation" entry when the signature is empty.
std::vector<std::optional<OpTable>> table_stream(std::size_t n, bool with_op) {
    if (!with_op) return {std::nullopt};
    std::vector<std::optional<OpTable>> out;
    OpTable t;
    t.flat.assign(n, 0);
    while (true) {
        out.push_back(t);
        std::size_t pos = n;
        while (pos > 0) {
            if (++t.flat[pos - 1] < n) break;
            t.flat[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return out;
}

struct Orbit {
    Quad canon;
    std::optional<Quad> mirror; // absent for self-mirrored quadruples
    bool reflexive = false;     // canon has the shape a:b::a:b
};

std::vector<Orbit> symmetry_orbits(std::size_t n) {
    std::vector<Orbit> out;
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            for (Elem c = 0; c < (Elem)n; ++c)
                for (Elem d = 0; d < (Elem)n; ++d) {
                    const Quad q{a, b, c, d};
                    const Quad m{c, d, a, b};
                    if (m < q) continue; // canonical member only
                    Orbit o;
                    o.canon = q;
                    if (!(m == q)) o.mirror = m;
                    o.reflexive = a == c && b == d;
                    out.push_back(o);
                }
    return out;
}

std::vector<Quad> orbit_subset_quads(const std::vector<Orbit>& orbits,
                                     const std::vector<std::uint8_t>& take) {
    std::vector<Quad> quads;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        if (!take[i]) continue;
        quads.push_back(orbits[i].canon);
        if (orbits[i].mirror) quads.push_back(*orbits[i].mirror);
    }
    std::sort(quads.begin(), quads.end());
    return quads;
}

bool passes_constraints(const RelationSpace& space, const AlgebraPtr& carrier,
                        const std::vector<Quad>& quads) {
    if (!space.deterministic && !space.ptransitive) return true;
    auto rel = ProportionRelation::extensional(carrier, carrier, quads, false);
    if (space.deterministic && !check_determinism(*rel).holds) return false;
    if (space.ptransitive && !check_p_transitivity(*rel).holds) return false;
    return true;
}

} // namespace

std::uint64_t relation_orbit_count(std::size_t n) { return symmetry_orbits(n).size(); }

void enumerate_relations(const RelationSpace& space, const AlgebraPtr& carrier,
                         const std::function<bool(const std::vector<Quad>&)>& visit) {
    if (space.n > 5)
        throw PreconditionError("relation enumeration supports universes of at most 5");
    if (carrier->size() != space.n)
        throw PreconditionError("carrier size does not match the relation space");
    const std::vector<Orbit> orbits = symmetry_orbits(space.n);
    std::vector<std::size_t> free_idx;
    std::vector<std::uint8_t> take(orbits.size(), 0);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        if (space.reflexive && orbits[i].reflexive)
            take[i] = 1; // forced in
        else
            free_idx.push_back(i);
    }
    // Binary counter over the free orbits, least significant first.
    std::vector<std::uint8_t> counter(free_idx.size(), 0);
    while (true) {
        std::vector<Quad> quads = orbit_subset_quads(orbits, take);
        if (passes_constraints(space, carrier, quads))
            if (!visit(quads)) return;
        std::size_t pos = 0;
        while (pos < counter.size()) {
            counter[pos] ^= 1;
            take[free_idx[pos]] = counter[pos];
            if (counter[pos]) break;
            ++pos;
        }
        if (pos == counter.size()) return;
    }
}

std::optional<Goal> parse_goal(const std::string& name) {
    if (name == "hom-not-phom") return Goal::HomNotPHom;
    if (name == "phom-not-pfunctor") return Goal::PHomNotPFunctor;
    if (name == "pfunctor-not-phom") return Goal::PFunctorNotPHom;
    if (name == "aip-not-pfunctor") return Goal::AipNotPFunctor;
    if (name == "pfunctor-closure-failure") return Goal::PFunctorClosureFailure;
    return std::nullopt;
}

std::string goal_name(Goal g) {
    switch (g) {
    case Goal::HomNotPHom: return "hom-not-phom";
    case Goal::PHomNotPFunctor: return "phom-not-pfunctor";
    case Goal::PFunctorNotPHom: return "pfunctor-not-phom";
    case Goal::AipNotPFunctor: return "aip-not-pfunctor";
    default: return "pfunctor-closure-failure";
    }
}

namespace {

AlgebraDecl algebra_decl(const FiniteAlgebra& a) {
    AlgebraDecl d;
    d.name = a.name();
    for (std::size_t i = 0; i < a.size(); ++i) d.universe.push_back(a.label((Elem)i));
    d.ops = a.signature().ops();
    for (std::size_t oi = 0; oi < a.signature().size(); ++oi) {
        const unsigned arity = a.signature().at(oi).arity;
        std::vector<std::size_t> t(arity, 0);
        while (true) {
            AlgebraDecl::TableEntry entry;
            entry.op = a.signature().at(oi).name;
            std::vector<Elem> args(arity);
            for (unsigned i = 0; i < arity; ++i) {
                args[i] = (Elem)t[i];
                entry.args.push_back(a.label(args[i]));
            }
            entry.result = a.label(a.apply(oi, args));
            d.tables.push_back(std::move(entry));
            std::size_t pos = arity;
            while (pos > 0) {
                if (++t[pos - 1] < a.size()) break;
                t[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return d;
}

RelationDecl relation_decl(const std::string& name, const std::string& src,
                           const std::string& tgt, const FiniteAlgebra& sa,
                           const FiniteAlgebra& ta, const std::vector<Quad>& quads) {
    RelationDecl d;
    d.name = name;
    d.source = src;
    d.target = tgt;
    d.kind = "extensional";
    d.symmetric_closure = false; // the table is stored explicitly
    for (const Quad& q : quads)
        d.quads.push_back({0, {sa.label(q.a), sa.label(q.b), ta.label(q.c), ta.label(q.d)}});
    return d;
}

MapDecl map_decl(const std::string& name, const Mapping& f) {
    MapDecl d;
    d.name = name;
    d.source = f.source()->name();
    d.target = f.target()->name();
    for (std::size_t i = 0; i < f.source()->size(); ++i)
        d.arrows.push_back(
            {0, f.source()->label((Elem)i), f.target()->label(f.apply((Elem)i))});
    return d;
}

void push_decl(SpecFile& spec, AlgebraDecl d) {
    spec.order.push_back({'a', spec.algebras.size()});
    spec.algebras.push_back(std::move(d));
}
void push_decl(SpecFile& spec, RelationDecl d) {
    spec.order.push_back({'r', spec.relations.size()});
    spec.relations.push_back(std::move(d));
}
void push_decl(SpecFile& spec, MapDecl d) {
    spec.order.push_back({'m', spec.maps.size()});
    spec.maps.push_back(std::move(d));
}

struct GoalDriver {
    const SearchSpace& space;
    Goal goal;
    Budget budget;
    SearchOutcome outcome;

    explicit GoalDriver(const SearchSpace& s, Goal g)
        : space(s), goal(g),
          budget{s.max_instances,
                 Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(s.max_seconds))} {}

    RelationSpace rel_space(std::size_t n, bool force_ptrans = false) const {
        RelationSpace rs;
        rs.n = n;
        rs.reflexive = space.require_reflexive;
        rs.deterministic = space.require_deterministic;
        rs.ptransitive = space.require_ptransitive || force_ptrans;
        return rs;
    }

    void finish() {
        outcome.instances = budget.used;
        outcome.budget_exceeded = budget.exceeded;
        outcome.exhausted = !outcome.exhibit && !budget.exceeded;
    }
};

Exhibit make_exhibit(Goal goal, const std::string& provenance, SpecFile spec,
                     std::vector<ExpectedCheck> checks) {
    Exhibit e;
    e.goal = goal;
    e.provenance = provenance;
    e.spec = std::move(spec);
    e.checks = std::move(checks);
    return e;
}

ExpectedCheck expected(const std::string& kind, std::map<std::string, std::string> args,
                       Verdict v) {
    return ExpectedCheck{kind, std::move(args), std::move(v)};
}

// --- goal drivers ----------------------------------------------------

SearchOutcome drive_hom_not_phom(GoalDriver& drv) {
    const SearchSpace& sp = drv.space;
    for (const auto& tblA : table_stream(sp.source_size, sp.with_unary_op)) {
        for (const auto& tblB : table_stream(sp.target_size, sp.with_unary_op)) {
            auto algA = make_algebra("A", sp.source_size, 1, tblA);
            auto algB = make_algebra("B", sp.target_size, sp.source_size + 1, tblB);
            std::vector<Mapping> homs;
            {
                std::vector<Elem> g(sp.source_size, 0);
                while (true) {
                    Mapping f = Mapping::from_graph(algA, algB, g, "F");
                    if (is_homomorphism(f).holds) homs.push_back(f);
                    std::size_t pos = g.size();
                    while (pos > 0) {
                        if (static_cast<std::size_t>(++g[pos - 1]) < sp.target_size) break;
                        g[pos - 1] = 0;
                        --pos;
                    }
                    if (pos == 0) break;
                }
            }
            bool stop = false;
            enumerate_relations(drv.rel_space(sp.source_size), algA, [&](const auto& qa) {
                auto ra = ProportionRelation::extensional(algA, algA, qa, false, "rA");
                enumerate_relations(drv.rel_space(sp.target_size), algB, [&](const auto& qb) {
                    auto rb = ProportionRelation::extensional(algB, algB, qb, false, "rB");
                    PAlgebra pa(algA, ra), pb(algB, rb);
                    for (const Mapping& f : homs) {
                        if (!drv.budget.tick()) {
                            stop = true;
                            return false;
                        }
                        Verdict v = is_p_homomorphism(f, pa, pb);
                        if (v.holds) continue;
                        SpecFile spec;
                        push_decl(spec, algebra_decl(*algA));
                        push_decl(spec, algebra_decl(*algB));
                        push_decl(spec, relation_decl("rA", "A", "A", *algA, *algA, qa));
                        push_decl(spec, relation_decl("rB", "B", "B", *algB, *algB, qb));
                        push_decl(spec, map_decl("F", f));
                        drv.outcome.exhibit = make_exhibit(
                            drv.goal, "instance " + std::to_string(drv.budget.used),
                            std::move(spec),
                            {expected("hom", {{"map", "F"}}, is_homomorphism(f)),
                             expected("phom",
                                      {{"map", "F"}, {"relA", "rA"}, {"relB", "rB"}}, v)});
                        stop = true;
                        return false;
                    }
                    return true;
                });
                return !stop;
            });
            if (stop) {
                drv.finish();
                return drv.outcome;
            }
        }
    }
    drv.finish();
    return drv.outcome;
}

SearchOutcome drive_phom_not_pfunctor(GoalDriver& drv) {
    const SearchSpace& sp = drv.space;
    const std::size_t cross = sp.source_size * sp.source_size * sp.target_size *
                              sp.target_size;
    for (const auto& tblA : table_stream(sp.source_size, sp.with_unary_op)) {
        for (const auto& tblB : table_stream(sp.target_size, sp.with_unary_op)) {
            auto algA = make_algebra("A", sp.source_size, 1, tblA);
            auto algB = make_algebra("B", sp.target_size, sp.source_size + 1, tblB);
            std::vector<Mapping> homs;
            {
                std::vector<Elem> g(sp.source_size, 0);
                while (true) {
                    Mapping f = Mapping::from_graph(algA, algB, g, "F");
                    if (is_homomorphism(f).holds) homs.push_back(f);
                    std::size_t pos = g.size();
                    while (pos > 0) {
                        if (static_cast<std::size_t>(++g[pos - 1]) < sp.target_size) break;
                        g[pos - 1] = 0;
                        --pos;
                    }
                    if (pos == 0) break;
                }
            }
            bool stop = false;
            enumerate_relations(drv.rel_space(sp.source_size), algA, [&](const auto& qa) {
                auto ra = ProportionRelation::extensional(algA, algA, qa, false, "rA");
                enumerate_relations(drv.rel_space(sp.target_size), algB, [&](const auto& qb) {
                    auto rb = ProportionRelation::extensional(algB, algB, qb, false, "rB");
                    PAlgebra pa(algA, ra), pb(algB, rb);
                    for (const Mapping& f : homs) {
                        Verdict ph = is_p_homomorphism(f, pa, pb);
                        if (!ph.holds) continue;
                        // Cross relations in raw counter order; the empty
                        // one already refutes the p-functor property.
                        std::vector<std::uint8_t> bits(cross, 0);
                        while (true) {
                            if (!drv.budget.tick()) {
                                stop = true;
                                return false;
                            }
                            std::vector<Quad> qab;
                            for (std::size_t i = 0; i < cross; ++i) {
                                if (!bits[i]) continue;
                                std::size_t v = i;
                                const Elem d = (Elem)(v % sp.target_size);
                                v /= sp.target_size;
                                const Elem c = (Elem)(v % sp.target_size);
                                v /= sp.target_size;
                                const Elem b = (Elem)(v % sp.source_size);
                                const Elem a = (Elem)(v / sp.source_size);
                                qab.push_back({a, b, c, d});
                            }
                            auto rab = ProportionRelation::extensional(algA, algB, qab,
                                                                       false, "rAB");
                            Verdict pf = is_p_functor(f, *rab);
                            if (!pf.holds) {
                                SpecFile spec;
                                push_decl(spec, algebra_decl(*algA));
                                push_decl(spec, algebra_decl(*algB));
                                push_decl(spec,
                                          relation_decl("rA", "A", "A", *algA, *algA, qa));
                                push_decl(spec,
                                          relation_decl("rB", "B", "B", *algB, *algB, qb));
                                push_decl(spec,
                                          relation_decl("rAB", "A", "B", *algA, *algB, qab));
                                push_decl(spec, map_decl("F", f));
                                drv.outcome.exhibit = make_exhibit(
                                    drv.goal,
                                    "instance " + std::to_string(drv.budget.used),
                                    std::move(spec),
                                    {expected("phom",
                                              {{"map", "F"}, {"relA", "rA"}, {"relB", "rB"}},
                                              ph),
                                     expected("pfunctor", {{"map", "F"}, {"rel", "rAB"}},
                                              pf)});
                                stop = true;
                                return false;
                            }
                            std::size_t pos = 0;
                            while (pos < cross) {
                                bits[pos] ^= 1;
                                if (bits[pos]) break;
                                ++pos;
                            }
                            if (pos == cross) break;
                        }
                    }
                    return true;
                });
                return !stop;
            });
            if (stop) {
                drv.finish();
                return drv.outcome;
            }
        }
    }
    drv.finish();
    return drv.outcome;
}

/// Shared driver for the three single-algebra goals.
SearchOutcome drive_endo(GoalDriver& drv) {
    const SearchSpace& sp = drv.space;
    const std::size_t n = sp.source_size;
    const bool closure_goal = drv.goal == Goal::PFunctorClosureFailure;
    const bool force_ptrans = drv.goal == Goal::PFunctorNotPHom;
    for (const auto& tbl : table_stream(n, sp.with_unary_op)) {
        auto alg = make_algebra("A", n, 1, tbl);
        std::vector<Mapping> maps;
        for (std::vector<Elem> g(n, 0);;) {
            maps.push_back(Mapping::from_graph(alg, alg, g, "F"));
            std::size_t pos = n;
            while (pos > 0) {
                if (static_cast<std::size_t>(++g[pos - 1]) < n) break;
                g[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
        bool stop = false;
        enumerate_relations(drv.rel_space(n, force_ptrans), alg, [&](const auto& quads) {
            auto rel = ProportionRelation::extensional(alg, alg, quads, false, "r");
            PAlgebra pa(alg, rel);
            if (closure_goal) {
                Verdict trans = check_p_transitivity(*rel);
                if (trans.holds) return true; // only non-p-transitive carriers
                std::vector<const Mapping*> pfs;
                for (const Mapping& f : maps)
                    if (is_p_functor(f, *rel).holds) pfs.push_back(&f);
                for (const Mapping* f : pfs)
                    for (const Mapping* g : pfs) {
                        if (!drv.budget.tick()) {
                            stop = true;
                            return false;
                        }
                        Mapping comp = compose(*f, *g);
                        Verdict pv = is_p_functor(comp, *rel);
                        if (pv.holds) continue;
                        SpecFile spec;
                        push_decl(spec, algebra_decl(*alg));
                        push_decl(spec, relation_decl("r", "A", "A", *alg, *alg, quads));
                        Mapping fn = Mapping(f->source(), f->target(), f->form(), "F");
                        Mapping gn = Mapping(g->source(), g->target(), g->form(), "G");
                        push_decl(spec, map_decl("F", fn));
                        push_decl(spec, map_decl("G", gn));
                        drv.outcome.exhibit = make_exhibit(
                            drv.goal, "instance " + std::to_string(drv.budget.used),
                            std::move(spec),
                            {expected("axiom-p-transitivity", {{"rel", "r"}}, trans),
                             expected("pfunctor", {{"map", "F"}, {"rel", "r"}},
                                      is_p_functor(fn, *rel)),
                             expected("pfunctor", {{"map", "G"}, {"rel", "r"}},
                                      is_p_functor(gn, *rel)),
                             expected("pfunctor-compose",
                                      {{"mapF", "F"}, {"mapG", "G"}, {"rel", "r"}}, pv)});
                        stop = true;
                        return false;
                    }
                return true;
            }
            for (const Mapping& f : maps) {
                if (!drv.budget.tick()) {
                    stop = true;
                    return false;
                }
                if (drv.goal == Goal::AipNotPFunctor) {
                    Verdict aip = satisfies_aip(f, pa, pa);
                    if (!aip.holds) continue;
                    Verdict pf = is_p_functor(f, *rel);
                    if (pf.holds) continue;
                    SpecFile spec;
                    push_decl(spec, algebra_decl(*alg));
                    push_decl(spec, relation_decl("r", "A", "A", *alg, *alg, quads));
                    push_decl(spec, map_decl("F", f));
                    drv.outcome.exhibit = make_exhibit(
                        drv.goal, "instance " + std::to_string(drv.budget.used),
                        std::move(spec),
                        {expected("aip", {{"map", "F"}, {"relA", "r"}, {"relB", "r"}}, aip),
                         expected("pfunctor", {{"map", "F"}, {"rel", "r"}}, pf)});
                    stop = true;
                    return false;
                }
                // p-functor that is not a p-homomorphism
                Verdict pf = is_p_functor(f, *rel);
                if (!pf.holds) continue;
                Verdict ph = is_p_homomorphism(f, pa, pa);
                if (ph.holds) continue;
                SpecFile spec;
                push_decl(spec, algebra_decl(*alg));
                push_decl(spec, relation_decl("r", "A", "A", *alg, *alg, quads));
                push_decl(spec, map_decl("F", f));
                drv.outcome.exhibit = make_exhibit(
                    drv.goal, "instance " + std::to_string(drv.budget.used),
                    std::move(spec),
                    {expected("axiom-p-transitivity", {{"rel", "r"}},
                              check_p_transitivity(*rel)),
                     expected("pfunctor", {{"map", "F"}, {"rel", "r"}}, pf),
                     expected("phom", {{"map", "F"}, {"relA", "r"}, {"relB", "r"}}, ph)});
                stop = true;
                return false;
            }
            return true;
        });
        if (stop) break;
    }
    drv.finish();
    return drv.outcome;
}

std::string describe_space(const SearchSpace& sp, Goal g) {
    std::ostringstream out;
    out << "goal=" << goal_name(g) << " sizes=(" << sp.source_size << "," << sp.target_size
        << ") signature=" << (sp.with_unary_op ? "S/1" : "empty") << " constraints=symmetry";
    if (sp.require_reflexive) out << "+reflexivity";
    if (sp.require_deterministic) out << "+determinism";
    if (sp.require_ptransitive) out << "+p-transitivity";
    out << " orbits-source=" << relation_orbit_count(sp.source_size);
    if (g == Goal::HomNotPHom || g == Goal::PHomNotPFunctor)
        out << " orbits-target=" << relation_orbit_count(sp.target_size);
    out << (sp.seed ? " mode=randomized" : " mode=exhaustive");
    if (sp.seed) out << " seed=" << *sp.seed;
    return out.str();
}

SearchOutcome drive_randomized(GoalDriver& drv) {
    const SearchSpace& sp = drv.space;
    std::mt19937_64 rng(*sp.seed);
    const std::size_t n = sp.source_size;
    const std::vector<Orbit> orbitsA = symmetry_orbits(n);
    const std::vector<Orbit> orbitsB = symmetry_orbits(sp.target_size);

    auto random_table = [&](std::size_t sz) -> std::optional<OpTable> {
        if (!sp.with_unary_op) return std::nullopt;
        OpTable t;
        for (std::size_t i = 0; i < sz; ++i)
            t.flat.push_back(static_cast<std::uint32_t>(rng() % sz));
        return t;
    };
    auto random_rel = [&](const std::vector<Orbit>& orbits, const AlgebraPtr& alg,
                          bool force_ptrans) -> std::optional<std::vector<Quad>> {
        std::vector<std::uint8_t> take(orbits.size());
        for (std::size_t i = 0; i < orbits.size(); ++i)
            take[i] = (sp.require_reflexive && orbits[i].reflexive) ? 1 : (rng() & 1);
        std::vector<Quad> q = orbit_subset_quads(orbits, take);
        RelationSpace rs;
        rs.n = alg->size();
        rs.reflexive = sp.require_reflexive;
        rs.deterministic = sp.require_deterministic;
        rs.ptransitive = sp.require_ptransitive || force_ptrans;
        if (!passes_constraints(rs, alg, q)) return std::nullopt;
        return q;
    };
    auto random_graph = [&](std::size_t from, std::size_t onto) {
        std::vector<Elem> g(from);
        for (auto& v : g) v = static_cast<Elem>(rng() % onto);
        return g;
    };

    for (std::uint64_t t = 0; t < sp.random_tries; ++t) {
        if (!drv.budget.tick()) break;
        auto algA = make_algebra("A", n, 1, random_table(n));
        auto qa = random_rel(orbitsA, algA, drv.goal == Goal::PFunctorNotPHom);
        if (!qa) continue;
        auto ra = ProportionRelation::extensional(algA, algA, *qa, false, "rA");
        if (drv.goal == Goal::HomNotPHom || drv.goal == Goal::PHomNotPFunctor) {
            auto algB = make_algebra("B", sp.target_size, n + 1, random_table(sp.target_size));
            auto qb = random_rel(orbitsB, algB, false);
            if (!qb) continue;
            auto rb = ProportionRelation::extensional(algB, algB, *qb, false, "rB");
            Mapping f =
                Mapping::from_graph(algA, algB, random_graph(n, sp.target_size), "F");
            if (!is_homomorphism(f).holds) continue;
            PAlgebra pa(algA, ra), pb(algB, rb);
            Verdict ph = is_p_homomorphism(f, pa, pb);
            if (drv.goal == Goal::HomNotPHom) {
                if (ph.holds) continue;
                SpecFile spec;
                push_decl(spec, algebra_decl(*algA));
                push_decl(spec, algebra_decl(*algB));
                push_decl(spec, relation_decl("rA", "A", "A", *algA, *algA, *qa));
                push_decl(spec, relation_decl("rB", "B", "B", *algB, *algB, *qb));
                push_decl(spec, map_decl("F", f));
                drv.outcome.exhibit = make_exhibit(
                    drv.goal, "random try " + std::to_string(t), std::move(spec),
                    {expected("hom", {{"map", "F"}}, is_homomorphism(f)),
                     expected("phom", {{"map", "F"}, {"relA", "rA"}, {"relB", "rB"}}, ph)});
                break;
            }
            if (!ph.holds) continue;
            // random cross relation, sparse
            std::vector<Quad> qab;
            for (Elem a = 0; a < (Elem)n; ++a)
                for (Elem b = 0; b < (Elem)n; ++b)
                    for (Elem c = 0; c < (Elem)sp.target_size; ++c)
                        for (Elem d = 0; d < (Elem)sp.target_size; ++d)
                            if (rng() % 4 == 0) qab.push_back({a, b, c, d});
            auto rab = ProportionRelation::extensional(algA, algB, qab, false, "rAB");
            Verdict pf = is_p_functor(f, *rab);
            if (pf.holds) continue;
            SpecFile spec;
            push_decl(spec, algebra_decl(*algA));
            push_decl(spec, algebra_decl(*algB));
            push_decl(spec, relation_decl("rA", "A", "A", *algA, *algA, *qa));
            push_decl(spec, relation_decl("rB", "B", "B", *algB, *algB, *qb));
            push_decl(spec, relation_decl("rAB", "A", "B", *algA, *algB, qab));
            push_decl(spec, map_decl("F", f));
            drv.outcome.exhibit = make_exhibit(
                drv.goal, "random try " + std::to_string(t), std::move(spec),
                {expected("phom", {{"map", "F"}, {"relA", "rA"}, {"relB", "rB"}}, ph),
                 expected("pfunctor", {{"map", "F"}, {"rel", "rAB"}}, pf)});
            break;
        }
        // endo goals
        PAlgebra pa(algA, ra);
        Mapping f = Mapping::from_graph(algA, algA, random_graph(n, n), "F");
        if (drv.goal == Goal::AipNotPFunctor) {
            if (!satisfies_aip(f, pa, pa).holds) continue;
            Verdict pf = is_p_functor(f, *ra);
            if (pf.holds) continue;
            SpecFile spec;
            push_decl(spec, algebra_decl(*algA));
            push_decl(spec, relation_decl("r", "A", "A", *algA, *algA, *qa));
            push_decl(spec, map_decl("F", f));
            drv.outcome.exhibit = make_exhibit(
                drv.goal, "random try " + std::to_string(t), std::move(spec),
                {expected("aip", {{"map", "F"}, {"relA", "r"}, {"relB", "r"}},
                          satisfies_aip(f, pa, pa)),
                 expected("pfunctor", {{"map", "F"}, {"rel", "r"}}, pf)});
            break;
        }
        if (drv.goal == Goal::PFunctorNotPHom) {
            Verdict pf = is_p_functor(f, *ra);
            if (!pf.holds) continue;
            Verdict ph = is_p_homomorphism(f, pa, pa);
            if (ph.holds) continue;
            SpecFile spec;
            push_decl(spec, algebra_decl(*algA));
            push_decl(spec, relation_decl("r", "A", "A", *algA, *algA, *qa));
            push_decl(spec, map_decl("F", f));
            drv.outcome.exhibit = make_exhibit(
                drv.goal, "random try " + std::to_string(t), std::move(spec),
                {expected("axiom-p-transitivity", {{"rel", "r"}}, check_p_transitivity(*ra)),
                 expected("pfunctor", {{"map", "F"}, {"rel", "r"}}, pf),
                 expected("phom", {{"map", "F"}, {"relA", "r"}, {"relB", "r"}}, ph)});
            break;
        }
        // closure failure
        Verdict trans = check_p_transitivity(*ra);
        if (trans.holds) continue;
        Mapping g = Mapping::from_graph(algA, algA, random_graph(n, n), "G");
        if (!is_p_functor(f, *ra).holds || !is_p_functor(g, *ra).holds) continue;
        Mapping comp = compose(f, g);
        Verdict pv = is_p_functor(comp, *ra);
        if (pv.holds) continue;
        SpecFile spec;
        push_decl(spec, algebra_decl(*algA));
        push_decl(spec, relation_decl("r", "A", "A", *algA, *algA, *qa));
        push_decl(spec, map_decl("F", f));
        push_decl(spec, map_decl("G", g));
        drv.outcome.exhibit = make_exhibit(
            drv.goal, "random try " + std::to_string(t), std::move(spec),
            {expected("axiom-p-transitivity", {{"rel", "r"}}, trans),
             expected("pfunctor", {{"map", "F"}, {"rel", "r"}}, is_p_functor(f, *ra)),
             expected("pfunctor", {{"map", "G"}, {"rel", "r"}}, is_p_functor(g, *ra)),
             expected("pfunctor-compose", {{"mapF", "F"}, {"mapG", "G"}, {"rel", "r"}}, pv)});
        break;
    }
    drv.outcome.instances = drv.budget.used;
    drv.outcome.budget_exceeded = drv.budget.exceeded;
    drv.outcome.exhausted = false; // randomized mode never claims exhaustion
    return drv.outcome;
}

} // namespace

SearchOutcome find_separation(const SearchSpace& space, Goal goal) {
    if (space.source_size == 0 || space.source_size > 5 || space.target_size == 0 ||
        space.target_size > 5)
        throw PreconditionError("search universes must have between 1 and 5 elements");
    if (space.max_instances == 0) throw PreconditionError("instance budget must be positive");
    GoalDriver drv(space, goal);
    drv.outcome.space_description = describe_space(space, goal);
    if (space.seed) return drive_randomized(drv);
    switch (goal) {
    case Goal::HomNotPHom: return drive_hom_not_phom(drv);
    case Goal::PHomNotPFunctor: return drive_phom_not_pfunctor(drv);
    default: return drive_endo(drv);
    }
}

// --- exhibit serialization -------------------------------------------

namespace {

std::string verdict_to_directive(const Verdict& v) {
    std::ostringstream out;
    out << "expect=" << (v.holds ? "holds" : "fails")
        << " qualifier=" << qualifier_name(v.qualifier);
    if (v.witness) {
        out << " witness";
        for (const auto& [k, val] : v.witness->slots) out << " " << k << "=" << val;
    }
    return out.str();
}

std::optional<Qualifier> qualifier_from(const std::string& s) {
    if (s == "exact") return Qualifier::Exact;
    if (s == "window-bounded") return Qualifier::WindowBounded;
    if (s == "witness-depth-bounded") return Qualifier::WitnessDepthBounded;
    return std::nullopt;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

} // namespace

std::string serialize_exhibit(const Exhibit& e) {
    SpecFile spec = e.spec;
    spec.directives.clear();
    spec.directives.push_back("propalg-exhibit v1");
    spec.directives.push_back("goal " + goal_name(e.goal));
    if (!e.provenance.empty()) spec.directives.push_back("found " + e.provenance);
    spec.directives.push_back("replay with: propalg replay <this-file>");
    for (const ExpectedCheck& c : e.checks) {
        std::ostringstream line;
        line << "check " << c.kind;
        for (const auto& [k, v] : c.args) line << " " << k << "=" << v;
        line << " " << verdict_to_directive(c.expected);
        spec.directives.push_back(line.str());
    }
    return serialize_spec(spec);
}

Exhibit parse_exhibit(const std::string& text) {
    Exhibit e;
    e.spec = parse_spec(text);
    bool versioned = false;
    for (const std::string& d : e.spec.directives) {
        std::vector<std::string> toks = split_ws(d);
        if (toks.empty()) continue;
        if (toks[0] == "propalg-exhibit") {
            versioned = true;
            continue;
        }
        if (toks[0] == "goal" && toks.size() >= 2) {
            auto g = parse_goal(toks[1]);
            if (!g) throw ParseError(0, "unknown goal '" + toks[1] + "'");
            e.goal = *g;
            continue;
        }
        if (toks[0] == "found" && toks.size() >= 2) {
            e.provenance = d.substr(6);
            continue;
        }
        if (toks[0] != "check") continue;
        if (toks.size() < 3) throw ParseError(0, "malformed check directive: " + d);
        ExpectedCheck c;
        c.kind = toks[1];
        std::size_t i = 2;
        for (; i < toks.size(); ++i) {
            const auto eq = toks[i].find('=');
            if (eq == std::string::npos)
                throw ParseError(0, "malformed check argument '" + toks[i] + "'");
            const std::string key = toks[i].substr(0, eq);
            const std::string val = toks[i].substr(eq + 1);
            if (key == "expect") {
                if (val != "holds" && val != "fails")
                    throw ParseError(0, "expect takes holds or fails");
                c.expected.holds = val == "holds";
                ++i;
                break;
            }
            c.args[key] = val;
        }
        bool in_witness = false;
        WitnessTuple w;
        for (; i < toks.size(); ++i) {
            if (toks[i] == "witness") {
                in_witness = true;
                continue;
            }
            const auto eq = toks[i].find('=');
            if (eq == std::string::npos)
                throw ParseError(0, "malformed check token '" + toks[i] + "'");
            const std::string key = toks[i].substr(0, eq);
            const std::string val = toks[i].substr(eq + 1);
            if (!in_witness && key == "qualifier") {
                auto q = qualifier_from(val);
                if (!q) throw ParseError(0, "unknown qualifier '" + val + "'");
                c.expected.qualifier = *q;
            } else if (in_witness) {
                w.add(key, val);
            } else {
                throw ParseError(0, "unexpected check token '" + toks[i] + "'");
            }
        }
        if (!c.expected.holds) c.expected.witness = std::move(w);
        e.checks.push_back(std::move(c));
    }
    if (!versioned) throw ParseError(0, "not an exhibit file (missing #! propalg-exhibit)");
    if (e.checks.empty()) throw ParseError(0, "exhibit declares no checks");
    return e;
}

Verdict execute_check(const std::string& kind,
                      const std::map<std::string, std::string>& args, const Resolved& r) {
    auto arg = [&](const char* key) -> const std::string& {
        auto it = args.find(key);
        if (it == args.end())
            throw PreconditionError("check '" + kind + "' needs argument '" + key + "'");
        return it->second;
    };
    auto palg = [&](const std::string& rel_name) {
        const RelationPtr& rel = r.relation(rel_name);
        return PAlgebra(rel->source(), rel);
    };
    if (kind == "hom") return is_homomorphism(r.map(arg("map")));
    if (kind == "iso") return is_isomorphism(r.map(arg("map")));
    if (kind == "phom")
        return is_p_homomorphism(r.map(arg("map")), palg(arg("relA")), palg(arg("relB")));
    if (kind == "aip")
        return satisfies_aip(r.map(arg("map")), palg(arg("relA")), palg(arg("relB")));
    if (kind == "piso")
        return is_p_isomorphism(r.map(arg("map")), palg(arg("relA")), palg(arg("relB")));
    if (kind == "pfunctor") return is_p_functor(r.map(arg("map")), *r.relation(arg("rel")));
    if (kind == "pfunctor-compose")
        return is_p_functor(compose(r.map(arg("mapF")), r.map(arg("mapG"))),
                            *r.relation(arg("rel")));
    if (kind == "pidem") return is_p_idempotent(r.map(arg("map")), palg(arg("rel")));
    if (kind == "pcong") return is_p_congruence(r.partition(arg("partition")), palg(arg("rel")));
    if (kind == "fcompare")
        return functional_compare(r.map(arg("mapF")), r.map(arg("mapG")),
                                  *r.relation(arg("rel")))
            .both;
    if (kind == "axiom-symmetry") return check_inner_symmetry(*r.relation(arg("rel")));
    if (kind == "axiom-reflexivity") return check_reflexivity(*r.relation(arg("rel")));
    if (kind == "axiom-determinism") return check_determinism(*r.relation(arg("rel")));
    if (kind == "axiom-p-transitivity") return check_p_transitivity(*r.relation(arg("rel")));
    throw PreconditionError("unknown check kind '" + kind + "'");
}

ReplayResult replay(const Exhibit& e) {
    ReplayResult out;
    Resolved res = resolve(e.spec);
    out.reproduced = true;
    for (const ExpectedCheck& c : e.checks) {
        Verdict actual = execute_check(c.kind, c.args, res);
        std::string name = c.kind;
        for (const auto& [k, v] : c.args) name += " " + k + "=" + v;
        const bool same_witness =
            (!actual.witness && !c.expected.witness) ||
            (actual.witness && c.expected.witness &&
             actual.witness->slots == c.expected.witness->slots);
        if (actual.holds != c.expected.holds || actual.qualifier != c.expected.qualifier ||
            !same_witness) {
            out.reproduced = false;
            std::ostringstream why;
            why << name << ": expected " << verdict_to_directive(c.expected) << ", got "
                << verdict_to_directive(actual);
            out.mismatches.push_back(why.str());
        }
        out.actual.emplace_back(std::move(name), std::move(actual));
    }
    return out;
}

} // namespace propalg
