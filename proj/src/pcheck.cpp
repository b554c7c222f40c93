#include "propalg/pcheck.hpp"

#include <algorithm>

#include "propalg/sweep.hpp"

namespace propalg {

namespace {

using I128 = __int128;
using REval = ProportionRelation::Eval;

void require_same(const AlgebraPtr& a, const AlgebraPtr& b, const char* what) {
    if (!same_algebra(a, b)) throw PreconditionError(what);
}

std::uint64_t quad_count(std::size_t n) {
    const I128 total = I128(n) * n * n * n;
    if (total > I128(UINT64_MAX / 2))
        throw PreconditionError("quantifier sweep too large; reduce the window");
    return static_cast<std::uint64_t>(total);
}

struct QuadIdx {
    std::size_t i3, i2, i1, i0;
};

inline QuadIdx split4(std::uint64_t i, std::uint64_t n) {
    QuadIdx q;
    q.i0 = static_cast<std::size_t>(i % n);
    i /= n;
    q.i1 = static_cast<std::size_t>(i % n);
    i /= n;
    q.i2 = static_cast<std::size_t>(i % n);
    q.i3 = static_cast<std::size_t>(i / n);
    return q;
}

WitnessTuple quad_slots(const FiniteAlgebra& alg, const std::vector<Elem>& dom, QuadIdx q) {
    WitnessTuple w;
    w.add("a", alg.label(dom[q.i3]));
    w.add("b", alg.label(dom[q.i2]));
    w.add("c", alg.label(dom[q.i1]));
    w.add("d", alg.label(dom[q.i0]));
    return w;
}

struct EquivalenceOutcome {
    bool holds = false;
    bool forward_broken = false;
    QuadIdx at{};
    std::uint64_t swept = 0;
};

/// Sweep of  RA(a,b,c,d) <=> RB(F a, F b, F c, F d)  over the source
/// stream.  The forward direction is decided before the backward one, so
/// the canonical witness order is (direction, a, b, c, d).
EquivalenceOutcome equivalence_sweep(const std::vector<Elem>& dom,
                                     const std::vector<Elem>& img, const REval& ra,
                                     const REval& rb, bool forward_only) {
    const std::uint64_t n = dom.size();
    const std::uint64_t total = quad_count(dom.size());
    const Elem* d = dom.data();
    const Elem* m = img.data();

    auto forward_viol = [&](std::uint64_t i) {
        const QuadIdx q = split4(i, n);
        return ra(d[q.i3], d[q.i2], d[q.i1], d[q.i0]) &&
               !rb(m[q.i3], m[q.i2], m[q.i1], m[q.i0]);
    };

    EquivalenceOutcome out;
    if (forward_only) {
        auto hit = find_first_violation(total, forward_viol);
        if (!hit) {
            out.holds = true;
            out.swept = total;
            return out;
        }
        out.forward_broken = true;
        out.at = split4(*hit, n);
        out.swept = *hit + 1;
        return out;
    }

    auto any_viol = [&](std::uint64_t i) {
        const QuadIdx q = split4(i, n);
        return ra(d[q.i3], d[q.i2], d[q.i1], d[q.i0]) !=
               rb(m[q.i3], m[q.i2], m[q.i1], m[q.i0]);
    };
    auto first = find_first_violation(total, any_viol);
    if (!first) {
        out.holds = true;
        out.swept = 2 * total;
        return out;
    }
    if (forward_viol(*first)) {
        out.forward_broken = true;
        out.at = split4(*first, n);
        out.swept = *first + 1;
        return out;
    }
    // A backward-only mismatch; a forward violation may still come later
    // in the forward phase, which precedes everything backward.
    const std::uint64_t base = *first + 1;
    auto later = find_first_violation(total - base,
                                      [&](std::uint64_t k) { return forward_viol(base + k); });
    if (later) {
        out.forward_broken = true;
        out.at = split4(base + *later, n);
        out.swept = base + *later + 1;
        return out;
    }
    out.forward_broken = false;
    out.at = split4(*first, n);
    out.swept = total + *first + 1;
    return out;
}

/// First source pair (a, b) violating pred, in canonical order.
template <class Pred>
std::optional<std::pair<std::size_t, std::size_t>> pair_sweep(std::size_t n, Pred&& pred,
                                                              std::uint64_t& swept) {
    const std::uint64_t total = static_cast<std::uint64_t>(n) * n;
    auto hit = find_first_violation(
        total, [&](std::uint64_t i) { return pred(i / n, i % n); });
    swept = hit ? *hit + 1 : total;
    if (!hit) return std::nullopt;
    return std::pair(static_cast<std::size_t>(*hit / n), static_cast<std::size_t>(*hit % n));
}

} // namespace

Verdict is_subalgebra(const std::vector<Elem>& subset, const FiniteAlgebra& a) {
    if (!a.tabular_backed())
        throw UnsupportedBackingError("subalgebra checks require a tabular algebra");
    std::vector<Elem> sub = subset;
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    std::vector<char> member(a.size(), 0);
    for (Elem e : sub) {
        if (!a.contains(e)) throw PreconditionError("subset element outside the universe");
        member[static_cast<std::size_t>(e)] = 1;
    }
    std::uint64_t swept = 0;
    for (std::size_t oi = 0; oi < a.signature().size(); ++oi) {
        const unsigned arity = a.signature().at(oi).arity;
        std::vector<std::size_t> t(arity, 0);
        while (true) {
            ++swept;
            std::vector<Elem> args(arity);
            for (unsigned i = 0; i < arity; ++i) args[i] = sub[t[i]];
            const Elem out = a.apply(oi, args);
            if (!member[static_cast<std::size_t>(out)]) {
                WitnessTuple w;
                w.add("op", a.signature().at(oi).name);
                for (unsigned i = 0; i < arity; ++i)
                    w.add("arg" + std::to_string(i + 1), a.label(args[i]));
                w.add("escapes-to", a.label(out));
                return Verdict::fail(std::move(w), Qualifier::Exact, swept);
            }
            std::size_t pos = arity;
            while (pos > 0) {
                if (++t[pos - 1] < sub.size()) break;
                t[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return Verdict::pass(Qualifier::Exact, swept);
}

Verdict is_p_subalgebra(const PAlgebra& sub, const PAlgebra& sup) {
    const FiniteAlgebra& s = *sub.algebra;
    const FiniteAlgebra& p = *sup.algebra;
    if (!s.signature().same_as(p.signature()))
        throw SignatureError("p-subalgebra check needs a shared signature");
    if (!s.tabular_backed() || !p.tabular_backed())
        throw UnsupportedBackingError("p-subalgebra checks require tabular algebras");

    // Embed the sub universe by label; failure means it is no carrier
    // subset at all.
    std::vector<Elem> up(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto e = p.element_of(s.label(static_cast<Elem>(i)));
        if (!e)
            throw PreconditionError("carrier is not a subset: '" +
                                    s.label(static_cast<Elem>(i)) + "' is missing above");
        up[i] = *e;
    }

    // The carrier has to be an actual subalgebra: closed, and with the
    // operation tables induced from the parent.
    Verdict closed = is_subalgebra(up, p);
    if (!closed.holds)
        throw PreconditionError("carrier is not a subalgebra: escapes at " +
                                closed.witness->to_string());
    for (std::size_t oi = 0; oi < s.signature().size(); ++oi) {
        const OpSig& op = s.signature().at(oi);
        const std::size_t pi = *p.signature().index_of(op.name);
        std::vector<std::size_t> t(op.arity, 0);
        while (true) {
            std::vector<Elem> sargs(op.arity), pargs(op.arity);
            for (unsigned i = 0; i < op.arity; ++i) {
                sargs[i] = static_cast<Elem>(t[i]);
                pargs[i] = up[t[i]];
            }
            const Elem sval = s.apply(oi, sargs);
            const Elem pval = p.apply(pi, pargs);
            if (up[static_cast<std::size_t>(sval)] != pval)
                throw PreconditionError("carrier is not a subalgebra: operation '" + op.name +
                                        "' disagrees with the parent");
            std::size_t pos = op.arity;
            while (pos > 0) {
                if (++t[pos - 1] < s.size()) break;
                t[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }

    // Verdict proper: the relations must agree on every sub quadruple.
    const Qualifier q = combine(sub.relation->base_qualifier(), sup.relation->base_qualifier());
    std::uint64_t swept = 0;
    const std::size_t n = s.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    ++swept;
                    const bool below = sub.relation->holds(
                        static_cast<Elem>(a), static_cast<Elem>(b), static_cast<Elem>(c),
                        static_cast<Elem>(d));
                    const bool above = sup.relation->holds(up[a], up[b], up[c], up[d]);
                    if (below != above) {
                        WitnessTuple w;
                        w.add("a", s.label(static_cast<Elem>(a)));
                        w.add("b", s.label(static_cast<Elem>(b)));
                        w.add("c", s.label(static_cast<Elem>(c)));
                        w.add("d", s.label(static_cast<Elem>(d)));
                        w.add("holds-below", below ? "yes" : "no");
                        w.add("holds-above", above ? "yes" : "no");
                        return Verdict::fail(std::move(w), q, swept);
                    }
                }
    return Verdict::pass(q, swept);
}

Verdict is_p_homomorphism(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb) {
    require_same(f.source(), pa.algebra, "map source does not match the source p-algebra");
    require_same(f.target(), pb.algebra, "map target does not match the target p-algebra");

    Verdict hom = is_homomorphism(f);
    Qualifier q = combine(hom.qualifier, combine(pa.relation->base_qualifier(),
                                                 pb.relation->base_qualifier()));
    if (!hom.holds) {
        WitnessTuple w;
        w.add("stage", "homomorphism");
        for (auto& s : hom.witness->slots) w.slots.push_back(std::move(s));
        return Verdict::fail(std::move(w), q, hom.swept);
    }

    const std::vector<Elem> dom = pa.algebra->quantifier_stream();
    const std::vector<Elem> img = f.image_of(dom);
    EquivalenceOutcome eq = equivalence_sweep(dom, img, pa.relation->evaluator(),
                                              pb.relation->evaluator(), false);
    if (eq.holds) return Verdict::pass(q, hom.swept + eq.swept);
    WitnessTuple w = quad_slots(*pa.algebra, dom, eq.at);
    w.add("direction", eq.forward_broken ? "=>" : "<=");
    return Verdict::fail(std::move(w), q, hom.swept + eq.swept);
}

Verdict satisfies_aip(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb) {
    require_same(f.source(), pa.algebra, "map source does not match the source p-algebra");
    require_same(f.target(), pb.algebra, "map target does not match the target p-algebra");
    const Qualifier q =
        combine(pa.relation->base_qualifier(), pb.relation->base_qualifier());
    const std::vector<Elem> dom = pa.algebra->quantifier_stream();
    const std::vector<Elem> img = f.image_of(dom);
    EquivalenceOutcome eq = equivalence_sweep(dom, img, pa.relation->evaluator(),
                                              pb.relation->evaluator(), true);
    if (eq.holds) return Verdict::pass(q, eq.swept);
    WitnessTuple w = quad_slots(*pa.algebra, dom, eq.at);
    w.add("direction", "=>");
    return Verdict::fail(std::move(w), q, eq.swept);
}

Verdict is_p_isomorphism(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb) {
    Verdict phom = is_p_homomorphism(f, pa, pb);
    if (!phom.holds) return phom;
    Verdict inj = map_injective(f);
    if (!inj.holds) {
        inj.note = "not injective";
        inj.qualifier = combine(inj.qualifier, phom.qualifier);
        return inj;
    }
    Verdict sur = map_surjective(f);
    if (!sur.holds) {
        sur.note = "not surjective";
        sur.qualifier = combine(sur.qualifier, phom.qualifier);
        return sur;
    }
    return Verdict::pass(phom.qualifier, phom.swept + inj.swept + sur.swept);
}

Verdict is_p_congruence(const Partition& theta, const PAlgebra& pa) {
    if (!theta.carrier()->same_structure(*pa.algebra))
        throw PreconditionError("partition carrier does not match the p-algebra");
    Verdict cong = is_congruence(theta, *pa.algebra);
    const Qualifier q = combine(Qualifier::Exact, pa.relation->base_qualifier());
    if (!cong.holds) {
        WitnessTuple w;
        w.add("stage", "congruence");
        for (auto& s : cong.witness->slots) w.slots.push_back(std::move(s));
        return Verdict::fail(std::move(w), q, cong.swept);
    }

    const auto eval = pa.relation->evaluator();
    const std::size_t n = pa.algebra->size();
    std::uint64_t swept = cong.swept;
    const auto& blocks = theta.blocks();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    if (!eval(static_cast<Elem>(a), static_cast<Elem>(b),
                              static_cast<Elem>(c), static_cast<Elem>(d)))
                        continue;
                    for (Elem a2 : blocks[theta.block_of(static_cast<Elem>(a))])
                        for (Elem b2 : blocks[theta.block_of(static_cast<Elem>(b))])
                            for (Elem c2 : blocks[theta.block_of(static_cast<Elem>(c))])
                                for (Elem d2 : blocks[theta.block_of(static_cast<Elem>(d))]) {
                                    ++swept;
                                    if (eval(a2, b2, c2, d2)) continue;
                                    WitnessTuple w;
                                    w.add("a", pa.algebra->label(static_cast<Elem>(a)));
                                    w.add("b", pa.algebra->label(static_cast<Elem>(b)));
                                    w.add("c", pa.algebra->label(static_cast<Elem>(c)));
                                    w.add("d", pa.algebra->label(static_cast<Elem>(d)));
                                    w.add("a'", pa.algebra->label(a2));
                                    w.add("b'", pa.algebra->label(b2));
                                    w.add("c'", pa.algebra->label(c2));
                                    w.add("d'", pa.algebra->label(d2));
                                    return Verdict::fail(std::move(w), q, swept);
                                }
                }
    return Verdict::pass(q, swept);
}

Verdict kernel_is_p_congruence(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb) {
    Verdict phom = is_p_homomorphism(f, pa, pb);
    if (!phom.holds)
        throw PreconditionError("kernel theorem needs a p-homomorphism; it fails at " +
                                phom.witness->to_string());
    Partition ker = kernel(f);
    Verdict pcong = is_p_congruence(ker, pa);
    if (!pcong.holds)
        throw InternalInconsistencyError(
            "kernel of a p-homomorphism failed the p-congruence check at " +
            pcong.witness->to_string());
    Verdict out = Verdict::pass(combine(phom.qualifier, pcong.qualifier),
                                phom.swept + pcong.swept);
    out.note = "kernel has " + std::to_string(ker.blocks().size()) + " blocks";
    return out;
}

Verdict is_p_functor(const Mapping& f, const ProportionRelation& r) {
    require_same(r.source(), f.source(), "relation source does not match the map");
    require_same(r.target(), f.target(), "relation target does not match the map");
    const std::vector<Elem> dom = f.source()->quantifier_stream();
    const std::vector<Elem> img = f.image_of(dom);
    const auto eval = r.evaluator();
    std::uint64_t swept = 0;
    auto hit = pair_sweep(
        dom.size(),
        [&](std::size_t ia, std::size_t ib) {
            return !eval(dom[ia], dom[ib], img[ia], img[ib]);
        },
        swept);
    if (!hit) return Verdict::pass(r.base_qualifier(), swept);
    WitnessTuple w;
    w.add("a", f.source()->label(dom[hit->first]));
    w.add("b", f.source()->label(dom[hit->second]));
    w.add("F(a)", f.target()->label(img[hit->first]));
    w.add("F(b)", f.target()->label(img[hit->second]));
    return Verdict::fail(std::move(w), r.base_qualifier(), swept);
}

Verdict aip_from_pfunctor(const Mapping& f, const PAlgebra& pa) {
    require_same(f.source(), pa.algebra, "map is not an endomap of the p-algebra");
    require_same(f.target(), pa.algebra, "map is not an endomap of the p-algebra");
    Verdict sym = check_inner_symmetry(*pa.relation);
    if (!sym.holds)
        throw PreconditionError("inner symmetry fails at " + sym.witness->to_string());
    Verdict trans = check_p_transitivity(*pa.relation);
    if (!trans.holds)
        throw PreconditionError("p-transitivity fails at " + trans.witness->to_string());
    Verdict pf = is_p_functor(f, *pa.relation);
    if (!pf.holds)
        throw PreconditionError("map is not a p-functor; fails at " +
                                pf.witness->to_string());
    Verdict aip = satisfies_aip(f, pa, pa);
    if (!aip.holds)
        throw InternalInconsistencyError(
            "p-functor on a symmetric p-transitive algebra failed the inference "
            "principle at " +
            aip.witness->to_string());
    return Verdict::pass(aip.qualifier, sym.swept + trans.swept + pf.swept + aip.swept);
}

Verdict is_p_idempotent(const Mapping& f, const PAlgebra& pa) {
    require_same(f.source(), pa.algebra, "map is not an endomap of the p-algebra");
    require_same(f.target(), pa.algebra, "map is not an endomap of the p-algebra");
    const std::vector<Elem> dom = pa.algebra->quantifier_stream();
    const std::vector<Elem> f1 = f.image_of(dom);
    const std::vector<Elem> f2 = f.image_of(f1);
    const auto eval = pa.relation->evaluator();
    std::uint64_t swept = 0;
    auto hit = pair_sweep(
        dom.size(),
        [&](std::size_t ia, std::size_t ib) { return !eval(f1[ia], f1[ib], f2[ia], f2[ib]); },
        swept);
    if (!hit) return Verdict::pass(pa.relation->base_qualifier(), swept);
    WitnessTuple w;
    w.add("a", pa.algebra->label(dom[hit->first]));
    w.add("b", pa.algebra->label(dom[hit->second]));
    w.add("F(a)", pa.algebra->label(f1[hit->first]));
    w.add("F(b)", pa.algebra->label(f1[hit->second]));
    return Verdict::fail(std::move(w), pa.relation->base_qualifier(), swept);
}

Verdict power_proportionality(const Mapping& f, const PAlgebra& pa, unsigned m, unsigned n) {
    require_same(f.source(), pa.algebra, "map is not an endomap of the p-algebra");
    require_same(f.target(), pa.algebra, "map is not an endomap of the p-algebra");
    Verdict sym = check_inner_symmetry(*pa.relation);
    if (!sym.holds)
        throw PreconditionError("inner symmetry fails at " + sym.witness->to_string());
    Verdict trans = check_p_transitivity(*pa.relation);
    if (!trans.holds)
        throw PreconditionError("p-transitivity fails at " + trans.witness->to_string());
    Verdict idem = is_p_idempotent(f, pa);
    if (!idem.holds)
        throw PreconditionError("map is not p-idempotent; fails at " +
                                idem.witness->to_string());

    const std::vector<Elem> dom = pa.algebra->quantifier_stream();
    std::vector<Elem> fm = dom, fn = dom;
    for (unsigned i = 0; i < m; ++i) fm = f.image_of(fm);
    for (unsigned i = 0; i < n; ++i) fn = f.image_of(fn);
    const auto eval = pa.relation->evaluator();
    std::uint64_t swept = 0;
    auto hit = pair_sweep(
        dom.size(),
        [&](std::size_t ia, std::size_t ib) { return !eval(fm[ia], fm[ib], fn[ia], fn[ib]); },
        swept);
    if (!hit) return Verdict::pass(pa.relation->base_qualifier(), swept);
    WitnessTuple w;
    w.add("a", pa.algebra->label(dom[hit->first]));
    w.add("b", pa.algebra->label(dom[hit->second]));
    w.add("m", std::to_string(m));
    w.add("n", std::to_string(n));
    return Verdict::fail(std::move(w), pa.relation->base_qualifier(), swept);
}

Verdict check_phom_monoid_closure(const std::vector<Mapping>& fs, const PAlgebra& pa) {
    std::uint64_t swept = 0;
    Qualifier q = pa.relation->base_qualifier();
    for (const Mapping& f : fs) {
        Verdict v = is_p_homomorphism(f, pa, pa);
        if (!v.holds)
            throw PreconditionError("'" + f.name() + "' is not a p-homomorphism; fails at " +
                                    v.witness->to_string());
        swept += v.swept;
    }
    Verdict idv = is_p_homomorphism(Mapping::identity(pa.algebra), pa, pa);
    if (!idv.holds)
        throw InternalInconsistencyError("identity failed the p-homomorphism check at " +
                                         idv.witness->to_string());
    swept += idv.swept;
    for (const Mapping& f : fs)
        for (const Mapping& g : fs) {
            Mapping comp = compose(f, g);
            Verdict v = is_p_homomorphism(comp, pa, pa);
            swept += v.swept;
            if (!v.holds)
                throw InternalInconsistencyError("composite '" + comp.name() +
                                                 "' of p-homomorphisms failed at " +
                                                 v.witness->to_string());
        }
    return Verdict::pass(q, swept);
}

Verdict check_pfunctor_monoid_closure(const std::vector<Mapping>& fs, const PAlgebra& pa) {
    std::uint64_t swept = 0;
    for (const Mapping& f : fs) {
        Verdict v = is_p_functor(f, *pa.relation);
        if (!v.holds)
            throw PreconditionError("'" + f.name() + "' is not a p-functor; fails at " +
                                    v.witness->to_string());
        swept += v.swept;
    }
    // Composition closure is guaranteed by p-transitivity, identity
    // neutrality by reflexivity.  Without the axiom, a failure is a
    // counterexample exhibit, not an inconsistency.
    const bool trans = check_p_transitivity(*pa.relation).holds;
    const bool refl = check_reflexivity(*pa.relation).holds;
    const Qualifier q = pa.relation->base_qualifier();

    Verdict idv = is_p_functor(Mapping::identity(pa.algebra), *pa.relation);
    swept += idv.swept;
    if (!idv.holds) {
        if (refl)
            throw InternalInconsistencyError(
                "identity failed the p-functor check on a reflexive relation at " +
                idv.witness->to_string());
        WitnessTuple w;
        w.add("composite", "id");
        for (auto& s : idv.witness->slots) w.slots.push_back(std::move(s));
        return Verdict::fail(std::move(w), q, swept,
                             "closure failure on a non-reflexive relation");
    }
    for (const Mapping& f : fs)
        for (const Mapping& g : fs) {
            Mapping comp = compose(f, g);
            Verdict v = is_p_functor(comp, *pa.relation);
            swept += v.swept;
            if (!v.holds) {
                if (trans)
                    throw InternalInconsistencyError(
                        "composite '" + comp.name() +
                        "' of p-functors failed on a p-transitive relation at " +
                        v.witness->to_string());
                WitnessTuple w;
                w.add("composite", comp.name());
                for (auto& s : v.witness->slots) w.slots.push_back(std::move(s));
                return Verdict::fail(std::move(w), q, swept,
                                     "closure failure on a non-p-transitive relation");
            }
        }
    return Verdict::pass(q, swept);
}

namespace {

Verdict one_direction(const Mapping& f, const Mapping& g, const ProportionRelation& rel) {
    const std::vector<Elem> dom = f.source()->quantifier_stream();
    const std::vector<Elem> fi = f.image_of(dom);
    const std::vector<Elem> gi = g.image_of(dom);
    const auto eval = rel.evaluator();
    std::uint64_t swept = 0;
    auto hit = pair_sweep(
        dom.size(),
        [&](std::size_t ia, std::size_t ib) { return !eval(fi[ia], fi[ib], gi[ia], gi[ib]); },
        swept);
    if (!hit) return Verdict::pass(rel.base_qualifier(), swept);
    WitnessTuple w;
    w.add("a", f.source()->label(dom[hit->first]));
    w.add("b", f.source()->label(dom[hit->second]));
    w.add("F(a)", f.target()->label(fi[hit->first]));
    w.add("F(b)", f.target()->label(fi[hit->second]));
    w.add("G(a)", g.target()->label(gi[hit->first]));
    w.add("G(b)", g.target()->label(gi[hit->second]));
    return Verdict::fail(std::move(w), rel.base_qualifier(), swept);
}

} // namespace

FunctionalCompareReport functional_compare(const Mapping& f, const Mapping& g,
                                           const ProportionRelation& r,
                                           const ProportionRelation* directed) {
    require_same(f.source(), g.source(), "maps need a common source");
    require_same(f.target(), g.target(), "maps need a common target");
    require_same(r.source(), f.target(), "relation must live on the target");
    if (!r.endorelation())
        throw PreconditionError("functional comparison needs a relation on (target, target)");
    const ProportionRelation& d = directed ? *directed : r;
    if (directed) {
        require_same(d.source(), f.target(), "directed relation must live on the target");
        if (!d.endorelation())
            throw PreconditionError("directed relation must live on (target, target)");
    }

    FunctionalCompareReport rep{one_direction(f, g, d), one_direction(g, f, d),
                                Verdict::pass(Qualifier::Exact)};
    const Qualifier q = combine(rep.f_to_g.qualifier, rep.g_to_f.qualifier);
    if (rep.f_to_g.holds && rep.g_to_f.holds) {
        rep.both = Verdict::pass(q, rep.f_to_g.swept + rep.g_to_f.swept);
    } else {
        const Verdict& bad = rep.f_to_g.holds ? rep.g_to_f : rep.f_to_g;
        WitnessTuple w;
        w.add("direction", rep.f_to_g.holds ? "G->F" : "F->G");
        for (const auto& s : bad.witness->slots) w.slots.push_back(s);
        rep.both = Verdict::fail(std::move(w), q, rep.f_to_g.swept + rep.g_to_f.swept);
    }
    return rep;
}

Verdict pfunctor_transfer(const Mapping& f, const Mapping& g, const ProportionRelation& r_ab,
                          const ProportionRelation& r_bb) {
    require_same(f.source(), g.source(), "maps need a common source");
    require_same(f.target(), g.target(), "maps need a common target");
    require_same(r_bb.source(), f.target(), "R_BB must live on the target");
    if (!r_bb.endorelation())
        throw PreconditionError("R_BB must live on (target, target)");
    Verdict trans = check_p_transitivity(r_bb);
    if (!trans.holds)
        throw PreconditionError("R_BB is not p-transitive; fails at " +
                                trans.witness->to_string());
    Verdict pf = is_p_functor(f, r_ab);
    if (!pf.holds)
        throw PreconditionError("'" + f.name() + "' is not a p-functor; fails at " +
                                pf.witness->to_string());
    Verdict fg = one_direction(f, g, r_bb);
    if (!fg.holds)
        throw PreconditionError("F -> G fails under R_BB at " + fg.witness->to_string());
    Verdict out = is_p_functor(g, r_ab);
    if (!out.holds)
        throw InternalInconsistencyError("transfer target failed the p-functor check at " +
                                         out.witness->to_string());
    return Verdict::pass(combine(out.qualifier, fg.qualifier),
                         trans.swept + pf.swept + fg.swept + out.swept);
}

Verdict pfunctors_functionally_proportional(const Mapping& f, const Mapping& g,
                                            const PAlgebra& pa) {
    require_same(f.source(), pa.algebra, "maps must be endomaps of the p-algebra");
    require_same(f.target(), pa.algebra, "maps must be endomaps of the p-algebra");
    require_same(g.source(), pa.algebra, "maps must be endomaps of the p-algebra");
    require_same(g.target(), pa.algebra, "maps must be endomaps of the p-algebra");
    Verdict sym = check_inner_symmetry(*pa.relation);
    if (!sym.holds)
        throw PreconditionError("inner symmetry fails at " + sym.witness->to_string());
    Verdict trans = check_p_transitivity(*pa.relation);
    if (!trans.holds)
        throw PreconditionError("p-transitivity fails at " + trans.witness->to_string());
    for (const Mapping* m : {&f, &g}) {
        Verdict pf = is_p_functor(*m, *pa.relation);
        if (!pf.holds)
            throw PreconditionError("'" + m->name() + "' is not a p-functor; fails at " +
                                    pf.witness->to_string());
    }
    FunctionalCompareReport rep = functional_compare(f, g, *pa.relation);
    if (!rep.both.holds)
        throw InternalInconsistencyError(
            "p-functors on a symmetric p-transitive algebra are not functionally "
            "proportional at " +
            rep.both.witness->to_string());
    return rep.both;
}

CompositionFpReport composition_respects_fp(const Mapping& f, const Mapping& g,
                                            const Mapping& h, const ProportionRelation& r) {
    require_same(f.source(), g.source(), "maps need a common source");
    require_same(f.target(), g.target(), "maps need a common target");
    require_same(h.target(), f.source(), "H must land in the maps' source");

    CompositionFpReport rep{functional_compare(f, g, r).both,
                            functional_compare(compose(h, f), compose(h, g), r).both,
                            Verdict::pass(Qualifier::Exact), std::nullopt, false};
    const Qualifier q = combine(rep.f_g.qualifier, rep.fh_gh.qualifier);
    if (rep.f_g.holds && !rep.fh_gh.holds)
        rep.forward = Verdict::fail(*rep.fh_gh.witness, q, rep.fh_gh.swept,
                                    "F::G holds but F.H::G.H fails");
    else
        rep.forward = Verdict::pass(q, rep.f_g.swept + rep.fh_gh.swept);

    rep.h_surjective = map_surjective(h).holds;
    if (rep.h_surjective) {
        if (rep.fh_gh.holds && !rep.f_g.holds)
            rep.converse = Verdict::fail(*rep.f_g.witness, q, rep.f_g.swept,
                                         "F.H::G.H holds but F::G fails under surjective H");
        else
            rep.converse = Verdict::pass(q, rep.f_g.swept + rep.fh_gh.swept);
    }
    return rep;
}

} // namespace propalg
