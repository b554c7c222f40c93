#include "propalg/relation.hpp"

#include <algorithm>

namespace propalg {

namespace {

constexpr std::size_t kMaxExtensionalUniverse = 32;
constexpr unsigned kMaxWitnessDepth = 12;

using I128 = __int128;

WitnessTuple quad_witness(const FiniteAlgebra& src, const FiniteAlgebra& tgt, Elem a, Elem b,
                          Elem c, Elem d) {
    WitnessTuple w;
    w.add("a", src.label(a));
    w.add("b", src.label(b));
    w.add("c", tgt.label(c));
    w.add("d", tgt.label(d));
    return w;
}

} // namespace

RelationPtr ProportionRelation::extensional(AlgebraPtr source, AlgebraPtr target,
                                            std::vector<Quad> quads, bool symmetric_closure,
                                            std::string name) {
    if (!source->tabular_backed() || !target->tabular_backed())
        throw UnsupportedBackingError("extensional relations need tabular algebras");
    if (source->size() > kMaxExtensionalUniverse || target->size() > kMaxExtensionalUniverse)
        throw PreconditionError("extensional relations support universes of at most " +
                                std::to_string(kMaxExtensionalUniverse) + " elements");
    auto r = std::shared_ptr<ProportionRelation>(new ProportionRelation());
    r->kind_ = Kind::Extensional;
    r->name_ = std::move(name);
    r->src_ = std::move(source);
    r->tgt_ = std::move(target);
    for (const Quad& q : quads)
        if (!r->src_->contains(q.a) || !r->src_->contains(q.b) || !r->tgt_->contains(q.c) ||
            !r->tgt_->contains(q.d))
            throw PreconditionError("quadruple element outside the declared universes");
    r->sym_closure_ = symmetric_closure && same_algebra(r->src_, r->tgt_);
    if (r->sym_closure_) {
        const std::size_t n = quads.size();
        for (std::size_t i = 0; i < n; ++i)
            quads.push_back({quads[i].c, quads[i].d, quads[i].a, quads[i].b});
    }
    std::sort(quads.begin(), quads.end());
    quads.erase(std::unique(quads.begin(), quads.end()), quads.end());
    r->quads_ = std::move(quads);

    const std::size_t ns = r->src_->size(), nt = r->tgt_->size();
    r->bits_.assign(ns * ns * nt * nt, 0);
    for (const Quad& q : r->quads_) {
        const std::size_t idx =
            ((static_cast<std::size_t>(q.a) * ns + static_cast<std::size_t>(q.b)) * nt +
             static_cast<std::size_t>(q.c)) *
                nt +
            static_cast<std::size_t>(q.d);
        r->bits_[idx] = 1;
    }
    return r;
}

RelationPtr ProportionRelation::difference(AlgebraPtr algebra, std::string name) {
    if (algebra->backing() != Backing::ExactInteger)
        throw UnsupportedBackingError(
            "the difference relation lives on an integer-formula algebra");
    auto r = std::shared_ptr<ProportionRelation>(new ProportionRelation());
    r->kind_ = Kind::Difference;
    r->name_ = std::move(name);
    r->src_ = algebra;
    r->tgt_ = std::move(algebra);
    return r;
}

RelationPtr ProportionRelation::boolean_xor(AlgebraPtr source, AlgebraPtr target,
                                            std::string name) {
    if (!source->tabular_backed() || source->size() != 2 || !target->tabular_backed() ||
        target->size() != 2)
        throw PreconditionError("the boolean-xor relation needs 2-element universes");
    auto r = std::shared_ptr<ProportionRelation>(new ProportionRelation());
    r->kind_ = Kind::BooleanXor;
    r->name_ = std::move(name);
    r->src_ = std::move(source);
    r->tgt_ = std::move(target);
    return r;
}

RelationPtr ProportionRelation::witness(AlgebraPtr source, AlgebraPtr target, unsigned depth,
                                        std::string name) {
    if (depth == 0 || depth > kMaxWitnessDepth)
        throw PreconditionError("witness depth must lie in [1, " +
                                std::to_string(kMaxWitnessDepth) + "]");
    auto r = std::shared_ptr<ProportionRelation>(new ProportionRelation());
    r->kind_ = Kind::Witness;
    r->name_ = std::move(name);
    r->src_ = std::move(source);
    r->tgt_ = std::move(target);
    r->depth_ = depth;
    r->catalog_ = std::make_shared<TermFunctionCatalog>(r->src_, r->tgt_, depth);
    for (const TermFunctionPair& f : r->catalog_->functions()) {
        if (!f.source_injective) continue;
        if (r->src_->backing() == Backing::ExactInteger)
            r->aff_inj_.push_back({f.affine.scale, f.affine.offset});
        else
            r->fn_inj_.push_back({f.src_table.data(), f.tgt_table.data()});
    }
    return r;
}

bool ProportionRelation::holds(Elem a, Elem b, Elem c, Elem d) const {
    if (!src_->contains(a) || !src_->contains(b) || !tgt_->contains(c) || !tgt_->contains(d))
        throw PreconditionError("proportion query element out of range");
    switch (kind_) {
    case Kind::Difference:
        return I128(a) - I128(b) == I128(c) - I128(d);
    case Kind::BooleanXor:
        return (a == b) == (c == d);
    case Kind::Extensional: {
        const std::size_t ns = src_->size(), nt = tgt_->size();
        return bits_[((static_cast<std::size_t>(a) * ns + static_cast<std::size_t>(b)) * nt +
                      static_cast<std::size_t>(c)) *
                         nt +
                     static_cast<std::size_t>(d)] != 0;
    }
    case Kind::Witness:
        if (src_->backing() == Backing::ExactInteger) {
            for (const auto& f : aff_inj_)
                if (I128(f.k) * a + f.m == b && I128(f.k) * c + f.m == d) return true;
            return false;
        }
        for (const auto& f : fn_inj_)
            if (f.src[static_cast<std::size_t>(a)] == b &&
                f.tgt[static_cast<std::size_t>(c)] == d)
                return true;
        return false;
    }
    return false;
}

std::optional<Term> ProportionRelation::witness_term(Elem a, Elem b, Elem c, Elem d) const {
    if (kind_ != Kind::Witness)
        throw PreconditionError("witness terms exist only for witness relations");
    if (!src_->contains(a) || !src_->contains(b) || !tgt_->contains(c) || !tgt_->contains(d))
        throw PreconditionError("proportion query element out of range");
    const bool exact = src_->backing() == Backing::ExactInteger;
    for (std::size_t i = 0; i < catalog_->functions().size(); ++i) {
        const TermFunctionPair& f = catalog_->functions()[i];
        if (!f.source_injective) continue;
        bool cert;
        if (exact)
            cert = I128(f.affine.scale) * a + f.affine.offset == b &&
                   I128(f.affine.scale) * c + f.affine.offset == d;
        else
            cert = f.src_table[static_cast<std::size_t>(a)] == b &&
                   f.tgt_table[static_cast<std::size_t>(c)] == d;
        if (cert) return f.rep;
    }
    return std::nullopt;
}

std::uint64_t ProportionRelation::terms_enumerated() const {
    return catalog_ ? catalog_->functions().size() : 0;
}

Qualifier ProportionRelation::base_qualifier() const {
    if (kind_ == Kind::Witness) return Qualifier::WitnessDepthBounded;
    if (src_->backing() == Backing::ExactInteger || tgt_->backing() == Backing::ExactInteger)
        return Qualifier::WindowBounded;
    return Qualifier::Exact;
}

ProportionRelation::Eval ProportionRelation::evaluator() const {
    Eval e;
    e.kind = kind_;
    if (kind_ == Kind::Extensional) {
        e.bits = bits_.data();
        e.ns = src_->size();
        e.nt = tgt_->size();
    } else if (kind_ == Kind::Witness) {
        if (!aff_inj_.empty() || src_->backing() == Backing::ExactInteger) {
            e.aff = aff_inj_.data();
            e.naff = aff_inj_.size();
        } else {
            e.fns = fn_inj_.data();
            e.nfns = fn_inj_.size();
        }
    }
    return e;
}

RelationPtr ProportionRelation::restricted_to(const AlgebraPtr& sub_source,
                                              const AlgebraPtr& sub_target) const {
    auto embed = [](const FiniteAlgebra& sub, const FiniteAlgebra& sup) {
        std::vector<Elem> up(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            auto e = sup.element_of(sub.label(static_cast<Elem>(i)));
            if (!e)
                throw PreconditionError("sub-universe element '" +
                                        sub.label(static_cast<Elem>(i)) +
                                        "' is not in the parent universe");
            up[i] = *e;
        }
        return up;
    };
    const std::vector<Elem> up_s = embed(*sub_source, *src_);
    const std::vector<Elem> up_t = embed(*sub_target, *tgt_);
    std::vector<Quad> quads;
    for (std::size_t a = 0; a < up_s.size(); ++a)
        for (std::size_t b = 0; b < up_s.size(); ++b)
            for (std::size_t c = 0; c < up_t.size(); ++c)
                for (std::size_t d = 0; d < up_t.size(); ++d)
                    if (holds(up_s[a], up_s[b], up_t[c], up_t[d]))
                        quads.push_back({static_cast<Elem>(a), static_cast<Elem>(b),
                                         static_cast<Elem>(c), static_cast<Elem>(d)});
    return extensional(sub_source, sub_target, std::move(quads), false,
                       name_.empty() ? "" : name_ + "|sub");
}

void RelationFamily::add(RelationPtr r) {
    auto key = std::pair(r->source()->name(), r->target()->name());
    rels_[std::move(key)] = std::move(r);
}

bool RelationFamily::has(const std::string& a, const std::string& b) const {
    return rels_.count({a, b}) != 0;
}

const RelationPtr& RelationFamily::at(const std::string& a, const std::string& b) const {
    auto it = rels_.find({a, b});
    if (it == rels_.end())
        throw PreconditionError("the relation family has no entry for (" + a + ", " + b + ")");
    return it->second;
}

// --- axiom checkers ------------------------------------------------------

namespace {

void require_endo(const ProportionRelation& r, const char* what) {
    if (!r.endorelation())
        throw PreconditionError(std::string(what) +
                                " needs source = target; use check_cross_symmetry for "
                                "heterogeneous relations");
}

} // namespace

Verdict check_inner_symmetry(const ProportionRelation& r) {
    require_endo(r, "inner symmetry");
    switch (r.kind()) {
    case ProportionRelation::Kind::Difference:
        return Verdict::pass(Qualifier::Exact, 0, "a-b = c-d is symmetric as an equality");
    case ProportionRelation::Kind::Witness:
        return Verdict::pass(Qualifier::Exact, 0,
                             "any term certifying a:b::c:d certifies c:d::a:b");
    default:
        break;
    }
    const auto eval = r.evaluator();
    const std::vector<Elem> dom = r.source()->quantifier_stream();
    const std::size_t n = dom.size();
    std::uint64_t swept = 0;
    for (std::size_t ia = 0; ia < n; ++ia)
        for (std::size_t ib = 0; ib < n; ++ib)
            for (std::size_t ic = 0; ic < n; ++ic)
                for (std::size_t id = 0; id < n; ++id) {
                    ++swept;
                    const Elem a = dom[ia], b = dom[ib], c = dom[ic], d = dom[id];
                    if (!eval(a, b, c, d) && eval(c, d, a, b))
                        return Verdict::fail(quad_witness(*r.source(), *r.target(), a, b, c, d),
                                             r.base_qualifier(), swept,
                                             "mirror quadruple present, this one missing");
                }
    return Verdict::pass(r.base_qualifier(), swept);
}

Verdict check_cross_symmetry(const RelationFamily& fam, const std::string& a,
                             const std::string& b) {
    const ProportionRelation& fwd = *fam.at(a, b);
    const ProportionRelation& bwd = *fam.at(b, a);
    if (!same_algebra(fwd.source(), bwd.target()) || !same_algebra(fwd.target(), bwd.source()))
        throw PreconditionError("relation family entries for (" + a + ", " + b +
                                ") do not mirror each other's algebras");
    const auto ef = fwd.evaluator();
    const auto eb = bwd.evaluator();
    const std::vector<Elem> da = fwd.source()->quantifier_stream();
    const std::vector<Elem> db = fwd.target()->quantifier_stream();
    std::uint64_t swept = 0;
    for (Elem x : da)
        for (Elem y : da)
            for (Elem u : db)
                for (Elem v : db) {
                    ++swept;
                    if (ef(x, y, u, v) != eb(u, v, x, y))
                        return Verdict::fail(quad_witness(*fwd.source(), *fwd.target(), x, y,
                                                          u, v),
                                             combine(fwd.base_qualifier(),
                                                     bwd.base_qualifier()),
                                             swept);
                }
    return Verdict::pass(combine(fwd.base_qualifier(), bwd.base_qualifier()), swept);
}

Verdict check_reflexivity(const ProportionRelation& r) {
    require_endo(r, "reflexivity");
    switch (r.kind()) {
    case ProportionRelation::Kind::Difference:
        return Verdict::pass(Qualifier::Exact, 0, "a-b = a-b");
    case ProportionRelation::Kind::Witness:
        return Verdict::pass(Qualifier::Exact, 0, "the identity term z certifies a:b::a:b");
    default:
        break;
    }
    const auto eval = r.evaluator();
    const std::vector<Elem> dom = r.source()->quantifier_stream();
    std::uint64_t swept = 0;
    for (Elem a : dom)
        for (Elem b : dom) {
            ++swept;
            if (!eval(a, b, a, b)) {
                WitnessTuple w;
                w.add("a", r.source()->label(a));
                w.add("b", r.source()->label(b));
                return Verdict::fail(std::move(w), r.base_qualifier(), swept);
            }
        }
    return Verdict::pass(r.base_qualifier(), swept);
}

Verdict check_determinism(const ProportionRelation& r) {
    require_endo(r, "determinism");
    switch (r.kind()) {
    case ProportionRelation::Kind::Difference:
        return Verdict::pass(Qualifier::Exact, 0, "a-a = a-d forces d = a");
    case ProportionRelation::Kind::Witness:
        return Verdict::pass(Qualifier::Exact, 0,
                             "witnesses are functions: t(a) = a and t(a) = d force d = a");
    default:
        break;
    }
    const auto eval = r.evaluator();
    const std::vector<Elem> dom = r.source()->quantifier_stream();
    std::uint64_t swept = 0;
    for (Elem a : dom)
        for (Elem d : dom) {
            ++swept;
            if (d != a && eval(a, a, a, d)) {
                WitnessTuple w;
                w.add("a", r.source()->label(a));
                w.add("d", r.source()->label(d));
                return Verdict::fail(std::move(w), r.base_qualifier(), swept);
            }
        }
    return Verdict::pass(r.base_qualifier(), swept);
}

Verdict check_p_transitivity(const ProportionRelation& r) {
    require_endo(r, "p-transitivity");
    switch (r.kind()) {
    case ProportionRelation::Kind::Difference:
        return Verdict::pass(Qualifier::Exact, 0,
                             "a-b = c-d and c-d = e-f chain to a-b = e-f");
    default:
        break;
    }
    const auto eval = r.evaluator();
    const std::vector<Elem> dom = r.source()->quantifier_stream();
    const std::size_t n = dom.size();
    std::uint64_t swept = 0;
    // Only satisfied antecedents can take part in a violation, so the
    // sweep skips quadruples outside the relation; the first violating
    // 6-tuple in canonical order is unaffected.
    for (std::size_t ia = 0; ia < n; ++ia)
        for (std::size_t ib = 0; ib < n; ++ib)
            for (std::size_t ic = 0; ic < n; ++ic)
                for (std::size_t id = 0; id < n; ++id) {
                    ++swept;
                    const Elem a = dom[ia], b = dom[ib], c = dom[ic], d = dom[id];
                    if (!eval(a, b, c, d)) continue;
                    for (std::size_t ie = 0; ie < n; ++ie)
                        for (std::size_t jf = 0; jf < n; ++jf) {
                            const Elem e = dom[ie], f = dom[jf];
                            if (eval(c, d, e, f) && !eval(a, b, e, f)) {
                                WitnessTuple w;
                                w.add("a", r.source()->label(a));
                                w.add("b", r.source()->label(b));
                                w.add("c", r.source()->label(c));
                                w.add("d", r.source()->label(d));
                                w.add("e", r.source()->label(e));
                                w.add("f", r.source()->label(f));
                                return Verdict::fail(std::move(w), r.base_qualifier(), swept);
                            }
                        }
                }
    return Verdict::pass(r.base_qualifier(), swept);
}

} // namespace propalg
