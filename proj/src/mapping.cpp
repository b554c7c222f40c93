#include "propalg/mapping.hpp"

#include <algorithm>
#include <map>

namespace propalg {

namespace {

Elem parity_of(Elem e) { return ((e % 2) + 2) % 2; }

bool next_tuple(std::vector<std::size_t>& idx, std::size_t radix) {
    for (std::size_t pos = idx.size(); pos > 0; --pos) {
        if (++idx[pos - 1] < radix) return true;
        idx[pos - 1] = 0;
    }
    return false;
}

} // namespace

Mapping::Mapping(AlgebraPtr source, AlgebraPtr target, Form form, std::string name)
    : src_(std::move(source)), tgt_(std::move(target)), form_(std::move(form)),
      name_(std::move(name)) {
    if (auto* g = std::get_if<Graph>(&form_)) {
        if (!src_->tabular_backed())
            throw UnsupportedBackingError("graph-backed maps need a tabular source");
        if (g->images.size() != src_->size())
            throw PreconditionError("map '" + name_ + "' is not total");
        for (Elem v : g->images)
            if (!tgt_->contains(v))
                throw PreconditionError("map '" + name_ + "' leaves the target universe");
    } else if (auto* a = std::get_if<Affine>(&form_)) {
        if (src_->backing() != Backing::ExactInteger ||
            tgt_->backing() != Backing::ExactInteger || src_->int_kind() != tgt_->int_kind())
            throw UnsupportedBackingError(
                "affine maps run between matching integer-formula algebras");
        if (a->scale != 1 && a->scale != -1)
            throw PreconditionError("affine map scale must be 1 or -1");
        if (src_->int_kind() == IntKind::NatSucc && (a->scale != 1 || a->offset < 0))
            throw PreconditionError("map '" + name_ + "' is not total on the naturals");
    } else {
        auto& p = std::get<Parity>(form_);
        if (src_->backing() != Backing::ExactInteger || !tgt_->tabular_backed())
            throw UnsupportedBackingError("parity maps run from an integer-formula algebra "
                                          "into a tabular one");
        for (Elem v : p.post)
            if (!tgt_->contains(v))
                throw PreconditionError("map '" + name_ + "' leaves the target universe");
    }
}

Mapping Mapping::from_graph(AlgebraPtr source, AlgebraPtr target, std::vector<Elem> images,
                            std::string name) {
    return Mapping(std::move(source), std::move(target), Graph{std::move(images)},
                   std::move(name));
}

Mapping Mapping::identity(AlgebraPtr a, std::string name) {
    if (a->backing() == Backing::ExactInteger)
        return Mapping(a, a, Affine{1, 0}, std::move(name));
    std::vector<Elem> img(a->size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Elem>(i);
    return Mapping(a, a, Graph{std::move(img)}, std::move(name));
}

Mapping Mapping::translate(AlgebraPtr a, Elem k, std::string name) {
    if (a->backing() != Backing::ExactInteger)
        throw UnsupportedBackingError("translate needs an integer-formula algebra");
    if (name.empty()) name = "translate" + std::to_string(k);
    return Mapping(a, a, Affine{1, k}, std::move(name));
}

Mapping Mapping::negation(AlgebraPtr a, std::string name) {
    if (a->backing() == Backing::ExactInteger) {
        if (a->int_kind() != IntKind::IntPlus)
            throw PreconditionError("negation is not total on the naturals");
        return Mapping(a, a, Affine{-1, 0}, std::move(name));
    }
    if (a->size() != 2)
        throw PreconditionError("tabular negation needs a 2-element universe");
    return Mapping(a, a, Graph{{1, 0}}, std::move(name));
}

Mapping Mapping::mod2(AlgebraPtr source, AlgebraPtr target, std::string name) {
    if (!target->tabular_backed() || target->size() != 2)
        throw PreconditionError("mod2 needs a 2-element tabular target");
    return Mapping(std::move(source), std::move(target), Parity{{0, 1}}, std::move(name));
}

Elem Mapping::apply(Elem e) const {
    if (!src_->contains(e)) throw PreconditionError("element outside the source universe");
    if (auto* g = std::get_if<Graph>(&form_)) return g->images[static_cast<std::size_t>(e)];
    if (auto* a = std::get_if<Affine>(&form_))
        return checked_add(checked_mul(a->scale, e), a->offset);
    return std::get<Parity>(form_).post[static_cast<std::size_t>(parity_of(e))];
}

std::vector<Elem> Mapping::image_of(const std::vector<Elem>& elems) const {
    std::vector<Elem> out;
    out.reserve(elems.size());
    for (Elem e : elems) out.push_back(apply(e));
    return out;
}

bool operator==(const Mapping& f, const Mapping& g) {
    if (!same_algebra(f.src_, g.src_) || !same_algebra(f.tgt_, g.tgt_)) return false;
    if (f.form_.index() != g.form_.index()) return false;
    if (auto* a = std::get_if<Mapping::Graph>(&f.form_))
        return a->images == std::get<Mapping::Graph>(g.form_).images;
    if (auto* a = std::get_if<Mapping::Affine>(&f.form_)) {
        const auto& b = std::get<Mapping::Affine>(g.form_);
        return a->scale == b.scale && a->offset == b.offset;
    }
    return std::get<Mapping::Parity>(f.form_).post == std::get<Mapping::Parity>(g.form_).post;
}

Mapping compose(const Mapping& f, const Mapping& g) {
    if (!same_algebra(f.target(), g.source()))
        throw PreconditionError("composition domain mismatch: target of '" + f.name() +
                                "' is not the source of '" + g.name() + "'");
    const std::string name = g.name() + "." + f.name();
    if (auto* gf = std::get_if<Mapping::Graph>(&f.form())) {
        std::vector<Elem> img;
        img.reserve(gf->images.size());
        for (Elem v : gf->images) img.push_back(g.apply(v));
        return Mapping(f.source(), g.target(), Mapping::Graph{std::move(img)}, name);
    }
    if (auto* af = std::get_if<Mapping::Affine>(&f.form())) {
        if (auto* ag = std::get_if<Mapping::Affine>(&g.form())) {
            Elem scale = checked_mul(ag->scale, af->scale);
            Elem offset = checked_add(checked_mul(ag->scale, af->offset), ag->offset);
            return Mapping(f.source(), g.target(), Mapping::Affine{scale, offset}, name);
        }
        const auto& pg = std::get<Mapping::Parity>(g.form());
        const std::size_t shift = static_cast<std::size_t>(parity_of(af->offset));
        Mapping::Parity p;
        p.post[0] = pg.post[shift];
        p.post[1] = pg.post[1 - shift];
        return Mapping(f.source(), g.target(), p, name);
    }
    const auto& pf = std::get<Mapping::Parity>(f.form());
    Mapping::Parity p;
    p.post[0] = g.apply(pf.post[0]);
    p.post[1] = g.apply(pf.post[1]);
    return Mapping(f.source(), g.target(), p, name);
}

Verdict is_homomorphism(const Mapping& f) {
    const auto& a = *f.source();
    const auto& b = *f.target();
    if (!a.signature().same_as(b.signature()))
        throw SignatureError("homomorphism check needs a shared signature");

    const Qualifier q = a.backing() == Backing::ExactInteger ? Qualifier::WindowBounded
                                                             : Qualifier::Exact;
    const std::vector<Elem> dom = a.quantifier_stream();
    std::uint64_t swept = 0;
    for (std::size_t oi = 0; oi < a.signature().size(); ++oi) {
        const OpSig& op = a.signature().at(oi);
        const std::size_t bi = *b.signature().index_of(op.name);
        std::vector<std::size_t> t(op.arity, 0);
        do {
            ++swept;
            std::vector<Elem> args(op.arity);
            for (unsigned i = 0; i < op.arity; ++i) args[i] = dom[t[i]];
            const Elem lhs = f.apply(a.apply(oi, args));
            std::vector<Elem> fargs(op.arity);
            for (unsigned i = 0; i < op.arity; ++i) fargs[i] = f.apply(args[i]);
            const Elem rhs = b.apply(bi, fargs);
            if (lhs != rhs) {
                WitnessTuple w;
                w.add("op", op.name);
                for (unsigned i = 0; i < op.arity; ++i)
                    w.add("arg" + std::to_string(i + 1), a.label(args[i]));
                w.add("lhs", b.label(lhs));
                w.add("rhs", b.label(rhs));
                return Verdict::fail(std::move(w), q, swept);
            }
        } while (op.arity > 0 && next_tuple(t, dom.size()));
    }
    return Verdict::pass(q, swept);
}

Verdict map_injective(const Mapping& f) {
    if (auto* a = std::get_if<Mapping::Affine>(&f.form())) {
        (void)a; // scale is +-1, always injective
        return Verdict::pass(Qualifier::Exact);
    }
    if (auto* p = std::get_if<Mapping::Parity>(&f.form())) {
        WitnessTuple w;
        w.add("a", f.source()->label(0));
        w.add("a'", f.source()->label(p->post[0] == p->post[1] ? 1 : 2));
        return Verdict::fail(std::move(w), Qualifier::Exact);
    }
    std::map<Elem, Elem> first;
    std::uint64_t swept = 0;
    for (Elem e : f.source()->quantifier_stream()) {
        ++swept;
        auto [it, fresh] = first.emplace(f.apply(e), e);
        if (!fresh) {
            WitnessTuple w;
            w.add("a", f.source()->label(it->second));
            w.add("a'", f.source()->label(e));
            return Verdict::fail(std::move(w), Qualifier::Exact, swept);
        }
    }
    return Verdict::pass(Qualifier::Exact, swept);
}

Verdict map_surjective(const Mapping& f) {
    if (auto* a = std::get_if<Mapping::Affine>(&f.form())) {
        if (f.source()->int_kind() == IntKind::IntPlus || a->offset == 0)
            return Verdict::pass(Qualifier::Exact);
        WitnessTuple w;
        w.add("b", "0"); // x + k with k > 0 misses 0 on the naturals
        return Verdict::fail(std::move(w), Qualifier::Exact);
    }
    std::vector<Elem> hit;
    if (auto* p = std::get_if<Mapping::Parity>(&f.form()))
        hit.assign(p->post.begin(), p->post.end());
    else
        for (Elem e : f.source()->quantifier_stream()) hit.push_back(f.apply(e));
    std::uint64_t swept = 0;
    for (Elem b : f.target()->quantifier_stream()) {
        ++swept;
        if (std::find(hit.begin(), hit.end(), b) == hit.end()) {
            WitnessTuple w;
            w.add("b", f.target()->label(b));
            return Verdict::fail(std::move(w), Qualifier::Exact, swept);
        }
    }
    return Verdict::pass(Qualifier::Exact, swept);
}

Verdict is_isomorphism(const Mapping& f) {
    if (f.source()->backing() == Backing::ExactInteger ||
        f.target()->backing() == Backing::ExactInteger)
        throw UnsupportedBackingError(
            "bijectivity over an integer-formula algebra is not decided here");
    Verdict hom = is_homomorphism(f);
    if (!hom.holds) return hom;
    Verdict inj = map_injective(f);
    if (!inj.holds) {
        inj.note = "not injective";
        return inj;
    }
    Verdict sur = map_surjective(f);
    if (!sur.holds) {
        sur.note = "not surjective";
        return sur;
    }
    return Verdict::pass(Qualifier::Exact, hom.swept + inj.swept + sur.swept);
}

Partition kernel(const Mapping& f) {
    if (!f.source()->tabular_backed())
        throw UnsupportedBackingError("kernels require a tabular source");
    std::map<Elem, std::vector<Elem>> fibers;
    for (Elem e : f.source()->quantifier_stream()) fibers[f.apply(e)].push_back(e);
    std::vector<std::vector<Elem>> blocks;
    blocks.reserve(fibers.size());
    for (auto& [img, block] : fibers) blocks.push_back(std::move(block));
    return Partition(f.source(), std::move(blocks));
}

} // namespace propalg
