#include "propalg/term.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace propalg {

Term Term::var() {
    Term t;
    t.node_ = std::make_shared<Node>();
    return t;
}

Term Term::apply(std::string op, std::vector<Term> children) {
    auto n = std::make_shared<Node>();
    n->op = std::move(op);
    unsigned d = 0;
    for (const auto& c : children) d = std::max(d, c.depth());
    n->depth = d + 1;
    n->children = std::move(children);
    Term t;
    t.node_ = std::move(n);
    return t;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->op != b.node_->op) return false;
    if (a.node_->children.size() != b.node_->children.size()) return false;
    for (std::size_t i = 0; i < a.node_->children.size(); ++i)
        if (!(a.node_->children[i] == b.node_->children[i])) return false;
    return true;
}

std::string Term::to_string() const {
    if (is_var()) return "z";
    if (children().empty()) return op();
    std::string s = op() + "(";
    for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) s += ",";
        s += children()[i].to_string();
    }
    return s + ")";
}

Elem eval_term(const FiniteAlgebra& a, const Term& t, Elem binding) {
    if (t.is_var()) {
        if (!a.contains(binding)) throw PreconditionError("binding outside the universe");
        return binding;
    }
    auto idx = a.signature().index_of(t.op());
    if (!idx) throw SignatureError("unknown operation '" + t.op() + "'");
    if (a.signature().at(*idx).arity != t.children().size())
        throw SignatureError("arity mismatch at operation '" + t.op() + "'");
    std::vector<Elem> args;
    args.reserve(t.children().size());
    for (const auto& c : t.children()) args.push_back(eval_term(a, c, binding));
    return a.apply(*idx, args);
}

std::vector<Term> enumerate_unary_terms(const Signature& sig, unsigned max_depth) {
    constexpr std::size_t kStreamCap = 1u << 20;
    std::vector<Term> stream{Term::var()};

    std::vector<OpSig> ops = sig.ops();
    std::sort(ops.begin(), ops.end(),
              [](const OpSig& x, const OpSig& y) { return x.name < y.name; });

    for (unsigned d = 1; d <= max_depth; ++d) {
        const std::size_t prefix = stream.size();
        for (const auto& op : ops) {
            if (op.arity == 0) {
                if (d == 1) stream.push_back(Term::apply(op.name, {}));
                continue;
            }
            // Child tuples over the depth-(d-1) prefix, in position-lex
            // order, keeping those whose deepest child has depth d-1.
            std::vector<std::size_t> idx(op.arity, 0);
            while (true) {
                bool tall = false;
                for (auto i : idx) tall |= stream[i].depth() == d - 1;
                if (tall) {
                    if (stream.size() >= kStreamCap)
                        throw PreconditionError("term stream exceeds " +
                                                std::to_string(kStreamCap) + " terms");
                    std::vector<Term> kids;
                    kids.reserve(op.arity);
                    for (auto i : idx) kids.push_back(stream[i]);
                    stream.push_back(Term::apply(op.name, std::move(kids)));
                }
                unsigned pos = op.arity;
                while (pos > 0) {
                    if (++idx[pos - 1] < prefix) break;
                    idx[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
            }
        }
        if (stream.size() == prefix) break; // nothing new can appear deeper
    }
    return stream;
}

AffineTerm fold_affine(const Term& t) {
    if (t.is_var()) return {1, 0};
    if (t.op() == "S" && t.children().size() == 1) {
        AffineTerm c = fold_affine(t.children()[0]);
        return {c.scale, checked_add(c.offset, 1)};
    }
    if (t.op() == "+" && t.children().size() == 2) {
        AffineTerm u = fold_affine(t.children()[0]);
        AffineTerm v = fold_affine(t.children()[1]);
        return {checked_add(u.scale, v.scale), checked_add(u.offset, v.offset)};
    }
    if (t.op() == "0" && t.children().empty()) return {0, 0};
    if (t.op() == "1" && t.children().empty()) return {0, 1};
    throw SignatureError("term is not over an integer-formula signature: " + t.to_string());
}

bool term_function_injective(const FiniteAlgebra& a, const Term& t) {
    if (a.backing() == Backing::ExactInteger)
        return fold_affine(t).scale != 0;
    std::unordered_set<Elem> seen;
    for (Elem e : a.quantifier_stream()) {
        if (!seen.insert(eval_term(a, t, e)).second) return false;
    }
    return true;
}

namespace {

// Dedup key: the concatenated source/target value behavior.
using FnKey = std::vector<Elem>;

struct BuildEntry {
    TermFunctionPair fn;
    unsigned level = 0;
};

FnKey key_of(const TermFunctionPair& f, bool exact) {
    if (exact) return {f.affine.scale, f.affine.offset};
    FnKey k = f.src_table;
    k.push_back(-1);
    k.insert(k.end(), f.tgt_table.begin(), f.tgt_table.end());
    return k;
}

} // namespace

TermFunctionCatalog::TermFunctionCatalog(AlgebraPtr source, AlgebraPtr target, unsigned depth)
    : src_(std::move(source)), tgt_(std::move(target)), depth_(depth) {
    if (!src_->signature().same_as(tgt_->signature()))
        throw SignatureError("witness terms need a shared signature");
    const bool exact = src_->backing() == Backing::ExactInteger;
    if (exact && tgt_->backing() != Backing::ExactInteger)
        throw UnsupportedBackingError("witness relations require matching backings");
    if (exact && src_->int_kind() != tgt_->int_kind())
        throw UnsupportedBackingError("witness relations require matching integer kinds");

    const auto src_elems = exact ? std::vector<Elem>{} : src_->quantifier_stream();
    const auto tgt_elems = exact ? std::vector<Elem>{} : tgt_->quantifier_stream();

    auto make = [&](const Term& t) {
        TermFunctionPair f;
        f.rep = t;
        if (exact) {
            f.affine = fold_affine(t);
            f.source_injective = f.affine.scale != 0;
        } else {
            f.src_table.reserve(src_elems.size());
            for (Elem e : src_elems) f.src_table.push_back(eval_term(*src_, t, e));
            f.tgt_table.reserve(tgt_elems.size());
            for (Elem e : tgt_elems) f.tgt_table.push_back(eval_term(*tgt_, t, e));
            std::unordered_set<Elem> seen(f.src_table.begin(), f.src_table.end());
            f.source_injective = seen.size() == f.src_table.size();
        }
        return f;
    };

    std::vector<BuildEntry> entries;
    std::map<FnKey, std::size_t> seen;

    constexpr std::size_t kCatalogCap = 1u << 16;
    auto push = [&](TermFunctionPair f, unsigned level) {
        FnKey k = key_of(f, exact);
        if (seen.count(k)) return;
        if (entries.size() >= kCatalogCap)
            throw PreconditionError("witness catalog exceeds " +
                                    std::to_string(kCatalogCap) +
                                    " distinct term functions; lower the depth");
        seen.emplace(std::move(k), entries.size());
        entries.push_back({std::move(f), level});
    };

    push(make(Term::var()), 0);

    std::vector<OpSig> ops = src_->signature().ops();
    std::sort(ops.begin(), ops.end(),
              [](const OpSig& x, const OpSig& y) { return x.name < y.name; });

    for (unsigned d = 1; d <= depth_; ++d) {
        const std::size_t prefix = entries.size();
        for (const auto& op : ops) {
            if (op.arity == 0) {
                if (d == 1) push(make(Term::apply(op.name, {})), 1);
                continue;
            }
            std::vector<std::size_t> idx(op.arity, 0);
            while (true) {
                bool tall = false;
                for (auto i : idx) tall |= entries[i].level == d - 1;
                if (tall) {
                    std::vector<Term> kids;
                    kids.reserve(op.arity);
                    for (auto i : idx) kids.push_back(entries[i].fn.rep);
                    push(make(Term::apply(op.name, std::move(kids))), d);
                }
                unsigned pos = op.arity;
                while (pos > 0) {
                    if (++idx[pos - 1] < prefix) break;
                    idx[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
            }
        }
        if (entries.size() == prefix) break;
    }

    fns_.reserve(entries.size());
    for (auto& e : entries) fns_.push_back(std::move(e.fn));
}

Elem TermFunctionCatalog::eval_source(std::size_t i, Elem e) const {
    const auto& f = fns_.at(i);
    if (src_->backing() == Backing::ExactInteger)
        return checked_add(checked_mul(f.affine.scale, e), f.affine.offset);
    if (!src_->contains(e)) throw PreconditionError("element outside the source universe");
    return f.src_table[static_cast<std::size_t>(e)];
}

Elem TermFunctionCatalog::eval_target(std::size_t i, Elem e) const {
    const auto& f = fns_.at(i);
    if (tgt_->backing() == Backing::ExactInteger)
        return checked_add(checked_mul(f.affine.scale, e), f.affine.offset);
    if (!tgt_->contains(e)) throw PreconditionError("element outside the target universe");
    return f.tgt_table[static_cast<std::size_t>(e)];
}

} // namespace propalg
