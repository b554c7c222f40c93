#include "propalg/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace propalg {

namespace {

constexpr Elem kMaxWindow = Elem(1) << 31;

std::size_t tuple_count(std::size_t n, unsigned arity) {
    std::size_t c = 1;
    for (unsigned i = 0; i < arity; ++i) c *= n;
    return c;
}

} // namespace

AlgebraPtr FiniteAlgebra::tabular(std::string name,
                                  std::vector<std::string> labels,
                                  Signature sig,
                                  std::vector<OpTable> tables) {
    if (labels.empty())
        throw PreconditionError("algebra '" + name + "': universe must be nonempty");
    {
        std::unordered_set<std::string> seen;
        for (const auto& l : labels)
            if (!seen.insert(l).second)
                throw PreconditionError("algebra '" + name + "': duplicate element '" + l + "'");
    }
    if (tables.size() != sig.size())
        throw SignatureError("algebra '" + name + "': one table required per operation");
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto want = tuple_count(labels.size(), sig.at(i).arity);
        if (tables[i].flat.size() != want)
            throw SignatureError("algebra '" + name + "': table for '" + sig.at(i).name +
                                 "' is not total");
        for (auto v : tables[i].flat)
            if (v >= labels.size())
                throw SignatureError("algebra '" + name + "': table entry for '" +
                                     sig.at(i).name + "' lies outside the universe");
    }
    auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
    a->name_ = std::move(name);
    a->backing_ = Backing::Tabular;
    a->sig_ = std::move(sig);
    a->labels_ = std::move(labels);
    a->tables_ = std::move(tables);
    return a;
}

AlgebraPtr FiniteAlgebra::nat_succ(std::string name, Elem window) {
    if (window < 0 || window > kMaxWindow)
        throw PreconditionError("window must lie in [0, 2^31]");
    auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
    a->name_ = std::move(name);
    a->backing_ = Backing::ExactInteger;
    a->int_kind_ = IntKind::NatSucc;
    a->sig_ = Signature({{"S", 1}});
    a->window_ = window;
    return a;
}

AlgebraPtr FiniteAlgebra::int_plus(std::string name, Elem window) {
    if (window < 0 || window > kMaxWindow)
        throw PreconditionError("window must lie in [0, 2^31]");
    auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
    a->name_ = std::move(name);
    a->backing_ = Backing::ExactInteger;
    a->int_kind_ = IntKind::IntPlus;
    a->sig_ = Signature({{"+", 2}, {"0", 0}, {"1", 0}});
    a->window_ = window;
    return a;
}

bool FiniteAlgebra::contains(Elem e) const {
    switch (backing_) {
    case Backing::Tabular:
        return e >= 0 && static_cast<std::size_t>(e) < labels_.size();
    case Backing::ExactInteger:
        return int_kind_ == IntKind::IntPlus || e >= 0;
    }
    return false;
}

std::string FiniteAlgebra::label(Elem e) const {
    if (backing_ == Backing::Tabular) {
        if (!contains(e)) throw PreconditionError("element index out of range");
        return labels_[static_cast<std::size_t>(e)];
    }
    return std::to_string(e);
}

std::optional<Elem> FiniteAlgebra::element_of(const std::string& label) const {
    if (backing_ == Backing::Tabular) {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return static_cast<Elem>(i);
        return std::nullopt;
    }
    Elem v = 0;
    const char* b = label.data();
    const char* e = b + label.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) return std::nullopt;
    if (!contains(v)) return std::nullopt;
    return v;
}

Elem FiniteAlgebra::apply(std::size_t op_index, std::span<const Elem> args) const {
    const OpSig& op = sig_.at(op_index);
    if (args.size() != op.arity)
        throw SignatureError("operation '" + op.name + "' expects " +
                             std::to_string(op.arity) + " arguments");
    if (backing_ == Backing::Tabular) {
        std::size_t flat = 0;
        for (auto a : args) {
            if (!contains(a)) throw PreconditionError("argument outside the universe");
            flat = flat * labels_.size() + static_cast<std::size_t>(a);
        }
        return static_cast<Elem>(tables_[op_index].flat[flat]);
    }
    for (auto a : args)
        if (!contains(a)) throw PreconditionError("argument outside the universe");
    if (int_kind_ == IntKind::NatSucc) // op 0 is S
        return checked_add(args[0], 1);
    switch (op_index) { // {+, 0, 1}
    case 0: return checked_add(args[0], args[1]);
    case 1: return 0;
    default: return 1;
    }
}

std::vector<Elem> FiniteAlgebra::quantifier_stream() const {
    std::vector<Elem> out;
    if (backing_ == Backing::Tabular) {
        out.reserve(labels_.size());
        for (std::size_t i = 0; i < labels_.size(); ++i) out.push_back(static_cast<Elem>(i));
        return out;
    }
    if (int_kind_ == IntKind::NatSucc) {
        out.reserve(static_cast<std::size_t>(window_) + 1);
        for (Elem v = 0; v <= window_; ++v) out.push_back(v);
        return out;
    }
    out.reserve(2 * static_cast<std::size_t>(window_) + 1);
    out.push_back(0);
    for (Elem v = 1; v <= window_; ++v) {
        out.push_back(v);
        out.push_back(-v);
    }
    return out;
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& other) const {
    if (backing_ != other.backing_ || name_ != other.name_ || !(sig_ == other.sig_))
        return false;
    if (backing_ == Backing::Tabular) {
        if (labels_ != other.labels_) return false;
        for (std::size_t i = 0; i < tables_.size(); ++i)
            if (tables_[i].flat != other.tables_[i].flat) return false;
        return true;
    }
    return int_kind_ == other.int_kind_ && window_ == other.window_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same_structure(*b);
}

} // namespace propalg
