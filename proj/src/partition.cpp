#include "propalg/partition.hpp"

#include <algorithm>

namespace propalg {

Partition::Partition(AlgebraPtr carrier, std::vector<std::vector<Elem>> blocks)
    : carrier_(std::move(carrier)) {
    if (!carrier_ || !carrier_->tabular_backed())
        throw UnsupportedBackingError("partitions require a tabular carrier");
    const std::size_t n = carrier_->size();
    block_of_.assign(n, static_cast<std::size_t>(-1));
    for (auto& b : blocks) {
        if (b.empty()) throw PreconditionError("partition blocks must be nonempty");
        std::sort(b.begin(), b.end());
        for (Elem e : b) {
            if (!carrier_->contains(e))
                throw PreconditionError("partition element outside the universe");
            if (block_of_[static_cast<std::size_t>(e)] != static_cast<std::size_t>(-1))
                throw PreconditionError("partition blocks overlap at '" +
                                        carrier_->label(e) + "'");
        }
    }
    std::sort(blocks.begin(), blocks.end());
    blocks_ = std::move(blocks);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (Elem e : blocks_[i]) block_of_[static_cast<std::size_t>(e)] = i;
    for (std::size_t e = 0; e < n; ++e)
        if (block_of_[e] == static_cast<std::size_t>(-1))
            throw PreconditionError("partition does not cover '" +
                                    carrier_->label(static_cast<Elem>(e)) + "'");
}

std::string Partition::block_label(std::size_t block) const {
    return "[" + carrier_->label(blocks_[block].front()) + "]";
}

namespace {

// Advance a mixed-radix odometer; returns false after the last tuple.
bool next_tuple(std::vector<std::size_t>& idx, std::size_t radix) {
    for (std::size_t pos = idx.size(); pos > 0; --pos) {
        if (++idx[pos - 1] < radix) return true;
        idx[pos - 1] = 0;
    }
    return false;
}

} // namespace

Verdict is_congruence(const Partition& theta, const FiniteAlgebra& a) {
    if (!a.tabular_backed())
        throw UnsupportedBackingError("congruence checks require a tabular algebra");
    if (!theta.carrier()->same_structure(a))
        throw PreconditionError("partition carrier does not match the algebra");

    const std::size_t n = a.size();
    std::uint64_t swept = 0;
    for (std::size_t oi = 0; oi < a.signature().size(); ++oi) {
        const unsigned arity = a.signature().at(oi).arity;
        if (arity == 0) continue;
        std::vector<std::size_t> t(arity, 0);
        do {
            std::vector<Elem> args(arity);
            for (unsigned i = 0; i < arity; ++i) args[i] = static_cast<Elem>(t[i]);
            const std::size_t lhs_block = theta.block_of(a.apply(oi, args));
            std::vector<std::size_t> u(arity, 0);
            do {
                bool equiv = true;
                for (unsigned i = 0; i < arity && equiv; ++i)
                    equiv = theta.related(static_cast<Elem>(t[i]), static_cast<Elem>(u[i]));
                if (!equiv) continue;
                ++swept;
                std::vector<Elem> args2(arity);
                for (unsigned i = 0; i < arity; ++i) args2[i] = static_cast<Elem>(u[i]);
                if (theta.block_of(a.apply(oi, args2)) != lhs_block) {
                    WitnessTuple w;
                    w.add("op", a.signature().at(oi).name);
                    for (unsigned i = 0; i < arity; ++i)
                        w.add("a" + std::to_string(i + 1), a.label(args[i]));
                    for (unsigned i = 0; i < arity; ++i)
                        w.add("a" + std::to_string(i + 1) + "'", a.label(args2[i]));
                    return Verdict::fail(std::move(w), Qualifier::Exact, swept);
                }
            } while (next_tuple(u, n));
        } while (next_tuple(t, n));
    }
    return Verdict::pass(Qualifier::Exact, swept);
}

AlgebraPtr quotient_algebra(const AlgebraPtr& a, const Partition& theta) {
    Verdict cong = is_congruence(theta, *a);
    if (!cong.holds)
        throw PreconditionError("quotient requires a congruence; violated at " +
                                cong.witness->to_string());

    const std::size_t nblocks = theta.blocks().size();
    std::vector<std::string> labels;
    labels.reserve(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) labels.push_back(theta.block_label(b));

    std::vector<OpTable> tables;
    for (std::size_t oi = 0; oi < a->signature().size(); ++oi) {
        const unsigned arity = a->signature().at(oi).arity;
        std::size_t count = 1;
        for (unsigned i = 0; i < arity; ++i) count *= nblocks;
        OpTable tab;
        tab.flat.resize(count);
        std::vector<std::size_t> t(arity, 0);
        std::size_t flat = 0;
        do {
            std::vector<Elem> reps(arity);
            for (unsigned i = 0; i < arity; ++i) reps[i] = theta.representative(t[i]);
            const std::size_t img = theta.block_of(a->apply(oi, reps));
            // Well-definedness re-check across every representative choice.
            std::vector<std::size_t> pick(arity, 0);
            bool more = arity > 0;
            while (more) {
                std::vector<Elem> alt(arity);
                for (unsigned i = 0; i < arity; ++i) alt[i] = theta.blocks()[t[i]][pick[i]];
                if (theta.block_of(a->apply(oi, alt)) != img)
                    throw InternalInconsistencyError(
                        "quotient table depends on representative choice");
                more = false;
                for (std::size_t pos = arity; pos > 0; --pos) {
                    if (++pick[pos - 1] < theta.blocks()[t[pos - 1]].size()) {
                        more = true;
                        break;
                    }
                    pick[pos - 1] = 0;
                }
            }
            tab.flat[flat++] = static_cast<std::uint32_t>(img);
        } while (arity > 0 && next_tuple(t, nblocks));
        tables.push_back(std::move(tab));
    }

    return FiniteAlgebra::tabular(a->name() + "/theta", std::move(labels), a->signature(),
                                  std::move(tables));
}

} // namespace propalg
