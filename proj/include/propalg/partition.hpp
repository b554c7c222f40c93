#ifndef PROPALG_PARTITION_HPP
#define PROPALG_PARTITION_HPP

#include <vector>

#include "propalg/algebra.hpp"
#include "propalg/verdict.hpp"

namespace propalg {

/// An equivalence relation on a tabular universe, stored as disjoint
/// blocks covering it.  Blocks are kept in canonical form: elements
/// ascending within a block, blocks ordered by least element.
class Partition {
public:
    Partition(AlgebraPtr carrier, std::vector<std::vector<Elem>> blocks);

    const AlgebraPtr& carrier() const { return carrier_; }
    const std::vector<std::vector<Elem>>& blocks() const { return blocks_; }

    std::size_t block_of(Elem e) const { return block_of_.at(static_cast<std::size_t>(e)); }
    bool related(Elem a, Elem b) const { return block_of(a) == block_of(b); }

    /// Least element of each block (the canonical representative).
    Elem representative(std::size_t block) const { return blocks_[block].front(); }

    std::string block_label(std::size_t block) const;

    friend bool operator==(const Partition& x, const Partition& y) {
        return x.blocks_ == y.blocks_ && same_algebra(x.carrier_, y.carrier_);
    }

private:
    AlgebraPtr carrier_;
    std::vector<std::vector<Elem>> blocks_;
    std::vector<std::size_t> block_of_;
};

/// Is θ compatible with every operation of A?  Fails with the first
/// (operation, tuple, equivalent tuple) whose images land in different
/// blocks.
Verdict is_congruence(const Partition& theta, const FiniteAlgebra& a);

/// The factor algebra A/θ.  Requires is_congruence(θ, A); tables are
/// computed from least representatives and re-verified across all
/// representative choices.
AlgebraPtr quotient_algebra(const AlgebraPtr& a, const Partition& theta);

} // namespace propalg

#endif
