#ifndef PROPALG_ALGEBRA_HPP
#define PROPALG_ALGEBRA_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "propalg/checked.hpp"
#include "propalg/signature.hpp"

namespace propalg {

enum class Backing { Tabular, ExactInteger };

/// Which integer-formula world an ExactInteger algebra lives in.
enum class IntKind {
    NatSucc, // naturals with the successor operation S/1
    IntPlus, // integers with +/2 and the constants 0/0, 1/0
};

/// One total operation table, stored flat in mixed-radix order
/// (first argument most significant).
struct OpTable {
    std::vector<std::uint32_t> flat;
};

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// A finite algebra given by explicit tables, or one of the two built-in
/// integer-formula algebras.  Values are immutable after construction, so
/// instances may be shared freely across threads.
///
/// Universally quantified checks over an integer-formula algebra range
/// over the window [-W, W] (naturals: [0, W]); point evaluation is exact
/// and unrestricted.
class FiniteAlgebra {
public:
    static AlgebraPtr tabular(std::string name,
                              std::vector<std::string> labels,
                              Signature sig,
                              std::vector<OpTable> tables);

    static AlgebraPtr nat_succ(std::string name, Elem window);
    static AlgebraPtr int_plus(std::string name, Elem window);

    const std::string& name() const { return name_; }
    Backing backing() const { return backing_; }
    IntKind int_kind() const { return int_kind_; }
    const Signature& signature() const { return sig_; }

    bool tabular_backed() const { return backing_ == Backing::Tabular; }

    /// Universe size; only meaningful for tabular algebras.
    std::size_t size() const { return labels_.size(); }

    Elem window() const { return window_; }

    /// Does a value denote an element of this algebra?
    bool contains(Elem e) const;

    /// Presentation label of an element.
    std::string label(Elem e) const;

    /// Element with the given label, if any (tabular: label lookup;
    /// integer-formula: decimal parse subject to the universe).
    std::optional<Elem> element_of(const std::string& label) const;

    /// Apply operation `op_index` (position in the signature) to `args`.
    Elem apply(std::size_t op_index, std::span<const Elem> args) const;

    /// Canonical quantifier stream: tabular universes in declaration
    /// order; naturals 0..W ascending; integers 0, 1, -1, 2, -2, ...
    /// Universal checks sweep exactly this sequence.
    std::vector<Elem> quantifier_stream() const;

    const OpTable& table(std::size_t op_index) const { return tables_.at(op_index); }

    /// Structural equality (name, backing, universe, signature, tables;
    /// window included for integer-formula algebras).
    bool same_structure(const FiniteAlgebra& other) const;

private:
    FiniteAlgebra() = default;

    std::string name_;
    Backing backing_ = Backing::Tabular;
    IntKind int_kind_ = IntKind::NatSucc;
    Signature sig_;
    std::vector<std::string> labels_; // tabular only
    std::vector<OpTable> tables_;     // tabular only
    Elem window_ = 0;                 // ExactInteger only
};

/// True when the two references denote the same algebra (pointer identity
/// or structural equality).
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

} // namespace propalg

#endif
