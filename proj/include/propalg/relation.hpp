#ifndef PROPALG_RELATION_HPP
#define PROPALG_RELATION_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "propalg/algebra.hpp"
#include "propalg/term.hpp"
#include "propalg/verdict.hpp"

namespace propalg {

/// One judgment slot: a : b :: c : d with a, b from the source algebra
/// and c, d from the target algebra.
struct Quad {
    Elem a, b, c, d;

    friend bool operator==(const Quad& x, const Quad& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator<(const Quad& x, const Quad& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.d < y.d;
    }
};

class ProportionRelation;
using RelationPtr = std::shared_ptr<const ProportionRelation>;

/// A 4-ary analogical proportion relation over an ordered pair of
/// algebras.  Four backings:
///
///  * Extensional — an explicit quadruple table (optionally closed under
///    proportional symmetry when source = target);
///  * Difference  — a : b :: c : d iff a - b = c - d, on an
///    integer-formula algebra;
///  * BooleanXor  — the 2-element characterization
///    (a = b and c = d) or (a != b and c != d);
///  * Witness     — sound term-witness search: some unary term t of depth
///    at most `depth`, injective on the source, has t(a) = b and
///    t(c) = d.  A negative answer means "no witness at this depth".
class ProportionRelation : public std::enable_shared_from_this<ProportionRelation> {
public:
    enum class Kind { Extensional, Difference, BooleanXor, Witness };

    static RelationPtr extensional(AlgebraPtr source, AlgebraPtr target,
                                   std::vector<Quad> quads, bool symmetric_closure = true,
                                   std::string name = {});
    static RelationPtr difference(AlgebraPtr algebra, std::string name = {});
    static RelationPtr boolean_xor(AlgebraPtr source, AlgebraPtr target,
                                   std::string name = {});
    static RelationPtr witness(AlgebraPtr source, AlgebraPtr target, unsigned depth,
                               std::string name = {});

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return tgt_; }
    bool endorelation() const { return same_algebra(src_, tgt_); }
    unsigned depth() const { return depth_; }
    bool closed_symmetric() const { return sym_closure_; }

    /// Membership test.  Elements outside the universes are an error.
    bool holds(Elem a, Elem b, Elem c, Elem d) const;

    /// For Witness relations: the first enumerated injective term
    /// certifying the quadruple, if any.
    std::optional<Term> witness_term(Elem a, Elem b, Elem c, Elem d) const;

    /// Canonical quadruple list (extensional relations only).
    const std::vector<Quad>& quads() const { return quads_; }

    /// Number of candidate term functions behind a Witness relation.
    std::uint64_t terms_enumerated() const;

    /// The qualifier any quantified answer over this relation carries.
    Qualifier base_qualifier() const;

    /// Extensional restriction of this relation to a pair of
    /// sub-universes given by label-matching sub-algebras.
    RelationPtr restricted_to(const AlgebraPtr& sub_source, const AlgebraPtr& sub_target) const;

    // --- flattened evaluator for inner loops -----------------------------

    /// Trivially copyable view used by quantifier sweeps.  No range
    /// checks; arguments must come from the owning algebras' universes
    /// (sweeps guarantee this).  Safe for concurrent use.
    struct Eval {
        Kind kind = Kind::Difference;
        const std::uint8_t* bits = nullptr; // extensional membership
        std::size_t ns = 0, nt = 0;
        struct AffinePair {
            Elem k, m;
        };
        const AffinePair* aff = nullptr; // witness over integer formulas
        std::size_t naff = 0;
        struct FnTab {
            const Elem* src;
            const Elem* tgt;
        };
        const FnTab* fns = nullptr; // witness over tabular algebras
        std::size_t nfns = 0;

        bool operator()(Elem a, Elem b, Elem c, Elem d) const {
            switch (kind) {
            case Kind::Difference:
                return a - b == c - d;
            case Kind::BooleanXor:
                return (a == b) == (c == d);
            case Kind::Extensional:
                return bits[((static_cast<std::size_t>(a) * ns + static_cast<std::size_t>(b)) *
                                 nt +
                             static_cast<std::size_t>(c)) *
                                nt +
                            static_cast<std::size_t>(d)] != 0;
            case Kind::Witness:
                if (aff) {
                    for (std::size_t i = 0; i < naff; ++i)
                        if (aff[i].k * a + aff[i].m == b && aff[i].k * c + aff[i].m == d)
                            return true;
                    return false;
                }
                for (std::size_t i = 0; i < nfns; ++i)
                    if (fns[i].src[static_cast<std::size_t>(a)] == b &&
                        fns[i].tgt[static_cast<std::size_t>(c)] == d)
                        return true;
                return false;
            }
            return false;
        }
    };

    Eval evaluator() const;

private:
    ProportionRelation() = default;

    Kind kind_ = Kind::Extensional;
    std::string name_;
    AlgebraPtr src_, tgt_;
    bool sym_closure_ = false;
    unsigned depth_ = 0;

    // extensional
    std::vector<Quad> quads_;
    std::vector<std::uint8_t> bits_;

    // witness
    std::shared_ptr<const TermFunctionCatalog> catalog_;
    std::vector<Eval::AffinePair> aff_inj_; // injective affine forms
    std::vector<Eval::FnTab> fn_inj_;       // injective tabular functions
};

/// A directed proportion judgment has the same shape as the symmetric
/// one; by default the two directions of a functional comparison use the
/// same relation and therefore coincide.  Supplying a genuinely directed
/// table makes them diverge without any interface change.
using DirectedRelation = ProportionRelation;

/// Named assignment of relations to ordered algebra pairs, used by the
/// cross-pair symmetry judgment.
class RelationFamily {
public:
    void add(RelationPtr r);
    const RelationPtr& at(const std::string& source, const std::string& target) const;
    bool has(const std::string& source, const std::string& target) const;

private:
    std::map<std::pair<std::string, std::string>, RelationPtr> rels_;
};

// --- axiom checkers ------------------------------------------------------
//
// All four sweep the canonical element streams and report the first
// violation in canonical order.  Built-in relations whose axioms hold by
// the shape of their defining formula answer exactly without a sweep.

/// R(a,b,c,d) <=> R(c,d,a,b).  The witness is the quadruple missing from
/// the relation while its mirror is present.
Verdict check_inner_symmetry(const ProportionRelation& r);

/// fam(A,B)(a,b,c,d) <=> fam(B,A)(c,d,a,b).
Verdict check_cross_symmetry(const RelationFamily& fam, const std::string& a,
                             const std::string& b);

/// R(a,b,a,b) for all a, b.
Verdict check_reflexivity(const ProportionRelation& r);

/// R(a,a,a,d) forces d = a.
Verdict check_determinism(const ProportionRelation& r);

/// R(a,b,c,d) and R(c,d,e,f) imply R(a,b,e,f).
Verdict check_p_transitivity(const ProportionRelation& r);

} // namespace propalg

#endif
