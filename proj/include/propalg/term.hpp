#ifndef PROPALG_TERM_HPP
#define PROPALG_TERM_HPP

#include <memory>
#include <string>
#include <vector>

#include "propalg/algebra.hpp"

namespace propalg {

/// A unary term: either the designated variable z or an operation applied
/// to child terms.  Terms carry operation names, not algebra references,
/// so one term can be evaluated against any algebra whose signature
/// provides the names it uses.
class Term {
public:
    static Term var();
    static Term apply(std::string op, std::vector<Term> children);

    bool is_var() const { return node_->op.empty(); }
    const std::string& op() const { return node_->op; }
    const std::vector<Term>& children() const { return node_->children; }

    /// Nesting depth: z has depth 0, an operation application has depth
    /// 1 + the maximum child depth (1 for constants).
    unsigned depth() const { return node_->depth; }

    std::string to_string() const;

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        std::string op; // empty = variable z
        std::vector<Term> children;
        unsigned depth = 0;
    };
    std::shared_ptr<const Node> node_;
};

/// Value of `t` at `binding`, computed bottom-up in A.
Elem eval_term(const FiniteAlgebra& a, const Term& t, Elem binding);

/// All terms over `sig` of depth at most `max_depth`, with z as the only
/// variable, without duplicates.  Order: depth-major, then operation name,
/// then child positions in this same stream — so the depth-d stream is a
/// prefix of the depth-(d+1) stream.
std::vector<Term> enumerate_unary_terms(const Signature& sig, unsigned max_depth);

/// Is e -> eval_term(a, t, e) injective?  Tabular algebras are checked
/// exhaustively.  Integer-formula algebras fold t to the affine form
/// k*z + c and answer exactly, with no window involved.
bool term_function_injective(const FiniteAlgebra& a, const Term& t);

/// The affine normal form of a unary term over an integer-formula
/// signature: t(z) = scale*z + offset.
struct AffineTerm {
    Elem scale = 0;
    Elem offset = 0;
};

AffineTerm fold_affine(const Term& t);

/// One semantically distinct unary term function over a (source, target)
/// algebra pair sharing a signature, with the first term (in enumeration
/// order) that denotes it.
struct TermFunctionPair {
    Term rep;
    bool source_injective = false;
    // Tabular sides: full value tables.  Integer-formula sides: the
    // affine form (both sides share it, since the formula is the same).
    std::vector<Elem> src_table, tgt_table;
    AffineTerm affine;
};

/// Catalog of the distinct term functions realized by depth-bounded unary
/// terms over a pair of algebras with a shared signature, in order of
/// first occurrence in the term stream.  This is the sound witness
/// generator behind Witness relations.
class TermFunctionCatalog {
public:
    TermFunctionCatalog(AlgebraPtr source, AlgebraPtr target, unsigned depth);

    const std::vector<TermFunctionPair>& functions() const { return fns_; }
    unsigned depth() const { return depth_; }

    /// Value of function `i` at a source (resp. target) element.
    Elem eval_source(std::size_t i, Elem e) const;
    Elem eval_target(std::size_t i, Elem e) const;

private:
    AlgebraPtr src_, tgt_;
    unsigned depth_;
    std::vector<TermFunctionPair> fns_;
};

} // namespace propalg

#endif
