#ifndef PROPALG_PCHECK_HPP
#define PROPALG_PCHECK_HPP

#include <optional>
#include <vector>

#include "propalg/mapping.hpp"
#include "propalg/relation.hpp"

namespace propalg {

/// An algebra bundled with a proportion relation on itself.
struct PAlgebra {
    AlgebraPtr algebra;
    RelationPtr relation;

    PAlgebra(AlgebraPtr a, RelationPtr r) : algebra(std::move(a)), relation(std::move(r)) {
        if (!relation->endorelation() || !same_algebra(relation->source(), algebra))
            throw PreconditionError("the relation's carrier must be the algebra itself");
    }
};

/// Is `subset` closed under every operation of A (constants included)?
/// Fails with the first escaping (operation, tuple).
Verdict is_subalgebra(const std::vector<Elem>& subset, const FiniteAlgebra& a);

/// Subalgebra whose proportion relation agrees with the parent's on every
/// quadruple of sub elements.  A carrier that is not a subalgebra at all
/// (not a subset, tables disagree, not closed) is a precondition error;
/// the verdict proper compares the relations.
Verdict is_p_subalgebra(const PAlgebra& sub, const PAlgebra& sup);

/// Homomorphism that preserves and reflects proportions:
/// A |= a:b::c:d  <=>  B |= F(a):F(b)::F(c):F(d).
/// The forward (inference) direction is swept before the backward one;
/// the witness carries the broken direction.
Verdict is_p_homomorphism(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb);

/// The analogical inference principle: the forward direction alone.
/// F need not be a homomorphism.
Verdict satisfies_aip(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb);

/// Bijective p-homomorphism.
Verdict is_p_isomorphism(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb);

/// Congruence whose block-respecting replacements preserve proportions.
Verdict is_p_congruence(const Partition& theta, const PAlgebra& pa);

/// Computes ker(F) and asserts it is a p-congruence on the source.
/// Requires is_p_homomorphism(F); a failure of the assertion itself is an
/// internal inconsistency, never a normal result.
Verdict kernel_is_p_congruence(const Mapping& f, const PAlgebra& pa, const PAlgebra& pb);

/// (A,B) |= a:b::F(a):F(b) for all source pairs.  F need not be a
/// homomorphism.
Verdict is_p_functor(const Mapping& f, const ProportionRelation& r);

/// For a p-functor on an inner-symmetric, p-transitive algebra, asserts
/// the analogical inference principle.  Precondition failures name the
/// failed axiom; a failed assertion is an internal inconsistency.
Verdict aip_from_pfunctor(const Mapping& f, const PAlgebra& pa);

/// A |= F(a):F(b)::F(F(a)):F(F(b)) for all pairs.
Verdict is_p_idempotent(const Mapping& f, const PAlgebra& pa);

/// A |= F^m(a):F^m(b)::F^n(a):F^n(b) for all pairs.  Requires a symmetric
/// and p-transitive relation and a p-idempotent F.
Verdict power_proportionality(const Mapping& f, const PAlgebra& pa, unsigned m, unsigned n);

/// Asserts that the identity and every pairwise composition of the given
/// p-homomorphism endomaps is again a p-homomorphism.
Verdict check_phom_monoid_closure(const std::vector<Mapping>& fs, const PAlgebra& pa);

/// Same for p-functors.  Requires each map to be a p-functor; when the
/// relation is p-transitive a closure failure is an internal
/// inconsistency, otherwise it is reported as a counterexample exhibit.
Verdict check_pfunctor_monoid_closure(const std::vector<Mapping>& fs, const PAlgebra& pa);

struct FunctionalCompareReport {
    Verdict f_to_g; // B |= F(a):F(b) :: G(a):G(b) for all a, b
    Verdict g_to_f;
    Verdict both; // F :: G
};

/// Compare two maps with a common source and target under a relation on
/// the target.  `directed`, when given, replaces the relation in the
/// one-directional judgments.
FunctionalCompareReport functional_compare(const Mapping& f, const Mapping& g,
                                           const ProportionRelation& r,
                                           const ProportionRelation* directed = nullptr);

/// If F is a p-functor, R_BB is p-transitive and F -> G holds under R_BB,
/// asserts that G is a p-functor under R_AB.
Verdict pfunctor_transfer(const Mapping& f, const Mapping& g, const ProportionRelation& r_ab,
                          const ProportionRelation& r_bb);

/// On a symmetric, p-transitive algebra, asserts F :: G for p-functors
/// F and G.
Verdict pfunctors_functionally_proportional(const Mapping& f, const Mapping& g,
                                            const PAlgebra& pa);

struct CompositionFpReport {
    Verdict f_g;                    // F :: G
    Verdict fh_gh;                  // F.H :: G.H
    Verdict forward;                // F :: G implies F.H :: G.H
    std::optional<Verdict> converse; // only asserted for surjective H
    bool h_surjective = false;
};

/// How precomposition with H interacts with functional proportionality.
CompositionFpReport composition_respects_fp(const Mapping& f, const Mapping& g,
                                            const Mapping& h, const ProportionRelation& r);

} // namespace propalg

#endif
