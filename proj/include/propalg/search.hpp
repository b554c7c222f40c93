#ifndef PROPALG_SEARCH_HPP
#define PROPALG_SEARCH_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "propalg/pcheck.hpp"
#include "propalg/specfile.hpp"

namespace propalg {

/// Separation targets over small instances.
enum class Goal {
    HomNotPHom,            // homomorphism that is not a p-homomorphism
    PHomNotPFunctor,       // p-homomorphism that is not a p-functor
    PFunctorNotPHom,       // p-functor on a p-transitive algebra, not a p-hom
    AipNotPFunctor,        // map with the inference principle, not a p-functor
    PFunctorClosureFailure // p-functor composition escaping, no p-transitivity
};

std::optional<Goal> parse_goal(const std::string& name);
std::string goal_name(Goal g);

struct SearchSpace {
    std::size_t source_size = 4;
    std::size_t target_size = 2; // ignored by the single-algebra goals
    bool with_unary_op = false;  // signature {} or {S/1}
    bool require_reflexive = false;
    bool require_deterministic = false;
    bool require_ptransitive = false;
    std::uint64_t max_instances = UINT64_MAX;
    double max_seconds = 1e18;
    std::optional<std::uint64_t> seed; // set = randomized mode
    std::uint64_t random_tries = 200000;
};

/// One named check with its recorded verdict; replaying the exhibit must
/// reproduce every one of them exactly.
struct ExpectedCheck {
    std::string kind;
    std::map<std::string, std::string> args;
    Verdict expected;
};

struct Exhibit {
    Goal goal = Goal::HomNotPHom;
    SpecFile spec;
    std::vector<ExpectedCheck> checks;
    std::string provenance;
};

struct SearchOutcome {
    std::optional<Exhibit> exhibit;
    bool exhausted = false;
    bool budget_exceeded = false;
    std::uint64_t instances = 0;
    std::string space_description;
};

SearchOutcome find_separation(const SearchSpace& space, Goal goal);

// --- relation enumeration -------------------------------------------------

/// Number of proportional-symmetry orbits of the quadruple space over an
/// n-element universe; the symmetric relations are exactly the 2^count
/// orbit subsets.
std::uint64_t relation_orbit_count(std::size_t n);

struct RelationSpace {
    std::size_t n = 2;
    bool reflexive = false;
    bool deterministic = false;
    bool ptransitive = false;
};

/// Visits every symmetric relation satisfying the constraints, as a
/// sorted quadruple list, in canonical subset-counter order.  The visitor
/// returns false to stop early.  Universe sizes above 5 are rejected.
void enumerate_relations(const RelationSpace& space, const AlgebraPtr& carrier,
                         const std::function<bool(const std::vector<Quad>&)>& visit);

// --- exhibits ---------------------------------------------------------

std::string serialize_exhibit(const Exhibit& e);
Exhibit parse_exhibit(const std::string& text);

/// Executes one named check against resolved declarations.  Shared by the
/// search recorder and replay.
Verdict execute_check(const std::string& kind,
                      const std::map<std::string, std::string>& args, const Resolved& r);

struct ReplayResult {
    bool reproduced = false;
    std::vector<std::string> mismatches;
    std::vector<std::pair<std::string, Verdict>> actual;
};

ReplayResult replay(const Exhibit& e);

} // namespace propalg

#endif
