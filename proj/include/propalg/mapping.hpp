#ifndef PROPALG_MAPPING_HPP
#define PROPALG_MAPPING_HPP

#include <array>
#include <variant>
#include <vector>

#include "propalg/algebra.hpp"
#include "propalg/partition.hpp"
#include "propalg/verdict.hpp"

namespace propalg {

/// A total function between two algebra universes.
///
/// Tabular sources store the full graph; integer-formula sources carry a
/// formula: an affine map x -> scale*x + offset (scale in {1, -1}), or
/// parity followed by a two-entry post table (the mod-2 family).
class Mapping {
public:
    struct Graph {
        std::vector<Elem> images;
    };
    struct Affine {
        Elem scale = 1, offset = 0;
    };
    struct Parity {
        std::array<Elem, 2> post{0, 1};
    };
    using Form = std::variant<Graph, Affine, Parity>;

    Mapping(AlgebraPtr source, AlgebraPtr target, Form form, std::string name = {});

    static Mapping from_graph(AlgebraPtr source, AlgebraPtr target, std::vector<Elem> images,
                              std::string name = {});
    static Mapping identity(AlgebraPtr a, std::string name = "id");
    /// x -> x + k on an integer-formula algebra (k >= 0 over the naturals).
    static Mapping translate(AlgebraPtr a, Elem k, std::string name = {});
    /// x -> -x on the integers; the 0<->1 swap on a 2-element tabular algebra.
    static Mapping negation(AlgebraPtr a, std::string name = "negation");
    /// Parity map from an integer-formula algebra onto a 2-element tabular
    /// algebra; even values land on the first universe element.
    static Mapping mod2(AlgebraPtr source, AlgebraPtr target, std::string name = "mod2");

    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return tgt_; }
    const std::string& name() const { return name_; }
    const Form& form() const { return form_; }

    Elem apply(Elem e) const;

    /// Images of a vector of elements (used to memoize window sweeps).
    std::vector<Elem> image_of(const std::vector<Elem>& elems) const;

    bool endomap() const { return same_algebra(src_, tgt_); }

    friend bool operator==(const Mapping& f, const Mapping& g);

private:
    AlgebraPtr src_, tgt_;
    Form form_;
    std::string name_;
};

/// Composite a -> g(f(a)); requires target of f = source of g.
/// Formula-backed forms compose symbolically, so translations stay
/// translations.
Mapping compose(const Mapping& f, const Mapping& g);

/// Does F commute with every operation?  Integer-formula sources sweep
/// argument tuples over the window.  Fails with the first violating
/// (operation, tuple) in enumeration order.
Verdict is_homomorphism(const Mapping& f);

/// is_homomorphism plus bijectivity.  Only tabular algebras support the
/// bijectivity sweep here; formula-backed maps are handled exactly by
/// map_bijective.
Verdict is_isomorphism(const Mapping& f);

/// Injectivity and surjectivity of a map.  Tabular pairs are checked
/// exhaustively; formula-backed maps are answered exactly from the form.
Verdict map_injective(const Mapping& f);
Verdict map_surjective(const Mapping& f);

/// Fibers of F as a partition of a tabular source.
Partition kernel(const Mapping& f);

} // namespace propalg

#endif
