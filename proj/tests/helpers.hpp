#ifndef PROPALG_TEST_HELPERS_HPP
#define PROPALG_TEST_HELPERS_HPP

#include <string>
#include <vector>

#include "propalg/mapping.hpp"
#include "propalg/pcheck.hpp"
#include "propalg/relation.hpp"

namespace testutil {

using namespace propalg;

/// Four-element successor chain: S maps 1->2, 2->2, 3->4, 4->4.
inline AlgebraPtr chain_source() {
    return FiniteAlgebra::tabular("A", {"1", "2", "3", "4"}, Signature({{"S", 1}}),
                                  {OpTable{{1, 1, 3, 3}}});
}

/// Two-element successor chain: S maps 5->6, 6->6.
inline AlgebraPtr chain_target() {
    return FiniteAlgebra::tabular("B", {"5", "6"}, Signature({{"S", 1}}),
                                  {OpTable{{1, 1}}});
}

/// The chain homomorphism 1->5, 2->6, 3->5, 4->6.
inline Mapping chain_map(const AlgebraPtr& a, const AlgebraPtr& b) {
    return Mapping::from_graph(a, b, {0, 1, 0, 1}, "F");
}

/// ({0,1}, not).
inline AlgebraPtr bool_not() {
    return FiniteAlgebra::tabular("Bn", {"0", "1"}, Signature({{"not", 1}}),
                                  {OpTable{{1, 0}}});
}

/// ({0,1}, or, not).
inline AlgebraPtr bool_or_not() {
    return FiniteAlgebra::tabular("Bon", {"0", "1"},
                                  Signature({{"or", 2}, {"not", 1}}),
                                  {OpTable{{0, 1, 1, 1}}, OpTable{{1, 0}}});
}

/// ({0,1}, +, 0, 1) with + as exclusive or.
inline AlgebraPtr bool_xor_alg(const std::string& name = "B2") {
    return FiniteAlgebra::tabular(name, {"0", "1"},
                                  Signature({{"+", 2}, {"0", 0}, {"1", 0}}),
                                  {OpTable{{0, 1, 1, 0}}, OpTable{{0}}, OpTable{{1}}});
}

inline Elem el(const AlgebraPtr& a, const std::string& label) {
    auto e = a->element_of(label);
    if (!e) throw std::runtime_error("no element labeled " + label);
    return *e;
}

inline std::vector<Elem> els(const AlgebraPtr& a, const std::vector<std::string>& labels) {
    std::vector<Elem> out;
    for (const auto& l : labels) out.push_back(el(a, l));
    return out;
}

inline Quad quad(const AlgebraPtr& src, const AlgebraPtr& tgt, const std::string& a,
                 const std::string& b, const std::string& c, const std::string& d) {
    return Quad{el(src, a), el(src, b), el(tgt, c), el(tgt, d)};
}

/// Witness slot lookup by name.
inline std::string slot(const Verdict& v, const std::string& name) {
    if (!v.witness) return "";
    for (const auto& [k, val] : v.witness->slots)
        if (k == name) return val;
    return "";
}

} // namespace testutil

#endif
