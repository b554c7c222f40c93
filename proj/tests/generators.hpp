#ifndef PROPALG_TEST_GENERATORS_HPP
#define PROPALG_TEST_GENERATORS_HPP

// Seeded instance generators and brute-force oracles for the property
// suites.  The oracles quantify directly over raw set membership and the
// map graph; they never call the library's sweep machinery, so they can
// referee it.

#include <array>
#include <random>
#include <set>
#include <vector>

#include "helpers.hpp"

namespace testutil {

using RawRel = std::set<std::array<Elem, 4>>;

inline void sym_close(RawRel& r) {
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& q : RawRel(r))
            if (r.insert({q[2], q[3], q[0], q[1]}).second) grew = true;
    }
}

inline void ptrans_close(RawRel& r) {
    for (bool grew = true; grew;) {
        grew = false;
        sym_close(r);
        for (const auto& q1 : RawRel(r))
            for (const auto& q2 : RawRel(r)) {
                if (q1[2] != q2[0] || q1[3] != q2[1]) continue;
                if (r.insert({q1[0], q1[1], q2[2], q2[3]}).second) grew = true;
            }
    }
}

struct RandomInstance {
    AlgebraPtr alg;
    RawRel raw;
    RelationPtr rel;
};

/// Random tabular algebra of size 1..max_n with an optional unary
/// operation, plus a random symmetric extensional relation on it
/// (p-transitively closed on request).
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_n, bool with_op,
                                      bool force_ptrans) {
    RandomInstance inst;
    const std::size_t n = 1 + rng() % max_n;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    if (with_op) {
        OpTable t;
        for (std::size_t i = 0; i < n; ++i)
            t.flat.push_back(static_cast<std::uint32_t>(rng() % n));
        inst.alg = FiniteAlgebra::tabular("G", labels, Signature({{"S", 1}}), {t});
    } else {
        inst.alg = FiniteAlgebra::tabular("G", labels, Signature({}), {});
    }
    const std::size_t want = rng() % (n * n + 1);
    for (std::size_t k = 0; k < want; ++k)
        inst.raw.insert({static_cast<Elem>(rng() % n), static_cast<Elem>(rng() % n),
                         static_cast<Elem>(rng() % n), static_cast<Elem>(rng() % n)});
    sym_close(inst.raw);
    if (force_ptrans) ptrans_close(inst.raw);
    std::vector<Quad> quads;
    for (const auto& q : inst.raw) quads.push_back({q[0], q[1], q[2], q[3]});
    inst.rel = ProportionRelation::extensional(inst.alg, inst.alg, quads, false);
    return inst;
}

/// All graphs of total maps between universes of the given sizes, as
/// image vectors in canonical order.
inline std::vector<std::vector<Elem>> all_graphs(std::size_t from, std::size_t onto) {
    std::vector<std::vector<Elem>> out;
    std::vector<Elem> g(from, 0);
    while (true) {
        out.push_back(g);
        std::size_t pos = from;
        while (pos > 0) {
            if (static_cast<std::size_t>(++g[pos - 1]) < onto) break;
            g[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return out;
}

// ---- brute-force oracles -------------------------------------------------

inline bool o_holds(const RawRel& r, Elem a, Elem b, Elem c, Elem d) {
    return r.count({a, b, c, d}) != 0;
}

inline bool o_symmetric(const RawRel& r, std::size_t n) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            for (Elem c = 0; c < (Elem)n; ++c)
                for (Elem d = 0; d < (Elem)n; ++d)
                    if (o_holds(r, a, b, c, d) != o_holds(r, c, d, a, b)) return false;
    return true;
}

inline bool o_reflexive(const RawRel& r, std::size_t n) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            if (!o_holds(r, a, b, a, b)) return false;
    return true;
}

inline bool o_deterministic(const RawRel& r, std::size_t n) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem d = 0; d < (Elem)n; ++d)
            if (d != a && o_holds(r, a, a, a, d)) return false;
    return true;
}

inline bool o_ptransitive(const RawRel& r, std::size_t n) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            for (Elem c = 0; c < (Elem)n; ++c)
                for (Elem d = 0; d < (Elem)n; ++d)
                    for (Elem e = 0; e < (Elem)n; ++e)
                        for (Elem f = 0; f < (Elem)n; ++f)
                            if (o_holds(r, a, b, c, d) && o_holds(r, c, d, e, f) &&
                                !o_holds(r, a, b, e, f))
                                return false;
    return true;
}

inline bool o_aip(const RawRel& ra, const RawRel& rb, std::size_t n,
                  const std::vector<Elem>& f) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            for (Elem c = 0; c < (Elem)n; ++c)
                for (Elem d = 0; d < (Elem)n; ++d)
                    if (o_holds(ra, a, b, c, d) && !o_holds(rb, f[a], f[b], f[c], f[d]))
                        return false;
    return true;
}

inline bool o_prop_equiv(const RawRel& ra, const RawRel& rb, std::size_t n,
                         const std::vector<Elem>& f) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            for (Elem c = 0; c < (Elem)n; ++c)
                for (Elem d = 0; d < (Elem)n; ++d)
                    if (o_holds(ra, a, b, c, d) != o_holds(rb, f[a], f[b], f[c], f[d]))
                        return false;
    return true;
}

inline bool o_pfunctor(const RawRel& r_ab, std::size_t n, const std::vector<Elem>& f) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            if (!o_holds(r_ab, a, b, f[a], f[b])) return false;
    return true;
}

inline bool o_pidem(const RawRel& r, std::size_t n, const std::vector<Elem>& f) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            if (!o_holds(r, f[a], f[b], f[f[a]], f[f[b]])) return false;
    return true;
}

inline bool o_direction(const RawRel& r, std::size_t n, const std::vector<Elem>& f,
                        const std::vector<Elem>& g) {
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            if (!o_holds(r, f[a], f[b], g[a], g[b])) return false;
    return true;
}

inline bool o_congruence(const std::vector<std::size_t>& cls, const FiniteAlgebra& alg) {
    const std::size_t n = alg.size();
    for (std::size_t oi = 0; oi < alg.signature().size(); ++oi) {
        const unsigned arity = alg.signature().at(oi).arity;
        if (arity != 1) continue; // generated signatures are empty or unary
        for (Elem x = 0; x < (Elem)n; ++x)
            for (Elem y = 0; y < (Elem)n; ++y)
                if (cls[x] == cls[y] &&
                    cls[alg.apply(oi, std::vector<Elem>{x})] !=
                        cls[alg.apply(oi, std::vector<Elem>{y})])
                    return false;
    }
    return true;
}

inline bool o_pcongruence(const RawRel& r, const std::vector<std::size_t>& cls,
                          const FiniteAlgebra& alg) {
    if (!o_congruence(cls, alg)) return false;
    const std::size_t n = alg.size();
    for (Elem a = 0; a < (Elem)n; ++a)
        for (Elem b = 0; b < (Elem)n; ++b)
            for (Elem c = 0; c < (Elem)n; ++c)
                for (Elem d = 0; d < (Elem)n; ++d) {
                    if (!o_holds(r, a, b, c, d)) continue;
                    for (Elem a2 = 0; a2 < (Elem)n; ++a2)
                        for (Elem b2 = 0; b2 < (Elem)n; ++b2)
                            for (Elem c2 = 0; c2 < (Elem)n; ++c2)
                                for (Elem d2 = 0; d2 < (Elem)n; ++d2)
                                    if (cls[a] == cls[a2] && cls[b] == cls[b2] &&
                                        cls[c] == cls[c2] && cls[d] == cls[d2] &&
                                        !o_holds(r, a2, b2, c2, d2))
                                        return false;
                }
    return true;
}

/// Random partition of {0..n-1} as a class-index vector.
inline std::vector<std::size_t> random_partition(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> cls(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cls[i] = rng() % (next + 1);
        if (cls[i] == next) ++next;
    }
    return cls;
}

inline Partition to_partition(const AlgebraPtr& alg, const std::vector<std::size_t>& cls) {
    std::size_t k = 0;
    for (auto c : cls) k = std::max(k, c + 1);
    std::vector<std::vector<Elem>> blocks(k);
    for (std::size_t i = 0; i < cls.size(); ++i) blocks[cls[i]].push_back((Elem)i);
    return Partition(alg, blocks);
}

} // namespace testutil

#endif
