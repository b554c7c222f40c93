#include "doctest.h"

#include "generators.hpp"
#include "propalg/sweep.hpp"

using namespace propalg;
using namespace testutil;

// Smaller seeded editions of the big property suites; the acceptance
// binary reruns the same generators at full scale.

TEST_CASE("metatheorems on generated instances") {
    std::mt19937_64 rng(0xA11CE);
    int pf_pairs = 0, phoms = 0;
    for (int trial = 0; trial < 800; ++trial) {
        RandomInstance sym = random_instance(rng, 4, trial % 2 == 0, false);
        RandomInstance tr = random_instance(rng, 4, trial % 2 == 0, true);
        const std::size_t n = tr.alg->size();
        PAlgebra pt(tr.alg, tr.rel);
        PAlgebra ps(sym.alg, sym.rel);

        std::vector<Mapping> pfs;
        for (const auto& g : all_graphs(n, n)) {
            Mapping f = Mapping::from_graph(tr.alg, tr.alg, g, "f");
            if (is_p_functor(f, *tr.rel).holds) pfs.push_back(f);
            if (pfs.size() >= 4) break;
        }
        for (const Mapping& f : pfs) {
            // p-functor implies p-idempotent, and AIP under p-transitivity.
            CHECK(is_p_idempotent(f, pt).holds);
            CHECK(aip_from_pfunctor(f, pt).holds);
            for (const Mapping& g : pfs) {
                ++pf_pairs;
                CHECK(is_p_functor(compose(f, g), *tr.rel).holds);
                CHECK(pfunctors_functionally_proportional(f, g, pt).holds);
                // F -> G holds between p-functors here, so the transfer
                // theorem applies and must confirm G.
                CHECK(pfunctor_transfer(f, g, *tr.rel, *tr.rel).holds);
            }
        }

        // Kernel of a p-homomorphism is a p-congruence (symmetric relation
        // suffices).
        int tested = 0;
        for (const auto& g : all_graphs(sym.alg->size(), sym.alg->size())) {
            Mapping f = Mapping::from_graph(sym.alg, sym.alg, g, "f");
            if (!is_homomorphism(f).holds) continue;
            if (!is_p_homomorphism(f, ps, ps).holds) continue;
            ++phoms;
            // A p-homomorphism satisfies the inference principle (it is
            // half of the equivalence) and its kernel is a p-congruence.
            CHECK(satisfies_aip(f, ps, ps).holds);
            CHECK(kernel_is_p_congruence(f, ps, ps).holds);
            if (++tested >= 3) break;
        }

        // F :: G implies F.H :: G.H for arbitrary H.
        const std::size_t m = sym.alg->size();
        std::vector<Elem> fg(m), gg(m), hg(m);
        for (std::size_t i = 0; i < m; ++i) {
            fg[i] = static_cast<Elem>(rng() % m);
            gg[i] = static_cast<Elem>(rng() % m);
            hg[i] = static_cast<Elem>(rng() % m);
        }
        Mapping f = Mapping::from_graph(sym.alg, sym.alg, fg, "F");
        Mapping g = Mapping::from_graph(sym.alg, sym.alg, gg, "G");
        Mapping h = Mapping::from_graph(sym.alg, sym.alg, hg, "H");
        auto rep = composition_respects_fp(f, g, h, *sym.rel);
        CHECK(rep.forward.holds);
        if (rep.converse) CHECK(rep.converse->holds);
    }
    CHECK(pf_pairs > 200);
    CHECK(phoms > 100);
}

TEST_CASE("library verdicts match the raw-membership oracle") {
    std::mt19937_64 rng(0xB0B);
    for (int trial = 0; trial < 250; ++trial) {
        RandomInstance ia = random_instance(rng, 4, trial % 2 == 0, false);
        const std::size_t n = ia.alg->size();
        PAlgebra pa(ia.alg, ia.rel);

        for (const auto& g : all_graphs(n, n)) {
            Mapping f = Mapping::from_graph(ia.alg, ia.alg, g, "f");
            const bool hom = is_homomorphism(f).holds;

            CHECK(is_p_functor(f, *ia.rel).holds == o_pfunctor(ia.raw, n, g));
            CHECK(is_p_idempotent(f, pa).holds == o_pidem(ia.raw, n, g));
            CHECK(satisfies_aip(f, pa, pa).holds == o_aip(ia.raw, ia.raw, n, g));
            CHECK(is_p_homomorphism(f, pa, pa).holds ==
                  (hom && o_prop_equiv(ia.raw, ia.raw, n, g)));
        }

        CHECK(check_inner_symmetry(*ia.rel).holds == o_symmetric(ia.raw, n));
        CHECK(check_reflexivity(*ia.rel).holds == o_reflexive(ia.raw, n));
        CHECK(check_determinism(*ia.rel).holds == o_deterministic(ia.raw, n));
        CHECK(check_p_transitivity(*ia.rel).holds == o_ptransitive(ia.raw, n));

        auto cls = random_partition(rng, n);
        Partition theta = to_partition(ia.alg, cls);
        const bool cong = is_congruence(theta, *ia.alg).holds;
        CHECK(cong == o_congruence(cls, *ia.alg));
        CHECK(is_p_congruence(theta, pa).holds == o_pcongruence(ia.raw, cls, *ia.alg));
    }
}

TEST_CASE("witness relations transfer along isomorphisms") {
    std::mt19937_64 rng(0xD1CE);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        OpTable t;
        for (std::size_t i = 0; i < n; ++i)
            t.flat.push_back(static_cast<std::uint32_t>(rng() % n));
        std::vector<std::string> la, lb;
        for (std::size_t i = 0; i < n; ++i) {
            la.push_back("a" + std::to_string(i));
            lb.push_back("b" + std::to_string(i));
        }
        std::vector<Elem> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = (Elem)i;
        std::shuffle(perm.begin(), perm.end(), rng);
        OpTable t2;
        t2.flat.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            t2.flat[(std::size_t)perm[i]] = (std::uint32_t)perm[t.flat[i]];
        auto a = FiniteAlgebra::tabular("A", la, Signature({{"S", 1}}), {t});
        auto b = FiniteAlgebra::tabular("B", lb, Signature({{"S", 1}}), {t2});
        Mapping iso = Mapping::from_graph(a, b, perm, "iso");
        REQUIRE(is_isomorphism(iso).holds);
        PAlgebra pa(a, ProportionRelation::witness(a, a, 3));
        PAlgebra pb(b, ProportionRelation::witness(b, b, 3));
        CHECK(is_p_homomorphism(iso, pa, pb).holds);
    }
}

TEST_CASE("verdicts are identical across thread counts") {
    auto z = FiniteAlgebra::int_plus("Z", 48);
    auto b2 = bool_xor_alg();
    PAlgebra pz(z, ProportionRelation::witness(z, z, 3));
    PAlgebra pb(b2, ProportionRelation::boolean_xor(b2, b2));
    Mapping m2 = Mapping::mod2(z, b2);

    set_sweep_threads(1);
    Verdict one = is_p_homomorphism(m2, pz, pb);
    Verdict aip1 = satisfies_aip(m2, pz, pb);
    set_sweep_threads(4);
    Verdict four = is_p_homomorphism(m2, pz, pb);
    Verdict aip4 = satisfies_aip(m2, pz, pb);
    set_sweep_threads(0);

    REQUIRE_FALSE(one.holds);
    CHECK(one.witness->slots == four.witness->slots);
    CHECK(one.swept == four.swept);
    CHECK(aip1.witness->slots == aip4.witness->slots);

    // Repeated runs agree as well.
    Verdict again = is_p_homomorphism(m2, pz, pb);
    CHECK(again.witness->slots == four.witness->slots);
}
