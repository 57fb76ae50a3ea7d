#include "orbk/bredon.hpp"
#include "orbk/complex.hpp"
#include "orbk/h2.hpp"
#include "orbk/sectors.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbk;

namespace {

std::vector<std::string> labels(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
    return out;
}

SimplicialComplex hexagon() {
    return SimplicialComplex::from_maximal(
        labels(6), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
}

SimplicialComplex triangle() {
    return SimplicialComplex::from_maximal(labels(3), {{0, 1}, {1, 2}, {2, 0}});
}

SimplicialComplex tetra_boundary() {
    return SimplicialComplex::from_maximal(labels(4), {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex point() { return SimplicialComplex::from_maximal({"pt"}, {{0}}); }

FiniteGroup& z2_hex_group() {
    static FiniteGroup G = FiniteGroup::from_permutations(6, {{0, 5, 4, 3, 2, 1}});
    return G;
}
GComplex z2_hex() { return make_g_complex(z2_hex_group(), hexagon(), {{0, 5, 4, 3, 2, 1}}); }

FiniteGroup& z2_anti_group() {
    static FiniteGroup G = FiniteGroup::from_permutations(6, {{3, 4, 5, 0, 1, 2}});
    return G;
}
GComplex z2_anti() { return make_g_complex(z2_anti_group(), hexagon(), {{3, 4, 5, 0, 1, 2}}); }

FiniteGroup& z6_group() {
    static FiniteGroup G = FiniteGroup::from_permutations(6, {{1, 2, 3, 4, 5, 0}});
    return G;
}
GComplex z6_hex() { return make_g_complex(z6_group(), hexagon(), {{1, 2, 3, 4, 5, 0}}); }

FiniteGroup& z3_group() {
    static FiniteGroup G = FiniteGroup::from_permutations(3, {{1, 2, 0}});
    return G;
}
GComplex z3_tri() { return make_g_complex(z3_group(), triangle(), {{1, 2, 0}}); }

FiniteGroup& v4_hex_group() {
    static FiniteGroup G =
        FiniteGroup::from_permutations(6, {{3, 4, 5, 0, 1, 2}, {0, 5, 4, 3, 2, 1}});
    return G;
}
GComplex v4_hex() {
    return make_g_complex(v4_hex_group(), hexagon(), {{3, 4, 5, 0, 1, 2}, {0, 5, 4, 3, 2, 1}});
}

FiniteGroup& s4_group() {
    static FiniteGroup G = FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    return G;
}
GComplex s4_tetra() {
    return make_g_complex(s4_group(), tetra_boundary(), {{1, 0, 2, 3}, {1, 2, 3, 0}});
}

GComplex point_with(const FiniteGroup& G) {
    std::vector<Perm> acts(G.generator_perms().size(), Perm{0});
    return make_g_complex(G, point(), acts);
}

}  // namespace

TEST_CASE("action validation") {
    // a permutation that breaks the edge set is rejected
    FiniteGroup G = FiniteGroup::from_permutations(6, {{2, 1, 0, 3, 4, 5}});
    CHECK_THROWS_WITH(make_g_complex(G, hexagon(), {{2, 1, 0, 3, 4, 5}}),
                      Catch::Matchers::ContainsSubstring("simplices"));
    // one action row per generator is required
    CHECK_THROWS_WITH(make_g_complex(v4_hex_group(), hexagon(), {{3, 4, 5, 0, 1, 2}}),
                      Catch::Matchers::ContainsSubstring("per group generator"));
    // the assignment must be a homomorphism: an order-2 generator cannot
    // act by an order-3 vertex permutation
    FiniteGroup Z2 = FiniteGroup::from_permutations(2, {{1, 0}});
    SimplicialComplex tri = triangle();
    CHECK_THROWS_WITH(make_g_complex(Z2, std::move(tri), {{1, 2, 0}}),
                      Catch::Matchers::ContainsSubstring("homomorphism"));
}

TEST_CASE("simplicial complex basics") {
    SimplicialComplex t = tetra_boundary();
    CHECK(t.count(0) == 4);
    CHECK(t.count(1) == 6);
    CHECK(t.count(2) == 4);
    CHECK(t.euler_characteristic() == 2);
    CHECK(t.betti() == std::vector<long>{1, 0, 1});

    CHECK(triangle().betti() == std::vector<long>{1, 1});
    CHECK(hexagon().betti() == std::vector<long>{1, 1});
    CHECK(point().betti() == std::vector<long>{1});
}

TEST_CASE("regularize round counts") {
    CHECK(regularize(z2_hex()).rounds == 0);   // reflection is already regular
    CHECK(regularize(v4_hex()).rounds == 1);   // one subdivision creates the rs-fixed vertices
    CHECK(regularize(z6_hex()).rounds == 2);   // free rotation needs the second derived complex
    CHECK(regularize(z3_tri()).rounds == 2);

    // subdivision preserves the homotopy type
    RegularizeResult r = regularize(s4_tetra());
    CHECK(r.complex.K.betti() == std::vector<long>{1, 0, 1});
    CHECK(r.complex.K.euler_characteristic() == 2);
}

TEST_CASE("fixed subcomplexes") {
    GComplex X = z2_hex();
    CHECK(fixed_subcomplex(X, {0}).K.vertex_count() == 6);  // identity fixes everything
    Subcomplex fs = fixed_subcomplex(X, {1});
    CHECK(fs.K.vertex_count() == 2);  // the two antipodal fixed vertices
    CHECK(fs.K.count(1) == 0);
    CHECK(fixed_subcomplex(z2_anti(), {1}).K.vertex_count() == 0);  // free action
}

TEST_CASE("quotient of the hexagon by the reflection is an interval") {
    GComplex X = z2_hex();
    std::vector<Perm> perms{X.vperm[0], X.vperm[1]};
    QuotientComplex qt = quotient_complex(X.K, perms);
    CHECK(qt.K.vertex_count() == 4);
    CHECK(qt.K.count(1) == 3);
    CHECK(qt.K.betti() == std::vector<long>{1, 0});

    // quotient Betti equals the dimension of the invariants, degree by degree
    std::vector<Mat<Rat>> P(2);
    for (int d = 0; d <= 1; ++d) {
        Mat<Rat> acc(X.K.count(d), X.K.count(d));
        for (const Perm& p : perms) acc = acc + chain_map_matrix<Rat>(X.K, p, d);
        P[d] = acc.scaled(Rat(1, 2));
    }
    CHECK(projected_betti(X.K, P) == std::vector<long>{1, 0});
}

TEST_CASE("sector decomposition of the reflection circle") {
    RegularizeResult r = regularize(z2_hex());
    SectorDecomposition sd = sector_decomposition(r.complex);
    REQUIRE(sd.entries.size() == 2);
    CHECK(sd.entries[0].betti == std::vector<long>{1, 0});  // X/G interval
    CHECK(sd.entries[1].betti == std::vector<long>{2});     // two fixed points mod Z/2
    CHECK(sd.kranks == KRank{3, 0});
}

TEST_CASE("sector decomposition of free and rotation actions") {
    RegularizeResult anti = regularize(z2_anti());
    SectorDecomposition sd = sector_decomposition(anti.complex);
    CHECK(sd.kranks == KRank{1, 1});  // only the untwisted sector, a circle
    CHECK(sd.entries[1].betti.empty());

    RegularizeResult rot = regularize(z6_hex());
    SectorDecomposition sd6 = sector_decomposition(rot.complex);
    CHECK(sd6.kranks == KRank{1, 1});
}

TEST_CASE("sectors of points recover representation ring ranks") {
    FiniteGroup V4 = FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
    GComplex X = point_with(V4);
    SectorDecomposition sd = sector_decomposition(X);
    CHECK(sd.kranks == KRank{4, 0});

    FiniteGroup triv = FiniteGroup::trivial();
    GComplex P = point_with(triv);
    CHECK(sector_decomposition(P).kranks == KRank{1, 0});
}

TEST_CASE("twisted ranks at the zero cocycle match the sector decomposition") {
    for (GComplex& X0 : std::vector<GComplex>{z2_hex(), z2_anti(), v4_hex(), z3_tri()}) {
        RegularizeResult r = regularize(std::move(X0));
        Cocycle z = zero_cocycle(*r.complex.G, 2);
        CHECK(twisted_k_ranks(r.complex, z) == sector_decomposition(r.complex).kranks);
    }
}

TEST_CASE("twisted ranks on a point equal rank R_alpha") {
    FiniteGroup V4 = FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
    CohomologyClassSet h2 = h2_group(V4, 2);
    GComplex X = point_with(V4);
    CHECK(twisted_k_ranks(X, h2.class_reps[0]) == KRank{4, 0});
    CHECK(twisted_k_ranks(X, h2.class_reps[1]) == KRank{1, 0});

    FiniteGroup S4 = FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    CohomologyClassSet h24 = h2_group(S4, 2);
    GComplex XP = point_with(S4);
    CHECK(twisted_k_ranks(XP, h24.class_reps[1]) == KRank{3, 0});
}

TEST_CASE("V4 circle: untwisted and twisted ranks, and the total identity") {
    RegularizeResult r = regularize(v4_hex());
    const FiniteGroup& G = *r.complex.G;
    CohomologyClassSet h2 = h2_group(G, 2);
    REQUIRE(h2.class_count() == 2);

    KRank untw = twisted_k_ranks(r.complex, h2.class_reps[0]);
    KRank tw = twisted_k_ranks(r.complex, h2.class_reps[1]);
    CHECK(untw == KRank{3, 0});
    CHECK(tw == KRank{3, 0});

    // chi(TK) = 6 chi(X/G) - chi(X) = 6
    SectorDecomposition sd = sector_decomposition(r.complex);
    long chi_quot = sd.entries[0].euler;
    long chi_total = untw.chi() + tw.chi();
    CHECK(chi_quot == 1);
    CHECK(r.complex.K.euler_characteristic() == 0);
    CHECK(chi_total == 6 * chi_quot - r.complex.K.euler_characteristic());
}

TEST_CASE("chi_orb via orbit cells") {
    RegularizeResult r = regularize(z2_hex());
    const FiniteGroup& G = *r.complex.G;
    CHECK(chi_orb_cells(r.complex, zero_cocycle(G, 2)) == 3);

    // free action: chi_orb = chi(X/G)
    RegularizeResult anti = regularize(z2_anti());
    CHECK(chi_orb_cells(anti.complex, zero_cocycle(*anti.complex.G, 2)) == 0);

    // always equals k0 - k1 of the twisted ranks
    for (GComplex& X0 : std::vector<GComplex>{z2_hex(), v4_hex(), z6_hex()}) {
        RegularizeResult rr = regularize(std::move(X0));
        CohomologyClassSet h2 = h2_group(*rr.complex.G, 2);
        for (const Cocycle& rep : h2.class_reps)
            CHECK(chi_orb_cells(rr.complex, rep) == twisted_k_ranks(rr.complex, rep).chi());
    }
}

TEST_CASE("euler characteristic identity chi_orb = chi(X u Sigma X)") {
    for (GComplex& X0 : std::vector<GComplex>{z2_hex(), z2_anti(), v4_hex(), z6_hex(), z3_tri()}) {
        RegularizeResult r = regularize(std::move(X0));
        SectorDecomposition sd = sector_decomposition(r.complex);
        long chi_sectors = 0;
        for (const SectorEntry& e : sd.entries) chi_sectors += e.euler;
        CHECK(chi_orb_cells(r.complex, zero_cocycle(*r.complex.G, 2)) == chi_sectors);
    }
}

TEST_CASE("cyclic decomposition on points") {
    GComplex X = point_with(z3_group());
    CyclicDecomposition cd = cyclic_decomposition(X);
    REQUIRE(cd.summands.size() == 2);
    CHECK(cd.summands[0].dim_q == 1);  // trivial subgroup
    CHECK(cd.summands[1].dim_q == 2);  // dim_Q Q(zeta_3)
    CHECK(cd.total == 3);

    FiniteGroup S3 = FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}});
    GComplex XP = point_with(S3);
    CyclicDecomposition cd3 = cyclic_decomposition(XP);
    CHECK(cd3.total == 3);  // = number of classes of S3

    FiniteGroup Z4 = FiniteGroup::from_permutations(4, {{1, 2, 3, 0}});
    CHECK(cyclic_decomposition(point_with(Z4)).total == 4);  // 1 + 1 + 2
}

TEST_CASE("cyclic total dimension equals the element-indexed total") {
    for (GComplex& X0 : std::vector<GComplex>{z2_hex(), z2_anti(), v4_hex(), z6_hex(), z3_tri()}) {
        RegularizeResult r = regularize(std::move(X0));
        SectorDecomposition sd = sector_decomposition(r.complex);
        CyclicDecomposition cd = cyclic_decomposition(r.complex);
        CHECK(cd.total == sd.kranks.k0 + sd.kranks.k1);
    }
}

TEST_CASE("bredon cohomology with a trivial group is simplicial cohomology") {
    FiniteGroup triv = FiniteGroup::trivial();
    GComplex X = make_g_complex(triv, tetra_boundary(), {});
    BredonResult b = bredon_cohomology(X, zero_cocycle(triv, 1));
    CHECK(b.ranks == std::vector<long>{1, 0, 1});
}

TEST_CASE("bredon on a point is rank R_alpha in degree zero") {
    FiniteGroup V4 = FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
    CohomologyClassSet h2 = h2_group(V4, 2);
    GComplex X = point_with(V4);
    BredonResult b0 = bredon_cohomology(X, h2.class_reps[0]);
    CHECK(b0.ranks == std::vector<long>{4});
    BredonResult b1 = bredon_cohomology(X, h2.class_reps[1]);
    CHECK(b1.ranks == std::vector<long>{1});
}

TEST_CASE("bredon with constant coefficients computes H*(X/G)") {
    for (GComplex& X0 : std::vector<GComplex>{z2_hex(), z2_anti(), v4_hex(), z6_hex(), s4_tetra()}) {
        RegularizeResult r = regularize(std::move(X0));
        BredonResult b = bredon_constant_coefficients(r.complex);
        std::vector<Perm> all;
        for (int g = 0; g < r.complex.G->order(); ++g) all.push_back(r.complex.vperm[g]);
        QuotientComplex qt = quotient_complex(r.complex.K, all);
        std::vector<long> quotient_betti = qt.K.betti();
        quotient_betti.resize(b.ranks.size(), 0);
        CHECK(b.ranks == quotient_betti);
    }
}

TEST_CASE("collapse: folded Bredon ranks equal the twisted decomposition ranks") {
    for (GComplex& X0 : std::vector<GComplex>{z2_hex(), z2_anti(), v4_hex(), z6_hex(), z3_tri()}) {
        RegularizeResult r = regularize(std::move(X0));
        CohomologyClassSet h2 = h2_group(*r.complex.G, 2);
        for (const Cocycle& rep : h2.class_reps) {
            BredonResult b = bredon_cohomology(r.complex, rep);
            KRank tw = twisted_k_ranks(r.complex, rep);
            CHECK(b.folded == tw);
        }
    }
}

TEST_CASE("collapse on the tetrahedron sphere with S4, both twists") {
    RegularizeResult r = regularize(s4_tetra());
    CohomologyClassSet h2 = h2_group(*r.complex.G, 2);
    REQUIRE(h2.class_count() == 2);
    SectorDecomposition sd = sector_decomposition(r.complex);
    for (const Cocycle& rep : h2.class_reps) {
        BredonResult b = bredon_cohomology(r.complex, rep);
        KRank tw = twisted_k_ranks(r.complex, rep);
        CHECK(b.folded == tw);
        CHECK(chi_orb_cells(r.complex, rep) == tw.chi());
    }
    CHECK(bredon_cohomology(r.complex, h2.class_reps[0]).folded == sd.kranks);
    CHECK(cyclic_decomposition(r.complex).total == sd.kranks.k0 + sd.kranks.k1);
}

TEST_CASE("twisted ranks over a genuine cyclotomic field (m = 4)") {
    // Z4 x Z4 on a point with an order-4 twist: the L characters take
    // values in the fourth roots of unity, so the averaging idempotent
    // lives over Q(i)
    FiniteGroup G =
        FiniteGroup::from_permutations(8, {{1, 2, 3, 0, 4, 5, 6, 7}, {0, 1, 2, 3, 5, 6, 7, 4}});
    CohomologyClassSet h2 = h2_group(G, 4);
    std::vector<Perm> acts(G.generator_perms().size(), Perm{0});
    GComplex X = make_g_complex(G, point(), acts);
    CHECK(twisted_k_ranks(X, h2.class_reps[1]) == KRank{1, 0});
    CHECK(twisted_k_ranks(X, h2.class_reps[2]) == KRank{4, 0});
    BredonResult b = bredon_cohomology(X, h2.class_reps[1]);
    CHECK(b.ranks == std::vector<long>{1});

    // V4 at modulus 4 sees the same circle class as at modulus 2
    RegularizeResult r = regularize(v4_hex());
    CohomologyClassSet h24 = h2_group(*r.complex.G, 4);
    REQUIRE(h24.class_count() == 2);
    CHECK(twisted_k_ranks(r.complex, h24.class_reps[1]) == KRank{3, 0});
}

TEST_CASE("presentation independence under subdivision") {
    RegularizeResult a = regularize(z2_hex());
    GComplex subdivided = barycentric_subdivide(z2_hex());
    RegularizeResult b = regularize(std::move(subdivided));
    CHECK(sector_decomposition(a.complex).kranks == sector_decomposition(b.complex).kranks);
    CohomologyClassSet h2a = h2_group(*a.complex.G, 2);
    CohomologyClassSet h2b = h2_group(*b.complex.G, 2);
    for (long c = 0; c < h2a.class_count(); ++c) {
        CHECK(twisted_k_ranks(a.complex, h2a.class_reps[c]) ==
              twisted_k_ranks(b.complex, h2b.class_reps[c]));
        CHECK(bredon_cohomology(a.complex, h2a.class_reps[c]).folded ==
              bredon_cohomology(b.complex, h2b.class_reps[c]).folded);
    }
}
