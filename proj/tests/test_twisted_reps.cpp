#include "orbk/chartable.hpp"
#include "orbk/h2.hpp"
#include "orbk/trring.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace orbk;

namespace {

FiniteGroup v4() { return FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}}); }
FiniteGroup sym3() { return FiniteGroup::from_permutations(3, {{1, 0, 2}, {1, 2, 0}}); }
FiniteGroup sym4() { return FiniteGroup::from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}); }
FiniteGroup dih4() { return FiniteGroup::from_permutations(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}); }
FiniteGroup cyclic(int n) {
    Perm r(n);
    for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
    return FiniteGroup::from_permutations(n, {r});
}

}  // namespace

TEST_CASE("character table of Z/2 and Z/3") {
    FiniteGroup z2 = cyclic(2);
    CharacterTable t = character_table(z2);
    REQUIRE(t.row_count() == 2);
    CHECK(t.degrees == std::vector<long>{1, 1});
    bool seen_trivial = false, seen_sign = false;
    for (int r = 0; r < 2; ++r) {
        if (t.value(r, 1) == Cyclotomic(1)) seen_trivial = true;
        if (t.value(r, 1) == Cyclotomic(-1)) seen_sign = true;
    }
    CHECK(seen_trivial);
    CHECK(seen_sign);

    CharacterTable t3 = character_table(cyclic(3));
    REQUIRE(t3.row_count() == 3);
    CHECK(t3.level == 3);
}

TEST_CASE("character table of S3 has degrees 1,1,2") {
    CharacterTable t = character_table(sym3());
    REQUIRE(t.row_count() == 3);
    CHECK(t.degrees == std::vector<long>{1, 1, 2});  // sorted by degree
    long sq = 0;
    for (long d : t.degrees) sq += d * d;
    CHECK(sq == 6);
}

TEST_CASE("character table of S4 and D4") {
    CharacterTable t = character_table(sym4());
    REQUIRE(t.row_count() == 5);
    CHECK(t.degrees == std::vector<long>{1, 1, 2, 3, 3});

    CharacterTable d = character_table(dih4());
    REQUIRE(d.row_count() == 5);
    CHECK(d.degrees == std::vector<long>{1, 1, 1, 1, 2});
}

TEST_CASE("twisted table at the zero cocycle is the ordinary table") {
    for (const FiniteGroup& G : {v4(), sym3(), dih4()}) {
        Cocycle z = zero_cocycle(G, 2);
        TwistedCharacterTable tw = twisted_character_table(G, z);
        CharacterTable ord = character_table(G);
        REQUIRE(tw.rank() == ord.row_count());
        for (int r = 0; r < tw.rank(); ++r) {
            CHECK(tw.degrees[r] == ord.degrees[r]);
            for (int g = 0; g < G.order(); ++g) CHECK(tw.values[r][g] == ord.value(r, g));
        }
    }
}

TEST_CASE("V4 twisted table is the single 2-dimensional row") {
    FiniteGroup G = v4();
    CohomologyClassSet h2 = h2_group(G, 2);
    TwistedCharacterTable tw = twisted_character_table(G, h2.class_reps[1]);
    REQUIRE(tw.rank() == 1);
    CHECK(tw.degrees == std::vector<long>{2});
    CHECK(tw.values[0][0] == Cyclotomic(2));
    CHECK(tw.values[0][1].is_zero());
    CHECK(tw.values[0][2].is_zero());
    CHECK(tw.values[0][3].is_zero());
}

TEST_CASE("rank of R_alpha agrees between the scan and the table") {
    FiniteGroup G = v4();
    CohomologyClassSet h2 = h2_group(G, 2);
    CHECK(rank_r_alpha(G, h2.class_reps[1], true) == 1);
    CHECK(rank_r_alpha(G, h2.class_reps[0], true) == 4);

    FiniteGroup S4 = sym4();
    CohomologyClassSet h24 = h2_group(S4, 2);
    CHECK(rank_r_alpha(S4, h24.class_reps[1], true) == 3);
    CHECK(rank_r_alpha(S4, h24.class_reps[0], true) == 5);
}

TEST_CASE("spin table of the double cover of S4") {
    FiniteGroup G = sym4();
    CohomologyClassSet h2 = h2_group(G, 2);
    TwistedCharacterTable tw = twisted_character_table(G, h2.class_reps[1]);
    REQUIRE(tw.rank() == 3);
    CHECK(tw.degrees == std::vector<long>{2, 2, 4});  // 4+4+16 = 24
}

TEST_CASE("twisted tables for every class and modulus on small groups") {
    for (const FiniteGroup& G : {v4(), sym3(), dih4(), cyclic(4), cyclic(6)}) {
        for (long m : {2L, 3L, 4L}) {
            CohomologyClassSet h2 = h2_group(G, m);
            for (const Cocycle& rep : h2.class_reps) {
                // construction asserts: rank == regular count, sum d^2 == |G|,
                // vanishing off regular classes, exact orthonormality
                TwistedCharacterTable tw = twisted_character_table(G, rep);
                CHECK(tw.rank() >= 1);
            }
        }
    }
}

TEST_CASE("decompose_product recovers the V4 relations") {
    FiniteGroup G = v4();
    CohomologyClassSet h2 = h2_group(G, 2);
    TwistedCharacterTable R0 = twisted_character_table(G, h2.class_reps[0]);
    TwistedCharacterTable R1 = twisted_character_table(G, h2.class_reps[1]);

    // mu * mu = 1 + x + y + xy: the sum cocycle is literally zero again
    std::vector<long> mu_sq = decompose_product(R1, 0, R1, 0, R0);
    CHECK(mu_sq == std::vector<long>{1, 1, 1, 1});

    // x * mu = mu for every linear character x
    for (int i = 0; i < R0.rank(); ++i) {
        std::vector<long> xm = decompose_product(R0, i, R1, 0, R1);
        CHECK(xm == std::vector<long>{1});
    }
    // x * x = trivial row for every linear character of V4
    int unit = -1;
    for (int r = 0; r < R0.rank(); ++r) {
        bool all_one = true;
        for (int g = 0; g < 4; ++g) all_one &= (R0.values[r][g] == Cyclotomic(1));
        if (all_one) unit = r;
    }
    REQUIRE(unit >= 0);
    for (int i = 0; i < R0.rank(); ++i) {
        std::vector<long> xx = decompose_product(R0, i, R0, i, R0);
        std::vector<long> expect(R0.rank(), 0);
        expect[unit] = 1;
        CHECK(xx == expect);
    }
    // unit of the bigraded ring: 1 * mu = mu
    CHECK(decompose_product(R0, unit, R1, 0, R1) == std::vector<long>{1});
}

TEST_CASE("dual characters") {
    FiniteGroup G = v4();
    CohomologyClassSet h2 = h2_group(G, 2);
    TwistedCharacterTable R1 = twisted_character_table(G, h2.class_reps[1]);
    // -alpha = alpha at m=2; mu is real so mu* = mu
    TwistedCharacterTable R1neg = twisted_character_table(G, cocycle_negate(h2.class_reps[1]));
    CHECK(dual_character(R1, 0, R1neg) == std::vector<long>{1});

    // dual o dual = identity on the ordinary table of S3
    FiniteGroup S3 = sym3();
    Cocycle z = zero_cocycle(S3, 2);
    TwistedCharacterTable T = twisted_character_table(S3, z);
    for (int r = 0; r < T.rank(); ++r) {
        std::vector<long> d1 = dual_character(T, r, T);
        int img = -1;
        for (int s = 0; s < T.rank(); ++s)
            if (d1[s]) { REQUIRE(d1[s] == 1); REQUIRE(img == -1); img = s; }
        REQUIRE(img >= 0);
        std::vector<long> d2 = dual_character(T, img, T);
        for (int s = 0; s < T.rank(); ++s) CHECK(d2[s] == (s == r ? 1 : 0));
    }
}

TEST_CASE("restriction maps") {
    FiniteGroup G = v4();
    CohomologyClassSet h2 = h2_group(G, 2);
    const Cocycle& alpha = h2.class_reps[1];
    TwistedCharacterTable R1 = twisted_character_table(G, alpha);

    // restriction of mu to <a>: the restricted extension splits and mu
    // decomposes as two distinct linear characters, 2 = 1 + 1
    SubgroupGroup H = subgroup_as_group(G, {0, 1});
    Cocycle res = restrict_cocycle(alpha, H);
    TwistedCharacterTable TH = twisted_character_table(H.group, res);
    REQUIRE(TH.rank() == 2);
    CHECK(TH.degrees == std::vector<long>{1, 1});
    std::vector<long> mult = restriction_map(R1, 0, H, TH);
    CHECK(mult == std::vector<long>{1, 1});

    // restriction to the trivial subgroup: degree copies of the unit
    SubgroupGroup T = subgroup_as_group(G, {0});
    TwistedCharacterTable TT = twisted_character_table(T.group, restrict_cocycle(alpha, T));
    CHECK(restriction_map(R1, 0, T, TT) == std::vector<long>{2});

    // restriction to G itself is the identity
    SubgroupGroup W = subgroup_as_group(G, {0, 1, 2, 3});
    TwistedCharacterTable TW = twisted_character_table(W.group, restrict_cocycle(alpha, W));
    CHECK(restriction_map(R1, 0, W, TW) == std::vector<long>{1});
}

TEST_CASE("TR ring of the trivial group and of V4") {
    FiniteGroup T = FiniteGroup::trivial();
    TRRing rt = tr_ring(T, 2);
    CHECK(rt.total_rank() == 1);

    FiniteGroup G = v4();
    TRRing R = tr_ring(G, 2);
    REQUIRE(R.class_count() == 2);
    CHECK(R.total_rank() == 5);
    CHECK(R.tables[0].rank() == 4);
    CHECK(R.tables[1].rank() == 1);
    CHECK(R.sum_class[1][1] == 0);
    CHECK(R.products[1][1][0][0] == std::vector<long>{1, 1, 1, 1});  // mu^2 = 1+x+y+xy
    for (int i = 0; i < 4; ++i) CHECK(R.products[0][1][i][0] == std::vector<long>{1});
    CHECK(R.dual_class[1] == 1);
    CHECK(R.duals[1][0] == std::vector<long>{1});
    check_tr_associativity(R);
}

TEST_CASE("TR of a group with trivial H2 is the ordinary representation ring") {
    FiniteGroup G = cyclic(4);
    TRRing R = tr_ring(G, 2);
    CHECK(R.class_count() == 1);
    CHECK(R.total_rank() == 4);
    check_tr_associativity(R);
}

TEST_CASE("TR associativity on D4 at m=2") {
    TRRing R = tr_ring(dih4(), 2);
    CHECK(R.class_count() == 2);
    check_tr_associativity(R);
}

TEST_CASE("TR of Z4 x Z4 at m=4: order-4 twists and canonical rebasing") {
    // H^2 here is Z/4, so literal sums of canonical representatives land in
    // classes whose canonical representative differs; the structure
    // constants go through the circle-trivialization rebase.
    FiniteGroup G =
        FiniteGroup::from_permutations(8, {{1, 2, 3, 0, 4, 5, 6, 7}, {0, 1, 2, 3, 5, 6, 7, 4}});
    CohomologyClassSet h2 = h2_group(G, 4);
    REQUIRE(h2.invariant_factors == std::vector<long>{4});
    REQUIRE(h2.class_count() == 4);
    // regularity scan: pairing twist leaves only the identity; its square
    // leaves the 2-torsion
    CHECK(alpha_regular_classes(h2.class_reps[1]).size() == 1);
    CHECK(alpha_regular_classes(h2.class_reps[2]).size() == 4);
    CHECK(alpha_regular_classes(h2.class_reps[3]).size() == 1);

    TRRing R = tr_ring(G, 4);
    CHECK(R.total_rank() == 22);  // 16 + 1 + 4 + 1
    CHECK(R.tables[1].degrees == std::vector<long>{4});
    CHECK(R.tables[2].degrees == std::vector<long>{2, 2, 2, 2});
    CHECK(R.dual_class[1] == 3);  // duality pairs alpha with -alpha
    check_tr_associativity(R);
}

TEST_CASE("bijection with the twisted group algebra dimension") {
    // sum over irreducibles of d^2 equals |G| = dim C^alpha G, for every class
    for (const FiniteGroup& G : {v4(), sym4()}) {
        CohomologyClassSet h2 = h2_group(G, 2);
        for (const Cocycle& rep : h2.class_reps) {
            TwistedCharacterTable tw = twisted_character_table(G, rep);
            long sq = 0;
            for (long d : tw.degrees) sq += d * d;
            CHECK(sq == G.order());
        }
    }
}
