#pragma once

#include "orbk/chartable.hpp"
#include "orbk/h2.hpp"

#include <vector>

namespace orbk {

/**
 * The total twisted representation ring TR(G) at modulus m: one twisted
 * character table per H^2 class, with all pairwise structure constants.
 * The product of a row of R_alpha and a row of R_beta is computed on the
 * literal cocycle sum and then rebased onto the canonical representative
 * of the class [alpha + beta] through an explicit circle trivialization,
 * so the published multiplicities always refer to the canonical bases.
 */
struct TRRing {
    const FiniteGroup* G = nullptr;
    long modulus = 1;
    CohomologyClassSet h2;
    std::vector<TwistedCharacterTable> tables;
    std::vector<std::vector<long>> sum_class;   // [c1][c2] -> class index
    std::vector<long> dual_class;               // [c] -> class index of -c
    // products[c1][c2][i][j]: multiplicities over the rows of sum_class[c1][c2]
    std::vector<std::vector<std::vector<std::vector<std::vector<long>>>>> products;
    // duals[c][i]: multiplicities over the rows of dual_class[c]
    std::vector<std::vector<std::vector<long>>> duals;

    long class_count() const { return static_cast<long>(tables.size()); }
    long total_rank() const {
        long r = 0;
        for (const TwistedCharacterTable& t : tables) r += t.rank();
        return r;
    }
};

namespace detail {

/// Section values rebased from the literal cocycle `from` to the
/// cohomologous `to` through the circle trivialization of from - to.
inline std::vector<Cyclotomic> rebase_values(const FiniteGroup& G, std::vector<Cyclotomic> vec,
                                             const Cocycle& from, const Cocycle& to) {
    Cocycle diff = cocycle_sum(from, cocycle_negate(to));
    bool zero = true;
    for (const auto& row : diff.values)
        for (long v : row) zero &= (v == 0);
    if (zero) return vec;
    TrivializingCochain u = trivialize_s1(diff);
    for (int g = 0; g < G.order(); ++g)
        vec[g] = vec[g] * Cyclotomic::root(static_cast<int>(u.modulus), -u.values[g]);
    return vec;
}

}  // namespace detail

inline TRRing tr_ring(const FiniteGroup& G, long m, const H2Caps& caps = {}) {
    TRRing R;
    R.G = &G;
    R.modulus = m;
    R.h2 = h2_group(G, m, caps);
    long C = R.h2.class_count();
    for (long c = 0; c < C; ++c)
        R.tables.push_back(twisted_character_table(G, R.h2.class_reps[c]));

    R.sum_class.assign(C, std::vector<long>(C, 0));
    R.dual_class.assign(C, 0);
    R.products.assign(C, {});
    R.duals.assign(C, {});
    for (long c1 = 0; c1 < C; ++c1) {
        R.products[c1].assign(C, {});
        for (long c2 = 0; c2 < C; ++c2) {
            long target = R.h2.index_of(
                R.h2.sum_coords(R.h2.class_coords[c1], R.h2.class_coords[c2]));
            R.sum_class[c1][c2] = target;
            Cocycle literal = cocycle_sum(R.h2.class_reps[c1], R.h2.class_reps[c2]);
            const TwistedCharacterTable& A = R.tables[c1];
            const TwistedCharacterTable& B = R.tables[c2];
            const TwistedCharacterTable& T = R.tables[target];
            R.products[c1][c2].assign(A.rank(), std::vector<std::vector<long>>(B.rank()));
            for (int i = 0; i < A.rank(); ++i)
                for (int j = 0; j < B.rank(); ++j) {
                    std::vector<Cyclotomic> vec(G.order());
                    for (int g = 0; g < G.order(); ++g) vec[g] = A.values[i][g] * B.values[j][g];
                    vec = detail::rebase_values(G, std::move(vec), literal,
                                                R.h2.class_reps[target]);
                    R.products[c1][c2][i][j] = decompose_in_table(T, vec);
                }
        }
        long dual = R.h2.index_of(R.h2.negate_coords(R.h2.class_coords[c1]));
        R.dual_class[c1] = dual;
        Cocycle literal_neg = cocycle_negate(R.h2.class_reps[c1]);
        const TwistedCharacterTable& A = R.tables[c1];
        R.duals[c1].assign(A.rank(), {});
        for (int i = 0; i < A.rank(); ++i) {
            std::vector<Cyclotomic> vec(G.order());
            for (int g = 0; g < G.order(); ++g) vec[g] = A.values[i][g].conj();
            vec = detail::rebase_values(G, std::move(vec), literal_neg, R.h2.class_reps[dual]);
            R.duals[c1][i] = decompose_in_table(R.tables[dual], vec);
        }
    }
    return R;
}

/// (x*y)*z == x*(y*z) on all basis triples, through the structure constants.
inline void check_tr_associativity(const TRRing& R) {
    long C = R.class_count();
    for (long c1 = 0; c1 < C; ++c1)
        for (long c2 = 0; c2 < C; ++c2)
            for (long c3 = 0; c3 < C; ++c3) {
                long c12 = R.sum_class[c1][c2];
                long c123 = R.sum_class[c12][c3];
                if (c123 != R.sum_class[c1][R.sum_class[c2][c3]])
                    throw internal_error("TR grading is not associative");
                int n1 = R.tables[c1].rank(), n2 = R.tables[c2].rank(), n3 = R.tables[c3].rank();
                int nt = R.tables[c123].rank();
                for (int i = 0; i < n1; ++i)
                    for (int j = 0; j < n2; ++j)
                        for (int k = 0; k < n3; ++k) {
                            std::vector<long> lhs(nt, 0), rhs(nt, 0);
                            const std::vector<long>& xy = R.products[c1][c2][i][j];
                            for (int s = 0; s < static_cast<int>(xy.size()); ++s)
                                if (xy[s])
                                    for (int t = 0; t < nt; ++t)
                                        lhs[t] += xy[s] * R.products[c12][c3][s][k][t];
                            long c23 = R.sum_class[c2][c3];
                            const std::vector<long>& yz = R.products[c2][c3][j][k];
                            for (int s = 0; s < static_cast<int>(yz.size()); ++s)
                                if (yz[s])
                                    for (int t = 0; t < nt; ++t)
                                        rhs[t] += yz[s] * R.products[c1][c23][i][s][t];
                            if (lhs != rhs) throw internal_error("TR product is not associative");
                        }
            }
}

}  // namespace orbk
