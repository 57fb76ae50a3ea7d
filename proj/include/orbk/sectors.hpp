#pragma once

#include "orbk/cocycle.hpp"
#include "orbk/complex.hpp"
#include "orbk/cyclotomic.hpp"
#include "orbk/group.hpp"

#include <string>
#include <vector>

namespace orbk {

/// Z/2-graded rational K-theory ranks; even simplicial degrees land in k0.
struct KRank {
    long k0 = 0;
    long k1 = 0;
    long chi() const { return k0 - k1; }
    friend bool operator==(const KRank& a, const KRank& b) { return a.k0 == b.k0 && a.k1 == b.k1; }
};

inline KRank fold_betti(const std::vector<long>& betti) {
    KRank k;
    for (std::size_t d = 0; d < betti.size(); ++d) (d % 2 ? k.k1 : k.k0) += betti[d];
    return k;
}

/// One twisted sector: X^<g>/Z_G(g) with its Betti numbers; g = identity
/// gives the untwisted sector X/G.
struct SectorEntry {
    int rep = 0;
    std::string label;
    std::vector<long> betti;
    long euler = 0;
};

struct SectorDecomposition {
    std::vector<SectorEntry> entries;  // indexed by conjugacy class
    KRank kranks;
};

inline SectorDecomposition sector_decomposition(const GComplex& X) {
    const FiniteGroup& G = *X.G;
    ConjugacyClassSet cc = conjugacy_classes(G);
    SectorDecomposition out;
    for (int k = 0; k < cc.count(); ++k) {
        int g = cc.representatives[k];
        Subcomplex sub = fixed_subcomplex(X, {g});
        SectorEntry e;
        e.rep = g;
        e.label = (g == 0) ? "untwisted" : "g" + std::to_string(g);
        if (sub.K.vertex_count() > 0) {
            Subgroup z = centralizer(G, g);
            std::vector<Perm> perms;
            perms.reserve(z.elements.size());
            for (int el : z.elements) perms.push_back(induced_perm(X, sub, el));
            QuotientComplex qt = quotient_complex(sub.K, perms);
            e.betti = qt.K.betti();
            for (std::size_t d = 0; d < e.betti.size(); ++d)
                e.euler += (d % 2 ? -1L : 1L) * e.betti[d];
        }
        KRank f = fold_betti(e.betti);
        out.kranks.k0 += f.k0;
        out.kranks.k1 += f.k1;
        out.entries.push_back(std::move(e));
    }
    return out;
}

namespace detail {

template <class F>
std::vector<Mat<F>> boundaries_of(const SimplicialComplex& K) {
    std::vector<Mat<F>> b(K.top_dim() + 1);
    for (int d = 1; d <= K.top_dim(); ++d) {
        MatQ bq = K.boundary_matrix(d);
        Mat<F> m(bq.rows(), bq.cols());
        for (int i = 0; i < bq.rows(); ++i)
            for (int j = 0; j < bq.cols(); ++j)
                if (!bq.at(i, j).is_zero()) m.at(i, j) = F(bq.at(i, j) > 0 ? 1 : -1);
        b[d] = std::move(m);
    }
    return b;
}

/// Betti numbers of im(P) for chain projectors P_d commuting with the
/// boundary maps (both facts asserted exactly).
template <class F>
std::vector<long> projected_betti_general(const std::vector<int>& dims,
                                          const std::vector<Mat<F>>& boundary,
                                          const std::vector<Mat<F>>& P) {
    int top = static_cast<int>(dims.size()) - 1;
    if (top < 0) return {};
    std::vector<Mat<F>> W(top + 1);
    for (int d = 0; d <= top; ++d) {
        if (!(P[d] * P[d] - P[d]).is_zero())
            throw internal_error("averaging projector is not idempotent");
        W[d] = image_basis(P[d]);
    }
    std::vector<int> rank_in(top + 2, 0);
    for (int d = 1; d <= top; ++d) {
        if (!(boundary[d] * P[d] - P[d - 1] * boundary[d]).is_zero())
            throw internal_error("averaging projector does not commute with the boundary");
        rank_in[d] = rank(boundary[d] * W[d]);
    }
    std::vector<long> b(top + 1, 0);
    for (int d = 0; d <= top; ++d) b[d] = W[d].cols() - rank_in[d] - rank_in[d + 1];
    return b;
}

template <class F>
KRank twisted_sector_ranks(const SimplicialComplex& K, const std::vector<Perm>& zperms,
                           const std::vector<F>& scalars) {
    int top = K.top_dim();
    if (top < 0) return {};
    Rat avg(1, static_cast<long>(zperms.size()));
    std::vector<int> dims(top + 1);
    std::vector<Mat<F>> P(top + 1);
    for (int d = 0; d <= top; ++d) {
        dims[d] = K.count(d);
        Mat<F> acc(K.count(d), K.count(d));
        for (std::size_t i = 0; i < zperms.size(); ++i)
            acc = acc + chain_map_matrix<F>(K, zperms[i], d).scaled(scalars[i]);
        P[d] = acc.scaled(F(avg));
    }
    return fold_betti(projected_betti_general(dims, boundaries_of<F>(K), P));
}

}  // namespace detail

/**
 * Ranks of the alpha-twisted equivariant K-theory: per conjugacy class
 * representative g, the chain complex of X^<g> is tensored with the
 * centralizer character L_g and projected by the exact averaging
 * idempotent; Betti numbers of the projected complex are summed with the
 * Z/2 grading.  At modulus <= 2 everything stays over Q.
 */
inline KRank twisted_k_ranks(const GComplex& X, const Cocycle& alpha) {
    const FiniteGroup& G = *X.G;
    if (alpha.group != &G) throw validation_error("twisted_k_ranks: cocycle group mismatch");
    ConjugacyClassSet cc = conjugacy_classes(G);
    KRank total;
    for (int k = 0; k < cc.count(); ++k) {
        int g = cc.representatives[k];
        Subcomplex sub = fixed_subcomplex(X, {g});
        if (sub.K.vertex_count() == 0) continue;
        Subgroup z = centralizer(G, g);
        LinearCharacter L = l_character(alpha, g);
        std::vector<Perm> perms;
        perms.reserve(z.elements.size());
        for (int el : z.elements) perms.push_back(induced_perm(X, sub, el));
        KRank part;
        if (alpha.modulus <= 2) {
            std::vector<Rat> scalars;
            for (int el : z.elements) scalars.push_back(L.at(el) == 0 ? Rat(1) : Rat(-1));
            part = detail::twisted_sector_ranks<Rat>(sub.K, perms, scalars);
        } else {
            std::vector<Cyclotomic> scalars;
            for (int el : z.elements)
                scalars.push_back(Cyclotomic::root(static_cast<int>(alpha.modulus), -L.at(el)));
            part = detail::twisted_sector_ranks<Cyclotomic>(sub.K, perms, scalars);
        }
        total.k0 += part.k0;
        total.k1 += part.k1;
    }
    return total;
}

/// Orbit cells of the G-action with pointwise stabilizers and minimal
/// transporters; shared by the cell Euler characteristic and the Bredon
/// complex.
struct OrbitCells {
    std::vector<std::vector<int>> rep_id;        // dim -> orbit -> simplex id
    std::vector<std::vector<std::vector<int>>> stabilizer;  // dim -> orbit -> elements
    std::vector<std::vector<int>> orbit_of;      // dim -> simplex -> orbit
    std::vector<std::vector<int>> transporter;   // dim -> simplex -> g with g*rep = simplex
};

inline OrbitCells orbit_cells(const GComplex& X) {
    const FiniteGroup& G = *X.G;
    OrbitCells out;
    int top = X.K.top_dim();
    out.rep_id.resize(top + 1);
    out.stabilizer.resize(top + 1);
    out.orbit_of.resize(top + 1);
    out.transporter.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        int cnt = X.K.count(d);
        out.orbit_of[d].assign(cnt, -1);
        out.transporter[d].assign(cnt, -1);
        for (int id = 0; id < cnt; ++id) {
            if (out.orbit_of[d][id] >= 0) continue;
            int orbit = static_cast<int>(out.rep_id[d].size());
            out.rep_id[d].push_back(id);
            std::vector<int> stab;
            for (int g = 0; g < G.order(); ++g) {
                int image = X.apply_simplex(g, d, id);
                if (image == id) stab.push_back(g);
                if (out.orbit_of[d][image] < 0) {
                    out.orbit_of[d][image] = orbit;
                    out.transporter[d][image] = g;
                }
            }
            out.stabilizer[d].push_back(std::move(stab));
        }
    }
    return out;
}

/// Alternating sum over orbit cells of rank R_{res alpha}(G_sigma).
inline long chi_orb_cells(const GComplex& X, const Cocycle& alpha) {
    if (alpha.group != X.G) throw validation_error("chi_orb_cells: cocycle group mismatch");
    OrbitCells cells = orbit_cells(X);
    long chi = 0;
    std::map<std::vector<int>, long> rank_cache;
    for (int d = 0; d < static_cast<int>(cells.rep_id.size()); ++d)
        for (const std::vector<int>& stab : cells.stabilizer[d]) {
            auto it = rank_cache.find(stab);
            long r;
            if (it != rank_cache.end()) {
                r = it->second;
            } else {
                SubgroupGroup H = subgroup_as_group(*X.G, stab);
                Cocycle res = restrict_cocycle(alpha, H);
                r = static_cast<long>(alpha_regular_classes(res).size());
                rank_cache.emplace(stab, r);
            }
            chi += (d % 2 ? -1L : 1L) * r;
        }
    return chi;
}

struct CyclicSummand {
    int generator = 0;   // minimal generator of the cyclic class
    int order = 1;       // |C|
    long dim_q = 0;      // dim_Q [H*(X^C/Z(C)) x Q(zeta)]^W
};

struct CyclicDecomposition {
    std::vector<CyclicSummand> summands;
    long total = 0;
};

/**
 * The cyclic-subgroup indexed decomposition: for each conjugacy class of
 * cyclic subgroups C, the Q-dimension of the W(C)-invariants of
 * H*(X^C/Z(C); Q) tensored with Q(zeta_|C|), where W acts topologically
 * on the quotient and by the inverse conjugation exponent on the
 * coefficients through the Galois action.
 */
inline CyclicDecomposition cyclic_decomposition(const GComplex& X) {
    const FiniteGroup& G = *X.G;
    CyclicDecomposition out;
    for (const CyclicClass& cls : cyclic_subgroup_classes(G)) {
        CyclicSummand s;
        s.generator = cls.generator;
        s.order = cls.C.order();
        Subcomplex sub = fixed_subcomplex(X, cls.C.elements);
        if (sub.K.vertex_count() > 0) {
            std::vector<Perm> zperms;
            for (int el : cls.Z.elements) zperms.push_back(induced_perm(X, sub, el));
            QuotientComplex qt = quotient_complex(sub.K, zperms);
            int n = s.order;
            int phi = euler_phi(n);
            int top = qt.K.top_dim();
            // Galois matrices on the reduced power basis, one per Weyl rep
            std::vector<MatQ> gal;
            std::vector<Perm> wq;
            for (std::size_t wi = 0; wi < cls.weyl_reps.size(); ++wi) {
                long k = cls.weyl_exponents[wi];
                long kinv = (n == 1) ? 0 : inv_mod(k, n);
                MatQ gm(phi, phi);
                for (int t = 0; t < phi; ++t) {
                    Cyclotomic img = (n == 1) ? Cyclotomic(1)
                                              : Cyclotomic::root(n, t * kinv).reduced();
                    for (int u = 0; u < phi; ++u) gm.at(u, t) = img.coeffs()[u];
                }
                gal.push_back(std::move(gm));
                // induced permutation on the quotient cells
                Perm ws = induced_perm(X, sub, cls.weyl_reps[wi]);
                Perm q(qt.K.vertex_count());
                for (int i = 0; i < sub.K.vertex_count(); ++i)
                    q[qt.vertex_orbit[i]] = qt.vertex_orbit[ws[i]];
                wq.push_back(std::move(q));
            }
            std::vector<int> dims(top + 1);
            std::vector<MatQ> P(top + 1), boundary(top + 1);
            Rat avg(1, static_cast<long>(cls.weyl_reps.size()));
            for (int d = 0; d <= top; ++d) {
                int cells = qt.K.count(d);
                dims[d] = cells * phi;
                MatQ acc(cells * phi, cells * phi);
                for (std::size_t wi = 0; wi < cls.weyl_reps.size(); ++wi) {
                    MatQ cm = chain_map_matrix<Rat>(qt.K, wq[wi], d);
                    for (int c2 = 0; c2 < cells; ++c2)
                        for (int c1 = 0; c1 < cells; ++c1) {
                            if (cm.at(c1, c2).is_zero()) continue;
                            for (int t2 = 0; t2 < phi; ++t2)
                                for (int t1 = 0; t1 < phi; ++t1)
                                    acc.at(c1 * phi + t1, c2 * phi + t2) +=
                                        cm.at(c1, c2) * gal[wi].at(t1, t2);
                        }
                }
                P[d] = acc.scaled(avg);
                if (d >= 1) {
                    MatQ bq = qt.K.boundary_matrix(d);
                    MatQ lifted(qt.K.count(d - 1) * phi, cells * phi);
                    for (int i = 0; i < bq.rows(); ++i)
                        for (int j = 0; j < bq.cols(); ++j) {
                            if (bq.at(i, j).is_zero()) continue;
                            for (int t = 0; t < phi; ++t)
                                lifted.at(i * phi + t, j * phi + t) = bq.at(i, j);
                        }
                    boundary[d] = std::move(lifted);
                }
            }
            std::vector<long> bett = detail::projected_betti_general(dims, boundary, P);
            for (long b : bett) s.dim_q += b;
        }
        out.total += s.dim_q;
        out.summands.push_back(s);
    }
    return out;
}

}  // namespace orbk
