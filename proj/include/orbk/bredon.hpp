#pragma once

#include "orbk/chartable.hpp"
#include "orbk/complex.hpp"
#include "orbk/sectors.hpp"

#include <map>
#include <memory>
#include <vector>

namespace orbk {

struct BredonResult {
    std::vector<long> dims;   // cochain dimension per degree
    std::vector<long> ranks;  // cohomology rank per degree
    KRank folded;
};

namespace detail {

inline BredonResult bredon_from_blocks(const std::vector<long>& dims,
                                       const std::vector<MatQ>& differential) {
    int top = static_cast<int>(dims.size()) - 1;
    BredonResult out;
    out.dims = dims;
    // d o d = 0, exactly
    for (int d = 0; d + 1 < top; ++d)
        if (!(differential[d + 1] * differential[d]).is_zero())
            throw internal_error("Bredon differential does not square to zero");
    std::vector<int> r(top + 2, 0);
    for (int d = 0; d < top; ++d) r[d + 1] = rank(differential[d]);  // rank of C^d -> C^{d+1}
    out.ranks.assign(top + 1, 0);
    for (int d = 0; d <= top; ++d) out.ranks[d] = dims[d] - r[d + 1] - r[d];
    out.folded = fold_betti(out.ranks);
    return out;
}

}  // namespace detail

/**
 * Bredon cohomology of a regularized action with coefficients in the
 * twisted representation rings of the stabilizers.  Cochains live on
 * orbit cells with values in R_{res alpha}(G_sigma) (x) Q; the component
 * of the differential from the orbit of tau to the orbit of sigma is
 * conjugation inside the central extension followed by restriction of
 * twisted characters, times the simplicial incidence sign.
 */
inline BredonResult bredon_cohomology(const GComplex& X, const Cocycle& alpha) {
    const FiniteGroup& G = *X.G;
    if (alpha.group != &G) throw validation_error("bredon_cohomology: cocycle group mismatch");
    OrbitCells cells = orbit_cells(X);
    int top = X.K.top_dim();
    if (top < 0) return {};

    CentralExtension ext = central_extension(G, alpha);
    int m = static_cast<int>(alpha.modulus);

    struct Coefficient {
        SubgroupGroup sg;
        TwistedCharacterTable table;
    };
    std::map<std::vector<int>, std::shared_ptr<Coefficient>> cache;
    auto coefficient_of = [&](const std::vector<int>& stab) {
        auto it = cache.find(stab);
        if (it != cache.end()) return it->second;
        auto c = std::make_shared<Coefficient>();
        c->sg = subgroup_as_group(G, stab);
        c->table = twisted_character_table(c->sg.group, restrict_cocycle(alpha, c->sg));
        cache.emplace(stab, c);
        return c;
    };

    std::vector<std::vector<std::shared_ptr<Coefficient>>> coef(top + 1);
    std::vector<std::vector<long>> offset(top + 1);
    std::vector<long> dims(top + 1, 0);
    for (int d = 0; d <= top; ++d) {
        int orbits = static_cast<int>(cells.rep_id[d].size());
        coef[d].resize(orbits);
        offset[d].resize(orbits);
        for (int o = 0; o < orbits; ++o) {
            coef[d][o] = coefficient_of(cells.stabilizer[d][o]);
            offset[d][o] = dims[d];
            dims[d] += coef[d][o]->table.rank();
        }
    }

    std::vector<MatQ> differential(top);
    for (int d = 0; d + 1 <= top; ++d) {
        MatQ D(dims[d + 1], dims[d]);
        int orbits_up = static_cast<int>(cells.rep_id[d + 1].size());
        for (int op = 0; op < orbits_up; ++op) {
            int sigma_id = cells.rep_id[d + 1][op];
            const std::vector<int>& sigma = X.K.simplices[d + 1][sigma_id];
            const Coefficient& target = *coef[d + 1][op];
            for (std::size_t face = 0; face < sigma.size(); ++face) {
                std::vector<int> tau;
                for (std::size_t i = 0; i < sigma.size(); ++i)
                    if (i != face) tau.push_back(sigma[i]);
                int tau_id = X.K.id_of(tau);
                int o = cells.orbit_of[d][tau_id];
                int gamma = cells.transporter[d][tau_id];
                const Coefficient& source = *coef[d][o];
                int gsign;
                X.apply_simplex(gamma, d, cells.rep_id[d][o], &gsign);
                long sign = ((face % 2) ? -1 : 1) * gsign;
                // component map: chi -> res_{G_sigma}(chi o conj by gamma^{-1})
                for (int r = 0; r < source.table.rank(); ++r) {
                    std::vector<Cyclotomic> vec(target.sg.group.order());
                    for (int xi = 0; xi < target.sg.group.order(); ++xi) {
                        int x = target.sg.to_parent[xi];
                        int e = ext_conjugate_back(ext, gamma, ext.section(x));
                        int h = ext.project(e);
                        long a = ext.fiber(e);
                        int hi = source.sg.from_parent[h];
                        if (hi < 0)
                            throw internal_error("conjugated element leaves the face stabilizer");
                        Cyclotomic val = source.table.values[r][hi];
                        if (a) val = val * Cyclotomic::root(m, a);
                        vec[xi] = val;
                    }
                    std::vector<long> mult = decompose_in_table(target.table, vec);
                    for (int s = 0; s < target.table.rank(); ++s)
                        if (mult[s])
                            D.at(offset[d + 1][op] + s, offset[d][o] + r) += Rat(sign * mult[s]);
                }
            }
        }
        differential[d] = std::move(D);
    }
    return detail::bredon_from_blocks(dims, differential);
}

/// Constant-coefficient variant F(G/H) = Q: the ranks must agree with the
/// rational cohomology of X/G.
inline BredonResult bredon_constant_coefficients(const GComplex& X) {
    OrbitCells cells = orbit_cells(X);
    int top = X.K.top_dim();
    if (top < 0) return {};
    std::vector<long> dims(top + 1, 0);
    for (int d = 0; d <= top; ++d) dims[d] = static_cast<long>(cells.rep_id[d].size());
    std::vector<MatQ> differential(top);
    for (int d = 0; d + 1 <= top; ++d) {
        MatQ D(dims[d + 1], dims[d]);
        for (std::size_t op = 0; op < cells.rep_id[d + 1].size(); ++op) {
            int sigma_id = cells.rep_id[d + 1][op];
            const std::vector<int>& sigma = X.K.simplices[d + 1][sigma_id];
            for (std::size_t face = 0; face < sigma.size(); ++face) {
                std::vector<int> tau;
                for (std::size_t i = 0; i < sigma.size(); ++i)
                    if (i != face) tau.push_back(sigma[i]);
                int tau_id = X.K.id_of(tau);
                int o = cells.orbit_of[d][tau_id];
                int gamma = cells.transporter[d][tau_id];
                int gsign;
                X.apply_simplex(gamma, d, cells.rep_id[d][o], &gsign);
                D.at(static_cast<int>(op), o) += Rat(((face % 2) ? -1 : 1) * gsign);
            }
        }
        differential[d] = std::move(D);
    }
    return detail::bredon_from_blocks(dims, differential);
}

}  // namespace orbk
