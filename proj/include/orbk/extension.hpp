#pragma once

#include "orbk/cocycle.hpp"
#include "orbk/group.hpp"

#include <vector>

namespace orbk {

/**
 * The central extension 1 -> Z/m -> E -> G -> 1 attached to a cocycle,
 * with elements (g, a) encoded as g*m + a and the product
 * (g1,a1)(g2,a2) = (g1 g2, a1 + a2 + alpha(g1,g2)).  Associativity of the
 * table is equivalent to the cocycle identity and is asserted on
 * construction; the central generator is (1, 1) at index 1.
 */
struct CentralExtension {
    const FiniteGroup* base = nullptr;
    long modulus = 1;
    FiniteGroup total;

    int index(int g, long a) const { return static_cast<int>(g * modulus + mod_long(a, modulus)); }
    int section(int g) const { return static_cast<int>(g * modulus); }
    int project(int e) const { return static_cast<int>(e / modulus); }
    long fiber(int e) const { return e % modulus; }
    int central_generator() const { return index(0, 1); }
};

inline CentralExtension central_extension(const FiniteGroup& G, const Cocycle& alpha) {
    if (alpha.group != &G) throw validation_error("central_extension: cocycle belongs to another group");
    long m = alpha.modulus;
    int n = G.order();
    int order = static_cast<int>(n * m);
    std::vector<std::vector<int>> rows(order, std::vector<int>(order));
    for (int g1 = 0; g1 < n; ++g1)
        for (long a1 = 0; a1 < m; ++a1)
            for (int g2 = 0; g2 < n; ++g2)
                for (long a2 = 0; a2 < m; ++a2) {
                    int g = G.mul(g1, g2);
                    long a = mod_long(a1 + a2 + alpha.values[g1][g2], m);
                    rows[g1 * m + a1][g2 * m + a2] = static_cast<int>(g * m + a);
                }
    CentralExtension ext;
    ext.base = &G;
    ext.modulus = m;
    ext.total = FiniteGroup::from_table(rows);  // validates associativity

    int c = ext.central_generator();
    if (m > 1) {
        if (ext.total.element_order(c) != m)
            throw internal_error("central extension: central generator has wrong order");
        for (int e = 0; e < order; ++e)
            if (ext.total.mul(e, c) != ext.total.mul(c, e))
                throw internal_error("central extension: generator (1,1) is not central");
    }
    return ext;
}

/// (gamma,0)^-1 * e * (gamma,0) computed inside the extension.
inline int ext_conjugate_back(const CentralExtension& ext, int gamma_base, int e) {
    int gs = ext.section(gamma_base);
    return ext.total.mul(ext.total.mul(ext.total.inv(gs), e), gs);
}

}  // namespace orbk
