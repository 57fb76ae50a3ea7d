#pragma once

#include "orbk/group.hpp"
#include "orbk/zmod.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbk {

/**
 * Normalized 2-cocycle on a finite group with values in Z/m, written
 * additively; the embedding into the circle is a -> exp(2*pi*i*a/m).
 * The referenced group must outlive the cocycle.
 */
struct Cocycle {
    const FiniteGroup* group = nullptr;
    long modulus = 1;
    std::vector<std::vector<long>> values;

    long at(int g, int h) const { return values[g][h]; }
    int order() const { return group->order(); }
};

/// Cocycle identity on all triples (g, h, s) with s in a generating set;
/// by the simplicial identity for the coboundary of a 2-cochain this
/// implies the identity for all triples.
inline void validate_cocycle(const Cocycle& a) {
    const FiniteGroup& G = *a.group;
    int n = G.order();
    if (a.modulus < 1) throw validation_error("cocycle modulus must be >= 1");
    if (static_cast<int>(a.values.size()) != n)
        throw validation_error("cocycle value table has wrong shape");
    for (int g = 0; g < n; ++g) {
        if (static_cast<int>(a.values[g].size()) != n)
            throw validation_error("cocycle value table has wrong shape");
        for (int h = 0; h < n; ++h)
            if (a.values[g][h] < 0 || a.values[g][h] >= a.modulus)
                throw validation_error("cocycle value out of range for the modulus");
        if (a.values[0][g] != 0 || a.values[g][0] != 0)
            throw validation_error("cocycle is not normalized: alpha(1,g) = alpha(g,1) = 0 required");
    }
    std::vector<int> gens = G.generating_set();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int s : gens) {
                int gh = G.mul(g, h), hs = G.mul(h, s);
                long lhs = a.values[g][h] + a.values[gh][s];
                long rhs = a.values[h][s] + a.values[g][hs];
                if (mod_long(lhs - rhs, a.modulus) != 0)
                    throw validation_error("cocycle identity fails at (" + std::to_string(g) + "," +
                                           std::to_string(h) + "," + std::to_string(s) + ")");
            }
}

inline Cocycle zero_cocycle(const FiniteGroup& G, long m) {
    Cocycle c;
    c.group = &G;
    c.modulus = m;
    c.values.assign(G.order(), std::vector<long>(G.order(), 0));
    return c;
}

inline Cocycle make_cocycle(const FiniteGroup& G, long m, std::vector<std::vector<long>> values) {
    Cocycle c;
    c.group = &G;
    c.modulus = m;
    c.values = std::move(values);
    validate_cocycle(c);
    return c;
}

/// delta t with  (delta t)(g,h) = t(g) + t(h) - t(gh).
inline Cocycle coboundary(const FiniteGroup& G, long m, const std::vector<long>& t) {
    if (static_cast<int>(t.size()) != G.order() || t[0] % m != 0)
        throw validation_error("coboundary cochain must have t(1) = 0 and full length");
    Cocycle c = zero_cocycle(G, m);
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h)
            c.values[g][h] = mod_long(t[g] + t[h] - t[G.mul(g, h)], m);
    return c;
}

/// Values rescaled into Z/(k*m) via the embedding mu_m < mu_{km}.
inline Cocycle lift_modulus(const Cocycle& a, long new_modulus) {
    if (new_modulus % a.modulus != 0)
        throw validation_error("lift_modulus: target must be a multiple of the modulus");
    long f = new_modulus / a.modulus;
    Cocycle c = a;
    c.modulus = new_modulus;
    for (auto& row : c.values)
        for (long& x : row) x *= f;
    return c;
}

inline Cocycle cocycle_sum(const Cocycle& a, const Cocycle& b) {
    if (a.group != b.group) throw validation_error("cocycle_sum: group mismatch");
    long m = lcm_long(a.modulus, b.modulus);
    Cocycle x = lift_modulus(a, m), y = lift_modulus(b, m);
    for (int g = 0; g < x.order(); ++g)
        for (int h = 0; h < x.order(); ++h) x.values[g][h] = mod_long(x.values[g][h] + y.values[g][h], m);
    return x;
}

inline Cocycle cocycle_negate(const Cocycle& a) {
    Cocycle c = a;
    for (auto& row : c.values)
        for (long& x : row) x = mod_long(-x, a.modulus);
    return c;
}

/// Restriction to a subgroup, re-indexed through subgroup_as_group.
inline Cocycle restrict_cocycle(const Cocycle& a, const SubgroupGroup& H) {
    Cocycle c;
    c.group = &H.group;
    c.modulus = a.modulus;
    int k = H.group.order();
    c.values.assign(k, std::vector<long>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) c.values[i][j] = a.values[H.to_parent[i]][H.to_parent[j]];
    return c;
}

/**
 * The character L_g: Z_G(g) -> Z/m,  z -> alpha(z,g) - alpha(g,z).
 * Trivial exactly when g is alpha-regular; invariant under replacing
 * alpha by any cohomologous cocycle.
 */
struct LinearCharacter {
    const FiniteGroup* group = nullptr;
    long modulus = 1;
    std::vector<int> domain;    // sorted subgroup elements
    std::vector<long> values;   // parallel to domain

    long at(int parent_element) const {
        auto it = std::lower_bound(domain.begin(), domain.end(), parent_element);
        if (it == domain.end() || *it != parent_element)
            throw validation_error("LinearCharacter: element outside the domain");
        return values[it - domain.begin()];
    }
    bool is_trivial() const {
        return std::all_of(values.begin(), values.end(), [](long v) { return v == 0; });
    }
};

inline LinearCharacter l_character(const Cocycle& a, int g) {
    const FiniteGroup& G = *a.group;
    LinearCharacter L;
    L.group = &G;
    L.modulus = a.modulus;
    L.domain = centralizer(G, g).elements;
    L.values.reserve(L.domain.size());
    for (int z : L.domain) L.values.push_back(mod_long(a.values[z][g] - a.values[g][z], a.modulus));
    // multiplicativity is forced by the cocycle identity; keep it checked
    for (std::size_t i = 0; i < L.domain.size(); ++i)
        for (std::size_t j = 0; j < L.domain.size(); ++j) {
            int xy = G.mul(L.domain[i], L.domain[j]);
            if (mod_long(L.values[i] + L.values[j] - L.at(xy), a.modulus) != 0)
                throw internal_error("L character is not multiplicative");
        }
    return L;
}

inline bool is_alpha_regular(const Cocycle& a, int g) {
    const FiniteGroup& G = *a.group;
    for (int x = 0; x < G.order(); ++x)
        if (G.mul(x, g) == G.mul(g, x) &&
            mod_long(a.values[g][x] - a.values[x][g], a.modulus) != 0)
            return false;
    return true;
}

/// Class ids whose representatives are alpha-regular.
inline std::vector<int> alpha_regular_classes(const Cocycle& a, const ConjugacyClassSet& cc) {
    std::vector<int> out;
    for (int c = 0; c < cc.count(); ++c)
        if (is_alpha_regular(a, cc.representatives[c])) out.push_back(c);
    return out;
}

inline std::vector<int> alpha_regular_classes(const Cocycle& a) {
    ConjugacyClassSet cc = conjugacy_classes(*a.group);
    return alpha_regular_classes(a, cc);
}

struct CohomologousResult {
    std::optional<std::vector<long>> cochain;  // t with beta - alpha = delta t
    std::string certificate;
};

/// Solves beta - alpha = delta t at the common modulus (exactly the
/// coboundary relation at modulus m; no circle-valued cochains here).
inline CohomologousResult is_cohomologous(const Cocycle& a, const Cocycle& b) {
    if (a.group != b.group) throw validation_error("is_cohomologous: group mismatch");
    if (a.modulus != b.modulus) throw validation_error("is_cohomologous: modulus mismatch");
    const FiniteGroup& G = *a.group;
    long m = a.modulus;
    int n = G.order();
    ZmSystem sys(m, n - 1);  // variables t(1..n-1), t(0) = 0
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            std::vector<std::pair<int, long>> terms;
            if (g != 0) terms.emplace_back(g - 1, 1);
            if (h != 0) terms.emplace_back(h - 1, 1);
            int gh = G.mul(g, h);
            if (gh != 0) terms.emplace_back(gh - 1, -1);
            sys.add_equation_sparse(terms, b.values[g][h] - a.values[g][h]);
        }
    ZmSolveResult res = sys.solve();
    if (!res.solution) return {std::nullopt, res.certificate};
    std::vector<long> t(n, 0);
    for (int g = 1; g < n; ++g) t[g] = (*res.solution)[g - 1];
    return {t, {}};
}

struct StandardizeResult {
    std::optional<Cocycle> cocycle;
    long modulus_used = 0;
    std::string failure;
};

/**
 * Best-effort standard representative: alpha'(x, x^-1) = 0 for all x and
 * alpha'(x,g) + alpha'(xg, x^-1) = 0 for alpha-regular g.  Solved as a
 * linear system for a trivializing cochain at modulus m, retried once at
 * 2m; infeasibility at both moduli is reported, never ignored.
 */
inline StandardizeResult standardize(const Cocycle& a) {
    const FiniteGroup& G = *a.group;
    int n = G.order();
    std::vector<int> regular;
    for (int g = 0; g < n; ++g)
        if (is_alpha_regular(a, g)) regular.push_back(g);

    for (long m : {a.modulus, 2 * a.modulus}) {
        Cocycle base = lift_modulus(a, m);
        ZmSystem sys(m, n - 1);
        auto var = [&](int g) { return g - 1; };
        for (int x = 1; x < n; ++x) {
            // t(x) + t(x^-1) = -alpha(x, x^-1)
            int xi = G.inv(x);
            std::vector<std::pair<int, long>> terms{{var(x), 1}};
            if (xi != 0) terms.emplace_back(var(xi), 1);
            sys.add_equation_sparse(terms, -base.values[x][xi]);
        }
        for (int g : regular)
            for (int x = 1; x < n; ++x) {
                // t(x) + t(g) + t(x^-1) - t(x g x^-1) = -alpha(x,g) - alpha(xg, x^-1)
                int xi = G.inv(x), xg = G.mul(x, g), conj = G.mul(xg, xi);
                std::vector<std::pair<int, long>> terms{{var(x), 1}};
                if (g != 0) terms.emplace_back(var(g), 1);
                if (xi != 0) terms.emplace_back(var(xi), 1);
                if (conj != 0) terms.emplace_back(var(conj), -1);
                sys.add_equation_sparse(terms, -base.values[x][g] - base.values[xg][xi]);
            }
        ZmSolveResult res = sys.solve();
        if (res.solution) {
            std::vector<long> t(n, 0);
            for (int g = 1; g < n; ++g) t[g] = (*res.solution)[g - 1];
            Cocycle out = cocycle_sum(base, coboundary(G, m, t));
            return {out, m, {}};
        }
        if (m == 2 * a.modulus) return {std::nullopt, 0, res.certificate};
    }
    return {std::nullopt, 0, "unreachable"};
}

}  // namespace orbk
