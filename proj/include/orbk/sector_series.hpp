#pragma once

#include "orbk/cocycle.hpp"
#include "orbk/group.hpp"
#include "orbk/h2.hpp"
#include "orbk/sectors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace orbk {

/// Truncated integer power series, exact arithmetic throughout.
struct Series {
    int trunc = 0;
    std::vector<Int> c;  // coefficients 0..trunc

    static Series zero(int n) {
        Series s;
        s.trunc = n;
        s.c.assign(n + 1, 0);
        return s;
    }
    static Series constant(int n, const Int& v) {
        Series s = zero(n);
        s.c[0] = v;
        return s;
    }
    /// 1 + sign * q^j
    static Series binomial(int n, int j, int sign) {
        Series s = constant(n, 1);
        if (j <= n) s.c[j] += sign;
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        Series s = a;
        for (int i = 0; i <= s.trunc; ++i) s.c[i] += b.c[i];
        return s;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series s = a;
        for (int i = 0; i <= s.trunc; ++i) s.c[i] -= b.c[i];
        return s;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series s = zero(a.trunc);
        for (int i = 0; i <= a.trunc; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; i + j <= a.trunc; ++j)
                if (b.c[j] != 0) s.c[i + j] += a.c[i] * b.c[j];
        }
        return s;
    }

    /// Multiplicative inverse; requires a unit constant term (+-1).
    Series inverse() const {
        if (c[0] != 1 && c[0] != -1)
            throw validation_error("series inverse requires constant term +-1");
        Series b = zero(trunc);
        b.c[0] = c[0];  // 1/c0 = c0 for +-1
        for (int k = 1; k <= trunc; ++k) {
            Int acc = 0;
            for (int j = 1; j <= k; ++j) acc += c[j] * b.c[k - j];
            b.c[k] = -c[0] * acc;
        }
        return b;
    }

    Series pow(long e) const {
        Series base = e < 0 ? inverse() : *this;
        if (e < 0) e = -e;
        Series out = constant(trunc, 1);
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    /// All coefficients even; divide by two in place.
    Series halved() const {
        Series s = *this;
        for (Int& x : s.c) {
            if (x % 2 != 0) throw internal_error("series halving hit an odd coefficient");
            x /= 2;
        }
        return s;
    }
};

/// prod_{k>0} (1 - q^k)^{-chi}: the classical untwisted symmetric-product
/// comparator.
inline Series untwisted_symprod_series(long chi, int trunc) {
    Series s = Series::constant(trunc, 1);
    for (int k = 1; k <= trunc; ++k) s = s * Series::binomial(trunc, k, -1).pow(-chi);
    return s;
}

/// The closed-form two-term product comparator for the twisted symmetric
/// products, expanded verbatim:
///   prod (1-q^{2n-1})^{-chi}
///   + prod (1+q^{2n-1})^{chi} * [1 + (prod (1+q^{2n})^{chi}
///                                     - prod (1-q^{2n})^{chi}) / 2].
inline Series closed_form_generating_function(long chi, int trunc) {
    if (trunc > 32) throw validation_error("closed_form_generating_function: truncation above 32");
    Series term1 = Series::constant(trunc, 1);
    Series odd_plus = Series::constant(trunc, 1);
    Series even_plus = Series::constant(trunc, 1);
    Series even_minus = Series::constant(trunc, 1);
    for (int n = 1; 2 * n - 1 <= trunc; ++n)
        term1 = term1 * Series::binomial(trunc, 2 * n - 1, -1).pow(-chi);
    for (int n = 1; 2 * n - 1 <= trunc; ++n)
        odd_plus = odd_plus * Series::binomial(trunc, 2 * n - 1, 1).pow(chi);
    for (int n = 1; 2 * n <= trunc; ++n) {
        even_plus = even_plus * Series::binomial(trunc, 2 * n, 1).pow(chi);
        even_minus = even_minus * Series::binomial(trunc, 2 * n, -1).pow(chi);
    }
    Series bracket = Series::constant(trunc, 1) + (even_plus - even_minus).halved();
    return term1 + odd_plus * bracket;
}

/**
 * Euler characteristic of the alpha-twisted Sigma_n-equivariant K-theory
 * of M^n, from the centralizer-averaged sector sum: the fixed set of g is
 * M^{#cycles(g)} and the trace of z on it is chi(M)^{#orbits of z on the
 * cycles of g}.  Only chi(M) enters; no simplicial model of M is needed.
 * This brute force is the authoritative value; the closed-form series is
 * a comparison target only.
 */
inline Int symprod_chi(int n, long chi_m, bool twisted, bool allow_sigma6_twisted = false) {
    if (n < 0) throw validation_error("symprod_chi: n must be non-negative");
    if (n > 6) throw validation_error("symprod_chi: n above the group-order cap (6)");
    if (n == 0) return 1;
    if (n == 1) return Int(chi_m);
    if (n == 6 && twisted && !allow_sigma6_twisted)
        throw validation_error("twisted Sigma_6 mode is disabled by default (heavy H2 solve); "
                               "enable it explicitly");

    Perm swap01(n);
    for (int i = 0; i < n; ++i) swap01[i] = i;
    swap01[0] = 1;
    swap01[1] = 0;
    Perm cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    FiniteGroup G = FiniteGroup::from_permutations(n, {swap01, cycle});

    Cocycle alpha = zero_cocycle(G, 2);
    std::optional<CohomologyClassSet> h2;
    if (twisted && n >= 4) {
        h2 = h2_group(G, 2);
        if (h2->class_count() != 2)
            throw internal_error("H2(Sigma_n, Z/2) is not Z/2 in the supported range");
        alpha = h2->class_reps[1];
    }

    ConjugacyClassSet cc = conjugacy_classes(G);
    Int total = 0;
    for (int k = 0; k < cc.count(); ++k) {
        int g = cc.representatives[k];
        const Perm& pg = G.element_perms()[g];
        // cycles of g on the points
        std::vector<int> cycle_of(n, -1);
        int cycles = 0;
        for (int p = 0; p < n; ++p) {
            if (cycle_of[p] >= 0) continue;
            int q = p;
            while (cycle_of[q] < 0) {
                cycle_of[q] = cycles;
                q = pg[q];
            }
            ++cycles;
        }
        Subgroup z = centralizer(G, g);
        LinearCharacter L = l_character(alpha, g);
        Int acc = 0;
        for (int el : z.elements) {
            const Perm& pz = G.element_perms()[el];
            // orbits of z on the cycle set
            std::vector<int> to(cycles, -1);
            for (int p = 0; p < n; ++p) to[cycle_of[p]] = cycle_of[pz[p]];
            std::vector<char> seen(cycles, 0);
            int orbits = 0;
            for (int c0 = 0; c0 < cycles; ++c0) {
                if (seen[c0]) continue;
                int c = c0;
                while (!seen[c]) {
                    seen[c] = 1;
                    c = to[c];
                }
                ++orbits;
            }
            Int term = 1;
            for (int i = 0; i < orbits; ++i) term *= Int(chi_m);
            acc += (L.at(el) == 0 ? term : -term);
        }
        if (acc % Int(z.order()) != 0)
            throw internal_error("sector sum is not divisible by the centralizer order");
        total += acc / Int(z.order());
    }
    return total;
}

struct SymprodRow {
    int n = 0;
    Int brute;
    Int formula;
    bool match = false;
    bool informational = false;  // n <= 3: outside the formula's stated range
};

struct SymprodReport {
    long chi_m = 0;
    std::vector<SymprodRow> untwisted;  // vs prod (1-q^k)^{-chi}
    std::vector<SymprodRow> twisted;    // vs the closed-form two-term product
};

inline SymprodReport symprod_report(long chi_m, int n_max, bool allow_sigma6_twisted = false) {
    if (n_max < 0 || n_max > 6) throw validation_error("symprod_report: n_max must be in [0, 6]");
    SymprodReport rep;
    rep.chi_m = chi_m;
    Series untw = untwisted_symprod_series(chi_m, n_max);
    Series tw = closed_form_generating_function(chi_m, n_max);
    for (int n = 0; n <= n_max; ++n) {
        SymprodRow u;
        u.n = n;
        u.brute = symprod_chi(n, chi_m, false);
        u.formula = untw.c[n];
        u.match = (u.brute == u.formula);
        rep.untwisted.push_back(u);
        if (n == 6 && !allow_sigma6_twisted) continue;
        SymprodRow t;
        t.n = n;
        t.brute = symprod_chi(n, chi_m, true, allow_sigma6_twisted);
        t.formula = tw.c[n];
        t.match = (t.brute == t.formula);
        t.informational = (n <= 3);
        rep.twisted.push_back(t);
    }
    return rep;
}

/// Data-driven sector input for non-finite presentations: each entry is a
/// sector with either explicit Betti numbers or a declared Euler
/// characteristic.
struct SectorDatum {
    std::string label;
    std::optional<std::vector<long>> betti;
    std::optional<long> euler;
    std::optional<int> level;  // reported Q(zeta)-summand level, informational
};

struct SectorData {
    std::vector<SectorDatum> entries;
};

struct SectorSumResult {
    KRank kranks;
    long chi_orb = 0;
};

inline SectorSumResult sector_sum(const SectorData& data) {
    SectorSumResult out;
    for (const SectorDatum& e : data.entries) {
        if (e.betti && e.euler)
            throw validation_error("sector entry '" + e.label + "' has both betti and euler");
        if (e.betti) {
            for (std::size_t d = 0; d < e.betti->size(); ++d) {
                long b = (*e.betti)[d];
                if (b < 0) throw validation_error("sector entry '" + e.label + "' has negative Betti");
                (d % 2 ? out.kranks.k1 : out.kranks.k0) += b;
            }
        } else if (e.euler) {
            // declared Euler characteristic: lands on the sign's side
            if (*e.euler >= 0)
                out.kranks.k0 += *e.euler;
            else
                out.kranks.k1 += -*e.euler;
        } else {
            throw validation_error("sector entry '" + e.label + "' needs betti or euler");
        }
    }
    out.chi_orb = out.kranks.chi();
    return out;
}

}  // namespace orbk
