#pragma once

#include "orbk/cocycle.hpp"
#include "orbk/group.hpp"
#include "orbk/zmod.hpp"

#include <map>
#include <string>
#include <vector>

namespace orbk {

inline bool is_prime_long(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Generators of Hom(G, Z/e) (values as length-|G| vectors in [0, e)).
inline std::vector<std::vector<long>> hom_characters(const FiniteGroup& G, long e) {
    int n = G.order();
    if (e == 1) return {};
    ZmEchelon ech(e, n);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            std::vector<long> row(n, 0);
            row[g] += 1;
            row[h] += 1;
            row[G.mul(g, h)] -= 1;
            ech.add_row(std::move(row));
        }
    return zm_kernel(ech, e);
}

struct H2Caps {
    int prime_order_cap = 720;
    int general_order_cap = 256;
    long class_count_cap = 4096;
};

/// 1-cochain u (mod M) whose coboundary equals a given circle-trivial
/// cocycle embedded into mu_M.
struct TrivializingCochain {
    long modulus = 1;
    std::vector<long> values;
};

/**
 * H^2(G, S^1) restricted to mu_m values: cocycles Z^2(G, Z/m) modulo the
 * subgroup generated by coboundaries at modulus m together with the
 * classes that die in S^1 (the image of Hom(G, S^1) under the connecting
 * map of 1 -> mu_m -> S^1 -> S^1 -> 1).  For finite G this parametrizes
 * exactly the m-torsion of H^2(G, S^1), so twisted group algebras at
 * modulus m are classified by these classes.
 *
 * Representatives are canonical: lexicographically minimal value table
 * (row-major) within the full trivializing coset, computed from a Howell
 * echelon of the trivializing subgroup.
 */
class CohomologyClassSet {
public:
    const FiniteGroup* G = nullptr;
    long modulus = 1;
    std::vector<long> invariant_factors;           // > 1, each divides m
    std::vector<Cocycle> generator_reps;
    std::vector<std::vector<long>> class_coords;   // lexicographic enumeration
    std::vector<Cocycle> class_reps;               // canonical rep per class

    long class_count() const { return static_cast<long>(class_reps.size()); }

    const Cocycle& rep(const std::vector<long>& coords) const {
        return class_reps[index_of(coords)];
    }

    long index_of(const std::vector<long>& coords) const {
        auto it = coord_index_.find(coords);
        if (it == coord_index_.end()) throw validation_error("unknown H2 class coordinates");
        return it->second;
    }

    std::vector<long> sum_coords(const std::vector<long>& a, const std::vector<long>& b) const {
        std::vector<long> out(invariant_factors.size());
        for (std::size_t j = 0; j < invariant_factors.size(); ++j)
            out[j] = mod_long(a[j] + b[j], invariant_factors[j]);
        return out;
    }

    std::vector<long> negate_coords(const std::vector<long>& a) const {
        std::vector<long> out(invariant_factors.size());
        for (std::size_t j = 0; j < invariant_factors.size(); ++j)
            out[j] = mod_long(-a[j], invariant_factors[j]);
        return out;
    }

    /// Coordinates of an arbitrary cocycle's class (same group, same modulus).
    std::vector<long> coords_of(const Cocycle& a) const {
        if (a.group != G || a.modulus != modulus)
            throw validation_error("coords_of: cocycle is not comparable with this class set");
        std::vector<long> av = v_projection(a);
        int nf = static_cast<int>(gen_v_.size());
        int nt = static_cast<int>(t_gens_v_.size());
        ZmSystem sys(modulus, nf + nt);
        for (int c = 0; c < vdim_; ++c) {
            std::vector<long> row(nf + nt, 0);
            for (int j = 0; j < nf; ++j) row[j] = gen_v_[j][c];
            for (int k = 0; k < nt; ++k) row[nf + k] = t_gens_v_[k][c];
            sys.add_equation(std::move(row), av[c]);
        }
        ZmSolveResult res = sys.solve();
        if (!res.solution) throw internal_error("coords_of: cocycle not in the cocycle span");
        std::vector<long> out(invariant_factors.size());
        for (std::size_t j = 0; j < invariant_factors.size(); ++j)
            out[j] = mod_long((*res.solution)[j], invariant_factors[j]);
        return out;
    }

    /// Lexicographically minimal table in the trivializing coset of a.
    Cocycle canonicalize(const Cocycle& a) const {
        std::vector<long> flat(static_cast<std::size_t>(n_) * n_);
        for (int g = 0; g < n_; ++g)
            for (int h = 0; h < n_; ++h) flat[static_cast<std::size_t>(g) * n_ + h] = a.values[g][h];
        flat = t_full_.reduce(std::move(flat));
        std::vector<std::vector<long>> vals(n_, std::vector<long>(n_));
        for (int g = 0; g < n_; ++g)
            for (int h = 0; h < n_; ++h) vals[g][h] = flat[static_cast<std::size_t>(g) * n_ + h];
        return make_cocycle(*G, modulus, std::move(vals));
    }

    // ---- construction-time internals, kept for class arithmetic ----
    friend CohomologyClassSet h2_group(const FiniteGroup&, long, const H2Caps&);

private:
    int n_ = 0;
    int vdim_ = 0;
    std::vector<int> gens_;                      // generating set elements
    std::vector<std::vector<long>> gen_v_;       // class generators in v-coords
    std::vector<std::vector<long>> t_gens_v_;    // trivializing generators in v-coords
    ZmEchelon t_full_{1, 1};                     // trivializing span over full tables
    std::map<std::vector<long>, long> coord_index_;

    std::vector<long> v_projection(const Cocycle& a) const {
        std::vector<long> v(vdim_, 0);
        for (int g = 0; g < n_; ++g)
            for (std::size_t si = 0; si < gens_.size(); ++si)
                v[g * gens_.size() + si] = a.values[g][gens_[si]];
        return v;
    }
};

namespace detail {

/// alpha(g, x) as a sparse linear form over the variables alpha(-, s),
/// built along the BFS factorization x = pred * s via
/// alpha(g, p s) = alpha(g, p) + alpha(gp, s) - alpha(p, s).
inline std::vector<std::vector<std::pair<int, long>>> expansion_forms_for(
    const FiniteGroup& G, const FiniteGroup::Factorization& f, int g, long m) {
    int s_count = static_cast<int>(f.gens.size());
    auto var = [&](int h, int si) { return h * s_count + si; };
    std::vector<std::vector<std::pair<int, long>>> form(G.order());
    auto merge_term = [&](std::vector<std::pair<int, long>>& dst, int v, long c) {
        for (auto& [idx, coef] : dst)
            if (idx == v) {
                coef = mod_long(coef + c, m);
                return;
            }
        dst.emplace_back(v, mod_long(c, m));
    };
    for (int x : f.order) {
        if (x == 0) continue;
        int p = f.pred[x], si = f.genof[x];
        std::vector<std::pair<int, long>> fx = form[p];
        merge_term(fx, var(G.mul(g, p), si), 1);
        merge_term(fx, var(p, si), -1);
        fx.erase(std::remove_if(fx.begin(), fx.end(),
                                [](const std::pair<int, long>& t) { return t.second == 0; }),
                 fx.end());
        form[x] = std::move(fx);
    }
    return form;
}

}  // namespace detail

inline CohomologyClassSet h2_group(const FiniteGroup& G, long m, const H2Caps& caps = {}) {
    if (m < 1) throw validation_error("h2_group: modulus must be >= 1");
    int n = G.order();
    int cap = is_prime_long(m) ? caps.prime_order_cap : caps.general_order_cap;
    if (n > cap)
        throw validation_error("h2_group: group order " + std::to_string(n) +
                               " exceeds the cap " + std::to_string(cap) +
                               " for modulus " + std::to_string(m));

    CohomologyClassSet out;
    out.G = &G;
    out.modulus = m;
    out.n_ = n;

    if (n == 1 || m == 1) {
        out.vdim_ = 0;
        out.t_full_ = ZmEchelon(m, n * n);
        out.t_full_.finalize();
        out.class_coords = {{}};
        out.class_reps = {zero_cocycle(G, m)};
        out.coord_index_[{}] = 0;
        return out;
    }

    std::vector<int> S = G.generating_set();
    int s_count = static_cast<int>(S.size());
    int vdim = n * s_count;
    out.gens_ = S;
    out.vdim_ = vdim;
    FiniteGroup::Factorization f = G.bfs_factorization(S);
    auto var = [&](int h, int si) { return h * s_count + si; };

    // Z^2 as the kernel of the consistency system in the reduced variables;
    // the normalization alpha(1, s) = 0 pins the identity row.
    ZmEchelon cons(m, vdim);
    for (int si = 0; si < s_count; ++si) {
        std::vector<long> row(vdim, 0);
        row[var(0, si)] = 1;
        cons.add_row(std::move(row));
    }
    for (int g = 0; g < n; ++g) {
        std::vector<std::vector<std::pair<int, long>>> form =
            detail::expansion_forms_for(G, f, g, m);
        for (int h = 0; h < n; ++h)
            for (int si = 0; si < s_count; ++si) {
                int hs = G.mul(h, S[si]);
                if (f.pred[hs] == h && f.genof[hs] == si) continue;  // defining relation
                std::vector<long> row(vdim, 0);
                for (auto& [idx, c] : form[h]) row[idx] = mod_long(row[idx] + c, m);
                row[var(G.mul(g, h), si)] = mod_long(row[var(G.mul(g, h), si)] + 1, m);
                row[var(h, si)] = mod_long(row[var(h, si)] - 1, m);
                for (auto& [idx, c] : form[hs]) row[idx] = mod_long(row[idx] - c, m);
                cons.add_row(std::move(row));
            }
    }
    std::vector<std::vector<long>> z2 = zm_kernel(cons, m);
    int r = static_cast<int>(z2.size());

    // trivializing subgroup T: coboundaries at modulus m plus the image of
    // Hom(G, S^1) under the connecting map (carry cocycles)
    long e_ab = G.abelianization_exponent();
    std::vector<std::vector<long>> homs = hom_characters(G, e_ab);
    std::vector<std::vector<long>> t_v;
    std::vector<std::vector<long>> t_full_rows;
    auto full_flat = [&](auto&& value_at) {
        std::vector<long> flat(static_cast<std::size_t>(n) * n);
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) flat[static_cast<std::size_t>(g) * n + h] = value_at(g, h);
        return flat;
    };
    for (int h0 = 1; h0 < n; ++h0) {
        auto delta = [&](int g, int h) {
            return mod_long((g == h0 ? 1 : 0) + (h == h0 ? 1 : 0) - (G.mul(g, h) == h0 ? 1 : 0), m);
        };
        std::vector<long> v(vdim, 0);
        for (int g = 0; g < n; ++g)
            for (int si = 0; si < s_count; ++si) v[var(g, si)] = delta(g, S[si]);
        t_v.push_back(std::move(v));
        t_full_rows.push_back(full_flat(delta));
    }
    for (const std::vector<long>& c : homs) {
        auto carry = [&](int g, int h) {
            return mod_long((c[g] + c[h] - c[G.mul(g, h)]) / e_ab, m);
        };
        std::vector<long> v(vdim, 0);
        for (int g = 0; g < n; ++g)
            for (int si = 0; si < s_count; ++si) v[var(g, si)] = carry(g, S[si]);
        t_v.push_back(std::move(v));
        t_full_rows.push_back(full_flat(carry));
    }
    out.t_gens_v_ = t_v;

    out.t_full_ = ZmEchelon(m, n * n);
    for (std::vector<long>& row : t_full_rows) out.t_full_.add_row(std::move(row));
    out.t_full_.finalize();

    // relations of the Z^2 generators modulo T
    ZmEchelon rel(m, vdim + r);
    for (int i = 0; i < r; ++i) {
        std::vector<long> row(vdim + r, 0);
        for (int c = 0; c < vdim; ++c) row[c] = z2[i][c];
        row[vdim + i] = 1;
        rel.add_row(std::move(row));
    }
    for (const std::vector<long>& t : t_v) {
        std::vector<long> row(vdim + r, 0);
        for (int c = 0; c < vdim; ++c) row[c] = t[c];
        rel.add_row(std::move(row));
    }
    rel.finalize();
    std::vector<std::vector<Int>> rel_int;
    for (int i = 0; i < rel.row_count(); ++i)
        if (rel.pivot_col(i) >= vdim) {
            std::vector<Int> row(r);
            for (int k = 0; k < r; ++k) row[k] = Int(rel.row(i)[vdim + k]);
            rel_int.push_back(std::move(row));
        }
    for (int i = 0; i < r; ++i) {
        std::vector<Int> row(r, 0);
        row[i] = m;
        rel_int.push_back(std::move(row));
    }

    SnfResult snf = smith_normal_form(rel_int, r);
    std::vector<long> factors;
    std::vector<std::vector<long>> gen_v;
    for (int j = 0; j < r; ++j) {
        Int d = j < static_cast<int>(snf.diag.size()) ? snf.diag[j] : Int(0);
        if (d <= 1) continue;
        if (Int(m) % d != 0) throw internal_error("h2_group: invariant factor does not divide m");
        factors.push_back(static_cast<long>(d));
        std::vector<long> gv(vdim, 0);
        for (int k = 0; k < r; ++k) {
            long coef = static_cast<long>(snf.Vinv[j][k] % m);
            if (coef == 0) continue;
            for (int c = 0; c < vdim; ++c) gv[c] = mod_long(gv[c] + coef * z2[k][c], m);
        }
        gen_v.push_back(std::move(gv));
    }
    out.invariant_factors = factors;
    out.gen_v_ = gen_v;

    long count = 1;
    for (long f0 : factors) {
        count *= f0;
        if (count > caps.class_count_cap)
            throw validation_error("h2_group: class enumeration exceeds the cap");
    }

    // expand a v-vector into the full cocycle table
    auto expand = [&](const std::vector<long>& v) {
        std::vector<std::vector<long>> vals(n, std::vector<long>(n, 0));
        for (int g = 0; g < n; ++g) {
            std::vector<std::vector<std::pair<int, long>>> form =
                detail::expansion_forms_for(G, f, g, m);
            for (int x = 0; x < n; ++x) {
                long acc = 0;
                for (auto& [idx, c] : form[x]) acc += c * v[idx];
                vals[g][x] = mod_long(acc, m);
            }
        }
        return vals;
    };

    std::vector<long> coords(factors.size(), 0);
    for (long idx = 0; idx < count; ++idx) {
        std::vector<long> v(vdim, 0);
        for (std::size_t j = 0; j < factors.size(); ++j)
            for (int c = 0; c < vdim; ++c)
                v[c] = mod_long(v[c] + coords[j] * gen_v[j][c], m);
        Cocycle repc = out.canonicalize(make_cocycle(G, m, expand(v)));
        out.class_coords.push_back(coords);
        out.class_reps.push_back(repc);
        out.coord_index_[coords] = idx;
        for (int j = static_cast<int>(factors.size()) - 1; j >= 0; --j) {
            if (++coords[j] < factors[j]) break;
            coords[j] = 0;
        }
    }
    for (std::size_t j = 0; j < factors.size(); ++j) {
        std::vector<long> unit(factors.size(), 0);
        unit[j] = 1;
        out.generator_reps.push_back(out.rep(unit));
    }
    return out;
}

/// Solve delta u = c embedded into mu_M with M = m * exp(G^ab); guaranteed
/// solvable when c lies in the trivializing subgroup.
inline TrivializingCochain trivialize_s1(const Cocycle& c) {
    const FiniteGroup& G = *c.group;
    int n = G.order();
    long M = c.modulus * G.abelianization_exponent();
    long f = M / c.modulus;
    ZmSystem sys(M, n - 1);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            std::vector<std::pair<int, long>> terms;
            if (g != 0) terms.emplace_back(g - 1, 1);
            if (h != 0) terms.emplace_back(h - 1, 1);
            int gh = G.mul(g, h);
            if (gh != 0) terms.emplace_back(gh - 1, -1);
            sys.add_equation_sparse(terms, f * c.values[g][h]);
        }
    ZmSolveResult res = sys.solve();
    if (!res.solution)
        throw internal_error("trivialize_s1: cocycle is not circle-trivial (" + res.certificate + ")");
    TrivializingCochain u;
    u.modulus = M;
    u.values.assign(n, 0);
    for (int g = 1; g < n; ++g) u.values[g] = (*res.solution)[g - 1];
    return u;
}

}  // namespace orbk
