#pragma once

#include "orbk/cocycle.hpp"
#include "orbk/cyclotomic.hpp"
#include "orbk/extension.hpp"
#include "orbk/group.hpp"
#include "orbk/h2.hpp"
#include "orbk/zmod.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace orbk {

/**
 * Exact irreducible character table.  Candidate characters come from the
 * eigenvector method on the class-sum matrices, run modulo a Dixon prime
 * p = 1 (mod exp G) and lifted to cyclotomic integers; the lifted table is
 * then certified over Q(zeta): every row must be a simultaneous exact
 * eigenvector of the class algebra (central character multiplicativity)
 * and the rows must be exactly orthonormal.  The certificate pins the
 * table uniquely, independent of the mod-p path.
 */
struct CharacterTable {
    const FiniteGroup* G = nullptr;
    ConjugacyClassSet classes;
    int level = 1;  // exp(G)
    std::vector<long> degrees;
    std::vector<std::vector<Cyclotomic>> rows;  // rows x classes

    int row_count() const { return static_cast<int>(rows.size()); }
    const Cyclotomic& value(int row, int element) const {
        return rows[row][classes.class_of[element]];
    }
};

namespace detail {

inline long find_dixon_prime(long n, long lower) {
    for (long p = n + 1;; p += n) {
        if (p <= lower) continue;
        if (is_prime_long(p)) return p;
    }
}

inline long fp_primitive_root(long p) {
    std::vector<long> qs;
    long t = p - 1;
    for (long d = 2; d * d <= t; ++d)
        if (t % d == 0) {
            qs.push_back(d);
            while (t % d == 0) t /= d;
        }
    if (t > 1) qs.push_back(t);
    for (long w = 2; w < p; ++w) {
        bool ok = true;
        for (long q : qs)
            if (pow_mod(w, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return w;
    }
    throw internal_error("no primitive root found");
}

/// Reduced row echelon over F_p in place; returns pivot columns.
inline std::vector<int> fp_rref(std::vector<std::vector<long>>& rows, long p) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    int cols = static_cast<int>(rows[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] % p != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(rows[sel], rows[r]);
        long inv = inv_mod(rows[r][c], p);
        for (long& x : rows[r]) x = mod_long(x * inv, p);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r) continue;
            long f = mod_long(rows[i][c], p);
            if (!f) continue;
            for (int k = 0; k < cols; ++k) rows[i][k] = mod_long(rows[i][k] - f * rows[r][k], p);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

struct FpSubspace {
    std::vector<std::vector<long>> basis;  // RREF rows over the class space
    std::vector<int> pivots;
};

/// Express w in the RREF basis; the residual must vanish.
inline std::vector<long> fp_express(const FpSubspace& w, std::vector<long> v, long p) {
    std::vector<long> coeff(w.basis.size(), 0);
    for (std::size_t r = 0; r < w.basis.size(); ++r) {
        long c = mod_long(v[w.pivots[r]], p);
        coeff[r] = c;
        if (!c) continue;
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = mod_long(v[k] - c * w.basis[r][k], p);
    }
    for (long x : v)
        if (x % p != 0) throw internal_error("class-sum operator does not preserve a split subspace");
    return coeff;
}

}  // namespace detail

inline CharacterTable character_table(const FiniteGroup& G) {
    CharacterTable tbl;
    tbl.G = &G;
    tbl.classes = conjugacy_classes(G);
    int n = G.order();
    int c = tbl.classes.count();
    tbl.level = G.exponent();
    int N = tbl.level;

    std::vector<int> invcls(c);
    for (int j = 0; j < c; ++j) invcls[j] = tbl.classes.class_of[G.inv(tbl.classes.representatives[j])];

    // class algebra structure constants  C_i C_j = sum_k a[i][j][k] C_k
    std::vector<std::vector<std::vector<long>>> a(
        c, std::vector<std::vector<long>>(c, std::vector<long>(c, 0)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            ++a[tbl.classes.class_of[x]][tbl.classes.class_of[y]][tbl.classes.class_of[G.mul(x, y)]];
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
            for (int k = 0; k < c; ++k) {
                if (a[i][j][k] % tbl.classes.sizes[k] != 0)
                    throw internal_error("class structure constants not integral");
                a[i][j][k] /= tbl.classes.sizes[k];
            }

    std::vector<std::vector<Cyclotomic>> rows;
    std::vector<long> degrees;

    if (G.is_abelian()) {
        // the dual group, enumerated from Hom(G, Z/N)
        std::vector<std::vector<long>> gens = hom_characters(G, N);
        std::set<std::vector<long>> homs;
        homs.insert(std::vector<long>(n, 0));
        std::vector<std::vector<long>> frontier(homs.begin(), homs.end());
        while (!frontier.empty()) {
            std::vector<std::vector<long>> fresh;
            for (const std::vector<long>& t : frontier)
                for (const std::vector<long>& g : gens) {
                    std::vector<long> s(n);
                    for (int i = 0; i < n; ++i) s[i] = mod_long(t[i] + g[i], N);
                    if (homs.insert(s).second) fresh.push_back(std::move(s));
                }
            frontier = std::move(fresh);
        }
        if (static_cast<int>(homs.size()) != n)
            throw internal_error("abelian dual group enumeration has wrong size");
        for (const std::vector<long>& t : homs) {
            std::vector<Cyclotomic> row(c);
            for (int j = 0; j < c; ++j) row[j] = Cyclotomic::root(N, t[tbl.classes.representatives[j]]);
            rows.push_back(std::move(row));
            degrees.push_back(1);
        }
    } else {
        // Dixon prime and the mod-p eigenvector candidates
        long p = detail::find_dixon_prime(N, n);
        long w = detail::fp_primitive_root(p);

        std::vector<detail::FpSubspace> spaces;
        {
            detail::FpSubspace full;
            full.basis.assign(c, std::vector<long>(c, 0));
            for (int i = 0; i < c; ++i) full.basis[i][i] = 1;
            full.pivots.resize(c);
            for (int i = 0; i < c; ++i) full.pivots[i] = i;
            spaces.push_back(std::move(full));
        }
        for (int j = 0; j < c; ++j) {
            bool all_one = true;
            for (const detail::FpSubspace& s : spaces) all_one &= (s.basis.size() == 1);
            if (all_one) break;
            std::vector<detail::FpSubspace> next;
            for (detail::FpSubspace& sp : spaces) {
                int dim = static_cast<int>(sp.basis.size());
                if (dim == 1) {
                    next.push_back(std::move(sp));
                    continue;
                }
                // restriction A of the operator whose eigenvectors are the
                // central character vectors:  (B_j w)_i = sum_k a[j][i][k] w_k
                std::vector<std::vector<long>> A(dim, std::vector<long>(dim, 0));
                for (int r = 0; r < dim; ++r) {
                    std::vector<long> img(c, 0);
                    for (int i = 0; i < c; ++i) {
                        long acc = 0;
                        for (int k = 0; k < c; ++k)
                            acc = (acc + a[j][i][k] % p * sp.basis[r][k]) % p;
                        img[i] = acc;
                    }
                    A[r] = detail::fp_express(sp, std::move(img), p);
                }
                bool scalar = true;
                for (int r = 0; r < dim && scalar; ++r)
                    for (int s = 0; s < dim && scalar; ++s)
                        if (r == s ? A[r][s] != A[0][0] : A[r][s] != 0) scalar = false;
                if (scalar) {
                    next.push_back(std::move(sp));
                    continue;
                }
                int found = 0;
                for (long lam = 0; lam < p && found < dim; ++lam) {
                    // left kernel of (A - lam I): kernel of its transpose
                    ZmEchelon ech(p, dim);
                    for (int s = 0; s < dim; ++s) {
                        std::vector<long> row(dim);
                        for (int r = 0; r < dim; ++r)
                            row[r] = mod_long(A[r][s] - (r == s ? lam : 0), p);
                        ech.add_row(std::move(row));
                    }
                    std::vector<std::vector<long>> ker = zm_kernel(ech, p);
                    if (ker.empty()) continue;
                    detail::FpSubspace child;
                    for (const std::vector<long>& x : ker) {
                        std::vector<long> vec(c, 0);
                        for (int r = 0; r < dim; ++r) {
                            if (!x[r]) continue;
                            for (int k = 0; k < c; ++k)
                                vec[k] = mod_long(vec[k] + x[r] * sp.basis[r][k], p);
                        }
                        child.basis.push_back(std::move(vec));
                    }
                    child.pivots = detail::fp_rref(child.basis, p);
                    found += static_cast<int>(child.basis.size());
                    next.push_back(std::move(child));
                }
                if (found != dim)
                    throw internal_error("class-sum operator failed to split a subspace");
            }
            spaces = std::move(next);
        }
        for (const detail::FpSubspace& sp : spaces)
            if (sp.basis.size() != 1)
                throw internal_error("character eigenspaces did not split to dimension one");

        // order of each class representative and the classes of its powers
        std::vector<int> rep_order(c);
        std::vector<std::vector<int>> power_cls(c);
        for (int j = 0; j < c; ++j) {
            int g = tbl.classes.representatives[j];
            rep_order[j] = G.element_order(g);
            power_cls[j].resize(rep_order[j]);
            int x = 0;
            for (int l = 0; l < rep_order[j]; ++l) {
                power_cls[j][l] = tbl.classes.class_of[x];
                x = G.mul(x, g);
            }
        }

        for (const detail::FpSubspace& sp : spaces) {
            std::vector<long> v = sp.basis[0];
            if (v[0] % p == 0) throw internal_error("central character vanishes at the identity class");
            long norm = inv_mod(v[0], p);
            for (long& x : v) x = mod_long(x * norm, p);  // omega_k mod p
            // degree from the orthogonality relation
            long S = 0;
            for (int k = 0; k < c; ++k)
                S = (S + v[k] * v[invcls[k]] % p * inv_mod(tbl.classes.sizes[k], p)) % p;
            long d2 = mod_long(n % p * inv_mod(S, p), p);
            long deg = 0;
            for (long d = 1; 1L * d * d <= n; ++d)
                if (1L * d * d % p == d2) { deg = d; break; }
            if (!deg) throw internal_error("no integer degree matches the mod-p orthogonality");
            // character values mod p, then the cyclotomic lift per class
            std::vector<long> chi(c);
            for (int k = 0; k < c; ++k)
                chi[k] = mod_long(deg * v[k] % p * inv_mod(tbl.classes.sizes[k], p), p);
            std::vector<Cyclotomic> row(c);
            for (int k = 0; k < c; ++k) {
                int nk = rep_order[k];
                long z = pow_mod(w, (p - 1) / nk, p);
                long zinv = inv_mod(z, p);
                Cyclotomic val(0);
                long n_inv = inv_mod(nk, p);
                for (int t = 0; t < nk; ++t) {
                    long step = pow_mod(zinv, t, p);
                    long mt = 0, zpow = 1;
                    for (int l = 0; l < nk; ++l) {
                        mt = (mt + chi[power_cls[k][l]] * zpow) % p;
                        zpow = zpow * step % p;
                    }
                    mt = mod_long(mt * n_inv, p);
                    if (mt > deg)
                        throw internal_error("cyclotomic lift produced an out-of-range multiplicity");
                    if (mt) val = val + Cyclotomic::root(N, static_cast<long>(t) * (N / nk)).scaled(Rat(mt));
                }
                row[k] = val;
            }
            rows.push_back(std::move(row));
            degrees.push_back(deg);
        }
    }

    // deterministic row order: by degree, then by values along the elements
    std::vector<int> order(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) order[i] = static_cast<int>(i);
    std::vector<std::vector<Cyclotomic>> reduced(rows.size(), std::vector<Cyclotomic>(c));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int k = 0; k < c; ++k) reduced[i][k] = rows[i][k].reduced();
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (degrees[x] != degrees[y]) return degrees[x] < degrees[y];
        for (int g = 0; g < n; ++g) {
            int k = tbl.classes.class_of[g];
            int cmp = Cyclotomic::lex_compare(reduced[x][k], reduced[y][k]);
            if (cmp) return cmp < 0;
        }
        return false;
    });
    for (int idx : order) {
        tbl.rows.push_back(std::move(rows[idx]));
        tbl.degrees.push_back(degrees[idx]);
    }

    // ---- exact certification over Q(zeta) ----
    if (tbl.row_count() != c) throw internal_error("character table row count mismatch");
    long deg_sq = 0;
    for (int r = 0; r < c; ++r) {
        if (tbl.degrees[r] < 1 || tbl.rows[r][0] != Cyclotomic(static_cast<int>(tbl.degrees[r])))
            throw internal_error("character degree mismatch at the identity class");
        deg_sq += tbl.degrees[r] * tbl.degrees[r];
    }
    if (deg_sq != n) throw internal_error("sum of squared degrees does not equal the group order");
    for (int r = 0; r < c; ++r) {
        // central character of the row, exact
        std::vector<Cyclotomic> omega(c);
        for (int k = 0; k < c; ++k)
            omega[k] = tbl.rows[r][k].scaled(Rat(tbl.classes.sizes[k], tbl.degrees[r]));
        for (int i = 0; i < c; ++i)
            for (int j = i; j < c; ++j) {
                Cyclotomic lhs = omega[i] * omega[j];
                Cyclotomic rhs(0);
                for (int k = 0; k < c; ++k)
                    if (a[i][j][k]) rhs = rhs + omega[k].scaled(Rat(a[i][j][k]));
                if (lhs != rhs)
                    throw internal_error("character row is not a class-algebra eigenvector");
            }
    }
    for (int r = 0; r < c; ++r)
        for (int s = r; s < c; ++s) {
            Cyclotomic ip(0);
            for (int k = 0; k < c; ++k)
                ip = ip + (tbl.rows[r][k] * tbl.rows[s][invcls[k]]).scaled(Rat(tbl.classes.sizes[k]));
            if (ip != Cyclotomic(r == s ? n : 0))
                throw internal_error("character rows are not exactly orthonormal");
        }
    return tbl;
}

/**
 * Twisted character table: the rows of the central extension's table whose
 * value at the central generator is degree * zeta_m, recorded on the
 * section points (g, 0).  Row count equals the number of alpha-regular
 * classes, the squared degrees sum to |G|, and the rows vanish off the
 * regular classes; all three facts are asserted, as is exact twisted
 * orthonormality.
 */
struct TwistedCharacterTable {
    const FiniteGroup* G = nullptr;
    Cocycle alpha;
    long modulus = 1;
    int level = 1;  // exp of the extension
    std::vector<long> degrees;
    std::vector<std::vector<Cyclotomic>> values;  // rows x |G| (value at (g, 0))
    std::vector<int> regular_classes;             // class ids

    int rank() const { return static_cast<int>(values.size()); }
};

inline TwistedCharacterTable twisted_character_table(const FiniteGroup& G, const Cocycle& alpha) {
    if (alpha.group != &G)
        throw validation_error("twisted_character_table: cocycle belongs to another group");
    int n = G.order();
    long m = alpha.modulus;
    CentralExtension ext = central_extension(G, alpha);
    CharacterTable tbl = character_table(ext.total);
    int N = tbl.level;
    if (N % m != 0) throw internal_error("extension exponent is not divisible by the modulus");

    TwistedCharacterTable out;
    out.G = &G;
    out.alpha = alpha;
    out.modulus = m;
    out.level = N;
    ConjugacyClassSet cc = conjugacy_classes(G);
    out.regular_classes = alpha_regular_classes(alpha, cc);

    Cyclotomic zeta_m = Cyclotomic::root(N, N / m);
    int central = ext.central_generator();
    std::vector<std::pair<long, std::vector<Cyclotomic>>> picked;
    for (int r = 0; r < tbl.row_count(); ++r) {
        Cyclotomic at_central = tbl.value(r, central);
        if (at_central != zeta_m.scaled(Rat(tbl.degrees[r]))) continue;
        std::vector<Cyclotomic> vals(n);
        for (int g = 0; g < n; ++g) vals[g] = tbl.value(r, ext.section(g)).reduced();
        picked.emplace_back(tbl.degrees[r], std::move(vals));
    }
    std::sort(picked.begin(), picked.end(),
              [&](const auto& x, const auto& y) {
                  if (x.first != y.first) return x.first < y.first;
                  for (int g = 0; g < n; ++g) {
                      int cmp = Cyclotomic::lex_compare(x.second[g], y.second[g]);
                      if (cmp) return cmp < 0;
                  }
                  return false;
              });
    for (auto& [deg, vals] : picked) {
        out.degrees.push_back(deg);
        out.values.push_back(std::move(vals));
    }

    if (out.rank() != static_cast<int>(out.regular_classes.size()))
        throw internal_error("twisted rank does not match the alpha-regular class count");
    long deg_sq = 0;
    for (long d : out.degrees) deg_sq += d * d;
    if (deg_sq != n)
        throw internal_error("twisted degrees squared do not sum to the group order");
    std::vector<char> regular_of_class(cc.count(), 0);
    for (int k : out.regular_classes) regular_of_class[k] = 1;
    for (int r = 0; r < out.rank(); ++r)
        for (int g = 0; g < n; ++g)
            if (!regular_of_class[cc.class_of[g]] && !out.values[r][g].is_zero())
                throw internal_error("twisted character does not vanish off the regular classes");
    for (int r = 0; r < out.rank(); ++r)
        for (int s = r; s < out.rank(); ++s) {
            Cyclotomic ip(0);
            for (int g = 0; g < n; ++g) ip = ip + out.values[r][g] * out.values[s][g].conj();
            if (ip != Cyclotomic(r == s ? n : 0))
                throw internal_error("twisted rows are not exactly orthonormal");
        }
    return out;
}

/// Rank of R_alpha(G): the alpha-regular class count.  When the extension
/// is small the twisted table is built as an independent cross-check.
inline int rank_r_alpha(const FiniteGroup& G, const Cocycle& alpha, bool force_table_check = false) {
    int scan = static_cast<int>(alpha_regular_classes(alpha).size());
    if (force_table_check || alpha.modulus * G.order() <= 512) {
        TwistedCharacterTable t = twisted_character_table(G, alpha);
        if (t.rank() != scan)
            throw internal_error("rank_r_alpha: table rank disagrees with the regularity scan");
    }
    return scan;
}

/// Multiplicities of a vector of section values against the rows of a
/// twisted table; non-integral or negative multiplicities are a hard
/// internal-consistency error, as is failure to reconstruct the vector.
inline std::vector<long> decompose_in_table(const TwistedCharacterTable& T,
                                            const std::vector<Cyclotomic>& vec) {
    int n = T.G->order();
    if (static_cast<int>(vec.size()) != n)
        throw validation_error("decompose_in_table: value vector has wrong length");
    std::vector<long> mult(T.rank(), 0);
    for (int r = 0; r < T.rank(); ++r) {
        Cyclotomic ip(0);
        for (int g = 0; g < n; ++g) ip = ip + vec[g] * T.values[r][g].conj();
        std::optional<Rat> q = ip.as_rational();
        if (!q) throw internal_error("non-scalar multiplicity in a character decomposition");
        Rat scaled = *q / n;
        if (denominator(scaled) != 1 || scaled < 0)
            throw internal_error("non-integral multiplicity in a character decomposition");
        mult[r] = static_cast<long>(numerator(scaled));
    }
    // exact reconstruction
    for (int g = 0; g < n; ++g) {
        Cyclotomic acc(0);
        for (int r = 0; r < T.rank(); ++r)
            if (mult[r]) acc = acc + T.values[r][g].scaled(Rat(mult[r]));
        if (acc != vec[g])
            throw internal_error("character decomposition does not reconstruct the vector");
    }
    return mult;
}

/// Pointwise product of two rows, decomposed in the table of the literal
/// cocycle sum.
inline std::vector<long> decompose_product(const TwistedCharacterTable& A, int row_a,
                                           const TwistedCharacterTable& B, int row_b,
                                           const TwistedCharacterTable& target) {
    int n = A.G->order();
    std::vector<Cyclotomic> vec(n);
    for (int g = 0; g < n; ++g) vec[g] = A.values[row_a][g] * B.values[row_b][g];
    return decompose_in_table(target, vec);
}

/// Complex-conjugate row expressed in the table of the negated cocycle.
inline std::vector<long> dual_character(const TwistedCharacterTable& A, int row,
                                        const TwistedCharacterTable& neg_table) {
    int n = A.G->order();
    std::vector<Cyclotomic> vec(n);
    for (int g = 0; g < n; ++g) vec[g] = A.values[row][g].conj();
    return decompose_in_table(neg_table, vec);
}

/// Restriction of a row to a subgroup, decomposed in the subgroup's
/// twisted table (for the restricted cocycle).
inline std::vector<long> restriction_map(const TwistedCharacterTable& A, int row,
                                         const SubgroupGroup& H,
                                         const TwistedCharacterTable& H_table) {
    int k = H.group.order();
    std::vector<Cyclotomic> vec(k);
    for (int i = 0; i < k; ++i) vec[i] = A.values[row][H.to_parent[i]];
    return decompose_in_table(H_table, vec);
}

}  // namespace orbk
