#pragma once

#include "orbk/numeric.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace orbk {

/// Unit u mod m with u*a == gcd(a, m) (mod m).
inline long unit_lifting(long a, long m) {
    a = mod_long(a, m);
    long d = std::gcd(a, m);
    if (d == m) return 1;  // a == 0
    long a2 = a / d, m2 = m / d;
    long u = inv_mod(mod_long(a2, m2), m2);
    while (std::gcd(u, m) != 1) u += m2;  // lift to a unit mod m
    return mod_long(u, m);
}

/**
 * Row echelon / Howell form over Z/m with deterministic first-nonzero
 * pivoting.  Rows are fed incrementally; pivot leading entries always
 * divide m.  After finalize() the row set has the Howell property, so
 * reduce() canonicalizes coset representatives (lexicographically minimal)
 * and contains() decides membership in the row span.
 */
class ZmEchelon {
public:
    ZmEchelon(long m, int cols) : m_(m), cols_(cols), pivot_at_(cols, -1) {
        if (m < 1) throw validation_error("ZmEchelon: modulus must be >= 1");
    }

    long modulus() const { return m_; }
    int cols() const { return cols_; }
    int row_count() const { return static_cast<int>(rows_.size()); }
    const std::vector<long>& row(int i) const { return rows_[i]; }
    int pivot_col(int i) const { return pivcol_[i]; }

    /// Returns true if the row changed the span (installed a new pivot or
    /// combined into an existing one), false if it reduced to zero.
    bool add_row(std::vector<long> row) {
        if (static_cast<int>(row.size()) != cols_)
            throw validation_error("ZmEchelon: row width mismatch");
        for (long& x : row) x = mod_long(x, m_);
        bool changed = false;
        for (int j = 0; j < cols_; ++j) {
            long a = row[j];
            if (a == 0) continue;
            int pi = pivot_at_[j];
            if (pi < 0) {
                long u = unit_lifting(a, m_);
                for (long& x : row) x = mod_long(x * u, m_);
                pivot_at_[j] = static_cast<int>(rows_.size());
                pivcol_.push_back(j);
                rows_.push_back(std::move(row));
                return true;
            }
            long d = rows_[pi][j];
            if (a % d == 0) {
                long q = a / d;
                axpy(row, rows_[pi], m_ - mod_long(q, m_));
            } else {
                // combine to a gcd pivot, keep eliminating
                long u, w;
                long g = ext_gcd(d, a, u, w);
                std::vector<long> comb(cols_);
                for (int k = 0; k < cols_; ++k)
                    comb[k] = mod_long(u * rows_[pi][k] + w * row[k], m_);
                long scale = unit_lifting(g, m_);
                for (long& x : comb) x = mod_long(x * scale, m_);
                std::vector<long> rest(cols_);
                long dg = d / g, ag = a / g;
                for (int k = 0; k < cols_; ++k)
                    rest[k] = mod_long(dg * row[k] - ag * rows_[pi][k], m_);
                rows_[pi] = std::move(comb);
                row = std::move(rest);
                changed = true;
            }
        }
        return changed;
    }

    /// Residue of v after elimination against the pivot rows (no install).
    std::vector<long> residue(std::vector<long> v) const {
        for (long& x : v) x = mod_long(x, m_);
        for (int j = 0; j < cols_; ++j) {
            long a = v[j];
            if (a == 0) continue;
            int pi = pivot_at_[j];
            if (pi < 0) continue;
            long d = rows_[pi][j];
            long q = a / d;  // leaves a mod d at position j
            if (q) axpy(v, rows_[pi], m_ - mod_long(q, m_));
        }
        return v;
    }

    /// Howell completion: adds the annihilator multiples of every pivot row
    /// until stable, then reduces entries above pivots and sorts.
    void finalize() {
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                long d = rows_[i][pivcol_[i]];
                long e = m_ / std::gcd(d, m_);
                if (e == m_ || e == 1) continue;  // e==m means d unit-free zero-mult
                std::vector<long> cand(cols_);
                for (int k = 0; k < cols_; ++k) cand[k] = mod_long(rows_[i][k] * e, m_);
                bool nonzero = false;
                for (long x : cand)
                    if (x) { nonzero = true; break; }
                if (nonzero && add_row(std::move(cand))) again = true;
            }
        }
        // back-reduce above pivots, columns left to right
        std::vector<int> order;
        for (std::size_t i = 0; i < rows_.size(); ++i) order.push_back(static_cast<int>(i));
        std::sort(order.begin(), order.end(), [&](int a, int b) { return pivcol_[a] < pivcol_[b]; });
        for (int idx : order) {
            int j = pivcol_[idx];
            long d = rows_[idx][j];
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                if (static_cast<int>(r) == idx) continue;
                long q = rows_[r][j] / d;
                if (q) axpy(rows_[r], rows_[idx], m_ - mod_long(q, m_));
            }
        }
        std::vector<std::vector<long>> rows2;
        std::vector<int> piv2;
        for (int idx : order) {
            rows2.push_back(std::move(rows_[idx]));
            piv2.push_back(pivcol_[idx]);
        }
        rows_ = std::move(rows2);
        pivcol_ = std::move(piv2);
        pivot_at_.assign(cols_, -1);
        for (std::size_t i = 0; i < rows_.size(); ++i) pivot_at_[pivcol_[i]] = static_cast<int>(i);
        finalized_ = true;
    }

    bool finalized() const { return finalized_; }

    /// Canonical (lexicographically minimal) representative of v + span.
    std::vector<long> reduce(std::vector<long> v) const { return residue(std::move(v)); }

    bool contains(const std::vector<long>& v) const {
        std::vector<long> r = residue(v);
        return std::all_of(r.begin(), r.end(), [](long x) { return x == 0; });
    }

    /// |span| = prod over pivots of m / d_i.
    Int span_size() const {
        Int s = 1;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            s *= Int(m_ / rows_[i][pivcol_[i]]);
        return s;
    }

private:
    long m_;
    int cols_;
    bool finalized_ = false;
    std::vector<std::vector<long>> rows_;
    std::vector<int> pivcol_;
    std::vector<int> pivot_at_;

    static long ext_gcd(long a, long b, long& x, long& y) {
        if (b == 0) { x = 1; y = 0; return a; }
        long x1, y1;
        long g = ext_gcd(b, a % b, x1, y1);
        x = y1;
        y = x1 - (a / b) * y1;
        return g;
    }

    void axpy(std::vector<long>& dst, const std::vector<long>& src, long c) const {
        if (c == 0) return;
        for (int k = 0; k < cols_; ++k) dst[k] = mod_long(dst[k] + c * src[k], m_);
    }
};

/// Solution of A x = b over Z/m, or the index of an equation whose
/// reduction is inconsistent.
struct ZmSolveResult {
    std::optional<std::vector<long>> solution;
    std::string certificate;  // set when infeasible
};

/**
 * Incremental solver: equations are (coeff row, rhs) pairs; variables are
 * assigned zeros on free positions, so the particular solution is
 * deterministic.
 */
class ZmSystem {
public:
    ZmSystem(long m, int vars) : m_(m), vars_(vars), ech_(m, vars + 1) {}

    void add_equation(std::vector<long> coeffs, long rhs) {
        coeffs.push_back(mod_long(rhs, m_));
        ech_.add_row(std::move(coeffs));
        ++fed_;
    }

    void add_equation_sparse(const std::vector<std::pair<int, long>>& terms, long rhs) {
        std::vector<long> row(vars_, 0);
        for (auto& [i, c] : terms) row[i] = mod_long(row[i] + c, m_);
        add_equation(std::move(row), rhs);
    }

    ZmSolveResult solve() const {
        std::vector<long> x(vars_, 0);
        // collect rows sorted by pivot col descending for back-substitution
        std::vector<int> order;
        for (int i = 0; i < ech_.row_count(); ++i) order.push_back(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return ech_.pivot_col(a) > ech_.pivot_col(b); });
        for (int idx : order) {
            const std::vector<long>& row = ech_.row(idx);
            int j = ech_.pivot_col(idx);
            if (j >= vars_) {
                return {std::nullopt, "inconsistent system: a combination reduces to 0 = " +
                                          std::to_string(row[vars_]) + " (mod " + std::to_string(m_) + ")"};
            }
            long d = row[j];
            long r = row[vars_];
            for (int k = j + 1; k < vars_; ++k) r = mod_long(r - row[k] * x[k], m_);
            if (r % std::gcd(d, m_) != 0)
                return {std::nullopt, "inconsistent pivot: " + std::to_string(d) + "*x = " +
                                          std::to_string(r) + " (mod " + std::to_string(m_) + ")"};
            x[j] = (r / d) % (m_ / d);  // d | m after unit scaling
        }
        return {x, {}};
    }

private:
    long m_;
    int vars_;
    ZmEchelon ech_;
    long fed_ = 0;
};

/// Generators of { x in (Z/m)^r : sum_i x_i rows[i] = 0 }.
inline std::vector<std::vector<long>> zm_relation_generators(
    const std::vector<std::vector<long>>& rows, long m, int cols) {
    int r = static_cast<int>(rows.size());
    ZmEchelon ech(m, cols + r);
    for (int i = 0; i < r; ++i) {
        std::vector<long> aug(cols + r, 0);
        for (int k = 0; k < cols; ++k) aug[k] = rows[i][k];
        aug[cols + i] = 1;
        ech.add_row(std::move(aug));
    }
    ech.finalize();
    std::vector<std::vector<long>> out;
    for (int i = 0; i < ech.row_count(); ++i)
        if (ech.pivot_col(i) >= cols) {
            const std::vector<long>& row = ech.row(i);
            out.emplace_back(row.begin() + cols, row.end());
        }
    return out;
}

/// Kernel generators of x -> A x over Z/m (x indexed by columns of A).
/// A is passed as its echelon to keep tall systems cheap.
inline std::vector<std::vector<long>> zm_kernel(const ZmEchelon& echA, long m) {
    int v = echA.cols();
    // kernel of H x = 0  ==  relations among the columns of H
    std::vector<std::vector<long>> cols(v, std::vector<long>(echA.row_count()));
    for (int i = 0; i < echA.row_count(); ++i)
        for (int j = 0; j < v; ++j) cols[j][i] = echA.row(i)[j];
    return zm_relation_generators(cols, m, echA.row_count());
}

/// Smith normal form diagonal of an integer matrix whose rows present the
/// relations of a quotient of Z^cols.  Vinv tracks the inverse of the
/// accumulated column transform: row j of Vinv is the coordinate vector of
/// the quotient generator attached to diag[j].
struct SnfResult {
    std::vector<Int> diag;                  // d1 | d2 | ... (non-negative)
    std::vector<std::vector<Int>> Vinv;     // cols x cols
};

inline SnfResult smith_normal_form(std::vector<std::vector<Int>> M, int cols) {
    int r = static_cast<int>(M.size());
    SnfResult res;
    res.Vinv.assign(cols, std::vector<Int>(cols, 0));
    for (int i = 0; i < cols; ++i) res.Vinv[i][i] = 1;
    auto col_addmul = [&](int dst, int src, const Int& q) {
        for (int i = 0; i < r; ++i) M[i][dst] += q * M[i][src];
        // V -> V*E with E[src][dst] = q, so Vinv -> E^{-1}*Vinv
        for (int j = 0; j < cols; ++j) res.Vinv[src][j] -= q * res.Vinv[dst][j];
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < r; ++i) std::swap(M[i][a], M[i][b]);
        std::swap(res.Vinv[a], res.Vinv[b]);
    };
    auto col_neg = [&](int a) {
        for (int i = 0; i < r; ++i) M[i][a] = -M[i][a];
        for (int j = 0; j < cols; ++j) res.Vinv[a][j] = -res.Vinv[a][j];
    };
    int t = 0;
    int limit = std::min(r, cols);
    while (t < limit) {
        // find minimal nonzero |entry| in the trailing submatrix
        int bi = -1, bj = -1;
        Int best = 0;
        for (int i = t; i < r; ++i)
            for (int j = t; j < cols; ++j)
                if (M[i][j] != 0) {
                    Int a = abs(M[i][j]);
                    if (bi < 0 || a < best) { bi = i; bj = j; best = a; }
                }
        if (bi < 0) break;
        std::swap(M[t], M[bi]);
        if (bj != t) col_swap(t, bj);
        bool clean = true;
        for (int i = t + 1; i < r; ++i)
            if (M[i][t] != 0) {
                Int q = M[i][t] / M[t][t];
                for (int j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
                if (M[i][t] != 0) clean = false;
            }
        for (int j = t + 1; j < cols; ++j)
            if (M[t][j] != 0) {
                Int q = M[t][j] / M[t][t];
                col_addmul(j, t, -q);
                if (M[t][j] != 0) clean = false;
            }
        if (!clean) continue;
        // enforce divisibility of the trailing block
        bool redo = false;
        for (int i = t + 1; i < r && !redo; ++i)
            for (int j = t + 1; j < cols && !redo; ++j)
                if (M[i][j] % M[t][t] != 0) {
                    for (int k = t; k < cols; ++k) M[t][k] += M[i][k];
                    redo = true;
                }
        if (redo) continue;
        if (M[t][t] < 0) col_neg(t);
        ++t;
    }
    for (int i = 0; i < limit; ++i) res.diag.push_back(i < t ? M[i][i] : Int(0));
    return res;
}

}  // namespace orbk
