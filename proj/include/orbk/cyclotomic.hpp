#pragma once

#include "orbk/numeric.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace orbk {

/// Coefficients of the N-th cyclotomic polynomial (monic, exact), cached.
inline const std::vector<Int>& cyclotomic_polynomial(int n) {
    static std::map<int, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // x^n - 1 divided by all proper cyclotomic factors, recursively.
    std::function<std::vector<Int>(int)> build = [&](int k) -> std::vector<Int> {
        auto found = cache.find(k);
        if (found != cache.end()) return found->second;
        std::vector<Int> poly(k + 1, 0);
        poly[0] = -1;
        poly[k] = 1;
        for (int d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            std::vector<Int> phi_d = build(d);
            // exact division by the monic phi_d
            std::vector<Int> q(poly.size() - phi_d.size() + 1, 0);
            std::vector<Int> r = poly;
            for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
                Int c = r[i + phi_d.size() - 1];
                q[i] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < phi_d.size(); ++j)
                    r[i + j] -= c * phi_d[j];
            }
            for (const Int& x : r)
                if (x != 0) throw internal_error("cyclotomic polynomial division not exact");
            poly = std::move(q);
        }
        cache[k] = poly;
        return poly;
    };
    build(n);
    return cache.at(n);
}

inline int euler_phi(int n) {
    return static_cast<int>(cyclotomic_polynomial(n).size()) - 1;
}

/**
 * Exact element of Q(zeta_N) in the full power basis 1, z, ..., z^{N-1}.
 * Arithmetic is lazy; reduction modulo the N-th cyclotomic polynomial
 * happens only on zero tests, comparisons and emission, where the reduced
 * vector is canonical.
 */
class Cyclotomic {
public:
    Cyclotomic() : level_(1), c_(1, Rat(0)) {}
    Cyclotomic(int v) : level_(1), c_(1, Rat(v)) {}          // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rat& v) : level_(1), c_(1, v) {}        // NOLINT(google-explicit-constructor)

    static Cyclotomic root(int n, long k = 1) {
        if (n < 1) throw validation_error("cyclotomic level must be positive");
        Cyclotomic z;
        z.level_ = n;
        z.c_.assign(n, Rat(0));
        z.c_[mod_long(k, n)] = 1;
        return z;
    }

    int level() const { return level_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Cyclotomic lifted(int new_level) const {
        if (new_level % level_ != 0) throw validation_error("cyclotomic lift level mismatch");
        if (new_level == level_) return *this;
        Cyclotomic out;
        out.level_ = new_level;
        out.c_.assign(new_level, Rat(0));
        int f = new_level / level_;
        for (int j = 0; j < level_; ++j)
            if (!c_[j].is_zero()) out.c_[j * f] = c_[j];
        return out;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        int L = static_cast<int>(lcm_long(a.level_, b.level_));
        Cyclotomic x = a.lifted(L), y = b.lifted(L);
        for (int j = 0; j < L; ++j) x.c_[j] += y.c_[j];
        return x;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        int L = static_cast<int>(lcm_long(a.level_, b.level_));
        Cyclotomic x = a.lifted(L), y = b.lifted(L);
        for (int j = 0; j < L; ++j) x.c_[j] -= y.c_[j];
        return x;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        int L = static_cast<int>(lcm_long(a.level_, b.level_));
        Cyclotomic x = a.lifted(L), y = b.lifted(L);
        Cyclotomic out;
        out.level_ = L;
        out.c_.assign(L, Rat(0));
        for (int i = 0; i < L; ++i) {
            if (x.c_[i].is_zero()) continue;
            for (int j = 0; j < L; ++j) {
                if (y.c_[j].is_zero()) continue;
                int k = i + j;
                if (k >= L) k -= L;
                out.c_[k] += x.c_[i] * y.c_[j];
            }
        }
        return out;
    }

    Cyclotomic operator-() const {
        Cyclotomic out = *this;
        for (Rat& x : out.c_) x = -x;
        return out;
    }

    Cyclotomic scaled(const Rat& s) const {
        Cyclotomic out = *this;
        for (Rat& x : out.c_) x *= s;
        return out;
    }

    /// Canonical form: remainder modulo the level's cyclotomic polynomial.
    Cyclotomic reduced() const {
        const std::vector<Int>& phi = cyclotomic_polynomial(level_);
        int deg = static_cast<int>(phi.size()) - 1;
        Cyclotomic out = *this;
        for (int i = level_ - 1; i >= deg; --i) {
            if (out.c_[i].is_zero()) continue;
            Rat c = out.c_[i];
            out.c_[i] = 0;
            for (int j = 0; j < deg; ++j) out.c_[i - deg + j] -= c * Rat(phi[j]);
        }
        return out;
    }

    bool is_zero() const {
        Cyclotomic r = reduced();
        for (const Rat& x : r.c_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// zeta_N -> zeta_N^k for k coprime to N.
    Cyclotomic galois(long k) const {
        if (level_ == 1) return *this;
        if (std::gcd(mod_long(k, level_), static_cast<long>(level_)) != 1)
            throw validation_error("galois exponent not coprime to the level");
        Cyclotomic out;
        out.level_ = level_;
        out.c_.assign(level_, Rat(0));
        for (int j = 0; j < level_; ++j)
            if (!c_[j].is_zero()) out.c_[mod_long(static_cast<long>(j) * k, level_)] += c_[j];
        return out;
    }

    Cyclotomic conj() const { return level_ == 1 ? *this : galois(level_ - 1); }

    Cyclotomic inverse() const {
        Cyclotomic red = reduced();
        const std::vector<Int>& phi_int = cyclotomic_polynomial(level_);
        int deg = static_cast<int>(phi_int.size()) - 1;
        auto trim = [](std::vector<Rat>& p) {
            while (!p.empty() && p.back().is_zero()) p.pop_back();
        };
        std::vector<Rat> a(red.c_.begin(), red.c_.begin() + deg);
        trim(a);
        if (a.empty()) throw validation_error("inverse of zero cyclotomic");
        std::vector<Rat> r0(phi_int.size());
        for (std::size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rat(phi_int[i]);
        // extended Euclid in Q[x]: t * a == gcd (mod phi)
        std::vector<Rat> r1 = a;
        std::vector<Rat> t0{Rat(0)}, t1{Rat(1)};
        while (!r1.empty()) {
            std::vector<Rat> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rat(0));
            std::vector<Rat> rem = r0;
            if (!q.empty()) {
                Rat lead_inv = Rat(1) / r1.back();
                for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
                    Rat c = rem[i + r1.size() - 1] * lead_inv;
                    q[i] = c;
                    if (c.is_zero()) continue;
                    for (std::size_t j = 0; j < r1.size(); ++j) rem[i + j] -= c * r1[j];
                }
            }
            trim(rem);
            std::vector<Rat> tn(std::max(t0.size(), q.size() + t1.size()), Rat(0));
            for (std::size_t i = 0; i < t0.size(); ++i) tn[i] += t0[i];
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i].is_zero()) continue;
                for (std::size_t j = 0; j < t1.size(); ++j) tn[i + j] -= q[i] * t1[j];
            }
            trim(tn);
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(tn);
        }
        if (r0.size() != 1)
            throw internal_error("cyclotomic inverse: gcd with the cyclotomic polynomial not constant");
        Rat scale = Rat(1) / r0[0];
        Cyclotomic out;
        out.level_ = level_;
        out.c_.assign(level_, Rat(0));
        for (std::size_t i = 0; i < t0.size() && i < static_cast<std::size_t>(level_); ++i)
            out.c_[i] = t0[i] * scale;
        if (!((out * *this) - Cyclotomic(1)).is_zero())
            throw internal_error("cyclotomic inverse verification failed");
        return out;
    }

    std::optional<Rat> as_rational() const {
        Cyclotomic r = reduced();
        for (int j = 1; j < level_; ++j)
            if (!r.c_[j].is_zero()) return std::nullopt;
        return r.c_[0];
    }

    bool is_integer() const {
        std::optional<Rat> q = as_rational();
        return q && denominator(*q) == 1;
    }

    /// Deterministic comparison on (level, reduced coefficient vector).
    static int lex_compare(const Cyclotomic& a, const Cyclotomic& b) {
        int L = static_cast<int>(lcm_long(a.level_, b.level_));
        Cyclotomic x = a.lifted(L).reduced(), y = b.lifted(L).reduced();
        for (int j = 0; j < L; ++j) {
            if (x.c_[j] < y.c_[j]) return -1;
            if (x.c_[j] > y.c_[j]) return 1;
        }
        return 0;
    }

    std::string str() const {
        Cyclotomic r = reduced();
        std::string s;
        bool first = true;
        for (int j = 0; j < level_; ++j) {
            if (r.c_[j].is_zero()) continue;
            if (!first) s += " + ";
            s += r.c_[j].str();
            if (j > 0) s += "*z" + std::to_string(level_) + "^" + std::to_string(j);
            first = false;
        }
        return first ? "0" : s;
    }

private:
    int level_;
    std::vector<Rat> c_;
};

inline bool elem_is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline Cyclotomic elem_inv(const Cyclotomic& x) { return x.inverse(); }

}  // namespace orbk
