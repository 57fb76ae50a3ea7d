#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace orbk {

// Exact arithmetic only: the engine never touches floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Input or precondition failure (maps to CLI exit code 1).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Internal consistency failure, e.g. d∘d != 0 or a non-integral
/// multiplicity (maps to CLI exit code 2).  Never downgraded to a warning.
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline long gcd_long(long a, long b) { return std::gcd(a, b); }
inline long lcm_long(long a, long b) { return std::lcm(a, b); }

/// Floor-mod residue in [0, m).
inline long mod_long(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

/// Modular inverse; requires gcd(a, m) = 1.
inline long inv_mod(long a, long m) {
    long t = 0, new_t = 1, r = m, new_r = mod_long(a, m);
    while (new_r != 0) {
        long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw validation_error("inv_mod: argument not invertible");
    return mod_long(t, m);
}

inline long pow_mod(long base, long exp, long m) {
    long r = 1 % m;
    base = mod_long(base, m);
    while (exp > 0) {
        if (exp & 1) r = (r * base) % m;
        base = (base * base) % m;
        exp >>= 1;
    }
    return r;
}

/// Deterministic splitmix64 stream, used only by tests and sampled checks.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

}  // namespace orbk
