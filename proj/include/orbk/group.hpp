#pragma once

#include "orbk/numeric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace orbk {

/// Permutation of {0..k-1}, stored as its image vector.
using Perm = std::vector<int>;

inline Perm perm_identity(int k) {
    Perm p(k);
    for (int i = 0; i < k; ++i) p[i] = i;
    return p;
}

/// (f*g)(x) = f[g[x]]  — g applied first.
inline Perm perm_compose(const Perm& f, const Perm& g) {
    Perm r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

inline Perm perm_inverse(const Perm& f) {
    Perm r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[f[i]] = static_cast<int>(i);
    return r;
}

inline bool is_bijection(const Perm& p, int k) {
    if (static_cast<int>(p.size()) != k) return false;
    std::vector<char> seen(k, 0);
    for (int v : p) {
        if (v < 0 || v >= k || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

/**
 * Finite group as a full multiplication table.  Element 0 is always the
 * identity.  Groups built from permutation generators keep their provenance
 * (the generators and one permutation per element) so that simplicial
 * actions can refer to generators by index.
 */
class FiniteGroup {
public:
    static constexpr int kDefaultOrderCap = 5040;

    FiniteGroup() = default;

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverses_[a]; }
    int conj(int g, int x) const { return mul(mul(x, g), inv(x)); }  // x g x^-1

    int element_order(int g) const {
        int k = 1, x = g;
        while (x != 0) { x = mul(x, g); ++k; }
        return k;
    }

    int power(int g, long k) const {
        int n = element_order(g);
        long r = mod_long(k, n);
        int x = 0;
        for (long i = 0; i < r; ++i) x = mul(x, g);
        return x;
    }

    int exponent() const {
        long e = 1;
        for (int g = 0; g < n_; ++g) e = lcm_long(e, element_order(g));
        return static_cast<int>(e);
    }

    bool is_abelian() const {
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    bool has_permutation_provenance() const { return !generator_perms_.empty() || n_ == 1; }
    int point_count() const { return points_; }
    const std::vector<Perm>& generator_perms() const { return generator_perms_; }
    const std::vector<Perm>& element_perms() const { return element_perms_; }

    /// Indices of the provenance generators inside the group (empty for
    /// table-built groups).
    const std::vector<int>& generator_indices() const { return generator_indices_; }

    /// A small deterministic generating set: provenance generators when
    /// present, otherwise greedily the smallest elements outside the
    /// running closure.  Identity and duplicates are dropped.
    std::vector<int> generating_set() const {
        if (!generator_indices_.empty()) {
            std::vector<int> gens;
            for (int g : generator_indices_)
                if (g != 0 && std::find(gens.begin(), gens.end(), g) == gens.end())
                    gens.push_back(g);
            if (!gens.empty() || n_ == 1) return gens;
        }
        std::vector<int> gens;
        std::vector<char> closed(n_, 0);
        closed[0] = 1;
        int covered = 1;
        while (covered < n_) {
            int next = -1;
            for (int g = 1; g < n_; ++g)
                if (!closed[g]) { next = g; break; }
            gens.push_back(next);
            // grow closure
            std::vector<int> frontier{next};
            closed[next] = 1;
            ++covered;
            while (!frontier.empty()) {
                std::vector<int> fresh;
                for (int x : frontier)
                    for (int y = 0; y < n_; ++y)
                        if (closed[y]) {
                            for (int z : {mul(x, y), mul(y, x)})
                                if (!closed[z]) { closed[z] = 1; ++covered; fresh.push_back(z); }
                        }
                frontier = std::move(fresh);
            }
        }
        return gens;
    }

    /// BFS factorization over a generating set: every element x != 0 gets
    /// x = pred[x] * gens[genof[x]] with pred discovered earlier.
    struct Factorization {
        std::vector<int> gens;
        std::vector<int> pred;   // -1 for identity
        std::vector<int> genof;  // index into gens, -1 for identity
        std::vector<int> order;  // elements in BFS discovery order
    };

    Factorization bfs_factorization(const std::vector<int>& gens) const {
        Factorization f;
        f.gens = gens;
        f.pred.assign(n_, -1);
        f.genof.assign(n_, -1);
        std::vector<char> seen(n_, 0);
        seen[0] = 1;
        f.order.push_back(0);
        std::size_t head = 0;
        while (head < f.order.size()) {
            int x = f.order[head++];
            for (std::size_t si = 0; si < gens.size(); ++si) {
                int y = mul(x, gens[si]);
                if (!seen[y]) {
                    seen[y] = 1;
                    f.pred[y] = x;
                    f.genof[y] = static_cast<int>(si);
                    f.order.push_back(y);
                }
            }
        }
        if (f.order.size() != static_cast<std::size_t>(n_))
            throw validation_error("bfs_factorization: set does not generate the group");
        return f;
    }

    /// Derived subgroup [G,G] as a sorted element list.
    std::vector<int> derived_subgroup() const {
        std::vector<char> in(n_, 0);
        std::vector<int> frontier;
        in[0] = 1;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                int c = mul(mul(a, b), mul(inv(a), inv(b)));
                if (!in[c]) { in[c] = 1; frontier.push_back(c); }
            }
        while (!frontier.empty()) {
            std::vector<int> fresh;
            for (int x : frontier)
                for (int y = 0; y < n_; ++y)
                    if (in[y]) {
                        int z = mul(x, y);
                        if (!in[z]) { in[z] = 1; fresh.push_back(z); }
                    }
            frontier = std::move(fresh);
        }
        std::vector<int> out;
        for (int g = 0; g < n_; ++g)
            if (in[g]) out.push_back(g);
        return out;
    }

    /// Exponent of G/[G,G].
    int abelianization_exponent() const {
        std::vector<int> der = derived_subgroup();
        std::vector<char> in(n_, 0);
        for (int d : der) in[d] = 1;
        long e = 1;
        for (int g = 0; g < n_; ++g) {
            int x = g, k = 1;
            while (!in[x]) { x = mul(x, g); ++k; }
            e = lcm_long(e, k);
        }
        return static_cast<int>(e);
    }

    static FiniteGroup from_table(const std::vector<std::vector<int>>& rows);
    static FiniteGroup from_permutations(int points, const std::vector<Perm>& gens,
                                         int order_cap = kDefaultOrderCap);
    static FiniteGroup trivial() { return from_permutations(1, {}); }

private:
    int n_ = 0;
    std::vector<int> table_;     // n*n row-major
    std::vector<int> inverses_;
    int points_ = 0;
    std::vector<Perm> generator_perms_;
    std::vector<Perm> element_perms_;
    std::vector<int> generator_indices_;

    void finalize_and_check();
};

inline void FiniteGroup::finalize_and_check() {
    // Latin square + identity row/column.
    for (int g = 0; g < n_; ++g) {
        if (mul(0, g) != g || mul(g, 0) != g)
            throw validation_error("group axiom failed: element 0 is not an identity");
        std::vector<char> row(n_, 0), col(n_, 0);
        for (int h = 0; h < n_; ++h) {
            int r = mul(g, h), c = mul(h, g);
            if (r < 0 || r >= n_ || c < 0 || c >= n_)
                throw validation_error("group axiom failed: table entry out of range");
            if (row[r]++) throw validation_error("group axiom failed: table is not a Latin square (row)");
            if (col[c]++) throw validation_error("group axiom failed: table is not a Latin square (column)");
        }
    }
    inverses_.assign(n_, -1);
    for (int g = 0; g < n_; ++g)
        for (int h = 0; h < n_; ++h)
            if (mul(g, h) == 0) { inverses_[g] = h; break; }
    for (int g = 0; g < n_; ++g)
        if (inverses_[g] < 0 || mul(g, inverses_[g]) != 0 || mul(inverses_[g], g) != 0)
            throw validation_error("group axiom failed: missing two-sided inverse");
    // Associativity: full scan up to order 512, deterministic sample above.
    auto check = [&](int a, int b, int c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw validation_error("group axiom failed: associativity");
    };
    if (n_ <= 512) {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c) check(a, b, c);
    } else {
        SplitMix64 rng(0x9e3779b9u ^ static_cast<std::uint64_t>(n_));
        for (int i = 0; i < 200000; ++i)
            check(static_cast<int>(rng.below(n_)), static_cast<int>(rng.below(n_)),
                  static_cast<int>(rng.below(n_)));
    }
}

inline FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& rows) {
    FiniteGroup g;
    g.n_ = static_cast<int>(rows.size());
    if (g.n_ == 0) throw validation_error("group table is empty");
    g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
    for (int a = 0; a < g.n_; ++a) {
        if (static_cast<int>(rows[a].size()) != g.n_)
            throw validation_error("group table is not square");
        for (int b = 0; b < g.n_; ++b) g.table_[static_cast<std::size_t>(a) * g.n_ + b] = rows[a][b];
    }
    g.finalize_and_check();
    return g;
}

inline FiniteGroup FiniteGroup::from_permutations(int points, const std::vector<Perm>& gens,
                                                  int order_cap) {
    if (points < 1) throw validation_error("from_permutations: point count must be positive");
    for (const Perm& p : gens)
        if (!is_bijection(p, points))
            throw validation_error("from_permutations: generator is not a bijection of the points");

    // BFS closure; new elements of each level are sorted by image vector.
    std::map<Perm, int> index;
    std::vector<Perm> elems{perm_identity(points)};
    index[elems[0]] = 0;
    std::vector<Perm> level{elems[0]};
    while (!level.empty()) {
        std::set<Perm> fresh;
        for (const Perm& x : level)
            for (const Perm& s : gens) {
                Perm y = perm_compose(x, s);
                if (!index.count(y)) fresh.insert(y);
            }
        level.clear();
        for (const Perm& y : fresh) {
            index[y] = static_cast<int>(elems.size());
            elems.push_back(y);
            level.push_back(y);
            if (static_cast<int>(elems.size()) > order_cap)
                throw validation_error("group closure exceeds order cap " + std::to_string(order_cap));
        }
    }

    FiniteGroup g;
    g.n_ = static_cast<int>(elems.size());
    g.points_ = points;
    g.element_perms_ = elems;
    g.generator_perms_ = gens;
    g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
    for (int a = 0; a < g.n_; ++a)
        for (int b = 0; b < g.n_; ++b)
            g.table_[static_cast<std::size_t>(a) * g.n_ + b] = index.at(perm_compose(elems[a], elems[b]));
    for (const Perm& s : gens) g.generator_indices_.push_back(index.at(s));
    g.finalize_and_check();
    return g;
}

/// A subgroup re-indexed as a standalone group (identity stays at 0, the
/// other elements keep their sorted order).
struct SubgroupGroup {
    FiniteGroup group;
    std::vector<int> to_parent;            // new index -> parent element
    std::vector<int> from_parent;          // parent element -> new index, -1 outside
};

inline SubgroupGroup subgroup_as_group(const FiniteGroup& G,
                                       const std::vector<int>& sorted_elements) {
    SubgroupGroup out;
    out.to_parent = sorted_elements;
    out.from_parent.assign(G.order(), -1);
    for (std::size_t i = 0; i < sorted_elements.size(); ++i)
        out.from_parent[sorted_elements[i]] = static_cast<int>(i);
    if (sorted_elements.empty() || sorted_elements[0] != 0)
        throw validation_error("subgroup_as_group: missing identity");
    int k = static_cast<int>(sorted_elements.size());
    std::vector<std::vector<int>> rows(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            int p = G.mul(sorted_elements[a], sorted_elements[b]);
            int idx = out.from_parent[p];
            if (idx < 0) throw validation_error("subgroup_as_group: set not closed under the table");
            rows[a][b] = idx;
        }
    out.group = FiniteGroup::from_table(rows);
    return out;
}

/// Partition of the elements into conjugacy classes.  Representatives are
/// minimal element indices; the identity's class is always class 0.
struct ConjugacyClassSet {
    std::vector<int> class_of;          // element -> class id
    std::vector<int> representatives;   // class id -> minimal element
    std::vector<int> sizes;
    std::vector<std::vector<int>> members;

    int count() const { return static_cast<int>(representatives.size()); }
};

inline ConjugacyClassSet conjugacy_classes(const FiniteGroup& G) {
    int n = G.order();
    ConjugacyClassSet cc;
    cc.class_of.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        if (cc.class_of[g] >= 0) continue;
        int id = cc.count();
        cc.representatives.push_back(g);
        cc.members.emplace_back();
        for (int x = 0; x < n; ++x) {
            int c = G.conj(g, x);
            if (cc.class_of[c] < 0) {
                cc.class_of[c] = id;
                cc.members[id].push_back(c);
            }
        }
        std::sort(cc.members[id].begin(), cc.members[id].end());
        cc.sizes.push_back(static_cast<int>(cc.members[id].size()));
    }
    return cc;
}

enum class SubgroupKind { Centralizer, Normalizer, Cyclic, Generic };

/// Subgroup as a sorted element list, closed under product and inverse.
struct Subgroup {
    std::vector<int> elements;
    SubgroupKind kind = SubgroupKind::Generic;

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int g) const {
        return std::binary_search(elements.begin(), elements.end(), g);
    }
};

inline void check_subgroup(const FiniteGroup& G, const Subgroup& H) {
    if (H.elements.empty() || H.elements[0] != 0)
        throw validation_error("subgroup must contain the identity");
    for (int a : H.elements) {
        if (!H.contains(G.inv(a))) throw validation_error("subgroup not closed under inverses");
        for (int b : H.elements)
            if (!H.contains(G.mul(a, b))) throw validation_error("subgroup not closed under the table");
    }
}

inline Subgroup whole_group(const FiniteGroup& G) {
    Subgroup s;
    s.elements.resize(G.order());
    for (int g = 0; g < G.order(); ++g) s.elements[g] = g;
    return s;
}

inline Subgroup trivial_subgroup() {
    Subgroup s;
    s.elements = {0};
    return s;
}

inline Subgroup centralizer(const FiniteGroup& G, int g) {
    Subgroup s;
    s.kind = SubgroupKind::Centralizer;
    for (int x = 0; x < G.order(); ++x)
        if (G.mul(x, g) == G.mul(g, x)) s.elements.push_back(x);
    return s;
}

inline Subgroup centralizer_of_set(const FiniteGroup& G, const std::vector<int>& set) {
    Subgroup s;
    s.kind = SubgroupKind::Centralizer;
    for (int x = 0; x < G.order(); ++x) {
        bool ok = true;
        for (int g : set)
            if (G.mul(x, g) != G.mul(g, x)) { ok = false; break; }
        if (ok) s.elements.push_back(x);
    }
    return s;
}

inline Subgroup normalizer(const FiniteGroup& G, const Subgroup& S) {
    Subgroup out;
    out.kind = SubgroupKind::Normalizer;
    for (int x = 0; x < G.order(); ++x) {
        std::vector<int> image;
        image.reserve(S.elements.size());
        for (int h : S.elements) image.push_back(G.conj(h, x));
        std::sort(image.begin(), image.end());
        if (image == S.elements) out.elements.push_back(x);
    }
    return out;
}

inline Subgroup cyclic_subgroup(const FiniteGroup& G, int g) {
    Subgroup s;
    s.kind = SubgroupKind::Cyclic;
    int x = 0;
    do {
        s.elements.push_back(x);
        x = G.mul(x, g);
    } while (x != 0);
    std::sort(s.elements.begin(), s.elements.end());
    return s;
}

/**
 * One conjugacy class of cyclic subgroups: the representative C generated
 * by the minimal element index, its normalizer and centralizer, and the
 * Weyl group W = N/Z acting on C.  For each W-element we keep a coset
 * representative, the induced permutation of C's element list, and the
 * exponent k with  n g n^-1 = g^k  on the chosen generator.
 */
struct CyclicClass {
    int generator = 0;  // minimal generator of the representative C
    Subgroup C;
    Subgroup N;
    Subgroup Z;
    std::vector<int> weyl_reps;               // coset reps of Z in N
    std::vector<std::vector<int>> weyl_perms; // permutation of C.elements per rep
    std::vector<int> weyl_exponents;          // k per rep, mod |C|
};

inline std::vector<CyclicClass> cyclic_subgroup_classes(const FiniteGroup& G) {
    int n = G.order();
    std::map<std::vector<int>, int> seen;         // subgroup set -> orbit id
    std::vector<std::vector<std::vector<int>>> orbits;
    for (int g = 0; g < n; ++g) {
        Subgroup c = cyclic_subgroup(G, g);
        if (seen.count(c.elements)) continue;
        int id = static_cast<int>(orbits.size());
        orbits.emplace_back();
        for (int x = 0; x < n; ++x) {
            std::vector<int> image;
            image.reserve(c.elements.size());
            for (int h : c.elements) image.push_back(G.conj(h, x));
            std::sort(image.begin(), image.end());
            if (!seen.count(image)) {
                seen[image] = id;
                orbits[id].push_back(image);
            }
        }
    }
    std::vector<CyclicClass> out(orbits.size());
    // Representative: the subgroup generated by the minimal generator
    // across the whole orbit.
    for (int g = 0; g < n; ++g) {
        Subgroup c = cyclic_subgroup(G, g);
        int id = seen.at(c.elements);
        CyclicClass& cls = out[id];
        if (cls.C.elements.empty()) {
            cls.generator = g;  // first (minimal) generator found for this orbit
            cls.C = c;
        }
    }
    for (CyclicClass& cls : out) {
        cls.N = normalizer(G, cls.C);
        cls.Z = centralizer_of_set(G, cls.C.elements);
        // coset reps of Z in N, minimal representative first
        std::vector<char> used(n, 0);
        for (int x : cls.N.elements) {
            if (used[x]) continue;
            cls.weyl_reps.push_back(x);
            for (int z : cls.Z.elements) used[G.mul(x, z)] = 1;
        }
        int order_c = cls.C.order();
        for (int w : cls.weyl_reps) {
            std::vector<int> perm(order_c);
            for (int i = 0; i < order_c; ++i) {
                int image = G.conj(cls.C.elements[i], w);
                auto it = std::lower_bound(cls.C.elements.begin(), cls.C.elements.end(), image);
                perm[i] = static_cast<int>(it - cls.C.elements.begin());
            }
            cls.weyl_perms.push_back(perm);
            int image = G.conj(cls.generator, w);
            int k = 0, x = 0;
            do {
                x = G.mul(x, cls.generator);
                ++k;
            } while (x != image);
            cls.weyl_exponents.push_back(k);
        }
    }
    return out;
}

}  // namespace orbk
