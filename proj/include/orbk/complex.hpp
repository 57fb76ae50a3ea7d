#pragma once

#include "orbk/group.hpp"
#include "orbk/matrix.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace orbk {

/**
 * Finite abstract simplicial complex.  Simplices are stored per dimension
 * as lexicographically sorted vertex tuples, so ids are deterministic.
 */
struct SimplicialComplex {
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<int>>> simplices;  // dim -> sorted tuples
    std::vector<std::map<std::vector<int>, int>> index;    // dim -> tuple -> id

    int vertex_count() const { return static_cast<int>(labels.size()); }
    int top_dim() const { return static_cast<int>(simplices.size()) - 1; }
    int count(int d) const {
        return (d >= 0 && d <= top_dim()) ? static_cast<int>(simplices[d].size()) : 0;
    }
    long euler_characteristic() const {
        long chi = 0;
        for (int d = 0; d <= top_dim(); ++d) chi += (d % 2 ? -1L : 1L) * count(d);
        return chi;
    }
    int id_of(const std::vector<int>& tuple) const {
        int d = static_cast<int>(tuple.size()) - 1;
        auto it = index[d].find(tuple);
        if (it == index[d].end()) throw internal_error("simplex lookup failed");
        return it->second;
    }

    static SimplicialComplex from_maximal(std::vector<std::string> labels,
                                          const std::vector<std::vector<int>>& maximal) {
        SimplicialComplex K;
        K.labels = std::move(labels);
        int v = K.vertex_count();
        std::vector<std::set<std::vector<int>>> by_dim;
        for (const std::vector<int>& face : maximal) {
            std::vector<int> f = face;
            std::sort(f.begin(), f.end());
            if (f.empty()) throw validation_error("empty simplex in complex input");
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw validation_error("simplex with a repeated vertex");
            for (int x : f)
                if (x < 0 || x >= v) throw validation_error("simplex vertex index out of range");
            // downward closure over nonempty subsets
            int k = static_cast<int>(f.size());
            for (unsigned mask = 1; mask < (1u << k); ++mask) {
                std::vector<int> sub;
                for (int i = 0; i < k; ++i)
                    if (mask & (1u << i)) sub.push_back(f[i]);
                int d = static_cast<int>(sub.size()) - 1;
                if (d >= static_cast<int>(by_dim.size())) by_dim.resize(d + 1);
                by_dim[d].insert(std::move(sub));
            }
        }
        K.simplices.resize(by_dim.size());
        K.index.resize(by_dim.size());
        for (std::size_t d = 0; d < by_dim.size(); ++d)
            for (const std::vector<int>& s : by_dim[d]) {
                K.index[d][s] = static_cast<int>(K.simplices[d].size());
                K.simplices[d].push_back(s);
            }
        return K;
    }

    /// Boundary C_d -> C_{d-1} with the standard alternating signs.
    MatQ boundary_matrix(int d) const {
        if (d < 1 || d > top_dim()) return MatQ(std::max(0, count(d - 1)), std::max(0, count(d)));
        MatQ b(count(d - 1), count(d));
        for (int j = 0; j < count(d); ++j) {
            const std::vector<int>& s = simplices[d][j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<int> face;
                for (std::size_t k = 0; k < s.size(); ++k)
                    if (k != i) face.push_back(s[k]);
                b.at(index[d - 1].at(face), j) += (i % 2 ? Rat(-1) : Rat(1));
            }
        }
        return b;
    }

    std::vector<long> betti() const {
        int top = top_dim();
        if (top < 0) return {};
        std::vector<int> ranks(top + 2, 0);
        for (int d = 1; d <= top; ++d) ranks[d] = rank(boundary_matrix(d));
        std::vector<long> b(top + 1, 0);
        for (int d = 0; d <= top; ++d) b[d] = count(d) - ranks[d] - ranks[d + 1];
        return b;
    }
};

/// Sign of a simplicial map on an (ordered) simplex: the permutation sign
/// of sorting the image tuple.  The image must have distinct vertices.
inline int simplex_map_sign(const std::vector<int>& image) {
    int sign = 1;
    std::vector<int> w = image;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (w[i] == w[j]) throw internal_error("degenerate simplex image");
            if (w[i] > w[j]) {
                std::swap(w[i], w[j]);
                sign = -sign;
            }
        }
    return sign;
}

/**
 * A finite group acting simplicially.  The action is stored as one vertex
 * permutation per group element; generators are validated to map
 * simplices to simplices and the assignment to be a homomorphism.
 */
struct GComplex {
    SimplicialComplex K;
    const FiniteGroup* G = nullptr;
    std::vector<Perm> vperm;  // per group element

    int apply_simplex(int element, int dim, int id, int* sign = nullptr) const {
        std::vector<int> image;
        image.reserve(dim + 1);
        for (int v : K.simplices[dim][id]) image.push_back(vperm[element][v]);
        if (sign) *sign = simplex_map_sign(image);
        std::sort(image.begin(), image.end());
        return K.id_of(image);
    }
};

inline GComplex make_g_complex(const FiniteGroup& G, SimplicialComplex K,
                               const std::vector<Perm>& generator_actions) {
    if (!G.has_permutation_provenance() && G.order() > 1)
        throw validation_error("complex actions require a group given by generators");
    if (generator_actions.size() != G.generator_perms().size())
        throw validation_error("complex action must list one vertex permutation per group generator");
    int v = K.vertex_count();
    for (const Perm& p : generator_actions)
        if (!is_bijection(p, v))
            throw validation_error("complex action row is not a vertex permutation");

    GComplex X;
    X.G = &G;
    X.vperm.assign(G.order(), {});
    X.vperm[0] = perm_identity(v);
    if (G.order() > 1) {
        // dedupe generator indices exactly like generating_set() does
        std::vector<int> gens;
        std::vector<Perm> gen_act;
        for (std::size_t i = 0; i < G.generator_indices().size(); ++i) {
            int g = G.generator_indices()[i];
            if (g != 0 && std::find(gens.begin(), gens.end(), g) == gens.end()) {
                gens.push_back(g);
                gen_act.push_back(generator_actions[i]);
            } else if (g != 0) {
                auto it = std::find(gens.begin(), gens.end(), g);
                if (gen_act[it - gens.begin()] != generator_actions[i])
                    throw validation_error("conflicting actions for a repeated generator");
            } else if (generator_actions[i] != perm_identity(v)) {
                throw validation_error("identity generator must act trivially");
            }
        }
        FiniteGroup::Factorization f = G.bfs_factorization(gens);
        for (int x : f.order) {
            if (x == 0) continue;
            X.vperm[x] = perm_compose(X.vperm[f.pred[x]], gen_act[f.genof[x]]);
        }
        // homomorphism check: full below 128, sampled above
        auto check_pair = [&](int a, int b) {
            if (perm_compose(X.vperm[a], X.vperm[b]) != X.vperm[G.mul(a, b)])
                throw validation_error("complex action is not a group homomorphism");
        };
        if (G.order() <= 128) {
            for (int a = 0; a < G.order(); ++a)
                for (int b = 0; b < G.order(); ++b) check_pair(a, b);
        } else {
            SplitMix64 rng(0xac7100ULL ^ static_cast<std::uint64_t>(G.order()));
            for (int i = 0; i < 20000; ++i)
                check_pair(static_cast<int>(rng.below(G.order())),
                           static_cast<int>(rng.below(G.order())));
        }
    }
    X.K = std::move(K);
    // generators map simplices to simplices; products then automatically do
    for (int d = 0; d <= X.K.top_dim(); ++d)
        for (int id = 0; id < X.K.count(d); ++id)
            for (int gi : G.generator_indices()) {
                std::vector<int> image;
                for (int vtx : X.K.simplices[d][id]) image.push_back(X.vperm[gi][vtx]);
                std::sort(image.begin(), image.end());
                if (std::adjacent_find(image.begin(), image.end()) != image.end() ||
                    !X.K.index[d].count(image))
                    throw validation_error("action does not map simplices to simplices");
            }
    return X;
}

/// Barycentric subdivision with the induced action.  New vertices are the
/// old simplices (ordered by dimension, then id); new top simplices are
/// the flags of the old ones.
inline GComplex barycentric_subdivide(const GComplex& X) {
    const SimplicialComplex& K = X.K;
    std::vector<std::pair<int, int>> verts;  // (dim, id)
    std::vector<std::vector<int>> vert_id_by_dim(K.top_dim() + 1);
    std::vector<std::string> labels;
    for (int d = 0; d <= K.top_dim(); ++d) {
        vert_id_by_dim[d].resize(K.count(d));
        for (int i = 0; i < K.count(d); ++i) {
            vert_id_by_dim[d][i] = static_cast<int>(verts.size());
            verts.emplace_back(d, i);
            std::string lab = "b(";
            const std::vector<int>& s = K.simplices[d][i];
            for (std::size_t j = 0; j < s.size(); ++j)
                lab += (j ? " " : "") + K.labels[s[j]];
            labels.push_back(lab + ")");
        }
    }
    // flags of top-dimensional (maximal) simplices; the closure fills in
    // flags of the lower faces
    std::vector<std::vector<int>> maximal;
    std::vector<char> is_maximal_by_dim(K.top_dim() + 1, 0);
    for (int d = 0; d <= K.top_dim(); ++d)
        for (int i = 0; i < K.count(d); ++i) {
            // a simplex is maximal if it is a face of nothing bigger
            bool has_coface = false;
            if (d + 1 <= K.top_dim())
                for (const std::vector<int>& t : K.simplices[d + 1]) {
                    if (std::includes(t.begin(), t.end(), K.simplices[d][i].begin(),
                                      K.simplices[d][i].end())) {
                        has_coface = true;
                        break;
                    }
                }
            if (has_coface) continue;
            // enumerate the flags inside this simplex
            std::vector<int> order(K.simplices[d][i]);
            std::sort(order.begin(), order.end());
            do {
                std::vector<int> flag;
                std::vector<int> prefix;
                for (int v : order) {
                    prefix.push_back(v);
                    std::vector<int> sorted = prefix;
                    std::sort(sorted.begin(), sorted.end());
                    flag.push_back(vert_id_by_dim[sorted.size() - 1][K.id_of(sorted)]);
                }
                maximal.push_back(flag);
            } while (std::next_permutation(order.begin(), order.end()));
        }
    SimplicialComplex sd = SimplicialComplex::from_maximal(std::move(labels), maximal);

    GComplex out;
    out.G = X.G;
    out.K = std::move(sd);
    out.vperm.assign(X.G->order(), Perm(verts.size()));
    for (int g = 0; g < X.G->order(); ++g)
        for (std::size_t vi = 0; vi < verts.size(); ++vi) {
            auto [d, id] = verts[vi];
            out.vperm[g][vi] = vert_id_by_dim[d][X.apply_simplex(g, d, id)];
        }
    return out;
}

/**
 * Regularity of the action of a set of elements (a subgroup): no simplex
 * contains two distinct vertices of one orbit, and whenever vertexwise
 * transporters exist between two simplices some single element moves one
 * onto the other.  This is what simplicial quotients need.
 */
inline bool is_regular_for(const GComplex& X, const std::vector<int>& subgroup) {
    const SimplicialComplex& K = X.K;
    int v = K.vertex_count();
    // vertex orbits under the subgroup
    std::vector<int> orbit(v, -1);
    for (int s = 0; s < v; ++s) {
        if (orbit[s] >= 0) continue;
        for (int h : subgroup) orbit[X.vperm[h][s]] = s;
    }
    for (int d = 1; d <= K.top_dim(); ++d)
        for (const std::vector<int>& s : K.simplices[d])
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j)
                    if (orbit[s[i]] == orbit[s[j]]) return false;
    // transporter sets per vertex pair, as element lists
    std::vector<std::vector<std::vector<int>>> trans(v, std::vector<std::vector<int>>(v));
    for (int h : subgroup)
        for (int s = 0; s < v; ++s) trans[s][X.vperm[h][s]].push_back(h);
    for (int d = 1; d <= K.top_dim(); ++d) {
        int cnt = K.count(d);
        for (int a = 0; a < cnt; ++a)
            for (int b = 0; b < cnt; ++b) {
                const std::vector<int>& s = K.simplices[d][a];
                std::vector<int> t = K.simplices[d][b];
                std::sort(t.begin(), t.end());
                do {
                    bool each = true;
                    for (std::size_t i = 0; i < s.size() && each; ++i)
                        each = !trans[s[i]][t[i]].empty();
                    if (!each) continue;
                    bool common = false;
                    for (int h : trans[s[0]][t[0]]) {
                        bool ok = true;
                        for (std::size_t i = 1; i < s.size() && ok; ++i)
                            ok = (X.vperm[h][s[i]] == t[i]);
                        if (ok) { common = true; break; }
                    }
                    if (!common) return false;
                } while (std::next_permutation(t.begin(), t.end()));
            }
    }
    return true;
}

/// Regularity for the whole group and for every centralizer and cyclic
/// centralizer that the sector machinery will quotient by.
inline bool is_regular_all(const GComplex& X) {
    const FiniteGroup& G = *X.G;
    if (!is_regular_for(X, whole_group(G).elements)) return false;
    ConjugacyClassSet cc = conjugacy_classes(G);
    for (int k = 0; k < cc.count(); ++k)
        if (!is_regular_for(X, centralizer(G, cc.representatives[k]).elements)) return false;
    for (const CyclicClass& c : cyclic_subgroup_classes(G))
        if (!is_regular_for(X, c.Z.elements)) return false;
    return true;
}

struct RegularizeResult {
    GComplex complex;
    int rounds = 0;
};

/// Barycentric subdivision until the action is regular; the second derived
/// complex of any simplicial action is regular, so more than two rounds
/// signals a bug.
inline RegularizeResult regularize(GComplex X, int max_rounds = 2) {
    RegularizeResult out{std::move(X), 0};
    while (!is_regular_all(out.complex)) {
        if (out.rounds >= max_rounds)
            throw internal_error("complex is not regular after " + std::to_string(max_rounds) +
                                 " barycentric subdivisions");
        out.complex = barycentric_subdivide(out.complex);
        ++out.rounds;
    }
    return out;
}

/// Subcomplex of simplices fixed pointwise by every listed element.
struct Subcomplex {
    SimplicialComplex K;
    std::vector<int> vmap;       // new vertex -> parent vertex
    std::vector<int> from_parent;  // parent vertex -> new vertex or -1
};

inline Subcomplex fixed_subcomplex(const GComplex& X, const std::vector<int>& elements) {
    int v = X.K.vertex_count();
    std::vector<char> fixed(v, 1);
    for (int e : elements)
        for (int s = 0; s < v; ++s)
            if (X.vperm[e][s] != s) fixed[s] = 0;
    Subcomplex out;
    out.from_parent.assign(v, -1);
    std::vector<std::string> labels;
    for (int s = 0; s < v; ++s)
        if (fixed[s]) {
            out.from_parent[s] = static_cast<int>(out.vmap.size());
            out.vmap.push_back(s);
            labels.push_back(X.K.labels[s]);
        }
    std::vector<std::vector<int>> faces;
    for (int d = 0; d <= X.K.top_dim(); ++d)
        for (const std::vector<int>& s : X.K.simplices[d]) {
            bool keep = true;
            for (int x : s) keep &= (fixed[x] == 1);
            if (!keep) continue;
            std::vector<int> mapped;
            for (int x : s) mapped.push_back(out.from_parent[x]);
            faces.push_back(std::move(mapped));
        }
    out.K = SimplicialComplex::from_maximal(std::move(labels), faces);
    return out;
}

/// Vertex permutation induced on a subcomplex by a parent element that
/// preserves it.
inline Perm induced_perm(const GComplex& X, const Subcomplex& sub, int element) {
    Perm p(sub.vmap.size());
    for (std::size_t i = 0; i < sub.vmap.size(); ++i) {
        int image = X.vperm[element][sub.vmap[i]];
        int ni = sub.from_parent[image];
        if (ni < 0) throw internal_error("element does not preserve the subcomplex");
        p[i] = ni;
    }
    return p;
}

/// Quotient of a complex by a list of commuting-with-nothing... by the
/// permutation action of a subgroup given elementwise.  Requires the
/// regularity invariant; degeneracies are hard errors.
struct QuotientComplex {
    SimplicialComplex K;
    std::vector<int> vertex_orbit;                    // parent vertex -> quotient vertex
    std::vector<std::vector<std::vector<int>>> reps;  // per dim: quotient id -> parent tuple
};

inline QuotientComplex quotient_complex(const SimplicialComplex& K,
                                        const std::vector<Perm>& elements) {
    int v = K.vertex_count();
    QuotientComplex out;
    out.vertex_orbit.assign(v, -1);
    std::vector<std::string> labels;
    for (int s = 0; s < v; ++s) {
        if (out.vertex_orbit[s] >= 0) continue;
        int id = static_cast<int>(labels.size());
        labels.push_back(K.labels[s] + "~");
        // closure of s under the listed permutations
        std::vector<int> stack{s};
        out.vertex_orbit[s] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const Perm& p : elements)
                if (out.vertex_orbit[p[x]] < 0) {
                    out.vertex_orbit[p[x]] = id;
                    stack.push_back(p[x]);
                }
        }
    }
    std::vector<std::vector<int>> faces;
    for (int d = 0; d <= K.top_dim(); ++d)
        for (const std::vector<int>& s : K.simplices[d]) {
            std::vector<int> image;
            for (int x : s) image.push_back(out.vertex_orbit[x]);
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end())
                throw internal_error("degenerate quotient simplex: the action is not regular");
            faces.push_back(std::move(image));
        }
    out.K = SimplicialComplex::from_maximal(std::move(labels), faces);
    // representatives: lexicographically smallest parent tuple per quotient cell
    out.reps.assign(out.K.top_dim() + 1, {});
    for (int d = 0; d <= out.K.top_dim(); ++d)
        out.reps[d].assign(out.K.count(d), {});
    for (int d = 0; d <= K.top_dim(); ++d)
        for (const std::vector<int>& s : K.simplices[d]) {
            std::vector<int> image;
            for (int x : s) image.push_back(out.vertex_orbit[x]);
            std::sort(image.begin(), image.end());
            std::vector<int>& rep = out.reps[d][out.K.id_of(image)];
            if (rep.empty() || s < rep) rep = s;
        }
    return out;
}

/// Pushforward chain map of a vertex permutation in degree d.
template <class F>
Mat<F> chain_map_matrix(const SimplicialComplex& K, const Perm& p, int d) {
    Mat<F> m(K.count(d), K.count(d));
    for (int i = 0; i < K.count(d); ++i) {
        std::vector<int> image;
        for (int x : K.simplices[d][i]) image.push_back(p[x]);
        int sign = simplex_map_sign(image);
        std::sort(image.begin(), image.end());
        m.at(K.id_of(image), i) = F(sign);
    }
    return m;
}

/// Betti numbers of the subcomplex im(P) for projectors commuting with
/// the boundary; P is checked to be idempotent and chain-level.
template <class F>
std::vector<long> projected_betti(const SimplicialComplex& K, const std::vector<Mat<F>>& P) {
    int top = K.top_dim();
    if (top < 0) return {};
    std::vector<Mat<F>> W(top + 1);
    for (int d = 0; d <= top; ++d) {
        if ((P[d] * P[d] - P[d]).is_zero() == false)
            throw internal_error("averaging projector is not idempotent");
        W[d] = image_basis(P[d]);
    }
    std::vector<long> b(top + 1, 0);
    std::vector<int> rank_in(top + 2, 0);
    for (int d = 1; d <= top; ++d) {
        Mat<F> bd = [&] {
            Mat<F> m(K.count(d - 1), K.count(d));
            MatQ bq = K.boundary_matrix(d);
            for (int i = 0; i < bq.rows(); ++i)
                for (int j = 0; j < bq.cols(); ++j)
                    if (!bq.at(i, j).is_zero()) m.at(i, j) = F(bq.at(i, j) > 0 ? 1 : -1);
            return m;
        }();
        if (!(bd * P[d] - P[d - 1] * bd).is_zero())
            throw internal_error("averaging projector does not commute with the boundary");
        rank_in[d] = rank(bd * W[d]);
    }
    for (int d = 0; d <= top; ++d) b[d] = W[d].cols() - rank_in[d] - rank_in[d + 1];
    return b;
}

}  // namespace orbk
