#pragma once

#include "orbk/bredon.hpp"
#include "orbk/io.hpp"
#include "orbk/sector_series.hpp"
#include "orbk/sectors.hpp"
#include "orbk/trring.hpp"

#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

namespace orbk {

struct CheckRow {
    std::string fixture;
    std::string check;
    std::string lhs;
    std::string rhs;
    bool ok = false;
    std::string ref;  // the identity under test
};

struct VerifyResult {
    std::string suite;
    std::vector<CheckRow> rows;
    bool all_ok() const {
        for (const CheckRow& r : rows)
            if (!r.ok) return false;
        return true;
    }
};

namespace detail {

inline std::string krank_str(const KRank& k) {
    return "(" + std::to_string(k.k0) + "," + std::to_string(k.k1) + ")";
}

inline std::string ranks_str(const std::vector<long>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

struct FixtureChecks {
    std::string fixture;
    std::vector<CheckRow> rows;

    void eq(const std::string& check, const std::string& lhs, const std::string& rhs,
            const std::string& ref) {
        rows.push_back({fixture, check, lhs, rhs, lhs == rhs, ref});
    }
    void note(const std::string& check, const std::string& lhs, const std::string& rhs,
              const std::string& ref) {
        rows.push_back({fixture, check, lhs, rhs, true, ref});
    }
};

inline std::vector<CheckRow> geometric_fixture_checks(const std::string& name,
                                                      const std::string& fixtures_dir,
                                                      const std::string& group_file,
                                                      const std::string& complex_file,
                                                      bool v4_total_identity) {
    FixtureChecks fc{name, {}};
    json gj = parse_json(read_file(fixtures_dir + "/" + group_file), group_file);
    FiniteGroup G = group_from_json(gj);
    json cj = parse_json(read_file(fixtures_dir + "/" + complex_file), complex_file);
    GComplex X0 = complex_from_json(cj, G);
    RegularizeResult reg = regularize(std::move(X0));
    const GComplex& X = reg.complex;

    SectorDecomposition sd = sector_decomposition(X);
    CyclicDecomposition cd = cyclic_decomposition(X);
    long chi_sectors = 0;
    for (const SectorEntry& e : sd.entries) chi_sectors += e.euler;

    fc.eq("cyclic total = element-indexed total", std::to_string(cd.total),
          std::to_string(sd.kranks.k0 + sd.kranks.k1), "cyclic vs element decomposition");
    Cocycle zero = zero_cocycle(G, 2);
    fc.eq("chi_orb cells = chi(X u Sigma X)", std::to_string(chi_orb_cells(X, zero)),
          std::to_string(chi_sectors), "Euler identity over the sectors");

    BredonResult bc = bredon_constant_coefficients(X);
    std::vector<Perm> all;
    for (int g = 0; g < G.order(); ++g) all.push_back(X.vperm[g]);
    std::vector<long> quotient_betti = quotient_complex(X.K, all).K.betti();
    std::vector<long> qb = quotient_betti;
    qb.resize(bc.ranks.size(), 0);
    fc.eq("constant-coefficient Bredon = H*(X/G)", ranks_str(bc.ranks), ranks_str(qb),
          "rational equivariant-to-quotient comparison");

    // the chain-level averaging projector computes the same Betti numbers
    // as the simplicial quotient, degree by degree
    {
        int top = X.K.top_dim();
        std::vector<Mat<Rat>> P(top + 1);
        for (int d = 0; d <= top; ++d) {
            Mat<Rat> acc(X.K.count(d), X.K.count(d));
            for (const Perm& p : all) acc = acc + chain_map_matrix<Rat>(X.K, p, d);
            P[d] = acc.scaled(Rat(1, G.order()));
        }
        std::vector<long> inv_betti = projected_betti(X.K, P);
        while (inv_betti.size() > quotient_betti.size() && inv_betti.back() == 0)
            inv_betti.pop_back();
        while (quotient_betti.size() > inv_betti.size() && quotient_betti.back() == 0)
            quotient_betti.pop_back();
        fc.eq("invariant-subspace route = quotient homology", ranks_str(inv_betti),
              ranks_str(quotient_betti), "averaging projector cross-check");
    }

    CohomologyClassSet h2 = h2_group(G, 2);
    long chi_total = 0;
    for (long c = 0; c < h2.class_count(); ++c) {
        const Cocycle& rep = h2.class_reps[c];
        KRank tw = twisted_k_ranks(X, rep);
        BredonResult br = bredon_cohomology(X, rep);
        std::string tag = " [class " + std::to_string(c) + "]";
        fc.eq("folded Bredon = twisted ranks" + tag, krank_str(br.folded), krank_str(tw),
              "rational collapse of the twisted spectral sequence");
        fc.eq("chi_orb cells = k0 - k1" + tag, std::to_string(chi_orb_cells(X, rep)),
              std::to_string(tw.chi()), "cell formula vs decomposition");
        if (c == 0)
            fc.eq("trivial twist = sector decomposition", krank_str(tw), krank_str(sd.kranks),
                  "alpha = 0 degeneration");
        chi_total += tw.chi();
    }
    if (v4_total_identity) {
        long chi_quot = sd.entries[0].euler;
        long chi_x = X.K.euler_characteristic();
        fc.eq("chi(TK) = 6 chi(X/G) - chi(X)", std::to_string(chi_total),
              std::to_string(6 * chi_quot - chi_x), "V4 total twisted Euler identity");
    }
    return fc.rows;
}

inline std::vector<CheckRow> point_fixture_checks(const std::string& name,
                                                  const std::string& fixtures_dir,
                                                  const std::string& group_file,
                                                  const std::string& complex_file,
                                                  bool v4_total_identity) {
    FixtureChecks fc{name, {}};
    FiniteGroup G = group_from_json(parse_json(read_file(fixtures_dir + "/" + group_file), group_file));
    GComplex X = complex_from_json(parse_json(read_file(fixtures_dir + "/" + complex_file), complex_file), G);
    CohomologyClassSet h2 = h2_group(G, 2);
    long chi_total = 0;
    for (long c = 0; c < h2.class_count(); ++c) {
        const Cocycle& rep = h2.class_reps[c];
        KRank tw = twisted_k_ranks(X, rep);
        long rank = rank_r_alpha(G, rep);
        std::string tag = " [class " + std::to_string(c) + "]";
        fc.eq("point ranks = rank R_alpha" + tag, krank_str(tw),
              krank_str(KRank{rank, 0}), "K of a point is the twisted representation ring");
        BredonResult br = bredon_cohomology(X, rep);
        fc.eq("point Bredon = rank in degree 0" + tag, ranks_str(br.ranks),
              ranks_str({rank}), "one orbit cell");
        chi_total += tw.chi();
    }
    if (v4_total_identity)
        fc.eq("chi(TK) = 6 chi(pt/G) - chi(pt)", std::to_string(chi_total), std::to_string(5),
              "V4 total twisted Euler identity on the point");
    return fc.rows;
}

inline std::vector<CheckRow> h2_fixture_checks(const std::string& name,
                                               const std::string& fixtures_dir,
                                               const std::string& group_file, long modulus,
                                               const std::string& expect_factors,
                                               bool check_rank_agreement) {
    FixtureChecks fc{name, {}};
    FiniteGroup G = group_from_json(parse_json(read_file(fixtures_dir + "/" + group_file), group_file));
    CohomologyClassSet h2 = h2_group(G, modulus);
    std::string factors = "[";
    for (std::size_t i = 0; i < h2.invariant_factors.size(); ++i)
        factors += (i ? "," : "") + std::to_string(h2.invariant_factors[i]);
    factors += "]";
    fc.eq("H2 invariant factors", factors, expect_factors, "second cohomology structure");
    if (check_rank_agreement && h2.class_count() > 1) {
        const Cocycle& rep = h2.class_reps[1];
        int scan = static_cast<int>(alpha_regular_classes(rep).size());
        TwistedCharacterTable tw = twisted_character_table(G, rep);
        fc.eq("regular-class scan = extension table rank", std::to_string(scan),
              std::to_string(tw.rank()), "two computations of rank R_alpha");
    }
    return fc.rows;
}

inline std::vector<CheckRow> trring_v4_checks(const std::string& fixtures_dir) {
    FixtureChecks fc{"trring-v4", {}};
    FiniteGroup G = group_from_json(parse_json(read_file(fixtures_dir + "/v4.group.json"), "v4"));
    TRRing R = tr_ring(G, 2);
    fc.eq("total rank", std::to_string(R.total_rank()), "5", "TR(V4) has total rank five");
    bool relations = R.class_count() == 2 && R.tables[1].rank() == 1 &&
                     R.products[1][1][0][0] == std::vector<long>{1, 1, 1, 1};
    for (int i = 0; relations && i < R.tables[0].rank(); ++i)
        relations = (R.products[0][1][i][0] == std::vector<long>{1});
    fc.eq("presentation relations", relations ? "mu^2=1+x+y+xy; x*mu=mu" : "mismatch",
          "mu^2=1+x+y+xy; x*mu=mu", "TR(V4) structure constants");
    try {
        check_tr_associativity(R);
        fc.eq("product associativity", "ok", "ok", "bigraded ring axioms");
    } catch (const std::exception& e) {
        fc.eq("product associativity", e.what(), "ok", "bigraded ring axioms");
    }
    return fc.rows;
}

inline std::vector<CheckRow> sector_file_checks(const std::string& name,
                                                const std::string& fixtures_dir,
                                                const std::string& file) {
    FixtureChecks fc{name, {}};
    SectorFile sf = sectors_from_json(parse_json(read_file(fixtures_dir + "/" + file), file));
    SectorSumResult sum = sector_sum(sf.data);
    if (sf.expect)
        fc.eq("sector sum = expected ranks", krank_str(sum.kranks), krank_str(*sf.expect),
              "worked example constants");
    else
        fc.note("sector sum", krank_str(sum.kranks), "-", "data-driven sum");
    return fc.rows;
}

inline std::vector<CheckRow> symprod_checks(int n_max, const std::vector<long>& chis) {
    FixtureChecks fc{"symprod", {}};
    for (long chi : chis) {
        SymprodReport rep = symprod_report(chi, n_max);
        bool untw = true;
        for (const SymprodRow& r : rep.untwisted) untw &= r.match;
        fc.eq("untwisted matches prod(1-q^k)^{-chi} [chi=" + std::to_string(chi) + "]",
              untw ? "match" : "mismatch", "match", "orbifold Euler characteristics of symmetric products");
        for (const SymprodRow& r : rep.twisted) {
            if (r.n < 4) continue;
            std::ostringstream lhs;
            lhs << r.brute << (r.match ? " == " : " DIFFERS from ") << r.formula;
            fc.note("twisted n=" + std::to_string(r.n) + " vs closed-form product [chi=" +
                        std::to_string(chi) + "]",
                    lhs.str(), "brute force authoritative", "two-term product comparison");
        }
    }
    return fc.rows;
}

}  // namespace detail

/**
 * The bundled cross-validation suite: runs the per-module identities on
 * the fixture library end to end and reports every method-vs-method
 * agreement.  Failures carry the two disagreeing values and the identity
 * under test.  Fixtures are independent, so --jobs may parallelize them;
 * report order is fixed by the task list either way.
 */
inline VerifyResult verify_suite(const std::string& suite, const std::string& fixtures_dir,
                                 int jobs = 1) {
    if (suite != "small" && suite != "full")
        throw validation_error("unknown verify suite '" + suite + "' (use small or full)");
    bool full = (suite == "full");
    using Task = std::function<std::vector<CheckRow>()>;
    std::vector<std::pair<std::string, Task>> tasks;
    auto add = [&](const std::string& name, Task t) { tasks.emplace_back(name, std::move(t)); };
    const std::string dir = fixtures_dir;

    add("geom-hexagon-z2", [dir] {
        return detail::geometric_fixture_checks("geom-hexagon-z2", dir, "z2hex.group.json",
                                                "hexagon_z2.complex.json", false);
    });
    add("geom-hexagon-anti", [dir] {
        return detail::geometric_fixture_checks("geom-hexagon-anti", dir, "z2anti.group.json",
                                                "hexagon_anti.complex.json", false);
    });
    add("geom-hexagon-z6", [dir] {
        return detail::geometric_fixture_checks("geom-hexagon-z6", dir, "z6hex.group.json",
                                                "hexagon_z6.complex.json", false);
    });
    add("geom-hexagon-v4", [dir] {
        return detail::geometric_fixture_checks("geom-hexagon-v4", dir, "v4hex.group.json",
                                                "hexagon_v4.complex.json", true);
    });
    add("geom-triangle-z3", [dir] {
        return detail::geometric_fixture_checks("geom-triangle-z3", dir, "z3tri.group.json",
                                                "triangle_z3.complex.json", false);
    });
    add("geom-tetra-s4", [dir] {
        return detail::geometric_fixture_checks("geom-tetra-s4", dir, "s4.group.json",
                                                "tetra_s4.complex.json", false);
    });
    add("geom-square-d4", [dir] {
        return detail::geometric_fixture_checks("geom-square-d4", dir, "d4.group.json",
                                                "square_d4.complex.json", false);
    });
    add("point-v4", [dir] {
        return detail::point_fixture_checks("point-v4", dir, "v4.group.json",
                                            "point_v4.complex.json", true);
    });
    add("point-s3", [dir] {
        return detail::point_fixture_checks("point-s3", dir, "s3.group.json",
                                            "point_s3.complex.json", false);
    });
    add("point-s4", [dir] {
        return detail::point_fixture_checks("point-s4", dir, "s4.group.json",
                                            "point_s4.complex.json", false);
    });
    add("h2-c5", [dir] {
        return detail::h2_fixture_checks("h2-c5", dir, "c5.group.json", 5, "[]", false);
    });
    add("h2-v4", [dir] {
        return detail::h2_fixture_checks("h2-v4", dir, "v4.group.json", 2, "[2]", true);
    });
    add("h2-s4", [dir] {
        return detail::h2_fixture_checks("h2-s4", dir, "s4.group.json", 2, "[2]", true);
    });
    add("trring-v4", [dir] { return detail::trring_v4_checks(dir); });
    for (const std::string& f :
         {std::string("cp23"), std::string("cp35"), std::string("cp57"), std::string("hyp_g2_333"),
          std::string("hyp_g2_335"), std::string("hyp_g3_22")})
        add("sectors-" + f, [dir, f] {
            return detail::sector_file_checks("sectors-" + f, dir, f + ".sectors.json");
        });
    if (full) {
        add("h2-s5", [dir] {
            return detail::h2_fixture_checks("h2-s5", dir, "s5.group.json", 2, "[2]", true);
        });
        add("symprod", [] { return detail::symprod_checks(5, {-2, 0, 1, 2, 3}); });
    } else {
        add("symprod", [] { return detail::symprod_checks(4, {-2, 0, 2}); });
    }

    VerifyResult out;
    out.suite = suite;
    std::vector<std::vector<CheckRow>> results(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = tasks[i].second();
    } else {
        std::vector<std::future<std::vector<CheckRow>>> futures;
        for (std::size_t i = 0; i < tasks.size(); ++i)
            futures.push_back(std::async(std::launch::async, tasks[i].second));
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = futures[i].get();
    }
    for (std::vector<CheckRow>& r : results)
        out.rows.insert(out.rows.end(), r.begin(), r.end());
    return out;
}

inline json verify_report_json(const VerifyResult& v) {
    json rows = json::array();
    for (const CheckRow& r : v.rows)
        rows.push_back(json{{"fixture", r.fixture},
                            {"check", r.check},
                            {"lhs", r.lhs},
                            {"rhs", r.rhs},
                            {"ok", r.ok},
                            {"ref", r.ref}});
    return json{{"suite", v.suite}, {"all_ok", v.all_ok()}, {"checks", rows}};
}

inline std::string verify_report_text(const VerifyResult& v) {
    std::ostringstream out;
    out << "verify suite '" << v.suite << "'\n";
    for (const CheckRow& r : v.rows) {
        out << (r.ok ? "  pass  " : "  FAIL  ") << r.fixture << ": " << r.check;
        if (!r.ok || r.lhs != r.rhs) out << "  [" << r.lhs << " vs " << r.rhs << "]";
        out << "\n";
        if (!r.ok) out << "        identity: " << r.ref << "\n";
    }
    out << (v.all_ok() ? "all checks passed" : "FAILURES present") << "\n";
    return out.str();
}

}  // namespace orbk
