// Acceptance suite: every exit criterion is run at its stated tolerance
// (all comparisons exact) and reported as one pass/fail line.

#include "orbk/bredon.hpp"
#include "orbk/chartable.hpp"
#include "orbk/cli.hpp"
#include "orbk/io.hpp"
#include "orbk/sector_series.hpp"
#include "orbk/sectors.hpp"
#include "orbk/trring.hpp"
#include "orbk/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace orbk;

namespace {

const std::string kFixtures = ORBK_FIXTURE_DIR;

int failures = 0;

void criterion(int number, const std::string& title, const std::function<std::string()>& body) {
    try {
        std::string detail = body();
        std::cout << "PASS criterion " << number << ": " << title;
        if (!detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
    } catch (const std::exception& e) {
        ++failures;
        std::cout << "FAIL criterion " << number << ": " << title << " — " << e.what() << "\n";
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

FiniteGroup load_group(const std::string& name) {
    return group_from_json(parse_json(read_file(kFixtures + "/" + name), name));
}

GComplex load_complex(const std::string& name, const FiniteGroup& G) {
    return complex_from_json(parse_json(read_file(kFixtures + "/" + name), name), G);
}

struct GeomFixture {
    std::string name;
    std::string group_file;
    std::string complex_file;
};

const std::vector<GeomFixture> kGeometric = {
    {"hexagon/Z2-reflection", "z2hex.group.json", "hexagon_z2.complex.json"},
    {"hexagon/Z2-antipodal", "z2anti.group.json", "hexagon_anti.complex.json"},
    {"hexagon/Z6-rotation", "z6hex.group.json", "hexagon_z6.complex.json"},
    {"hexagon/V4", "v4hex.group.json", "hexagon_v4.complex.json"},
    {"triangle/Z3", "z3tri.group.json", "triangle_z3.complex.json"},
    {"tetrahedron/S4", "s4.group.json", "tetra_s4.complex.json"},
    {"square/D4", "d4.group.json", "square_d4.complex.json"},
    {"point/V4", "v4.group.json", "point_v4.complex.json"},
    {"point/S3", "s3.group.json", "point_s3.complex.json"},
    {"point/S4", "s4.group.json", "point_s4.complex.json"},
};

}  // namespace

int main() {
    std::cout << "orbk acceptance suite (exact comparisons; fixtures: " << kFixtures << ")\n";

    criterion(1, "TR(Z/2 x Z/2) at m=2: total rank 5 and its presentation relations", [] {
        FiniteGroup G = load_group("v4.group.json");
        TRRing R = tr_ring(G, 2);
        require(R.total_rank() == 5, "total rank != 5");
        require(R.class_count() == 2 && R.tables[0].rank() == 4 && R.tables[1].rank() == 1,
                "ranks (4, 1) expected");
        // unit row of R_0 (all values 1)
        int unit = -1;
        for (int r = 0; r < 4; ++r) {
            bool one = true;
            for (int g = 0; g < 4; ++g) one &= (R.tables[0].values[r][g] == Cyclotomic(1));
            if (one) unit = r;
        }
        require(unit >= 0, "trivial character not found");
        for (int i = 0; i < 4; ++i) {
            std::vector<long> sq = R.products[0][0][i][i];
            std::vector<long> expect(4, 0);
            expect[unit] = 1;
            require(sq == expect, "x^2 = 1 fails for a linear character");
            require(R.products[0][1][i][0] == std::vector<long>{1}, "x mu = mu fails");
        }
        require(R.products[1][1][0][0] == std::vector<long>{1, 1, 1, 1},
                "mu^2 = 1 + x + y + xy fails");
        return std::string("rank 5; x^2=1, x*mu=mu, mu^2=1+x+y+xy recovered");
    });

    criterion(2, "H2(Sigma_n, Z/2) = Z/2 for n=4,5 and both rank routes agree", [] {
        auto t0 = std::chrono::steady_clock::now();
        std::ostringstream detail;
        for (std::pair<std::string, int> want :
             {std::make_pair(std::string("s4.group.json"), 3),
              std::make_pair(std::string("s5.group.json"), 5)}) {
            FiniteGroup G = load_group(want.first);
            CohomologyClassSet h2 = h2_group(G, 2);
            require(h2.invariant_factors == std::vector<long>{2},
                    want.first + ": H2 is not Z/2");
            const Cocycle& alpha = h2.class_reps[1];
            int scan = static_cast<int>(alpha_regular_classes(alpha).size());
            TwistedCharacterTable tw = twisted_character_table(G, alpha);
            require(scan == tw.rank(), want.first + ": scan and table ranks differ");
            require(scan == want.second, want.first + ": unexpected rank");
            detail << "|G|=" << G.order() << " rank " << scan << "  ";
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        require(ms < 120000, "Sigma_5 solve exceeded two minutes");
        detail << "(both routes, " << ms << " ms < 120000 ms)";
        return detail.str();
    });

    criterion(3, "chi_orb(CP(p,q)) = p + q for (2,3), (3,5), (5,7)", [] {
        std::ostringstream detail;
        for (std::pair<std::string, long> c : {std::make_pair(std::string("cp23"), 5L),
                                               std::make_pair(std::string("cp35"), 8L),
                                               std::make_pair(std::string("cp57"), 12L)}) {
            SectorFile sf = sectors_from_json(
                parse_json(read_file(kFixtures + "/" + c.first + ".sectors.json"), c.first));
            SectorSumResult sum = sector_sum(sf.data);
            require(sum.chi_orb == c.second && sum.kranks == KRank{c.second, 0},
                    c.first + ": expected (" + std::to_string(c.second) + ", 0)");
            detail << c.first << "=" << sum.chi_orb << " ";
        }
        return detail.str();
    });

    criterion(4, "hyperbolic orbifolds: k0 = sum(v_i - 1) + 2, k1 = 2g", [] {
        std::ostringstream detail;
        struct Case {
            std::string file;
            KRank expect;
        };
        // (g=2; v=3,3,3) realizes (8, 4); (g=2; v=3,3,5) gives (10, 4) by the
        // same formula; (g=3; v=2,2) gives (4, 6)
        for (const Case& c : {Case{"hyp_g2_333", {8, 4}}, Case{"hyp_g2_335", {10, 4}},
                              Case{"hyp_g3_22", {4, 6}}}) {
            SectorFile sf = sectors_from_json(
                parse_json(read_file(kFixtures + "/" + c.file + ".sectors.json"), c.file));
            SectorSumResult sum = sector_sum(sf.data);
            require(sum.kranks == c.expect, c.file + ": KRank mismatch");
            detail << c.file << "=(" << sum.kranks.k0 << "," << sum.kranks.k1 << ") ";
        }
        return detail.str();
    });

    criterion(5, "symmetric products: untwisted matches; twisted n=4,5 compared verbatim", [] {
        std::ostringstream detail;
        for (long chi : {-2L, 0L, 1L, 2L, 3L}) {
            Series s = untwisted_symprod_series(chi, 5);
            for (int n = 0; n <= 5; ++n)
                require(symprod_chi(n, chi, false) == s.c[n],
                        "untwisted mismatch at n=" + std::to_string(n) +
                            ", chi=" + std::to_string(chi));
            Series tw = closed_form_generating_function(chi, 5);
            for (int n = 4; n <= 5; ++n) {
                Int brute = symprod_chi(n, chi, true);
                if (brute == tw.c[n]) {
                    detail << "[chi=" << chi << ",n=" << n << ": " << brute.str() << " agrees] ";
                } else {
                    detail << "[chi=" << chi << ",n=" << n << ": brute " << brute.str()
                           << " vs closed-form product " << tw.c[n].str() << "] ";
                }
            }
        }
        return "untwisted exact for n<=5, chi in {-2,0,1,2,3}; twisted comparison: " + detail.str();
    });

    criterion(6, "collapse cross-validation on the fixture matrix", [] {
        int combos = 0;
        for (const GeomFixture& f : kGeometric) {
            FiniteGroup G = load_group(f.group_file);
            RegularizeResult reg = regularize(load_complex(f.complex_file, G));
            SectorDecomposition sd = sector_decomposition(reg.complex);
            CyclicDecomposition cd = cyclic_decomposition(reg.complex);
            require(cd.total == sd.kranks.k0 + sd.kranks.k1,
                    f.name + ": cyclic total != element-indexed total");
            CohomologyClassSet h2 = h2_group(G, 2);
            for (long c = 0; c < h2.class_count(); ++c) {
                const Cocycle& rep = h2.class_reps[c];
                KRank tw = twisted_k_ranks(reg.complex, rep);
                BredonResult br = bredon_cohomology(reg.complex, rep);
                require(br.folded == tw, f.name + ": folded Bredon != twisted ranks");
                require(chi_orb_cells(reg.complex, rep) == tw.chi(),
                        f.name + ": cell formula != k0 - k1");
                if (c == 0)
                    require(tw == sd.kranks, f.name + ": trivial twist != sector ranks");
                ++combos;
            }
        }
        return std::to_string(combos) + " (X, G, alpha) combinations, all equal";
    });

    criterion(7, "Euler identity chi_orb(X) = chi(X u Sigma X) on all geometric fixtures", [] {
        for (const GeomFixture& f : kGeometric) {
            FiniteGroup G = load_group(f.group_file);
            RegularizeResult reg = regularize(load_complex(f.complex_file, G));
            SectorDecomposition sd = sector_decomposition(reg.complex);
            long chi_sectors = 0;
            for (const SectorEntry& e : sd.entries) chi_sectors += e.euler;
            require(chi_orb_cells(reg.complex, zero_cocycle(G, 2)) == chi_sectors,
                    f.name + ": Euler identity fails");
        }
        return std::to_string(kGeometric.size()) + " fixtures";
    });

    criterion(8, "V4 total-twist Euler identity chi(TK) = 6 chi(M/G) - chi(M)", [] {
        // point: 5 = 6 * 1 - 1
        FiniteGroup V4 = load_group("v4.group.json");
        CohomologyClassSet h2p = h2_group(V4, 2);
        GComplex pt = load_complex("point_v4.complex.json", V4);
        long chi_pt = 0;
        for (long c = 0; c < h2p.class_count(); ++c)
            chi_pt += twisted_k_ranks(pt, h2p.class_reps[c]).chi();
        require(chi_pt == 5, "point fixture: total chi != 5");

        // circle: 6 = 6 * 1 - 0
        FiniteGroup G = load_group("v4hex.group.json");
        RegularizeResult reg = regularize(load_complex("hexagon_v4.complex.json", G));
        CohomologyClassSet h2 = h2_group(G, 2);
        long chi_total = 0;
        for (long c = 0; c < h2.class_count(); ++c)
            chi_total += twisted_k_ranks(reg.complex, h2.class_reps[c]).chi();
        SectorDecomposition sd = sector_decomposition(reg.complex);
        require(sd.entries[0].euler == 1, "chi(M/G) != 1");
        require(reg.complex.K.euler_characteristic() == 0, "chi(M) != 0");
        require(chi_total == 6, "circle fixture: total chi != 6");
        return std::string("point: 5 = 6*1 - 1; circle: 6 = 6*1 - 0");
    });

    criterion(9, "degenerations: alpha = 0, g = 1, and constant coefficients", [] {
        for (const GeomFixture& f : kGeometric) {
            FiniteGroup G = load_group(f.group_file);
            RegularizeResult reg = regularize(load_complex(f.complex_file, G));
            SectorDecomposition sd = sector_decomposition(reg.complex);
            // alpha = 0 reduces the twisted computation to the untwisted one
            require(twisted_k_ranks(reg.complex, zero_cocycle(G, 2)) == sd.kranks,
                    f.name + ": alpha = 0 does not reduce to the untwisted ranks");
            // the g = 1 sector is X/G
            std::vector<Perm> all;
            for (int g = 0; g < G.order(); ++g) all.push_back(reg.complex.vperm[g]);
            QuotientComplex qt = quotient_complex(reg.complex.K, all);
            require(sd.entries[0].betti == qt.K.betti(), f.name + ": g = 1 sector is not X/G");
            // constant-coefficient Bredon equals H*(X/G; Q)
            BredonResult bc = bredon_constant_coefficients(reg.complex);
            std::vector<long> qb = qt.K.betti();
            qb.resize(bc.ranks.size(), 0);
            require(bc.ranks == qb, f.name + ": constant-coefficient Bredon != H*(X/G)");
        }
        return std::to_string(kGeometric.size()) + " fixtures, all three degenerations";
    });

    std::cout << (failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: FAILURES present\n");
    return failures == 0 ? 0 : 1;
}
