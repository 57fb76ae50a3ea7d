#pragma once

#include "orbk/bredon.hpp"
#include "orbk/chartable.hpp"
#include "orbk/io.hpp"
#include "orbk/sector_series.hpp"
#include "orbk/sectors.hpp"
#include "orbk/trring.hpp"
#include "orbk/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace orbk {

namespace cli_detail {

inline int order_cap_from_env() {
    const char* v = std::getenv("ORBK_ORDER_CAP");
    if (!v) return FiniteGroup::kDefaultOrderCap;
    long cap = std::atol(v);
    if (cap < 1) throw validation_error("ORBK_ORDER_CAP must be a positive integer");
    return static_cast<int>(cap);
}

struct LoadedFile {
    json j;
    std::string digest;
};

inline LoadedFile load(const std::string& path) {
    std::string bytes = read_file(path);
    return {parse_json(bytes, path), fnv1a_hex(bytes)};
}

inline json krank_json(const KRank& k) {
    return json{{"k0", k.k0}, {"k1", k.k1}, {"chi", k.chi()}};
}

inline json group_report(const FiniteGroup& G) {
    ConjugacyClassSet cc = conjugacy_classes(G);
    json classes = json::array();
    for (int k = 0; k < cc.count(); ++k)
        classes.push_back(json{{"representative", cc.representatives[k]},
                               {"size", cc.sizes[k]},
                               {"order", G.element_order(cc.representatives[k])}});
    return json{{"order", G.order()},
                {"abelian", G.is_abelian()},
                {"exponent", G.exponent()},
                {"class_count", cc.count()},
                {"classes", classes}};
}

inline json twisted_table_json(const TwistedCharacterTable& T, bool include_values) {
    json rows = json::array();
    ConjugacyClassSet cc = conjugacy_classes(*T.G);
    for (int r = 0; r < T.rank(); ++r) {
        json row{{"degree", T.degrees[r]}};
        json vals = json::array();
        if (include_values) {
            for (int g = 0; g < T.G->order(); ++g) vals.push_back(cyclotomic_to_json(T.values[r][g]));
            row["values_on_elements"] = vals;
        } else {
            for (int k = 0; k < cc.count(); ++k)
                vals.push_back(cyclotomic_to_json(T.values[r][cc.representatives[k]]));
            row["values_at_class_representatives"] = vals;
        }
        rows.push_back(std::move(row));
    }
    json reg = json::array();
    for (int k : T.regular_classes) reg.push_back(k);
    json class_labels = json::array();
    for (int k = 0; k < cc.count(); ++k)
        class_labels.push_back("g" + std::to_string(cc.representatives[k]));
    return json{{"modulus", T.modulus},
                {"level", T.level},
                {"rank", T.rank()},
                {"class_labels", class_labels},
                {"regular_classes", reg},
                {"rows", rows}};
}

inline std::string text_of_table(const TwistedCharacterTable& T) {
    ConjugacyClassSet cc = conjugacy_classes(*T.G);
    std::ostringstream out;
    out << "twisted character table (modulus " << T.modulus << ", level " << T.level << ")\n";
    out << "class reps:";
    for (int k = 0; k < cc.count(); ++k) out << " g" << cc.representatives[k];
    out << "\n";
    for (int r = 0; r < T.rank(); ++r) {
        out << "deg " << T.degrees[r] << " :";
        for (int k = 0; k < cc.count(); ++k)
            out << "  " << T.values[r][cc.representatives[k]].str();
        out << "\n";
    }
    return out.str();
}

}  // namespace cli_detail

/**
 * Runs one CLI invocation.  The comparable report goes to `out`
 * (byte-identical across runs on identical inputs); wall time goes to
 * `err`.  Exit codes: 0 success, 1 validation error, 2 internal
 * consistency failure.
 */
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto started = std::chrono::steady_clock::now();
    CLI::App app{"orbk: exact twisted representation rings and orbifold K-theory"};
    app.require_subcommand(1);
    bool text = false;
    app.add_flag("--text", text, "human-readable output instead of JSON");

    json report;
    std::string text_out;

    int order_cap = cli_detail::order_cap_from_env();

    // ---- group ----
    std::string group_path, complex_path, cocycle_path, sectors_path;
    auto* c_group = app.add_subcommand("group", "validate and describe a group file");
    c_group->add_option("group", group_path, "group JSON file")->required();
    c_group->callback([&] {
        cli_detail::LoadedFile f = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(f.j, order_cap);
        report = json{{"command", "group"},
                      {"inputs", json{{"group", f.digest}}},
                      {"results", cli_detail::group_report(G)}};
        if (text) {
            std::ostringstream t;
            t << "group of order " << G.order() << (G.is_abelian() ? " (abelian)" : "")
              << ", exponent " << G.exponent() << ", "
              << report["results"]["class_count"].get<int>() << " conjugacy classes\n";
            text_out = t.str();
        }
    });

    // ---- h2 ----
    long modulus = 0;
    auto* c_h2 = app.add_subcommand("h2", "H^2(G, S^1) restricted to mu_m values");
    c_h2->add_option("group", group_path, "group JSON file")->required();
    c_h2->add_option("--modulus", modulus, "coefficient modulus m (default |G|)");
    c_h2->callback([&] {
        cli_detail::LoadedFile f = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(f.j, order_cap);
        long m = modulus > 0 ? modulus : G.order();
        CohomologyClassSet h2 = h2_group(G, m);
        json factors = json::array();
        for (long x : h2.invariant_factors) factors.push_back(x);
        json classes = json::array();
        for (long c = 0; c < h2.class_count(); ++c) {
            json entry{{"index", c},
                       {"coords", h2.class_coords[c]},
                       {"regular_class_count",
                        static_cast<long>(alpha_regular_classes(h2.class_reps[c]).size())}};
            if (G.order() <= 32) entry["values"] = h2.class_reps[c].values;
            classes.push_back(std::move(entry));
        }
        report = json{{"command", "h2"},
                      {"inputs", json{{"group", f.digest}}},
                      {"results", json{{"modulus", m},
                                       {"invariant_factors", factors},
                                       {"class_count", h2.class_count()},
                                       {"classes", classes}}}};
        if (text) {
            std::ostringstream t;
            t << "H2 at modulus " << m << ": ";
            if (h2.invariant_factors.empty()) t << "trivial";
            for (long x : h2.invariant_factors) t << "Z/" << x << " ";
            t << " (" << h2.class_count() << " classes)\n";
            text_out = t.str();
        }
    });

    // ---- regular ----
    auto* c_reg = app.add_subcommand("regular", "alpha-regular conjugacy classes");
    c_reg->add_option("group", group_path, "group JSON file")->required();
    c_reg->add_option("--cocycle", cocycle_path, "cocycle JSON file")->required();
    c_reg->callback([&] {
        cli_detail::LoadedFile fg = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(fg.j, order_cap);
        cli_detail::LoadedFile fc = cli_detail::load(cocycle_path);
        Cocycle alpha = cocycle_from_json(fc.j, G);
        ConjugacyClassSet cc = conjugacy_classes(G);
        std::vector<int> reg = alpha_regular_classes(alpha, cc);
        json list = json::array();
        for (int k : reg)
            list.push_back(json{{"class", k}, {"representative", cc.representatives[k]}});
        report = json{{"command", "regular"},
                      {"inputs", json{{"group", fg.digest}, {"cocycle", fc.digest}}},
                      {"results", json{{"modulus", alpha.modulus},
                                       {"regular_classes", list},
                                       {"rank_R_alpha", static_cast<long>(reg.size())}}}};
        if (text)
            text_out = "rank R_alpha = " + std::to_string(reg.size()) + " of " +
                       std::to_string(cc.count()) + " classes\n";
    });

    // ---- chartable ----
    auto* c_tab = app.add_subcommand("chartable", "exact (twisted) character table");
    c_tab->add_option("group", group_path, "group JSON file")->required();
    c_tab->add_option("--cocycle", cocycle_path, "cocycle JSON file (omit for the ordinary table)");
    c_tab->callback([&] {
        cli_detail::LoadedFile fg = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(fg.j, order_cap);
        json inputs{{"group", fg.digest}};
        Cocycle alpha = zero_cocycle(G, 1);
        if (!cocycle_path.empty()) {
            cli_detail::LoadedFile fc = cli_detail::load(cocycle_path);
            inputs["cocycle"] = fc.digest;
            alpha = cocycle_from_json(fc.j, G);
        }
        TwistedCharacterTable T = twisted_character_table(G, alpha);
        report = json{{"command", "chartable"},
                      {"inputs", inputs},
                      {"results", cli_detail::twisted_table_json(T, G.order() <= 24)}};
        if (text) text_out = cli_detail::text_of_table(T);
    });

    // ---- trring ----
    auto* c_tr = app.add_subcommand("trring", "total twisted representation ring");
    c_tr->add_option("group", group_path, "group JSON file")->required();
    c_tr->add_option("--modulus", modulus, "coefficient modulus m (default |G|)");
    c_tr->callback([&] {
        cli_detail::LoadedFile fg = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(fg.j, order_cap);
        long m = modulus > 0 ? modulus : G.order();
        TRRing R = tr_ring(G, m);
        json ranks = json::array();
        for (const TwistedCharacterTable& t : R.tables) ranks.push_back(t.rank());
        json products = json::array();
        long entries = 0;
        for (long c1 = 0; c1 < R.class_count() && entries <= 10000; ++c1)
            for (long c2 = 0; c2 < R.class_count(); ++c2)
                for (std::size_t i = 0; i < R.products[c1][c2].size(); ++i)
                    for (std::size_t jj = 0; jj < R.products[c1][c2][i].size(); ++jj) {
                        products.push_back(json{{"class_a", c1},
                                                {"row_a", i},
                                                {"class_b", c2},
                                                {"row_b", jj},
                                                {"target_class", R.sum_class[c1][c2]},
                                                {"multiplicities", R.products[c1][c2][i][jj]}});
                        ++entries;
                    }
        report = json{{"command", "trring"},
                      {"inputs", json{{"group", fg.digest}}},
                      {"results", json{{"modulus", m},
                                       {"class_count", R.class_count()},
                                       {"ranks", ranks},
                                       {"total_rank", R.total_rank()},
                                       {"products", products}}}};
        if (text)
            text_out = "TR(G) at modulus " + std::to_string(m) + ": total rank " +
                       std::to_string(R.total_rank()) + "\n";
    });

    // ---- korb ----
    auto* c_korb = app.add_subcommand("korb", "(twisted) orbifold K-theory ranks");
    c_korb->add_option("group", group_path, "group JSON file")->required();
    c_korb->add_option("complex", complex_path, "complex JSON file")->required();
    c_korb->add_option("--cocycle", cocycle_path, "cocycle JSON file");
    c_korb->callback([&] {
        cli_detail::LoadedFile fg = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(fg.j, order_cap);
        cli_detail::LoadedFile fx = cli_detail::load(complex_path);
        RegularizeResult reg = regularize(complex_from_json(fx.j, G));
        json inputs{{"group", fg.digest}, {"complex", fx.digest}};
        Cocycle alpha = zero_cocycle(G, 2);
        if (!cocycle_path.empty()) {
            cli_detail::LoadedFile fc = cli_detail::load(cocycle_path);
            inputs["cocycle"] = fc.digest;
            alpha = cocycle_from_json(fc.j, G);
        }
        KRank tw = twisted_k_ranks(reg.complex, alpha);
        long cells = chi_orb_cells(reg.complex, alpha);
        json results{{"regularize_rounds", reg.rounds},
                     {"kranks", cli_detail::krank_json(tw)},
                     {"chi_orb_cells", cells},
                     {"cross_check_cells_equals_chi", cells == tw.chi()}};
        if (cocycle_path.empty()) {
            SectorDecomposition sd = sector_decomposition(reg.complex);
            json sectors = json::array();
            for (const SectorEntry& e : sd.entries)
                sectors.push_back(json{{"label", e.label}, {"betti", e.betti}, {"euler", e.euler}});
            results["sectors"] = sectors;
            results["sector_check"] = (sd.kranks == tw);
        }
        if (cells != tw.chi())
            throw internal_error("cell formula disagrees with the twisted decomposition");
        report = json{{"command", "korb"}, {"inputs", inputs}, {"results", results}};
        if (text)
            text_out = "K0 rank " + std::to_string(tw.k0) + ", K1 rank " + std::to_string(tw.k1) +
                       ", chi_orb " + std::to_string(tw.chi()) + "\n";
    });

    // ---- bredon ----
    bool constant_coeff = false;
    auto* c_br = app.add_subcommand("bredon", "Bredon cohomology ranks");
    c_br->add_option("group", group_path, "group JSON file")->required();
    c_br->add_option("complex", complex_path, "complex JSON file")->required();
    c_br->add_option("--cocycle", cocycle_path, "cocycle JSON file");
    c_br->add_flag("--constant", constant_coeff, "constant coefficients Q instead of R_alpha(-)");
    c_br->callback([&] {
        cli_detail::LoadedFile fg = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(fg.j, order_cap);
        cli_detail::LoadedFile fx = cli_detail::load(complex_path);
        RegularizeResult reg = regularize(complex_from_json(fx.j, G));
        json inputs{{"group", fg.digest}, {"complex", fx.digest}};
        BredonResult b;
        if (constant_coeff) {
            b = bredon_constant_coefficients(reg.complex);
        } else {
            Cocycle alpha = zero_cocycle(G, 2);
            if (!cocycle_path.empty()) {
                cli_detail::LoadedFile fc = cli_detail::load(cocycle_path);
                inputs["cocycle"] = fc.digest;
                alpha = cocycle_from_json(fc.j, G);
            }
            b = bredon_cohomology(reg.complex, alpha);
        }
        report = json{{"command", "bredon"},
                      {"inputs", inputs},
                      {"results", json{{"regularize_rounds", reg.rounds},
                                       {"cochain_dims", b.dims},
                                       {"ranks", b.ranks},
                                       {"folded", cli_detail::krank_json(b.folded)}}}};
        if (text) {
            std::ostringstream t;
            t << "Bredon ranks:";
            for (long r : b.ranks) t << " " << r;
            t << "  folded (" << b.folded.k0 << "," << b.folded.k1 << ")\n";
            text_out = t.str();
        }
    });

    // ---- chiorb ----
    auto* c_chi = app.add_subcommand("chiorb", "orbifold Euler characteristic via orbit cells");
    c_chi->add_option("group", group_path, "group JSON file")->required();
    c_chi->add_option("complex", complex_path, "complex JSON file")->required();
    c_chi->add_option("--cocycle", cocycle_path, "cocycle JSON file");
    c_chi->callback([&] {
        cli_detail::LoadedFile fg = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(fg.j, order_cap);
        cli_detail::LoadedFile fx = cli_detail::load(complex_path);
        RegularizeResult reg = regularize(complex_from_json(fx.j, G));
        json inputs{{"group", fg.digest}, {"complex", fx.digest}};
        Cocycle alpha = zero_cocycle(G, 2);
        if (!cocycle_path.empty()) {
            cli_detail::LoadedFile fc = cli_detail::load(cocycle_path);
            inputs["cocycle"] = fc.digest;
            alpha = cocycle_from_json(fc.j, G);
        }
        long chi = chi_orb_cells(reg.complex, alpha);
        report = json{{"command", "chiorb"},
                      {"inputs", inputs},
                      {"results", json{{"chi_orb", chi}, {"regularize_rounds", reg.rounds}}}};
        if (text) text_out = "chi_orb = " + std::to_string(chi) + "\n";
    });

    // ---- sectors (data-driven) ----
    auto* c_sec = app.add_subcommand("sectors", "sector-sum calculator for sector data files");
    c_sec->add_option("file", sectors_path, "sector JSON file")->required();
    c_sec->callback([&] {
        cli_detail::LoadedFile f = cli_detail::load(sectors_path);
        SectorFile sf = sectors_from_json(f.j);
        SectorSumResult sum = sector_sum(sf.data);
        json results{{"kranks", cli_detail::krank_json(sum.kranks)}, {"chi_orb", sum.chi_orb}};
        if (sf.expect) {
            results["expected"] = cli_detail::krank_json(*sf.expect);
            results["matches_expected"] = (sum.kranks == *sf.expect);
        }
        report = json{{"command", "sectors"},
                      {"inputs", json{{"sectors", f.digest}}},
                      {"results", results}};
        if (text)
            text_out = "k0 " + std::to_string(sum.kranks.k0) + ", k1 " +
                       std::to_string(sum.kranks.k1) + ", chi_orb " + std::to_string(sum.chi_orb) +
                       "\n";
    });

    // ---- sectors-of (the orbifold resolution) ----
    auto* c_sof = app.add_subcommand("sectors-of", "twisted sectors (the resolution of X)");
    c_sof->add_option("group", group_path, "group JSON file")->required();
    c_sof->add_option("complex", complex_path, "complex JSON file")->required();
    c_sof->callback([&] {
        cli_detail::LoadedFile fg = cli_detail::load(group_path);
        FiniteGroup G = group_from_json(fg.j, order_cap);
        cli_detail::LoadedFile fx = cli_detail::load(complex_path);
        RegularizeResult reg = regularize(complex_from_json(fx.j, G));
        SectorDecomposition sd = sector_decomposition(reg.complex);
        json twisted = json::array();
        long chi_res = 0;
        for (std::size_t k = 1; k < sd.entries.size(); ++k) {
            const SectorEntry& e = sd.entries[k];
            twisted.push_back(json{{"label", e.label}, {"betti", e.betti}, {"euler", e.euler}});
            chi_res += e.euler;
        }
        report = json{
            {"command", "sectors-of"},
            {"inputs", json{{"group", fg.digest}, {"complex", fx.digest}}},
            {"results", json{{"untwisted",
                              json{{"betti", sd.entries[0].betti}, {"euler", sd.entries[0].euler}}},
                             {"resolution", twisted},
                             {"chi_resolution", chi_res}}}};
        if (text)
            text_out = "resolution has " + std::to_string(twisted.size()) +
                       " twisted sectors, chi " + std::to_string(chi_res) + "\n";
    });

    // ---- symprod ----
    int sp_n = 0;
    long sp_chi = 0;
    bool sp_twisted = false, sp_report = false, sp_allow6 = false;
    auto* c_sp = app.add_subcommand("symprod", "symmetric-product Euler characteristics");
    c_sp->add_option("--n", sp_n, "number of factors")->required();
    c_sp->add_option("--chi", sp_chi, "Euler characteristic of M")->required();
    c_sp->add_flag("--twisted", sp_twisted, "use the nontrivial twist for n >= 4");
    c_sp->add_flag("--report", sp_report, "full comparison table up to n");
    c_sp->add_flag("--enable-twisted-sigma6", sp_allow6, "allow the heavy twisted Sigma_6 solve");
    c_sp->callback([&] {
        json results;
        std::ostringstream t;
        if (sp_report) {
            SymprodReport rep = symprod_report(sp_chi, sp_n, sp_allow6);
            json untw = json::array(), tw = json::array();
            for (const SymprodRow& r : rep.untwisted)
                untw.push_back(json{{"n", r.n},
                                    {"brute", r.brute.str()},
                                    {"formula", r.formula.str()},
                                    {"match", r.match}});
            for (const SymprodRow& r : rep.twisted)
                tw.push_back(json{{"n", r.n},
                                  {"brute", r.brute.str()},
                                  {"formula", r.formula.str()},
                                  {"match", r.match},
                                  {"informational", r.informational}});
            results = json{{"chi", sp_chi}, {"untwisted", untw}, {"twisted", tw}};
            t << "n  untwisted(brute=formula)  twisted(brute vs formula)\n";
            for (std::size_t i = 0; i < rep.untwisted.size(); ++i) {
                const SymprodRow& u = rep.untwisted[i];
                t << u.n << "  " << u.brute.str() << (u.match ? " = " : " != ") << u.formula.str();
                if (i < rep.twisted.size()) {
                    const SymprodRow& w = rep.twisted[i];
                    t << "   " << w.brute.str() << (w.match ? " = " : " != ") << w.formula.str()
                      << (w.informational ? " (informational: n <= 3)" : "");
                }
                t << "\n";
            }
        } else {
            Int v = symprod_chi(sp_n, sp_chi, sp_twisted, sp_allow6);
            results = json{{"n", sp_n}, {"chi", sp_chi}, {"twisted", sp_twisted}, {"value", v.str()}};
            t << "chi(" << (sp_twisted ? "twisted " : "") << "K of the " << sp_n
              << "-fold symmetric product) = " << v.str() << "\n";
        }
        report = json{{"command", "symprod"}, {"inputs", json::object()}, {"results", results}};
        if (text) text_out = t.str();
    });

    // ---- verify ----
    std::string suite = "small";
    std::string fixtures_dir = "fixtures";
    int jobs = 1;
    auto* c_ver = app.add_subcommand("verify", "run the bundled cross-validation suite");
    c_ver->add_option("--suite", suite, "small or full");
    c_ver->add_option("--fixtures", fixtures_dir, "fixture directory (default ./fixtures)");
    c_ver->add_option("--jobs", jobs, "parallel fixture evaluation");
    c_ver->callback([&] {
        const char* env = std::getenv("ORBK_FIXTURES");
        if (env && fixtures_dir == "fixtures") fixtures_dir = env;
        VerifyResult v = verify_suite(suite, fixtures_dir, jobs);
        report = json{{"command", "verify"},
                      {"inputs", json{{"suite", suite}}},
                      {"results", verify_report_json(v)}};
        if (text) text_out = verify_report_text(v);
        if (!v.all_ok()) throw internal_error("verify suite reported failures");
    });

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << "\n";
        return 1;
    } catch (const internal_error& e) {
        // report what we can before signalling the consistency failure
        if (!report.is_null()) out << (text ? text_out : report.dump(2) + "\n");
        err << "internal consistency failure: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    }

    if (text)
        out << text_out;
    else
        out << report.dump(2) << "\n";
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    err << "wall-time ms: " << elapsed.count() << "\n";
    return 0;
}

}  // namespace orbk
