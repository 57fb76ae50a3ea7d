#include "orbk/cli.hpp"
#include "orbk/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace orbk;

namespace {

const std::string kFixtures = ORBK_FIXTURE_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return kFixtures + "/" + name; }

}  // namespace

TEST_CASE("cli: group describe") {
    Run r = run({"group", fx("s4.group.json")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["order"] == 24);
    CHECK(j["results"]["class_count"] == 5);
    CHECK(j["inputs"].contains("group"));
}

TEST_CASE("cli: byte-identical output across runs") {
    Run a = run({"trring", fx("v4.group.json"), "--modulus", "2"});
    Run b = run({"trring", fx("v4.group.json"), "--modulus", "2"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);  // stdout is the comparable body; wall time is on stderr
    CHECK(a.err.find("wall-time") != std::string::npos);
}

TEST_CASE("cli: trring of V4 reports total rank five") {
    Run r = run({"trring", fx("v4.group.json"), "--modulus", "2"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["total_rank"] == 5);
    CHECK(j["results"]["ranks"] == json::array({4, 1}));
}

TEST_CASE("cli: h2 of C5 at modulus 5 is trivial") {
    Run r = run({"h2", fx("c5.group.json"), "--modulus", "5"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["class_count"] == 1);
    CHECK(j["results"]["invariant_factors"].empty());
}

TEST_CASE("cli: regular classes under the V4 twist") {
    Run r = run({"regular", fx("v4.group.json"), "--cocycle", fx("alpha.cocycle.json")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["rank_R_alpha"] == 1);
}

TEST_CASE("cli: chartable emits exact coefficient vectors") {
    Run r = run({"chartable", fx("v4.group.json"), "--cocycle", fx("alpha.cocycle.json")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["rank"] == 1);
    CHECK(j["results"]["rows"][0]["degree"] == 2);
    // values are {"level", "coeffs"} objects, never decimals
    CHECK(j["results"]["rows"][0]["values_on_elements"][0].contains("coeffs"));
}

TEST_CASE("cli: korb on the reflection circle") {
    Run r = run({"korb", fx("z2hex.group.json"), fx("hexagon_z2.complex.json")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["kranks"]["k0"] == 3);
    CHECK(j["results"]["kranks"]["k1"] == 0);
    CHECK(j["results"]["chi_orb_cells"] == 3);
    CHECK(j["results"]["sector_check"] == true);
}

TEST_CASE("cli: korb with the V4 twist on the circle") {
    Run r = run({"korb", fx("v4hex.group.json"), fx("hexagon_v4.complex.json"), "--cocycle",
                 fx("alpha.cocycle.json")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["kranks"]["k0"] == 3);
    CHECK(j["results"]["kranks"]["k1"] == 0);
}

TEST_CASE("cli: bredon and chiorb") {
    Run r = run({"bredon", fx("v4.group.json"), fx("point_v4.complex.json"), "--cocycle",
                 fx("alpha.cocycle.json")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["ranks"] == json::array({1}));

    Run c = run({"chiorb", fx("z2hex.group.json"), fx("hexagon_z2.complex.json")});
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["results"]["chi_orb"] == 3);
}

TEST_CASE("cli: sectors files and the resolution") {
    Run r = run({"sectors", fx("cp23.sectors.json")});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["kranks"]["k0"] == 5);
    CHECK(j["results"]["matches_expected"] == true);

    Run s = run({"sectors-of", fx("z2hex.group.json"), fx("hexagon_z2.complex.json")});
    REQUIRE(s.code == 0);
    json sj = json::parse(s.out);
    CHECK(sj["results"]["resolution"].size() == 1);
    CHECK(sj["results"]["chi_resolution"] == 2);
}

TEST_CASE("cli: symprod value and report") {
    Run r = run({"symprod", "--n", "4", "--chi", "1", "--twisted"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["results"]["value"] == "3");

    Run rep = run({"symprod", "--n", "4", "--chi", "2", "--report"});
    REQUIRE(rep.code == 0);
    json j = json::parse(rep.out);
    for (const json& row : j["results"]["untwisted"]) CHECK(row["match"] == true);
}

TEST_CASE("cli: exit codes") {
    // unknown flag
    CHECK(run({"korb", "--bogus"}).code == 1);
    // missing file
    CHECK(run({"group", fx("missing.group.json")}).code == 1);
    // malformed file reports the JSON path
    Run bad = run({"sectors", fx("s4.group.json")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("/sectors") != std::string::npos);
    // twisted sigma_6 is feature-flagged off
    CHECK(run({"symprod", "--n", "6", "--chi", "1", "--twisted"}).code == 1);
}

TEST_CASE("cocycle files: h2_class with the default modulus |G|") {
    FiniteGroup G = group_from_json(parse_json(read_file(fx("v4.group.json")), "v4"));
    Cocycle alpha = cocycle_from_json(json{{"h2_class", 1}}, G);
    CHECK(alpha.modulus == 4);  // default m = |G|
    CHECK(alpha_regular_classes(alpha).size() == 1);
    CHECK_THROWS_WITH(cocycle_from_json(json{{"h2_class", 9}}, G),
                      Catch::Matchers::ContainsSubstring("/h2_class"));
}

TEST_CASE("cli: ORBK_ORDER_CAP overrides the group-order cap") {
    setenv("ORBK_ORDER_CAP", "20", 1);
    Run r = run({"group", fx("s4.group.json")});  // order 24 > 20
    CHECK(r.code == 1);
    CHECK(r.err.find("cap") != std::string::npos);
    unsetenv("ORBK_ORDER_CAP");
    CHECK(run({"group", fx("s4.group.json")}).code == 0);
}

TEST_CASE("cli: verify small suite passes") {
    Run r = run({"verify", "--suite", "small", "--fixtures", kFixtures});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["all_ok"] == true);
}

TEST_CASE("verify flags a tampered sector fixture") {
    // negative control: wrong Betti numbers must be flagged against the
    // expected constants
    SectorFile sf = sectors_from_json(
        parse_json(read_file(fx("cp23.sectors.json")), "cp23"));
    sf.data.entries[0].betti = std::vector<long>{1, 1, 1};  // tampered
    SectorSumResult sum = sector_sum(sf.data);
    REQUIRE(sf.expect.has_value());
    CHECK_FALSE(sum.kranks == *sf.expect);
}

TEST_CASE("cli: verify supports parallel jobs with identical output") {
    Run a = run({"verify", "--suite", "small", "--fixtures", kFixtures, "--jobs", "1"});
    Run b = run({"verify", "--suite", "small", "--fixtures", kFixtures, "--jobs", "4"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
}
