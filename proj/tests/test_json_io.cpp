#include <doctest.h>

#include "fairdiv/errors.hpp"
#include "fairdiv/fixtures.hpp"
#include "fairdiv/json_io.hpp"

using namespace fairdiv;

TEST_CASE("instance parse: additive schema") {
    const auto j = nlohmann::json::parse(R"({
        "n": 2, "m": 3, "goods": ["a", "b", "c"],
        "valuations": [
            {"kind": "additive", "values": ["5", "3", "1"]},
            {"kind": "additive", "values": ["5", "1", "3"]}
        ]})");
    const InstanceFile f = parse_instance_json(j);
    CHECK(f.n == 2);
    CHECK(f.m == 3);
    CHECK(f.valuations[0].value(GoodSet::of(3, {0, 1})) == Rational(8));
    CHECK(good_label(f, 2) == "c");
}

TEST_CASE("instance parse: table schema with exact rationals") {
    const auto j = nlohmann::json::parse(R"({
        "n": 1, "m": 2,
        "valuations": [
            {"kind": "table", "m": 2, "entries": {"0": "0", "1": "0", "2": "1", "3": "7/2"}}
        ]})");
    const InstanceFile f = parse_instance_json(j);
    CHECK(f.valuations[0].value(GoodSet::of(2, {0, 1})) == Rational(7, 2));
}

TEST_CASE("instance parse: rejections name the offending location") {
    using nlohmann::json;
    // Float literal.
    CHECK_THROWS_AS(parse_instance_json(json::parse(
                        R"({"n":1,"m":1,"valuations":[{"kind":"additive","values":[3.5]}]})")),
                    usage_error);
    // Missing table key names the mask.
    try {
        parse_instance_json(json::parse(
            R"({"n":1,"m":2,"valuations":[{"kind":"table","m":2,"entries":{"0":"0","1":"1","3":"2"}}]})"));
        FAIL("expected usage_error");
    } catch (const usage_error& e) {
        CHECK(std::string(e.what()).find("mask 2") != std::string::npos);
    }
    // Valuation count mismatch.
    CHECK_THROWS_AS(parse_instance_json(json::parse(
                        R"({"n":2,"m":1,"valuations":[{"kind":"additive","values":["1"]}]})")),
                    usage_error);
    // Negative value.
    CHECK_THROWS_AS(parse_instance_json(json::parse(
                        R"({"n":1,"m":1,"valuations":[{"kind":"additive","values":["-1"]}]})")),
                    usage_error);
    // Unknown kind.
    CHECK_THROWS_AS(parse_instance_json(json::parse(
                        R"({"n":1,"m":1,"valuations":[{"kind":"mystery","values":["1"]}]})")),
                    usage_error);
}

TEST_CASE("instance parse: non-monotone tables need the explicit override") {
    const auto j = nlohmann::json::parse(R"({
        "n": 1, "m": 2,
        "valuations": [
            {"kind": "table", "m": 2, "entries": {"0": "0", "1": "3", "2": "1", "3": "2"}}
        ]})");
    CHECK_THROWS_AS(parse_instance_json(j), usage_error);
    const InstanceFile f = parse_instance_json(j, /*allow_nonmonotone=*/true);
    CHECK(f.valuations[0].value(GoodSet::of(2, {0})) == Rational(3));
}

TEST_CASE("round trip: parse(serialize(instance)) == instance, rationals bit-exact") {
    for (const Fixture& fixture : bundled_fixtures()) {
        const nlohmann::json j = instance_to_json(fixture.instance);
        const InstanceFile back = parse_instance_json(j);
        CHECK(back == fixture.instance);
        // And a second hop stays stable.
        CHECK(parse_instance_json(instance_to_json(back)) == back);
    }
}

TEST_CASE("allocation parse: overlap, unknown goods, and partial handling") {
    using nlohmann::json;
    const Allocation a = parse_allocation_json(json::parse(R"({"bundles": [[0,2],[1]]})"), 2, 3);
    CHECK(a == Allocation::of(3, {{0, 2}, {1}}));
    CHECK_THROWS_AS(parse_allocation_json(json::parse(R"({"bundles": [[0],[0]]})"), 2, 1), usage_error);
    CHECK_THROWS_AS(parse_allocation_json(json::parse(R"({"bundles": [[7],[]]})"), 2, 3), usage_error);
    CHECK_THROWS_AS(parse_allocation_json(json::parse(R"({"bundles": [[0],[]]})"), 2, 3), usage_error);
    const Allocation partial =
        parse_allocation_json(json::parse(R"({"bundles": [[0],[]]})"), 2, 3, /*allow_partial=*/true);
    CHECK_FALSE(partial.complete());
    CHECK_THROWS_AS(parse_allocation_json(json::parse(R"({"bundles": [[0]]})"), 2, 1), usage_error);
}

TEST_CASE("report serialization carries flags, witnesses, and exact c labels") {
    const auto& fig1 = fixture_by_id("fig1").instance.valuations;
    const FairnessReport rep = fairness_report(Allocation::of(3, {{0, 1}, {2}}), fig1,
                                               {Rational(1, 2), Rational(9, 10)},
                                               /*include_pareto=*/true);
    const nlohmann::json j = fairness_report_to_json(rep);
    CHECK(j.at("ef1") == true);
    CHECK(j.at("efx") == false);
    CHECK(j.at("pareto_optimal") == true);
    CHECK(j.at("c_efx").at("1/2") == true);    // 3 >= 5/2
    CHECK(j.at("c_efx").at("9/10") == false);  // 3 < 9/2
    CHECK(j.at("witnesses").at("efx").at("envious") == 1);
    CHECK(j.at("witnesses").at("efx").at("good") == 1);

    const EfxExistenceReport ex = efx_existence_report(fig1, true);
    const nlohmann::json ej = existence_report_to_json(ex);
    CHECK(ej.at("exists") == true);
    CHECK(ej.at("witness_count") == 2);
}

TEST_CASE("fixture instances all pass their own bundled assertions") {
    CHECK(bundled_fixtures().size() == 7);
    std::ostringstream sink;
    CHECK(run_all_fixtures(sink) == 0);
}

TEST_CASE("oracle-backed valuations refuse serialization") {
    InstanceFile f;
    f.n = 1;
    f.m = 5;
    f.valuations.push_back(Valuation::kneser_reduction(2, [](const GoodSet&) { return 0LL; }));
    CHECK_THROWS_AS(instance_to_json(f), usage_error);
}
