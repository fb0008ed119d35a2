#include "critcount/report.hpp"

#include <gtest/gtest.h>

using namespace critcount;
using nlohmann::json;

namespace {

std::string scenario_path(const std::string &name) { return std::string(CRITCOUNT_SCENARIO_DIR) + "/" + name; }

json points_scenario()
{
	return json::parse(R"({
		"kind": "arrangement", "dimension": 1,
		"hypersurfaces": [["1", "0"], ["1", "-1"], ["1", "-3/2"], ["1", "4"]],
		"exponents": {"seed": 7}
	})");
}

} // namespace

TEST(Scenario, ParsesArrangement)
{
	auto s = parse_scenario(points_scenario());
	EXPECT_EQ(s.kind, ScenarioKind::arrangement);
	ASSERT_TRUE(s.arrangement);
	EXPECT_EQ(s.arrangement->size(), 4u);
	EXPECT_EQ(s.arrangement->hyperplanes()[2].offset, Rational(-3, 2));
	EXPECT_EQ(s.seed, 7u);
	EXPECT_FALSE(s.tracker_seed_fixed);
}

TEST(Scenario, ParseErrors)
{
	auto bad = [](auto edit) {
		json j = points_scenario();
		edit(j);
		return j;
	};
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["kind"] = "torus"; })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["hypersurfaces"][0][1] = 0.5; })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["hypersurfaces"][0] = {"0", "1"}; })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["hypersurfaces"][1] = {"2", "0"}; })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["hypersurfaces"] = json::array(); })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["tracker"] = {{"stepsize", 1}}; })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["exponents"] = {{"values", {1, 2}}}; })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["exponents"] = {{"values", {1, 2, 0, 3}}}; })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j.erase("dimension"); })), ScenarioError);
	EXPECT_THROW(parse_scenario(bad([](json &j) { j["dimension"] = "one"; })), ScenarioError);
	EXPECT_THROW(load_scenario(scenario_path("missing.json")), ScenarioError);
}

TEST(Scenario, HypersurfaceParseErrors)
{
	json j = json::parse(R"({"kind": "hypersurface", "dimension": 2,
		"hypersurfaces": [{"terms": [{"monomial": [0, 0], "coeff": "1"}]}]})");
	EXPECT_THROW(parse_scenario(j), ScenarioError);
	j["hypersurfaces"][0]["terms"][0]["monomial"] = {1, -1};
	EXPECT_THROW(parse_scenario(j), ScenarioError);
	j["hypersurfaces"][0]["terms"][0]["monomial"] = {1, 0};
	EXPECT_NO_THROW(parse_scenario(j));
	j["hypersurfaces"][1] = j["hypersurfaces"][0];
	EXPECT_THROW(parse_scenario(j), ScenarioError);
}

TEST(Scenario, TrackerOverrides)
{
	json j = points_scenario();
	j["tracker"] = {{"max_step", 0.05}, {"seed", 99}};
	auto s = parse_scenario(j);
	EXPECT_EQ(s.tracker.max_step, 0.05);
	EXPECT_EQ(s.tracker.seed, 99u);
	EXPECT_TRUE(s.tracker_seed_fixed);
	EXPECT_EQ(s.tracker.cluster_radius, TrackerConfig{}.cluster_radius);
}

TEST(Report, FourPointsOnALine)
{
	auto r = run_scenario(load_scenario(scenario_path("four_points_on_a_line.json")));
	EXPECT_EQ(r.critical_count, 3);
	EXPECT_EQ(r.chi_combinatorial, -3);
	EXPECT_EQ(r.bounded_regions, 3);
	EXPECT_TRUE(r.verdict());
	auto j = to_json(r);
	EXPECT_EQ(j["verdict"], "pass");
	EXPECT_EQ(j["seed"], 7);
	EXPECT_EQ(j["tracker"]["cluster_radius"], 1e-6);
}

TEST(Report, FermatCubicCurve)
{
	auto r = run_scenario(load_scenario(scenario_path("fermat_d3_n2.json")));
	EXPECT_EQ(r.critical_count, 1);
	EXPECT_EQ(r.degree_sum, 4);
	EXPECT_EQ(r.chi_chern, 4);
	ASSERT_EQ(r.points.size(), 1u);
	EXPECT_FALSE(r.points[0].point.nondegenerate);
	EXPECT_TRUE(r.verdict());
}

TEST(Report, ChernSweep)
{
	auto r = run_scenario(load_scenario(scenario_path("chern_sweep_n3.json")));
	EXPECT_FALSE(r.sweep.empty());
	EXPECT_TRUE(r.verdict());
}

TEST(Report, FailedExpectationFailsVerdict)
{
	json j = points_scenario();
	j["expected"] = {{"count", 4}};
	auto r = run_scenario(parse_scenario(j));
	EXPECT_FALSE(r.verdict());
	EXPECT_EQ(to_json(r)["verdict"], "fail");
}

TEST(Report, NonEssentialArrangementFails)
{
	json j = json::parse(R"({"kind": "arrangement", "dimension": 2,
		"hypersurfaces": [["1", "0", "0"], ["1", "0", "-1"]]})");
	auto r = run_scenario(parse_scenario(j));
	EXPECT_FALSE(r.verdict());
}

TEST(Report, JsonIsByteIdenticalAcrossRuns)
{
	auto s = load_scenario(scenario_path("generic_lines.json"));
	auto a = to_json(run_scenario(s, {std::nullopt, true})).dump(2);
	auto b = to_json(run_scenario(s, {std::nullopt, true})).dump(2);
	EXPECT_EQ(a, b);
	auto c = to_json(run_scenario(s, {std::uint64_t{12}, false})).dump(2);
	EXPECT_NE(a, c);
}

TEST(Report, SeedOverrideDrivesExponentsAndTracker)
{
	auto s = load_scenario(scenario_path("four_points_on_a_line.json"));
	auto r = run_scenario(s, {std::uint64_t{42}, false});
	EXPECT_EQ(r.seed, 42u);
	EXPECT_EQ(r.tracker.seed, 42u);
	EXPECT_EQ(r.exponents.values, sample_generic_exponents(std::vector<int>{1, 1, 1, 1}, 42).values);
	EXPECT_EQ(r.critical_count, 3);
}
