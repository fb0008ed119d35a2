#include "critcount/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int emit(const critcount::Report &report, bool json, const std::string &out_path)
{
	std::string text = json ? critcount::to_json(report).dump(2) + "\n" : critcount::to_text(report);
	if (out_path.empty())
		std::cout << text;
	else
	{
		std::ofstream out(out_path);
		if (!out)
		{
			std::cerr << "error: cannot write '" << out_path << "'\n";
			return 2;
		}
		out << text;
	}
	return report.verdict() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Count critical points of master functions and check them against Euler characteristics."};
	app.require_subcommand(1);

	auto *verify = app.add_subcommand("verify", "run a scenario file");
	std::string scenario_path, out_path;
	std::optional<std::uint64_t> seed;
	bool oracle = false, json = false;
	verify->add_option("scenario", scenario_path, "scenario JSON file")->required();
	verify->add_option("--seed", seed, "override the exponent seed");
	verify->add_option("--out", out_path, "write the report here instead of stdout");
	verify->add_flag("--oracle", oracle, "also run the multistart Newton oracle");
	verify->add_flag("--json", json, "machine-readable report");

	auto *sweep = app.add_subcommand("sweep-chern", "log Chern number sweep over degree tuples");
	int max_dim = 0, max_deg = 0, max_components = 0;
	sweep->add_option("--max-dim", max_dim)->required()->check(CLI::PositiveNumber);
	sweep->add_option("--max-deg", max_deg)->required()->check(CLI::PositiveNumber);
	sweep->add_option("--max-components", max_components)->required()->check(CLI::PositiveNumber);
	sweep->add_option("--out", out_path, "write the report here instead of stdout");
	sweep->add_flag("--json", json, "machine-readable report");

	CLI11_PARSE(app, argc, argv);

	try
	{
		if (*verify)
		{
			auto scenario = critcount::load_scenario(scenario_path);
			return emit(critcount::run_scenario(scenario, {seed, oracle}), json, out_path);
		}
		critcount::Scenario s;
		s.kind = critcount::ScenarioKind::chern_sweep;
		s.name = "sweep-chern";
		s.sweep_max_dim = max_dim;
		s.sweep_max_deg = max_deg;
		s.sweep_max_components = max_components;
		s.source = {{"kind", "chern-sweep"}, {"max_dim", max_dim}, {"max_deg", max_deg}, {"max_components", max_components}};
		return emit(critcount::run_scenario(s), json, out_path);
	}
	catch (const std::exception &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
}
