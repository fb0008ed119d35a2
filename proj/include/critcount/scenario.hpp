#pragma once

#include "critcount/arrangement.hpp"
#include "critcount/homotopy.hpp"
#include "critcount/master_function.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace critcount {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TrackerConfig, initial_step, min_step, max_step, corrector_tolerance,
                                                max_corrector_iterations, max_steps, endgame_gap, stall_window, max_refine_iterations,
                                                refine_tolerance, divergence_radius, cluster_radius, divisor_threshold,
                                                nondegeneracy_tolerance, bezout_cap, threads, seed, multistart_starts,
                                                multistart_radius, multistart_max_iterations, local_degree_epsilon,
                                                local_degree_trials, local_degree_max_radius)

class ScenarioError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

enum class ScenarioKind
{
	arrangement,
	hypersurface,
	chern_sweep
};

inline std::string to_string(ScenarioKind k)
{
	switch (k)
	{
	case ScenarioKind::arrangement:
		return "arrangement";
	case ScenarioKind::hypersurface:
		return "hypersurface";
	case ScenarioKind::chern_sweep:
		return "chern-sweep";
	}
	return "?";
}

/**
 * A verification job read from a JSON scenario file.
 *
 * Geometry is exact: rationals are "p/q" strings, never JSON numbers.
 * Complex exponents are [re, im] pairs. See README for the field list.
 */
struct Scenario
{
	ScenarioKind kind = ScenarioKind::arrangement;
	std::string name;
	int dimension = 0;
	std::optional<AffineArrangement> arrangement;
	std::vector<Hypersurface> hypersurfaces;
	std::optional<Exponents> exponents;
	std::uint64_t seed = 1;
	std::vector<std::uint64_t> stability_seeds;
	TrackerConfig tracker;
	/// Set when the scenario file overrides tracker.seed; otherwise the
	/// exponent seed drives the homotopy as well.
	bool tracker_seed_fixed = false;
	std::optional<int> expected_count;
	std::optional<std::int64_t> expected_chi;
	int sweep_max_dim = 0;
	int sweep_max_deg = 0;
	int sweep_max_components = 0;
	nlohmann::ordered_json source;
};

namespace detail {

inline Rational json_rational(const nlohmann::json &j, const std::string &where)
{
	if (!j.is_string())
		throw ScenarioError(where + ": rationals must be strings such as \"3/4\"");
	try
	{
		return parse_rational(j.get<std::string>());
	}
	catch (const std::invalid_argument &e)
	{
		throw ScenarioError(where + ": " + e.what());
	}
}

inline const nlohmann::json &require(const nlohmann::json &j, const char *key)
{
	if (!j.contains(key))
		throw ScenarioError(std::string("missing field '") + key + "'");
	return j.at(key);
}

inline Hyperplane parse_hyperplane_row(const nlohmann::json &row, int n, const std::string &where)
{
	if (!row.is_array() || static_cast<int>(row.size()) != n + 1)
		throw ScenarioError(where + ": expected " + std::to_string(n + 1) + " entries (coefficients then offset)");
	Hyperplane h;
	for (int i = 0; i < n; ++i)
		h.coeffs.push_back(json_rational(row[i], where));
	h.offset = json_rational(row[n], where);
	return h;
}

inline Hypersurface parse_monomial_map(const nlohmann::json &obj, int n, const std::string &where)
{
	const auto &terms = obj.is_object() ? require(obj, "terms") : obj;
	if (!terms.is_array() || terms.empty())
		throw ScenarioError(where + ": expected a nonempty term list");
	RationalPolynomial p(n);
	for (const auto &t : terms)
	{
		const auto &mono = require(t, "monomial");
		if (!mono.is_array() || static_cast<int>(mono.size()) != n)
			throw ScenarioError(where + ": monomial must list " + std::to_string(n) + " exponents");
		Monomial m;
		for (const auto &e : mono)
		{
			if (!e.is_number_integer() || e.get<int>() < 0)
				throw ScenarioError(where + ": exponents must be nonnegative integers");
			m.push_back(e.get<int>());
		}
		p.add_term(m, json_rational(require(t, "coeff"), where));
	}
	if (p.is_zero() || p.is_constant())
		throw ScenarioError(where + ": hypersurface polynomial is constant");
	return {std::move(p)};
}

inline Complex parse_complex(const nlohmann::json &j, const std::string &where)
{
	if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
		return {j[0].get<double>(), j[1].get<double>()};
	if (j.is_number())
		return {j.get<double>(), 0.0};
	throw ScenarioError(where + ": complex numbers are [re, im] pairs");
}

inline Scenario parse_scenario_fields(const nlohmann::json &j)
{
	Scenario s;
	s.source = nlohmann::ordered_json::parse(j.dump());
	if (!j.is_object())
		throw ScenarioError("scenario must be a JSON object");
	s.name = j.value("name", std::string{});

	auto kind = require(j, "kind").get<std::string>();
	if (kind == "arrangement")
		s.kind = ScenarioKind::arrangement;
	else if (kind == "hypersurface")
		s.kind = ScenarioKind::hypersurface;
	else if (kind == "chern-sweep")
		s.kind = ScenarioKind::chern_sweep;
	else
		throw ScenarioError("unknown scenario kind '" + kind + "'");

	if (j.contains("tracker"))
	{
		const auto &over = j.at("tracker");
		nlohmann::json defaults = TrackerConfig{};
		for (const auto &[key, value] : over.items())
			if (!defaults.contains(key))
				throw ScenarioError("unknown tracker field '" + key + "'");
		defaults.update(over);
		try
		{
			s.tracker = defaults.get<TrackerConfig>();
		}
		catch (const nlohmann::json::exception &e)
		{
			throw ScenarioError(std::string("bad tracker field: ") + e.what());
		}
		s.tracker_seed_fixed = over.contains("seed");
	}

	if (s.kind == ScenarioKind::chern_sweep)
	{
		s.sweep_max_dim = require(j, "max_dim").get<int>();
		s.sweep_max_deg = require(j, "max_deg").get<int>();
		s.sweep_max_components = require(j, "max_components").get<int>();
		if (s.sweep_max_dim < 1 || s.sweep_max_deg < 1 || s.sweep_max_components < 1)
			throw ScenarioError("sweep bounds must be positive");
		return s;
	}

	s.dimension = require(j, "dimension").get<int>();
	if (s.dimension < 1)
		throw ScenarioError("dimension must be positive");
	const auto &hs = require(j, "hypersurfaces");
	if (!hs.is_array() || hs.empty())
		throw ScenarioError("at least one hypersurface is required (a constant master function has no critical points)");

	for (size_t i = 0; i < hs.size(); ++i)
	{
		std::string where = "hypersurfaces[" + std::to_string(i) + "]";
		if (s.kind == ScenarioKind::arrangement)
		{
			auto h = detail::parse_hyperplane_row(hs[i], s.dimension, where);
			s.hypersurfaces.push_back({h.polynomial()});
		}
		else
			s.hypersurfaces.push_back(detail::parse_monomial_map(hs[i], s.dimension, where));
	}
	if (s.kind == ScenarioKind::arrangement)
	{
		std::vector<Hyperplane> rows;
		for (size_t i = 0; i < hs.size(); ++i)
			rows.push_back(detail::parse_hyperplane_row(hs[i], s.dimension, "hypersurfaces"));
		try
		{
			s.arrangement.emplace(s.dimension, std::move(rows));
		}
		catch (const std::invalid_argument &e)
		{
			throw ScenarioError(e.what());
		}
	}
	else
	{
		for (size_t i = 0; i < s.hypersurfaces.size(); ++i)
			for (size_t k = 0; k < i; ++k)
				if (s.hypersurfaces[k].poly == s.hypersurfaces[i].poly)
					throw ScenarioError("hypersurfaces " + std::to_string(k) + " and " + std::to_string(i) +
					                    " are identical");
	}

	if (j.contains("exponents"))
	{
		const auto &e = j.at("exponents");
		if (e.contains("seed"))
			s.seed = e.at("seed").get<std::uint64_t>();
		if (e.contains("values"))
		{
			Exponents ex;
			for (const auto &v : e.at("values"))
				ex.values.push_back(detail::parse_complex(v, "exponents.values"));
			if (ex.size() != s.hypersurfaces.size())
				throw ScenarioError("exponent count does not match hypersurface count");
			for (const auto &v : ex.values)
				if (v == Complex(0.0, 0.0))
					throw ScenarioError("exponents must be nonzero");
			s.exponents = std::move(ex);
		}
	}
	if (j.contains("stability_seeds"))
		s.stability_seeds = j.at("stability_seeds").get<std::vector<std::uint64_t>>();
	if (j.contains("expected"))
	{
		const auto &e = j.at("expected");
		if (e.contains("count"))
			s.expected_count = e.at("count").get<int>();
		if (e.contains("chi"))
			s.expected_chi = e.at("chi").get<std::int64_t>();
	}
	return s;
}

} // namespace detail

inline Scenario parse_scenario(const nlohmann::json &j)
{
	try
	{
		return detail::parse_scenario_fields(j);
	}
	catch (const nlohmann::json::exception &e)
	{
		throw ScenarioError(std::string("malformed scenario: ") + e.what());
	}
}

inline Scenario load_scenario(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ScenarioError("cannot open scenario file '" + path + "'");
	nlohmann::json j;
	try
	{
		in >> j;
	}
	catch (const nlohmann::json::parse_error &e)
	{
		throw ScenarioError("'" + path + "' is not valid JSON: " + e.what());
	}
	return parse_scenario(j);
}

} // namespace critcount
