#pragma once

#include "critcount/arrangement.hpp"
#include "critcount/chern.hpp"
#include "critcount/critical_solver.hpp"
#include "critcount/morse.hpp"
#include "critcount/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace critcount {

/// One checked identity; the verdict passes only if all of them do.
struct IdentityCheck
{
	std::string name;
	bool pass = false;
	std::string detail;
};

struct PointRecord
{
	CriticalPoint point;
	std::optional<MorseData> morse;
	/// Ball radius used for the local degree of a degenerate point; chosen
	/// heuristically from the distance to the nearest other endpoint.
	std::optional<double> isolation_radius;
	std::string note;
};

struct Report
{
	Scenario scenario;
	std::uint64_t seed = 0;
	Exponents exponents;
	TrackerConfig tracker;
	std::optional<std::int64_t> chi_combinatorial;
	std::optional<std::int64_t> chi_chern;
	std::optional<std::int64_t> bounded_regions;
	int critical_count = 0;
	int degree_sum = 0;
	SolveReport solve;
	std::vector<PointRecord> points;
	std::vector<std::pair<std::uint64_t, int>> stability_counts;
	std::optional<int> oracle_count;
	std::vector<ChernSweepRow> sweep;
	std::vector<IdentityCheck> identities;

	bool verdict() const
	{
		return !identities.empty() &&
		       std::all_of(identities.begin(), identities.end(), [](const IdentityCheck &c) { return c.pass; });
	}
};

struct RunOptions
{
	std::optional<std::uint64_t> seed;
	bool oracle = false;
};

namespace detail {

inline std::int64_t sign_power(int n) { return n % 2 == 0 ? 1 : -1; }

inline void check(Report &r, std::string name, bool pass, std::string detail = {})
{
	r.identities.push_back({std::move(name), pass, std::move(detail)});
}

inline std::string eq_detail(std::int64_t lhs, std::int64_t rhs)
{
	return std::to_string(lhs) + (lhs == rhs ? " == " : " != ") + std::to_string(rhs);
}

inline void morse_checks(Report &r, int n)
{
	int checked = 0, good = 0;
	for (const auto &rec : r.points)
	{
		if (!rec.point.nondegenerate)
			continue;
		++checked;
		if (rec.morse && rec.morse->paired && rec.morse->index == n)
			++good;
	}
	check(r, "morse index n and paired spectrum", checked == good,
	      std::to_string(good) + "/" + std::to_string(checked) + " nondegenerate points");
}

inline void analyse_points(Report &r, const MasterFunction &mf, const TrackerConfig &cfg, bool degenerate_degrees)
{
	for (const auto &p : r.solve.points)
	{
		PointRecord rec;
		rec.point = p;
		if (p.nondegenerate)
		{
			try
			{
				rec.morse = index_and_pairing(real_hessian(mf, p.location, cfg.divisor_threshold));
			}
			catch (const NearSingular &e)
			{
				rec.note = e.what();
			}
		}
		else if (degenerate_degrees)
		{
			try
			{
				double radius = isolation_radius(r.solve, p.location, cfg);
				rec.isolation_radius = radius;
				rec.point.local_degree = local_degree(mf, p.location, radius, cfg);
			}
			catch (const DegreeAmbiguous &e)
			{
				rec.note = e.what();
			}
		}
		r.points.push_back(std::move(rec));
	}
	r.degree_sum = 0;
	for (const auto &rec : r.points)
		r.degree_sum += rec.point.local_degree.value_or(0);
}

inline void solver_checks(Report &r)
{
	const auto &s = r.solve;
	check(r, "solver certified (no failed paths)", s.certified(), std::to_string(s.paths_failed) + " failed");
	std::uint64_t total = s.paths_kept() + s.paths_diverged + s.paths_on_divisor + s.paths_failed;
	check(r, "path conservation", total == s.paths_tracked,
	      std::to_string(s.paths_tracked) + " tracked, " + std::to_string(total) + " accounted");
}

inline TrackerConfig tracker_for(const Scenario &sc, std::uint64_t seed)
{
	TrackerConfig cfg = sc.tracker;
	if (!sc.tracker_seed_fixed)
		cfg.seed = seed;
	return cfg;
}

inline void run_critical_pipeline(Report &r, const Scenario &sc, std::int64_t chi, const RunOptions &opt)
{
	const int n = sc.dimension;
	const std::int64_t expected = sign_power(n) * chi;
	MasterFunction base(n, sc.hypersurfaces, Exponents{std::vector<Complex>(sc.hypersurfaces.size(), 1.0)});
	auto degrees = base.degrees();
	r.exponents = sc.exponents ? *sc.exponents : sample_generic_exponents(degrees, r.seed);
	MasterFunction mf = base.with_exponents(r.exponents);
	r.tracker = tracker_for(sc, r.seed);

	r.solve = solve_total_degree(clear_denominators(mf), r.tracker);
	r.critical_count = r.solve.count;
	analyse_points(r, mf, r.tracker, true);

	solver_checks(r);
	if (r.solve.all_nondegenerate())
	{
		check(r, "critical count == (-1)^n chi", r.critical_count == expected,
		      eq_detail(r.critical_count, expected));
	}
	check(r, "local degree sum == (-1)^n chi", r.degree_sum == expected, eq_detail(r.degree_sum, expected));
	bool degrees_resolved = std::all_of(r.points.begin(), r.points.end(),
	                                    [](const PointRecord &p) { return p.point.local_degree.has_value(); });
	check(r, "local degrees resolved", degrees_resolved);
	morse_checks(r, n);

	if (!sc.exponents && !sc.stability_seeds.empty())
	{
		bool stable = true;
		for (auto s : sc.stability_seeds)
		{
			auto cfg = tracker_for(sc, s);
			auto rerun = solve_total_degree(clear_denominators(base.with_exponents(sample_generic_exponents(degrees, s))), cfg);
			r.stability_counts.emplace_back(s, rerun.count);
			stable = stable && rerun.count == r.critical_count && rerun.certified();
		}
		check(r, "count stable across exponent seeds", stable);
	}
	if (opt.oracle)
	{
		auto oracle = multistart_newton_oracle(mf, r.tracker);
		r.oracle_count = oracle.count;
		check(r, "multistart oracle agrees with homotopy",
		      same_point_set(r.solve.points, oracle.points, r.tracker.cluster_radius),
		      std::to_string(oracle.count) + " oracle points");
	}
	if (sc.expected_count)
		check(r, "expected count", r.critical_count == *sc.expected_count,
		      eq_detail(r.critical_count, *sc.expected_count));
	if (sc.expected_chi)
		check(r, "expected chi", chi == *sc.expected_chi, eq_detail(chi, *sc.expected_chi));
}

} // namespace detail

/**
 * Runs one scenario end to end.
 *
 * arrangement:  poset chi, bounded-region oracle, homotopy solve, Morse data.
 * hypersurface: Chern chi (closure plus the hyperplane at infinity, normal
 *               crossing assumed), homotopy solve, local degrees, Morse data.
 * chern-sweep:  both sides of the log Gauss-Bonnet identity and of the
 *               component identity over a grid of degree tuples.
 */
inline Report run_scenario(const Scenario &sc, const RunOptions &opt = {})
{
	Report r;
	r.scenario = sc;
	r.seed = opt.seed.value_or(sc.seed);
	r.tracker = detail::tracker_for(sc, r.seed);

	switch (sc.kind)
	{
	case ScenarioKind::chern_sweep:
	{
		r.sweep = sweep_chern(sc.sweep_max_dim, sc.sweep_max_deg, sc.sweep_max_components);
		size_t log_chern = 0, component = 0;
		for (const auto &row : r.sweep)
		{
			log_chern += row.log_chern_holds;
			component += row.component.holds;
		}
		detail::check(r, "top log Chern number == (-1)^n chi(complement)", log_chern == r.sweep.size(),
		              std::to_string(log_chern) + "/" + std::to_string(r.sweep.size()) + " rows");
		detail::check(r, "component identity for chi(D)", component == r.sweep.size(),
		              std::to_string(component) + "/" + std::to_string(r.sweep.size()) + " rows");
		break;
	}
	case ScenarioKind::arrangement:
	{
		auto poset = build_poset(*sc.arrangement);
		r.chi_combinatorial = euler_characteristic_complement(poset);
		bool essential = is_essential(poset);
		detail::check(r, "arrangement is essential", essential);
		if (!essential)
			break;
		if (sc.arrangement->size() <= 16)
		{
			r.bounded_regions = bounded_regions_oracle(*sc.arrangement);
			std::int64_t signed_chi = detail::sign_power(sc.dimension) * *r.chi_combinatorial;
			detail::check(r, "bounded regions == (-1)^n chi", *r.bounded_regions == signed_chi,
			              detail::eq_detail(*r.bounded_regions, signed_chi));
		}
		detail::run_critical_pipeline(r, sc, *r.chi_combinatorial, opt);
		break;
	}
	case ScenarioKind::hypersurface:
	{
		DivisorConfig dc{sc.dimension, {}};
		for (const auto &h : sc.hypersurfaces)
			dc.degrees.push_back(h.degree());
		dc.degrees.push_back(1);
		std::int64_t top = chern_log_top(dc);
		std::int64_t chi = detail::sign_power(sc.dimension) * top;
		r.chi_chern = chi;
		std::int64_t chi_ie = euler_complement_inclusion_exclusion(dc);
		detail::check(r, "Chern chi == inclusion-exclusion chi", chi == chi_ie, detail::eq_detail(chi, chi_ie));
		detail::run_critical_pipeline(r, sc, chi, opt);
		break;
	}
	}
	return r;
}

namespace detail {

inline nlohmann::ordered_json complex_json(const Complex &c) { return {c.real(), c.imag()}; }

inline nlohmann::ordered_json finite_or_null(double v)
{
	return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

} // namespace detail

/// Machine-readable report. Contains no timestamps, so identical inputs give
/// byte-identical output.
inline nlohmann::ordered_json to_json(const Report &r)
{
	using nlohmann::ordered_json;
	ordered_json j;
	j["scenario"] = r.scenario.source;
	j["kind"] = to_string(r.scenario.kind);
	j["seed"] = r.seed;
	j["tracker"] = nlohmann::json(r.tracker);
	if (r.scenario.kind != ScenarioKind::chern_sweep)
	{
		ordered_json ex = ordered_json::array();
		for (const auto &l : r.exponents.values)
			ex.push_back(detail::complex_json(l));
		j["exponents"] = ex;
		j["chi_combinatorial"] = r.chi_combinatorial ? ordered_json(*r.chi_combinatorial) : ordered_json(nullptr);
		j["chi_chern"] = r.chi_chern ? ordered_json(*r.chi_chern) : ordered_json(nullptr);
		j["bounded_regions"] = r.bounded_regions ? ordered_json(*r.bounded_regions) : ordered_json(nullptr);
		j["critical_count"] = r.critical_count;
		j["all_nondegenerate"] = r.solve.all_nondegenerate();
		j["degree_sum"] = r.degree_sum;
		j["paths"] = {{"tracked", r.solve.paths_tracked},
		              {"kept", r.solve.paths_kept()},
		              {"diverged", r.solve.paths_diverged},
		              {"on_divisor", r.solve.paths_on_divisor},
		              {"failed", r.solve.paths_failed}};
		ordered_json pts = ordered_json::array();
		for (const auto &rec : r.points)
		{
			ordered_json p;
			ordered_json loc = ordered_json::array();
			for (Eigen::Index i = 0; i < rec.point.location.size(); ++i)
				loc.push_back(detail::complex_json(rec.point.location(i)));
			p["location"] = loc;
			p["residual"] = rec.point.residual;
			p["nondegenerate"] = rec.point.nondegenerate;
			p["local_degree"] = rec.point.local_degree ? ordered_json(*rec.point.local_degree) : ordered_json(nullptr);
			p["condition"] = detail::finite_or_null(rec.point.condition);
			p["path_multiplicity"] = rec.point.multiplicity;
			if (rec.isolation_radius)
				p["isolation_radius"] = *rec.isolation_radius;
			if (rec.morse)
				p["morse"] = {{"index", rec.morse->index},
				              {"paired", rec.morse->paired},
				              {"min_abs_eigenvalue", rec.morse->min_abs_eigenvalue}};
			else
				p["morse"] = nullptr;
			if (!rec.note.empty())
				p["note"] = rec.note;
			pts.push_back(std::move(p));
		}
		j["points"] = pts;
		if (!r.stability_counts.empty())
		{
			ordered_json st = ordered_json::array();
			for (const auto &[s, c] : r.stability_counts)
				st.push_back({{"seed", s}, {"count", c}});
			j["stability"] = st;
		}
		if (r.oracle_count)
			j["oracle_count"] = *r.oracle_count;
	}
	else
	{
		ordered_json rows = ordered_json::array();
		for (const auto &row : r.sweep)
			rows.push_back({{"n", row.config.ambient_dim},
			                {"degrees", row.config.degrees},
			                {"chern_top", row.chern_top},
			                {"chi_complement", row.chi_complement},
			                {"log_chern_holds", row.log_chern_holds},
			                {"component_lhs", row.component.lhs},
			                {"component_rhs", row.component.rhs},
			                {"component_holds", row.component.holds}});
		j["rows"] = rows;
	}
	ordered_json ids = ordered_json::array();
	for (const auto &c : r.identities)
		ids.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
	j["identities"] = ids;
	j["verdict"] = r.verdict() ? "pass" : "fail";
	return j;
}

inline std::string to_text(const Report &r)
{
	std::ostringstream out;
	out << "scenario: " << (r.scenario.name.empty() ? "(unnamed)" : r.scenario.name) << " ["
	    << to_string(r.scenario.kind) << "]\n";
	if (r.scenario.kind == ScenarioKind::chern_sweep)
	{
		out << "rows: " << r.sweep.size() << "\n";
	}
	else
	{
		out << "dimension: " << r.scenario.dimension << "   seed: " << r.seed << "\n";
		if (r.chi_combinatorial)
			out << "chi (intersection poset): " << *r.chi_combinatorial << "\n";
		if (r.chi_chern)
			out << "chi (Chern classes): " << *r.chi_chern << "\n";
		if (r.bounded_regions)
			out << "bounded regions: " << *r.bounded_regions << "\n";
		out << "paths: " << r.solve.paths_tracked << " tracked, " << r.solve.paths_kept() << " critical, "
		    << r.solve.paths_diverged << " at infinity, " << r.solve.paths_on_divisor << " on divisor, "
		    << r.solve.paths_failed << " failed\n";
		out << "critical points: " << r.critical_count << "   degree sum: " << r.degree_sum << "\n";
		for (const auto &rec : r.points)
		{
			out << "  x = (";
			for (Eigen::Index i = 0; i < rec.point.location.size(); ++i)
			{
				auto c = rec.point.location(i);
				out << (i ? ", " : "") << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
			}
			out << ")  residual " << rec.point.residual << (rec.point.nondegenerate ? "  nondegenerate" : "  degenerate");
			if (rec.point.local_degree)
				out << "  degree " << *rec.point.local_degree;
			if (rec.isolation_radius)
				out << " (radius " << *rec.isolation_radius << ")";
			if (rec.morse)
				out << "  index " << rec.morse->index << (rec.morse->paired ? " paired" : " UNPAIRED");
			if (!rec.note.empty())
				out << "  [" << rec.note << "]";
			out << "\n";
		}
	}
	for (const auto &c : r.identities)
		out << (c.pass ? "PASS  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
	out << "verdict: " << (r.verdict() ? "pass" : "fail") << "\n";
	return out.str();
}

} // namespace critcount
