// One line per acceptance criterion; exit status 0 only if every line passes.

#include "properties.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>

using namespace critcount;
using nlohmann::json;

namespace {

struct Outcome
{
	bool pass = true;
	std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::int64_t sign(int n) { return n % 2 == 0 ? 1 : -1; }

std::int64_t power(std::int64_t b, int e)
{
	std::int64_t r = 1;
	while (e-- > 0)
		r *= b;
	return r;
}

json arrangement_json(int n, const std::vector<std::vector<std::string>> &rows)
{
	return {{"kind", "arrangement"}, {"dimension", n}, {"hypersurfaces", rows}};
}

Outcome points_on_a_line()
{
	Outcome out;
	double slowest = 0.0;
	int cases = 0;
	for (int k = 2; k <= 6; ++k)
	{
		std::vector<std::vector<std::string>> rows;
		for (int i = 0; i < k; ++i)
			rows.push_back({"1", to_string(-Rational(3 * i * i - 4, 2 * i + 3))});
		auto scenario = parse_scenario(arrangement_json(1, rows));
		for (std::uint64_t seed = 1; seed <= 5; ++seed)
		{
			auto start = std::chrono::steady_clock::now();
			auto r = run_scenario(scenario, {seed, false});
			double t = seconds_since(start);
			slowest = std::max(slowest, t);
			++cases;
			bool ok = r.critical_count == k - 1 && r.solve.all_nondegenerate() && r.verdict() && t < 1.0;
			for (const auto &p : r.points)
				ok = ok && p.morse && p.morse->index == 1 && p.morse->paired;
			if (!ok)
			{
				out.pass = false;
				out.detail += " [k=" + std::to_string(k) + " seed=" + std::to_string(seed) +
				              " count=" + std::to_string(r.critical_count) + "]";
			}
		}
	}
	out.detail = std::to_string(cases) + " cases, slowest " + std::to_string(slowest) + " s" + out.detail;
	return out;
}

Outcome fermat()
{
	Outcome out;
	double slowest = 0.0;
	for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}})
	{
		json terms = json::array();
		for (int i = 0; i < n; ++i)
		{
			std::vector<int> m(n, 0);
			m[i] = d;
			terms.push_back({{"monomial", m}, {"coeff", "1"}});
		}
		terms.push_back({{"monomial", std::vector<int>(n, 0)}, {"coeff", "1"}});
		json j = {{"kind", "hypersurface"}, {"dimension", n}, {"hypersurfaces", {{{"terms", terms}}}}};
		auto start = std::chrono::steady_clock::now();
		auto r = run_scenario(parse_scenario(j));
		double t = seconds_since(start);
		slowest = std::max(slowest, t);

		const std::int64_t degree = power(d - 1, n);
		bool ok = r.critical_count == 1 && r.points.size() == 1 && r.verdict() && t < 10.0;
		ok = ok && r.chi_chern == sign(n) * degree && r.degree_sum == degree;
		if (ok)
		{
			const auto &p = r.points[0];
			ok = p.point.location.norm() < 1e-6;
			if (d == 2)
				ok = ok && p.point.nondegenerate && p.morse && p.morse->index == n && p.morse->paired;
			else
				ok = ok && !p.point.nondegenerate && p.point.local_degree == degree;
		}
		if (!ok)
		{
			out.pass = false;
			out.detail += " [d=" + std::to_string(d) + " n=" + std::to_string(n) + "]";
		}
	}
	out.detail = "5 cases, slowest " + std::to_string(slowest) + " s" + out.detail;
	return out;
}

Outcome arrangements()
{
	using Rows = std::vector<std::vector<std::string>>;
	std::vector<std::pair<int, Rows>> cases{
	    {1, {{"1", "0"}, {"1", "-1"}, {"1", "-3"}}},
	    {2, {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "1", "-1"}}},
	    {2, {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "1", "0"}, {"1", "-1", "-1"}}},
	    {2, {{"1", "0", "0"}, {"1", "0", "-1"}, {"0", "1", "0"}, {"0", "1", "-1"}}},
	    {2, {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "1", "-1"}, {"1", "-2", "3"}, {"2", "1/3", "-5/2"}}},
	    {2, {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "-1", "0"}, {"1", "0", "-1"}, {"0", "1", "-1"}}},
	    {2, {{"1", "0", "0"}, {"0", "1", "0"}, {"1", "1", "0"}, {"1", "2", "0"}, {"0", "1", "-1"}}},
	    {3, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"1", "1", "1", "-1"}}},
	    {3, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"1", "1", "1", "-1"}, {"1", "-2", "1/2", "3"}}},
	    {3, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"1", "1", "1", "0"}, {"1", "0", "0", "-1"}}},
	    {3, {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"1", "1", "0", "-1"}, {"1", "1", "1", "-1"}}},
	};
	Outcome out;
	int index = 0;
	for (const auto &[n, rows] : cases)
	{
		json j = arrangement_json(n, rows);
		j["stability_seeds"] = {2, 3, 4, 5};
		auto scenario = parse_scenario(j);
		auto r = run_scenario(scenario, {std::uint64_t{1}, true});
		bool ok = r.verdict() && r.chi_combinatorial && r.critical_count == sign(n) * *r.chi_combinatorial &&
		          r.stability_counts.size() == 4 && r.oracle_count;
		if (!ok)
		{
			out.pass = false;
			std::ostringstream s;
			s << " [case " << index << ": count " << r.critical_count << " chi "
			  << r.chi_combinatorial.value_or(0) << "]";
			for (const auto &c : r.identities)
				if (!c.pass)
					s << " {" << c.name << ": " << c.detail << "}";
			out.detail += s.str();
		}
		++index;
	}
	out.detail = std::to_string(cases.size()) + " arrangements x 5 seeds, oracle checked" + out.detail;
	return out;
}

Outcome chern_sweep()
{
	auto start = std::chrono::steady_clock::now();
	auto rows = sweep_chern(4, 4, 5);
	double t = seconds_since(start);
	size_t log_chern = 0, component = 0;
	for (const auto &row : rows)
	{
		log_chern += row.log_chern_holds;
		component += row.component.holds;
	}
	Outcome out;
	out.pass = log_chern == rows.size() && component == rows.size() && t < 5.0;
	out.detail = std::to_string(rows.size()) + " configurations, log Chern rows " + std::to_string(log_chern) + ", component rows " +
	             std::to_string(component) + ", " + std::to_string(t) + " s";
	return out;
}

bool is_generic(const IntersectionPoset &poset, int n, int m)
{
	std::vector<int> per_codim(n + 1, 0);
	for (const auto &f : poset.flats)
		++per_codim[f.codimension];
	std::int64_t binom = 1;
	for (int k = 0; k <= n; ++k)
	{
		if (per_codim[k] != binom)
			return false;
		binom = binom * (m - k) / (k + 1);
	}
	return true;
}

Outcome cross_pipeline()
{
	Outcome out;
	Rng rng(515);
	int generic = 0, bounded = 0;
	for (int n = 1; n <= 3; ++n)
		for (int m = 1; m <= 6; ++m)
			for (int rep = 0; rep < 5; ++rep)
			{
				std::vector<Hyperplane> hs;
				for (int i = 0; i < m; ++i)
				{
					Hyperplane h;
					for (int k = 0; k < n; ++k)
						h.coeffs.push_back(Rational(static_cast<int>(rng.next() % 41) - 20, 1 + static_cast<int>(rng.next() % 7)));
					h.offset = Rational(static_cast<int>(rng.next() % 41) - 20, 1 + static_cast<int>(rng.next() % 7));
					hs.push_back(h);
				}
				std::optional<AffineArrangement> parsed;
				try
				{
					parsed.emplace(n, hs);
				}
				catch (const std::invalid_argument &)
				{
					continue;
				}
				const auto &arr = *parsed;
				auto poset = build_poset(arr);
				if (!is_generic(poset, n, m))
					continue;
				++generic;
				auto chi = euler_characteristic_complement(poset);
				DivisorConfig dc{n, std::vector<int>(m + 1, 1)};
				bool ok = chi == euler_complement_inclusion_exclusion(dc) && sign(n) * chi == chern_log_top(dc);
				if (is_essential(poset))
				{
					++bounded;
					ok = ok && bounded_regions_oracle(arr) == sign(n) * chi;
				}
				if (!ok)
				{
					out.pass = false;
					out.detail += " [n=" + std::to_string(n) + " m=" + std::to_string(m) + "]";
				}
			}
	// non-generic real arrangements against the bounded-region count
	for (int trial = 0; trial < 150; ++trial)
	{
		int n = 1 + trial % 3;
		auto arr = oracle::random_arrangement(rng, n, 2 + static_cast<int>(rng.next() % 4));
		auto poset = build_poset(arr);
		if (!is_essential(poset))
			continue;
		++bounded;
		if (bounded_regions_oracle(arr) != sign(n) * euler_characteristic_complement(poset))
		{
			out.pass = false;
			out.detail += " [bounded regions, trial " + std::to_string(trial) + "]";
		}
	}
	out.pass = out.pass && generic >= 50 && bounded >= 50;
	out.detail = std::to_string(generic) + " generic configurations, " + std::to_string(bounded) +
	             " bounded-region comparisons" + out.detail;
	return out;
}

Outcome properties_suite()
{
	double hess = properties::hessian_identity_error(100, 61);
	double block = properties::block_hessian_error(100, 62);
	int poset = properties::poset_violations(200, 63);
	int ring = properties::chern_ring_violations(300, 64);
	Outcome out;
	out.pass = hess <= 1e-5 && block <= 1e-5 && poset == 0 && ring == 0;
	char buf[256];
	std::snprintf(buf, sizeof buf,
	              "Hessian identity max rel err %.2e, block Hessian max rel err %.2e, poset violations %d, ring "
	              "violations %d",
	              hess, block, poset, ring);
	out.detail = buf;
	return out;
}

} // namespace

int main()
{
	std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
	    {"points on a line: N-2 nondegenerate index-1 critical points", points_on_a_line},
	    {"Fermat hypersurface: one point at the origin, local degree (d-1)^n", fermat},
	    {"arrangements: count == (-1)^n chi, seed-stable, oracle agrees", arrangements},
	    {"log Chern sweep n<=4, N<=5, d<=4 with component identity", chern_sweep},
	    {"poset chi == Chern chi == bounded-region count", cross_pipeline},
	    {"finite-difference Hessians, poset laws, Chern ring laws", properties_suite},
	};
	bool all = true;
	int number = 1;
	for (const auto &[name, run] : criteria)
	{
		Outcome o;
		try
		{
			o = run();
		}
		catch (const std::exception &e)
		{
			o = {false, std::string("exception: ") + e.what()};
		}
		all = all && o.pass;
		std::cout << "criterion " << number++ << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << "  (" << o.detail
		          << ")" << std::endl;
	}
	return all ? 0 : 1;
}
