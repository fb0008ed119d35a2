#pragma once

#include "critcount/homotopy.hpp"
#include "critcount/master_function.hpp"
#include "critcount/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace critcount {

/**
 * The critical equations with denominators cleared: equation i is
 * f_1 ... f_m * (d log phi)_i, i.e. sum_I lambda_I (df_I/dx_i) prod_{J != I} f_J.
 * The products are expanded exactly over the rationals before the complex
 * exponents are applied.
 */
struct ClearedSystem
{
	PolynomialSystem system;
	std::vector<int> degrees;
	/// The master function the system was derived from.
	MasterFunction source;
	/// prod_I f_I, the common denominator that was cleared.
	ComplexPolynomial denominator;
};

inline ClearedSystem clear_denominators(const MasterFunction &mf)
{
	const int n = mf.dimension();
	const auto &hs = mf.hypersurfaces();
	std::vector<RationalPolynomial> cofactors;
	for (size_t I = 0; I < hs.size(); ++I)
	{
		auto q = RationalPolynomial::constant(n, Rational(1));
		for (size_t J = 0; J < hs.size(); ++J)
			if (J != I)
				q = q * hs[J].poly;
		cofactors.push_back(std::move(q));
	}
	auto denominator = cofactors.front() * hs.front().poly;

	PolynomialSystem sys;
	for (int i = 0; i < n; ++i)
	{
		ComplexPolynomial eq(n);
		for (size_t I = 0; I < hs.size(); ++I)
			eq += (hs[I].poly.derivative(i) * cofactors[I]).cast<Complex>() * mf.exponents().values[I];
		sys.equations.push_back(std::move(eq));
	}
	auto degrees = sys.degrees();
	return ClearedSystem{std::move(sys), std::move(degrees), mf, denominator.cast<Complex>()};
}

struct CriticalPoint
{
	CVector location;
	double residual = 0.0;
	bool nondegenerate = false;
	std::optional<int> local_degree;
	/// ||J^{-1}||_2 of the log-Jacobian; infinite at degenerate points.
	double condition = 0.0;
	/// Number of paths (or starts) that ended here.
	int multiplicity = 0;
};

struct SolveReport
{
	std::vector<CriticalPoint> points;
	std::uint64_t paths_tracked = 0;
	std::uint64_t paths_diverged = 0;
	std::uint64_t paths_on_divisor = 0;
	std::uint64_t paths_failed = 0;
	int count = 0;
	std::uint64_t seed = 0;
	/// Distinct finite endpoints on the hypersurfaces; they bound the
	/// isolation radius used for local degrees.
	std::vector<CVector> divisor_endpoints;

	bool certified() const { return paths_failed == 0; }

	std::uint64_t paths_kept() const
	{
		std::uint64_t k = 0;
		for (const auto &p : points)
			k += static_cast<std::uint64_t>(p.multiplicity);
		return k;
	}

	bool all_nondegenerate() const
	{
		return std::all_of(points.begin(), points.end(), [](const CriticalPoint &p) { return p.nondegenerate; });
	}
};

class DegreeAmbiguous : public std::runtime_error
{
  public:
	explicit DegreeAmbiguous(std::vector<int> counts)
	    : std::runtime_error("local degree differs between perturbations"), counts(std::move(counts))
	{
	}
	std::vector<int> counts;
};

namespace detail {

inline bool lexicographic_less(const CVector &a, const CVector &b)
{
	for (Eigen::Index i = 0; i < a.size(); ++i)
	{
		if (a(i).real() != b(i).real())
			return a(i).real() < b(i).real();
		if (a(i).imag() != b(i).imag())
			return a(i).imag() < b(i).imag();
	}
	return false;
}

struct Cluster
{
	CVector representative;
	double score = 0.0;
	int members = 0;
};

/// Greedy clustering of lexicographically sorted points; each cluster keeps
/// the member with the lowest score.
inline std::vector<Cluster> cluster_points(std::vector<std::pair<CVector, double>> pts, double radius)
{
	std::sort(pts.begin(), pts.end(), [](const auto &a, const auto &b) {
		if (lexicographic_less(a.first, b.first))
			return true;
		if (lexicographic_less(b.first, a.first))
			return false;
		return a.second < b.second;
	});
	std::vector<Cluster> clusters;
	std::vector<CVector> anchors;
	for (auto &[x, score] : pts)
	{
		size_t k = 0;
		for (; k < clusters.size(); ++k)
			if ((anchors[k] - x).norm() <= radius)
				break;
		if (k == clusters.size())
		{
			clusters.push_back({x, score, 1});
			anchors.push_back(x);
			continue;
		}
		++clusters[k].members;
		if (score < clusters[k].score)
		{
			clusters[k].representative = x;
			clusters[k].score = score;
		}
	}
	return clusters;
}

inline double inverse_norm(const CMatrix &j)
{
	Eigen::JacobiSVD<CMatrix> svd(j);
	double smallest = svd.singularValues().minCoeff();
	return smallest > 0 ? 1.0 / smallest : std::numeric_limits<double>::infinity();
}

enum class EndpointKind
{
	critical,
	diverged,
	on_divisor,
	failed
};

inline EndpointKind classify(const MasterFunction &mf, const CVector &x, const TrackerConfig &cfg, double &residual)
{
	if (!x.allFinite())
		return EndpointKind::failed;
	if (x.norm() > cfg.divergence_radius)
		return EndpointKind::diverged;
	double proximity = mf.divisor_proximity(x).first;
	if (proximity < cfg.divisor_threshold)
		return EndpointKind::on_divisor;
	residual = scaled_residual(mf, x, cfg.divisor_threshold);
	if (residual <= cfg.refine_tolerance)
		return EndpointKind::critical;
	// Newton stalls short of singular roots of the cleared system that sit
	// on the divisor; there |d log phi| is large instead of small.
	if (proximity < std::sqrt(cfg.divisor_threshold))
		return EndpointKind::on_divisor;
	return EndpointKind::failed;
}

inline void finalize_points(const MasterFunction &mf, const std::vector<std::pair<CVector, double>> &critical,
                            const TrackerConfig &cfg, SolveReport &report)
{
	for (const auto &c : cluster_points(critical, cfg.cluster_radius))
	{
		CriticalPoint p;
		p.location = c.representative;
		p.residual = c.score;
		p.multiplicity = c.members;
		p.nondegenerate = is_nondegenerate(mf, p.location, cfg.nondegeneracy_tolerance, cfg.divisor_threshold);
		p.condition = p.nondegenerate ? inverse_norm(log_jacobian(mf, p.location, cfg.divisor_threshold))
		                              : std::numeric_limits<double>::infinity();
		if (p.nondegenerate)
			p.local_degree = 1;
		report.points.push_back(std::move(p));
	}
	report.count = static_cast<int>(report.points.size());
}

} // namespace detail

/// All critical points of the source master function, from the Bezout-many
/// paths of a total-degree homotopy on the cleared system.
inline SolveReport solve_total_degree(const ClearedSystem &sys, const TrackerConfig &cfg)
{
	const auto &mf = sys.source;
	SolveReport report;
	report.seed = cfg.seed;
	auto ends = track_total_degree(sys.system, cfg);
	report.paths_tracked = ends.size();

	std::vector<std::pair<CVector, double>> critical, divisor;
	for (const auto &end : ends)
	{
		if (end.status == PathStatus::failed)
		{
			++report.paths_failed;
			continue;
		}
		if (end.status == PathStatus::at_infinity)
		{
			++report.paths_diverged;
			continue;
		}
		double residual = 0.0;
		switch (detail::classify(mf, end.point, cfg, residual))
		{
		case detail::EndpointKind::critical:
			critical.emplace_back(end.point, residual);
			break;
		case detail::EndpointKind::diverged:
			++report.paths_diverged;
			break;
		case detail::EndpointKind::on_divisor:
			++report.paths_on_divisor;
			divisor.emplace_back(end.point, 0.0);
			break;
		case detail::EndpointKind::failed:
			++report.paths_failed;
			break;
		}
	}
	for (const auto &c : detail::cluster_points(divisor, cfg.cluster_radius))
		report.divisor_endpoints.push_back(c.representative);
	detail::finalize_points(mf, critical, cfg, report);
	return report;
}

/**
 * Independent cross-check: Newton from seeded random starts in a ball on the
 * cleared equations prod f_I * d log phi, evaluated numerically through
 * d log phi (no symbolic expansion, no path tracking). Plain Newton on
 * d log phi itself is repelled from the roots where |x| is large. Incomplete
 * by nature; every converged point must still be one the homotopy finds.
 */
inline SolveReport multistart_newton_oracle(const MasterFunction &mf, const TrackerConfig &cfg)
{
	const int n = mf.dimension();
	Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
	SolveReport report;
	report.seed = cfg.seed;
	std::vector<std::pair<CVector, double>> critical;

	for (int s = 0; s < cfg.multistart_starts; ++s)
	{
		// uniform in the ball of C^n = R^{2n}
		Eigen::VectorXd dir(2 * n);
		for (int k = 0; k < 2 * n; ++k)
			dir(k) = rng.normal();
		double radius = cfg.multistart_radius * std::pow(rng.uniform(), 1.0 / (2 * n));
		dir *= radius / dir.norm();
		CVector x(n);
		for (int k = 0; k < n; ++k)
			x(k) = Complex(dir(2 * k), dir(2 * k + 1));

		++report.paths_tracked;
		auto kind = detail::EndpointKind::failed;
		double residual = 0.0;
		try
		{
			for (int it = 0; it < cfg.multistart_max_iterations; ++it)
			{
				// Newton on D * g with D = prod f_I; D cancels from the step:
				// (J_g + g s^T) step = -g,  s = grad log D.
				CVector g = log_derivative(mf, x, cfg.divisor_threshold);
				CVector s = CVector::Zero(n);
				for (const auto &c : mf.components())
				{
					Complex f = c.value(as_span(x));
					for (int i = 0; i < n; ++i)
						s(i) += c.gradient[i](as_span(x)) / f;
				}
				CMatrix j = log_jacobian(mf, x, cfg.divisor_threshold) + g * s.transpose();
				CVector step;
				if (!detail::solve_linear(j, -g, step))
					break;
				double cap = std::max(1.0, x.norm());
				if (step.norm() > cap)
					step *= cap / step.norm();
				x += step;
				if (x.norm() > cfg.divergence_radius)
				{
					kind = detail::EndpointKind::diverged;
					break;
				}
				if (step.norm() <= 1e-15 * std::max(1.0, x.norm()))
					break;
			}
			if (kind != detail::EndpointKind::diverged)
				kind = detail::classify(mf, x, cfg, residual);
		}
		catch (const DivisorProximity &)
		{
			kind = detail::EndpointKind::on_divisor;
		}
		switch (kind)
		{
		case detail::EndpointKind::critical:
			critical.emplace_back(x, residual);
			break;
		case detail::EndpointKind::diverged:
			++report.paths_diverged;
			break;
		case detail::EndpointKind::on_divisor:
			++report.paths_on_divisor;
			break;
		case detail::EndpointKind::failed:
			++report.paths_failed;
			break;
		}
	}
	detail::finalize_points(mf, critical, cfg, report);
	return report;
}

/// True when every point of each set lies within `radius` of a point of the other.
inline bool same_point_set(const std::vector<CriticalPoint> &a, const std::vector<CriticalPoint> &b, double radius)
{
	auto covered = [radius](const std::vector<CriticalPoint> &from, const std::vector<CriticalPoint> &to) {
		return std::all_of(from.begin(), from.end(), [&](const CriticalPoint &p) {
			return std::any_of(to.begin(), to.end(),
			                   [&](const CriticalPoint &q) { return (p.location - q.location).norm() <= radius; });
		});
	};
	return a.size() == b.size() && covered(a, b) && covered(b, a);
}

/// Half the distance from p to the nearest other finite root of the cleared
/// system (critical or on the divisor), capped by the configuration.
inline double isolation_radius(const SolveReport &report, const CVector &p, const TrackerConfig &cfg)
{
	double nearest = std::numeric_limits<double>::infinity();
	auto consider = [&](const CVector &q) {
		double d = (q - p).norm();
		if (d > cfg.cluster_radius)
			nearest = std::min(nearest, d);
	};
	for (const auto &q : report.points)
		consider(q.location);
	for (const auto &q : report.divisor_endpoints)
		consider(q);
	return std::min(0.5 * nearest, cfg.local_degree_max_radius);
}

/**
 * Topological degree of d log phi at the isolated zero p: the number of
 * distinct solutions of d log phi(x) = eps v inside the ball of the given
 * radius, for random unit v. Repeated for several v, which must agree.
 */
inline int local_degree(const MasterFunction &mf, const CVector &p, double radius, const TrackerConfig &cfg)
{
	const int n = mf.dimension();
	auto base = clear_denominators(mf);
	double scale = 0.0;
	for (const auto &l : mf.exponents().values)
		scale = std::max(scale, std::abs(l));
	const double eps = cfg.local_degree_epsilon * scale;

	Rng rng(cfg.seed ^ 0x5851f42d4c957f2dull);
	std::vector<int> counts;
	for (int trial = 0; trial < cfg.local_degree_trials; ++trial)
	{
		CVector v(n);
		for (int i = 0; i < n; ++i)
			v(i) = Complex(rng.normal(), rng.normal());
		v /= v.norm();

		PolynomialSystem perturbed;
		for (int i = 0; i < n; ++i)
			perturbed.equations.push_back(base.system.equations[i] - base.denominator * (eps * v(i)));

		TrackerConfig trial_cfg = cfg;
		trial_cfg.seed = rng.next();
		auto ends = track_total_degree(perturbed, trial_cfg);
		std::vector<std::pair<CVector, double>> inside;
		for (const auto &e : ends)
			if (e.status == PathStatus::finite && (e.point - p).norm() < radius)
				inside.emplace_back(e.point, 0.0);
		counts.push_back(static_cast<int>(detail::cluster_points(inside, cfg.cluster_radius).size()));
	}
	if (std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) != counts.end())
		throw DegreeAmbiguous(counts);
	return counts.front();
}

/// Local degree with the isolation radius taken from an unperturbed solve.
inline int local_degree(const MasterFunction &mf, const CVector &p, const TrackerConfig &cfg)
{
	auto report = solve_total_degree(clear_denominators(mf), cfg);
	return local_degree(mf, p, isolation_radius(report, p, cfg), cfg);
}

inline int degree_sum(const SolveReport &report)
{
	int sum = 0;
	for (const auto &p : report.points)
		sum += p.local_degree.value_or(0);
	return sum;
}

} // namespace critcount
