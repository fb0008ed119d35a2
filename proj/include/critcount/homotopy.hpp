#pragma once

#include "critcount/master_function.hpp"
#include "critcount/polynomial.hpp"
#include "critcount/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace critcount {

/// Every knob of the path tracker and of the classification downstream of it.
/// All values are echoed into reports.
struct TrackerConfig
{
	double initial_step = 0.02;
	double min_step = 1e-14;
	double max_step = 0.1;
	double corrector_tolerance = 1e-10;
	int max_corrector_iterations = 3;
	int max_steps = 50000;
	/// Predictor-corrector stops at t = 1 - endgame_gap; Newton finishes at t = 1.
	double endgame_gap = 1e-8;
	/// A path whose step size collapses within this distance of t = 1 goes
	/// straight to the Newton endgame instead of being reported as failed.
	double stall_window = 1e-5;
	int max_refine_iterations = 200;
	double refine_tolerance = 1e-12;
	double divergence_radius = 1e8;
	double cluster_radius = 1e-6;
	double divisor_threshold = kDefaultDivisorThreshold;
	double nondegeneracy_tolerance = 1e-8;
	std::uint64_t bezout_cap = 20000;
	unsigned threads = 0;
	std::uint64_t seed = 1;
	int multistart_starts = 2000;
	double multistart_radius = 10.0;
	int multistart_max_iterations = 100;
	double local_degree_epsilon = 1e-4;
	int local_degree_trials = 3;
	double local_degree_max_radius = 1.0;
};

/// Square system of n complex polynomials in n variables.
struct PolynomialSystem
{
	std::vector<ComplexPolynomial> equations;

	int size() const { return static_cast<int>(equations.size()); }

	std::vector<int> degrees() const
	{
		std::vector<int> d;
		for (const auto &e : equations)
			d.push_back(e.total_degree());
		return d;
	}

	std::uint64_t bezout_number() const
	{
		std::uint64_t b = 1;
		for (int d : degrees())
			b *= static_cast<std::uint64_t>(std::max(d, 0));
		return b;
	}

	CVector evaluate(const CVector &x) const
	{
		CVector out(size());
		for (int i = 0; i < size(); ++i)
			out(i) = equations[i](as_span(x));
		return out;
	}
};

enum class PathStatus
{
	finite,
	at_infinity,
	failed
};

struct PathEnd
{
	PathStatus status = PathStatus::failed;
	/// Affine endpoint; meaningful only when status is finite.
	CVector point;
	/// Parameter reached before failing or finishing.
	double t = 0.0;
	int steps = 0;
};

namespace detail {

inline bool all_finite(const CVector &v)
{
	return v.allFinite();
}

/**
 * Total-degree homotopy tracked in projective space on a random affine patch:
 *   H(z, t) = (1 - t) gamma G(z) + t F(z),  G_i = z_i^{d_i} - c_i z_0^{d_i},
 * with the patch equation r . z = 1 appended.
 */
class ProjectiveHomotopy
{
  public:
	ProjectiveHomotopy(const PolynomialSystem &sys, std::uint64_t seed) : n_(sys.size()), degrees_(sys.degrees())
	{
		for (int i = 0; i < n_; ++i)
		{
			if (sys.equations[i].nvars() != n_)
				throw std::invalid_argument("system is not square");
			if (degrees_[i] < 1)
				throw std::invalid_argument("equation " + std::to_string(i) + " is constant");
		}
		Rng rng(seed);
		gamma_ = rng.unit_complex();
		for (int i = 0; i < n_; ++i)
			start_constants_.push_back(rng.unit_complex());
		patch_ = CVector(n_ + 1);
		for (int k = 0; k <= n_; ++k)
			patch_(k) = rng.unit_complex();

		for (int i = 0; i < n_; ++i)
		{
			auto h = sys.equations[i].homogenize(degrees_[i]);
			target_grad_.emplace_back();
			for (int k = 0; k <= n_; ++k)
				target_grad_.back().push_back(h.derivative(k));
			target_.push_back(std::move(h));
		}
	}

	int dimension() const { return n_; }

	std::uint64_t path_count() const
	{
		std::uint64_t b = 1;
		for (int d : degrees_)
			b *= static_cast<std::uint64_t>(d);
		return b;
	}

	/// Start point number `index` (mixed-radix over the root-of-unity choices).
	CVector start_point(std::uint64_t index) const
	{
		CVector z(n_ + 1);
		z(0) = 1.0;
		for (int i = 0; i < n_; ++i)
		{
			const int d = degrees_[i];
			const auto k = static_cast<int>(index % static_cast<std::uint64_t>(d));
			index /= static_cast<std::uint64_t>(d);
			z(i + 1) = std::pow(start_constants_[i], 1.0 / d) * std::polar(1.0, 2.0 * std::numbers::pi * k / d);
		}
		return z / patch_value(z);
	}

	/// H(z, t).
	CVector value(const CVector &z, double t) const
	{
		CVector out(n_ + 1);
		for (int i = 0; i < n_; ++i)
			out(i) = (1.0 - t) * gamma_ * start_value(i, z) + t * target_[i](as_span(z));
		out(n_) = patch_value(z) - 1.0;
		return out;
	}

	/// dH/dz.
	CMatrix jacobian(const CVector &z, double t) const
	{
		CMatrix j = CMatrix::Zero(n_ + 1, n_ + 1);
		for (int i = 0; i < n_; ++i)
		{
			const int d = degrees_[i];
			for (int k = 0; k <= n_; ++k)
				j(i, k) = t * target_grad_[i][k](as_span(z));
			j(i, 0) += (1.0 - t) * gamma_ * (-start_constants_[i] * double(d) * int_pow(z(0), d - 1));
			j(i, i + 1) += (1.0 - t) * gamma_ * (double(d) * int_pow(z(i + 1), d - 1));
		}
		for (int k = 0; k <= n_; ++k)
			j(n_, k) = patch_(k);
		return j;
	}

	/// dH/dt.
	CVector t_derivative(const CVector &z) const
	{
		CVector out(n_ + 1);
		for (int i = 0; i < n_; ++i)
			out(i) = target_[i](as_span(z)) - gamma_ * start_value(i, z);
		out(n_) = 0.0;
		return out;
	}

  private:
	Complex start_value(int i, const CVector &z) const
	{
		const int d = degrees_[i];
		return int_pow(z(i + 1), d) - start_constants_[i] * int_pow(z(0), d);
	}

	Complex patch_value(const CVector &z) const { return (patch_.transpose() * z)(0); }

	int n_;
	std::vector<int> degrees_;
	Complex gamma_;
	std::vector<Complex> start_constants_;
	CVector patch_;
	std::vector<ComplexPolynomial> target_;
	std::vector<std::vector<ComplexPolynomial>> target_grad_;
};

inline bool solve_linear(const CMatrix &a, const CVector &b, CVector &x)
{
	x = a.partialPivLu().solve(b);
	return all_finite(x);
}

/// Tangent dz/dt = -H_z^{-1} H_t.
inline bool tangent(const ProjectiveHomotopy &h, const CVector &z, double t, CVector &dz)
{
	if (!solve_linear(h.jacobian(z, t), -h.t_derivative(z), dz))
		return false;
	return true;
}

/// Newton correction of z at fixed t. Returns false when the iteration does
/// not settle within the allowed number of steps.
inline bool correct(const ProjectiveHomotopy &h, CVector &z, double t, const TrackerConfig &cfg)
{
	double previous = std::numeric_limits<double>::infinity();
	for (int it = 0; it < cfg.max_corrector_iterations; ++it)
	{
		CVector dz;
		if (!solve_linear(h.jacobian(z, t), -h.value(z, t), dz))
			return false;
		z += dz;
		double size = dz.norm();
		if (size > 0.5 * previous)
			return false;
		previous = size;
		if (size <= cfg.corrector_tolerance * (1.0 + z.norm()))
			return true;
	}
	return false;
}

/// Newton at t = 1, run until the update stalls; tolerates the linear
/// convergence seen at singular endpoints.
inline void refine_endpoint(const ProjectiveHomotopy &h, CVector &z, const TrackerConfig &cfg)
{
	for (int it = 0; it < cfg.max_refine_iterations; ++it)
	{
		CVector dz;
		if (!solve_linear(h.jacobian(z, 1.0), -h.value(z, 1.0), dz))
			return;
		CVector next = z + dz;
		if (!all_finite(next))
			return;
		z = next;
		if (dz.norm() <= 1e-15 * z.norm())
			return;
	}
}

inline PathEnd track_path(const ProjectiveHomotopy &h, CVector z, const TrackerConfig &cfg)
{
	PathEnd end;
	const double t_end = 1.0 - cfg.endgame_gap;
	double t = 0.0;
	double step = cfg.initial_step;
	int streak = 0;
	for (; t < t_end; ++end.steps)
	{
		if (end.steps >= cfg.max_steps || step < cfg.min_step)
		{
			if (1.0 - t <= cfg.stall_window)
				break;
			end.t = t;
			return end;
		}
		double dt = std::min(step, t_end - t);

		// classical fourth-order Runge-Kutta on the tangent field
		CVector k1, k2, k3, k4;
		bool ok = tangent(h, z, t, k1) && tangent(h, z + 0.5 * dt * k1, t + 0.5 * dt, k2) &&
		          tangent(h, z + 0.5 * dt * k2, t + 0.5 * dt, k3) && tangent(h, z + dt * k3, t + dt, k4);
		CVector predicted;
		if (ok)
		{
			predicted = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
			ok = correct(h, predicted, t + dt, cfg);
		}
		if (!ok)
		{
			step *= 0.5;
			streak = 0;
			continue;
		}
		z = predicted;
		t += dt;
		if (++streak >= 3)
		{
			step = std::min(2.0 * step, cfg.max_step);
			streak = 0;
		}
	}
	end.t = 1.0;
	refine_endpoint(h, z, cfg);
	if (!all_finite(z) || h.value(z, 1.0).norm() > std::sqrt(cfg.refine_tolerance) * (1.0 + z.norm()))
		return end;

	double affine_norm = z.tail(h.dimension()).norm();
	if (std::abs(z(0)) * cfg.divergence_radius <= affine_norm)
	{
		end.status = PathStatus::at_infinity;
		return end;
	}
	end.point = z.tail(h.dimension()) / z(0);
	end.status = PathStatus::finite;
	return end;
}

} // namespace detail

/**
 * Tracks every total-degree path of `sys` and returns one endpoint per path,
 * indexed by start point. Work is split over threads; each result slot is
 * written by exactly one path, so the output does not depend on scheduling.
 */
inline std::vector<PathEnd> track_total_degree(const PolynomialSystem &sys, const TrackerConfig &cfg)
{
	if (sys.size() == 0)
		throw std::invalid_argument("empty polynomial system");
	if (sys.bezout_number() > cfg.bezout_cap)
		throw std::invalid_argument("Bezout number " + std::to_string(sys.bezout_number()) + " exceeds cap " +
		                            std::to_string(cfg.bezout_cap));
	detail::ProjectiveHomotopy h(sys, cfg.seed);
	const std::uint64_t paths = h.path_count();
	std::vector<PathEnd> ends(paths);

	unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
	workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, paths));
	std::atomic<std::uint64_t> next{0};
	auto work = [&] {
		for (std::uint64_t i; (i = next.fetch_add(1)) < paths;)
			ends[i] = detail::track_path(h, h.start_point(i), cfg);
	};
	if (workers <= 1)
		work();
	else
	{
		std::vector<std::jthread> pool;
		for (unsigned w = 0; w < workers; ++w)
			pool.emplace_back(work);
	}
	return ends;
}

} // namespace critcount
