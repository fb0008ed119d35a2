#pragma once

#include "oracles.hpp"

#include <algorithm>
#include <limits>

namespace properties {

using namespace critcount;

inline CVector random_point(Rng &rng, int n, double radius)
{
	CVector v(n);
	for (int i = 0; i < n; ++i)
		v(i) = Complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius));
	return v;
}

/// Linear forms plus one quadric, random complex exponents.
inline MasterFunction random_mixed_mf(Rng &rng, int n)
{
	std::vector<Hypersurface> hs;
	for (int I = 0; I < n + 1; ++I)
	{
		RationalPolynomial p = RationalPolynomial::constant(n, Rational(static_cast<int>(rng.next() % 7) - 3, 2));
		for (int k = 0; k < n; ++k)
		{
			Monomial m(n, 0);
			m[k] = 1;
			p.add_term(m, Rational(static_cast<int>(rng.next() % 9) - 4 + (k == I % n ? 5 : 0)));
		}
		hs.push_back({p});
	}
	RationalPolynomial q = RationalPolynomial::constant(n, Rational(2));
	for (int k = 0; k < n; ++k)
	{
		Monomial m(n, 0);
		m[k] = 2;
		q.add_term(m, Rational(k + 1));
	}
	hs.push_back({q});
	Exponents e;
	for (size_t I = 0; I < hs.size(); ++I)
		e.values.emplace_back(rng.uniform(-2, 2), rng.uniform(-2, 2));
	return MasterFunction(n, hs, e);
}

/// Distance-like scale to the nearest component at x: min_I |f_I| / |grad f_I|.
inline double divisor_distance(const MasterFunction &mf, const CVector &x)
{
	double best = std::numeric_limits<double>::infinity();
	for (const auto &c : mf.components())
	{
		double g = 0.0;
		for (const auto &d : c.gradient)
			g += std::norm(d(as_span(x)));
		best = std::min(best, std::abs(c.value(as_span(x))) / std::max(std::sqrt(g), 1e-300));
	}
	return best;
}

/// Second partials of f by central differences with one Richardson step,
/// so the error is fourth order in h. `Vec` is CVector or Eigen::VectorXd;
/// the entries come back in the same scalar type as f.
template <class F, class Vec> auto fd_hessian(F f, const Vec &v, double h)
{
	using Scalar = decltype(f(v));
	const auto m = v.size();
	Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m, m);
	auto second = [&](Eigen::Index i, Eigen::Index j, double step) {
		Vec ei = Vec::Zero(m), ej = Vec::Zero(m);
		ei(i) = step;
		ej(j) = step;
		return (f(v + ei + ej) - f(v + ei - ej) - f(v - ei + ej) + f(v - ei - ej)) / (4 * step * step);
	};
	for (Eigen::Index i = 0; i < m; ++i)
		for (Eigen::Index j = 0; j < m; ++j)
			out(i, j) = (4.0 * second(i, j, h / 2) - second(i, j, h)) / 3.0;
	return out;
}

/// Random point at least `min_distance` from every component.
inline CVector off_divisor_point(Rng &rng, const MasterFunction &mf, double min_distance)
{
	for (;;)
	{
		auto x = random_point(rng, mf.dimension(), 1.0);
		if (divisor_distance(mf, x) >= min_distance)
			return x;
	}
}

/// Largest relative error, over `count` random points, between second
/// differences of phi and phi (Jac + g g^T).
inline double hessian_identity_error(int count, std::uint64_t seed)
{
	Rng rng(seed);
	double worst = 0.0;
	for (int trial = 0; trial < count; ++trial)
	{
		auto mf = random_mixed_mf(rng, 1 + trial % 3);
		auto x = off_divisor_point(rng, mf, 0.05);
		double h = 0.02 * std::min(1.0, divisor_distance(mf, x));
		auto phi = [&](const CVector &y) { return oracle::phi_branch(mf, x, y); };
		CMatrix fd = fd_hessian(phi, x, h);
		CVector g = log_derivative(mf, x);
		CMatrix exact = phi(x) * (log_jacobian(mf, x) + g * g.transpose());
		worst = std::max(worst, (fd - exact).norm() / exact.norm());
	}
	return worst;
}

/// Largest relative error, over `count` random points, between the real
/// Hessian of log|phi|^2 by finite differences and twice the block matrix.
inline double block_hessian_error(int count, std::uint64_t seed)
{
	Rng rng(seed);
	double worst = 0.0;
	for (int trial = 0; trial < count; ++trial)
	{
		const int n = 1 + trial % 3;
		auto mf = random_mixed_mf(rng, n);
		auto x = off_divisor_point(rng, mf, 0.05);
		double h = 0.02 * std::min(1.0, divisor_distance(mf, x));
		auto f = [&](const Eigen::VectorXd &v) {
			CVector z(n);
			for (int i = 0; i < n; ++i)
				z(i) = Complex(v(i), v(n + i));
			return 2.0 * std::log(std::abs(oracle::phi_branch(mf, x, z)));
		};
		Eigen::VectorXd v(2 * n);
		v << x.real(), x.imag();
		Eigen::MatrixXd fd = fd_hessian(f, v, h);
		Eigen::MatrixXd block = 2.0 * real_hessian(mf, x).matrix;
		worst = std::max(worst, (fd - block).norm() / block.norm());
	}
	return worst;
}

/// Moebius recursion, Whitney's formula and deletion-restriction on random
/// arrangements; returns the number of violations.
inline int poset_violations(int trials, std::uint64_t seed)
{
	Rng rng(seed);
	int bad = 0;
	for (int trial = 0; trial < trials; ++trial)
	{
		int n = 1 + trial % 3;
		auto arr = oracle::random_arrangement(rng, n, 1 + static_cast<int>(rng.next() % 5));
		auto poset = build_poset(arr);
		bad += poset.moebius[poset.top] != 1;
		for (size_t x = 0; x < poset.flats.size(); ++x)
		{
			if (x == poset.top)
				continue;
			std::int64_t sum = 0;
			for (size_t z = 0; z < poset.flats.size(); ++z)
				if (poset.contains(z, x))
					sum += poset.moebius[z];
			bad += sum != 0;
		}
		auto chi = euler_characteristic_complement(poset);
		bad += chi != oracle::whitney_chi(arr);
		for (size_t i = 0; i < arr.size(); ++i)
			bad += chi != euler_characteristic_complement(delete_hyperplane(arr, i)) -
			                  euler_characteristic_complement(restrict_to_hyperplane(arr, i));
	}
	return bad;
}

/// Commutative ring laws and inversion in Z[h]/(h^{n+1}); returns violations.
inline int chern_ring_violations(int trials, std::uint64_t seed)
{
	Rng rng(seed);
	auto random_series = [&](int n, bool unit) {
		std::vector<BigInt> c;
		for (int k = 0; k <= n; ++k)
			c.push_back(BigInt(static_cast<int>(rng.next() % 21) - 10));
		if (unit)
			c[0] = 1;
		return ChernSeries(n, c);
	};
	int bad = 0;
	for (int trial = 0; trial < trials; ++trial)
	{
		int n = trial % 6;
		auto a = random_series(n, false), b = random_series(n, false), c = random_series(n, false);
		auto u = random_series(n, true);
		bad += !(a * b == b * a);
		bad += !((a * b) * c == a * (b * c));
		bad += !(a * (b + c) == a * b + a * c);
		bad += !(a * ChernSeries::one(n) == a);
		bad += !(a - a == ChernSeries(n));
		bad += !(u * u.inverse() == ChernSeries::one(n));
	}
	return bad;
}

} // namespace properties
