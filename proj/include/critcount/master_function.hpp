#pragma once

#include "critcount/polynomial.hpp"
#include "critcount/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace critcount {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline std::span<const Complex> as_span(const CVector &v)
{
	return {v.data(), static_cast<size_t>(v.size())};
}

/// Raised when an evaluation point lies (numerically) on one of the hypersurfaces.
class DivisorProximity : public std::runtime_error
{
  public:
	DivisorProximity(size_t component, double scaled_value)
	    : std::runtime_error("point lies on hypersurface " + std::to_string(component) +
	                         " (scaled |f| = " + std::to_string(scaled_value) + ")"),
	      component(component), scaled_value(scaled_value)
	{
	}
	size_t component;
	double scaled_value;
};

inline constexpr double kDefaultDivisorThreshold = 1e-10;

/// A finite hypersurface {f = 0} in C^n.
struct Hypersurface
{
	RationalPolynomial poly;

	int degree() const { return poly.total_degree(); }
};

/**
 * Orders of the master function along the finite hypersurfaces. The order
 * along the hyperplane at infinity is determined by the others and is never
 * stored.
 */
struct Exponents
{
	std::vector<Complex> values;

	size_t size() const { return values.size(); }

	Complex order_at_infinity(std::span<const int> degrees) const
	{
		if (degrees.size() != values.size())
			throw std::invalid_argument("degree list does not match exponent count");
		Complex sum = 0;
		for (size_t i = 0; i < values.size(); ++i)
			sum += static_cast<double>(degrees[i]) * values[i];
		return -sum;
	}
};

/**
 * phi = prod f_I^{lambda_I} on the complement of the hypersurfaces.
 *
 * phi itself is multivalued and never evaluated; everything goes through the
 * single-valued log-derivative and its Jacobian. Partial derivatives of each
 * f_I are expanded exactly once at construction.
 */
class MasterFunction
{
  public:
	MasterFunction(int dimension, std::vector<Hypersurface> hypersurfaces, Exponents exponents)
	    : dimension_(dimension), hypersurfaces_(std::move(hypersurfaces)), exponents_(std::move(exponents))
	{
		if (dimension_ < 1)
			throw std::invalid_argument("master function needs dimension >= 1");
		if (hypersurfaces_.empty())
			throw std::invalid_argument("master function needs at least one hypersurface");
		if (exponents_.size() != hypersurfaces_.size())
			throw std::invalid_argument("exponent count does not match hypersurface count");
		for (size_t i = 0; i < hypersurfaces_.size(); ++i)
		{
			const auto &p = hypersurfaces_[i].poly;
			if (p.nvars() != dimension_)
				throw std::invalid_argument("hypersurface " + std::to_string(i) + " has wrong arity");
			if (p.is_zero() || p.is_constant())
				throw std::invalid_argument("hypersurface " + std::to_string(i) + " is constant");
		}
		for (const auto &h : hypersurfaces_)
		{
			Component c;
			c.value = h.poly.cast<Complex>();
			for (int i = 0; i < dimension_; ++i)
			{
				auto di = h.poly.derivative(i);
				c.gradient.push_back(di.cast<Complex>());
				for (int j = 0; j < dimension_; ++j)
					c.hessian.push_back(di.derivative(j).cast<Complex>());
			}
			components_.push_back(std::move(c));
		}
	}

	int dimension() const { return dimension_; }
	const std::vector<Hypersurface> &hypersurfaces() const { return hypersurfaces_; }
	const Exponents &exponents() const { return exponents_; }
	size_t size() const { return hypersurfaces_.size(); }

	std::vector<int> degrees() const
	{
		std::vector<int> d;
		for (const auto &h : hypersurfaces_)
			d.push_back(h.degree());
		return d;
	}

	Complex order_at_infinity() const
	{
		auto d = degrees();
		return exponents_.order_at_infinity(d);
	}

	MasterFunction with_exponents(Exponents e) const { return MasterFunction(dimension_, hypersurfaces_, std::move(e)); }

	/// |f_I(x)| relative to the size of its terms at x.
	double scaled_value(size_t component, const CVector &x) const
	{
		const auto &c = components_.at(component);
		return std::abs(c.value(as_span(x))) / c.value.magnitude(as_span(x));
	}

	/// Smallest scaled |f_I(x)| over the components and its index.
	std::pair<double, size_t> divisor_proximity(const CVector &x) const
	{
		std::pair<double, size_t> best{std::numeric_limits<double>::infinity(), 0};
		for (size_t i = 0; i < components_.size(); ++i)
			best = std::min(best, {scaled_value(i, x), i});
		return best;
	}

	void require_off_divisor(const CVector &x, double threshold) const
	{
		if (x.size() != dimension_)
			throw std::invalid_argument("point arity mismatch");
		auto [value, index] = divisor_proximity(x);
		if (!(value >= threshold))
			throw DivisorProximity(index, value);
	}

	// Raw per-component data, used by the evaluation routines below.
	struct Component
	{
		ComplexPolynomial value;
		std::vector<ComplexPolynomial> gradient;
		std::vector<ComplexPolynomial> hessian; // row-major n x n
	};
	const std::vector<Component> &components() const { return components_; }

  private:
	int dimension_;
	std::vector<Hypersurface> hypersurfaces_;
	Exponents exponents_;
	std::vector<Component> components_;
};

/// Components sum_I lambda_I (df_I/dx_i) / f_I of d log phi at x.
inline CVector log_derivative(const MasterFunction &mf, const CVector &x,
                              double divisor_threshold = kDefaultDivisorThreshold)
{
	mf.require_off_divisor(x, divisor_threshold);
	const int n = mf.dimension();
	CVector out = CVector::Zero(n);
	const auto &lambda = mf.exponents().values;
	for (size_t I = 0; I < mf.size(); ++I)
	{
		const auto &c = mf.components()[I];
		Complex w = lambda[I] / c.value(as_span(x));
		for (int i = 0; i < n; ++i)
			out(i) += w * c.gradient[i](as_span(x));
	}
	return out;
}

/// Jacobian of the log-derivative map; symmetric, being the Hessian of log phi.
inline CMatrix log_jacobian(const MasterFunction &mf, const CVector &x,
                            double divisor_threshold = kDefaultDivisorThreshold)
{
	mf.require_off_divisor(x, divisor_threshold);
	const int n = mf.dimension();
	CMatrix out = CMatrix::Zero(n, n);
	const auto &lambda = mf.exponents().values;
	for (size_t I = 0; I < mf.size(); ++I)
	{
		const auto &c = mf.components()[I];
		Complex f = c.value(as_span(x));
		CVector g(n);
		for (int i = 0; i < n; ++i)
			g(i) = c.gradient[i](as_span(x));
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
			{
				Complex second = c.hessian[i * n + j](as_span(x));
				out(i, j) += lambda[I] * (second / f - g(i) * g(j) / (f * f));
			}
	}
	return out;
}

/// Entrywise bound on the terms that make up log_jacobian at x, built from
/// the absolute sizes of the polynomial terms instead of their (possibly
/// cancelling) values.
inline Eigen::MatrixXd log_jacobian_magnitude(const MasterFunction &mf, const CVector &x)
{
	const int n = mf.dimension();
	Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
	const auto &lambda = mf.exponents().values;
	for (size_t I = 0; I < mf.size(); ++I)
	{
		const auto &c = mf.components()[I];
		double f = std::abs(c.value(as_span(x)));
		std::vector<double> g(n);
		for (int i = 0; i < n; ++i)
			g[i] = c.gradient[i].magnitude(as_span(x));
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
				out(i, j) += std::abs(lambda[I]) * (c.hessian[i * n + j].magnitude(as_span(x)) / f + g[i] * g[j] / (f * f));
	}
	return out;
}

/// |d log phi(x)| divided by the sum of the magnitudes of its terms; a
/// scale-free measure of how close x is to being critical.
inline double scaled_residual(const MasterFunction &mf, const CVector &x,
                              double divisor_threshold = kDefaultDivisorThreshold)
{
	mf.require_off_divisor(x, divisor_threshold);
	const int n = mf.dimension();
	const auto &lambda = mf.exponents().values;
	CVector sum = CVector::Zero(n);
	Eigen::VectorXd scale = Eigen::VectorXd::Zero(n);
	for (size_t I = 0; I < mf.size(); ++I)
	{
		const auto &c = mf.components()[I];
		Complex f = c.value(as_span(x));
		for (int i = 0; i < n; ++i)
		{
			Complex gi = c.gradient[i](as_span(x));
			sum(i) += lambda[I] * gi / f;
			scale(i) += std::abs(lambda[I]) * c.gradient[i].magnitude(as_span(x)) / std::abs(f);
		}
	}
	double denom = scale.norm();
	return denom > 0 ? sum.norm() / denom : sum.norm();
}

/// det of the log-Jacobian compared against tol * (max row norm of the
/// term-magnitude matrix)^n.
inline bool is_nondegenerate(const MasterFunction &mf, const CVector &x, double tol = 1e-8,
                             double divisor_threshold = kDefaultDivisorThreshold)
{
	CMatrix j = log_jacobian(mf, x, divisor_threshold);
	Eigen::MatrixXd m = log_jacobian_magnitude(mf, x);
	double row = m.rowwise().norm().maxCoeff();
	double det = std::abs(j.determinant());
	return det > tol * std::pow(row, mf.dimension());
}

/**
 * Random exponents, uniform in area on the annulus 0.5 <= |lambda| <= 2.
 * A draw is rejected while the implied order at infinity has modulus below
 * `min_order_at_infinity`.
 */
inline Exponents sample_generic_exponents(std::span<const int> degrees, std::uint64_t seed,
                                          double min_order_at_infinity = 0.5)
{
	if (degrees.empty())
		throw std::invalid_argument("need at least one exponent");
	constexpr double inner = 0.5, outer = 2.0;
	Rng rng(seed);
	for (;;)
	{
		Exponents e;
		for (size_t i = 0; i < degrees.size(); ++i)
		{
			double r = std::sqrt(inner * inner + rng.uniform() * (outer * outer - inner * inner));
			double theta = 2.0 * std::numbers::pi * rng.uniform();
			e.values.push_back(std::polar(r, theta));
		}
		if (std::abs(e.order_at_infinity(degrees)) >= min_order_at_infinity)
			return e;
	}
}

inline Exponents sample_generic_exponents(size_t count, std::uint64_t seed)
{
	std::vector<int> ones(count, 1);
	return sample_generic_exponents(ones, seed);
}

} // namespace critcount
