#pragma once

#include "critcount/rational.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace critcount {

/**
 * Element of Z[h]/(h^{n+1}), the cohomology ring of P^n with h the
 * hyperplane class. Integration over P^n reads off the h^n coefficient.
 */
class ChernSeries
{
  public:
	explicit ChernSeries(int n) : coeffs_(static_cast<size_t>(check(n)) + 1, BigInt(0)) {}

	ChernSeries(int n, std::vector<BigInt> coeffs) : ChernSeries(n)
	{
		for (size_t k = 0; k < coeffs.size() && k < coeffs_.size(); ++k)
			coeffs_[k] = std::move(coeffs[k]);
	}

	static ChernSeries one(int n) { return ChernSeries(n, {BigInt(1)}); }

	/// 1 + a h.
	static ChernSeries linear(int n, const BigInt &a) { return ChernSeries(n, {BigInt(1), a}); }

	/// sum_j a^j h^j, the inverse of 1 - a h.
	static ChernSeries geometric(int n, const BigInt &a)
	{
		ChernSeries s(n);
		BigInt p = 1;
		for (auto &c : s.coeffs_)
		{
			c = p;
			p *= a;
		}
		return s;
	}

	int top_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
	const BigInt &operator[](int k) const { return coeffs_.at(static_cast<size_t>(k)); }
	const std::vector<BigInt> &coeffs() const { return coeffs_; }

	/// Coefficient of h^n.
	const BigInt &integrate() const { return coeffs_.back(); }

	friend ChernSeries operator*(const ChernSeries &a, const ChernSeries &b)
	{
		same_ring(a, b);
		ChernSeries r(a.top_degree());
		const int n = a.top_degree();
		for (int i = 0; i <= n; ++i)
		{
			if (a.coeffs_[i] == 0)
				continue;
			for (int j = 0; i + j <= n; ++j)
				r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
		}
		return r;
	}

	friend ChernSeries operator+(const ChernSeries &a, const ChernSeries &b)
	{
		same_ring(a, b);
		ChernSeries r = a;
		for (size_t k = 0; k < r.coeffs_.size(); ++k)
			r.coeffs_[k] += b.coeffs_[k];
		return r;
	}

	friend ChernSeries operator-(const ChernSeries &a, const ChernSeries &b)
	{
		same_ring(a, b);
		ChernSeries r = a;
		for (size_t k = 0; k < r.coeffs_.size(); ++k)
			r.coeffs_[k] -= b.coeffs_[k];
		return r;
	}

	ChernSeries pow(int e) const
	{
		if (e < 0)
			throw std::invalid_argument("negative power");
		ChernSeries r = one(top_degree());
		for (int i = 0; i < e; ++i)
			r = r * *this;
		return r;
	}

	/// Multiplicative inverse; requires constant term 1.
	ChernSeries inverse() const
	{
		if (coeffs_[0] != 1)
			throw std::invalid_argument("only series with constant term 1 are inverted");
		const int n = top_degree();
		ChernSeries r(n);
		r.coeffs_[0] = 1;
		for (int k = 1; k <= n; ++k)
		{
			BigInt s = 0;
			for (int j = 1; j <= k; ++j)
				s += coeffs_[j] * r.coeffs_[k - j];
			r.coeffs_[k] = -s;
		}
		return r;
	}

	friend bool operator==(const ChernSeries &a, const ChernSeries &b) { return a.coeffs_ == b.coeffs_; }

  private:
	static int check(int n)
	{
		if (n < 0)
			throw std::invalid_argument("negative truncation degree");
		return n;
	}

	static void same_ring(const ChernSeries &a, const ChernSeries &b)
	{
		if (a.top_degree() != b.top_degree())
			throw std::invalid_argument("series truncated at different degrees");
	}

	std::vector<BigInt> coeffs_;
};

/// Smooth hypersurfaces of the given degrees in P^n, assumed (not checked)
/// to cross normally.
struct DivisorConfig
{
	int ambient_dim = 1;
	std::vector<int> degrees;

	void validate() const
	{
		if (ambient_dim < 1)
			throw std::invalid_argument("ambient dimension must be positive");
		for (int d : degrees)
			if (d < 1)
				throw std::invalid_argument("component degrees must be positive");
	}

	std::string to_string() const
	{
		std::string s = "n=" + std::to_string(ambient_dim) + " d=(";
		for (size_t i = 0; i < degrees.size(); ++i)
			s += (i ? "," : "") + std::to_string(degrees[i]);
		return s + ")";
	}
};

namespace detail {

inline std::int64_t to_int64(const BigInt &v)
{
	if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
		throw std::overflow_error("Chern number does not fit in 64 bits");
	return v.convert_to<std::int64_t>();
}

/// c(Omega^1_{P^n}) = (1 - h)^{n+1}.
inline ChernSeries cotangent_chern(int n) { return ChernSeries::linear(n, -1).pow(n + 1); }

inline BigInt binomial(int n, int k)
{
	if (k < 0 || k > n)
		return 0;
	BigInt r = 1;
	for (int i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	return r;
}

} // namespace detail

/// Top Chern number of the log cotangent bundle:
/// h^n coefficient of (1 - h)^{n+1} prod_I (sum_j d_I^j h^j).
inline std::int64_t chern_log_top(const DivisorConfig &cfg)
{
	cfg.validate();
	const int n = cfg.ambient_dim;
	ChernSeries c = detail::cotangent_chern(n);
	for (int d : cfg.degrees)
		c = c * ChernSeries::geometric(n, d);
	return detail::to_int64(c.integrate());
}

/// Euler characteristic of a smooth complete intersection in P^n.
inline std::int64_t euler_complete_intersection(int n, const std::vector<int> &degrees)
{
	const int k = static_cast<int>(degrees.size());
	if (n < 0 || k > n)
		throw std::invalid_argument("complete intersection of " + std::to_string(k) + " hypersurfaces in P^" +
		                            std::to_string(n) + " is empty or ill-posed");
	ChernSeries s = ChernSeries::linear(n, 1).pow(n + 1);
	BigInt product = 1;
	for (int d : degrees)
	{
		if (d < 1)
			throw std::invalid_argument("degrees must be positive");
		s = s * ChernSeries::linear(n, d).inverse();
		product *= d;
	}
	return detail::to_int64(s[n - k] * product);
}

/// chi(D) for the union of the components, by inclusion-exclusion over
/// intersections; intersections of more than n components are empty.
inline std::int64_t euler_divisor_inclusion_exclusion(const DivisorConfig &cfg)
{
	cfg.validate();
	const int n = cfg.ambient_dim;
	const size_t m = cfg.degrees.size();
	if (m > 30)
		throw std::invalid_argument("too many components for subset enumeration");
	std::int64_t chi = 0;
	for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask)
	{
		std::vector<int> subset;
		for (size_t i = 0; i < m; ++i)
			if ((mask >> i) & 1u)
				subset.push_back(cfg.degrees[i]);
		if (static_cast<int>(subset.size()) > n)
			continue;
		std::int64_t term = euler_complete_intersection(n, subset);
		chi += subset.size() % 2 == 1 ? term : -term;
	}
	return chi;
}

/// chi(P^n - D) = chi(P^n) - chi(D).
inline std::int64_t euler_complement_inclusion_exclusion(const DivisorConfig &cfg)
{
	return (cfg.ambient_dim + 1) - euler_divisor_inclusion_exclusion(cfg);
}

struct ComponentIdentityCheck
{
	bool holds = false;
	/// (-1)^{n-1} chi(D) from inclusion-exclusion.
	std::int64_t lhs = 0;
	/// sum_{i>=1} sum_{|j|=i} int c_{n-i}(Omega^1) prod c_1([D_I])^{j_I}, summed term by term.
	std::int64_t rhs = 0;
	/// The same right side as chern_log_top minus int c_n(Omega^1).
	std::int64_t rhs_from_series = 0;
};

/**
 * Both sides of the identity relating chi(D) to the mixed Chern numbers of
 * the cotangent bundle and the component classes. The right side is summed
 * over explicit exponent compositions, separately from the series product.
 */
inline ComponentIdentityCheck verify_component_identity(const DivisorConfig &cfg)
{
	cfg.validate();
	const int n = cfg.ambient_dim;
	const size_t m = cfg.degrees.size();
	ComponentIdentityCheck out;

	std::int64_t chi_d = euler_divisor_inclusion_exclusion(cfg);
	out.lhs = (n - 1) % 2 == 0 ? chi_d : -chi_d;

	// c_k(Omega^1_{P^n}) = (-1)^k binom(n+1, k) h^k
	BigInt rhs = 0;
	std::vector<int> exps(m, 0);
	std::function<void(size_t, int, BigInt)> compose = [&](size_t idx, int remaining, BigInt weight) {
		if (idx == m)
		{
			if (remaining != 0)
				return;
			int i = 0;
			for (int e : exps)
				i += e;
			if (i < 1)
				return;
			BigInt c = detail::binomial(n + 1, n - i);
			rhs += ((n - i) % 2 == 0 ? c : BigInt(-c)) * weight;
			return;
		}
		BigInt w = weight;
		for (int e = 0; e <= remaining; ++e)
		{
			exps[idx] = e;
			compose(idx + 1, remaining - e, w);
			w *= cfg.degrees[idx];
		}
		exps[idx] = 0;
	};
	for (int i = 1; i <= n; ++i)
		compose(0, i, BigInt(1));
	out.rhs = detail::to_int64(rhs);

	std::int64_t top_cotangent = n % 2 == 0 ? n + 1 : -(n + 1);
	out.rhs_from_series = chern_log_top(cfg) - top_cotangent;
	out.holds = out.lhs == out.rhs && out.rhs == out.rhs_from_series;
	return out;
}

struct ChernSweepRow
{
	DivisorConfig config;
	std::int64_t chern_top = 0;
	std::int64_t chi_complement = 0;
	bool log_chern_holds = false;
	ComponentIdentityCheck component;
};

/// Every ordered degree tuple with 1 <= n <= max_dim, 1 <= N <= max_components,
/// 1 <= d_I <= max_deg.
inline std::vector<ChernSweepRow> sweep_chern(int max_dim, int max_deg, int max_components)
{
	if (max_dim < 1 || max_deg < 1 || max_components < 1)
		throw std::invalid_argument("sweep bounds must be positive");
	std::vector<ChernSweepRow> rows;
	for (int n = 1; n <= max_dim; ++n)
		for (int count = 1; count <= max_components; ++count)
		{
			std::vector<int> degrees(count, 1);
			for (;;)
			{
				ChernSweepRow row;
				row.config = {n, degrees};
				row.chern_top = chern_log_top(row.config);
				row.chi_complement = euler_complement_inclusion_exclusion(row.config);
				row.log_chern_holds = row.chern_top == (n % 2 == 0 ? row.chi_complement : -row.chi_complement);
				row.component = verify_component_identity(row.config);
				rows.push_back(std::move(row));

				int k = 0;
				while (k < count && degrees[k] == max_deg)
					degrees[k++] = 1;
				if (k == count)
					break;
				++degrees[k];
			}
		}
	return rows;
}

} // namespace critcount
