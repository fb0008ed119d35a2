#pragma once

#include "critcount/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace critcount {

using Complex = std::complex<double>;
using Monomial = std::vector<int>;

namespace detail {

template <class T> bool is_zero_coeff(const T &c) { return c == T(0); }

template <class T> T int_pow(T base, int e)
{
	T r(1);
	while (e > 0)
	{
		if (e & 1)
			r *= base;
		base *= base;
		e >>= 1;
	}
	return r;
}

inline double coeff_abs(const Rational &c) { return std::abs(to_double(c)); }
inline double coeff_abs(const Complex &c) { return std::abs(c); }

} // namespace detail

/**
 * Sparse multivariate polynomial, monomial exponent vector -> coefficient.
 *
 * Zero coefficients are never stored, so `terms().empty()` is the zero
 * polynomial. All operands of a binary operation must have the same number
 * of variables.
 */
template <class Coeff> class Polynomial
{
  public:
	using Terms = std::map<Monomial, Coeff>;

	Polynomial() = default;
	explicit Polynomial(int nvars) : nvars_(nvars)
	{
		if (nvars < 0)
			throw std::invalid_argument("negative variable count");
	}

	static Polynomial constant(int nvars, const Coeff &c)
	{
		Polynomial p(nvars);
		p.add_term(Monomial(nvars, 0), c);
		return p;
	}

	static Polynomial variable(int nvars, int index)
	{
		Polynomial p(nvars);
		Monomial m(nvars, 0);
		m.at(index) = 1;
		p.add_term(m, Coeff(1));
		return p;
	}

	int nvars() const { return nvars_; }
	const Terms &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	bool is_constant() const
	{
		return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) {
			return std::all_of(t.first.begin(), t.first.end(), [](int e) { return e == 0; });
		});
	}

	int total_degree() const
	{
		int d = 0;
		for (const auto &[m, c] : terms_)
			d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
		return terms_.empty() ? -1 : d;
	}

	Coeff coefficient(const Monomial &m) const
	{
		auto it = terms_.find(m);
		return it == terms_.end() ? Coeff(0) : it->second;
	}

	void add_term(const Monomial &m, const Coeff &c)
	{
		if (static_cast<int>(m.size()) != nvars_)
			throw std::invalid_argument("monomial arity mismatch");
		if (std::any_of(m.begin(), m.end(), [](int e) { return e < 0; }))
			throw std::invalid_argument("negative exponent");
		if (detail::is_zero_coeff(c))
			return;
		auto [it, inserted] = terms_.try_emplace(m, c);
		if (!inserted)
		{
			it->second += c;
			if (detail::is_zero_coeff(it->second))
				terms_.erase(it);
		}
	}

	Polynomial derivative(int var) const
	{
		Polynomial r(nvars_);
		for (const auto &[m, c] : terms_)
		{
			if (m.at(var) == 0)
				continue;
			Monomial dm = m;
			--dm[var];
			r.add_term(dm, c * Coeff(m[var]));
		}
		return r;
	}

	template <class Scalar> Scalar evaluate(std::span<const Scalar> x) const
	{
		if (static_cast<int>(x.size()) != nvars_)
			throw std::invalid_argument("evaluation point arity mismatch");
		Scalar sum(0);
		for (const auto &[m, c] : terms_)
		{
			Scalar term = convert<Scalar>(c);
			for (int i = 0; i < nvars_; ++i)
				if (m[i] != 0)
					term *= detail::int_pow(x[i], m[i]);
			sum += term;
		}
		return sum;
	}

	Complex operator()(std::span<const Complex> x) const { return evaluate<Complex>(x); }

	/// Sum of |c| * max(1, |x|)^deg over the terms: a bound on the size of the
	/// individual terms, used to scale residuals and proximity tests.
	double magnitude(std::span<const Complex> x) const
	{
		double radius = 1.0;
		for (const auto &xi : x)
			radius = std::max(radius, std::abs(xi));
		double sum = 0.0;
		for (const auto &[m, c] : terms_)
			sum += detail::coeff_abs(c) * std::pow(radius, std::accumulate(m.begin(), m.end(), 0));
		return sum;
	}

	/// Coefficient-wise conversion, e.g. exact rationals to complex doubles.
	template <class Target> Polynomial<Target> cast() const
	{
		Polynomial<Target> r(nvars_);
		for (const auto &[m, c] : terms_)
			r.add_term(m, convert<Target>(c));
		return r;
	}

	/// Adds x_0 as a new first variable so that every term has degree `degree`.
	Polynomial homogenize(int degree) const
	{
		Polynomial r(nvars_ + 1);
		for (const auto &[m, c] : terms_)
		{
			int deg = std::accumulate(m.begin(), m.end(), 0);
			if (deg > degree)
				throw std::invalid_argument("homogenization degree too small");
			Monomial hm;
			hm.reserve(m.size() + 1);
			hm.push_back(degree - deg);
			hm.insert(hm.end(), m.begin(), m.end());
			r.add_term(hm, c);
		}
		return r;
	}

	Polynomial &operator+=(const Polynomial &o)
	{
		check_arity(o);
		for (const auto &[m, c] : o.terms_)
			add_term(m, c);
		return *this;
	}

	Polynomial &operator-=(const Polynomial &o)
	{
		check_arity(o);
		for (const auto &[m, c] : o.terms_)
			add_term(m, -c);
		return *this;
	}

	Polynomial &operator*=(const Coeff &s)
	{
		if (detail::is_zero_coeff(s))
		{
			terms_.clear();
			return *this;
		}
		for (auto &[m, c] : terms_)
			c *= s;
		return *this;
	}

	friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
	friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
	friend Polynomial operator*(Polynomial a, const Coeff &s) { return a *= s; }
	friend Polynomial operator*(const Coeff &s, Polynomial a) { return a *= s; }

	friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
	{
		a.check_arity(b);
		Polynomial r(a.nvars_);
		for (const auto &[ma, ca] : a.terms_)
			for (const auto &[mb, cb] : b.terms_)
			{
				Monomial m(ma.size());
				for (size_t i = 0; i < m.size(); ++i)
					m[i] = ma[i] + mb[i];
				r.add_term(m, ca * cb);
			}
		return r;
	}

	friend bool operator==(const Polynomial &a, const Polynomial &b)
	{
		return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
	}

  private:
	template <class Target> static Target convert(const Coeff &c)
	{
		if constexpr (std::is_same_v<Coeff, Rational> && std::is_same_v<Target, Complex>)
			return Complex(to_double(c), 0.0);
		else if constexpr (std::is_same_v<Coeff, Rational> && std::is_same_v<Target, double>)
			return to_double(c);
		else
			return static_cast<Target>(c);
	}

	void check_arity(const Polynomial &o) const
	{
		if (o.nvars_ != nvars_)
			throw std::invalid_argument("polynomial arity mismatch");
	}

	int nvars_ = 0;
	Terms terms_;
};

using RationalPolynomial = Polynomial<Rational>;
using ComplexPolynomial = Polynomial<Complex>;

/// Product of a list of polynomials; the empty product is 1.
template <class Coeff> Polynomial<Coeff> product(int nvars, std::span<const Polynomial<Coeff>> factors)
{
	auto r = Polynomial<Coeff>::constant(nvars, Coeff(1));
	for (const auto &f : factors)
		r = r * f;
	return r;
}

inline std::string to_string(const RationalPolynomial &p)
{
	if (p.is_zero())
		return "0";
	std::string out;
	for (const auto &[m, c] : p.terms())
	{
		if (!out.empty())
			out += " + ";
		out += "(" + to_string(c) + ")";
		for (size_t i = 0; i < m.size(); ++i)
			if (m[i] > 0)
				out += "*x" + std::to_string(i + 1) + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
	}
	return out;
}

} // namespace critcount
