#pragma once

#include "critcount/detail/fourier_motzkin.hpp"
#include "critcount/detail/rational_linalg.hpp"
#include "critcount/polynomial.hpp"
#include "critcount/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <map>
#include <stdexcept>
#include <vector>

namespace critcount {

/// Affine functional f(x) = coeffs . x + offset.
struct Hyperplane
{
	std::vector<Rational> coeffs;
	Rational offset;

	int dimension() const { return static_cast<int>(coeffs.size()); }

	RationalPolynomial polynomial() const
	{
		const int n = dimension();
		auto p = RationalPolynomial::constant(n, offset);
		for (int i = 0; i < n; ++i)
			p += RationalPolynomial::variable(n, i) * coeffs[i];
		return p;
	}
};

/// True when the affine functionals are scalar multiples of each other.
inline bool proportional(const Hyperplane &a, const Hyperplane &b)
{
	if (a.dimension() != b.dimension())
		return false;
	detail::RationalMatrix m{a.coeffs, b.coeffs};
	m[0].push_back(a.offset);
	m[1].push_back(b.offset);
	return detail::rref(m).size() < 2;
}

/**
 * Hyperplanes in C^n given by exact rational functionals. The hyperplane at
 * infinity is implicit and never listed.
 *
 * Construction rejects zero functionals, arity mismatches and proportional
 * pairs. Dimension 0 is admitted only so that restriction of a line
 * arrangement to one of its points stays inside the type.
 */
class AffineArrangement
{
  public:
	AffineArrangement(int dimension, std::vector<Hyperplane> hyperplanes)
	    : dimension_(dimension), hyperplanes_(std::move(hyperplanes))
	{
		if (dimension_ < 0)
			throw std::invalid_argument("arrangement dimension must be nonnegative");
		for (size_t i = 0; i < hyperplanes_.size(); ++i)
		{
			const auto &h = hyperplanes_[i];
			if (h.dimension() != dimension_)
				throw std::invalid_argument("hyperplane " + std::to_string(i) + " has wrong arity");
			if (std::all_of(h.coeffs.begin(), h.coeffs.end(), [](const Rational &c) { return c == 0; }))
				throw std::invalid_argument("hyperplane " + std::to_string(i) + " has a zero linear part");
			for (size_t j = 0; j < i; ++j)
				if (proportional(hyperplanes_[j], h))
					throw std::invalid_argument("hyperplanes " + std::to_string(j) + " and " +
					                            std::to_string(i) + " are proportional");
		}
	}

	int dimension() const { return dimension_; }
	const std::vector<Hyperplane> &hyperplanes() const { return hyperplanes_; }
	size_t size() const { return hyperplanes_.size(); }

  private:
	int dimension_;
	std::vector<Hyperplane> hyperplanes_;
};

struct Flat
{
	std::vector<Rational> basepoint;
	std::vector<std::vector<Rational>> basis;
	int codimension = 0;
	/// Sorted indices of every hyperplane containing the flat.
	std::vector<int> support;
	/// Row-reduced defining system [A | -b]; the canonical identity of the flat.
	detail::RationalMatrix rref;
};

struct IntersectionPoset
{
	int dimension = 0;
	std::vector<Flat> flats;
	std::vector<std::int64_t> moebius;
	size_t top = 0;

	/// True when `outer` contains `inner` as a subset.
	bool contains(size_t outer, size_t inner) const
	{
		return std::includes(flats[inner].support.begin(), flats[inner].support.end(),
		                     flats[outer].support.begin(), flats[outer].support.end());
	}
};

namespace detail {

inline RationalRow equation_row(const Hyperplane &h)
{
	RationalRow row = h.coeffs;
	row.push_back(-h.offset);
	return row;
}

/// RREF of the stacked rows, or nothing if the system is inconsistent.
inline std::optional<RationalMatrix> reduce_system(RationalMatrix rows, int n)
{
	auto pivots = rref(rows);
	if (!pivots.empty() && pivots.back() == n)
		return std::nullopt;
	return rows;
}

inline void fill_parametrization(Flat &flat, int n)
{
	std::vector<int> pivot_of_col(n, -1);
	for (size_t r = 0; r < flat.rref.size(); ++r)
		for (int c = 0; c < n; ++c)
			if (flat.rref[r][c] != 0)
			{
				pivot_of_col[c] = static_cast<int>(r);
				break;
			}
	flat.basepoint.assign(n, Rational(0));
	for (int c = 0; c < n; ++c)
		if (pivot_of_col[c] >= 0)
			flat.basepoint[c] = flat.rref[pivot_of_col[c]][n];
	flat.basis.clear();
	for (int free = 0; free < n; ++free)
	{
		if (pivot_of_col[free] >= 0)
			continue;
		std::vector<Rational> v(n, Rational(0));
		v[free] = 1;
		for (int c = 0; c < n; ++c)
			if (pivot_of_col[c] >= 0)
				v[c] = -flat.rref[pivot_of_col[c]][free];
		flat.basis.push_back(std::move(v));
	}
	flat.codimension = static_cast<int>(flat.rref.size());
}

} // namespace detail

/// All nonempty intersections of subfamilies (the ambient space included)
/// with their Moebius values. Flats are ordered by codimension, then by
/// canonical form, so the result does not depend on hyperplane order beyond
/// the labels in `support`.
inline IntersectionPoset build_poset(const AffineArrangement &arr)
{
	const int n = arr.dimension();
	const auto &hs = arr.hyperplanes();
	std::map<detail::RationalMatrix, Flat> by_key;

	auto support_of = [&](const detail::RationalMatrix &key) {
		std::vector<int> support;
		for (size_t i = 0; i < hs.size(); ++i)
		{
			auto rows = key;
			rows.push_back(detail::equation_row(hs[i]));
			auto reduced = detail::reduce_system(rows, n);
			if (reduced && reduced->size() == key.size())
				support.push_back(static_cast<int>(i));
		}
		return support;
	};

	std::vector<detail::RationalMatrix> frontier{detail::RationalMatrix{}};
	by_key[{}] = Flat{};
	for (int codim = 0; codim < n && !frontier.empty(); ++codim)
	{
		std::vector<detail::RationalMatrix> next;
		for (const auto &key : frontier)
			for (const auto &h : hs)
			{
				auto rows = key;
				rows.push_back(detail::equation_row(h));
				auto reduced = detail::reduce_system(rows, n);
				if (!reduced || static_cast<int>(reduced->size()) != codim + 1)
					continue;
				if (by_key.try_emplace(*reduced).second)
					next.push_back(*reduced);
			}
		frontier = std::move(next);
	}

	IntersectionPoset poset;
	poset.dimension = n;
	for (auto &[key, flat] : by_key)
	{
		flat.rref = key;
		detail::fill_parametrization(flat, n);
		flat.support = support_of(key);
		poset.flats.push_back(std::move(flat));
	}
	std::stable_sort(poset.flats.begin(), poset.flats.end(),
	                 [](const Flat &a, const Flat &b) { return a.codimension < b.codimension; });

	poset.top = 0;
	poset.moebius.assign(poset.flats.size(), 0);
	poset.moebius[0] = 1;
	for (size_t x = 1; x < poset.flats.size(); ++x)
	{
		std::int64_t sum = 0;
		for (size_t z = 0; z < x; ++z)
			if (poset.flats[z].codimension < poset.flats[x].codimension && poset.contains(z, x))
				sum += poset.moebius[z];
		poset.moebius[x] = -sum;
	}
	return poset;
}

/// Sum of the Moebius values: the Poincare polynomial of the complement at -1.
inline std::int64_t euler_characteristic_complement(const IntersectionPoset &poset)
{
	std::int64_t chi = 0;
	for (auto m : poset.moebius)
		chi += m;
	return chi;
}

inline std::int64_t euler_characteristic_complement(const AffineArrangement &arr)
{
	return euler_characteristic_complement(build_poset(arr));
}

inline bool is_essential(const IntersectionPoset &poset)
{
	return std::any_of(poset.flats.begin(), poset.flats.end(),
	                   [&](const Flat &f) { return f.codimension == poset.dimension; });
}

inline bool is_essential(const AffineArrangement &arr) { return is_essential(build_poset(arr)); }

/// The arrangement with hyperplane `index` removed.
inline AffineArrangement delete_hyperplane(const AffineArrangement &arr, size_t index)
{
	auto hs = arr.hyperplanes();
	hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(index));
	return AffineArrangement(arr.dimension(), std::move(hs));
}

/// The arrangement induced on hyperplane `index`, in affine coordinates of
/// that hyperplane. Parallel hyperplanes disappear and coincident traces are
/// kept once.
inline AffineArrangement restrict_to_hyperplane(const AffineArrangement &arr, size_t index)
{
	const int n = arr.dimension();
	Flat h;
	h.rref = {detail::equation_row(arr.hyperplanes().at(index))};
	detail::rref(h.rref);
	detail::fill_parametrization(h, n);

	std::vector<Hyperplane> traces;
	for (size_t i = 0; i < arr.size(); ++i)
	{
		if (i == index)
			continue;
		const auto &g = arr.hyperplanes()[i];
		Hyperplane t;
		for (const auto &b : h.basis)
		{
			Rational dot = 0;
			for (int k = 0; k < n; ++k)
				dot += g.coeffs[k] * b[k];
			t.coeffs.push_back(dot);
		}
		t.offset = g.offset;
		for (int k = 0; k < n; ++k)
			t.offset += g.coeffs[k] * h.basepoint[k];
		if (std::all_of(t.coeffs.begin(), t.coeffs.end(), [](const Rational &c) { return c == 0; }))
			continue;
		if (std::none_of(traces.begin(), traces.end(), [&](const Hyperplane &u) { return proportional(u, t); }))
			traces.push_back(std::move(t));
	}
	return AffineArrangement(n - 1, std::move(traces));
}

/**
 * Number of bounded regions of the real arrangement, by enumerating sign
 * vectors and deciding nonemptiness and boundedness of each cell exactly with
 * Fourier-Motzkin elimination. Independent of the poset computation.
 */
inline std::int64_t bounded_regions_oracle(const AffineArrangement &arr)
{
	const int n = arr.dimension();
	const auto &hs = arr.hyperplanes();
	if (n == 0 || !is_essential(arr))
		throw std::invalid_argument("bounded-region count needs an essential arrangement");
	if (hs.size() > 20)
		throw std::invalid_argument("too many hyperplanes for sign-vector enumeration");

	std::int64_t bounded = 0;
	const std::uint32_t cells = 1u << hs.size();
	for (std::uint32_t mask = 0; mask < cells; ++mask)
	{
		auto sign = [&](size_t i) { return (mask >> i) & 1u ? Rational(1) : Rational(-1); };

		std::vector<detail::LinearInequality> region;
		for (size_t i = 0; i < hs.size(); ++i)
		{
			detail::LinearInequality q;
			for (const auto &c : hs[i].coeffs)
				q.coeffs.push_back(sign(i) * c);
			q.constant = sign(i) * hs[i].offset;
			q.strict = true;
			region.push_back(std::move(q));
		}
		if (!detail::feasible(region, n))
			continue;

		bool has_recession = false;
		for (int k = 0; k < n && !has_recession; ++k)
			for (int s : {-1, 1})
			{
				std::vector<detail::LinearInequality> cone;
				for (const auto &q : region)
					cone.push_back({q.coeffs, Rational(0), false});
				detail::LinearInequality dir;
				dir.coeffs.assign(n, Rational(0));
				dir.coeffs[k] = s;
				dir.strict = true;
				cone.push_back(std::move(dir));
				if (detail::feasible(std::move(cone), n))
				{
					has_recession = true;
					break;
				}
			}
		if (!has_recession)
			++bounded;
	}
	return bounded;
}

} // namespace critcount
