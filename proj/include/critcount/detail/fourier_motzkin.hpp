#pragma once

#include "critcount/rational.hpp"

#include <vector>

namespace critcount::detail {

/// coeffs . x + constant > 0 (strict) or >= 0.
struct LinearInequality
{
	std::vector<Rational> coeffs;
	Rational constant;
	bool strict = false;
};

/// Exact feasibility of a system of strict and non-strict linear inequalities
/// by Fourier-Motzkin elimination. Exponential in the worst case; meant for a
/// handful of inequalities in at most a few variables.
inline bool feasible(std::vector<LinearInequality> system, int nvars)
{
	for (int k = nvars - 1; k >= 0; --k)
	{
		std::vector<LinearInequality> pos, neg, next;
		for (auto &row : system)
		{
			if (row.coeffs[k] > 0)
				pos.push_back(std::move(row));
			else if (row.coeffs[k] < 0)
				neg.push_back(std::move(row));
			else
				next.push_back(std::move(row));
		}
		for (const auto &p : pos)
			for (const auto &q : neg)
			{
				// positive multiples chosen so that x_k cancels
				Rational wp = -q.coeffs[k];
				Rational wq = p.coeffs[k];
				LinearInequality combined;
				combined.coeffs.resize(nvars);
				for (int i = 0; i < nvars; ++i)
					combined.coeffs[i] = wp * p.coeffs[i] + wq * q.coeffs[i];
				combined.coeffs[k] = 0;
				combined.constant = wp * p.constant + wq * q.constant;
				combined.strict = p.strict || q.strict;
				next.push_back(std::move(combined));
			}
		system = std::move(next);
	}
	for (const auto &row : system)
	{
		if (row.strict ? row.constant <= 0 : row.constant < 0)
			return false;
	}
	return true;
}

} // namespace critcount::detail
