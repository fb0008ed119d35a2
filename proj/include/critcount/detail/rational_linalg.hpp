#pragma once

#include "critcount/rational.hpp"

#include <vector>

namespace critcount::detail {

using RationalRow = std::vector<Rational>;
using RationalMatrix = std::vector<RationalRow>;

/// Reduced row echelon form in place; zero rows are dropped. Returns the
/// pivot column of each remaining row.
inline std::vector<int> rref(RationalMatrix &m)
{
	std::vector<int> pivots;
	if (m.empty())
		return pivots;
	const int cols = static_cast<int>(m.front().size());
	int row = 0;
	for (int col = 0; col < cols && row < static_cast<int>(m.size()); ++col)
	{
		int pivot = -1;
		for (int r = row; r < static_cast<int>(m.size()); ++r)
			if (m[r][col] != 0)
			{
				pivot = r;
				break;
			}
		if (pivot < 0)
			continue;
		std::swap(m[row], m[pivot]);
		Rational inv = 1 / m[row][col];
		for (auto &v : m[row])
			v *= inv;
		for (int r = 0; r < static_cast<int>(m.size()); ++r)
		{
			if (r == row || m[r][col] == 0)
				continue;
			Rational factor = m[r][col];
			for (int c = col; c < cols; ++c)
				m[r][c] -= factor * m[row][c];
		}
		pivots.push_back(col);
		++row;
	}
	m.resize(row);
	return pivots;
}

} // namespace critcount::detail
