#pragma once

#include "critcount/master_function.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace critcount {

/**
 * Real Hessian of |phi|^2 at a critical point in coordinates (Re x, Im x),
 * divided by the positive factor in front:
 *
 *   [  Re H  -Im H ]
 *   [ -Im H  -Re H ],   H = Hess(log phi).
 */
struct RealHessian
{
	Eigen::MatrixXd matrix;
	double scale = 1.0;
};

inline RealHessian real_hessian_from(const CMatrix &h)
{
	const auto n = h.rows();
	RealHessian out;
	out.matrix.resize(2 * n, 2 * n);
	Eigen::MatrixXd re = h.real();
	Eigen::MatrixXd im = h.imag();
	out.matrix << re, -im, -im, -re;
	return out;
}

inline RealHessian real_hessian(const MasterFunction &mf, const CVector &p,
                                double divisor_threshold = kDefaultDivisorThreshold)
{
	return real_hessian_from(log_jacobian(mf, p, divisor_threshold));
}

class NearSingular : public std::runtime_error
{
  public:
	explicit NearSingular(double smallest)
	    : std::runtime_error("real Hessian has an eigenvalue near zero (" + std::to_string(smallest) + ")"),
	      smallest(smallest)
	{
	}
	double smallest;
};

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending. Sweeps stop once the off-diagonal Frobenius norm drops below
/// 1e-12 times the norm of the matrix.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, int max_sweeps = 100)
{
	const auto n = a.rows();
	if (a.cols() != n)
		throw std::invalid_argument("matrix is not square");
	const double total = a.norm();
	auto off_diagonal = [&] {
		double s = 0.0;
		for (Eigen::Index i = 0; i < n; ++i)
			for (Eigen::Index j = 0; j < n; ++j)
				if (i != j)
					s += a(i, j) * a(i, j);
		return std::sqrt(s);
	};
	for (int sweep = 0; sweep < max_sweeps && off_diagonal() > 1e-12 * total; ++sweep)
	{
		for (Eigen::Index p = 0; p < n - 1; ++p)
			for (Eigen::Index q = p + 1; q < n; ++q)
			{
				if (a(p, q) == 0.0)
					continue;
				// rotation angle zeroing a(p, q)
				double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
				double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
				double c = 1.0 / std::sqrt(t * t + 1.0);
				double s = t * c;
				for (Eigen::Index k = 0; k < n; ++k)
				{
					double akp = a(k, p), akq = a(k, q);
					a(k, p) = c * akp - s * akq;
					a(k, q) = s * akp + c * akq;
				}
				for (Eigen::Index k = 0; k < n; ++k)
				{
					double apk = a(p, k), aqk = a(q, k);
					a(p, k) = c * apk - s * aqk;
					a(q, k) = s * apk + c * aqk;
				}
			}
	}
	Eigen::VectorXd eig = a.diagonal();
	std::sort(eig.data(), eig.data() + eig.size());
	return eig;
}

struct MorseData
{
	int index = 0;
	bool paired = false;
	double min_abs_eigenvalue = 0.0;
	Eigen::VectorXd spectrum;
};

/// Morse index and the +/- pairing of the spectrum, both judged relative to
/// the spectral radius. Throws NearSingular on an eigenvalue within
/// tol * radius of zero.
inline MorseData index_and_pairing(const RealHessian &h, double tol = 1e-9)
{
	MorseData out;
	out.spectrum = jacobi_eigenvalues(h.matrix);
	const auto m = out.spectrum.size();
	const double radius = out.spectrum.cwiseAbs().maxCoeff();
	out.min_abs_eigenvalue = out.spectrum.cwiseAbs().minCoeff();
	if (!(out.min_abs_eigenvalue > tol * radius))
		throw NearSingular(out.min_abs_eigenvalue);
	out.paired = true;
	for (Eigen::Index i = 0; i < m; ++i)
		if (std::abs(out.spectrum(i) + out.spectrum(m - 1 - i)) > tol * radius)
			out.paired = false;
	out.index = static_cast<int>((out.spectrum.array() < 0.0).count());
	return out;
}

} // namespace critcount
