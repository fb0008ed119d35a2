#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace critcount {

/// Seeded generator with a fixed mapping to doubles, so draws are identical
/// across standard libraries (std::uniform_real_distribution is not).
class Rng
{
  public:
	explicit Rng(std::uint64_t seed) : engine_(seed) {}

	/// Uniform in [0, 1).
	double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

	std::complex<double> unit_complex() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

	/// Standard normal by Box-Muller.
	double normal()
	{
		double u = uniform();
		while (u <= 0.0)
			u = uniform();
		return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * uniform());
	}

	std::uint64_t next() { return engine_(); }

  private:
	std::mt19937_64 engine_;
};

} // namespace critcount
