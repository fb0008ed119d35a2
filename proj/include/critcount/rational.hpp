#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace critcount {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q". Decimal points are rejected so geometry stays exact.
inline Rational parse_rational(std::string_view text)
{
	std::string s(text);
	auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
	auto is_integer = [](std::string_view t) {
		if (!t.empty() && (t.front() == '-' || t.front() == '+'))
			t.remove_prefix(1);
		if (t.empty())
			return false;
		for (char c : t)
			if (c < '0' || c > '9')
				return false;
		return true;
	};
	auto slash = s.find('/');
	std::string num = s.substr(0, slash);
	if (!is_integer(num))
		throw bad();
	if (num.front() == '+')
		num.erase(0, 1);
	if (slash == std::string::npos)
		return Rational(BigInt(num));
	std::string den = s.substr(slash + 1);
	if (!is_integer(den) || den.front() == '-' || den.front() == '+')
		throw bad();
	BigInt d(den);
	if (d == 0)
		throw std::invalid_argument("zero denominator in '" + s + "'");
	return Rational(BigInt(num), d);
}

inline std::string to_string(const Rational &r)
{
	auto num = boost::multiprecision::numerator(r);
	auto den = boost::multiprecision::denominator(r);
	if (den == 1)
		return num.str();
	return num.str() + "/" + den.str();
}

inline double to_double(const Rational &r) { return r.convert_to<double>(); }

} // namespace critcount
