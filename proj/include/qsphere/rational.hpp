#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qsphere {

/// Exact rational coefficients, always kept in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string rational_str(const Rational &r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double rational_to_double(const Rational &r)
{
    return r.convert_to<double>();
}

inline int rational_sign(const Rational &r)
{
    return r.sign();
}

} // namespace qsphere
