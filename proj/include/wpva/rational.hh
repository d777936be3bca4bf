#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wpva {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    return Rational(Integer(num), Integer(den));
}

inline Rational rat_pow(const Rational& base, int e)
{
    if (e < 0)
    {
        if (base == 0)
            throw std::invalid_argument("rat_pow: negative power of zero");
        return rat_pow(Rational(1) / base, -e);
    }
    Rational r = 1, b = base;
    while (e > 0)
    {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Integer binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    Integer r = 1;
    for (int i = 0; i < k; ++i)
    {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline std::string rat_to_string(const Rational& q)
{
    return q.str();
}

} // namespace wpva
