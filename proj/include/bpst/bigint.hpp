#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <string>

#include "bpst/errors.hpp"

namespace bpst {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, unsigned long exp)
{
    Int r = 1, b = base;
    while (exp) {
        if (exp & 1)
            r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// Exponent of p in a nonzero integer.
inline long vp_int(const Int& a, long p)
{
    if (a == 0)
        throw Error("vp_int: zero has no finite valuation");
    if (p == 2)
        return a < 0 ? static_cast<long>(lsb(Int(-a))) : static_cast<long>(lsb(a));
    if (a % p != 0)
        return 0;
    Int b = a / p;
    long v = 1;
    while (b % p == 0) {
        b /= p;
        ++v;
    }
    return v;
}

inline bool fits_int64(const Int& a)
{
    return a >= std::numeric_limits<long long>::min() && a <= std::numeric_limits<long long>::max();
}

} // namespace bpst
