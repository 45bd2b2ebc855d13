#pragma once

#include "bpst/bigint.hpp"
#include "bpst/plocal.hpp"

namespace bpst {

/// Exact binomial coefficient; 0 outside the range 0 <= k <= n.
inline Int binom(long n, long k)
{
    if (n < 0)
        throw IndexOutOfRange("binom: n must be nonnegative");
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact at every step
    }
    return r;
}

/// vp(C(n,k)) as the carry count when adding k and n-k in base p (Kummer).
inline Valuation vp_binom(long n, long k, long p)
{
    if (k < 0 || k > n)
        return Valuation::infinity(); // C(n,k) = 0
    long a = k, b = n - k;
    long carries = 0, carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        long s = a % p + b % p + carry;
        carry = s >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
    }
    return Valuation(carries);
}

/// vp(C(n,k)) by Legendre's factorial formula; independent of vp_binom.
inline Valuation vp_binom_legendre(long n, long k, long p)
{
    if (k < 0 || k > n)
        return Valuation::infinity();
    auto legendre = [p](long m) {
        long s = 0;
        for (long q = m / p; q > 0; q /= p)
            s += q;
        return s;
    };
    return Valuation(legendre(n) - legendre(k) - legendre(n - k));
}

} // namespace bpst
