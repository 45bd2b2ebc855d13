#pragma once

#include "bpst/errors.hpp"

namespace bpst {

/// Smallest d with p^d >= x, i.e. ceil(log_p(x)).
inline int ceil_log(long p, long x)
{
    int d = 0;
    long q = 1;
    while (q < x) {
        q *= p;
        ++d;
    }
    return d;
}

/// Truncation window for all graded-algebra work: generators v_1..v_d over
/// Z_(p), total v-exponent (J-order) at most max_jorder, series degree at
/// most max_xdeg. v_i first shows up with x^{p^i}, so d defaults to
/// ceil(log_p(max_xdeg)).
struct TruncationPolicy {
    long p = 2;
    int d = 0;
    int max_jorder = 1;
    int max_xdeg = 1;

    TruncationPolicy() = default;
    TruncationPolicy(long p_, int max_jorder_, int max_xdeg_, int d_ = -1)
        : p(p_), d(d_ >= 0 ? d_ : ceil_log(p_, max_xdeg_)), max_jorder(max_jorder_), max_xdeg(max_xdeg_)
    {
        if (p < 2 || max_jorder < 0 || max_xdeg < 1 || d < 0)
            throw Error("TruncationPolicy: invalid parameters");
    }

    /// Policy for plain work mod J^order (order = 2 drops all v_i v_j terms).
    static TruncationPolicy mod_j(long p, int order, int max_xdeg, int d = -1)
    {
        if (order < 1)
            throw Error("TruncationPolicy: J-adic order must be >= 1");
        return TruncationPolicy(p, order - 1, max_xdeg, d);
    }

    bool operator==(const TruncationPolicy&) const = default;
};

} // namespace bpst
