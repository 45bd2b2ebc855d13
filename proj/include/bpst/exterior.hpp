#pragma once

#include <bit>
#include <cstdint>
#include <map>

#include "bpst/vpoly.hpp"

namespace bpst {

/// Stiefel frame parameters shared by exterior-algebra elements: generators
/// y_{n-k+1}..y_n of degree 2j-1, polynomial class x of degree 2.
struct StiefelContext {
    long n = 0;
    long k = 0;

    StiefelContext() = default;
    StiefelContext(long n_, long k_) : n(n_), k(k_)
    {
        if (k < 1 || k > n)
            throw IndexOutOfRange("StiefelContext requires 1 <= k <= n");
        if (k > 62)
            throw Error("StiefelContext: more than 62 exterior generators unsupported");
    }

    long lo() const { return n - k + 1; } // smallest generator index
    bool contains(long j) const { return j >= lo() && j <= n; }
    bool operator==(const StiefelContext&) const = default;
};

/// Sorted generator subset as a bitmask over y_{n-k+1}..y_n.
using YSubset = std::uint64_t;

inline YSubset ysubset_single(const StiefelContext& ctx, long j)
{
    if (!ctx.contains(j))
        throw IndexOutOfRange("generator y_" + std::to_string(j));
    return YSubset{1} << (j - ctx.lo());
}

inline long ysubset_degree(const StiefelContext& ctx, YSubset s)
{
    long deg = 0;
    for (long j = ctx.lo(); j <= ctx.n; ++j)
        if (s & (YSubset{1} << (j - ctx.lo())))
            deg += 2 * j - 1;
    return deg;
}

/// Koszul sign of merging two disjoint sorted subsets: (-1)^{inversions}.
inline int koszul_sign(YSubset a, YSubset b)
{
    int sign = 1;
    while (b) {
        YSubset bit = b & (~b + 1); // lowest set bit of b
        // generators of a that must move past this one
        YSubset above = a & ~(bit - 1);
        if (std::popcount(above) % 2 != 0)
            sign = -sign;
        b &= b - 1;
    }
    return sign;
}

/// Element of Lambda(y_{n-k+1}..y_n) (x) R[x] for a coefficient ring R
/// (PLocal for the spectral sequence, CoeffPoly for Adams operations).
/// y_j^2 = 0 is built into the subset representation.
template <typename R>
class ExtElem {
public:
    // key: (subset, x-exponent)
    using Key = std::pair<YSubset, int>;
    using Terms = std::map<Key, R>;

    ExtElem() = default;
    explicit ExtElem(const StiefelContext& ctx) : ctx_(ctx) {}

    static ExtElem y(const StiefelContext& ctx, long j)
    {
        ExtElem e(ctx);
        e.terms_[{ysubset_single(ctx, j), 0}] = R(1);
        return e;
    }
    static ExtElem x_power(const StiefelContext& ctx, int t, const R& c = R(1))
    {
        ExtElem e(ctx);
        e.add_term(0, t, c);
        return e;
    }
    static ExtElem one(const StiefelContext& ctx) { return x_power(ctx, 0); }

    const StiefelContext& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    R coeff(YSubset s, int t) const
    {
        auto it = terms_.find({s, t});
        return it == terms_.end() ? R(0) : it->second;
    }

    void add_term(YSubset s, int t, const R& c)
    {
        if (c == R(0))
            return;
        if (t < 0)
            throw IndexOutOfRange("negative x-exponent");
        auto [it, inserted] = terms_.try_emplace(Key{s, t}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == R(0))
                terms_.erase(it);
        }
    }

    /// Total degree when homogeneous: sum (2j-1) over the subset plus 2t.
    std::optional<long> homogeneous_degree() const
    {
        std::optional<long> deg;
        for (const auto& [key, c] : terms_) {
            long d = ysubset_degree(ctx_, key.first) + 2 * key.second;
            if (deg && *deg != d)
                return std::nullopt;
            deg = d;
        }
        return deg;
    }

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b)
    {
        a.check_context(b);
        ExtElem r = a;
        for (const auto& [key, c] : b.terms_)
            r.add_term(key.first, key.second, c);
        return r;
    }
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b)
    {
        a.check_context(b);
        ExtElem r = a;
        for (const auto& [key, c] : b.terms_)
            r.add_term(key.first, key.second, R(0) - c);
        return r;
    }
    friend ExtElem operator*(const R& s, const ExtElem& a)
    {
        ExtElem r(a.ctx_);
        for (const auto& [key, c] : a.terms_)
            r.add_term(key.first, key.second, s * c);
        return r;
    }

    friend bool operator==(const ExtElem& a, const ExtElem& b)
    {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }

    void check_context(const ExtElem& o) const
    {
        if (!(ctx_ == o.ctx_))
            throw MismatchedContext("exterior elements over different (n,k)");
    }

private:
    StiefelContext ctx_;
    Terms terms_;
};

/// Graded-commutative product; overlapping subsets vanish, merges carry the
/// Koszul sign.
template <typename R>
ExtElem<R> ext_mul(const ExtElem<R>& a, const ExtElem<R>& b)
{
    a.check_context(b);
    ExtElem<R> r(a.context());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.first & kb.first)
                continue; // y_j^2 = 0
            int sign = koszul_sign(ka.first, kb.first);
            R c = ca * cb;
            if (sign < 0)
                c = R(0) - c;
            r.add_term(ka.first | kb.first, ka.second + kb.second, c);
        }
    }
    return r;
}

/// Drop terms violating the policy (x-degree always; J-order for CoeffPoly
/// coefficients). Idempotent.
inline ExtElem<PLocal> truncate(const ExtElem<PLocal>& e, const TruncationPolicy& pol)
{
    ExtElem<PLocal> r(e.context());
    for (const auto& [key, c] : e.terms())
        if (key.second <= pol.max_xdeg)
            r.add_term(key.first, key.second, c);
    return r;
}

inline ExtElem<CoeffPoly> truncate(const ExtElem<CoeffPoly>& e, const TruncationPolicy& pol)
{
    ExtElem<CoeffPoly> r(e.context());
    for (const auto& [key, c] : e.terms()) {
        if (key.second > pol.max_xdeg)
            continue;
        CoeffPoly t = truncate(c, pol);
        if (!t.is_zero())
            r.add_term(key.first, key.second, t);
    }
    return r;
}

} // namespace bpst
