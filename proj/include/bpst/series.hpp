#pragma once

#include <vector>

#include "bpst/vpoly.hpp"

namespace bpst {

/// Truncated univariate power series over CoeffPoly, stored densely by
/// x-degree 0..max_xdeg. Arithmetic never consults the truncated tail.
class Series {
public:
    Series() = default;
    explicit Series(const TruncationPolicy& pol) : pol_(pol), c_(static_cast<size_t>(pol.max_xdeg) + 1) {}

    static Series x(const TruncationPolicy& pol)
    {
        Series s(pol);
        s.c_[1] = CoeffPoly(1);
        return s;
    }
    static Series zero(const TruncationPolicy& pol) { return Series(pol); }

    static Series monomial(const TruncationPolicy& pol, int deg, const CoeffPoly& c)
    {
        Series s(pol);
        if (deg <= pol.max_xdeg)
            s.set(deg, truncate(c, pol));
        return s;
    }

    const TruncationPolicy& policy() const { return pol_; }
    int max_xdeg() const { return pol_.max_xdeg; }

    const CoeffPoly& coeff(int deg) const
    {
        static const CoeffPoly zero_poly;
        if (deg < 0 || deg > pol_.max_xdeg)
            return zero_poly;
        return c_[static_cast<size_t>(deg)];
    }

    void set(int deg, CoeffPoly c)
    {
        if (deg < 0 || deg > pol_.max_xdeg)
            return;
        c_[static_cast<size_t>(deg)] = std::move(c);
    }

    bool is_zero() const
    {
        for (const auto& c : c_)
            if (!c.is_zero())
                return false;
        return true;
    }

    friend Series operator+(const Series& a, const Series& b)
    {
        a.check_policy(b);
        Series r(a.pol_);
        for (int i = 0; i <= a.pol_.max_xdeg; ++i)
            r.c_[static_cast<size_t>(i)] = a.coeff(i) + b.coeff(i);
        return r;
    }
    friend Series operator-(const Series& a, const Series& b)
    {
        a.check_policy(b);
        Series r(a.pol_);
        for (int i = 0; i <= a.pol_.max_xdeg; ++i)
            r.c_[static_cast<size_t>(i)] = a.coeff(i) - b.coeff(i);
        return r;
    }

    friend Series operator*(const PLocal& s, const Series& a)
    {
        Series r(a.pol_);
        for (int i = 0; i <= a.pol_.max_xdeg; ++i)
            r.c_[static_cast<size_t>(i)] = s * a.coeff(i);
        return r;
    }

    friend Series operator*(const Series& a, const Series& b)
    {
        a.check_policy(b);
        Series r(a.pol_);
        for (int i = 0; i <= a.pol_.max_xdeg; ++i) {
            if (a.coeff(i).is_zero())
                continue;
            for (int j = 0; i + j <= a.pol_.max_xdeg; ++j) {
                if (b.coeff(j).is_zero())
                    continue;
                r.c_[static_cast<size_t>(i + j)] += poly_mul(a.coeff(i), b.coeff(j), a.pol_);
            }
        }
        return r;
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        if (a.pol_.max_xdeg != b.pol_.max_xdeg)
            return false;
        for (int i = 0; i <= a.pol_.max_xdeg; ++i)
            if (!(a.coeff(i) == b.coeff(i)))
                return false;
        return true;
    }

    bool is_p_local() const
    {
        for (const auto& c : c_)
            if (!c.is_p_local(pol_.p))
                return false;
        return true;
    }

    /// f with every v_i sent to 0.
    Series v_free() const
    {
        Series r(pol_);
        for (int i = 0; i <= pol_.max_xdeg; ++i)
            r.set(i, CoeffPoly(coeff(i).constant()));
        return r;
    }

    void check_policy(const Series& o) const
    {
        if (!(pol_ == o.pol_))
            throw MismatchedContext("series truncation policies differ");
    }

private:
    TruncationPolicy pol_;
    std::vector<CoeffPoly> c_;
};

/// f(g(x)) truncated at the policy degree; g must have zero constant term.
inline Series series_compose(const Series& f, const Series& g)
{
    f.check_policy(g);
    if (!g.coeff(0).is_zero())
        throw NonzeroConstantTerm();
    const TruncationPolicy& pol = f.policy();
    Series r = Series::monomial(pol, 0, f.coeff(0));
    Series gk = Series::monomial(pol, 0, CoeffPoly(1)); // g^k, k = 0
    for (int k = 1; k <= pol.max_xdeg; ++k) {
        gk = gk * g;
        if (gk.is_zero())
            break;
        const CoeffPoly& fk = f.coeff(k);
        if (fk.is_zero())
            continue;
        for (int i = k; i <= pol.max_xdeg; ++i)
            if (!gk.coeff(i).is_zero())
                r.set(i, r.coeff(i) + poly_mul(fk, gk.coeff(i), pol));
    }
    return r;
}

/// Compositional inverse of f = x + O(x^2), solved degree by degree.
inline Series series_reverse(const Series& f)
{
    const TruncationPolicy& pol = f.policy();
    if (!f.coeff(0).is_zero() || !(f.coeff(1) == CoeffPoly(1)))
        throw NotReversible();
    Series g = Series::x(pol);
    for (int k = 2; k <= pol.max_xdeg; ++k) {
        // with g correct below degree k, f(g) = x + defect*x^k + higher
        Series h = series_compose(f, g);
        g.set(k, g.coeff(k) - h.coeff(k));
    }
    return g;
}

} // namespace bpst
