#pragma once

#include <array>
#include <map>
#include <numeric>

#include "bpst/series.hpp"

namespace bpst {

/// Truncated power series in A variables over CoeffPoly, sparse by exponent
/// tuple, total degree at most pol.max_xdeg. BiSeries (A = 2) holds the
/// formal group law; A = 3 appears in associativity checks.
template <int A>
class MSeries {
    static_assert(A >= 1);

public:
    using Key = std::array<int, A>;
    using Terms = std::map<Key, CoeffPoly>;

    MSeries() = default;
    explicit MSeries(const TruncationPolicy& pol) : pol_(pol) {}

    static MSeries var(const TruncationPolicy& pol, int i)
    {
        if (i < 0 || i >= A)
            throw IndexOutOfRange("MSeries variable index");
        MSeries s(pol);
        Key k{};
        k[static_cast<size_t>(i)] = 1;
        s.terms_[k] = CoeffPoly(1);
        return s;
    }

    const TruncationPolicy& policy() const { return pol_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    static int total(const Key& k) { return std::accumulate(k.begin(), k.end(), 0); }

    CoeffPoly coeff(const Key& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? CoeffPoly() : it->second;
    }

    bool has_constant_term() const
    {
        return terms_.count(Key{}) > 0;
    }

    void add_term(const Key& k, const CoeffPoly& c)
    {
        if (total(k) > pol_.max_xdeg)
            return;
        CoeffPoly t = truncate(c, pol_);
        if (t.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, t);
        if (!inserted) {
            it->second += t;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    friend MSeries operator+(const MSeries& a, const MSeries& b)
    {
        a.check_policy(b);
        MSeries r = a;
        for (const auto& [k, c] : b.terms_)
            r.add_term(k, c);
        return r;
    }
    friend MSeries operator-(const MSeries& a, const MSeries& b)
    {
        a.check_policy(b);
        MSeries r = a;
        for (const auto& [k, c] : b.terms_)
            r.add_term(k, -c);
        return r;
    }

    friend MSeries operator*(const MSeries& a, const MSeries& b)
    {
        a.check_policy(b);
        MSeries r(a.pol_);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                Key k;
                for (size_t i = 0; i < A; ++i)
                    k[i] = ka[i] + kb[i];
                if (total(k) > a.pol_.max_xdeg)
                    continue;
                r.add_term(k, poly_mul(ca, cb, a.pol_));
            }
        }
        return r;
    }

    friend MSeries operator*(const PLocal& s, const MSeries& a)
    {
        MSeries r(a.pol_);
        for (const auto& [k, c] : a.terms_)
            r.add_term(k, s * c);
        return r;
    }

    friend bool operator==(const MSeries& a, const MSeries& b) { return a.terms_ == b.terms_; }

    /// Substitute series (with zero constant term) for each variable.
    template <int B>
    MSeries<B> subst(const std::array<MSeries<B>, A>& vals) const
    {
        for (const auto& v : vals) {
            if (v.has_constant_term())
                throw NonzeroConstantTerm();
            if (!(v.policy() == pol_))
                throw MismatchedContext("substitution policies differ");
        }
        // power tables per variable, built on demand
        std::array<std::vector<MSeries<B>>, A> pows;
        auto power = [&](size_t i, int e) -> const MSeries<B>& {
            auto& tab = pows[i];
            if (tab.empty()) {
                MSeries<B> one(pol_);
                one.add_term(typename MSeries<B>::Key{}, CoeffPoly(1));
                tab.push_back(one);
            }
            while (static_cast<int>(tab.size()) <= e)
                tab.push_back(tab.back() * vals[i]);
            return tab[static_cast<size_t>(e)];
        };
        MSeries<B> r(pol_);
        for (const auto& [k, c] : terms_) {
            MSeries<B> m(pol_);
            m.add_term(typename MSeries<B>::Key{}, c);
            for (size_t i = 0; i < A; ++i)
                if (k[i] > 0)
                    m = m * power(i, k[i]);
            r = r + m;
        }
        return r;
    }

    void check_policy(const MSeries& o) const
    {
        if (!(pol_ == o.pol_))
            throw MismatchedContext("series truncation policies differ");
    }

private:
    TruncationPolicy pol_;
    Terms terms_;
};

using BiSeries = MSeries<2>;
using TriSeries = MSeries<3>;

/// Univariate f viewed in A variables via x -> s.
template <int A>
MSeries<A> series_apply(const Series& f, const MSeries<A>& s)
{
    if (s.has_constant_term())
        throw NonzeroConstantTerm();
    const TruncationPolicy& pol = f.policy();
    if (!(pol == s.policy()))
        throw MismatchedContext("series_apply policies differ");
    MSeries<A> r(pol);
    r.add_term(typename MSeries<A>::Key{}, f.coeff(0));
    MSeries<A> sk(pol);
    sk.add_term(typename MSeries<A>::Key{}, CoeffPoly(1));
    for (int k = 1; k <= pol.max_xdeg; ++k) {
        sk = sk * s;
        if (sk.is_zero())
            break;
        const CoeffPoly& fk = f.coeff(k);
        if (fk.is_zero())
            continue;
        for (const auto& [key, c] : sk.terms())
            r.add_term(key, poly_mul(fk, c, pol));
    }
    return r;
}

/// Univariate series embedded as variable i of an A-variate series.
template <int A>
MSeries<A> embed(const Series& f, int i)
{
    MSeries<A> r(f.policy());
    for (int d = 0; d <= f.max_xdeg(); ++d) {
        if (f.coeff(d).is_zero())
            continue;
        typename MSeries<A>::Key k{};
        k[static_cast<size_t>(i)] = d;
        r.add_term(k, f.coeff(d));
    }
    return r;
}

/// Collapse a one-variable MSeries back to a dense Series.
inline Series to_series(const MSeries<1>& s)
{
    Series r(s.policy());
    for (const auto& [k, c] : s.terms())
        r.set(k[0], c);
    return r;
}

} // namespace bpst
