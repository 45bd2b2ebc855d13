#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bpst/plocal.hpp"
#include "bpst/truncation.hpp"

namespace bpst {

/// Monomial in the coefficient generators v_1..v_d, stored as the exponent
/// vector with trailing zeros trimmed. v_i sits in cohomological degree
/// -2(p^i - 1); the J-order of a monomial is its total exponent.
class VMonomial {
public:
    VMonomial() = default;
    explicit VMonomial(std::vector<int> exps) : e_(std::move(exps)) { trim(); }

    static VMonomial one() { return VMonomial(); }
    static VMonomial gen(int i)
    {
        if (i < 1)
            throw IndexOutOfRange("v-generator index must be >= 1");
        std::vector<int> e(static_cast<size_t>(i), 0);
        e.back() = 1;
        return VMonomial(std::move(e));
    }

    int exponent(int i) const
    {
        return (i >= 1 && static_cast<size_t>(i) <= e_.size()) ? e_[static_cast<size_t>(i) - 1] : 0;
    }
    int max_index() const { return static_cast<int>(e_.size()); }
    bool is_one() const { return e_.empty(); }

    int jorder() const
    {
        int s = 0;
        for (int x : e_)
            s += x;
        return s;
    }

    /// Cohomological degree -2 sum e_i (p^i - 1).
    long degree(long p) const
    {
        long s = 0, q = 1;
        for (size_t i = 0; i < e_.size(); ++i) {
            q *= p;
            s += static_cast<long>(e_[i]) * (q - 1);
        }
        return -2 * s;
    }

    friend VMonomial operator*(const VMonomial& a, const VMonomial& b)
    {
        std::vector<int> e(std::max(a.e_.size(), b.e_.size()), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (i < a.e_.size())
                e[i] += a.e_[i];
            if (i < b.e_.size())
                e[i] += b.e_[i];
        }
        return VMonomial(std::move(e));
    }

    // Lexicographic on exponent vectors; fixes term order and serialization.
    friend bool operator<(const VMonomial& a, const VMonomial& b)
    {
        size_t m = std::max(a.e_.size(), b.e_.size());
        for (size_t i = 0; i < m; ++i) {
            int ai = i < a.e_.size() ? a.e_[i] : 0;
            int bi = i < b.e_.size() ? b.e_[i] : 0;
            if (ai != bi)
                return ai < bi;
        }
        return false;
    }
    friend bool operator==(const VMonomial& a, const VMonomial& b) { return a.e_ == b.e_; }

    const std::vector<int>& exponents() const { return e_; }

private:
    void trim()
    {
        while (!e_.empty() && e_.back() == 0)
            e_.pop_back();
        for (int x : e_)
            if (x < 0)
                throw Error("VMonomial: negative exponent");
    }
    std::vector<int> e_;
};

/// Element of Z_(p)[v_1..v_d] (or its fraction field): sparse map from
/// monomial to nonzero scalar, in canonical term order.
class CoeffPoly {
public:
    using Terms = std::map<VMonomial, PLocal>;

    CoeffPoly() = default;
    CoeffPoly(const PLocal& c)
    {
        if (!c.is_zero())
            terms_[VMonomial::one()] = c;
    }
    CoeffPoly(long c) : CoeffPoly(PLocal(c)) {}

    static CoeffPoly gen(int i) { return monomial(VMonomial::gen(i), PLocal(1)); }
    static CoeffPoly monomial(const VMonomial& m, const PLocal& c)
    {
        CoeffPoly r;
        if (!c.is_zero())
            r.terms_[m] = c;
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    PLocal coeff(const VMonomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? PLocal(0) : it->second;
    }

    /// Scalar part (coefficient of the empty monomial).
    PLocal constant() const { return coeff(VMonomial::one()); }

    /// True when every monomial is v-free.
    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    void add_term(const VMonomial& m, const PLocal& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    friend CoeffPoly operator+(const CoeffPoly& a, const CoeffPoly& b)
    {
        CoeffPoly r = a;
        for (const auto& [m, c] : b.terms_)
            r.add_term(m, c);
        return r;
    }
    friend CoeffPoly operator-(const CoeffPoly& a, const CoeffPoly& b)
    {
        CoeffPoly r = a;
        for (const auto& [m, c] : b.terms_)
            r.add_term(m, -c);
        return r;
    }
    friend CoeffPoly operator-(const CoeffPoly& a)
    {
        CoeffPoly r;
        for (const auto& [m, c] : a.terms_)
            r.terms_[m] = -c;
        return r;
    }
    CoeffPoly& operator+=(const CoeffPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    friend CoeffPoly operator*(const PLocal& s, const CoeffPoly& a)
    {
        CoeffPoly r;
        if (s.is_zero())
            return r;
        for (const auto& [m, c] : a.terms_)
            r.terms_[m] = s * c;
        return r;
    }

    // Exact (untruncated) product; use poly_mul to stay inside a policy.
    friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b)
    {
        CoeffPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) { return a.terms_ == b.terms_; }

    /// True if every coefficient lies in Z_(p).
    bool is_p_local(long p) const
    {
        for (const auto& [m, c] : terms_)
            if (!bpst::is_p_local(c, p))
                return false;
        return true;
    }

    /// Homogeneous cohomological degree, or nullopt for 0 / mixed elements.
    std::optional<long> homogeneous_degree(long p) const
    {
        std::optional<long> deg;
        for (const auto& [m, c] : terms_) {
            long d = m.degree(p);
            if (deg && *deg != d)
                return std::nullopt;
            deg = d;
        }
        return deg;
    }

private:
    Terms terms_;
};

/// Product truncated to the policy: J-order above pol.max_jorder and
/// generators above pol.d are discarded.
inline CoeffPoly poly_mul(const CoeffPoly& a, const CoeffPoly& b, const TruncationPolicy& pol)
{
    CoeffPoly r;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            VMonomial m = ma * mb;
            if (m.jorder() > pol.max_jorder || m.max_index() > pol.d)
                continue;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

inline CoeffPoly truncate(const CoeffPoly& a, const TruncationPolicy& pol)
{
    CoeffPoly r;
    for (const auto& [m, c] : a.terms())
        if (m.jorder() <= pol.max_jorder && m.max_index() <= pol.d)
            r.add_term(m, c);
    return r;
}

/// Coefficient action of the Adams operation: v_i -> a^{p^i - 1} v_i,
/// extended multiplicatively over monomials.
inline CoeffPoly adams_coeff_action(const PLocal& a, const CoeffPoly& f, long p)
{
    auto pow_plocal = [](const PLocal& b, unsigned long e) {
        return PLocal(pow_int(b.num(), e), pow_int(b.den(), e));
    };
    CoeffPoly r;
    for (const auto& [m, c] : f.terms()) {
        PLocal scale(1);
        Int q = p;
        for (int i = 1; i <= m.max_index(); ++i) {
            if (int e = m.exponent(i); e > 0) {
                // v_i^e picks up a^{e (p^i - 1)}
                Int expnt = (q - 1) * e;
                scale *= pow_plocal(a, expnt.convert_to<unsigned long>());
            }
            q *= p;
        }
        r.add_term(m, scale * c);
    }
    return r;
}

} // namespace bpst
