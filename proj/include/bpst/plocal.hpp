#pragma once

#include <algorithm>
#include <compare>
#include <ostream>
#include <sstream>
#include <string>

#include "bpst/bigint.hpp"
#include "bpst/errors.hpp"

namespace bpst {

/// p-adic valuation value: a (possibly negative) integer, or +infinity for 0.
/// vp(ab) = vp(a) + vp(b), vp(a+b) >= min(vp(a), vp(b)); the zero convention
/// +infinity keeps min-based staircase formulas free of special cases.
class Valuation {
public:
    constexpr Valuation() : inf_(true), v_(0) {}
    constexpr explicit Valuation(long v) : inf_(false), v_(v) {}

    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return inf_; }
    long value() const
    {
        if (inf_)
            throw Error("Valuation: value() of +infinity");
        return v_;
    }

    friend constexpr Valuation operator+(Valuation a, Valuation b)
    {
        if (a.inf_ || b.inf_)
            return infinity();
        return Valuation(a.v_ + b.v_);
    }

    friend constexpr bool operator==(Valuation a, Valuation b)
    {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }

    friend constexpr bool operator<(Valuation a, Valuation b)
    {
        if (a.inf_)
            return false;
        if (b.inf_)
            return true;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator<=(Valuation a, Valuation b) { return a < b || a == b; }
    friend constexpr bool operator>(Valuation a, Valuation b) { return b < a; }
    friend constexpr bool operator>=(Valuation a, Valuation b) { return b <= a; }

    friend constexpr Valuation min(Valuation a, Valuation b) { return a < b ? a : b; }

    friend std::ostream& operator<<(std::ostream& os, Valuation v)
    {
        if (v.inf_)
            return os << "inf";
        return os << v.v_;
    }

private:
    bool inf_;
    long v_;
};

enum class DivMode {
    Strict,        // result denominator must stay prime to p
    FractionField, // result may be any exact rational
};

/// Exact rational scalar. Values used as Z_(p) coefficients keep p out of the
/// denominator; log/exp series coefficients live in the full fraction field.
/// The ambient prime is carried by the calling context, never stored here.
class PLocal {
public:
    PLocal() = default;
    PLocal(long v) : q_(v) {}
    PLocal(const Int& v) : q_(v) {}
    PLocal(const Int& num, const Int& den)
    {
        if (den == 0)
            throw DivisionByZero();
        q_ = Rat(num) / Rat(den);
    }

    Int num() const { return numerator(q_); }
    Int den() const { return denominator(q_); }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return den() == 1; }

    friend PLocal operator+(const PLocal& a, const PLocal& b) { return PLocal(a.q_ + b.q_); }
    friend PLocal operator-(const PLocal& a, const PLocal& b) { return PLocal(a.q_ - b.q_); }
    friend PLocal operator*(const PLocal& a, const PLocal& b) { return PLocal(a.q_ * b.q_); }
    friend PLocal operator-(const PLocal& a) { return PLocal(-a.q_); }

    PLocal& operator+=(const PLocal& o) { q_ += o.q_; return *this; }
    PLocal& operator-=(const PLocal& o) { q_ -= o.q_; return *this; }
    PLocal& operator*=(const PLocal& o) { q_ *= o.q_; return *this; }

    // Exact division in the fraction field.
    friend PLocal operator/(const PLocal& a, const PLocal& b)
    {
        if (b.q_ == 0)
            throw DivisionByZero();
        return PLocal(a.q_ / b.q_);
    }

    friend bool operator==(const PLocal& a, const PLocal& b) { return a.q_ == b.q_; }
    friend bool operator!=(const PLocal& a, const PLocal& b) { return a.q_ != b.q_; }
    friend bool operator<(const PLocal& a, const PLocal& b) { return a.q_ < b.q_; }

    std::string str() const
    {
        std::ostringstream os;
        os << q_;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const PLocal& a) { return os << a.q_; }

private:
    explicit PLocal(Rat q) : q_(std::move(q)) {}
    Rat q_;
};

inline Valuation vp(const Int& a, long p)
{
    if (a == 0)
        return Valuation::infinity();
    return Valuation(vp_int(a, p));
}

inline Valuation vp(const PLocal& a, long p)
{
    if (a.is_zero())
        return Valuation::infinity();
    return Valuation(vp_int(a.num(), p) - vp_int(a.den(), p));
}

/// True when a lies in Z_(p), i.e. p does not divide the denominator.
inline bool is_p_local(const PLocal& a, long p)
{
    return a.is_zero() || a.den() % p != 0;
}

inline bool is_p_unit(const PLocal& a, long p)
{
    return !a.is_zero() && vp(a, p) == Valuation(0);
}

/// Division with explicit mode; Strict rejects results outside Z_(p).
inline PLocal plocal_div(const PLocal& a, const PLocal& b, long p, DivMode mode)
{
    PLocal r = a / b;
    if (mode == DivMode::Strict && !is_p_local(r, p))
        throw NonPLocalResult(a.str() + " / " + b.str() + " = " + r.str() + " at p=" + std::to_string(p));
    return r;
}

} // namespace bpst
