#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "bpst/binomial.hpp"
#include "bpst/fgl.hpp"

namespace bpst {

/// Query: does some criterion rule out an S^1-equivariant map
/// W_{n,k} -> W_{m,l}? The Adams-operation criteria are p = 2 statements.
struct MapQuery {
    long n = 1, k = 1, m = 1, l = 1;

    MapQuery() = default;
    MapQuery(long n_, long k_, long m_, long l_) : n(n_), k(k_), m(m_), l(l_)
    {
        if (k < 1 || k > n || l < 1 || l > m)
            throw IndexOutOfRange("MapQuery requires 1 <= k <= n and 1 <= l <= m");
    }
};

using WitnessValue = std::variant<long, std::string>;
using Witness = std::vector<std::pair<std::string, WitnessValue>>;

struct CriterionResult {
    std::string name;
    bool applicable = true;
    bool fires = false;
    Witness witness;
};

enum class Verdict { RuledOut, Inconclusive };

inline std::string to_string(Verdict v)
{
    return v == Verdict::RuledOut ? "ruled_out" : "inconclusive";
}

/// Verdict plus the per-criterion evidence. RULED_OUT iff some criterion
/// fires; INCONCLUSIVE never claims a map exists.
struct ObstructionReport {
    MapQuery query;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<CriterionResult> criteria;

    const CriterionResult* first_firing() const
    {
        for (const auto& c : criteria)
            if (c.fires)
                return &c;
        return nullptr;
    }
};

/// Equivariant maps force n-k <= m-l; fires on violation.
inline CriterionResult check_dimension(const MapQuery& q)
{
    CriterionResult r;
    r.name = "dimension";
    r.fires = q.n - q.k > q.m - q.l;
    r.witness = {{"n-k", q.n - q.k}, {"m-l", q.m - q.l}};
    return r;
}

/// When n-k = m-l, C(n,n-k+1) must divide C(m,m-l+1); fires otherwise.
inline CriterionResult check_divisibility(const MapQuery& q)
{
    CriterionResult r;
    r.name = "divisibility";
    if (q.n - q.k != q.m - q.l) {
        r.applicable = false;
        return r;
    }
    Int a = binom(q.n, q.n - q.k + 1), b = binom(q.m, q.m - q.l + 1);
    r.fires = b % a != 0;
    r.witness = {{"binom(n,n-k+1)", a.str()}, {"binom(m,m-l+1)", b.str()}};
    return r;
}

namespace detail {

// (m-l) y_{m-l+2} + m x y_{m-l+1} with mod-2 coefficients, rendered.
inline std::string sq2_value(long top, long delta)
{
    std::string s;
    if ((delta % 2 + 2) % 2 == 1)
        s = "y" + std::to_string(delta + 2);
    if ((top % 2 + 2) % 2 == 1) {
        if (!s.empty())
            s += " + ";
        s += "x*y" + std::to_string(delta + 1);
    }
    return s.empty() ? "0" : s;
}

} // namespace detail

/// Steenrod-square criterion (proof conditions of the congruence family):
/// m,l even and n,k odd with m-l = n-k, both edge binomials of 2-valuation
/// exactly 1, and C(n,n-k+1) | C(m,m-l+1). Under these, Sq^2 evaluates
/// inconsistently on the pulled-back generator.
inline CriterionResult check_sq2(const MapQuery& q)
{
    CriterionResult r;
    r.name = "sq2";
    long delta = q.m - q.l;
    bool parity = q.m % 2 == 0 && q.l % 2 == 0 && q.n % 2 == 1 && q.k % 2 == 1;
    if (!parity || q.n - q.k != delta) {
        r.fires = false;
        return r;
    }
    Int a = binom(q.n, q.n - q.k + 1), b = binom(q.m, delta + 1);
    bool val_ok = vp(a, 2) == Valuation(1) && vp(b, 2) == Valuation(1);
    bool div_ok = b % a == 0;
    r.fires = val_ok && div_ok;
    if (r.fires) {
        r.witness = {{"sq2_target", detail::sq2_value(q.m, delta)},
                     {"sq2_source", detail::sq2_value(q.n, q.n - q.k)},
                     {"binom(n,n-k+1)", a.str()},
                     {"binom(m,m-l+1)", b.str()}};
    }
    return r;
}

/// Smallest s >= 1 with m < 2^s + m - l <= n, if any.
inline std::optional<long> bp_adams_witness_s(const MapQuery& q)
{
    for (long s = 1; (1L << s) + q.m - q.l <= q.n; ++s)
        if (q.m < (1L << s) + q.m - q.l)
            return s;
    return std::nullopt;
}

/// Adams-operation criterion: n-k < m-l, a witness s with
/// m < 2^s + m-l <= n, all of C(n,n-k+1)..C(n,m-l) even, C(m,m-l+1) odd and
/// m-l odd.
inline CriterionResult check_bp_adams(const MapQuery& q)
{
    CriterionResult r;
    r.name = "bp_adams";
    if (!(q.n - q.k < q.m - q.l)) {
        r.fires = false;
        return r;
    }
    auto s = bp_adams_witness_s(q);
    if (!s) {
        r.fires = false;
        return r;
    }
    for (long j = q.n - q.k + 1; j <= q.m - q.l; ++j) {
        if (vp_binom(q.n, j, 2) == Valuation(0)) {
            r.fires = false;
            r.witness = {{"odd_binom(n,j)_at_j", j}};
            return r;
        }
    }
    if (vp_binom(q.m, q.m - q.l + 1, 2) != Valuation(0) || (q.m - q.l) % 2 == 0) {
        r.fires = false;
        return r;
    }
    r.fires = true;
    r.witness = {{"s", *s}};
    return r;
}

/// The linear constraint obtained by comparing the coefficient of
/// v_s y_{2^s+m-l} in Psi^3(g^*(y_{m-l+1})) and g^*(Psi^3(y_{m-l+1})),
/// normalized to beta (m-l) = 2 (1 - 2^{2^s-1}) k_s. It is unsatisfiable:
/// the left side is a 2-local unit while the right side is even.
struct Constraint {
    long s = 0;
    long m_minus_l = 0;
    PLocal alpha_s;        // engine coefficient of v_s x^{2^s} in Psi^3
    PLocal lhs_beta_coeff; // (m-l) alpha_s   (raw form, coefficient of beta)
    Int raw_rhs;           // 1 - 3^{2^s-1}   (raw form, coefficient of k_s)
    Int rhs_coeff;         // 2 (1 - 2^{2^s-1})  (normalized form)
    long v2_lhs = 0;       // valuation of beta (m-l)
    long v2_rhs_min = 0;   // lower bound for the valuation of the right side
    bool unsatisfiable = false;

    std::string text() const
    {
        return "beta*(m-l) = " + rhs_coeff.str() + "*k_" + std::to_string(s) + "  [m-l = "
               + std::to_string(m_minus_l) + ", v2(lhs) = " + std::to_string(v2_lhs)
               + ", v2(rhs) >= " + std::to_string(v2_rhs_min) + "]";
    }
};

inline Constraint derive_constraint(const MapQuery& q, long s)
{
    CriterionResult adams = check_bp_adams(q);
    auto smin = bp_adams_witness_s(q);
    bool s_valid = smin && q.m < (1L << s) + q.m - q.l && (1L << s) + q.m - q.l <= q.n;
    if (!adams.fires || !s_valid)
        throw PreconditionFailed("derive_constraint requires the bp_adams conditions with witness s");

    long delta = q.m - q.l;
    Constraint c;
    c.s = s;
    c.m_minus_l = delta;
    c.alpha_s = adams3_alphas(static_cast<int>(s)).back();

    // coefficient of v_s y_{2^s + m - l} as linear forms in beta and k_j:
    // Psi^3(g^* y): beta (m-l) alpha_s + 3^{2^s-1} k_s
    // g^*(Psi^3 y): k_s, plus alpha_i nu_i terms only when 2^i + m-l <= m,
    //               which the witness condition excludes for i = s
    unsigned long e = (1UL << s) - 1;
    Int three_pow = pow_int(Int(3), e);
    c.lhs_beta_coeff = PLocal(delta) * c.alpha_s;
    c.raw_rhs = 1 - three_pow;
    if ((1L << s) + delta <= q.m)
        throw PreconditionFailed("witness s admits a g^*(y_{2^s+m-l}) contribution");

    // normalize: divide beta (m-l) alpha_s = (1 - 3^{2^s-1}) k_s by alpha_s
    PLocal normalized = PLocal(c.raw_rhs) / c.alpha_s;
    Int expect = 2 * (1 - pow_int(Int(2), e));
    if (!(normalized == PLocal(expect)))
        throw Error("derive_constraint: engine alpha_s disagrees with the normalized form");
    c.rhs_coeff = expect;

    // beta is a 2-local unit and m-l is odd, so v2(lhs) = 0; the right side
    // carries an explicit factor of 2 and k_s is 2-locally integral.
    c.v2_lhs = static_cast<long>(vp_int(Int(delta), 2));
    c.v2_rhs_min = static_cast<long>(vp_int(c.rhs_coeff, 2));
    c.unsatisfiable = c.v2_lhs < c.v2_rhs_min;
    return c;
}

struct FamilyResult {
    bool accepted = false;
    std::optional<MapQuery> query;
    std::string reason;
};

/// Instance family for the Steenrod criterion: r = -1,-2,3 mod 9 and
/// r = 2,1,-2 mod 7 give (n,k,m,l) = (16r-5, 7, 16r-2, 10) with sq2 firing.
inline FamilyResult steenrod_family(long r)
{
    if (r < 1)
        throw PreconditionFailed("steenrod_family requires r >= 1");
    FamilyResult f;
    long r9 = r % 9, r7 = r % 7;
    if (!(r9 == 8 || r9 == 7 || r9 == 3)) {
        f.reason = "r = " + std::to_string(r9) + " mod 9, not in {-1,-2,3}";
        return f;
    }
    if (!(r7 == 2 || r7 == 1 || r7 == 5)) {
        f.reason = "r = " + std::to_string(r7) + " mod 7, not in {2,1,-2}";
        return f;
    }
    long m = 16 * r - 2;
    MapQuery q(m - 3, 7, m, 10);
    if (!check_sq2(q).fires)
        throw Error("steenrod_family: sq2 criterion failed to fire on an accepted r");
    f.accepted = true;
    f.query = q;
    return f;
}

/// Run all criteria in fixed order.
inline ObstructionReport evaluate(const MapQuery& q)
{
    ObstructionReport rep;
    rep.query = q;
    rep.criteria = {check_dimension(q), check_divisibility(q), check_sq2(q), check_bp_adams(q)};
    rep.verdict = rep.first_firing() ? Verdict::RuledOut : Verdict::Inconclusive;
    return rep;
}

struct ScanRange {
    long lo = 1, hi = 1;
};

/// Rectangular scan in lexicographic (n,k,m,l) order; parameter combinations
/// with k > n or l > m are skipped.
inline std::vector<ObstructionReport> scan(ScanRange nr, ScanRange kr, ScanRange mr, ScanRange lr)
{
    std::vector<ObstructionReport> out;
    for (long n = nr.lo; n <= nr.hi; ++n)
        for (long k = kr.lo; k <= std::min(kr.hi, n); ++k)
            for (long m = mr.lo; m <= mr.hi; ++m)
                for (long l = lr.lo; l <= std::min(lr.hi, m); ++l)
                    out.push_back(evaluate(MapQuery(n, k, m, l)));
    return out;
}

} // namespace bpst
