#pragma once

#include <optional>
#include <vector>

#include "bpst/exterior.hpp"
#include "bpst/mseries.hpp"
#include "bpst/series.hpp"

namespace bpst {

/// Coefficients of log(x) = x + sum l_n x^{p^n}, solved exactly from
/// p l_n = sum_{0<=i<=n} l_i v_{n-i}^{p^i} with l_0 = 1 and v_0 = p, so
/// l_n (p - p^{p^n}) = sum_{i<n} l_i v_{n-i}^{p^i}. Fraction-field scalars.
inline Series log_series(const TruncationPolicy& pol)
{
    Series log = Series::x(pol);
    std::vector<CoeffPoly> l = {CoeffPoly(1)}; // l_0
    Int pq = 1;                                // p^n
    for (int n = 1;; ++n) {
        pq *= pol.p;
        if (pq > pol.max_xdeg)
            break;
        CoeffPoly rhs;
        Int pe = 1; // p^i
        for (int i = 0; i < n; ++i) {
            int gen = n - i;
            if (gen <= pol.d) {
                // v_{n-i}^{p^i}
                VMonomial m = VMonomial::gen(gen);
                std::vector<int> e(m.exponents());
                e[static_cast<size_t>(gen) - 1] = static_cast<int>(pe.convert_to<long>());
                VMonomial mp{e};
                if (mp.jorder() <= pol.max_jorder)
                    rhs += poly_mul(l[static_cast<size_t>(i)], CoeffPoly::monomial(mp, PLocal(1)), pol);
            }
            pe *= pol.p;
        }
        // pe = p^n here; divide by p - p^{p^n}
        Int denom = Int(pol.p) - pow_int(Int(pol.p), pq.convert_to<unsigned long>());
        CoeffPoly ln = PLocal(Int(1), denom) * rhs;
        l.push_back(ln);
        log.set(static_cast<int>(pq.convert_to<long>()), ln);
    }
    return log;
}

inline Series exp_series(const TruncationPolicy& pol)
{
    return series_reverse(log_series(pol));
}

/// The formal sum F(x,y) = exp(log x + log y).
inline BiSeries fgl_sum(const TruncationPolicy& pol)
{
    Series log = log_series(pol);
    BiSeries s = embed<2>(log, 0) + embed<2>(log, 1);
    return series_apply(exp_series(pol), s);
}

/// [a](x) = exp(a log x) for any exact scalar a.
inline Series n_series(const PLocal& a, const TruncationPolicy& pol)
{
    return series_compose(exp_series(pol), a * log_series(pol));
}

/// [a](x) by folding the formal sum a times; independent route used to
/// cross-check n_series. Requires a >= 0.
inline Series n_series_by_sum(long a, const TruncationPolicy& pol)
{
    if (a < 0)
        throw PreconditionFailed("n_series_by_sum requires a >= 0");
    BiSeries f = fgl_sum(pol);
    Series acc = Series::zero(pol);
    for (long i = 0; i < a; ++i) {
        MSeries<1> lhs = embed<1>(acc, 0);
        MSeries<1> rhs = embed<1>(Series::x(pol), 0);
        acc = to_series(f.subst<1>({lhs, rhs}));
    }
    return acc;
}

/// Adams operation on the orientation class: Psi^a(x) = a^{-1} [a](x).
/// a must be a unit of Z_(p) and the result must stay p-local.
inline Series adams_series(const PLocal& a, const TruncationPolicy& pol)
{
    if (!is_p_unit(a, pol.p))
        throw NonUnitParameter(a.str() + " at p=" + std::to_string(pol.p));
    Series r = (PLocal(1) / a) * n_series(a, pol);
    if (!r.is_p_local())
        throw NonPLocalResult("adams_series(" + a.str() + ") has p in a denominator");
    return r;
}

struct ArakiReport {
    bool ok = true;
    int first_bad_degree = -1;
    CoeffPoly lhs, rhs; // coefficients at the first failing degree
};

/// Checks the Araki relation [p](x) = p x +_F v_1 x^p +_F v_2 x^{p^2} +_F ...
/// up to the truncation.
inline ArakiReport araki_check(const TruncationPolicy& pol)
{
    Series lhs = n_series(PLocal(pol.p), pol);
    BiSeries f = fgl_sum(pol);
    Series rhs = PLocal(pol.p) * Series::x(pol);
    Int pq = 1;
    for (int i = 1; i <= pol.d; ++i) {
        pq *= pol.p;
        if (pq > pol.max_xdeg)
            break;
        Series term = Series::monomial(pol, static_cast<int>(pq.convert_to<long>()),
                                       CoeffPoly::gen(i));
        rhs = to_series(f.subst<1>({embed<1>(rhs, 0), embed<1>(term, 0)}));
    }
    ArakiReport rep;
    for (int dgr = 0; dgr <= pol.max_xdeg; ++dgr) {
        if (!(lhs.coeff(dgr) == rhs.coeff(dgr))) {
            rep.ok = false;
            rep.first_bad_degree = dgr;
            rep.lhs = lhs.coeff(dgr);
            rep.rhs = rhs.coeff(dgr);
            break;
        }
    }
    return rep;
}

/// alpha_i = coefficient of v_i x^{2^i} in Psi^3 at p=2 mod J^2, computed
/// from the engine (not the closed form).
inline std::vector<PLocal> adams3_alphas(int imax)
{
    TruncationPolicy pol = TruncationPolicy::mod_j(2, 2, imax >= 1 ? 1 << imax : 1);
    Series psi = adams_series(PLocal(3), pol);
    std::vector<PLocal> alphas;
    for (int i = 1; i <= imax; ++i)
        alphas.push_back(psi.coeff(1 << i).coeff(VMonomial::gen(i)));
    return alphas;
}

/// Adams operation on a coefficient polynomial: v_i -> a^{p^i-1} v_i.
inline CoeffPoly adams_apply(const PLocal& a, const CoeffPoly& f, const TruncationPolicy& pol)
{
    if (!is_p_unit(a, pol.p))
        throw NonUnitParameter(a.str());
    return adams_coeff_action(a, f, pol.p);
}

/// Adams operation on a series: coefficientwise action plus x -> Psi^a(x).
inline Series adams_apply(const PLocal& a, const Series& f, const TruncationPolicy& pol)
{
    if (!is_p_unit(a, pol.p))
        throw NonUnitParameter(a.str());
    Series mapped(pol);
    for (int d = 0; d <= pol.max_xdeg; ++d)
        mapped.set(d, adams_coeff_action(a, f.coeff(d), pol.p));
    Series psi = adams_series(a, pol);
    // split off the constant term; compose needs a zero constant term
    CoeffPoly c0 = mapped.coeff(0);
    mapped.set(0, CoeffPoly());
    Series r = series_compose(mapped, psi);
    r.set(0, r.coeff(0) + c0);
    return r;
}

/// Psi^3 on one Stiefel generator, mod I^2 + J^2:
/// y_j -> y_j + (j-1) sum_{i>=1, 2^i+j-1<=n} alpha_i v_i y_{2^i+j-1}.
inline ExtElem<CoeffPoly> adams3_on_y(const StiefelContext& ctx, long j,
                                      const std::vector<PLocal>& alphas)
{
    ExtElem<CoeffPoly> r = ExtElem<CoeffPoly>::y(ctx, j);
    for (int i = 1; (1L << i) + j - 1 <= ctx.n; ++i) {
        long tgt = (1L << i) + j - 1;
        if (!ctx.contains(tgt))
            continue;
        CoeffPoly c = (PLocal(j - 1) * alphas.at(static_cast<size_t>(i) - 1)) * CoeffPoly::gen(i);
        r = r + ext_mul(ExtElem<CoeffPoly>::x_power(ctx, 0, c), ExtElem<CoeffPoly>::y(ctx, tgt));
    }
    return r;
}

/// Adams operation on an exterior element, computed mod I^2 + J^2. The
/// formula for the generators is only available at p = 2, a = 3.
inline ExtElem<CoeffPoly> adams_apply(const PLocal& a, const ExtElem<CoeffPoly>& e,
                                      const TruncationPolicy& pol)
{
    if (pol.p != 2 || !(a == PLocal(3)))
        throw UnsupportedContext("Adams action on Stiefel generators is derived for p=2, a=3 only");
    const StiefelContext& ctx = e.context();
    int imax = 0;
    while ((1L << (imax + 1)) <= ctx.n)
        ++imax;
    std::vector<PLocal> alphas = adams3_alphas(imax);

    TruncationPolicy spol(pol.p, pol.max_jorder, std::max(pol.max_xdeg, 1), pol.d);
    Series psi = adams_series(a, spol);

    ExtElem<CoeffPoly> out(ctx);
    for (const auto& [key, c] : e.terms()) {
        if (std::popcount(key.first) >= 2)
            continue; // I^2
        // coefficient action, then Psi^3(x)^t, then the generator if present
        ExtElem<CoeffPoly> term =
            ExtElem<CoeffPoly>::x_power(ctx, 0, adams_coeff_action(a, c, pol.p));
        for (int t = 0; t < key.second; ++t) {
            ExtElem<CoeffPoly> px(ctx);
            for (int d = 1; d <= spol.max_xdeg; ++d)
                if (!psi.coeff(d).is_zero())
                    px.add_term(0, d, psi.coeff(d));
            term = ext_mul(term, px);
        }
        if (key.first) {
            long j = ctx.lo() + std::countr_zero(key.first);
            term = ext_mul(term, adams3_on_y(ctx, j, alphas));
        }
        // drop I^2 and J^2 overflow created by the products
        for (const auto& [k2, c2] : term.terms())
            if (std::popcount(k2.first) < 2)
                out.add_term(k2.first, k2.second, truncate(c2, pol));
    }
    return truncate(out, pol);
}

struct LogFormEntry {
    int n;
    PLocal computed;                  // scalar of v_n in the computed l_n mod J^2
    std::optional<PLocal> paper_form; // v_n/(p - p^n); absent when that is 0/0
    PLocal recursion_form;            // v_n/(p - p^{p^n})
    bool matches_paper = false;
    bool matches_recursion = false;
};

/// Diagnostic for the two candidate closed forms of l_n mod J^2. The
/// recursion-derived denominator p - p^{p^n} is the one the engine satisfies.
inline std::vector<LogFormEntry> log_form_report(const TruncationPolicy& pol)
{
    Series log = log_series(pol);
    std::vector<LogFormEntry> out;
    Int pq = 1;
    for (int n = 1;; ++n) {
        pq *= pol.p;
        if (pq > pol.max_xdeg)
            break;
        LogFormEntry e;
        e.n = n;
        e.computed = log.coeff(static_cast<int>(pq.convert_to<long>())).coeff(VMonomial::gen(n));
        Int dpaper = Int(pol.p) - pow_int(Int(pol.p), static_cast<unsigned long>(n));
        if (dpaper != 0) {
            e.paper_form = PLocal(Int(1), dpaper);
            e.matches_paper = *e.paper_form == e.computed;
        }
        e.recursion_form = PLocal(Int(1), Int(pol.p) - pow_int(Int(pol.p), pq.convert_to<unsigned long>()));
        e.matches_recursion = e.recursion_form == e.computed;
        out.push_back(e);
    }
    return out;
}

/// Immutable bundle of the three cached series for one truncation policy.
struct FglContext {
    TruncationPolicy pol;
    Series log;
    Series exp;
    BiSeries fgl;

    explicit FglContext(const TruncationPolicy& pol_)
        : pol(pol_), log(log_series(pol_)), exp(series_reverse(log)),
          fgl(series_apply(exp, embed<2>(log, 0) + embed<2>(log, 1)))
    {
    }
};

} // namespace bpst
