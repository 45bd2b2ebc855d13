#pragma once

#include <chrono>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "bpst/fgl.hpp"
#include "bpst/obstruction.hpp"
#include "bpst/presentation.hpp"

namespace bpst {

struct SuiteResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace acceptance {

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& what)
    {
        if (ok) {
            ok = false;
            detail = what;
        }
    }
    void expect(bool cond, const std::string& what)
    {
        if (!cond)
            fail(what);
    }
};

// 1. Complex projective space: presentation of (n,1) is the truncated
//    polynomial ring, ideal (x^n), no gamma generators.
inline Check projective_spaces(bool)
{
    Check c;
    for (long p : {2L, 3L, 5L}) {
        for (long n = 1; n <= 20; ++n) {
            Presentation pr = presentation_closed_form(SsConfig(n, 1, p));
            c.expect(pr.ideal.size() == 1 && pr.ideal[0].first == 1 && pr.ideal[0].second == n,
                     "ideal of (n,1) is not (x^n) at n=" + std::to_string(n) + " p=" + std::to_string(p));
            c.expect(pr.gamma_degrees.empty() && pr.gamma_multipliers.empty(),
                     "gamma generators nonempty for k=1");
        }
    }
    return c;
}

// 2. Page engine and closed form agree degreewise inside the window.
inline Check engine_vs_closed_form(bool quick)
{
    Check c;
    long nmax = quick ? 7 : 10;
    for (long p : {2L, 3L})
        for (long n = 1; n <= nmax; ++n)
            for (long k = 1; k <= n; ++k) {
                CrossCheckReport rep = cross_check(SsConfig(n, k, p));
                c.expect(rep.agree, "(" + std::to_string(n) + "," + std::to_string(k) + ","
                                        + std::to_string(p) + "): " + rep.str());
            }
    return c;
}

// 3. Formal group law axioms, exactly at the truncation.
inline Check fgl_axioms(bool)
{
    Check c;
    for (long p : {2L, 3L}) {
        TruncationPolicy pol(p, 2, 8);
        BiSeries f = fgl_sum(pol);
        MSeries<1> x1 = MSeries<1>::var(pol, 0);
        MSeries<1> zero(pol);
        c.expect(to_series(f.subst<1>({x1, zero})) == Series::x(pol), "F(x,0) != x at p=" + std::to_string(p));
        BiSeries swapped = f.subst<2>({BiSeries::var(pol, 1), BiSeries::var(pol, 0)});
        c.expect(swapped == f, "F not symmetric at p=" + std::to_string(p));
        TriSeries left = f.subst<3>({f.subst<3>({TriSeries::var(pol, 0), TriSeries::var(pol, 1)}),
                                     TriSeries::var(pol, 2)});
        TriSeries right = f.subst<3>({TriSeries::var(pol, 0),
                                      f.subst<3>({TriSeries::var(pol, 1), TriSeries::var(pol, 2)})});
        c.expect(left == right, "F not associative at p=" + std::to_string(p));
    }
    return c;
}

// 4. Araki identity [p](x) = px +_F v_1 x^p +_F v_2 x^{p^2} +_F ...
inline Check araki(bool)
{
    Check c;
    for (long p : {2L, 3L}) {
        TruncationPolicy pol(p, 2, static_cast<int>(p * p));
        ArakiReport rep = araki_check(pol);
        c.expect(rep.ok, "araki_check failed at p=" + std::to_string(p) + " degree "
                             + std::to_string(rep.first_bad_degree));
    }
    return c;
}

// 5. Psi^3 mod J^2 at p=2 has coefficients alpha_i v_i with
//    alpha_i = (1 - 3^{2^i-1}) / (2 (1 - 2^{2^i-1})), strictly 2-local.
inline Check adams_closed_form(bool)
{
    Check c;
    TruncationPolicy pol = TruncationPolicy::mod_j(2, 2, 8);
    Series psi = adams_series(PLocal(3), pol);
    c.expect(psi.is_p_local(), "Psi^3 coefficients are not 2-local");
    c.expect(psi.coeff(1) == CoeffPoly(1), "Psi^3 leading coefficient is not 1");
    for (int i = 1; i <= 3; ++i) {
        unsigned long e = (1UL << i) - 1;
        PLocal alpha = PLocal(1 - pow_int(Int(3), e)) / PLocal(2 * (1 - pow_int(Int(2), e)));
        CoeffPoly expect = alpha * CoeffPoly::gen(i);
        c.expect(psi.coeff(1 << i) == expect,
                 "Psi^3 x^" + std::to_string(1 << i) + " coefficient != alpha_" + std::to_string(i) + " v_"
                     + std::to_string(i));
    }
    for (int d = 0; d <= 8; ++d) {
        bool is_pow2 = d > 0 && (d & (d - 1)) == 0;
        if (!is_pow2)
            c.expect(psi.coeff(d).is_zero(), "Psi^3 has a term at degree " + std::to_string(d));
    }
    return c;
}

// 6. Coefficient action Psi^3(v_i) = 3^{2^i - 1} v_i.
inline Check adams_coefficients(bool)
{
    Check c;
    TruncationPolicy pol = TruncationPolicy::mod_j(2, 2, 8, 3);
    for (int i = 1; i <= 3; ++i) {
        CoeffPoly got = adams_apply(PLocal(3), CoeffPoly::gen(i), pol);
        CoeffPoly expect = PLocal(pow_int(Int(3), (1UL << i) - 1)) * CoeffPoly::gen(i);
        c.expect(got == expect, "Psi^3(v_" + std::to_string(i) + ") wrong");
    }
    return c;
}

// 7. Psi^3(y_6) = y_6 + 5 v_1 y_7 mod I^2 + J^2 for (n,k) = (8,3).
inline Check adams_stiefel(bool)
{
    Check c;
    StiefelContext ctx(8, 3);
    TruncationPolicy pol = TruncationPolicy::mod_j(2, 2, 8);
    ExtElem<CoeffPoly> got = adams_apply(PLocal(3), ExtElem<CoeffPoly>::y(ctx, 6), pol);
    ExtElem<CoeffPoly> expect = ExtElem<CoeffPoly>::y(ctx, 6)
                                + ext_mul(ExtElem<CoeffPoly>::x_power(ctx, 0, PLocal(5) * CoeffPoly::gen(1)),
                                          ExtElem<CoeffPoly>::y(ctx, 7));
    c.expect(got == expect, "Psi^3(y_6) != y_6 + 5 v_1 y_7 for (8,3)");
    return c;
}

// 8. Obstruction verdicts on the pinned examples and soundness families.
inline Check obstruction_suite(bool quick)
{
    Check c;
    auto fires_first = [](const ObstructionReport& r) {
        const CriterionResult* f = r.first_firing();
        return f ? f->name : std::string{};
    };
    ObstructionReport r1 = evaluate(MapQuery(10, 10, 6, 5));
    c.expect(r1.verdict == Verdict::RuledOut && fires_first(r1) == "bp_adams", "(10,10,6,5) not ruled out by bp_adams");
    if (r1.first_firing()) {
        bool s3 = !r1.first_firing()->witness.empty()
                  && std::get<long>(r1.first_firing()->witness[0].second) == 3;
        c.expect(s3, "(10,10,6,5) witness s != 3");
    }
    ObstructionReport r2 = evaluate(MapQuery(4, 2, 5, 3));
    c.expect(r2.verdict == Verdict::RuledOut && fires_first(r2) == "divisibility", "(4,2,5,3) not ruled out by divisibility");
    ObstructionReport r3 = evaluate(MapQuery(5, 1, 9, 8));
    c.expect(r3.verdict == Verdict::RuledOut && fires_first(r3) == "dimension", "(5,1,9,8) not ruled out by dimension");
    long nmax = quick ? 12 : 30;
    for (long n = 1; n <= nmax; ++n)
        for (long k = 1; k <= n; ++k) {
            c.expect(evaluate(MapQuery(n, k, n, k)).verdict == Verdict::Inconclusive,
                     "identity map (" + std::to_string(n) + "," + std::to_string(k) + ") not inconclusive");
            if (k >= 2)
                c.expect(evaluate(MapQuery(n, k, n, k - 1)).verdict == Verdict::Inconclusive,
                         "forgetful map (" + std::to_string(n) + "," + std::to_string(k) + ") not inconclusive");
        }
    FamilyResult fam = steenrod_family(44);
    c.expect(fam.accepted && fam.query && fam.query->n == 699 && fam.query->k == 7 && fam.query->m == 702
                 && fam.query->l == 10,
             "steenrod_family(44) != (699,7,702,10)");
    if (fam.query)
        c.expect(check_sq2(*fam.query).fires, "sq2 does not fire on steenrod_family(44)");
    return c;
}

// 9. The constraint beta (m-l) = 2 (1 - 2^{2^s-1}) k_s and its 2-adic
//    contradiction for (10,10,6,5) with s = 3.
inline Check constraint_derivation(bool)
{
    Check c;
    Constraint con = derive_constraint(MapQuery(10, 10, 6, 5), 3);
    c.expect(con.rhs_coeff == Int(-254), "rhs coefficient != 2(1-2^7) = -254");
    c.expect(con.m_minus_l == 1, "m-l != 1");
    c.expect(con.v2_lhs == 0 && con.v2_rhs_min >= 1, "valuation contradiction not detected");
    c.expect(con.unsatisfiable, "constraint not flagged unsatisfiable");
    return c;
}

// 10. Valuation oracle: Kummer carries = Legendre counts = direct
//     factorization of the exact binomial.
inline Check valuation_oracle(bool quick)
{
    Check c;
    long nmax = quick ? 400 : 2000;
    for (long n = 0; n <= nmax && c.ok; ++n) {
        Int b = 1;
        for (long k = 0; k <= n && c.ok; ++k) {
            if (k > 0) {
                b *= n - k + 1;
                b /= k;
            }
            for (long p : {2L, 3L, 5L}) {
                Valuation kum = vp_binom(n, k, p);
                Valuation leg = vp_binom_legendre(n, k, p);
                Valuation dir = vp(b, p);
                if (!(kum == leg && leg == dir)) {
                    c.fail("valuation mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k)
                           + " p=" + std::to_string(p));
                }
            }
        }
    }
    return c;
}

} // namespace acceptance

/// Run every acceptance suite, one result per criterion. quick trims the
/// heavy parameter ranges for a sub-10s smoke pass.
inline std::vector<SuiteResult> run_acceptance(bool quick)
{
    using Fn = std::function<acceptance::Check(bool)>;
    std::vector<std::pair<std::string, Fn>> suites = {
        {"projective-spaces", acceptance::projective_spaces},
        {"engine-vs-closed-form", acceptance::engine_vs_closed_form},
        {"fgl-axioms", acceptance::fgl_axioms},
        {"araki-identity", acceptance::araki},
        {"adams-closed-form", acceptance::adams_closed_form},
        {"adams-coefficient-action", acceptance::adams_coefficients},
        {"adams-stiefel-formula", acceptance::adams_stiefel},
        {"obstruction-suite", acceptance::obstruction_suite},
        {"constraint-derivation", acceptance::constraint_derivation},
        {"valuation-oracle", acceptance::valuation_oracle},
    };
    std::vector<SuiteResult> out;
    int id = 0;
    for (const auto& [name, fn] : suites) {
        SuiteResult r;
        r.id = ++id;
        r.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            acceptance::Check c = fn(quick);
            r.pass = c.ok;
            r.detail = c.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

inline bool print_acceptance(std::ostream& os, const std::vector<SuiteResult>& results)
{
    bool all = true;
    for (const auto& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << " " << r.name << "  ("
           << static_cast<long>(r.seconds * 1000) << " ms)";
        if (!r.pass)
            os << "  " << r.detail;
        os << "\n";
        all = all && r.pass;
    }
    os << (all ? "acceptance: all criteria pass" : "acceptance: FAILURES present") << "\n";
    return all;
}

} // namespace bpst
