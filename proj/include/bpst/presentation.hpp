#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpst/spectral.hpp"

namespace bpst {

/// Closed-form presentation of the target ring: exterior generators
/// gamma_{n-k+2}..gamma_n over the staircase quotient Z_(p)[[x]]/I with
/// I = (C(n,j) x^j : n-k < j <= n). Everything is read off the p-adic
/// valuations of the binomial coefficients.
struct Presentation {
    long n = 0, k = 0, p = 0;
    std::vector<long> gamma_degrees;            // 2j-1 for j in n-k+2..n
    std::vector<std::pair<Int, long>> ideal;    // (C(n,j), j) for n-k < j <= n
    std::vector<long> staircase;                // e_j for j in n-k+1..n
    std::vector<long> minimal_generators;       // j where e_j strictly drops
    std::vector<long> gamma_multipliers;        // s_j for j in n-k+2..n

    /// Module in x-degree t: free for t <= n-k, Z/p^{e_t} above (0 when the
    /// running minimum has hit a unit binomial).
    ModuleShape x_column(long t) const
    {
        ModuleShape m;
        if (t <= n - k) {
            m.free_rank = 1;
            return m;
        }
        long idx = std::min(t, n) - (n - k + 1); // staircase is constant past j = n
        long e = staircase[static_cast<size_t>(idx)];
        if (e > 0)
            m.torsion.push_back(e);
        return m;
    }
};

inline Presentation presentation_closed_form(const SsConfig& cfg)
{
    Presentation pr;
    pr.n = cfg.n;
    pr.k = cfg.k;
    pr.p = cfg.p;
    long lo = cfg.n - cfg.k + 1;
    long prev = -1; // running minimum; -1 marks "+infinity"
    for (long j = lo; j <= cfg.n; ++j) {
        pr.ideal.emplace_back(binom(cfg.n, j), j);
        long v = vp_binom(cfg.n, j, cfg.p).value();
        long e = prev < 0 ? v : std::min(prev, v);
        if (prev < 0 || e < prev)
            pr.minimal_generators.push_back(j);
        pr.staircase.push_back(e);
        if (j >= lo + 1) {
            pr.gamma_degrees.push_back(2 * j - 1);
            pr.gamma_multipliers.push_back(std::max(0L, prev - v));
        }
        prev = e;
    }
    return pr;
}

/// Bigraded E_infty module predicted by the closed form: subsets of the
/// gamma generators tensored with the staircase column.
inline ModuleShape predicted_einfty(const Presentation& pr, long s, long t)
{
    ModuleShape out;
    if (s < 0 || s % 2 != 0 || t < 0)
        return out;
    ModuleShape col = pr.x_column(s / 2);
    if (col.is_trivial())
        return out;
    // number of gamma subsets of total degree t
    std::map<long, long> acc{{0, 1}};
    for (long d : pr.gamma_degrees) {
        std::map<long, long> next = acc;
        for (const auto& [sum, cnt] : acc)
            next[sum + d] += cnt;
        acc = std::move(next);
    }
    auto it = acc.find(t);
    long count = it == acc.end() ? 0 : it->second;
    if (count == 0)
        return out;
    out.free_rank = col.free_rank * count;
    for (long i = 0; i < count; ++i)
        for (long e : col.torsion)
            out.torsion.push_back(e);
    std::sort(out.torsion.rbegin(), out.torsion.rend());
    return out;
}

struct CrossCheckReport {
    bool agree = true;
    long s = 0, t = 0; // first disagreeing bidegree
    ModuleShape engine, closed_form;
    std::string str() const
    {
        if (agree)
            return "agree";
        return "disagree at (s,t)=(" + std::to_string(s) + "," + std::to_string(t) + "): engine "
               + engine.str() + " vs closed form " + closed_form.str();
    }
};

/// Degreewise comparison of the page engine against the closed form inside
/// the validity window: the x-column (s,0) against the staircase and the
/// exterior column (0,t) against the gamma subsets (those columns are free).
/// Mixed bidegrees are not compared: gamma_j x^a can die earlier than the
/// two factors suggest (4 y_4 x^3 bounds y_3 y_4 already for (n,k)=(4,2)),
/// so the naive bigraded tensor count over-counts there at p = 2.
/// A transgression override (mutated constants) is passed through to the
/// engine so the harness can check its own teeth.
inline CrossCheckReport cross_check(const SsConfig& cfg, std::map<long, Int> transgression_override = {})
{
    SsEngine engine(cfg, std::move(transgression_override));
    Page einf = engine.run_to_einfty();
    Presentation pr = presentation_closed_form(cfg);
    CrossCheckReport rep;
    auto mismatch = [&rep](long s, long t, ModuleShape got, ModuleShape want) {
        rep.agree = false;
        rep.s = s;
        rep.t = t;
        rep.engine = std::move(got);
        rep.closed_form = std::move(want);
    };
    for (long s = 0; s <= cfg.window(); s += 2) {
        ModuleShape got = einf.shape(s, 0);
        ModuleShape want = pr.x_column(s / 2);
        if (!(got == want)) {
            mismatch(s, 0, got, want);
            return rep;
        }
    }
    for (long t = 1; t <= cfg.window(); ++t) {
        ModuleShape got = einf.shape(0, t);
        ModuleShape want = predicted_einfty(pr, 0, t);
        if (!(got == want)) {
            mismatch(0, t, got, want);
            return rep;
        }
    }
    return rep;
}

} // namespace bpst
