#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bpst/binomial.hpp"
#include "bpst/exterior.hpp"
#include "bpst/zp_linalg.hpp"

namespace bpst {

/// Parameters for the spectral sequence of W_{n,k} -> PW_{n,k} -> CP^infty
/// over Z_(p). Pages are reliable for total degree <= window(): differentials
/// leaving that range never overshoot the x-truncation.
struct SsConfig {
    long n = 1, k = 1, p = 2;
    int xmax = 0;

    SsConfig() = default;
    SsConfig(long n_, long k_, long p_, int xmax_ = -1)
        : n(n_), k(k_), p(p_), xmax(xmax_ >= 0 ? xmax_ : static_cast<int>(n_) + 8)
    {
        if (k < 1 || k > n)
            throw IndexOutOfRange("SsConfig requires 1 <= k <= n");
        if (p < 2)
            throw Error("SsConfig: p must be a prime >= 2");
        if (xmax < n)
            throw TruncationTooSmall("xmax must be at least n");
        if (k > 16)
            throw Error("SsConfig: page engine limited to k <= 16 exterior generators");
    }

    int window() const { return 2 * (xmax - static_cast<int>(n)); }
    StiefelContext context() const { return StiefelContext(n, k); }
};

/// d_{2j}(y_j) = C(n,j) x^j; d_r(y_j) = 0 for r < 2j.
inline ExtElem<PLocal> transgress(const SsConfig& cfg, long j)
{
    StiefelContext ctx = cfg.context();
    if (!ctx.contains(j))
        throw IndexOutOfRange("transgress: y_" + std::to_string(j));
    return ExtElem<PLocal>::x_power(ctx, static_cast<int>(j), PLocal(binom(cfg.n, j)));
}

/// One bidegree of a page: adapted generators with their cyclic orders
/// (nullopt = a free Z_(p) summand, e > 0 = Z/p^e).
struct PageSlot {
    std::vector<ExtElem<PLocal>> reps;
    std::vector<std::optional<long>> orders;

    ModuleShape shape() const
    {
        ModuleShape m;
        for (const auto& o : orders) {
            if (!o)
                ++m.free_rank;
            else
                m.torsion.push_back(*o);
        }
        std::sort(m.torsion.rbegin(), m.torsion.rend());
        return m;
    }
};

struct Page {
    int r = 0;
    SsConfig cfg;
    std::map<std::pair<long, long>, PageSlot> slots; // keyed by (s,t), nontrivial only
    // d_r out of each slot, rows = target live generators, cols = source ones
    std::map<std::pair<long, long>, Mat> diff;

    const PageSlot* slot(long s, long t) const
    {
        if (s + t > cfg.window() || s + t < 0)
            throw TruncationTooSmall("bidegree (" + std::to_string(s) + "," + std::to_string(t)
                                     + ") outside validity window");
        auto it = slots.find({s, t});
        return it == slots.end() ? nullptr : &it->second;
    }

    ModuleShape shape(long s, long t) const
    {
        const PageSlot* sl = slot(s, t);
        return sl ? sl->shape() : ModuleShape{};
    }
};

/// Page-turning engine for the filtered complex Lambda(y_{n-k+1..n}) (x)
/// Z_(p)[x]/(x^{xmax+1}) with D(y_j) = c_j x^j extended as a derivation,
/// filtered by x-degree. The transgression constants c_j default to C(n,j)
/// and can be overridden to exercise the cross-check harness.
class SsEngine {
public:
    explicit SsEngine(const SsConfig& cfg, std::map<long, Int> transgression_override = {})
        : cfg_(cfg), ctx_(cfg.context())
    {
        for (long j = ctx_.lo(); j <= cfg_.n; ++j) {
            auto it = transgression_override.find(j);
            tcoeff_[j] = it != transgression_override.end() ? it->second : binom(cfg_.n, j);
        }
    }

    const SsConfig& config() const { return cfg_; }
    const StiefelContext& context() const { return ctx_; }

    using BasisElem = std::pair<YSubset, int>; // (subset, x-power)

    /// Basis of the total-degree-T component, x-power ascending.
    const std::vector<BasisElem>& basis(long T)
    {
        auto it = basis_.find(T);
        if (it != basis_.end())
            return it->second;
        if (subset_deg_.empty()) {
            subset_deg_.resize(size_t{1} << cfg_.k);
            for (YSubset s = 0; s < subset_deg_.size(); ++s)
                subset_deg_[s] = ysubset_degree(ctx_, s);
        }
        std::vector<BasisElem> b;
        for (int t = 0; t <= cfg_.xmax && 2 * t <= T; ++t) {
            long need = T - 2 * t;
            for (YSubset s = 0; s < subset_deg_.size(); ++s)
                if (subset_deg_[s] == need)
                    b.push_back({s, t});
        }
        std::stable_sort(b.begin(), b.end(),
                         [](const BasisElem& a, const BasisElem& c) { return a.second < c.second; });
        return basis_.emplace(T, std::move(b)).first->second;
    }

    /// D applied to a basis element, as (component index in degree T+1, coeff).
    std::vector<std::pair<size_t, Int>> d_of_basis(long T, const BasisElem& e)
    {
        const auto& target = basis(T + 1);
        auto index_of = [&target](const BasisElem& x) -> std::optional<size_t> {
            for (size_t i = 0; i < target.size(); ++i)
                if (target[i] == x)
                    return i;
            return std::nullopt;
        };
        std::vector<std::pair<size_t, Int>> out;
        int pos = 0;
        for (long j = ctx_.lo(); j <= cfg_.n; ++j) {
            YSubset bit = YSubset{1} << (j - ctx_.lo());
            if (!(e.first & bit))
                continue;
            int tt = e.second + static_cast<int>(j);
            if (tt <= cfg_.xmax) {
                Int c = tcoeff_.at(j);
                if (pos % 2 != 0)
                    c = -c;
                if (c != 0) {
                    auto idx = index_of({e.first & ~bit, tt});
                    if (idx)
                        out.push_back({*idx, c});
                }
            }
            ++pos;
        }
        return out;
    }

    ExtElem<PLocal> to_ext(long T, const std::vector<PLocal>& v)
    {
        const auto& b = basis(T);
        ExtElem<PLocal> e(ctx_);
        for (size_t i = 0; i < b.size(); ++i)
            if (!v[i].is_zero())
                e.add_term(b[i].first, b[i].second, v[i]);
        return e;
    }

    /// The complex differential as a derivation on elements; terms pushed
    /// past the x-truncation are dropped.
    ExtElem<PLocal> apply_d(const ExtElem<PLocal>& e)
    {
        if (!(e.context() == ctx_))
            throw MismatchedContext("element over a different (n,k)");
        ExtElem<PLocal> r(ctx_);
        for (const auto& [key, c] : e.terms()) {
            int pos = 0;
            for (long j = ctx_.lo(); j <= cfg_.n; ++j) {
                YSubset bit = YSubset{1} << (j - ctx_.lo());
                if (!(key.first & bit))
                    continue;
                int tt = key.second + static_cast<int>(j);
                if (tt <= cfg_.xmax) {
                    PLocal f = c * PLocal(tcoeff_.at(j));
                    r.add_term(key.first & ~bit, tt, pos % 2 == 0 ? f : -f);
                }
                ++pos;
            }
        }
        return r;
    }

    std::vector<PLocal> d_of_vector(long T, const std::vector<PLocal>& v)
    {
        std::vector<PLocal> w(basis(T + 1).size());
        const auto& b = basis(T);
        for (size_t i = 0; i < b.size(); ++i) {
            if (v[i].is_zero())
                continue;
            for (const auto& [j, c] : d_of_basis(T, b[i]))
                w[j] += v[i] * PLocal(c);
        }
        return w;
    }

    /// Z_r^{s,t}: columns spanning {z in F^s C^{s+t} : D z in F^{s+r}}.
    const Mat& cycles(long r, long s, long t)
    {
        long T = s + t;
        size_t lo = first_index(T, fmin(s));
        size_t hi_excl = first_index(T + 1, fmin(s + r)); // target coords to kill
        auto key = std::make_tuple(T, lo, hi_excl);
        auto it = zmemo_.find(key);
        if (it != zmemo_.end())
            return it->second;

        const auto& dom = basis(T);
        size_t dim = dom.size();
        // matrix of D restricted to the filtration suffix, projected to the
        // coordinates below filtration s+r
        Mat m(hi_excl, dim - lo);
        for (size_t i = lo; i < dim; ++i)
            for (const auto& [j, c] : d_of_basis(T, dom[i]))
                if (j < hi_excl)
                    m(j, i - lo) = PLocal(c);
        Mat ker = kernel_basis(m, cfg_.p);
        // embed back into full component coordinates
        Mat full(dim, ker.cols());
        for (size_t j = 0; j < ker.cols(); ++j)
            for (size_t i = 0; i < ker.rows(); ++i)
                full(lo + i, j) = ker(i, j);
        return zmemo_.emplace(key, std::move(full)).first->second;
    }

    /// E_r^{s,t} = Z_r / (D Z_{r-1}^{s-r+1,t+r-2} + Z_{r-1}^{s+1,t-1}).
    Quotient slot_quotient(long r, long s, long t)
    {
        const Mat& z = cycles(r, s, t);
        const Mat& pre = cycles(r - 1, s - r + 1, t + r - 2);
        const Mat& above = cycles(r - 1, s + 1, t - 1);
        long T = s + t;
        size_t dim = basis(T).size();
        Mat b(dim, pre.cols() + above.cols());
        for (size_t j = 0; j < pre.cols(); ++j) {
            std::vector<PLocal> w = d_of_vector(T - 1, pre.col(j));
            for (size_t i = 0; i < dim; ++i)
                b(i, j) = w[i];
        }
        for (size_t j = 0; j < above.cols(); ++j)
            for (size_t i = 0; i < dim; ++i)
                b(i, pre.cols() + j) = above(i, j);
        return quotient_structure(z, b, cfg_.p);
    }

    /// The r-th page on all bidegrees inside the validity window. Infinity
    /// is reached once r exceeds twice the x-truncation.
    Page page(int r, bool with_diff = true)
    {
        Page pg;
        pg.r = r;
        pg.cfg = cfg_;
        std::map<std::pair<long, long>, Quotient> quo;
        for (long T = 0; T <= cfg_.window(); ++T) {
            for (long s = 0; s <= 2 * cfg_.xmax; s += 2) {
                long t = T - s;
                if (t < 0)
                    break;
                if (basis(T).empty())
                    continue;
                Quotient q = slot_quotient(r, s, t);
                PageSlot slot;
                std::vector<size_t> live;
                for (size_t i = 0; i < q.orders.size(); ++i) {
                    if (q.orders[i] && *q.orders[i] == 0)
                        continue; // dead generator
                    live.push_back(i);
                    slot.reps.push_back(to_ext(T, q.gens.col(i)));
                    slot.orders.push_back(q.orders[i]);
                }
                if (!slot.reps.empty()) {
                    pg.slots.emplace(std::make_pair(s, t), std::move(slot));
                    quo.emplace(std::make_pair(s, t), std::move(q));
                }
            }
        }
        if (with_diff)
            fill_diff(pg, quo);
        return pg;
    }

    static int einfty_page_index(const SsConfig& cfg) { return 2 * cfg.xmax + 2; }

    /// E_infty within the validity window (the stable page; by the structure
    /// of the differentials it coincides with E_{2n+1}).
    Page run_to_einfty() { return page(einfty_page_index(cfg_), false); }

private:
    static int fmin(long s) { return s <= 0 ? 0 : static_cast<int>((s + 1) / 2); }

    /// Index of the first basis element of degree T with x-power >= tmin.
    size_t first_index(long T, int tmin)
    {
        const auto& b = basis(T);
        size_t i = 0;
        while (i < b.size() && b[i].second < tmin)
            ++i;
        return i;
    }

    void fill_diff(Page& pg, std::map<std::pair<long, long>, Quotient>& quo)
    {
        for (auto& [key, slot] : pg.slots) {
            auto [s, t] = key;
            long s2 = s + pg.r, t2 = t - pg.r + 1;
            if (s2 + t2 > cfg_.window() || t2 < 0)
                continue;
            auto qit = quo.find({s2, t2});
            auto sit = pg.slots.find({s2, t2});
            if (qit == quo.end() || sit == pg.slots.end())
                continue;
            // adapted coordinates of D(rep) for each live source generator,
            // restricted to the live rows of the target
            std::vector<size_t> live_rows;
            for (size_t i = 0; i < qit->second.orders.size(); ++i)
                if (!(qit->second.orders[i] && *qit->second.orders[i] == 0))
                    live_rows.push_back(i);
            Mat dmat(live_rows.size(), slot.reps.size());
            bool nonzero = false;
            for (size_t j = 0; j < slot.reps.size(); ++j) {
                std::vector<PLocal> v(basis(s + t).size());
                const auto& b = basis(s + t);
                for (size_t i = 0; i < b.size(); ++i)
                    v[i] = slot.reps[j].coeff(b[i].first, b[i].second);
                std::vector<PLocal> w = d_of_vector(s + t, v);
                std::vector<PLocal> c = adapted_coords(qit->second, w);
                for (size_t i = 0; i < live_rows.size(); ++i) {
                    dmat(i, j) = c[live_rows[i]];
                    if (!dmat(i, j).is_zero())
                        nonzero = true;
                }
            }
            if (nonzero)
                pg.diff.emplace(key, std::move(dmat));
        }
    }

    SsConfig cfg_;
    StiefelContext ctx_;
    std::map<long, Int> tcoeff_;
    std::vector<long> subset_deg_;
    std::map<long, std::vector<BasisElem>> basis_;
    std::map<std::tuple<long, size_t, size_t>, Mat> zmemo_;
};

/// Full E2 page within the window: one free summand per exterior subset and
/// x-power.
inline Page build_e2(const SsConfig& cfg)
{
    return SsEngine(cfg).page(2);
}

inline Page run_to_einfty(const SsConfig& cfg)
{
    return SsEngine(cfg).run_to_einfty();
}

} // namespace bpst
