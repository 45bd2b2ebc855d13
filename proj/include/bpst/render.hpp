#pragma once

#include <string>
#include <vector>

#include "bpst/exterior.hpp"
#include "bpst/mseries.hpp"
#include "bpst/series.hpp"

namespace bpst {

// Stable rendering grammar shared by the CLI and golden tests: terms are
// joined with " + " / " - ", each term a '*'-product of a rational (in
// parentheses when it is a fraction), v<i> generators, powers of x (and y),
// and y<j> generators. Examples: "x + (1/2)*v1*x^2", "y6 + 5*v1*y7".

inline std::string render(const PLocal& c)
{
    return c.str();
}

namespace detail {

inline std::string rational_factor(const PLocal& c)
{
    std::string s = c.str();
    if (c.den() != 1)
        return "(" + s + ")";
    return s;
}

inline void append_power(std::vector<std::string>& f, const std::string& var, int e)
{
    if (e == 1)
        f.push_back(var);
    else if (e > 1)
        f.push_back(var + "^" + std::to_string(e));
}

inline std::string monomial_factors(const PLocal& coeff, const VMonomial& m,
                                    const std::vector<std::pair<std::string, int>>& vars)
{
    std::vector<std::string> f;
    for (int i = 1; i <= m.max_index(); ++i)
        append_power(f, "v" + std::to_string(i), m.exponent(i));
    for (const auto& [name, e] : vars)
        append_power(f, name, e);
    PLocal a = coeff < PLocal(0) ? -coeff : coeff;
    if (f.empty() || !a.is_one())
        f.insert(f.begin(), rational_factor(a));
    std::string s = f[0];
    for (size_t i = 1; i < f.size(); ++i)
        s += "*" + f[i];
    return s;
}

struct TermText {
    bool negative;
    std::string body;
};

inline std::string join_terms(const std::vector<TermText>& ts)
{
    if (ts.empty())
        return "0";
    std::string s;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i == 0)
            s += ts[i].negative ? "-" : "";
        else
            s += ts[i].negative ? " - " : " + ";
        s += ts[i].body;
    }
    return s;
}

inline void poly_terms(std::vector<TermText>& out, const CoeffPoly& c,
                       const std::vector<std::pair<std::string, int>>& vars)
{
    for (const auto& [m, a] : c.terms())
        out.push_back({a < PLocal(0), monomial_factors(a, m, vars)});
}

} // namespace detail

inline std::string render(const CoeffPoly& c)
{
    std::vector<detail::TermText> ts;
    detail::poly_terms(ts, c, {});
    return detail::join_terms(ts);
}

inline std::string render(const Series& s, const std::string& var = "x")
{
    std::vector<detail::TermText> ts;
    for (int d = 0; d <= s.max_xdeg(); ++d)
        detail::poly_terms(ts, s.coeff(d), {{var, d}});
    return detail::join_terms(ts);
}

inline std::string render(const BiSeries& s)
{
    // ascending total degree, x-part first within a degree
    std::vector<std::pair<std::array<int, 2>, CoeffPoly>> keys(s.terms().begin(), s.terms().end());
    std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        int ta = a.first[0] + a.first[1], tb = b.first[0] + b.first[1];
        if (ta != tb)
            return ta < tb;
        return a.first[1] < b.first[1];
    });
    std::vector<detail::TermText> ts;
    for (const auto& [k, c] : keys)
        detail::poly_terms(ts, c, {{"x", k[0]}, {"y", k[1]}});
    return detail::join_terms(ts);
}

inline std::string render(const ExtElem<CoeffPoly>& e)
{
    std::vector<detail::TermText> ts;
    const auto& ctx = e.context();
    for (const auto& [key, c] : e.terms()) {
        std::vector<std::pair<std::string, int>> vars;
        vars.emplace_back("x", key.second);
        for (long j = ctx.lo(); j <= ctx.n; ++j)
            if (key.first & (YSubset{1} << (j - ctx.lo())))
                vars.emplace_back("y" + std::to_string(j), 1);
        detail::poly_terms(ts, c, vars);
    }
    return detail::join_terms(ts);
}

inline std::string render(const ExtElem<PLocal>& e)
{
    ExtElem<CoeffPoly> lift(e.context());
    for (const auto& [key, c] : e.terms())
        lift.add_term(key.first, key.second, CoeffPoly(c));
    return render(lift);
}

} // namespace bpst
