#pragma once

#include <optional>
#include <vector>

#include "bpst/plocal.hpp"

namespace bpst {

/// Dense matrix over the p-local rationals.
class Mat {
public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static Mat identity(size_t n)
    {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i)
            m(i, i) = PLocal(1);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }

    PLocal& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const PLocal& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    void swap_rows(size_t i, size_t j)
    {
        for (size_t k = 0; k < c_; ++k)
            std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(size_t i, size_t j)
    {
        for (size_t k = 0; k < r_; ++k)
            std::swap((*this)(k, i), (*this)(k, j));
    }
    // row_i += f * row_j
    void add_row(size_t i, size_t j, const PLocal& f)
    {
        for (size_t k = 0; k < c_; ++k)
            (*this)(i, k) += f * (*this)(j, k);
    }
    void add_col(size_t i, size_t j, const PLocal& f)
    {
        for (size_t k = 0; k < r_; ++k)
            (*this)(k, i) += f * (*this)(k, j);
    }
    void scale_row(size_t i, const PLocal& s)
    {
        for (size_t k = 0; k < c_; ++k)
            (*this)(i, k) *= s;
    }
    void scale_col(size_t j, const PLocal& s)
    {
        for (size_t k = 0; k < r_; ++k)
            (*this)(k, j) *= s;
    }

    std::vector<PLocal> col(size_t j) const
    {
        std::vector<PLocal> v(r_);
        for (size_t i = 0; i < r_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    friend Mat operator*(const Mat& a, const Mat& b)
    {
        if (a.cols() != b.rows())
            throw Error("Mat: dimension mismatch in product");
        Mat r(a.rows(), b.cols());
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k).is_zero())
                    continue;
                for (size_t j = 0; j < b.cols(); ++j)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    std::vector<PLocal> apply(const std::vector<PLocal>& x) const
    {
        if (x.size() != c_)
            throw Error("Mat: dimension mismatch in apply");
        std::vector<PLocal> y(r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j)
                if (!(*this)(i, j).is_zero() && !x[j].is_zero())
                    y[i] += (*this)(i, j) * x[j];
        return y;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<PLocal> a_;
};

/// Smith normal form over Z_(p): u * m * v = diag(p^{e_0}, ..., p^{e_{rank-1}}, 0, ...)
/// with e_0 <= e_1 <= ... (divisibility is total on valuations, so a single
/// min-valuation pivot pass suffices). u, v and u_inv are invertible over Z_(p).
struct Snf {
    Mat d;
    Mat u, u_inv;
    Mat v;
    std::vector<long> diag; // valuations of the nonzero diagonal
    size_t rank() const { return diag.size(); }
};

inline Snf smith_normal_form(Mat m, long p)
{
    Snf s;
    size_t nr = m.rows(), nc = m.cols();
    s.u = Mat::identity(nr);
    s.u_inv = Mat::identity(nr);
    s.v = Mat::identity(nc);
    size_t r = 0;
    while (r < nr && r < nc) {
        // min-valuation pivot in the trailing submatrix
        std::optional<long> best;
        size_t bi = 0, bj = 0;
        for (size_t i = r; i < nr; ++i)
            for (size_t j = r; j < nc; ++j) {
                const PLocal& x = m(i, j);
                if (x.is_zero())
                    continue;
                long v = vp(x, p).value();
                if (!best || v < *best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (!best)
            break;
        if (bi != r) {
            m.swap_rows(r, bi);
            s.u.swap_rows(r, bi);
            s.u_inv.swap_cols(r, bi);
        }
        if (bj != r) {
            m.swap_cols(r, bj);
            s.v.swap_cols(r, bj);
        }
        const PLocal pivot = m(r, r);
        for (size_t i = r + 1; i < nr; ++i) {
            if (m(i, r).is_zero())
                continue;
            PLocal f = PLocal(0) - m(i, r) / pivot; // p-local: pivot has min valuation
            m.add_row(i, r, f);
            s.u.add_row(i, r, f);
            s.u_inv.add_col(r, i, PLocal(0) - f);
        }
        for (size_t j = r + 1; j < nc; ++j) {
            if (m(r, j).is_zero())
                continue;
            PLocal f = PLocal(0) - m(r, j) / pivot;
            m.add_col(j, r, f);
            s.v.add_col(j, r, f);
        }
        // normalize the pivot to an exact power of p
        PLocal unit = pivot / PLocal(pow_int(Int(p), static_cast<unsigned long>(*best)));
        PLocal inv = PLocal(1) / unit;
        m.scale_row(r, inv);
        s.u.scale_row(r, inv);
        s.u_inv.scale_col(r, unit);
        s.diag.push_back(*best);
        ++r;
    }
    s.d = std::move(m);
    return s;
}

/// Basis of ker(m) as columns; a saturated sublattice over Z_(p).
inline Mat kernel_basis(const Mat& m, long p)
{
    Snf s = smith_normal_form(m, p);
    size_t rank = s.rank(), nc = m.cols();
    Mat k(nc, nc - rank);
    for (size_t j = rank; j < nc; ++j)
        for (size_t i = 0; i < nc; ++i)
            k(i, j - rank) = s.v(i, j);
    return k;
}

/// Solve m x = b exactly; nullopt when b is outside the column span.
inline std::optional<std::vector<PLocal>> solve(const Snf& s, const std::vector<PLocal>& b)
{
    std::vector<PLocal> c = s.u.apply(b);
    size_t nc = s.v.rows();
    std::vector<PLocal> y(nc);
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank()) {
            if (!c[i].is_zero())
                y[i] = c[i] / s.d(i, i);
        } else if (!c[i].is_zero()) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

/// Isomorphism type of a finitely generated Z_(p)-module.
struct ModuleShape {
    long free_rank = 0;
    std::vector<long> torsion; // exponents e of Z/p^e factors, descending

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const ModuleShape&) const = default;

    std::string str() const
    {
        std::string s;
        auto add = [&s](const std::string& t) {
            if (!s.empty())
                s += " + ";
            s += t;
        };
        if (free_rank > 0)
            add("Z^" + std::to_string(free_rank));
        for (long e : torsion)
            add("Z/p^" + std::to_string(e));
        return s.empty() ? "0" : s;
    }
};

/// Subquotient Z/B presented by adapted generators: columns of gens with
/// orders[i] = e (relation p^e, e = 0 kills the generator) or nullopt (free).
/// coords_to_adapted maps Z-basis coordinates to adapted coordinates.
struct Quotient {
    Mat zbasis;
    Mat gens;
    std::vector<std::optional<long>> orders;
    Mat coords_to_adapted;
    Snf zsnf; // factorization of zbasis, for expressing vectors

    ModuleShape shape() const
    {
        ModuleShape m;
        for (const auto& o : orders) {
            if (!o)
                ++m.free_rank;
            else if (*o > 0)
                m.torsion.push_back(*o);
        }
        std::sort(m.torsion.rbegin(), m.torsion.rend());
        return m;
    }
};

/// Adapted presentation of span(zbasis)/span(bgens); bgens must lie in the
/// span of zbasis (columns in ambient coordinates in both cases).
inline Quotient quotient_structure(Mat zbasis, const Mat& bgens, long p)
{
    Quotient q;
    q.zsnf = smith_normal_form(zbasis, p);
    size_t zr = zbasis.cols();
    Mat coords(zr, bgens.cols());
    for (size_t j = 0; j < bgens.cols(); ++j) {
        auto x = solve(q.zsnf, bgens.col(j));
        if (!x)
            throw Error("quotient_structure: relation outside the lattice");
        for (size_t i = 0; i < zr; ++i)
            coords(i, j) = (*x)[i];
    }
    Snf cs = smith_normal_form(coords, p);
    q.zbasis = std::move(zbasis);
    q.gens = q.zbasis * cs.u_inv;
    q.coords_to_adapted = cs.u;
    q.orders.assign(zr, std::nullopt);
    for (size_t i = 0; i < cs.rank(); ++i)
        q.orders[i] = cs.diag[i];
    return q;
}

/// Coordinates of an ambient vector in the adapted generators of q.
inline std::vector<PLocal> adapted_coords(const Quotient& q, const std::vector<PLocal>& w)
{
    auto y = solve(q.zsnf, w);
    if (!y)
        throw Error("adapted_coords: vector outside the lattice");
    return q.coords_to_adapted.apply(*y);
}

} // namespace bpst
