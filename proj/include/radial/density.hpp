#pragma once

// Distance from an O-function to span{X_1..X_L}, X_l = |x|^l, by the normal
// equations.  The monomial Gram matrix <X_k, X_l> = (1-1/q)/(1-q^{-(k+l+1)})
// is Hilbert-like, so the solve is templated on the real type and runs in
// 100-digit binary floating point by default.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace radial {

using high_precision = boost::multiprecision::cpp_bin_float_100;

template <class Real>
using RealMatrix = std::vector<std::vector<Real>>;

namespace detail {

template <class Real>
Real ipow(Real x, long long k)
{
    if (k < 0) {
        x = Real(1) / x;
        k = -k;
    }
    Real r(1);
    while (k) {
        if (k & 1)
            r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

template <class Real>
Real abs_real(const Real& x)
{
    return x < Real(0) ? Real(-x) : x;
}

template <class Real>
Real one_norm(const RealMatrix<Real>& a)
{
    Real best(0);
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        Real s(0);
        for (std::size_t r = 0; r < n; ++r)
            s += abs_real(a[r][c]);
        if (s > best)
            best = s;
    }
    return best;
}

} // namespace detail

// LU with partial pivoting; solves A X = B for all columns of B and returns
// (X, 1-norm condition estimate ||A||_1 ||A^{-1}||_1).  Throws
// ill_conditioned_error when cond * eps exceeds `max_cond_eps`.
template <class Real>
std::pair<RealMatrix<Real>, double> pivoted_solve(RealMatrix<Real> a, RealMatrix<Real> b, double max_cond_eps = 1e-4)
{
    const std::size_t n = a.size();
    const Real norm_a = detail::one_norm(a);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (detail::abs_real(a[r][k]) > detail::abs_real(a[piv][k]))
                piv = r;
        if (a[piv][k] == Real(0))
            throw ill_conditioned_error("Gram matrix is singular", std::numeric_limits<double>::infinity());
        std::swap(a[k], a[piv]);
        std::swap(perm[k], perm[piv]);
        for (std::size_t r = k + 1; r < n; ++r) {
            a[r][k] /= a[k][k];
            for (std::size_t c = k + 1; c < n; ++c)
                a[r][c] -= a[r][k] * a[k][c];
        }
    }

    auto solve = [&](const std::vector<Real>& rhs) {
        std::vector<Real> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            Real s = rhs[perm[i]];
            for (std::size_t c = 0; c < i; ++c)
                s -= a[i][c] * x[c];
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            Real s = x[i];
            for (std::size_t c = i + 1; c < n; ++c)
                s -= a[i][c] * x[c];
            x[i] = s / a[i][i];
        }
        return x;
    };

    // explicit inverse for the condition number (n is small)
    RealMatrix<Real> inv(n, std::vector<Real>(n));
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Real> e(n, Real(0));
        e[c] = Real(1);
        const auto col = solve(e);
        for (std::size_t r = 0; r < n; ++r)
            inv[r][c] = col[r];
    }
    const double cond = static_cast<double>(norm_a * detail::one_norm(inv));
    const double eps = static_cast<double>(std::numeric_limits<Real>::epsilon());
    if (!(cond * eps <= max_cond_eps))
        throw ill_conditioned_error("Gram matrix condition estimate " + std::to_string(cond) +
                                        " exceeds the working precision",
                                    cond);

    RealMatrix<Real> x;
    for (const auto& rhs : b)
        x.push_back(solve(rhs));
    return {std::move(x), cond};
}

struct ProjectionResult {
    double residual;
    double condition_estimate;
};

template <class Real = high_precision>
ProjectionResult poly_projection(const RadialFunction& target, int L)
{
    require_ring(target, "poly_projection_residual");
    if (L < 1)
        throw precondition_error("poly_projection_residual needs L >= 1");
    const auto& p = target.params();
    const Real q(p.q());
    const Real mu = Real(1) - Real(1) / q; // (1 - 1/q)

    // int_{|x| <= q^n} |x|^s dx
    auto ball_moment = [&](long long n, long long s) -> Real {
        return mu / (Real(1) - detail::ipow(q, -(s + 1))) * detail::ipow(q, n * (s + 1));
    };

    RealMatrix<Real> gram(static_cast<std::size_t>(L), std::vector<Real>(static_cast<std::size_t>(L)));
    for (int k = 1; k <= L; ++k)
        for (int l = 1; l <= L; ++l)
            gram[k - 1][l - 1] = ball_moment(0, k + l);

    // <target, X_k>, real and imaginary parts
    RealMatrix<Real> rhs(2, std::vector<Real>(static_cast<std::size_t>(L)));
    for (int k = 1; k <= L; ++k) {
        Real re = Real(target.inner_tail().real()) * ball_moment(target.n_lo() - 1, k);
        Real im = Real(target.inner_tail().imag()) * ball_moment(target.n_lo() - 1, k);
        for (int j = target.n_lo(); j <= target.n_hi(); ++j) {
            const Real w = mu * detail::ipow(q, j) * detail::ipow(q, static_cast<long long>(j) * k);
            re += Real(target(j).real()) * w;
            im += Real(target(j).imag()) * w;
        }
        rhs[0][k - 1] = re;
        rhs[1][k - 1] = im;
    }

    // ||target||^2
    auto sq = [](cd z) -> Real { return Real(z.real()) * Real(z.real()) + Real(z.imag()) * Real(z.imag()); };
    Real norm2 = sq(target.inner_tail()) * detail::ipow(q, target.n_lo() - 1);
    for (int j = target.n_lo(); j <= target.n_hi(); ++j)
        norm2 += sq(target(j)) * mu * detail::ipow(q, j);

    const auto [x, cond] = pivoted_solve<Real>(gram, rhs);
    Real captured(0);
    for (std::size_t part = 0; part < 2; ++part)
        for (int k = 0; k < L; ++k)
            captured += rhs[part][static_cast<std::size_t>(k)] * x[part][static_cast<std::size_t>(k)];
    Real r2 = norm2 - captured;
    if (r2 < Real(0))
        r2 = Real(0);
    using std::sqrt;
    return {static_cast<double>(sqrt(r2)), cond};
}

// || target - P_L target ||,  P_L the orthogonal projection onto span{X_1..X_L}.
template <class Real = high_precision>
double poly_projection_residual(const RadialFunction& target, int L)
{
    return poly_projection<Real>(target, L).residual;
}

} // namespace radial
