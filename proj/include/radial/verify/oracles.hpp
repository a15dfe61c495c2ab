#pragma once

// Brute-force reference computations, deliberately independent of the
// closed forms used by the library: truncated shell sums instead of
// geometric tails, the undivided three-term D^alpha formula, and grid
// iteration of I_0^1 instead of the log-polynomial recursion.

#include <cmath>
#include <vector>

#include "../field.hpp"
#include "../operators.hpp"

namespace radial::oracle {

// Three-term formula for (D^alpha u)(q^n), tail summed term by term.
inline cd d_alpha_direct(const RadialFunction& u, int n, int tail_terms = 500)
{
    const auto& p = u.params();
    const double a = p.alpha();
    const double q = p.qd();
    cd down{};
    for (int k = n - 1; k >= n - tail_terms; --k)
        down += p.pow(k) * u(k);
    cd up{};
    for (int l = n + 1; l <= u.n_hi(); ++l)
        up += p.pow(-a * l) * u(l);
    const double diag = p.pow(-a * n - 1.0) * (p.pow(a) + q - 2.0) / (1.0 - p.pow(-a - 1.0));
    return p.theta() * (1.0 - 1.0 / q) * p.pow(-(a + 1.0) * n) * down + diag * u(n) +
           p.theta() * (1.0 - 1.0 / q) * up;
}

// Moments over {|t| < 1} / O as plain shell sums, |t| = q^{-j}.
inline double d_series(const FieldParams& p, int m, int terms = 200)
{
    double s = 0.0;
    for (int j = terms; j >= 1; --j)
        s += j * p.log_q() * shell_measure(p, -j) * p.pow(-double(j) * m);
    return s;
}

inline double a_series(const FieldParams& p, int n, int terms = 200)
{
    double s = 0.0;
    for (int j = terms; j >= 1; --j)
        s += -j * p.log_q() * shell_measure(p, -j) * p.pow(-double(j) * n);
    return s;
}

inline double b_series(const FieldParams& p, int n, int terms = 200)
{
    double s = 0.0;
    const double l = p.log_q();
    for (int j = terms; j >= 1; --j)
        s += double(j) * j * l * l * shell_measure(p, -j) * p.pow(-double(j) * n);
    return s;
}

inline double m0_series(const FieldParams& p, int n, int terms = 200)
{
    double s = 0.0;
    for (int j = terms; j >= 0; --j)
        s += shell_measure(p, -j) * p.pow(-double(j) * n);
    return s;
}

// Transform by a finite shell sum of `terms` shells below -n.
inline cd laplace_direct(const RadialFunction& phi, int n, int terms = 300)
{
    const auto& p = phi.params();
    cd s{};
    for (int j = -n - terms; j <= -n; ++j)
        s += (1.0 - 1.0 / p.qd()) * p.pow(j) * phi(j);
    return s - phi(-n + 1) * p.pow(-n);
}

// <(I_0^1)^n h_alpha, h_beta> by repeated grid application of I_0^1.
// Returns g[alpha-1][beta-1][n], n = 0..count-1.
inline std::vector<std::vector<std::vector<cd>>> neumann_grid(const FieldParams& params, int count, int depth = 80)
{
    const FieldParams p = params.with_alpha(1.0);
    const Window w{-depth, 0};
    const RadialFunction h[2] = {make_basis(p, {BasisTag::h1, 0}, w), make_basis(p, {BasisTag::h2, 0}, w)};
    std::vector<std::vector<std::vector<cd>>> g(2, std::vector<std::vector<cd>>(2));
    for (int a = 0; a < 2; ++a) {
        RadialFunction u = h[a];
        for (int n = 0; n < count; ++n) {
            for (int b = 0; b < 2; ++b)
                g[a][b].push_back(inner_product(u, h[b]));
            u = apply_I01(u, depth);
        }
    }
    return g;
}

// Gram / normal equations for a single monomial X_1 from truncated shell sums:
// residual^2 = ||t||^2 - <t, X_1>^2 / <X_1, X_1>.
inline double projection_residual_L1(const RadialFunction& target, int depth = 200)
{
    const auto& p = target.params();
    double g = 0.0, norm2 = 0.0;
    cd b{};
    for (int j = -depth; j <= 0; ++j) {
        const double w = shell_measure(p, j);
        const double x = p.pow(j);
        g += x * x * w;
        b += target(j) * x * w;
        norm2 += std::norm(target(j)) * w;
    }
    return std::sqrt(std::max(0.0, norm2 - std::norm(b) / g));
}

} // namespace radial::oracle
