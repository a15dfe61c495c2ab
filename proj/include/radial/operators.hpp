#pragma once

// D^alpha, its radial right inverse I^alpha, the Volterra part I_0^1 of I^1,
// the inverse of D^1_O and the imaginary part J of I_0^1, all acting on
// shell sequences, plus their matrices in the e / f bases.

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>

#include "field.hpp"

namespace radial {

namespace detail {

// (D^alpha u)(q^n) in difference form:
//   theta (1 - 1/q) [ q^{-(alpha+1)n} sum_{m<n} q^m (u_m - u_n) + sum_{l>n} q^{-alpha l} (u_l - u_n) ],
// which regroups the diagonal term of the three-term formula.
inline cd d_alpha_value(const RadialFunction& u, int n)
{
    const auto& p = u.params();
    const double a = p.alpha();
    const int lo = u.n_lo();
    const int hi = u.n_hi();
    const cd un = u(n);
    const cd tail = u.inner_tail();

    // downward part, already multiplied by q^{-(alpha+1)n}
    cd down{};
    const int top_tail = std::min(n, lo) - 1;
    if (tail != un)
        down += (tail - un) * p.pow(top_tail - (a + 1.0) * n) * p.qd() / (p.qd() - 1.0);
    for (int m = lo; m <= std::min(n - 1, hi); ++m)
        down += (u(m) - un) * p.pow(m - (a + 1.0) * n);
    // m in (hi, n): u_m = 0 and u_n = 0, nothing to add

    cd up{};
    if (n + 1 <= lo - 1 && tail != un)
        up += (tail - un) * shells::geometric_range(p, a, n + 1, lo - 1);
    for (int l = std::max(n + 1, lo); l <= hi; ++l)
        up += (u(l) - un) * p.pow(-a * l);
    if (un != cd{}) {
        const int first_zero = std::max(n, hi) + 1;
        up -= un * p.pow(-a * first_zero) / (1.0 - p.pow(-a));
    }
    return p.theta() * (1.0 - 1.0 / p.qd()) * (down + up);
}

// c log q * sum_{j<n} (n - j) shell(j) u_j, the integral part of (I^1 u)(q^n).
inline cd volterra_value(const RadialFunction& u, int n)
{
    const auto& p = u.params();
    const int lo = u.n_lo();
    const int top_tail = std::min(n, lo) - 1;
    cd s{};
    if (u.inner_tail() != cd{})
        s += u.inner_tail() * (n * shells::ball(p, top_tail) - shells::log_ball(p, top_tail));
    for (int j = lo; j <= std::min(n - 1, u.n_hi()); ++j)
        s += u(j) * double(n - j) * shell_measure(p, j);
    return p.c_volterra() * p.log_q() * s;
}

// Integral part of I^alpha for alpha != 1:
// (1-q^{-alpha})/(1-q^{alpha-1}) sum_{j<n} (q^{(alpha-1)n} - q^{(alpha-1)j}) shell(j) u_j.
inline cd power_kernel_value(const RadialFunction& u, int n)
{
    const auto& p = u.params();
    const double a = p.alpha();
    if (a == 1.0)
        throw precondition_error("the power kernel of I^alpha has a pole at alpha = 1");
    const double prefactor = (1.0 - p.pow(-a)) / (1.0 - p.pow(a - 1.0));
    const int lo = u.n_lo();
    const int top_tail = std::min(n, lo) - 1;
    cd s{};
    if (u.inner_tail() != cd{}) {
        const double ball_part = p.pow((a - 1.0) * n + top_tail);
        const double power_part = (1.0 - 1.0 / p.qd()) * p.pow(a * top_tail) / (1.0 - p.pow(-a));
        s += u.inner_tail() * (ball_part - power_part);
    }
    for (int j = lo; j <= std::min(n - 1, u.n_hi()); ++j)
        s += u(j) * (p.pow((a - 1.0) * n) - p.pow((a - 1.0) * j)) * shell_measure(p, j);
    return prefactor * s;
}

} // namespace detail

// D^alpha u on the shells of `out`.  Values above out.hi are not stored
// (the image generally decays like q^{-(alpha+1)n} there).  The image is
// constant below supp(u) - u.n_lo(), so out.lo <= u.n_lo() is required and
// the output inner tail is exact.
inline RadialFunction apply_D_alpha(const RadialFunction& u, Window out)
{
    if (out.lo > out.hi)
        throw precondition_error("output window must satisfy lo <= hi");
    if (out.lo > u.n_lo())
        throw precondition_error("apply_D_alpha: output window must reach the inner tail (out.lo <= n_lo)");
    const cd tail = detail::d_alpha_value(u, out.lo - 1);
    auto img = RadialFunction::sample(u.params(), out, [&](int n) { return detail::d_alpha_value(u, n); }, tail,
                                      Support::field);
    for (const auto& v : img.values())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw precondition_error("apply_D_alpha: divergent shell sum");
    return img;
}

// D^alpha_O: extend by zero to K, apply D^alpha, restrict to O.
inline RadialFunction apply_D_alpha_O(const RadialFunction& u)
{
    require_ring(u, "apply_D_alpha_O");
    return apply_D_alpha(u, Window{u.n_lo(), 0}).on_O();
}

// I^alpha u as a function on K, evaluated on `out` (which may extend above O,
// where the image grows like q^{(alpha-1)n} resp. n) and truncated above out.hi.
// Composing with apply_D_alpha recovers u on O up to a truncation error of
// order q^{-min(alpha,1) out.hi}.
inline RadialFunction apply_I_alpha(const RadialFunction& u, Window out)
{
    require_ring(u, "apply_I_alpha");
    if (out.lo > u.n_lo() || out.hi < 0)
        throw precondition_error("apply_I_alpha: output window must contain the stored window of u");
    const auto& p = u.params();
    const double a = p.alpha();
    auto value = [&](int n) {
        if (a == 1.0)
            return p.pow(n - 1.0) * u(n) + detail::volterra_value(u, n);
        return p.pow(a * (n - 1.0)) * u(n) + detail::power_kernel_value(u, n);
    };
    return RadialFunction::sample(p, out, value, cd{}, Support::field);
}

// I^alpha on O-supported u.  alpha == 1 uses the logarithmic kernel; any
// other alpha the power kernel.  The image vanishes below n_lo (I^alpha
// annihilates constants and (I^alpha u)(q^n) depends on u at |y| <= q^n only).
inline RadialFunction apply_I_alpha(const RadialFunction& u)
{
    require_ring(u, "apply_I_alpha");
    return apply_I_alpha(u, Window{u.n_lo(), 0}).on_O();
}

// Upper edge of the window on which I^alpha u must be stored so that
// D^alpha I^alpha u is reproduced on O to about `eps`.
inline int right_inverse_height(const FieldParams& p, double eps = 1e-18)
{
    const double rate = std::min(p.alpha(), 1.0) * p.log_q();
    return static_cast<int>(std::ceil(-std::log(eps) / rate)) + 8;
}

// I_0^1 u = c int_{|y|<|x|} (log|x| - log|y|) u(|y|) dy.  Below n_lo the image
// behaves like -q^{-1}|x| * tail; it is stored down to -depth and truncated there.
inline RadialFunction apply_I01(const RadialFunction& u, int depth = default_depth)
{
    require_ring(u, "apply_I01");
    const Window w{std::min(u.n_lo(), -depth), 0};
    return RadialFunction::sample(u.params(), w, [&](int n) { return detail::volterra_value(u, n); }, cd{},
                                  Support::ring);
}

// (D^1_O)^{-1} u (0): the constant value of the inverse below supp(u).
inline cd resolvent_value_at_origin(const RadialFunction& u)
{
    require_ring(u, "resolvent_value_at_origin");
    const auto& p = u.params();
    cd log_part = u.inner_tail() * shells::log_ball(p, u.n_lo() - 1);
    for (int j = u.n_lo(); j < 0; ++j)
        log_part += u(j) * double(j) * shell_measure(p, j);
    return p.c_volterra() * p.log_q() * log_part + integral_O(u);
}

// (D^1_O)^{-1} u(x) = c int_O log|x - xi| u(xi) dxi + int_O u.
// The radial convolution splits by ultrametricity: |x - xi| = max(|x|, |xi|)
// off the shell |xi| = |x| = q^n; on that shell the set {|x - xi| = q^m} has
// measure (1 - 1/q) q^m for m < n and (1 - 2/q) q^n for m = n.
inline RadialFunction apply_resolvent_D1O(const RadialFunction& u)
{
    require_ring(u, "apply_resolvent_D1O");
    const auto& p = u.params();
    if (p.alpha() != 1.0)
        throw precondition_error("apply_resolvent_D1O is the inverse of D^1_O and needs alpha = 1");
    const double q = p.qd();
    const int lo = u.n_lo();
    const cd total = integral_O(u);
    const double kernel = p.c_volterra() * p.log_q();

    auto value = [&](int n) {
        cd inside{};
        const int top_tail = std::min(n, lo) - 1;
        inside += u.inner_tail() * shells::ball(p, top_tail);
        for (int j = lo; j < n; ++j)
            inside += u(j) * shell_measure(p, j);
        cd outside{};
        for (int j = std::max(n + 1, lo); j <= 0; ++j)
            outside += u(j) * double(j) * shell_measure(p, j);
        const double same_shell = shells::log_ball(p, n - 1) + n * (1.0 - 2.0 / q) * p.pow(n);
        return kernel * (double(n) * inside + outside + u(n) * same_shell) + total;
    };
    return RadialFunction::sample(p, Window{lo, 0}, value, resolvent_value_at_origin(u), Support::ring);
}

// Imaginary part of I_0^1:
// J u = (1-q)/(2 i q log q) [ <u,1> log|x| - <u, log|.|> ].
// log|x| is unbounded at 0, so the image is stored down to -depth.
inline RadialFunction imaginary_part(const RadialFunction& u, int depth = default_depth)
{
    require_ring(u, "imaginary_part");
    const auto& p = u.params();
    const cd k = (1.0 - p.qd()) / (cd(0.0, 2.0) * p.qd() * p.log_q());
    const cd mass = integral_O(u);
    const cd log_mass = log_moment_O(u);
    const Window w{std::min(u.n_lo(), -depth), 0};
    return RadialFunction::sample(p, w, [&](int j) { return k * (mass * (j * p.log_q()) - log_mass); }, cd{},
                                  Support::ring);
}

// ---------------------------------------------------------------------------

enum class OperatorName { D1O, I1, I01, J, resolvent, DalphaO, Ialpha };

inline std::string to_string(OperatorName op)
{
    switch (op) {
    case OperatorName::D1O: return "D1O";
    case OperatorName::I1: return "I1";
    case OperatorName::I01: return "I01";
    case OperatorName::J: return "J";
    case OperatorName::resolvent: return "resolvent";
    case OperatorName::DalphaO: return "DalphaO";
    case OperatorName::Ialpha: return "Ialpha";
    }
    return "?";
}

inline std::optional<OperatorName> parse_operator_name(std::string_view s)
{
    for (auto op : {OperatorName::D1O, OperatorName::I1, OperatorName::I01, OperatorName::J,
                    OperatorName::resolvent, OperatorName::DalphaO, OperatorName::Ialpha})
        if (to_string(op) == s)
            return op;
    return std::nullopt;
}

// Operators named with a 1 are defined for alpha = 1 only.
inline FieldParams operator_params(OperatorName op, const FieldParams& p)
{
    switch (op) {
    case OperatorName::DalphaO:
    case OperatorName::Ialpha:
        return p;
    default:
        return p.with_alpha(1.0);
    }
}

inline RadialFunction apply_operator(OperatorName op, const RadialFunction& u, int depth = default_depth)
{
    switch (op) {
    case OperatorName::D1O:
    case OperatorName::DalphaO: return apply_D_alpha_O(u);
    case OperatorName::I1:
    case OperatorName::Ialpha: return apply_I_alpha(u);
    case OperatorName::I01: return apply_I01(u, depth);
    case OperatorName::J: return imaginary_part(u, depth);
    case OperatorName::resolvent: return apply_resolvent_D1O(u);
    }
    throw precondition_error("unknown operator");
}

struct OperatorMatrix {
    FieldParams params;
    OperatorName op;
    Basis basis;
    int dim;
    Eigen::MatrixXcd entries; // entries(j, n) = <A b_n, b_j>
};

// Column n holds the coordinates of A b_n in b_0..b_{dim-1}.  Images that
// must be truncated (I_0^1, J) are kept `depth` shells below the deepest
// basis element, since log|x| in J u is paired against b_j down to j ~ -dim.
inline OperatorMatrix operator_matrix(const FieldParams& params, OperatorName op, Basis basis, int dim,
                                      int depth = default_depth)
{
    if (dim < 1)
        throw precondition_error("operator_matrix needs dim >= 1");
    const FieldParams p = operator_params(op, params);
    std::vector<RadialFunction> b;
    b.reserve(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k)
        b.push_back(basis_vector(p, basis, k));

    Eigen::MatrixXcd m(dim, dim);
    for (int n = 0; n < dim; ++n) {
        const RadialFunction image = apply_operator(op, b[static_cast<std::size_t>(n)], depth + dim);
        for (int j = 0; j < dim; ++j)
            m(j, n) = inner_product(image, b[static_cast<std::size_t>(j)]);
    }
    return {p, op, basis, dim, std::move(m)};
}

} // namespace radial
