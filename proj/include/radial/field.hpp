#pragma once

// Field parameters, shell-indexed radial functions and the orthonormal
// systems of L^2 radial functions on the unit ball O.
//
// A radial function u(|x|) is stored by the exponent j of |x| = q^j.
// Values are kept explicitly on a window [n_lo, n_hi]; every shell below
// the window carries the constant `inner_tail` and every shell above it
// is zero.  With this representation all sums over j -> -infinity are
// geometric and are evaluated in closed form.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace radial {

using cd = std::complex<double>;

inline constexpr int default_depth = 60;
inline constexpr int default_dim = 40;

class FieldParams {
public:
    FieldParams(int q, double alpha) : q_(q), alpha_(alpha)
    {
        if (q < 2)
            throw precondition_error("residue cardinality q must be >= 2, got " + std::to_string(q));
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw precondition_error("order alpha must be a finite positive number");
    }

    int q() const { return q_; }
    double qd() const { return static_cast<double>(q_); }
    double alpha() const { return alpha_; }
    double log_q() const { return std::log(qd()); }

    // q^j; exact for the integer exponents used throughout.
    double pow(double j) const { return std::pow(qd(), j); }

    // theta_alpha = (1 - q^alpha) / (1 - q^{-alpha-1}), the constant of the
    // hypersingular representation of D^alpha.  Always negative.
    double theta() const { return (1.0 - pow(alpha_)) / (1.0 - pow(-alpha_ - 1.0)); }

    // c = (1 - q) / (q log q), the constant in front of the logarithmic
    // kernel of I^1 and I_0^1.  Always negative.
    double c_volterra() const { return (1.0 - qd()) / (qd() * log_q()); }

    FieldParams with_alpha(double alpha) const { return {q_, alpha}; }

    bool operator==(const FieldParams&) const = default;

private:
    int q_;
    double alpha_;
};

// Haar measure of the shell {|x| = q^n}.
inline double shell_measure(const FieldParams& p, int n)
{
    return (1.0 - 1.0 / p.qd()) * p.pow(n);
}

// Integral of |x|^{a-1} over the ball {|x| <= q^n}.
inline double ball_power_integral(const FieldParams& p, int n, double a)
{
    if (!(a > 0.0))
        throw precondition_error("ball_power_integral needs a > 0");
    return (1.0 - 1.0 / p.qd()) / (1.0 - p.pow(-a)) * p.pow(a * n);
}

namespace shells {

// Sum of shell measures over j <= top, i.e. the measure of the ball of radius q^top.
inline double ball(const FieldParams& p, int top) { return p.pow(top); }

// Sum over j <= top of j * shell_measure(j)  (log|x| / log q integrated over the ball).
inline double log_ball(const FieldParams& p, int top)
{
    return p.pow(top) * (top - 1.0 / (p.qd() - 1.0));
}

// Sum over j <= top of j^2 * shell_measure(j).
inline double log2_ball(const FieldParams& p, int top)
{
    const double r = 1.0 / p.qd();
    const double t = top;
    return p.pow(top) * (t * t - 2.0 * t * r / (1.0 - r) + r * (1.0 + r) / ((1.0 - r) * (1.0 - r)));
}

// sum_{l=a}^{b} q^{-s l}, zero for an empty range.
inline double geometric_range(const FieldParams& p, double s, int a, int b)
{
    if (b < a)
        return 0.0;
    const double r = p.pow(-s);
    return p.pow(-s * a) * (1.0 - std::pow(r, b - a + 1)) / (1.0 - r);
}

} // namespace shells

struct Window {
    int lo = 0;
    int hi = 0;

    int size() const { return hi - lo + 1; }
    bool contains(int j) const { return lo <= j && j <= hi; }
    bool operator==(const Window&) const = default;
};

// field: a function on K;  ring: an element of L^2(O), values at j > 0 absent.
enum class Support { field, ring };

class RadialFunction {
public:
    RadialFunction(FieldParams params, Window window, std::vector<cd> values, cd inner_tail = {},
                   Support support = Support::field)
        : params_(params), window_(window), values_(std::move(values)), tail_(inner_tail), support_(support)
    {
        if (window_.lo > window_.hi)
            throw precondition_error("radial function window must satisfy n_lo <= n_hi");
        if (static_cast<int>(values_.size()) != window_.size())
            throw precondition_error("radial function values length " + std::to_string(values_.size()) +
                                     " does not match window length " + std::to_string(window_.size()));
        if (support_ == Support::ring) {
            if (window_.hi > 0)
                throw precondition_error("an O-supported function needs n_hi <= 0");
            values_.resize(static_cast<std::size_t>(0 - window_.lo + 1), cd{});
            window_.hi = 0;
        }
    }

    static RadialFunction zero(FieldParams params, Window window, Support support = Support::field)
    {
        return {params, window, std::vector<cd>(static_cast<std::size_t>(window.size())), cd{}, support};
    }

    template <class F>
    static RadialFunction sample(FieldParams params, Window window, F&& f, cd inner_tail = {},
                                 Support support = Support::field)
    {
        std::vector<cd> v;
        v.reserve(static_cast<std::size_t>(window.size()));
        for (int j = window.lo; j <= window.hi; ++j)
            v.push_back(f(j));
        return {params, window, std::move(v), inner_tail, support};
    }

    const FieldParams& params() const { return params_; }
    Window window() const { return window_; }
    int n_lo() const { return window_.lo; }
    int n_hi() const { return window_.hi; }
    std::span<const cd> values() const { return values_; }
    cd inner_tail() const { return tail_; }
    Support support() const { return support_; }
    bool on_ring() const { return support_ == Support::ring; }

    // Value on the shell |x| = q^j.
    cd operator()(int j) const
    {
        if (j < window_.lo)
            return tail_;
        if (j > window_.hi)
            return {};
        return values_[static_cast<std::size_t>(j - window_.lo)];
    }

    // Same function stored on a window containing the current one.
    RadialFunction widened(Window w) const
    {
        if (w.lo > window_.lo || w.hi < window_.hi)
            throw precondition_error("widened window must contain the current window");
        return sample(params_, w, [this](int j) { return (*this)(j); }, tail_, support_);
    }

    // Restriction to O (values at j > 0 dropped).
    RadialFunction on_O() const
    {
        if (window_.lo > 0)
            return {params_, Window{0, 0}, {tail_}, tail_, Support::ring};
        const Window w{window_.lo, std::min(window_.hi, 0)};
        return sample(params_, w, [this](int j) { return (*this)(j); }, tail_, Support::ring);
    }

    RadialFunction& operator*=(cd s)
    {
        for (auto& v : values_)
            v *= s;
        tail_ *= s;
        return *this;
    }

    friend RadialFunction operator*(cd s, RadialFunction u) { return u *= s; }

    friend RadialFunction combine(cd a, const RadialFunction& u, cd b, const RadialFunction& v)
    {
        if (u.params_.q() != v.params_.q())
            throw precondition_error("cannot combine radial functions over different fields");
        const Window w{std::min(u.n_lo(), v.n_lo()), std::max(u.n_hi(), v.n_hi())};
        const Support s = (u.on_ring() && v.on_ring()) ? Support::ring : Support::field;
        return sample(u.params_, w, [&](int j) { return a * u(j) + b * v(j); },
                      a * u.tail_ + b * v.tail_, s);
    }

    friend RadialFunction operator+(const RadialFunction& u, const RadialFunction& v)
    {
        return combine(1.0, u, 1.0, v);
    }
    friend RadialFunction operator-(const RadialFunction& u, const RadialFunction& v)
    {
        return combine(1.0, u, -1.0, v);
    }

private:
    FieldParams params_;
    Window window_;
    std::vector<cd> values_;
    cd tail_;
    Support support_;
};

// Largest pointwise difference over all shells (tails included).
inline double max_abs_difference(const RadialFunction& u, const RadialFunction& v)
{
    const int lo = std::min(u.n_lo(), v.n_lo());
    const int hi = std::max(u.n_hi(), v.n_hi());
    double m = std::abs(u.inner_tail() - v.inner_tail());
    for (int j = lo; j <= hi; ++j)
        m = std::max(m, std::abs(u(j) - v(j)));
    return m;
}

inline double max_abs(const RadialFunction& u)
{
    double m = std::abs(u.inner_tail());
    for (const auto& v : u.values())
        m = std::max(m, std::abs(v));
    return m;
}

inline void require_ring(const RadialFunction& u, const char* what)
{
    if (!u.on_ring())
        throw precondition_error(std::string(what) + " needs an O-supported function");
}

// <u, v> in L^2(O).  Only the residue cardinality has to agree; the Haar
// measure does not depend on alpha.
inline cd inner_product(const RadialFunction& u, const RadialFunction& v)
{
    require_ring(u, "inner_product");
    require_ring(v, "inner_product");
    if (u.params().q() != v.params().q())
        throw precondition_error("inner_product of functions over different fields");
    const auto& p = u.params();
    const int lo = std::min(u.n_lo(), v.n_lo());
    cd s = u.inner_tail() * std::conj(v.inner_tail()) * shells::ball(p, lo - 1);
    for (int j = lo; j <= 0; ++j)
        s += u(j) * std::conj(v(j)) * shell_measure(p, j);
    return s;
}

inline double norm(const RadialFunction& u) { return std::sqrt(std::abs(inner_product(u, u))); }

// Integral over O.
inline cd integral_O(const RadialFunction& u)
{
    require_ring(u, "integral_O");
    const auto& p = u.params();
    cd s = u.inner_tail() * shells::ball(p, u.n_lo() - 1);
    for (int j = u.n_lo(); j <= 0; ++j)
        s += u(j) * shell_measure(p, j);
    return s;
}

// Integral over O of u(|x|) log|x|.
inline cd log_moment_O(const RadialFunction& u)
{
    require_ring(u, "log_moment_O");
    const auto& p = u.params();
    cd s = u.inner_tail() * shells::log_ball(p, u.n_lo() - 1);
    for (int j = u.n_lo(); j < 0; ++j)
        s += u(j) * static_cast<double>(j) * shell_measure(p, j);
    return s * p.log_q();
}

// ---------------------------------------------------------------------------
// Named functions and bases

enum class BasisTag { v, e, f, monomial, u0, h1, h2 };

struct BasisKind {
    BasisTag tag;
    int index = 0;
};

enum class Basis { e, f };

inline std::string to_string(Basis b) { return b == Basis::e ? "e" : "f"; }

// v_N on K, N any integer: 1 for |x| <= q^{-N}, -1/(q-1) on |x| = q^{-N+1}, 0 beyond.
// D^alpha v_N = q^{alpha N} v_N.
inline RadialFunction field_eigenfunction(const FieldParams& p, int N)
{
    return {p, Window{-N + 1, -N + 1}, {cd(-1.0 / (p.qd() - 1.0))}, cd(1.0), Support::field};
}

namespace detail {

inline RadialFunction minimal_basis(const FieldParams& p, BasisKind kind, std::optional<Window> window)
{
    const double q = p.qd();
    switch (kind.tag) {
    case BasisTag::v:
        if (kind.index < 0)
            throw precondition_error("v_N on O needs N >= 0");
        if (kind.index == 0)
            return {p, Window{0, 0}, {cd(1.0)}, cd(1.0), Support::ring};
        return field_eigenfunction(p, kind.index).on_O();
    case BasisTag::e: {
        if (kind.index < 0)
            throw precondition_error("e_N needs N >= 0");
        if (kind.index == 0)
            return {p, Window{0, 0}, {cd(1.0)}, cd(1.0), Support::ring};
        // ||v_N||^2 = q^{1-N} / (q - 1)
        const double scale = std::sqrt(q - 1.0) * p.pow((kind.index - 1) / 2.0);
        return scale * field_eigenfunction(p, kind.index).on_O();
    }
    case BasisTag::f: {
        if (kind.index < 0)
            throw precondition_error("f_n needs n >= 0");
        const double value = p.pow(kind.index / 2.0) / std::sqrt(1.0 - 1.0 / q);
        return RadialFunction::sample(
            p, Window{-kind.index, 0}, [&](int j) { return j == -kind.index ? cd(value) : cd{}; }, cd{},
            Support::ring);
    }
    case BasisTag::monomial: {
        if (kind.index < 1)
            throw precondition_error("monomial X_l needs l >= 1");
        const Window w = window.value_or(Window{-default_depth, 0});
        const int l = kind.index;
        return RadialFunction::sample(p, w, [&](int j) { return cd(p.pow(double(j) * l)); }, cd{},
                                      Support::ring);
    }
    case BasisTag::u0:
        return {p, Window{0, 0}, {cd(1.0)}, cd{}, Support::ring};
    case BasisTag::h1: {
        const cd value = (q - 1.0) / (cd(0.0, 1.0) * q * p.log_q());
        return {p, Window{0, 0}, {value}, value, Support::ring};
    }
    case BasisTag::h2: {
        const Window w = window.value_or(Window{-default_depth, 0});
        return RadialFunction::sample(p, w, [&](int j) { return cd(-j * p.log_q()); }, cd{},
                                      Support::ring);
    }
    }
    throw precondition_error("unknown basis kind");
}

} // namespace detail

// Named element of one of the systems on O.  v, e, f, u0 and h1 are exact;
// the monomial X_l and h2 = -log|x| are truncated below the window (tail 0),
// with L^2 truncation error of order q^{n_lo (l + 1/2)} resp. |n_lo| q^{n_lo/2}.
// When `window` is given the result is stored on (at least) that window.
inline RadialFunction make_basis(const FieldParams& p, BasisKind kind, std::optional<Window> window = {})
{
    RadialFunction u = detail::minimal_basis(p, kind, window);
    if (!window || kind.tag == BasisTag::monomial || kind.tag == BasisTag::h2)
        return u;
    if (window->lo > u.n_lo())
        throw precondition_error("window does not cover the structure of the requested basis element");
    return u.widened(Window{window->lo, u.n_hi()});
}

inline RadialFunction basis_vector(const FieldParams& p, Basis b, int k)
{
    return make_basis(p, BasisKind{b == Basis::e ? BasisTag::e : BasisTag::f, k});
}

// Coordinates <u, b_k>, k = 0..count-1.
inline std::vector<cd> expand(const RadialFunction& u, Basis b, int count)
{
    std::vector<cd> c;
    c.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int k = 0; k < count; ++k)
        c.push_back(inner_product(u, basis_vector(u.params(), b, k)));
    return c;
}

} // namespace radial
