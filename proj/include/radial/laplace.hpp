#pragma once

// Laplace-type transform of a radial function,
//   phi~(q^n) = int_K v_0(|x xi|) phi(|x|) dx,  |xi| = q^n,
// which reduces on shells to
//   phi~(q^n) = (1 - 1/q) sum_{j <= -n} phi(q^j) q^j  -  phi(q^{-n+1}) q^{-n},
// together with the difference identity and its exact inversion.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "field.hpp"
#include "operators.hpp"

namespace radial {

class TransformSequence {
public:
    TransformSequence(FieldParams params, Window range, std::vector<cd> values)
        : params_(params), range_(range), values_(std::move(values))
    {
        if (range_.size() < 1 || static_cast<int>(values_.size()) != range_.size())
            throw precondition_error("TransformSequence: values do not match the index range");
    }

    const FieldParams& params() const { return params_; }
    Window range() const { return range_; }
    int n_lo() const { return range_.lo; }
    int n_hi() const { return range_.hi; }
    const std::vector<cd>& values() const { return values_; }
    bool covers(int n) const { return range_.contains(n); }

    cd operator()(int n) const
    {
        if (!covers(n))
            throw range_error("transform index " + std::to_string(n) + " outside [" + std::to_string(range_.lo) +
                              ", " + std::to_string(range_.hi) + "]");
        return values_[static_cast<std::size_t>(n - range_.lo)];
    }

private:
    FieldParams params_;
    Window range_;
    std::vector<cd> values_;
};

// Since (1 - 1/q) sum_{j <= -n} q^j = q^{-n}, the transform is evaluated as
//   sum_{j <= -n} (phi(q^j) - phi(q^{-n+1})) (1 - 1/q) q^j,
// which vanishes exactly on constants; the tail is summed in closed form.
inline cd laplace_value(const RadialFunction& phi, int n)
{
    const auto& p = phi.params();
    const cd ref = phi(-n + 1);
    cd s = (phi.inner_tail() - ref) * shells::ball(p, std::min(-n, phi.n_lo() - 1));
    // above n_hi both phi(j) and ref vanish
    for (int j = phi.n_lo(); j <= std::min(-n, phi.n_hi()); ++j)
        s += (phi(j) - ref) * shell_measure(p, j);
    return s;
}

inline TransformSequence laplace_transform(const RadialFunction& phi, Window range)
{
    if (range.size() < 1)
        throw precondition_error("laplace_transform: empty index range");
    std::vector<cd> v;
    v.reserve(static_cast<std::size_t>(range.size()));
    for (int n = range.lo; n <= range.hi; ++n)
        v.push_back(laplace_value(phi, n));
    return {phi.params(), range, std::move(v)};
}

// max_n |phi~(q^n) - phi~(q^{n+1}) - q^{-n}[phi(q^{-n}) - phi(q^{-n+1})]|
inline double difference_identity_residual(const RadialFunction& phi, Window range)
{
    const auto t = laplace_transform(phi, Window{range.lo, range.hi + 1});
    double r = 0.0;
    for (int n = range.lo; n <= range.hi; ++n) {
        const cd lhs = t(n) - t(n + 1);
        const cd rhs = phi.params().pow(-n) * (phi(-n) - phi(-n + 1));
        r = std::max(r, std::abs(lhs - rhs));
    }
    return r;
}

// Shell values recovered from a transform; index m runs over [-m_max, m_max],
// value(m) = phi(q^m).
struct RecoveredShells {
    FieldParams params;
    int m_max;
    std::vector<cd> values;

    cd operator()(int m) const { return values.at(static_cast<std::size_t>(m + m_max)); }
    Window window() const { return {-m_max, m_max}; }
};

// phi(q^m)  = phi(1) + sum_{j=0}^{m-1} q^{-j} [phi~(q^{-j+1}) - phi~(q^{-j})]  needs n in [-m_max+1, 1]
// phi(q^-m) = phi(1) + sum_{j=1}^{m}   q^{j}  [phi~(q^j) - phi~(q^{j+1})]      needs n in [1, m_max+1]
inline RecoveredShells laplace_invert(const TransformSequence& tilde, cd phi_at_1, int m_max)
{
    if (m_max < 1)
        throw precondition_error("laplace_invert needs m_max >= 1");
    const int need_lo = -m_max + 1;
    const int need_hi = m_max + 1;
    if (tilde.n_lo() > need_lo || tilde.n_hi() < need_hi) {
        std::string missing;
        auto add = [&](int a, int b) {
            if (a > b)
                return;
            if (!missing.empty())
                missing += ", ";
            missing += a == b ? std::to_string(a) : "[" + std::to_string(a) + ", " + std::to_string(b) + "]";
        };
        add(need_lo, std::min(need_hi, tilde.n_lo() - 1));
        add(std::max(need_lo, tilde.n_hi() + 1), need_hi);
        throw range_error("laplace_invert: transform missing indices " + missing);
    }

    const auto& p = tilde.params();
    std::vector<cd> v(static_cast<std::size_t>(2 * m_max + 1));
    v[static_cast<std::size_t>(m_max)] = phi_at_1;
    cd up = phi_at_1, down = phi_at_1;
    for (int m = 1; m <= m_max; ++m) {
        const int j = m - 1;
        up += p.pow(-j) * (tilde(-j + 1) - tilde(-j));
        v[static_cast<std::size_t>(m_max + m)] = up;
        down += p.pow(m) * (tilde(m) - tilde(m + 1));
        v[static_cast<std::size_t>(m_max - m)] = down;
    }
    return {p, m_max, std::move(v)};
}

// max_n |(D^alpha phi)~(q^n) - q^{alpha n} phi~(q^n)|.  D^alpha phi is evaluated
// exactly on every shell the transform reads (j <= -range.lo + 1).
inline double symbol_identity_residual(const RadialFunction& phi, double alpha, Window range)
{
    const FieldParams p = phi.params().with_alpha(alpha);
    const RadialFunction u(p, phi.window(), {phi.values().begin(), phi.values().end()}, phi.inner_tail(),
                           phi.support());
    const Window out{phi.n_lo(), std::max(phi.n_hi(), -range.lo + 1)};
    const auto lhs = laplace_transform(apply_D_alpha(u, out), range);
    const auto rhs = laplace_transform(u, range);
    double r = 0.0;
    for (int n = range.lo; n <= range.hi; ++n)
        r = std::max(r, std::abs(lhs(n) - p.pow(alpha * n) * rhs(n)));
    return r;
}

// Sign patterns for the monotonicity transfer: entry k (n = range.lo + k) is
// sign(phi(q^{-n}) - phi(q^{-n+1})) resp. sign(phi~(q^n) - phi~(q^{n+1})).
// Transform differences are rescaled by q^n before thresholding so that both
// patterns are compared at the same scale.
struct SignPatterns {
    std::vector<int> function, transform;
    bool match() const { return function == transform; }
};

inline int sign_of(double x, double zero_tol) { return x > zero_tol ? 1 : (x < -zero_tol ? -1 : 0); }

inline SignPatterns monotonicity_signs(const RadialFunction& phi, Window range, double zero_tol = 1e-12)
{
    const auto t = laplace_transform(phi, Window{range.lo, range.hi + 1});
    const auto& p = phi.params();
    SignPatterns s;
    for (int n = range.lo; n <= range.hi; ++n) {
        s.function.push_back(sign_of((phi(-n) - phi(-n + 1)).real(), zero_tol));
        s.transform.push_back(sign_of((p.pow(n) * (t(n) - t(n + 1))).real(), zero_tol));
    }
    return s;
}

} // namespace radial
