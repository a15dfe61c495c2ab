#pragma once

// Closed-form moments of |t|^n on the open unit ball {|t| < 1} and on O.
// With r = q^{-(n+1)} every moment is a polylogarithm-type geometric series
// in r:  sum k r^k = r/(1-r)^2,  sum k^2 r^k = r(1+r)/(1-r)^3.

#include <vector>

#include "field.hpp"

namespace radial {

namespace detail {
inline void require_index(int n)
{
    if (n < 0)
        throw precondition_error("moment index must be >= 0");
}
inline double moment_ratio(const FieldParams& p, int n) { return p.pow(-(n + 1.0)); }
} // namespace detail

// d_m in  int_{|y|<|x|} (log|x| - log|y|) |y|^m dy = d_m |x|^{m+1}.
inline double d_constant(const FieldParams& p, int m)
{
    detail::require_index(m);
    const double r = detail::moment_ratio(p, m);
    return (1.0 - 1.0 / p.qd()) * p.log_q() * r / ((1.0 - r) * (1.0 - r));
}

// a_n = int_{|t|<1} |t|^n log|t| dt  (= -d_n).
inline double moment_a(const FieldParams& p, int n) { return -d_constant(p, n); }

// b_n = int_{|t|<1} |t|^n log^2|t| dt.
inline double moment_b(const FieldParams& p, int n)
{
    detail::require_index(n);
    const double r = detail::moment_ratio(p, n);
    const double l = p.log_q();
    return (1.0 - 1.0 / p.qd()) * l * l * r * (1.0 + r) / ((1.0 - r) * (1.0 - r) * (1.0 - r));
}

// int_O |t|^n dt.
inline double moment_m0(const FieldParams& p, int n)
{
    detail::require_index(n);
    return (1.0 - 1.0 / p.qd()) / (1.0 - detail::moment_ratio(p, n));
}

struct MomentTable {
    FieldParams params;
    std::vector<double> d, a, b, m0;

    MomentTable(const FieldParams& p, int count) : params(p)
    {
        for (int n = 0; n < count; ++n) {
            d.push_back(d_constant(p, n));
            a.push_back(moment_a(p, n));
            b.push_back(moment_b(p, n));
            m0.push_back(moment_m0(p, n));
        }
    }
};

} // namespace radial
