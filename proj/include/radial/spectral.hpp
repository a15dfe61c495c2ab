#pragma once

// Spectral structure of I^1_O and of its Volterra part I_0^1: eigenpairs,
// triangularity and kernel, the rank-2 imaginary part J, and the 2x2
// characteristic matrix-function W(z^{-1}) via exact iteration of I_0^1 on
// log-polynomials.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "field.hpp"
#include "moments.hpp"
#include "operators.hpp"

namespace radial {

struct Eigenpair {
    cd value;
    Eigen::VectorXcd vector; // coordinates in e_0..e_{dim-1}
};

struct I1Spectrum {
    std::vector<Eigenpair> computed; // sorted by |lambda| descending
    std::vector<Eigenpair> analytic; // (q^{-m}, e_0 - (q-1)^{-1/2} q^{(1-m)/2} e_m) and (0, e_0)
};

// Dense eigen-decomposition of the truncated e-basis matrix of I^1_O.
inline I1Spectrum i1_eigenpairs(const FieldParams& params, int dim)
{
    if (dim < 2)
        throw precondition_error("i1_eigenpairs needs dim >= 2");
    const auto m = operator_matrix(params, OperatorName::I1, Basis::e, dim);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.entries);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen-decomposition of the I^1 matrix failed");

    I1Spectrum out;
    for (int k = 0; k < dim; ++k)
        out.computed.push_back({solver.eigenvalues()(k), solver.eigenvectors().col(k)});
    std::stable_sort(out.computed.begin(), out.computed.end(),
                     [](const Eigenpair& a, const Eigenpair& b) { return std::abs(a.value) > std::abs(b.value); });

    const FieldParams p = m.params;
    const double q = p.qd();
    for (int mm = 1; mm < dim; ++mm) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v(0) = 1.0;
        v(mm) = -p.pow((1.0 - mm) / 2.0) / std::sqrt(q - 1.0);
        out.analytic.push_back({cd(p.pow(-mm)), v.normalized()});
    }
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(dim);
    v0(0) = 1.0;
    out.analytic.push_back({cd{}, v0});
    return out;
}

// Singular values (descending) of a dense complex matrix.
inline std::vector<double> singular_values(const Eigen::MatrixXcd& a)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

struct VolterraReport {
    double max_abs_eigenvalue = 0.0;
    bool strictly_triangular = false;
    double max_lower_entry = 0.0; // max |entry(j,n)| over n <= j
    int kernel_dim = 0;
    Eigen::VectorXcd kernel_vector; // f-coordinates, unit norm, first nonzero entry real positive
    std::vector<double> scaled_singular_values;
};

// The f-basis matrix of I_0^1 has entries of size q^{-(n+j)/2}; its kernel is
// read off the SVD of diag(q^{j/2}) A diag(q^{n/2}), which has the same
// kernel up to the diagonal scaling and O(1) nonzero singular values.
inline VolterraReport volterra_check(const FieldParams& params, int dim, double threshold = 1e-10,
                                     double triangular_tol = 1e-14)
{
    if (dim < 2)
        throw precondition_error("volterra_check needs dim >= 2");
    const auto m = operator_matrix(params, OperatorName::I01, Basis::f, dim);
    const auto& a = m.entries;
    const FieldParams& p = m.params;

    VolterraReport r;
    for (int j = 0; j < dim; ++j)
        for (int n = 0; n <= j; ++n)
            r.max_lower_entry = std::max(r.max_lower_entry, std::abs(a(j, n)));
    r.strictly_triangular = r.max_lower_entry <= triangular_tol;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    for (int k = 0; k < dim; ++k)
        r.max_abs_eigenvalue = std::max(r.max_abs_eigenvalue, std::abs(solver.eigenvalues()(k)));

    Eigen::VectorXd scale(dim);
    for (int k = 0; k < dim; ++k)
        scale(k) = p.pow(k / 2.0);
    const Eigen::MatrixXcd scaled = scale.asDiagonal() * a * scale.asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(scaled, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    r.scaled_singular_values.assign(s.data(), s.data() + s.size());
    const double cut = threshold * std::max(1.0, s(0));
    for (int k = 0; k < dim; ++k)
        if (s(k) <= cut)
            ++r.kernel_dim;
    // kernel of `scaled` is diag(q^{n/2}) * kernel of A
    Eigen::VectorXcd v = svd.matrixV().col(dim - 1);
    for (int k = 0; k < dim; ++k)
        v(k) *= scale(k);
    v.normalize();
    for (int k = 0; k < dim; ++k)
        if (std::abs(v(k)) > 1e-300) {
            v *= std::abs(v(k)) / v(k);
            break;
        }
    r.kernel_vector = v;
    return r;
}

// Closed-form e-basis matrix of J = (A - A^*)/(2i), A = I_0^1, in the orthonormal
// system e_N: only row and column 0 are nonzero,
//   J(0, N) = -(q-1)^{1/2} q^{-(N+1)/2} / (2i),  J(N, 0) = (q-1)^{1/2} q^{-(N+1)/2} / (2i).
inline OperatorMatrix j_matrix(const FieldParams& params, int dim)
{
    if (dim < 1)
        throw precondition_error("j_matrix needs dim >= 1");
    const FieldParams p = params.with_alpha(1.0);
    const cd k = std::sqrt(p.qd() - 1.0) / cd(0.0, 2.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        m(0, n) = -k * p.pow(-(n + 1.0) / 2.0);
        m(n, 0) = k * p.pow(-(n + 1.0) / 2.0);
    }
    return {p, OperatorName::J, Basis::e, dim, std::move(m)};
}

struct JDiagnostics {
    cd trace;
    std::vector<double> singular_values;
    int rank = 0;
};

inline JDiagnostics j_diagnostics(const OperatorMatrix& j, double rank_threshold = 1e-12)
{
    JDiagnostics d;
    d.trace = j.entries.trace();
    d.singular_values = singular_values(j.entries);
    d.rank = static_cast<int>(std::count_if(d.singular_values.begin(), d.singular_values.end(),
                                            [&](double s) { return s > rank_threshold; }));
    return d;
}

// Diagnostics of J assembled from imaginary_part applied to the e basis.
inline JDiagnostics j_diagnostics(const FieldParams& params, int dim, double rank_threshold = 1e-12)
{
    return j_diagnostics(operator_matrix(params, OperatorName::J, Basis::e, dim), rank_threshold);
}

// ---------------------------------------------------------------------------
// Log-polynomials  sum_n ( sigma_n |x|^n log|x| + eta_n |x|^n )  on O.

class LogPolynomial {
public:
    explicit LogPolynomial(FieldParams params) : params_(params) {}

    LogPolynomial(FieldParams params, std::vector<cd> sigma, std::vector<cd> eta)
        : params_(params), sigma_(std::move(sigma)), eta_(std::move(eta))
    {
        const auto n = std::max(sigma_.size(), eta_.size());
        sigma_.resize(n);
        eta_.resize(n);
    }

    static LogPolynomial constant(FieldParams params, cd c) { return {params, {cd{}}, {c}}; }
    static LogPolynomial log_abs(FieldParams params, cd c = 1.0) { return {params, {c}, {cd{}}}; }

    const FieldParams& params() const { return params_; }
    int terms() const { return static_cast<int>(sigma_.size()); }
    cd sigma(int n) const { return n < terms() ? sigma_[static_cast<std::size_t>(n)] : cd{}; }
    cd eta(int n) const { return n < terms() ? eta_[static_cast<std::size_t>(n)] : cd{}; }
    std::span<const cd> sigmas() const { return sigma_; }
    std::span<const cd> etas() const { return eta_; }

    // Value at |x| = q^j, j <= 0.
    cd operator()(int j) const
    {
        cd s{};
        const double log_x = j * params_.log_q();
        for (int n = 0; n < terms(); ++n) {
            const double xn = params_.pow(double(n) * j);
            s += sigma_[static_cast<std::size_t>(n)] * xn * log_x + eta_[static_cast<std::size_t>(n)] * xn;
        }
        return s;
    }

    // Shell sampling on [window.lo, 0].  The constant term is carried exactly
    // by the inner tail when there is no log part; otherwise the tail is 0.
    RadialFunction sample(Window window) const
    {
        const bool pure_constant = terms() <= 1 && sigma(0) == cd{};
        const cd tail = pure_constant ? eta(0) : cd{};
        return RadialFunction::sample(params_, Window{window.lo, 0}, [this](int j) { return (*this)(j); }, tail,
                                      Support::ring);
    }

    // int_O P
    cd integral() const
    {
        cd s{};
        for (int n = 0; n < terms(); ++n)
            s += sigma(n) * moment_a(params_, n) + eta(n) * moment_m0(params_, n);
        return s;
    }

    // int_O P(x) log|x| dx
    cd log_integral() const
    {
        cd s{};
        for (int n = 0; n < terms(); ++n)
            s += sigma(n) * moment_b(params_, n) + eta(n) * moment_a(params_, n);
        return s;
    }

private:
    FieldParams params_;
    std::vector<cd> sigma_, eta_;
};

// Exact image under I_0^1:
//   |x|^n         -> c d_n |x|^{n+1}
//   |x|^n log|x|  -> -c (a_n |x|^{n+1} log|x| + b_n |x|^{n+1}).
inline LogPolynomial volterra_step(const LogPolynomial& p)
{
    const FieldParams& fp = p.params();
    const double c = fp.c_volterra();
    std::vector<cd> sigma(static_cast<std::size_t>(p.terms() + 1)), eta(static_cast<std::size_t>(p.terms() + 1));
    for (int n = 0; n < p.terms(); ++n) {
        const auto k = static_cast<std::size_t>(n + 1);
        sigma[k] += -c * moment_a(fp, n) * p.sigma(n);
        eta[k] += -c * moment_b(fp, n) * p.sigma(n) + c * d_constant(fp, n) * p.eta(n);
    }
    return {fp, std::move(sigma), std::move(eta)};
}

// h_1 = (q-1)/(i q log q) (constant), h_2 = -log|x|.
inline LogPolynomial characteristic_h(const FieldParams& p, int which)
{
    if (which == 1)
        return LogPolynomial::constant(p, (p.qd() - 1.0) / (cd(0.0, 1.0) * p.qd() * p.log_q()));
    return LogPolynomial::log_abs(p, -1.0);
}

// <P, h_beta> in L^2(O).
inline cd pair_with_h(const LogPolynomial& poly, const FieldParams& p, int beta)
{
    if (beta == 1) {
        const cd h1 = (p.qd() - 1.0) / (cd(0.0, 1.0) * p.qd() * p.log_q());
        return poly.integral() * std::conj(h1);
    }
    return -poly.log_integral();
}

class MatrixPowerSeries {
public:
    using Coefficients = std::array<std::array<std::vector<cd>, 2>, 2>;

    MatrixPowerSeries(FieldParams params, int order, Coefficients g)
        : params_(params), order_(order), g_(std::move(g)) {}

    const FieldParams& params() const { return params_; }
    int order() const { return order_; }

    // G^{(alpha beta)}_n = <(I_0^1)^n h_alpha, h_beta>, alpha, beta in {1, 2}.
    std::span<const cd> coefficients(int alpha, int beta) const
    {
        return g_[static_cast<std::size_t>(alpha - 1)][static_cast<std::size_t>(beta - 1)];
    }

    Eigen::Matrix2cd G(cd z) const
    {
        Eigen::Matrix2cd m;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                cd s{};
                const auto& c = g_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                for (auto it = c.rbegin(); it != c.rend(); ++it)
                    s = s * z + *it;
                m(a, b) = s;
            }
        return m;
    }

    // W(z^{-1}) = E + i z j G(z),  j = [[0, 1], [1, 0]].
    Eigen::Matrix2cd W(cd z) const
    {
        Eigen::Matrix2cd j;
        j << 0.0, 1.0, 1.0, 0.0;
        return Eigen::Matrix2cd::Identity() + cd(0.0, 1.0) * z * (j * G(z));
    }

    // First n at which some coefficient has underflowed to exactly zero, or -1.
    int underflow_index() const
    {
        for (int n = 0; n <= order_; ++n)
            for (const auto& row : g_)
                for (const auto& c : row)
                    if (c[static_cast<std::size_t>(n)] == cd{})
                        return n;
        return -1;
    }

private:
    FieldParams params_;
    int order_;
    Coefficients g_;
};

// Neumann coefficients of W(z^{-1}) up to z^T, from the exact log-polynomial
// recursion (I_0^1 is defined for alpha = 1; the caller's alpha is ignored).
inline MatrixPowerSeries characteristic_function(const FieldParams& params, int T)
{
    if (T < 1)
        throw precondition_error("characteristic_function needs T >= 1");
    const FieldParams p = params.with_alpha(1.0);
    MatrixPowerSeries::Coefficients g;
    for (int a = 1; a <= 2; ++a) {
        LogPolynomial iterate = characteristic_h(p, a);
        for (int n = 0; n <= T; ++n) {
            for (int b = 1; b <= 2; ++b)
                g[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)].push_back(
                    pair_with_h(iterate, p, b));
            iterate = volterra_step(iterate);
        }
    }
    return {p, T, std::move(g)};
}

struct OrderCertificate {
    double fitted_C = 0.0;           // smallest C with |c_n| <= C^n q^{-n^2/2}, n >= 1
    int fitted_at = 0;               // index attaining fitted_C
    double last_step_growth = 0.0;   // C_n / C_{n'} for the last two nonzero indices
    bool envelope_consistent = false; // C_n has stopped growing (last_step_growth <= 1.05)
    double max_order_estimate = 0.0; // max_{n>=5} n ln n / ln(1/|c_n|)
    int nonzero = 0;
};

// Growth certificate for the coefficient sequence of an entire function.
// C_n = (|c_n| q^{n^2/2})^{1/n} converges for coefficients of the form
// A K^n q^{-n^2/2 + O(n)} and grows like q^{n/2} for merely geometric decay;
// the constant term is excluded (C^0 = 1 bounds nothing).
inline OrderCertificate order_certificate(std::span<const cd> coef, double q)
{
    OrderCertificate c;
    for (const auto& v : coef)
        if (v != cd{})
            ++c.nonzero;
    if (c.nonzero == 0)
        throw precondition_error("order_certificate: all coefficients are zero");
    if (c.nonzero < 10)
        throw precondition_error("order_certificate needs at least 10 nonzero coefficients");

    const double lq = std::log(q);
    double best = -std::numeric_limits<double>::infinity();
    double last = best, before_last = best;
    for (int n = 1; n < static_cast<int>(coef.size()); ++n) {
        const double mag = std::abs(coef[static_cast<std::size_t>(n)]);
        if (mag == 0.0)
            continue;
        const double log_c = (std::log(mag) + 0.5 * n * n * lq) / n;
        before_last = last;
        last = log_c;
        if (log_c > best) {
            best = log_c;
            c.fitted_at = n;
        }
        if (n >= 5) {
            const double denom = -std::log(mag);
            const double est = denom > 0.0 ? n * std::log(double(n)) / denom
                                           : std::numeric_limits<double>::infinity();
            c.max_order_estimate = std::max(c.max_order_estimate, est);
        }
    }
    c.fitted_C = std::exp(best);
    c.last_step_growth = std::exp(last - before_last);
    c.envelope_consistent = c.last_step_growth <= 1.05;
    return c;
}

} // namespace radial
