#pragma once

// The acceptance suite: each criterion is a list of named measurements, each
// compared against a tolerance from a named table so that runs are
// reproducible and tolerances can be overridden from the command line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "density.hpp"
#include "field.hpp"
#include "laplace.hpp"
#include "moments.hpp"
#include "operators.hpp"
#include "spectral.hpp"
#include "verify/oracles.hpp"

namespace radial {

using ToleranceMap = std::map<std::string, double>;

inline ToleranceMap default_tolerances()
{
    return {
        {"eigenfunction", 1e-11},       {"eigenfunction_seconds", 1.0}, {"first_eigenvalue", 1e-12},
        {"right_inverse", 1e-10},       {"i1_entries", 1e-12},       {"i1_eigenvalues", 1e-10},
        {"triangular", 1e-14},          {"volterra_eigenvalues", 1e-10}, {"kernel_threshold", 1e-10},
        {"j_trace", 1e-14},             {"j_rank_threshold", 1e-12},    {"j_identity", 1e-12},
        {"j_u0", 1e-12},                {"moments", 1e-12},             {"d0", 1e-14},
        {"local_representation", 1e-10}, {"resolvent_identity", 1e-8},  {"charfn_oracle", 1e-10},
        {"order_estimate", 0.1},        {"laplace_constant", 1e-14},    {"laplace_difference", 1e-12},
        {"laplace_inversion", 1e-12},   {"laplace_symbol", 1e-10},      {"parseval", 1e-9},
        {"suite_seconds", 30.0},
    };
}

struct RunConfig {
    int q = 2;
    double alpha = 1.0;
    int depth = default_depth;
    int dim = default_dim;
    int terms = 25;
    ToleranceMap tolerances = default_tolerances();

    double tol(const std::string& name) const
    {
        const auto it = tolerances.find(name);
        if (it == tolerances.end())
            throw precondition_error("no tolerance named '" + name + "'");
        return it->second;
    }

    void validate() const
    {
        if (q < 2 || !(alpha > 0.0) || depth < 1 || dim < 2 || terms < 1)
            throw precondition_error("config: q >= 2, alpha > 0, depth >= 1, dim >= 2, terms >= 1 required");
        for (const auto& [name, value] : default_tolerances())
            if (!tolerances.count(name))
                throw precondition_error("config: tolerance '" + name + "' missing");
        for (const auto& [name, value] : tolerances) {
            if (!default_tolerances().count(name))
                throw precondition_error("config: unknown tolerance '" + name + "'");
            if (!(value >= 0.0))
                throw precondition_error("config: tolerance '" + name + "' must be >= 0");
        }
    }
};

struct Measurement {
    std::string name;
    double value;
    std::string requirement; // e.g. "<= 1e-12"
    bool passed;
    std::string limitation;  // non-empty: failure is a known, analysed limitation
};

struct CheckResult {
    std::string id;
    std::string title;
    std::vector<Measurement> measurements;
    double seconds = 0.0;

    bool passed() const
    {
        return std::all_of(measurements.begin(), measurements.end(), [](const auto& m) { return m.passed; });
    }
    // every failing measurement is a documented limitation
    bool only_documented_failures() const
    {
        return std::all_of(measurements.begin(), measurements.end(),
                           [](const auto& m) { return m.passed || !m.limitation.empty(); });
    }
};

namespace detail {

inline std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

class Recorder {
public:
    explicit Recorder(CheckResult& r) : r_(r) {}

    void at_most(const std::string& name, double value, double tol, std::string limitation = {})
    {
        r_.measurements.push_back({name, value, "<= " + fmt(tol), value <= tol, std::move(limitation)});
    }
    void equals(const std::string& name, double value, double expected)
    {
        r_.measurements.push_back({name, value, "== " + fmt(expected), value == expected, {}});
    }
    void holds(const std::string& name, bool ok, double value = 0.0, std::string requirement = "true")
    {
        r_.measurements.push_back({name, value, std::move(requirement), ok, {}});
    }

private:
    CheckResult& r_;
};

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// sup over j in [lo, hi] and the tail, relative to sup |v|
inline double rel_difference(const RadialFunction& u, const RadialFunction& v)
{
    const double scale = std::max(radial::max_abs(v), 1e-300);
    return max_abs_difference(u, v) / scale;
}

inline RadialFunction random_function(const FieldParams& p, Window w, std::mt19937_64& g, cd tail = {},
                                      Support s = Support::ring)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return RadialFunction::sample(p, w, [&](int) { return cd(d(g), d(g)); }, tail, s);
}

} // namespace detail

// 1. D^alpha v_N = q^{alpha N} v_N.
inline CheckResult check_eigenfunctions(const RunConfig& cfg)
{
    CheckResult r{"1", "eigenfunctions of D^alpha", {}};
    detail::Recorder rec(r);
    const auto start = std::chrono::steady_clock::now();
    std::vector<int> qs{2, 3, 5};
    std::vector<double> alphas{0.5, 1.0, 2.0};
    if (std::find(qs.begin(), qs.end(), cfg.q) == qs.end())
        qs.push_back(cfg.q);
    if (std::find(alphas.begin(), alphas.end(), cfg.alpha) == alphas.end())
        alphas.push_back(cfg.alpha);
    double worst = 0.0;
    for (int q : qs)
        for (double a : alphas) {
            const FieldParams p(q, a);
            for (int N = 1; N <= 8; ++N) {
                const auto v = field_eigenfunction(p, N);
                const auto dv = apply_D_alpha(v, Window{-N - 4, 4});
                worst = std::max(worst, detail::rel_difference(dv, p.pow(a * N) * v));
            }
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.at_most("max relative error, q in {2,3,5}, alpha in {1/2,1,2}, N=1..8", worst, cfg.tol("eigenfunction"));
    rec.at_most("seconds", secs, cfg.tol("eigenfunction_seconds"));
    return r;
}

// 2. D^alpha_O v_0 = mu_0 v_0.
inline CheckResult check_first_eigenvalue(const RunConfig& cfg)
{
    CheckResult r{"2", "first eigenvalue of D^alpha_O", {}};
    detail::Recorder rec(r);
    auto error = [](const FieldParams& p) {
        const double q = p.qd(), a = p.alpha();
        const double mu0 = (q - 1.0) * p.pow(a) / (p.pow(a + 1.0) - 1.0);
        const auto v0 = make_basis(p, {BasisTag::v, 0});
        return max_abs_difference(apply_D_alpha_O(v0), mu0 * v0);
    };
    rec.at_most("config q, alpha", error(FieldParams(cfg.q, cfg.alpha)), cfg.tol("first_eigenvalue"));
    const FieldParams p2(2, 1.0);
    const auto v0 = make_basis(p2, {BasisTag::v, 0});
    rec.at_most("q=2, alpha=1: |D_O v_0 - (2/3) v_0|", max_abs_difference(apply_D_alpha_O(v0), (2.0 / 3.0) * v0),
                cfg.tol("first_eigenvalue"));
    return r;
}

// 3. Right inverse.  Reported twice: literally (D^alpha_O after I^alpha_O,
// which drops the values of I^alpha u outside O) and on K.
inline CheckResult check_right_inverse(const RunConfig& cfg)
{
    CheckResult r{"3", "right inverse D^alpha I^alpha = id", {}};
    detail::Recorder rec(r);
    std::vector<double> alphas{0.5, 1.0, 2.0};
    if (std::find(alphas.begin(), alphas.end(), cfg.alpha) == alphas.end())
        alphas.push_back(cfg.alpha);
    double literal = 0.0, on_k = 0.0;
    for (double a : alphas) {
        const FieldParams p(cfg.q, a);
        std::vector<RadialFunction> us;
        for (int k = 1; k <= 10; ++k)
            us.push_back(basis_vector(p, Basis::e, k));
        for (int k = 0; k <= 10; ++k)
            us.push_back(basis_vector(p, Basis::f, k));
        const int top = right_inverse_height(p);
        for (const auto& u : us) {
            literal = std::max(literal, max_abs_difference(apply_D_alpha_O(apply_I_alpha(u)), u));
            const int lo = u.n_lo() - cfg.depth;
            const auto iu = apply_I_alpha(u.widened(Window{lo, u.n_hi()}), Window{lo, top});
            const auto back = apply_D_alpha(iu, Window{lo, 0});
            double e = 0.0;
            for (int j = u.n_lo() - 1; j <= 0; ++j)
                e = std::max(e, std::abs(back(j) - u(j)));
            on_k = std::max(on_k, e);
        }
    }
    rec.at_most("D_O I_O u - u, literal (I^alpha u restricted to O first)", literal, cfg.tol("right_inverse"),
                "I^alpha u is nonzero outside O; D_O extends by zero and loses that part, "
                "e.g. D_O I_O e_N = e_N - c e_0 with c != 0");
    rec.at_most("D^alpha I^alpha u - u on O, I^alpha u kept on K", on_k, cfg.tol("right_inverse"));
    return r;
}

// 4. Matrix of I^1 in the e basis.
inline CheckResult check_i1_matrix(const RunConfig& cfg)
{
    CheckResult r{"4", "I^1 matrix pattern and eigenvalues", {}};
    detail::Recorder rec(r);
    const int dim = std::max(cfg.dim - 10, 6);
    const FieldParams p(cfg.q, 1.0);
    const double q = p.qd();
    const auto m = operator_matrix(p, OperatorName::I1, Basis::e, dim, cfg.depth).entries;

    // orthonormal e_N: row 0 = -(q-1)^{1/2} q^{-(N+1)/2}, diagonal q^{-N}
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        expected(0, n) = -std::sqrt(q - 1.0) * p.pow(-(n + 1.0) / 2.0);
        expected(n, n) = p.pow(-n);
    }
    rec.at_most("entries vs orthonormal-basis closed form", detail::max_abs(m - expected), cfg.tol("i1_entries"));

    // coordinates w.r.t. {e_0, sqrt(q) e_N}: row 0 = -(q-1)^{1/2} q^{-N/2}
    Eigen::VectorXd s = Eigen::VectorXd::Constant(dim, std::sqrt(q));
    s(0) = 1.0;
    const Eigen::MatrixXcd scaled = s.cwiseInverse().asDiagonal() * m * s.asDiagonal();
    Eigen::MatrixXcd printed = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        printed(0, n) = -std::sqrt(q - 1.0) * p.pow(-n / 2.0);
        printed(n, n) = p.pow(-n);
    }
    rec.at_most("entries in the unnormalized system vs printed pattern", detail::max_abs(scaled - printed),
                cfg.tol("i1_entries"));

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    double worst = 0.0;
    const int count = dim - 5;
    for (int k = 1; k <= count; ++k) {
        double best = 1e300;
        for (int i = 0; i < dim; ++i)
            best = std::min(best, std::abs(es.eigenvalues()(i) - p.pow(-k)));
        worst = std::max(worst, best);
    }
    rec.at_most("eigenvalues contain q^-m, m=1.." + std::to_string(count), worst, cfg.tol("i1_eigenvalues"));
    return r;
}

// 5. I_0^1 is Volterra with kernel spanned by u_0.
inline CheckResult check_volterra(const RunConfig& cfg)
{
    CheckResult r{"5", "Volterra structure of I_0^1", {}};
    detail::Recorder rec(r);
    const FieldParams p(cfg.q, 1.0);
    const auto v = volterra_check(p, cfg.dim, cfg.tol("kernel_threshold"), cfg.tol("triangular"));
    rec.at_most("max |entry(j,n)|, n <= j", v.max_lower_entry, cfg.tol("triangular"));
    rec.at_most("max |eigenvalue|", v.max_abs_eigenvalue, cfg.tol("volterra_eigenvalues"));
    rec.equals("kernel dimension", v.kernel_dim, 1.0);
    // u_0 = (1 - 1/q)^{1/2} f_0
    Eigen::VectorXcd u0 = Eigen::VectorXcd::Zero(cfg.dim);
    u0(0) = 1.0;
    const double dev = (v.kernel_vector - u0).cwiseAbs().maxCoeff();
    rec.at_most("kernel vector vs f-coordinates of u_0 (normalized)", dev, cfg.tol("kernel_threshold"));
    return r;
}

// 6. Imaginary part J of I_0^1.
inline CheckResult check_imaginary_part(const RunConfig& cfg)
{
    CheckResult r{"6", "imaginary part J", {}};
    detail::Recorder rec(r);
    const FieldParams p(cfg.q, 1.0);
    const auto jc = j_matrix(p, cfg.dim);
    const auto jn = operator_matrix(p, OperatorName::J, Basis::e, cfg.dim, cfg.depth);
    const auto dc = j_diagnostics(jc, cfg.tol("j_rank_threshold"));
    const auto dn = j_diagnostics(jn, cfg.tol("j_rank_threshold"));
    rec.at_most("|trace J| (closed form)", std::abs(dc.trace), cfg.tol("j_trace"));
    rec.at_most("|trace J| (assembled)", std::abs(dn.trace), cfg.tol("j_trace"));
    rec.equals("singular values above threshold (closed form)", dc.rank, 2.0);
    rec.equals("singular values above threshold (assembled)", dn.rank, 2.0);

    const auto a = operator_matrix(p, OperatorName::I01, Basis::e, cfg.dim, cfg.depth).entries;
    const Eigen::MatrixXcd lhs = (a - a.adjoint()) / cd(0.0, 1.0);
    rec.at_most("(1/i)(A - A*) - 2J (closed form)", detail::max_abs(lhs - 2.0 * jc.entries), cfg.tol("j_identity"));
    rec.at_most("assembled J - closed form", detail::max_abs(jn.entries - jc.entries), cfg.tol("j_identity"));

    const auto u0 = make_basis(p, {BasisTag::u0, 0});
    const auto ju = imaginary_part(u0, cfg.depth);
    const double q = p.qd();
    const cd k = -(q - 1.0) * (q - 1.0) / (cd(0.0, 2.0) * q * q * p.log_q());
    double e = 0.0;
    for (int j = ju.n_lo(); j <= 0; ++j)
        e = std::max(e, std::abs(ju(j) - k * (j * p.log_q())));
    rec.at_most("J u_0 vs -(q-1)^2/(2 i q^2 ln q) log|x|", e, cfg.tol("j_u0"));
    return r;
}

// 7. Moment closed forms against shell sums.
inline CheckResult check_moments(const RunConfig& cfg)
{
    CheckResult r{"7", "moment closed forms", {}};
    detail::Recorder rec(r);
    double worst = 0.0;
    for (int q : {2, 3, 5, cfg.q}) {
        const FieldParams p(q, 1.0);
        for (int n = 0; n <= 20; ++n) {
            worst = std::max(worst, std::abs(d_constant(p, n) - oracle::d_series(p, n)));
            worst = std::max(worst, std::abs(moment_a(p, n) - oracle::a_series(p, n)));
            worst = std::max(worst, std::abs(moment_b(p, n) - oracle::b_series(p, n)));
            worst = std::max(worst, std::abs(moment_m0(p, n) - oracle::m0_series(p, n)));
        }
    }
    rec.at_most("max |closed form - 200-term series|, indices <= 20", worst, cfg.tol("moments"));
    rec.at_most("|d_0(q=2) - ln 2|", std::abs(d_constant(FieldParams(2, 1.0), 0) - std::log(2.0)), cfg.tol("d0"));
    return r;
}

// 8. I^1 u = R u - (R u)(0), R the inverse of D^1_O.
inline CheckResult check_local_representation(const RunConfig& cfg)
{
    CheckResult r{"8", "local representation via the resolvent", {}};
    detail::Recorder rec(r);
    const FieldParams p(cfg.q, 1.0);
    double worst = 0.0;
    for (Basis b : {Basis::e, Basis::f})
        for (int k = 0; k <= 10; ++k) {
            const auto u = basis_vector(p, b, k);
            const auto ru = apply_resolvent_D1O(u);
            const auto lhs = apply_I_alpha(u);
            const auto rhs = combine(1.0, ru, -resolvent_value_at_origin(u), make_basis(p, {BasisTag::v, 0}));
            worst = std::max(worst, max_abs_difference(lhs, rhs));
        }
    rec.at_most("max |I^1 u - (R u - R u(0))|, e_0..e_10, f_0..f_10", worst, cfg.tol("local_representation"));

    const auto res = operator_matrix(p, OperatorName::resolvent, Basis::e, cfg.dim, cfg.depth).entries;
    const auto d1 = operator_matrix(p, OperatorName::D1O, Basis::e, cfg.dim, cfg.depth).entries;
    const int lead = cfg.dim - 5;
    const Eigen::MatrixXcd prod = (res * d1).topLeftCorner(lead, lead);
    rec.at_most("R D1O - I on leading " + std::to_string(lead) + "x" + std::to_string(lead) + " block (e basis)",
                detail::max_abs(prod - Eigen::MatrixXcd::Identity(lead, lead)), cfg.tol("resolvent_identity"),
                "D1O e_N = q^N e_N: the zero entries <D1O e_N, e_0> carry rounding ~ eps q^{N/2}, "
                "which exceeds the bound for q >= 3 at this dimension");
    return r;
}

// 9. Characteristic matrix-function.
inline CheckResult check_characteristic_function(const RunConfig& cfg)
{
    CheckResult r{"9", "characteristic function W", {}};
    detail::Recorder rec(r);
    const FieldParams p(cfg.q, 1.0);
    const auto w = characteristic_function(p, cfg.terms);
    const int n_oracle = std::min(8, cfg.terms);
    const auto grid = oracle::neumann_grid(p, n_oracle + 1);
    double dev = 0.0;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int n = 0; n <= n_oracle; ++n)
                dev = std::max(dev, std::abs(w.coefficients(a, b)[static_cast<std::size_t>(n)] -
                                             grid[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)]
                                                 [static_cast<std::size_t>(n)]));
    rec.at_most("recursion vs grid Neumann iteration, n <= " + std::to_string(n_oracle), dev, cfg.tol("charfn_oracle"));

    double worst_rho = 0.0, worst_c = 0.0, worst_growth = 0.0;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            const auto c = order_certificate(w.coefficients(a, b), p.qd());
            worst_rho = std::max(worst_rho, c.max_order_estimate);
            worst_c = std::max(worst_c, c.fitted_C);
            worst_growth = std::max(worst_growth, c.last_step_growth);
        }
    rec.holds("fitted C finite (largest over entries)", std::isfinite(worst_c), worst_c, "finite");
    rec.at_most("last-step growth of (|c_n| q^{n^2/2})^{1/n}", worst_growth, 1.05);
    rec.at_most("order estimate max_{n>=5} n ln n / ln(1/|c_n|)", worst_rho, cfg.tol("order_estimate"),
                "for |c_n| ~ C^n q^{-n^2/2} the estimate is ~ 2 ln n / (n ln q): order 0 only in the limit, "
                "about 0.4-0.6 on n <= 25 (even c_n = q^{-n^2/2} gives 0.93 at n = 5)");
    const bool exact = w.W(0.0) == Eigen::Matrix2cd::Identity();
    rec.holds("W(0) == E exactly", exact, exact ? 1.0 : 0.0);
    return r;
}

// 10. Laplace-type transform.
inline CheckResult check_laplace(const RunConfig& cfg)
{
    CheckResult r{"10", "Laplace-type transform", {}};
    detail::Recorder rec(r);
    const FieldParams p(cfg.q, cfg.alpha);
    std::mt19937_64 g(20240611);

    const auto one = RadialFunction(p, Window{-5, 5}, std::vector<cd>(11, cd(1.0)), cd(1.0), Support::field);
    // a constant on K: wide window, zero outer values above the transform's reach
    const auto t1 = laplace_transform(one, Window{-4, 30});
    double c = 0.0;
    for (const auto& v : t1.values())
        c = std::max(c, std::abs(v));
    rec.at_most("max |transform of 1|", c, cfg.tol("laplace_constant"));

    double diff = 0.0;
    // supports inside O: the identity is checked in absolute terms and its
    // right side carries a factor q^{-n}
    std::uniform_int_distribution<int> lo_d(-20, 0), len_d(0, 12);
    for (int i = 0; i < 100; ++i) {
        const int lo = lo_d(g);
        const int hi = std::min(lo + len_d(g), 0);
        const cd tail = (i % 2) ? cd(std::uniform_real_distribution<double>(-1, 1)(g)) : cd{};
        const auto phi = detail::random_function(p, Window{lo, hi}, g, tail, Support::field);
        diff = std::max(diff, difference_identity_residual(phi, Window{-30, 30}));
    }
    rec.at_most("difference identity, 100 random functions", diff, cfg.tol("laplace_difference"));

    const auto phi = detail::random_function(p, Window{-20, 0}, g);
    const int m_max = 25;
    const auto inv = laplace_invert(laplace_transform(phi, Window{-m_max + 1, m_max + 1}), phi(0), m_max);
    double rt = 0.0;
    for (int m = -m_max; m <= m_max; ++m)
        rt = std::max(rt, std::abs(inv(m) - phi(m)));
    rec.at_most("inversion round trip, support -20..0", rt, cfg.tol("laplace_inversion"));

    double sym = 0.0;
    // |D^alpha phi| grows like q^{alpha k} for support reaching q^{-k}; keep k small
    const auto small = detail::random_function(p, Window{-4, 0}, g);
    for (double a : {0.5, 1.0, 2.0, cfg.alpha})
        sym = std::max(sym, symbol_identity_residual(small, a, Window{-8, 8}));
    rec.at_most("symbol identity, alpha in {1/2,1,2}", sym, cfg.tol("laplace_symbol"));

    // strictly decreasing in |x| on the window, constant below
    std::uniform_real_distribution<double> step(0.1, 1.0);
    std::vector<cd> vals(21);
    double acc = 0.0;
    for (int k = 20; k >= 0; --k) {
        acc += step(g);
        vals[static_cast<std::size_t>(k)] = acc;
    }
    const auto mono = RadialFunction(p, Window{-20, 0}, vals, vals[0] + step(g), Support::ring);
    const auto signs = monotonicity_signs(mono, Window{-25, 25});
    rec.holds("sign patterns of shell and transform differences equal", signs.match(), signs.match() ? 1.0 : 0.0);
    return r;
}

// 11. Completeness.
inline CheckResult check_completeness(const RunConfig& cfg)
{
    CheckResult r{"11", "basis completeness and polynomial density", {}};
    detail::Recorder rec(r);
    const FieldParams p(cfg.q, cfg.alpha);
    const auto f7 = basis_vector(p, Basis::f, 7);
    double s = 0.0;
    for (const auto& c : expand(f7, Basis::e, 61))
        s += std::norm(c);
    rec.at_most("| sum_{N<=60} |<f_7, e_N>|^2 - ||f_7||^2 |", std::abs(s - std::norm(norm(f7))), cfg.tol("parseval"));

    const auto f0 = basis_vector(p, Basis::f, 0);
    double prev = poly_projection_residual(f0, 1);
    bool decreasing = true;
    double last = prev;
    for (int L = 2; L <= 10; ++L) {
        last = poly_projection_residual(f0, L);
        decreasing = decreasing && last < prev;
        prev = last;
    }
    rec.holds("projection residuals of f_0 strictly decreasing, L = 1..10", decreasing, last, "strictly decreasing");
    return r;
}

struct SuiteReport {
    RunConfig config;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
    }
    bool only_documented_failures() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.only_documented_failures(); });
    }
};

inline SuiteReport run_suite(const RunConfig& cfg)
{
    cfg.validate();
    using check_fn = CheckResult (*)(const RunConfig&);
    const check_fn fns[] = {check_eigenfunctions,      check_first_eigenvalue, check_right_inverse,
                            check_i1_matrix,               check_volterra,         check_imaginary_part,
                            check_moments,             check_local_representation,
                            check_characteristic_function, check_laplace,      check_completeness};
    SuiteReport rep{cfg, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    for (auto fn : fns) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult c = fn(cfg);
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.checks.push_back(std::move(c));
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    CheckResult total{"12", "whole suite runtime", {}};
    detail::Recorder(total).at_most("seconds", rep.seconds, cfg.tol("suite_seconds"));
    total.seconds = rep.seconds;
    rep.checks.push_back(std::move(total));
    return rep;
}

// One line per criterion, followed by indented measurements.
inline std::string format_report(const SuiteReport& rep, bool details = true)
{
    std::ostringstream os;
    for (const auto& c : rep.checks) {
        os << "criterion " << c.id << ": " << (c.passed() ? "PASS" : "FAIL") << "  " << c.title << "  ("
           << detail::fmt(c.seconds) << " s)\n";
        if (!details)
            continue;
        for (const auto& m : c.measurements) {
            os << "    [" << (m.passed ? "ok" : "FAIL") << "] " << m.name << " = " << detail::fmt(m.value) << "  ("
               << m.requirement << ")\n";
            if (!m.passed && !m.limitation.empty())
                os << "           known limitation: " << m.limitation << "\n";
        }
    }
    os << (rep.passed() ? "all criteria passed" : "some criteria failed") << "\n";
    return os.str();
}

} // namespace radial
