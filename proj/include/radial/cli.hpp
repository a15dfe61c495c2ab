#pragma once

// Document formats and the command implementations behind tools/radial.
// Commands write to a stream and return the process exit status:
// 0 ok, 1 verification failure, 2 parse/schema error, 3 precondition error.

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "density.hpp"
#include "field.hpp"
#include "laplace.hpp"
#include "operators.hpp"
#include "spectral.hpp"
#include "verify.hpp"

namespace radial::cli {

using json = nlohmann::ordered_json;

enum exit_code { ok = 0, verification_failed = 1, parse_failed = 2, precondition_failed = 3 };

struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    RunConfig run;
    std::string format = "json"; // json | csv; verify also accepts "text"
};

// --- serialization ---------------------------------------------------------

// -0.0 is written as 0.0 so that equal values serialize identically
inline double unsigned_zero(double x) { return x == 0.0 ? 0.0 : x; }

inline json complex_json(cd z) { return json::array({unsigned_zero(z.real()), unsigned_zero(z.imag())}); }

inline std::string complex_csv(cd z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", unsigned_zero(z.real()), unsigned_zero(z.imag()));
    return buf;
}

inline json to_json(const RadialFunction& u)
{
    json values = json::array();
    for (const auto& v : u.values())
        values.push_back(complex_json(v));
    return json{{"q", u.params().q()},       {"alpha", u.params().alpha()}, {"n_lo", u.n_lo()},
                {"n_hi", u.n_hi()},          {"values", std::move(values)}, {"inner_tail", complex_json(u.inner_tail())}};
}

namespace detail {

inline const json& field(const json& doc, const char* name)
{
    if (!doc.is_object())
        throw schema_error("document must be a JSON object");
    const auto it = doc.find(name);
    if (it == doc.end())
        throw schema_error(std::string("missing field '") + name + "'");
    return *it;
}

inline int integer_field(const json& doc, const char* name)
{
    const auto& v = field(doc, name);
    if (!v.is_number_integer())
        throw schema_error(std::string("field '") + name + "' must be an integer");
    return v.get<int>();
}

inline double number_field(const json& doc, const char* name)
{
    const auto& v = field(doc, name);
    if (!v.is_number())
        throw schema_error(std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

inline cd complex_value(const json& v, const std::string& where)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw schema_error("field '" + where + "' must be a [re, im] pair of numbers");
    return {v[0].get<double>(), v[1].get<double>()};
}

inline FieldParams params_from(const json& doc)
{
    const int q = integer_field(doc, "q");
    const double alpha = number_field(doc, "alpha");
    if (q < 2)
        throw schema_error("field 'q' must be >= 2");
    if (!(alpha > 0.0))
        throw schema_error("field 'alpha' must be > 0");
    return {q, alpha};
}

inline std::vector<cd> values_from(const json& doc, int lo, int hi)
{
    if (hi < lo)
        throw schema_error("field 'n_hi' must be >= 'n_lo'");
    const auto& vals = field(doc, "values");
    if (!vals.is_array())
        throw schema_error("field 'values' must be an array");
    if (static_cast<long>(vals.size()) != long(hi) - lo + 1)
        throw schema_error("field 'values' must have n_hi - n_lo + 1 = " + std::to_string(long(hi) - lo + 1) +
                           " entries, found " + std::to_string(vals.size()));
    std::vector<cd> out;
    for (std::size_t k = 0; k < vals.size(); ++k)
        out.push_back(complex_value(vals[k], "values[" + std::to_string(k) + "]"));
    return out;
}

} // namespace detail

// Documents describe functions on K; commands for the O operators restrict
// them to O when n_hi <= 0.
inline RadialFunction radial_from_json(const json& doc)
{
    const FieldParams p = detail::params_from(doc);
    const int lo = detail::integer_field(doc, "n_lo");
    const int hi = detail::integer_field(doc, "n_hi");
    auto values = detail::values_from(doc, lo, hi);
    const cd tail = detail::complex_value(detail::field(doc, "inner_tail"), "inner_tail");
    return {p, Window{lo, hi}, std::move(values), tail, Support::field};
}

inline json to_json(const TransformSequence& t)
{
    json values = json::array();
    for (const auto& v : t.values())
        values.push_back(complex_json(v));
    return json{{"q", t.params().q()}, {"alpha", t.params().alpha()}, {"n_lo", t.n_lo()}, {"n_hi", t.n_hi()},
                {"values", std::move(values)}};
}

inline TransformSequence transform_from_json(const json& doc)
{
    const FieldParams p = detail::params_from(doc);
    const int lo = detail::integer_field(doc, "n_lo");
    const int hi = detail::integer_field(doc, "n_hi");
    return {p, Window{lo, hi}, detail::values_from(doc, lo, hi)};
}

inline json to_json(const RecoveredShells& r)
{
    json values = json::array();
    for (const auto& v : r.values)
        values.push_back(complex_json(v));
    return json{{"q", r.params.q()}, {"alpha", r.params.alpha()}, {"n_lo", -r.m_max}, {"n_hi", r.m_max},
                {"values", std::move(values)}};
}

inline json parse_document(std::istream& in)
{
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw schema_error(std::string("malformed JSON: ") + e.what());
    }
}

// rows by j ascending; header `j\n` then column indices n
inline void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& m)
{
    os << "j\\n";
    for (int n = 0; n < m.cols(); ++n)
        os << ',' << n;
    os << '\n';
    for (int j = 0; j < m.rows(); ++j) {
        os << j;
        for (int n = 0; n < m.cols(); ++n)
            os << ',' << complex_csv(m(j, n));
        os << '\n';
    }
}

inline json matrix_json(const OperatorMatrix& m)
{
    json rows = json::array();
    for (int j = 0; j < m.dim; ++j) {
        json row = json::array();
        for (int n = 0; n < m.dim; ++n)
            row.push_back(complex_json(m.entries(j, n)));
        rows.push_back(std::move(row));
    }
    return json{{"q", m.params.q()},       {"alpha", m.params.alpha()}, {"operator", to_string(m.op)},
                {"basis", to_string(m.basis)}, {"dim", m.dim},           {"entries", std::move(rows)}};
}

// --- commands --------------------------------------------------------------

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const schema_error& e) {
        err << "error: " << e.what() << '\n';
        return parse_failed;
    } catch (const precondition_error& e) {
        err << "precondition violated: " << e.what() << '\n';
        return precondition_failed;
    } catch (const range_error& e) {
        err << "precondition violated: " << e.what() << '\n';
        return precondition_failed;
    } catch (const ill_conditioned_error& e) {
        err << "precondition violated: " << e.what() << '\n';
        return precondition_failed;
    }
}

inline void require_json(const Options& o, const char* what)
{
    if (o.format != "json")
        throw precondition_error(std::string(what) + " supports --format json only");
}

} // namespace detail

// `op` is one of the operator names, or "Dalpha" for D^alpha on K evaluated
// on [n_lo, hi] (hi defaults to the input's n_hi).
inline int cmd_apply(const Options& o, const std::string& op, std::istream& in, std::ostream& out, std::ostream& err,
                     std::optional<int> hi = {})
{
    return detail::guarded(err, [&] {
        detail::require_json(o, "apply");
        const auto doc = parse_document(in);
        const RadialFunction u = radial_from_json(doc);
        if (op == "Dalpha") {
            out << to_json(apply_D_alpha(u, Window{u.n_lo(), hi.value_or(u.n_hi())})).dump() << '\n';
            return ok;
        }
        const auto name = parse_operator_name(op);
        if (!name)
            throw precondition_error("unknown operator '" + op + "'");
        // the O operators accept any document that vanishes outside O
        const FieldParams p = operator_params(*name, u.params());
        const RadialFunction v(p, u.window(), {u.values().begin(), u.values().end()}, u.inner_tail(),
                               u.n_hi() <= 0 ? Support::ring : Support::field);
        out << to_json(apply_operator(*name, v, o.run.depth)).dump() << '\n';
        return ok;
    });
}

inline int cmd_matrix(const Options& o, const std::string& op, const std::string& basis, std::ostream& out,
                      std::ostream& err)
{
    return detail::guarded(err, [&] {
        const auto name = parse_operator_name(op);
        if (!name)
            throw precondition_error("unknown operator '" + op + "'");
        if (basis != "e" && basis != "f")
            throw precondition_error("basis must be 'e' or 'f'");
        if (o.run.dim < 2)
            throw precondition_error("--dim must be >= 2");
        const auto m = operator_matrix(FieldParams(o.run.q, o.run.alpha), *name, basis == "e" ? Basis::e : Basis::f,
                                       o.run.dim, o.run.depth);
        if (o.format == "csv")
            write_matrix_csv(out, m.entries);
        else
            out << matrix_json(m).dump() << '\n';
        return ok;
    });
}

inline int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const FieldParams p(o.run.q, 1.0);
        const auto s = i1_eigenpairs(p, o.run.dim);
        if (o.format == "csv") {
            out << "k,re,im\n";
            for (std::size_t k = 0; k < s.computed.size(); ++k) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, s.computed[k].value.real(),
                              s.computed[k].value.imag());
                out << buf;
            }
            return ok;
        }
        json computed = json::array(), analytic = json::array();
        for (const auto& e : s.computed)
            computed.push_back(complex_json(e.value));
        for (const auto& e : s.analytic)
            analytic.push_back(complex_json(e.value));
        const auto v = volterra_check(p, o.run.dim);
        const auto jd = j_diagnostics(p, o.run.dim);
        out << json{{"q", p.q()},
                    {"dim", o.run.dim},
                    {"I1_eigenvalues", std::move(computed)},
                    {"I1_eigenvalues_analytic", std::move(analytic)},
                    {"I01", {{"max_abs_eigenvalue", v.max_abs_eigenvalue},
                             {"strictly_triangular", v.strictly_triangular},
                             {"kernel_dim", v.kernel_dim}}},
                    {"J", {{"trace", complex_json(jd.trace)},
                           {"rank", jd.rank},
                           {"singular_values", jd.singular_values}}}}
                   .dump()
            << '\n';
        return ok;
    });
}

inline int cmd_charfn(const Options& o, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        detail::require_json(o, "charfn");
        const FieldParams p(o.run.q, 1.0);
        const auto w = characteristic_function(p, o.run.terms);
        json coefs, certs;
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b) {
                const std::string key = std::to_string(a) + std::to_string(b);
                json arr = json::array();
                for (const auto& c : w.coefficients(a, b))
                    arr.push_back(complex_json(c));
                coefs[key] = std::move(arr);
                const auto c = order_certificate(w.coefficients(a, b), p.qd());
                certs[key] = {{"fitted_C", c.fitted_C},
                              {"fitted_at", c.fitted_at},
                              {"last_step_growth", c.last_step_growth},
                              {"envelope_consistent", c.envelope_consistent},
                              {"max_order_estimate", c.max_order_estimate}};
            }
        out << json{{"q", p.q()},
                    {"T", o.run.terms},
                    {"underflow_index", w.underflow_index()},
                    {"coefficients", std::move(coefs)},
                    {"order_certificate", std::move(certs)}}
                   .dump()
            << '\n';
        return ok;
    });
}

inline int cmd_laplace(const Options& o, std::istream& in, int n_lo, int n_hi, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        detail::require_json(o, "laplace");
        const RadialFunction phi = radial_from_json(parse_document(in));
        out << to_json(laplace_transform(phi, Window{n_lo, n_hi})).dump() << '\n';
        return ok;
    });
}

inline int cmd_laplace_invert(const Options& o, std::istream& in, cd phi_at_1, int m_max, std::ostream& out,
                              std::ostream& err)
{
    return detail::guarded(err, [&] {
        detail::require_json(o, "laplace-invert");
        const auto t = transform_from_json(parse_document(in));
        out << to_json(laplace_invert(t, phi_at_1, m_max)).dump() << '\n';
        return ok;
    });
}

inline json report_json(const SuiteReport& rep)
{
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json ms = json::array();
        for (const auto& m : c.measurements) {
            json mj{{"name", m.name}, {"value", m.value}, {"requirement", m.requirement}, {"passed", m.passed}};
            if (!m.passed && !m.limitation.empty())
                mj["known_limitation"] = m.limitation;
            ms.push_back(std::move(mj));
        }
        checks.push_back(json{{"criterion", c.id},
                              {"title", c.title},
                              {"passed", c.passed()},
                              {"seconds", c.seconds},
                              {"measurements", std::move(ms)}});
    }
    return json{{"q", rep.config.q},     {"alpha", rep.config.alpha},     {"passed", rep.passed()},
                {"seconds", rep.seconds}, {"checks", std::move(checks)}};
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    return detail::guarded(err, [&] {
        const auto rep = run_suite(o.run);
        if (o.format == "json")
            out << report_json(rep).dump(2) << '\n';
        else
            out << format_report(rep, o.format == "text");
        return rep.passed() ? ok : verification_failed;
    });
}

// NAME=VALUE
inline void apply_tolerance_override(RunConfig& cfg, const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw schema_error("tolerance override '" + spec + "' must be NAME=VALUE");
    const std::string name = spec.substr(0, eq);
    if (!cfg.tolerances.count(name))
        throw schema_error("unknown tolerance '" + name + "'");
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(spec.substr(eq + 1), &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != spec.size() - eq - 1)
        throw schema_error("tolerance '" + name + "' needs a numeric value");
    cfg.tolerances[name] = value;
}

} // namespace radial::cli
