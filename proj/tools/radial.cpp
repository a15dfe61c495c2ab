// radial <subcommand> [options]; see README.md for the document formats.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "radial/cli.hpp"

namespace {

using namespace radial;

// Runs a command against --in (or stdin) and --out (or stdout).
int with_streams(const std::string& in_path, const std::string& out_path,
                 const std::function<int(std::istream&, std::ostream&)>& run)
{
    std::ifstream file_in;
    std::istream* in = &std::cin;
    if (!in_path.empty() && in_path != "-") {
        file_in.open(in_path);
        if (!file_in) {
            std::cerr << "error: cannot read input file '" << in_path << "'\n";
            return cli::parse_failed;
        }
        in = &file_in;
    }
    std::ostringstream buffer;
    const int code = run(*in, buffer);
    if (out_path.empty() || out_path == "-") {
        std::cout << buffer.str();
        return code;
    }
    std::ofstream f(out_path);
    if (!f) {
        std::cerr << "error: cannot write output file '" << out_path << "'\n";
        return cli::precondition_failed;
    }
    f << buffer.str();
    return code;
}

cd parse_complex(const std::string& s)
{
    const auto comma = s.find(',');
    std::size_t used = 0;
    try {
        if (comma == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used == s.size())
                return {re, 0.0};
        } else {
            std::size_t used_im = 0;
            const double re = std::stod(s.substr(0, comma), &used);
            const double im = std::stod(s.substr(comma + 1), &used_im);
            if (used == comma && used_im == s.size() - comma - 1)
                return {re, im};
        }
    } catch (const std::exception&) {
    }
    throw cli::schema_error("--phi1 expects RE or RE,IM, got '" + s + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Radial calculus on a non-Archimedean local field"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::Options opt;
    std::string out_path, in_path;
    auto* fmt = app.add_option("--format", opt.format, "json | csv (verify: json | text | csv)")
                    ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--q", opt.run.q, "residue field cardinality")->check(CLI::Range(2, 1 << 20));
    app.add_option("--alpha", opt.run.alpha, "order of D^alpha and I^alpha")->check(CLI::PositiveNumber);
    app.add_option("--depth", opt.run.depth, "truncation depth")->check(CLI::PositiveNumber);
    app.add_option("--dim", opt.run.dim, "matrix truncation dimension")->check(CLI::Range(2, 4096));
    app.add_option("--terms", opt.run.terms, "order T of the characteristic series")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "output file (default stdout)");

    std::string op, basis = "e";
    std::optional<int> hi;
    auto* apply = app.add_subcommand("apply", "apply an operator to a radial-function document");
    apply->add_option("op", op, "D1O I1 I01 J resolvent DalphaO Ialpha Dalpha")->required();
    apply->add_option("--in", in_path, "input document (default stdin)");
    apply->add_option("--hi", hi, "top of the output window for Dalpha");

    auto* matrix = app.add_subcommand("matrix", "operator matrix in the e or f basis");
    matrix->add_option("op", op, "D1O I1 I01 J resolvent DalphaO Ialpha")->required();
    matrix->add_option("basis", basis, "e | f")->check(CLI::IsMember({"e", "f"}));

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of I^1, Volterra and J diagnostics");
    auto* charfn = app.add_subcommand("charfn", "Neumann coefficients of W and order certificate");

    int n_lo = -10, n_hi = 10;
    auto* laplace = app.add_subcommand("laplace", "Laplace-type transform of a radial-function document");
    laplace->add_option("--in", in_path, "input document (default stdin)");
    laplace->add_option("--n-lo", n_lo, "first exponent n of |xi| = q^n");
    laplace->add_option("--n-hi", n_hi, "last exponent");

    std::string phi1;
    int m_max = 10;
    auto* invert = app.add_subcommand("laplace-invert", "recover shell values from a transform document");
    invert->add_option("--in", in_path, "transform document (default stdin)");
    invert->add_option("--phi1", phi1, "phi(1) as RE or RE,IM")->required();
    invert->add_option("--m-max", m_max, "recover phi(q^m) for |m| <= m-max");

    std::vector<std::string> tol_overrides;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--tol", tol_overrides, "override a tolerance, NAME=VALUE (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::parse_failed;
    }

    try {
        for (const auto& t : tol_overrides)
            cli::apply_tolerance_override(opt.run, t);
        if (*invert)
            (void)parse_complex(phi1);
    } catch (const cli::schema_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::parse_failed;
    }

    auto& err = std::cerr;
    if (*apply)
        return with_streams(in_path, out_path, [&](std::istream& in, std::ostream& out) {
            return cli::cmd_apply(opt, op, in, out, err, hi);
        });
    if (*matrix)
        return with_streams({}, out_path, [&](std::istream&, std::ostream& out) {
            return cli::cmd_matrix(opt, op, basis, out, err);
        });
    if (*spectrum)
        return with_streams({}, out_path,
                            [&](std::istream&, std::ostream& out) { return cli::cmd_spectrum(opt, out, err); });
    if (*charfn)
        return with_streams({}, out_path,
                            [&](std::istream&, std::ostream& out) { return cli::cmd_charfn(opt, out, err); });
    if (*laplace)
        return with_streams(in_path, out_path, [&](std::istream& in, std::ostream& out) {
            return cli::cmd_laplace(opt, in, n_lo, n_hi, out, err);
        });
    if (*invert)
        return with_streams(in_path, out_path, [&](std::istream& in, std::ostream& out) {
            return cli::cmd_laplace_invert(opt, in, parse_complex(phi1), m_max, out, err);
        });
    if (fmt->count() == 0)
        opt.format = "text";
    (void)verify;
    return with_streams({}, out_path,
                        [&](std::istream&, std::ostream& out) { return cli::cmd_verify(opt, out, err); });
}
