#include <catch_amalgamated.hpp>

#include <radial/moments.hpp>
#include <radial/operators.hpp>
#include <radial/verify/oracles.hpp>

#include <cmath>
#include <random>

using namespace radial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

RadialFunction random_on_O(const FieldParams& p, int lo, std::mt19937_64& g, cd tail = {})
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return RadialFunction::sample(p, Window{lo, 0}, [&](int) { return cd(d(g), d(g)); }, tail, Support::ring);
}

// c * sum_{|y| < |x|} (log|x| - log|y|) u(|y|) dy, shell by shell.
cd i01_direct(const RadialFunction& u, int n, int terms = 400)
{
    const auto& p = u.params();
    cd s{};
    for (int j = n - 1; j >= n - terms; --j)
        s += double(n - j) * p.log_q() * u(j) * shell_measure(p, j);
    return p.c_volterra() * s;
}

double max_rel(const RadialFunction& a, const RadialFunction& b)
{
    return max_abs_difference(a, b) / std::max(max_abs(b), 1e-300);
}

} // namespace

TEST_CASE("D^alpha eigenfunctions on K", "[operators]")
{
    const FieldParams p(2, 1.0);
    const auto v1 = field_eigenfunction(p, 1);
    CHECK(max_rel(apply_D_alpha(v1, Window{-6, 6}), 2.0 * v1) <= 1e-12);

    for (int q : {2, 3, 5, 7})
        for (double a : {0.5, 1.0, 1.5, 2.0})
            for (int N : {-2, 0, 1, 4, 8}) {
                const FieldParams pq(q, a);
                const auto v = field_eigenfunction(pq, N);
                const auto dv = apply_D_alpha(v, Window{-N - 3, std::max(3, -N + 4)});
                CHECK(max_rel(dv, pq.pow(a * N) * v) <= 1e-11);
            }
}

TEST_CASE("D^alpha annihilates constants", "[operators]")
{
    for (double a : {0.5, 1.0, 2.0}) {
        const FieldParams p(2, a);
        // 1 up to |x| = 2^80; the cut contributes ~2^{-80 a}
        const auto one = RadialFunction::sample(p, Window{-10, 80}, [](int) { return cd(1.0); }, 1.0);
        const auto d = apply_D_alpha(one, Window{-10, 10});
        for (int n = -12; n <= 5; ++n)
            CHECK(std::abs(d(n)) < 1e-12);
    }
}

TEST_CASE("D^alpha against the three-term formula", "[operators]")
{
    std::mt19937_64 g(7);
    for (int q : {2, 3, 5})
        for (double a : {0.5, 1.0, 2.0}) {
            const FieldParams p(q, a);
            std::uniform_real_distribution<double> d(-1.0, 1.0);
            const auto u = RadialFunction::sample(p, Window{-6, 3}, [&](int) { return cd(d(g), d(g)); },
                                                  cd(d(g), d(g)));
            const auto du = apply_D_alpha(u, Window{-6, 3});
            for (int n = -6; n <= 3; ++n)
                CHECK(std::abs(du(n) - oracle::d_alpha_direct(u, n)) <= 1e-11 * std::max(1.0, std::abs(du(n))));
        }

    // f_0 extended by zero, value at |x| = 1
    const FieldParams p(2, 1.0);
    const auto f0 = basis_vector(p, Basis::f, 0);
    const auto d = apply_D_alpha(f0, Window{0, 0});
    CHECK(std::abs(d(0) - oracle::d_alpha_direct(f0, 0)) < 1e-13);
}

TEST_CASE("D^alpha_O spectrum", "[operators]")
{
    const FieldParams p(2, 1.0);
    const auto v0 = make_basis(p, {BasisTag::v, 0});
    CHECK(max_abs_difference(apply_D_alpha_O(v0), (2.0 / 3.0) * v0) < 1e-14);

    const auto e3 = basis_vector(p, Basis::e, 3);
    CHECK(max_abs_difference(apply_D_alpha_O(e3), 8.0 * e3) < 1e-11);

    const auto zero = RadialFunction::zero(p, Window{-3, 0}, Support::ring);
    CHECK(max_abs(apply_D_alpha_O(zero)) == 0.0);

    for (int q : {3, 5})
        for (double a : {0.5, 2.0}) {
            const FieldParams pq(q, a);
            const double mu0 = (q - 1.0) * pq.pow(a) / (pq.pow(a + 1.0) - 1.0);
            const auto w0 = make_basis(pq, {BasisTag::v, 0});
            CHECK(max_abs_difference(apply_D_alpha_O(w0), mu0 * w0) < 1e-13);
            for (int N = 1; N <= 6; ++N) {
                const auto e = basis_vector(pq, Basis::e, N);
                CHECK(max_rel(apply_D_alpha_O(e), pq.pow(a * N) * e) < 1e-11);
            }
        }
}

TEST_CASE("I^1 on the e basis", "[operators]")
{
    const FieldParams p(2, 1.0);
    CHECK(max_abs(apply_I_alpha(basis_vector(p, Basis::e, 0))) < 1e-13);

    // I^1 e_N = q^{-N} e_N - (q-1)^{1/2} q^{-(N+1)/2} e_0 (orthonormal e_N)
    for (int q : {2, 3, 5})
        for (int N = 1; N <= 8; ++N) {
            const FieldParams pq(q, 1.0);
            const auto e = basis_vector(pq, Basis::e, N);
            const auto want = combine(pq.pow(-N), e, -std::sqrt(q - 1.0) * pq.pow(-(N + 1) / 2.0),
                                      basis_vector(pq, Basis::e, 0));
            CHECK(max_abs_difference(apply_I_alpha(e), want) < 1e-13);
        }

    // the same identity for the un-normalized display e_1' = sqrt(q) e_1:
    // I^1 e_1' = (1/2) e_1' - (1/sqrt 2) e_0 at q = 2
    const auto e1 = std::sqrt(2.0) * basis_vector(p, Basis::e, 1);
    const auto want = combine(0.5, e1, -1.0 / std::sqrt(2.0), basis_vector(p, Basis::e, 0));
    CHECK(max_abs_difference(apply_I_alpha(e1), want) < 1e-13);
}

TEST_CASE("right inverse on K", "[operators]")
{
    for (int q : {2, 3})
        for (double a : {0.5, 1.0, 2.0}) {
            const FieldParams p(q, a);
            const int top = right_inverse_height(p);
            for (const auto& u : {basis_vector(p, Basis::f, 3), basis_vector(p, Basis::e, 4),
                                  basis_vector(p, Basis::f, 0)}) {
                const int lo = u.n_lo() - 60;
                const auto iu = apply_I_alpha(u.widened(Window{lo, 0}), Window{lo, top});
                const auto back = apply_D_alpha(iu, Window{lo, 0});
                for (int j = u.n_lo() - 1; j <= 0; ++j)
                    CHECK(std::abs(back(j) - u(j)) < 1e-10);
            }
        }
}

TEST_CASE("restricting I^alpha u to O before D^alpha_O loses the outer part", "[operators]")
{
    // D_O (I_O u) = u - (D^alpha [I^alpha u restricted to |x| > 1])|_O.
    // The correction is nonzero, so the composition on O alone is not the identity.
    const FieldParams p(3, 0.5);
    const auto u = basis_vector(p, Basis::f, 3);
    const int top = right_inverse_height(p);
    const auto iu = apply_I_alpha(u, Window{u.n_lo(), top});
    const auto outer = RadialFunction::sample(p, Window{u.n_lo(), top}, [&](int j) { return j > 0 ? iu(j) : cd{}; });
    const auto correction = apply_D_alpha(outer, Window{u.n_lo(), 0}).on_O();
    const auto literal = apply_D_alpha_O(apply_I_alpha(u));
    CHECK(max_abs_difference(literal + correction, u) < 1e-10);
    CHECK(max_abs(correction) > 1e-3);
}

TEST_CASE("I_0^1 closed forms", "[operators]")
{
    const FieldParams p(2, 1.0);
    const auto one = make_basis(p, {BasisTag::v, 0});
    const auto img = apply_I01(one);
    for (int j = -30; j <= 0; ++j) {
        CHECK_THAT(img(j).real(), WithinRel(-0.5 * std::pow(2.0, j), 1e-13));
        CHECK(std::abs(img(j) - i01_direct(one, j)) < 1e-14);
    }

    const auto u0 = make_basis(p, {BasisTag::u0, 0});
    CHECK(max_abs(apply_I01(u0)) < 1e-15);

    // (I_0^1 f_1)(1) = (1 - 1/q)^{3/2} q^{-1/2} (0 - 1) = -0.25 at q = 2
    const auto f1img = apply_I01(basis_vector(p, Basis::f, 1));
    CHECK_THAT(f1img(0).real(), WithinAbs(-0.25, 1e-15));
    // and the f-coordinate <I_0^1 f_1, f_0> = -0.25 * sqrt2 * 1/2
    CHECK_THAT(std::real(inner_product(f1img, basis_vector(p, Basis::f, 0))), WithinAbs(-0.25 / std::sqrt(2.0), 1e-15));
}

TEST_CASE("I_0^1 scaling law on monomials", "[operators]")
{
    for (int q : {2, 3, 5}) {
        const FieldParams p(q, 1.0);
        for (int m = 0; m <= 10; ++m) {
            const auto xm = m == 0 ? make_basis(p, {BasisTag::v, 0})
                                   : make_basis(p, {BasisTag::monomial, m}, Window{-90, 0});
            const auto img = apply_I01(xm, 90);
            const double k = p.c_volterra() * d_constant(p, m);
            for (int j = -20; j <= 0; ++j) {
                const double want = k * p.pow(double(j) * (m + 1));
                CHECK(std::abs(img(j) - want) <= 1e-12 * std::abs(want));
            }
        }
    }
}

TEST_CASE("I_0^1 against direct summation", "[operators]")
{
    std::mt19937_64 g(11);
    for (int q : {2, 3, 7}) {
        const FieldParams p(q, 1.0);
        const auto u = random_on_O(p, -8, g, cd(0.3, -0.2));
        const auto img = apply_I01(u, 40);
        for (int n = -40; n <= 0; ++n)
            CHECK(std::abs(img(n) - i01_direct(u, n)) < 1e-13);
    }
}

TEST_CASE("resolvent of D^1_O", "[operators]")
{
    const FieldParams p(2, 1.0);
    const auto e2 = basis_vector(p, Basis::e, 2);
    CHECK(max_abs_difference(apply_resolvent_D1O(e2), 0.25 * e2) < 1e-11);
    const auto v0 = make_basis(p, {BasisTag::v, 0});
    CHECK(max_abs_difference(apply_resolvent_D1O(v0), 1.5 * v0) < 1e-14);

    std::mt19937_64 g(3);
    for (int q : {2, 3, 5}) {
        const FieldParams pq(q, 1.0);
        const auto u = random_on_O(pq, -10, g, cd(0.5, 0.1));
        CHECK(max_abs_difference(apply_resolvent_D1O(apply_D_alpha_O(u)), u) < 1e-11);
        // D^1_O on shells down to n_lo has norm ~ q^{-n_lo}; rounding in R u is amplified by that
        CHECK(max_abs_difference(apply_D_alpha_O(apply_resolvent_D1O(u)), u) < 1e-14 * pq.pow(-u.n_lo()));
    }
    CHECK_THROWS_AS(apply_resolvent_D1O(basis_vector(FieldParams(2, 0.5), Basis::e, 1)), precondition_error);
}

TEST_CASE("I^1 is the resolvent minus its value at the origin", "[operators]")
{
    std::mt19937_64 g(5);
    for (int q : {2, 3, 5}) {
        const FieldParams p(q, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            const auto u = random_on_O(p, -12, g);
            const auto rhs = combine(1.0, apply_resolvent_D1O(u), -resolvent_value_at_origin(u),
                                     make_basis(p, {BasisTag::v, 0}));
            CHECK(max_abs_difference(apply_I_alpha(u), rhs) < 1e-12);
        }
    }
}

TEST_CASE("J has the rank-2 closed form", "[operators]")
{
    const FieldParams p(2, 1.0);
    const auto u0 = make_basis(p, {BasisTag::u0, 0});
    const auto ju = imaginary_part(u0);
    const cd k = -1.0 / (cd(0.0, 8.0) * std::log(2.0));
    for (int j = -60; j <= 0; ++j)
        CHECK(std::abs(ju(j) - k * (j * std::log(2.0))) < 1e-14);

    // (1/i)(I_0^1 - (I_0^1)^*) = 2J, tested on pairs of random functions
    std::mt19937_64 g(9);
    const auto u = random_on_O(p, -6, g), v = random_on_O(p, -6, g);
    const cd lhs = (inner_product(apply_I01(u, 120), v) - inner_product(u, apply_I01(v, 120))) / cd(0.0, 1.0);
    const cd rhs = 2.0 * inner_product(imaginary_part(u, 120), v);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("operator matrices", "[operators]")
{
    for (int q : {2, 3}) {
        const FieldParams p(q, 1.0);
        const auto m = operator_matrix(p, OperatorName::I1, Basis::e, 6).entries;
        for (int j = 0; j < 6; ++j)
            for (int n = 0; n < 6; ++n) {
                cd want{};
                if (j == n && n >= 1)
                    want = p.pow(-n);
                if (j == 0 && n >= 1)
                    want = -std::sqrt(q - 1.0) * p.pow(-(n + 1) / 2.0);
                CHECK(std::abs(m(j, n) - want) < 1e-13);
            }

        // <I_0^1 f_n, f_j> = (1-1/q)^2 q^{-(n+j)/2} (j - n) for n > j, else 0
        const auto v = operator_matrix(p, OperatorName::I01, Basis::f, 6).entries;
        const double w = 1.0 - 1.0 / q;
        for (int j = 0; j < 6; ++j)
            for (int n = 0; n < 6; ++n) {
                const double want = n > j ? w * w * p.pow(-(n + j) / 2.0) * (j - n) : 0.0;
                CHECK(std::abs(v(j, n) - want) < 1e-14);
            }

        const auto d = operator_matrix(p, OperatorName::D1O, Basis::e, 8).entries;
        for (int n = 1; n < 8; ++n)
            CHECK_THAT(d(n, n).real(), WithinRel(p.pow(n), 1e-12));
    }

    // alpha is rebound for the alpha = 1 operators
    const auto a = operator_matrix(FieldParams(2, 0.5), OperatorName::I1, Basis::e, 4);
    CHECK(a.params.alpha() == 1.0);
    CHECK_THROWS_AS(operator_matrix(FieldParams(2, 1.0), OperatorName::I1, Basis::e, 0), precondition_error);
}

TEST_CASE("operator names", "[operators]")
{
    for (auto op : {OperatorName::D1O, OperatorName::I1, OperatorName::I01, OperatorName::J, OperatorName::resolvent,
                    OperatorName::DalphaO, OperatorName::Ialpha})
        CHECK(parse_operator_name(to_string(op)) == op);
    CHECK_FALSE(parse_operator_name("nope").has_value());
}

TEST_CASE("O-supported operators reject functions on K", "[operators]")
{
    const auto v = field_eigenfunction(FieldParams(2, 1.0), 1);
    CHECK_THROWS_AS(apply_I01(v), precondition_error);
    CHECK_THROWS_AS(apply_I_alpha(v), precondition_error);
    CHECK_THROWS_AS(apply_D_alpha_O(v), precondition_error);
    CHECK_THROWS_AS(imaginary_part(v), precondition_error);
    CHECK_THROWS_AS(apply_D_alpha(v, Window{1, 2}), precondition_error);
}

TEST_CASE("moments against series", "[moments]")
{
    const FieldParams p(2, 1.0);
    CHECK_THAT(d_constant(p, 0), WithinAbs(std::log(2.0), 1e-14));
    CHECK_THAT(d_constant(p, 1), WithinAbs(2.0 * std::log(2.0) / 9.0, 1e-14));
    CHECK_THAT(d_constant(p, 1), WithinAbs(0.1540327068, 1e-10));
    for (int q : {2, 3, 5, 11}) {
        const FieldParams pq(q, 1.0);
        CHECK_THAT(moment_m0(pq, 0), WithinAbs(1.0, 1e-15));
        CHECK_THAT(d_constant(pq, 0), WithinRel(pq.log_q() / (q - 1.0), 1e-14));
        for (int n = 0; n <= 20; ++n) {
            CHECK(std::abs(d_constant(pq, n) - oracle::d_series(pq, n)) < 1e-12);
            CHECK(std::abs(moment_a(pq, n) - oracle::a_series(pq, n)) < 1e-12);
            CHECK(std::abs(moment_b(pq, n) - oracle::b_series(pq, n)) < 1e-12);
            CHECK(std::abs(moment_m0(pq, n) - oracle::m0_series(pq, n)) < 1e-12);
        }
        const MomentTable t(pq, 15);
        for (int n = 0; n < 15; ++n) {
            CHECK(t.d[n] > 0.0);
            CHECK(t.a[n] < 0.0);
            CHECK(t.b[n] > 0.0);
            if (n >= 1)
                CHECK(t.d[n] / t.d[n - 1] <= 1.0 / q);
        }
    }
    CHECK_THROWS_AS(d_constant(p, -1), precondition_error);
}
