#include <catch_amalgamated.hpp>

#include <radial/field.hpp>

#include <cmath>

using namespace radial;
using Catch::Approx;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("shell measure", "[field]")
{
    CHECK_THAT(shell_measure(FieldParams(2, 1.0), 0), WithinAbs(0.5, 1e-16));
    CHECK_THAT(shell_measure(FieldParams(3, 1.0), -1), WithinAbs(2.0 / 9.0, 1e-16));

    const FieldParams p(2, 1.0);
    double s = 0.0;
    for (int n = 0; n >= -60; --n)
        s += shell_measure(p, n);
    CHECK_THAT(s, WithinAbs(1.0, 1e-12));
}

TEST_CASE("ball power integral", "[field]")
{
    CHECK_THAT(ball_power_integral(FieldParams(2, 1.0), 0, 1.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(ball_power_integral(FieldParams(2, 1.0), 0, 2.0), WithinAbs(2.0 / 3.0, 1e-15));
    CHECK_THAT(ball_power_integral(FieldParams(5, 1.0), 1, 1.0), WithinAbs(5.0, 1e-14));

    // against a shell sum: int_{|x| <= q^n} |x|^{a-1} dx
    const FieldParams p(3, 1.0);
    double s = 0.0;
    for (int j = 2; j >= -80; --j)
        s += shell_measure(p, j) * p.pow(1.5 * j - j);
    CHECK_THAT(ball_power_integral(p, 2, 1.5), WithinRel(s, 1e-13));
}

TEST_CASE("field parameters", "[field]")
{
    CHECK_THROWS_AS(FieldParams(1, 1.0), precondition_error);
    CHECK_THROWS_AS(FieldParams(2, 0.0), precondition_error);
    CHECK_THROWS_AS(FieldParams(2, -1.0), precondition_error);
    for (int q : {2, 3, 5, 7})
        for (double a : {0.5, 1.0, 2.0}) {
            const FieldParams p(q, a);
            CHECK(p.theta() < 0.0);
            CHECK(p.c_volterra() < 0.0);
        }
    CHECK_THAT(FieldParams(2, 1.0).c_volterra() * std::log(2.0), WithinAbs(-0.5, 1e-15));
}

TEST_CASE("radial function storage", "[field]")
{
    const FieldParams p(2, 1.0);
    const RadialFunction u(p, Window{-2, 1}, {1.0, 2.0, 3.0, 4.0}, 7.0);
    CHECK(u(-5) == cd(7.0));
    CHECK(u(-2) == cd(1.0));
    CHECK(u(1) == cd(4.0));
    CHECK(u(2) == cd{});
    CHECK_THROWS_AS(RadialFunction(p, Window{0, 1}, {1.0}), precondition_error);
    CHECK_THROWS_AS(RadialFunction(p, Window{1, 0}, {}), precondition_error);
    CHECK_THROWS_AS(RadialFunction(p, Window{-1, 1}, {1.0, 1.0, 1.0}, {}, Support::ring), precondition_error);

    const auto o = u.on_O();
    CHECK(o.on_ring());
    CHECK(o.n_hi() == 0);
    CHECK(o(1) == cd{});
    CHECK(o(0) == cd(3.0));

    const auto w = u.widened(Window{-6, 3});
    CHECK(max_abs_difference(u, w) == 0.0);
    CHECK_THROWS_AS(u.widened(Window{-1, 3}), precondition_error);

    const auto d = combine(2.0, u, -1.0, w);
    CHECK(max_abs_difference(d, u) == 0.0);
}

TEST_CASE("inner products of eigenfunctions", "[field]")
{
    const FieldParams p(2, 1.0);
    // ||v_1||^2 = q^{1-N}/(q-1) = 1 at q = 2, N = 1 (direct shell sum)
    const auto v1 = make_basis(p, {BasisTag::v, 1});
    double direct = 0.0;
    for (int j = 0; j >= -200; --j)
        direct += std::norm(v1(j)) * shell_measure(p, j);
    CHECK_THAT(std::real(inner_product(v1, v1)), WithinAbs(direct, 1e-15));
    CHECK_THAT(std::real(inner_product(v1, v1)), WithinAbs(1.0, 1e-15));

    for (int q : {2, 3, 5})
        for (int N = 1; N <= 6; ++N) {
            const FieldParams pq(q, 1.0);
            const auto v = make_basis(pq, {BasisTag::v, N});
            CHECK_THAT(std::real(inner_product(v, v)), WithinRel(pq.pow(1 - N) / (q - 1.0), 1e-13));
        }
}

TEST_CASE("orthonormal systems", "[field]")
{
    for (int q : {2, 3, 7}) {
        const FieldParams p(q, 1.0);
        for (int a = 0; a < 25; ++a)
            for (int b = 0; b < 25; ++b) {
                const double want = a == b ? 1.0 : 0.0;
                const auto ea = basis_vector(p, Basis::e, a), eb = basis_vector(p, Basis::e, b);
                const auto fa = basis_vector(p, Basis::f, a), fb = basis_vector(p, Basis::f, b);
                CHECK(std::abs(inner_product(ea, eb) - want) < 1e-12);
                CHECK(std::abs(inner_product(fa, fb) - want) < 1e-12);
            }
        // e_N, N >= 1, has zero mean
        for (int N = 1; N < 10; ++N)
            CHECK(std::abs(integral_O(basis_vector(p, Basis::e, N))) < 1e-14);
    }
}

TEST_CASE("named basis elements", "[field]")
{
    const FieldParams p(2, 1.0);
    // e_1 = (q-1)^{1/2} v_1 at q = 2: -1 on |x| = 1, 1 below; the un-normalized
    // display (-sqrt2 / sqrt2) is sqrt(q) times this.
    const auto e1 = make_basis(p, {BasisTag::e, 1});
    CHECK_THAT(e1(0).real(), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(e1.inner_tail().real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(std::sqrt(2.0) * e1(0).real(), WithinAbs(-std::sqrt(2.0), 1e-15));

    const auto f0 = make_basis(p, {BasisTag::f, 0});
    CHECK_THAT(f0(0).real(), WithinAbs(std::sqrt(2.0), 1e-15));
    CHECK(f0(-1) == cd{});
    CHECK(f0.inner_tail() == cd{});

    const auto u0 = make_basis(p, {BasisTag::u0, 0});
    CHECK(u0(0) == cd(1.0));
    CHECK(u0(-1) == cd{});
    CHECK(u0.inner_tail() == cd{});
    // u_0 = (1 - 1/q)^{1/2} f_0
    CHECK(max_abs_difference(u0, std::sqrt(0.5) * f0) < 1e-15);

    CHECK_THROWS_AS(make_basis(p, {BasisTag::e, -1}), precondition_error);
    CHECK_THROWS_AS(make_basis(p, {BasisTag::monomial, 0}), precondition_error);
    CHECK_THROWS_AS(make_basis(p, {BasisTag::f, 3}, Window{-2, 0}), precondition_error);
}

TEST_CASE("monomial against f basis", "[field]")
{
    // <X_l, f_n> = (1 - 1/q)^{1/2} q^{-n/2 - n l}
    const FieldParams p(2, 1.0);
    const auto x1 = make_basis(p, {BasisTag::monomial, 1});
    const auto f2 = basis_vector(p, Basis::f, 2);
    CHECK_THAT(std::real(inner_product(x1, f2)), WithinAbs(0.0883883476, 1e-10));
    for (int l = 1; l <= 4; ++l)
        for (int n = 0; n < 8; ++n) {
            const auto xl = make_basis(p, {BasisTag::monomial, l});
            const double want = std::sqrt(0.5) * std::pow(2.0, -n / 2.0 - n * l);
            CHECK_THAT(std::real(inner_product(xl, basis_vector(p, Basis::f, n))), WithinAbs(want, 1e-14));
        }
}

TEST_CASE("expansion coordinates", "[field]")
{
    const FieldParams p(2, 1.0);
    const auto c = expand(basis_vector(p, Basis::e, 3), Basis::e, 10);
    const auto d = expand(basis_vector(p, Basis::f, 2), Basis::f, 10);
    for (int k = 0; k < 10; ++k) {
        CHECK(std::abs(c[k] - (k == 3 ? 1.0 : 0.0)) < 1e-14);
        CHECK(std::abs(d[k] - (k == 2 ? 1.0 : 0.0)) < 1e-14);
    }
}

TEST_CASE("Parseval in the eigenfunction basis", "[field]")
{
    for (int q : {2, 3, 5}) {
        const FieldParams p(q, 1.0);
        for (int n : {1, 4, 9}) {
            const auto f = basis_vector(p, Basis::f, n);
            double s = 0.0;
            for (const auto& c : expand(f, Basis::e, 60))
                s += std::norm(c);
            CHECK_THAT(s, WithinAbs(1.0, 1e-9));

            // each coordinate against a plain shell sum
            const auto coords = expand(f, Basis::e, 12);
            for (int k = 0; k < 12; ++k) {
                const auto e = basis_vector(p, Basis::e, k);
                cd direct{};
                for (int j = 0; j >= -200; --j)
                    direct += f(j) * std::conj(e(j)) * shell_measure(p, j);
                CHECK(std::abs(coords[k] - direct) < 1e-12);
            }
        }
    }
}

TEST_CASE("support checks", "[field]")
{
    const FieldParams p(2, 1.0);
    const auto v1 = field_eigenfunction(p, 1);
    CHECK_FALSE(v1.on_ring());
    CHECK_THROWS_AS(inner_product(v1, v1), precondition_error);
    CHECK_NOTHROW(inner_product(v1.on_O(), v1.on_O()));
}
