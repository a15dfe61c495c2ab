#include <catch_amalgamated.hpp>

#include <radial/density.hpp>
#include <radial/verify/oracles.hpp>

using namespace radial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("target inside the span", "[density]")
{
    const FieldParams p(2, 1.0);
    const auto x2 = make_basis(p, {BasisTag::monomial, 2}, Window{-80, 0});
    CHECK(poly_projection_residual(x2, 2) < 1e-10);
    CHECK(poly_projection_residual(x2, 5) < 1e-10);
}

TEST_CASE("single monomial against the shell-sum oracle", "[density]")
{
    for (int q : {2, 3, 5}) {
        const FieldParams p(q, 1.0);
        for (int n : {0, 1, 3}) {
            const auto f = basis_vector(p, Basis::f, n);
            const double oracle = oracle::projection_residual_L1(f);
            CHECK_THAT(poly_projection_residual(f, 1), WithinRel(oracle, 1e-12));
            CHECK_THAT(poly_projection_residual<double>(f, 1), WithinRel(oracle, 1e-12));
        }
    }
    CHECK_THAT(poly_projection_residual(basis_vector(FieldParams(2, 1.0), Basis::f, 0), 1),
               WithinAbs(0.35355339059327373, 1e-15));
}

TEST_CASE("residual decreases with the degree", "[density]")
{
    for (int q : {2, 3}) {
        const FieldParams p(q, 1.0);
        for (int n : {0, 2}) {
            const auto f = basis_vector(p, Basis::f, n);
            double prev = poly_projection_residual(f, 1);
            for (int L = 2; L <= 10; ++L) {
                const double r = poly_projection_residual(f, L);
                CHECK(r < prev);
                prev = r;
            }
        }
    }
}

TEST_CASE("double precision refuses the degree-10 Gram matrix", "[density]")
{
    const auto f0 = basis_vector(FieldParams(2, 1.0), Basis::f, 0);
    CHECK_THROWS_AS(poly_projection_residual<double>(f0, 10), ill_conditioned_error);
    const auto r = poly_projection(f0, 10);
    CHECK(r.condition_estimate > 1e20);
    CHECK(r.residual > 0.0);
    CHECK(r.residual < 1e-15);
}

TEST_CASE("projection preconditions", "[density]")
{
    const FieldParams p(2, 1.0);
    CHECK_THROWS_AS(poly_projection_residual(basis_vector(p, Basis::f, 0), 0), precondition_error);
    CHECK_THROWS_AS(poly_projection_residual(field_eigenfunction(p, 1), 1), precondition_error);
}
