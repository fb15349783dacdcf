#include <doctest.h>

#include <random>

#include "lefschetz/linalg.hpp"

using namespace lefschetz;

namespace {

HomologyClass random_class(std::mt19937_64& rng, int g)
{
    std::uniform_int_distribution<Int> coeff(-4, 4);
    HomologyClass v = zero_class(g);
    for (auto& c : v.c)
        c = coeff(rng);
    return v;
}

}  // namespace

TEST_CASE("pairing follows the basis convention")
{
    const int g = 3;
    CHECK(pairing(basis_x(g, 1), basis_y(g, 1)) == 1);
    CHECK(pairing(basis_x(g, 1), basis_x(g, 2)) == 0);
    CHECK(pairing(basis_y(g, 1), basis_x(g, 1)) == -1);
    CHECK(pairing(basis_x(g, 2), basis_y(g, 3)) == 0);
}

TEST_CASE("pairing is bilinear and antisymmetric")
{
    const int g = 3;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        HomologyClass a = random_class(rng, g);
        HomologyClass b = random_class(rng, g);
        HomologyClass c = random_class(rng, g);
        CHECK(pairing(a, b) == -pairing(b, a));
        CHECK(pairing(a + b, c) == pairing(a, c) + pairing(b, c));
    }
}

TEST_CASE("pairing rejects mismatched dimensions")
{
    CHECK_THROWS_AS(pairing(basis_x(2, 1), basis_x(3, 1)), usage_error);
}

TEST_CASE("transvection matches v + <v,c>c")
{
    const int g = 3;
    // x_1 applied to y_1 gives y_1 - x_1
    HomologyClass out = transvection(basis_x(g, 1)) * basis_y(g, 1);
    CHECK(out == basis_y(g, 1) - basis_x(g, 1));
    // a twist fixes its own curve
    HomologyClass c = basis_x(g, 2) + basis_y(g, 3);
    CHECK(transvection(c) * c == c);
}

TEST_CASE("transvection is sign-blind, symplectic, and preserves the pairing")
{
    const int g = 3;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        HomologyClass c = random_class(rng, g);
        IntMat t = transvection(c);
        CHECK(t == transvection(-c));
        CHECK(is_symplectic(t, g));
        HomologyClass v = random_class(rng, g);
        HomologyClass w = random_class(rng, g);
        CHECK(pairing(t * v, t * w) == pairing(v, w));
        HomologyClass p = v;
        apply_transvection_power(p, c, 1);
        CHECK(p == t * v);
    }
}

TEST_CASE("transvection powers have the closed form")
{
    const int g = 2;
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        HomologyClass c = random_class(rng, g);
        HomologyClass v = random_class(rng, g);
        HomologyClass by_power = v;
        apply_transvection_power(by_power, c, 5);
        HomologyClass by_steps = v;
        for (int i = 0; i < 5; ++i)
            by_steps = transvection(c) * by_steps;
        CHECK(by_power == by_steps);
    }
}

TEST_CASE("symplectic inverse")
{
    const int g = 3;
    IntMat t = transvection(basis_x(g, 1) + basis_y(g, 2));
    IntMat inv = symplectic_inverse(t, g);
    CHECK((t * inv).is_identity());
    CHECK((inv * t).is_identity());
}

TEST_CASE("right_multiply_transvection accumulates products")
{
    const int g = 3;
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Int> coeff(-1, 1);
    IntMat p = IntMat::identity(2 * g);
    IntMat q = IntMat::identity(2 * g);
    for (int i = 0; i < 12; ++i) {
        HomologyClass c = zero_class(g);
        for (auto& v : c.c)
            v = coeff(rng);
        right_multiply_transvection(p, c);
        q = q * transvection(c);
    }
    CHECK(p == q);
}

TEST_CASE("primitivity and zero tests")
{
    const int g = 2;
    CHECK(basis_x(g, 1).is_primitive());
    CHECK_FALSE((2 * basis_x(g, 1)).is_primitive());
    CHECK(zero_class(g).is_zero());
    CHECK_FALSE(zero_class(g).is_primitive());
}

TEST_CASE("checked arithmetic raises on overflow")
{
    Int big = std::numeric_limits<Int>::max();
    CHECK_THROWS_AS(checked_add(big, 1), error);
    CHECK_THROWS_AS(checked_mul(big, 2), error);
    CHECK(checked_add(2, 3) == 5);
}
