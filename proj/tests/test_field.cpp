#include <doctest.h>

#include "fqgeom/field.hpp"
#include "oracles.hpp"

using namespace fqgeom;

namespace {
const std::uint32_t kSmallPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                      47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
}

TEST_CASE("prime field construction validates the modulus") {
    CHECK_NOTHROW(PrimeField(3));
    CHECK_NOTHROW(PrimeField(2147483647)); // 2^31 - 1
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(91), std::invalid_argument); // 7 * 13
}

TEST_CASE("arithmetic canonicalizes") {
    PrimeField f5(5), f7(7);
    CHECK((f5.element(3) + f5.element(4)).value() == 2);
    CHECK((f5.element(2) * f5.element(3)).value() == 1);
    CHECK((-f7.element(0)).value() == 0);
    CHECK((f5.element(1) - f5.element(3)).value() == 3);
    CHECK(f5.element(-7).value() == 3);
    CHECK_THROWS_AS(f5.element(1) + f7.element(1), std::invalid_argument);
}

TEST_CASE("inverses") {
    PrimeField f5(5), f7(7);
    CHECK(f5.element(2).inverse().value() == 3);
    CHECK(f5.element(4).inverse().value() == 4);
    CHECK(f7.element(3).inverse().value() == oracle::ext_euclid_inverse(3, 7));
    CHECK_THROWS_AS(f5.zero().inverse(), std::domain_error);

    for (std::uint32_t p : kSmallPrimes) {
        PrimeField f(p);
        for (std::uint32_t a = 1; a < p; ++a) {
            CHECK(f.element(a).inverse().value() == oracle::ext_euclid_inverse(a, p));
            CHECK((f.element(a) * f.element(a).inverse()) == f.one());
        }
    }
}

TEST_CASE("legendre symbol matches exhaustive squaring") {
    PrimeField f5(5), f7(7);
    CHECK(legendre(f5.one()) == 1);
    CHECK(legendre(f5.zero()) == 0);
    CHECK(legendre(f7.element(3)) == -1);

    for (std::uint32_t p : kSmallPrimes) {
        PrimeField f(p);
        const auto squares = oracle::squares_table(p);
        int square_count = 0;
        int sum = 0;
        for (std::uint32_t a = 0; a < p; ++a) {
            const int sym = legendre(f.element(a));
            if (a == 0) {
                CHECK(sym == 0);
            } else {
                CHECK(sym == (squares[a] ? 1 : -1));
                if (sym == 1) ++square_count;
                sum += sym;
            }
        }
        CHECK(square_count == static_cast<int>((p - 1) / 2));
        CHECK(sum == 0);
    }
}

TEST_CASE("legendre is multiplicative") {
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        PrimeField f(p);
        for (std::uint32_t a = 1; a < p; ++a) {
            CHECK(legendre(f.element(a)) * legendre(f.element(a).inverse()) == 1);
            for (std::uint32_t b = 1; b < p; ++b)
                CHECK(legendre(f.element(a) * f.element(b)) ==
                      legendre(f.element(a)) * legendre(f.element(b)));
        }
    }
}

TEST_CASE("additive character values and homomorphism") {
    PrimeField f5(5);
    CHECK(additive_char(f5.zero()).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(additive_char(f5.zero()).imag() == doctest::Approx(0.0).epsilon(1e-12));

    // exp(2 pi i / 5)
    CHECK(additive_char(f5.one()).real() == doctest::Approx(0.309017).epsilon(1e-6));
    CHECK(additive_char(f5.one()).imag() == doctest::Approx(0.951057).epsilon(1e-6));

    std::complex<double> total{0.0, 0.0};
    for (std::uint32_t a = 0; a < 5; ++a) total += additive_char(f5.element(a));
    CHECK(std::abs(total) <= 1e-12);

    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        PrimeField f(p);
        for (std::uint32_t a = 0; a < p; ++a) {
            CHECK(std::abs(std::abs(additive_char(f.element(a))) - 1.0) <= 1e-12);
            for (std::uint32_t b = 0; b < p; ++b) {
                const auto lhs = additive_char(f.element(a)) * additive_char(f.element(b));
                const auto rhs = additive_char(f.element(a) + f.element(b));
                CHECK(std::abs(lhs - rhs) <= 1e-12);
            }
        }
    }
}
