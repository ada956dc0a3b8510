#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pslgrow/ffield.hpp"

using namespace pslgrow;

TEST_CASE("smallest nonresidue on frozen primes") {
    CHECK(smallest_nonresidue(7) == 3);
    CHECK(smallest_nonresidue(11) == 2);
    CHECK(smallest_nonresidue(23) == 5);
}

TEST_CASE("smallest nonresidue rejects bad moduli") {
    CHECK_THROWS_AS(smallest_nonresidue(9), Error);
    CHECK_THROWS_AS(smallest_nonresidue(8), Error);
    try {
        smallest_nonresidue(15);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidModulus);
    }
}

TEST_CASE("nonresidue property over all odd primes below 200") {
    for (std::int64_t p = 3; p < 200; ++p) {
        if (!is_prime(p)) continue;
        std::int64_t eps = smallest_nonresidue(p);
        CHECK(mod_pow(eps, (p - 1) / 2, p) == p - 1);
    }
}

TEST_CASE("field constants") {
    PrimeField f(7);
    CHECK(f.epsilon() == 3);
    CHECK(f.primitive_root() == 3);
    PrimeField f23(23);
    CHECK(f23.epsilon() == 5);
    // order of the primitive root is p-1
    CHECK(f23.mult_order(f23.primitive_root()) == 22);
}

TEST_CASE("extension multiplication matches the defining relation") {
    PrimeField f(7);
    QuadExt s = f.ext(0, 1);
    CHECK(f.ext_mul(s, s) == f.ext(f.epsilon(), 0));
    QuadExt z = f.ext(4, 2);
    CHECK(f.ext_mul(f.ext_one(), z) == z);
    // (1 + s)(1 - s) = 1 - eps = -2 = 5 mod 7
    CHECK(f.ext_mul(f.ext(1, 1), f.ext(1, -1)) == f.ext(5, 0));
}

TEST_CASE("field mismatch is rejected") {
    PrimeField f7(7), f11(11);
    QuadExt a = f7.ext(1, 1);
    QuadExt b = f11.ext(1, 1);
    try {
        f7.ext_mul(a, b);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FieldMismatch);
    }
}

TEST_CASE("multiplicative orders") {
    PrimeField f(7);
    CHECK(f.mult_order(1) == 1);
    CHECK(f.mult_order(3) == 6);
    CHECK(f.mult_order(f.ext(f.p() - 1, 0)) == 2); // -1 lies in the norm-one subgroup
    try {
        f.mult_order(0);
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroElement);
    }
}

TEST_CASE("random extension elements: order divides p^2-1, norm-one iff order divides p+1") {
    std::mt19937_64 rng(12345);
    for (std::int64_t p : {7, 11, 19, 23}) {
        PrimeField f(p);
        std::uniform_int_distribution<std::int64_t> coeff(0, p - 1);
        for (int i = 0; i < 200; ++i) {
            QuadExt z = f.ext(coeff(rng), coeff(rng));
            if (z.x == 0 && z.y == 0) continue;
            std::int64_t order = f.mult_order(z);
            CHECK((p * p - 1) % order == 0);
            bool norm_one = f.norm(z) == 1;
            bool order_divides = (p + 1) % order == 0;
            CHECK(norm_one == order_divides);
        }
    }
}

TEST_CASE("extension arithmetic properties on random triples") {
    std::mt19937_64 rng(999);
    PrimeField f(23);
    std::uniform_int_distribution<std::int64_t> coeff(0, 22);
    for (int i = 0; i < 500; ++i) {
        QuadExt a = f.ext(coeff(rng), coeff(rng));
        QuadExt b = f.ext(coeff(rng), coeff(rng));
        QuadExt c = f.ext(coeff(rng), coeff(rng));
        CHECK(f.ext_mul(a, b) == f.ext_mul(b, a));
        CHECK(f.ext_mul(f.ext_mul(a, b), c) == f.ext_mul(a, f.ext_mul(b, c)));
        if (!(a.x == 0 && a.y == 0)) CHECK(f.ext_mul(a, f.ext_inv(a)) == f.ext_one());
    }
}

TEST_CASE("mod_sqrt on residues") {
    for (std::int64_t p : {7, 11, 13, 17, 23}) {
        for (std::int64_t a = 1; a < p; ++a) {
            if (mod_pow(a, (p - 1) / 2, p) != 1) continue;
            std::int64_t r = mod_sqrt(a, p);
            CHECK(r * r % p == a);
        }
    }
}
