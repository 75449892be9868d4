#include <doctest.h>

#include <random>

#include "amice/ring.hpp"

using namespace amice;

TEST_CASE("make_scalar reduces to the canonical residue") {
    PadicScalar a = make_scalar(3, 3, 29);
    CHECK(a.residue() == 2); // 29 = 27 + 2
    CHECK(a.eff() == 3);

    CHECK(make_scalar(2, 4, -1).residue() == 15);

    PadicScalar c = make_scalar(5, 2, 25);
    CHECK(c.residue() == 0);
    PValuation v = c.valuation();
    CHECK(v.lower_bound);
    CHECK(v.v == 2);
}

TEST_CASE("make_scalar rejects bad moduli") {
    CHECK_THROWS_AS(make_scalar(4, 2, 1), domain_error);
    CHECK_THROWS_AS(make_scalar(1, 2, 1), domain_error);
    CHECK_THROWS_AS(make_scalar(3, 0, 1), domain_error);
    CHECK_THROWS_AS(make_scalar(2, 80, 1), domain_error); // residue limit
}

TEST_CASE("unit_inverse") {
    CHECK(make_scalar(2, 4, 3).unit_inverse().residue() == 11); // 3*11 = 33 = 1 mod 16
    CHECK(make_scalar(3, 3, 2).unit_inverse().residue() == 14); // 2*14 = 28 = 1 mod 27
    CHECK_THROWS_AS(make_scalar(3, 3, 3).unit_inverse(), domain_error);
}

TEST_CASE("valuation") {
    PValuation v = make_scalar(3, 4, 18).valuation();
    CHECK(!v.lower_bound);
    CHECK(v.v == 2);

    CHECK(make_scalar(2, 4, 7).valuation().v == 0);

    PValuation z = make_scalar(5, 2, 0).valuation();
    CHECK(z.lower_bound);
    CHECK(z.v == 2);
}

TEST_CASE("frobenius on ring elements") {
    RingSpec plain = RingSpec::plain(7, 2);
    RingElement x = RingElement::from_int(plain, 7);
    CHECK(x.frobenius().congruent(x));

    RingSpec q2 = RingSpec::polyq(2, 4, 8);
    RingElement f = RingElement::one(q2) + RingElement::q_power(q2, 1);
    RingElement fs = f.frobenius();
    CHECK(fs.qc(0).residue() == 1);
    CHECK(fs.qc(1).residue() == 0);
    CHECK(fs.qc(2).residue() == 1); // q -> q^2

    RingSpec q3 = RingSpec::polyq(3, 4, 8);
    CHECK(RingElement::q_power(q3, 3).frobenius().is_zero()); // q^9 past the bound
}

TEST_CASE("scalar laws on random values") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> val(-100000, 100000);
    const std::uint32_t primes[] = {2, 3, 5};
    for (int it = 0; it < 1000; ++it) {
        std::uint32_t p = primes[it % 3];
        int M = 1 + it % 6;
        long long na = val(rng), nb = val(rng);
        PadicScalar a = make_scalar(p, M, na);
        PadicScalar b = make_scalar(p, M, nb);

        // round-trip idempotence
        CHECK(make_scalar(p, M, static_cast<long long>(a.residue())).residue() == a.residue());

        // (a b) b^-1 = a for units b
        if (nb % p != 0) CHECK(((a * b) * b.unit_inverse()).congruent(a));

        // valuation additivity below the effective precision
        PValuation va = a.valuation(), vb = b.valuation();
        if (!va.lower_bound && !vb.lower_bound && va.v + vb.v < M) {
            PValuation vab = (a * b).valuation();
            CHECK(!vab.lower_bound);
            CHECK(vab.v == va.v + vb.v);
        }
    }
}

TEST_CASE("sigma is a ring homomorphism") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> val(-500, 500);
    RingSpec ring = RingSpec::polyq(3, 3, 7);
    for (int it = 0; it < 1000; ++it) {
        RingElement a(ring), b(ring);
        for (int j = 0; j <= ring.qbound; ++j) {
            a.qc(j) = PadicScalar::from_int(3, 3, val(rng));
            b.qc(j) = PadicScalar::from_int(3, 3, val(rng));
        }
        CHECK((a + b).frobenius().congruent(a.frobenius() + b.frobenius()));
        CHECK((a * b).frobenius().congruent(a.frobenius() * b.frobenius()));
    }
}

TEST_CASE("multiplication can gain effective digits from valuation") {
    // p * p at capacity 3: both factors known mod p^3, product known mod p^3
    // even though naive min-eff would cap lower after division.
    PadicScalar a = make_scalar(3, 3, 3);
    PadicScalar b = make_scalar(3, 3, 6);
    PadicScalar ab = a * b;
    CHECK(ab.residue() == 18);
    CHECK(ab.eff() == 3);
    // after peeling one p the digits are still consistent
    CHECK(ab.div_pow_p(2).residue() == 2);
}

TEST_CASE("offset scalar representation") {
    OffsetScalar s = OffsetScalar::from_scalar(make_scalar(3, 4, 18)).normalized();
    CHECK(s.voff == 2);
    CHECK(s.unit.residue() == 2);

    OffsetScalar inv_p{-1, make_scalar(3, 4, 1)};
    OffsetScalar prod = s * inv_p;
    CHECK(prod.voff == 1);
    CHECK(prod.unit.residue() == 2);
}
