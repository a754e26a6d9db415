#include <catch2/catch_amalgamated.hpp>

#include <hardyz/big_complex.hpp>
#include <hardyz/big_real.hpp>
#include <hardyz/precision.hpp>

using namespace hardyz;

TEST_CASE("context_for pins working precision for the flagship operating points") {
    // Frozen from the sizing model: 64 head bits + k*log2(1+theta') growth
    // + log2 t phase bits + k*log2(k+2) jet overhead + 64 guard bits.
    CHECK(context_for(1e4, 0).working_bits == 142);
    CHECK(context_for(1e4, 117).working_bits == 1210);
    CHECK(context_for(1e2, 4).working_bits == 152);
}

TEST_CASE("context_for default target caps at 96 absolute bits") {
    CHECK(context_for(1e4, 0).target_abs_error_exponent == 78);
    CHECK(context_for(1e4, 117).target_abs_error_exponent == 96);
    CHECK(context_for(1e2, 4).target_abs_error_exponent == 88);
}

TEST_CASE("context_for honors an explicit target override") {
    PrecisionContext ctx = context_for(1e2, 4, 256);
    CHECK(ctx.target_abs_error_exponent == 256);
    CHECK(ctx.working_bits == 320);

    PrecisionContext small = context_for(1e4, 117, 40);
    CHECK(small.target_abs_error_exponent == 40);
    CHECK(small.working_bits == 1210);
}

TEST_CASE("context invariants are enforced") {
    CHECK_THROWS_AS(context_for(9.0, 0), precision_error);
    CHECK_THROWS_AS(context_for(1e2, -1), precision_error);
    CHECK_THROWS_AS(context_for(1e2, 213), precision_error);
    CHECK_THROWS_AS(context_for(1e4, 849), precision_error);
    CHECK_NOTHROW(context_for(1e4, 848));
    CHECK_THROWS_AS(PrecisionContext(128, 64, 100), precision_error);
    CHECK_THROWS_AS(PrecisionContext(32, 16, 8), precision_error);
}

TEST_CASE("context working bits grow monotonically in the derivative order") {
    long prev = context_for(1e4, 0).working_bits;
    for (int k = 1; k <= 20; ++k) {
        long cur = context_for(1e4, k).working_bits;
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("escalation doubles working precision and deepens the target") {
    PrecisionContext ctx = context_for(1e4, 4);
    PrecisionContext up = ctx.escalated();
    CHECK(up.working_bits == 2 * ctx.working_bits);
    CHECK(up.target_abs_error_exponent == ctx.target_abs_error_exponent + 64);
    CHECK(up.guard_bits == ctx.guard_bits);
}

TEST_CASE("BigReal arithmetic adopts the widest operand precision") {
    BigReal a = BigReal::of(1, 128);
    BigReal b = BigReal::of(3, 256);
    CHECK((a / b).prec() == 256);
    CHECK((a + b).prec() == 256);
    CHECK((b * a).prec() == 256);

    BigReal third = a / b;
    BigReal err = abs(third * 3 - 1);
    CHECK((err.is_zero() || err.exponent() <= -250));
}

TEST_CASE("BigReal exact helpers") {
    CHECK(BigReal::factorial(20, 128) == BigReal::of(2432902008176640000L, 128));
    CHECK(BigReal::binomial(10, 5, 64) == 252L);
    CHECK(BigReal::pow2(-3, 64) == BigReal::of(0.125, 64));
    CHECK(mul_2si(BigReal::of(3, 64), 4) == 48L);

    BigReal z2 = BigReal::zeta_ui(2, 256);
    BigReal pi2_6 = BigReal::pi(256) * BigReal::pi(256) / 6;
    CHECK(abs(z2 - pi2_6).exponent() <= -252);

    CHECK(BigReal::of(mpq_class(1, 3), 256) == BigReal::of(1, 256) / 3);
    CHECK(BigReal::of(mpz_class("123456789012345678901234567890"), 128).sgn() == 1);
}

TEST_CASE("BigReal floor/ceil extraction and exponent") {
    BigReal x = BigReal::of(39.9, 64);
    CHECK(x.floor_long() == 39);
    CHECK(x.ceil_long() == 40);
    CHECK((-x).floor_long() == -40);
    CHECK(BigReal::of(1024, 64).exponent() == 11);
    CHECK_THROWS_AS(pow_ui(BigReal::of(2, 64), 80).floor_long(), std::domain_error);
}

TEST_CASE("BigReal serialization round-trips exactly at matched precision") {
    for (mpfr_prec_t p : {64L, 142L, 333L, 1210L}) {
        BigReal x = sqrt(BigReal::of(2, p));
        CHECK(from_string(to_string(x), p) == x);

        BigReal y = -BigReal::pi(p) * BigReal::pow2(-900, p);
        CHECK(from_string(to_string(y), p) == y);
    }
    CHECK(from_string(to_string(BigReal(64)), 64).is_zero());
    CHECK(serialization_digits(256) == 80);
    CHECK_THROWS_AS(from_string("not-a-number", 64), std::domain_error);
}

TEST_CASE("CompensatedSum recovers a term the naive sum drops") {
    CompensatedSum s(64);
    s.add(BigReal::of(1, 64));
    s.add(BigReal::pow2(-100, 64));
    s.add(BigReal::of(-1, 64));
    CHECK(s.value() == BigReal::pow2(-100, 64));
}

TEST_CASE("BigComplex field operations") {
    BigComplex a = BigComplex::of(3, 4, 256);
    BigComplex b = BigComplex::of(-2, 7, 256);
    CHECK(abs(a) == 5L);
    CHECK(((a * b) / b - a).re.exponent() <= -250);
    CHECK(((a * b) / b - a).im.exponent() <= -250);
    CHECK((a * conj(a)).im.is_zero());
    CHECK((a * conj(a)).re == 25L);
}

TEST_CASE("mul_i_pow is an exact quarter rotation") {
    BigComplex z = BigComplex::of(3, 4, 64);
    BigComplex i = BigComplex::i_unit(64);
    BigComplex w = z;
    for (long k = 0; k <= 8; ++k) {
        BigComplex r = mul_i_pow(z, k);
        CHECK(r.re == w.re);
        CHECK(r.im == w.im);
        w = w * i;
    }
    BigComplex m = mul_i_pow(z, -1);
    CHECK(m.re == BigReal::of(4, 64));
    CHECK(m.im == BigReal::of(-3, 64));
}

TEST_CASE("complex exp and log invert each other") {
    BigComplex z(BigReal::of(0.5, 256), BigReal::of(0.25, 256));
    BigComplex back = log(exp(z));
    CHECK(abs(back - z).exponent() <= -250);

    BigComplex ipi(BigReal(256), BigReal::pi(256));
    CHECK(abs(exp(ipi) + BigComplex::of(1, 0, 256)).exponent() <= -252);
}

TEST_CASE("real base to complex power matches modulus identity") {
    BigComplex s(BigReal::of(0.5, 256), BigReal::of(3, 256));
    BigComplex p = pow(BigReal::of(2, 256), s);
    CHECK(abs(abs(p) - sqrt(BigReal::of(2, 256))).exponent() <= -250);
    CHECK_THROWS_AS(pow(BigReal::of(-1, 64), s), std::domain_error);
}

TEST_CASE("BigComplex serialization round-trips") {
    BigComplex z(sqrt(BigReal::of(5, 200)), -BigReal::pi(200));
    BigComplex r = complex_from_string(to_string(z), 200);
    CHECK(r.re == z.re);
    CHECK(r.im == z.im);
    CHECK_THROWS_AS(complex_from_string("3 + 4i", 64), std::domain_error);
}
