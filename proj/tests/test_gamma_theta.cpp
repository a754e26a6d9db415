#include <catch2/catch_amalgamated.hpp>

#include <hardyz/bernoulli.hpp>
#include <hardyz/gamma_complex.hpp>
#include <hardyz/theta.hpp>

using namespace hardyz;

namespace {

BigReal rel_err(const BigComplex& got, const BigComplex& want) {
    return abs(got - want) / abs(want);
}

BigComplex cplx(const char* re, const char* im, mpfr_prec_t prec) {
    return {from_string(re, prec), from_string(im, prec)};
}

bool below(const BigReal& x, long exp2) { return x.is_zero() || x.exponent() <= exp2; }

} // namespace

TEST_CASE("Bernoulli numbers match the textbook table") {
    CHECK(bernoulli_exact(0) == mpq_class(1));
    CHECK(bernoulli_exact(1) == mpq_class(-1, 2));
    CHECK(bernoulli_exact(2) == mpq_class(1, 6));
    CHECK(bernoulli_exact(3) == 0);
    CHECK(bernoulli_exact(4) == mpq_class(-1, 30));
    CHECK(bernoulli_exact(6) == mpq_class(1, 42));
    CHECK(bernoulli_exact(8) == mpq_class(-1, 30));
    CHECK(bernoulli_exact(10) == mpq_class(5, 66));
    CHECK(bernoulli_exact(12) == mpq_class(-691, 2730));
    CHECK(bernoulli_exact(119) == 0);
    CHECK_THROWS_AS(bernoulli_exact(121), std::domain_error);
}

TEST_CASE("bernoulli_over_factorial agrees with the zeta identity on both routes") {
    // |B_{2l}|/(2l)! = 2 zeta(2l) / (2pi)^{2l}; the exact-rational route below the
    // cap and the zeta route above it must describe the same sequence.
    for (unsigned long two_l : {2UL, 40UL, 80UL, 120UL}) {
        BigReal exact = bernoulli_over_factorial(two_l, 256);
        BigReal viaz = mul_2si(BigReal::zeta_ui(two_l, 300) /
                                   pow_ui(mul_2si(BigReal::pi(300), 1), two_l),
                               1);
        CHECK(below(abs(abs(exact) - viaz), abs(exact).exponent() - 250));
        CHECK(exact.sgn() == (((two_l / 2) % 2 == 0) ? -1 : 1));
    }
    // Beyond the cap the magnitude must track 2/(2pi)^{2l} to within zeta(2l)-1.
    BigReal big = bernoulli_over_factorial(200, 128);
    BigReal asymp = pow_ui(mul_2si(BigReal::pi(200), 1), 200);
    CHECK(below(abs(abs(big) * asymp - 2), -120));
    CHECK_THROWS_AS(bernoulli_over_factorial(7, 64), std::domain_error);
}

TEST_CASE("log_gamma matches frozen references") {
    // Reference values computed with mpmath at 50 significant digits.
    const mpfr_prec_t p = 256;
    BigComplex z1(BigReal::pow2(-2, p), BigReal::of(5000, p));
    BigComplex want1 = cplx("-7855.1919937388199827695386868469578695613037092852",
                            "37585.573260082821743667471770928848546170537612748", p);
    CHECK(below(rel_err(log_gamma(z1, p), want1), -160));

    BigComplex z2(BigReal::pow2(-2, p), BigReal::of(50, p));
    BigComplex want2 = cplx("-78.598880432701842503979689597378643885826023045439",
                            "145.20865952425722833265449668140162645093126035247", p);
    CHECK(below(rel_err(log_gamma(z2, p), want2), -160));

    CHECK_THROWS_AS(log_gamma(BigComplex::of(-1, 3, p), p), std::domain_error);
}

TEST_CASE("log_gamma recurrence consistency at low height") {
    // log Gamma(z+1) - log Gamma(z) = log z, exercised on the shifted path.
    const mpfr_prec_t p = 192;
    BigComplex z(BigReal::pow2(-2, p), BigReal::of(3, p));
    BigComplex z1 = z + BigComplex::of(1, 0, p);
    CHECK(below(abs(log_gamma(z1, p) - log_gamma(z, p) - log(z)), -150));
}

TEST_CASE("polygamma matches frozen references") {
    // Reference values computed with mpmath at 50 significant digits.
    const mpfr_prec_t p = 256;
    BigComplex z1(BigReal::pow2(-2, p), BigReal::of(5000, p));
    CHECK(below(rel_err(polygamma(0, z1, p),
                        cplx("8.5171931909995707592589003601017008559083941513603",
                             "1.5708463267950216192328841916874076948036630713722", p)),
                -160));
    CHECK(below(rel_err(polygamma(1, z1, p),
                        cplx("-1.0000000075000001562500066718754869141167706140469e-8",
                             "-2.0000000016666666725000000461309530424107294076371e-4", p)),
                -160));
    CHECK(below(rel_err(polygamma(40, z1, p),
                        cplx("-2.2427723855889205339832407354952931900666387390951e-102",
                             "4.4855513612036116849475275150416330184183743003162e-105", p)),
                -160));

    BigComplex z2(BigReal::pow2(-2, p), BigReal::of(500, p));
    CHECK(below(rel_err(polygamma(5, z2, p),
                        cplx("-1.9200100800756008454733689969726456044001728432906e-15",
                             "-7.6800096000156800372001257305812660362199145170164e-13", p)),
                -160));

    BigComplex z3(BigReal::pow2(-2, p), BigReal::of(50, p));
    CHECK(below(rel_err(polygamma(0, z3, p),
                        cplx("3.9120188386885588806258986195095630969175972936462",
                             "1.5757964518105263875638699677154129920166109921229", p)),
                -160));
}

TEST_CASE("polygamma reflection sanity: digamma recurrence") {
    // psi(z+1) = psi(z) + 1/z on the shifted path.
    const mpfr_prec_t p = 192;
    BigComplex z(BigReal::pow2(-2, p), BigReal::of(7, p));
    BigComplex lhs = polygamma(0, z + BigComplex::of(1, 0, p), p);
    BigComplex rhs = polygamma(0, z, p) + inv(z);
    CHECK(below(abs(lhs - rhs), -150));
}

TEST_CASE("polygamma derivative ladder: psi' consistency by finite differences") {
    // Central difference of psi^{(m)} reproduces psi^{(m+1)} to stencil order.
    const mpfr_prec_t p = 320;
    BigComplex z(BigReal::pow2(-2, p), BigReal::of(40, p));
    BigReal h = BigReal::pow2(-30, p);
    for (unsigned long m : {0UL, 3UL}) {
        BigComplex up = polygamma(m, z + BigComplex(h, BigReal(p)), p);
        BigComplex dn = polygamma(m, z - BigComplex(h, BigReal(p)), p);
        BigComplex fd = (up - dn) / mul_2si(h, 1);
        CHECK(below(rel_err(fd, polygamma(m + 1, z, p)), -55));
    }
}

namespace {
PrecisionContext ctx_bits(long bits) { return PrecisionContext(bits, 64, bits - 64); }
} // namespace

TEST_CASE("theta matches frozen references") {
    // Reference values computed with mpmath at 60 significant digits.
    const PrecisionContext ctx = ctx_bits(256);
    struct Row {
        double t;
        const char* want;
    };
    const Row rows[] = {
        {1e4, "31861.9238308358208729503350141635549879340635481713497514825"},
        {1e2, "87.9721652317872196254831291137486908685665197067060087271732"},
        {1e3, "2034.54642803803160870334515120759876682932507590941351318015"},
        {500.0, "843.790100588189229515403376011320563288648188971220829840959"},
    };
    for (const Row& r : rows) {
        BigReal got = theta(BigReal::of(r.t, 256), ctx);
        BigReal want = from_string(r.want, 256);
        CHECK(below(abs(got - want) / abs(want), -180));
    }
    BigReal two_pi = mul_2si(BigReal::pi(256), 1);
    CHECK(below(abs(theta(two_pi, ctx) -
                    from_string("-3.53097106659853804573280146449440730316757544459762917642702",
                                256)),
                -180));
    CHECK_THROWS_AS(theta(BigReal::of(-3, 64), ctx), precision_error);
}

TEST_CASE("theta_asymptotic approximates theta to the documented order") {
    // theta - theta_asymp = 1/(48 t) + O(t^-3).
    const PrecisionContext ctx = ctx_bits(256);
    BigReal want =
        from_string("31861.9238287524875384017238992081978155475303900227035042674", 256);
    BigReal got = theta_asymptotic(BigReal::of(1e4, 256), 256);
    CHECK(below(abs(got - want) / want, -180));
    BigReal gap = theta(BigReal::of(1e4, 256), ctx) - got;
    BigReal lead = BigReal::of(1, 256) / BigReal::of(48 * 1e4, 256);
    CHECK(abs(gap - lead) < abs(gap) / 1000000);
}

TEST_CASE("theta_jet derivatives match frozen references") {
    const PrecisionContext ctx = ctx_bits(256);
    ThetaJet jet = theta_jet(BigReal::of(1e4, 256), 2, ctx);
    BigReal tp =
        from_string("3.68623165257508529255773650437432107213054966922248693667309", 256);
    BigReal tpp =
        from_string("5.00000000416666668125000011532738260602682351909285044770638e-5", 256);
    CHECK(below(abs(jet[1] - tp) / tp, -180));
    CHECK(below(abs(jet[2] - tpp) / tpp, -180));
    CHECK(jet[0] == theta(BigReal::of(1e4, 256), ctx));

    ThetaJet j100 = theta_jet(BigReal::of(1e2, 256), 1, ctx);
    BigReal tp100 =
        from_string("1.38364447641957935324123563407825219263515124036545136148963", 256);
    CHECK(below(abs(j100[1] - tp100) / tp100, -180));

    CHECK_THROWS_AS(theta_jet(BigReal::of(1e2, 256), 213, ctx), precision_error);
    CHECK_THROWS_AS(theta_jet(BigReal::of(1e2, 256), -1, ctx), precision_error);
}

TEST_CASE("theta_jet agrees with central finite differences") {
    // 7-point stencils with one Richardson pass; h = t * 1e-5 keeps the
    // truncation error near 1e-19 relative, so 1e-15 is a roomy gate.
    const PrecisionContext ctx = ctx_bits(360);
    const double ts[] = {100.0, 1000.0};
    for (double td : ts) {
        BigReal t = BigReal::of(td, 360);
        ThetaJet jet = theta_jet(t, 6, ctx);
        BigReal h = BigReal::of(td * 1e-5, 360);
        auto th = [&](int mult, const BigReal& step) {
            return theta(t + step * mult, ctx);
        };
        auto stencil = [&](int nu, const BigReal& step) {
            BigReal s2 = step * step;
            switch (nu) {
                case 1: return (th(1, step) - th(-1, step)) / (step * 2);
                case 2:
                    return (th(1, step) - th(0, step) * 2 + th(-1, step)) / s2;
                case 3:
                    return (th(2, step) - th(1, step) * 2 + th(-1, step) * 2 - th(-2, step)) /
                           (s2 * step * 2);
                case 4:
                    return (th(2, step) - th(1, step) * 4 + th(0, step) * 6 - th(-1, step) * 4 +
                            th(-2, step)) /
                           (s2 * s2);
                case 5:
                    return (th(3, step) - th(2, step) * 4 + th(1, step) * 5 - th(-1, step) * 5 +
                            th(-2, step) * 4 - th(-3, step)) /
                           (s2 * s2 * step * 2);
                default:
                    return (th(3, step) - th(2, step) * 6 + th(1, step) * 15 - th(0, step) * 20 +
                            th(-1, step) * 15 - th(-2, step) * 6 + th(-3, step)) /
                           (s2 * s2 * s2);
            }
        };
        for (int nu = 1; nu <= 6; ++nu) {
            BigReal coarse = stencil(nu, h);
            BigReal fine = stencil(nu, mul_2si(h, -1));
            BigReal richardson = (fine * 4 - coarse) / 3;
            CHECK(below(abs(richardson - jet[nu]) / abs(jet[nu]), -49));
        }
    }
}

TEST_CASE("theta_deriv_bound dominates the measured jet") {
    const PrecisionContext ctx = ctx_bits(192);
    for (double td : {100.0, 1000.0, 10000.0}) {
        BigReal t = BigReal::of(td, 192);
        ThetaJet jet = theta_jet(t, 12, ctx);
        for (int nu = 2; nu <= 12; ++nu) {
            BigReal bound = theta_deriv_bound(t, nu, 192);
            CHECK(abs(jet[nu]) <= bound);
        }
    }
    CHECK_THROWS_AS(theta_deriv_bound(BigReal::of(100, 64), 1, 64), precision_error);
}
