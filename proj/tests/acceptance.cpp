#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <hardyz/hardyz.hpp>

using namespace hardyz;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& detail) {
    std::printf("CRITERION %d: %s -- %s\n", n, ok ? "pass" : "fail",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string g(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", x);
    return b;
}

double now_minus(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct LeakRow {
    BigReal leak;
    BigReal base; // |value| + theta'^k
    long target;
};

} // namespace

int main() {
    std::vector<LeakRow> leak_rows;

    // ---- criterion 1: |R_k(1e4)| <= 0.05 theta'(1e4)^k for k = 1..117,
    //      single-threaded, within 15 minutes
    std::vector<ResidualRecord> flagship;
    {
        const auto t0 = std::chrono::steady_clock::now();
        const PrecisionContext ctx = context_for(1e4, 117);
        ZWorkspace ws(BigReal::of(10000, ctx.working_bits), 117, ctx);
        const mpfr_prec_t wp = ctx.working_bits;
        BigReal worst = BigReal::of(0, wp);
        bool clean = true;
        for (int k = 1; k <= 117; ++k) {
            flagship.push_back(residual_record(ws, k));
            const ResidualRecord& rec = flagship.back();
            if (!rec.error.empty() || rec.normalized.is_nan()) clean = false;
            worst = max(worst, rec.normalized);
            leak_rows.push_back(
                {rec.imag_leak,
                 abs(rec.reference) +
                     pow_ui(rec.theta_prime, static_cast<unsigned long>(k)),
                 ctx.target_abs_error_exponent});
        }
        const double wall = now_minus(t0);
        const bool ok =
            clean && worst <= BigReal::of(0.05, wp) && wall <= 900.0;
        line(1, ok,
             "max |R_k|/theta'^k = " + g(worst.to_double()) +
                 " vs 0.05 over k=1..117 at t=10000; wall " + g(wall) +
                 " s vs 900 s");
    }

    // ---- criterion 2: exact Stirling row sums and q_p against enumeration
    {
        long mismatches = 0;
        const std::vector<mpq_class> ys = {mpq_class(1), mpq_class(2),
                                           mpq_class(7, 2)};
        for (unsigned k = 0; k <= 30; ++k)
            for (const mpq_class& y : ys) {
                mpq_class lhs(0);
                mpq_class yp(1);
                for (unsigned l = 0; l <= k; ++l) {
                    const mpz_class mag = abs(StirlingCache::s1(k, l));
                    lhs += mpq_class(mag) * yp;
                    yp *= y;
                }
                mpq_class rhs(1);
                for (unsigned i = 0; i < k; ++i) rhs *= y + i;
                if (lhs != rhs) ++mismatches;
            }

        const PrecisionContext ctx = context_for(100.0, 12);
        const mpfr_prec_t wp = ctx.working_bits;
        const ThetaJet jet = theta_jet(BigReal::of(100, wp), 12, ctx);
        const BellTable table(jet, 12);
        const BigReal tiny = BigReal::pow2(-ctx.target_abs_error_exponent, wp);
        const double tol =
            std::pow(2.0, -static_cast<double>(ctx.target_abs_error_exponent - 8));
        double worst = 0.0;
        for (int k = 2; k <= 12; ++k) {
            const std::vector<BigComplex> qa = table.qp_coefficients(k);
            const std::vector<BigComplex> qb = qp_coefficients_enumeration(k, jet);
            for (std::size_t p = 0; p < qb.size(); ++p)
                worst = std::max(
                    worst, (abs(qa[p] - qb[p]) / (abs(qb[p]) + tiny)).to_double());
        }
        const bool ok = mismatches == 0 && worst <= tol;
        line(2, ok,
             "stirling row sums: " + std::to_string(mismatches) +
                 " mismatches over 93 identities; q_p recursion vs enumeration "
                 "worst rel " +
                 g(worst) + " vs " + g(tol));
    }

    // ---- criterion 3: reference derivatives against Richardson-extrapolated
    //      finite differences of the reference Z, k = 1..4, within a minute
    {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (double td : {500.0, 1000.0}) {
            const PrecisionContext ctx = context_for(td, 4);
            const mpfr_prec_t wp = ctx.working_bits;
            const BigReal t = BigReal::of(td, wp);
            ZWorkspace ws(t, 4, ctx);
            for (int k = 0; k <= 4; ++k) {
                const ZValue v = ws.reference(k);
                leak_rows.push_back(
                    {v.imag_leak,
                     abs(v.value) +
                         pow_ui(ws.jet()[1], static_cast<unsigned long>(k)),
                     ctx.target_abs_error_exponent});
            }

            const BigReal h = BigReal::of(1e-3, wp);
            std::vector<BigReal> zj;
            for (int j = -4; j <= 4; ++j) {
                const ZValue v = z_deriv_reference(t + j * h, 0, ctx);
                zj.push_back(v.value);
                leak_rows.push_back({v.imag_leak,
                                     abs(v.value) + BigReal::of(1, wp),
                                     ctx.target_abs_error_exponent});
            }
            auto zv = [&](int i, int mult) -> const BigReal& {
                return zj[static_cast<std::size_t>(4 + i * mult)];
            };
            auto stencil = [&](int k, int mult) -> BigReal {
                const BigReal s = mult * h;
                const BigReal s2 = s * s;
                switch (k) {
                case 1:
                    return (zv(1, mult) - zv(-1, mult)) / mul_2si(s, 1);
                case 2:
                    return (zv(1, mult) - mul_2si(zv(0, mult), 1) + zv(-1, mult)) /
                           s2;
                case 3:
                    return (zv(2, mult) - mul_2si(zv(1, mult), 1) +
                            mul_2si(zv(-1, mult), 1) - zv(-2, mult)) /
                           (mul_2si(s2, 1) * s);
                default:
                    return (zv(2, mult) - 4 * zv(1, mult) + 6 * zv(0, mult) -
                            4 * zv(-1, mult) + zv(-2, mult)) /
                           (s2 * s2);
                }
            };
            for (int k = 1; k <= 4; ++k) {
                const BigReal rich =
                    (mul_2si(stencil(k, 1), 2) - stencil(k, 2)) / 3;
                const BigReal want = ws.reference(k).value;
                worst =
                    std::max(worst, (abs(rich - want) / abs(want)).to_double());
            }
        }
        const double wall = now_minus(t0);
        const bool ok = worst <= 1e-5 && wall <= 60.0;
        line(3, ok,
             "derivatives k=1..4 at t in {500,1000} vs Richardson differences, "
             "worst rel " +
                 g(worst) + " vs 1e-05; wall " + g(wall) + " s vs 60 s");
    }

    // ---- criterion 4: imaginary leak budget on every record from 1 and 3
    {
        bool ok = true;
        double worst = 0.0;
        for (const LeakRow& row : leak_rows) {
            const BigReal budget = mul_2si(row.base, 16 - row.target);
            if (!(row.leak <= budget)) ok = false;
            worst = std::max(worst, (row.leak / budget).to_double());
        }
        line(4, ok,
             "imag leak within 2^-(target-16) budget on " +
                 std::to_string(leak_rows.size()) + " records, worst ratio " +
                 g(worst));
    }

    // ---- criterion 5: theta derivative bounds on jets
    {
        bool ok = true;
        double worst = 0.0;
        for (double td : {1e2, 1e3, 1e4}) {
            const PrecisionContext ctx = context_for(td, 40);
            const mpfr_prec_t wp = ctx.working_bits;
            const ThetaJet jet = theta_jet(BigReal::of(td, wp), 40, ctx);
            for (int nu = 2; nu <= 40; ++nu) {
                const unsigned long un = static_cast<unsigned long>(nu);
                const BigReal bound =
                    BigReal::factorial(un - 2, wp) /
                        mul_2si(pow_ui(jet.t, un - 1), 1) +
                    mul_2si(BigReal::factorial(un, wp) /
                                (sqrt(BigReal::of(nu, wp)) * pow_ui(jet.t, un)),
                            1);
                const double ratio = (abs(jet[nu]) / bound).to_double();
                if (!(ratio <= 1.0)) ok = false;
                worst = std::max(worst, ratio);
            }
        }
        line(5, ok,
             "|theta^(nu)| vs (nu-2)!/(2t^(nu-1)) + 2 nu!/(sqrt(nu) t^nu), "
             "nu=2..40, t in {1e2,1e3,1e4}, worst ratio " +
                 g(worst));
    }

    // ---- criterion 6: Euler-Maclaurin self-consistency and the independent
    //      zeta configuration
    {
        bool ok = true;
        double worst = 0.0;
        for (double td : {1e3, 1e4}) {
            const PrecisionContext ctx = context_for(td, 40);
            const mpfr_prec_t wp = ctx.working_bits;
            const BigReal t = BigReal::of(td, wp);
            const ThetaJet jet = theta_jet(t, 1, ctx);
            PhiPowerCache cache(t, wp);
            for (int p : {0, 3, 10, 40}) {
                const EtaParams prm(t, jet[1], p, ctx);
                const EtaValue base = eta_reference(prm, cache);
                const EtaValue fine = eta_reference(prm, cache, EmOverride{2, 10});
                const BigReal diff = abs(base.value - fine.value);
                if (!(diff <= mul_2si(base.envelope, 1))) ok = false;
                worst = std::max(worst, (diff / base.envelope).to_double());
            }
        }

        const PrecisionContext ctx(256, 64, 120);
        const BigReal t = BigReal::of(1000, 256);
        PhiPowerCache cache(t, 256);
        const EtaParams prm(t, BigReal::of(1, 256), 0, ctx);
        const EtaValue a = eta_reference(prm, cache);
        const EtaValue b = eta_reference(prm, cache, EmOverride{3, 7});
        const double rel = (abs(a.value - b.value) / abs(a.value)).to_double();
        if (!(rel <= 1e-20)) ok = false;
        line(6, ok,
             "refinement doubling within 2x error estimate, worst ratio " +
                 g(worst) + " vs 2; independent eta_0 configurations rel " +
                 g(rel) + " vs 1e-20 at 256 bits");
    }

    // ---- criterion 7: ratio regressions at their promoted thresholds
    {
        bool ok = true;
        const PrecisionContext ctx = context_for(1e4, 16);
        const mpfr_prec_t wp = ctx.working_bits;
        const ThetaJet jet = theta_jet(BigReal::of(10000, wp), 1, ctx);
        const BigReal c = exp(BigReal::of(0.5, wp));
        PhiPowerCache cache(jet.t, wp);
        double worst_conj = 0.0;
        for (int p : {4, 8, 16}) {
            const ConjugateShortSum r = conjugate_short_sum_check(
                EtaParams(jet.t, jet[1], p, ctx), jet[0], c, cache);
            worst_conj = std::max(worst_conj, r.normalized.to_double());
        }
        if (!(worst_conj <= 100.0)) ok = false;

        const PrecisionContext ctx7 = context_for(1e4, 4);
        const mpfr_prec_t wp7 = ctx7.working_bits;
        const BigReal t7 = BigReal::of(10000, wp7);
        const ThetaJet jet7 = theta_jet(t7, 1, ctx7);
        PhiPowerCache cache7(t7, wp7);
        const EtaParams prm7(t7, jet7[1], 2, ctx7);
        const EtaValue ref7 = eta_reference(prm7, cache7);
        double prev = 0.0;
        double worst_growth = 0.0;
        for (long n_cut : {100000L, 400000L, 1600000L}) {
            const EtaValue trunc = eta_truncated_afe(prm7, cache7, n_cut);
            const double ratio =
                (abs(trunc.value - ref7.value) / trunc.envelope).to_double();
            if (prev > 0.0) worst_growth = std::max(worst_growth, ratio / prev);
            prev = ratio;
        }
        if (!(worst_growth <= 2.0)) ok = false;

        double worst_env = 0.0;
        for (const ResidualRecord& rec : flagship)
            if (rec.k >= 4 && rec.k <= 40)
                worst_env = std::max(worst_env, rec.envelope_ratio.to_double());
        if (!(worst_env <= 10.0)) ok = false;

        double prev_norm = 0.0;
        double worst_trend = 0.0;
        for (double td : {1e3, 4e3, 1e4}) {
            const PrecisionContext c5 = context_for(td, 5);
            ZWorkspace w5(BigReal::of(td, c5.working_bits), 5, c5);
            const double norm = residual_record(w5, 5).normalized.to_double();
            if (prev_norm > 0.0)
                worst_trend = std::max(worst_trend, norm / prev_norm);
            prev_norm = norm;
        }
        if (!(worst_trend <= 2.0)) ok = false;

        line(7, ok,
             "conjugate short sums worst " + g(worst_conj) +
                 " vs 100; truncation growth " + g(worst_growth) +
                 " vs 2; envelope ratio k=4..40 worst " + g(worst_env) +
                 " vs 10; k=5 trend growth " + g(worst_trend) + " vs 2");
    }

    // ---- criterion 8: incomplete gamma series against quadrature
    {
        bool ok = true;
        double worst = 0.0;
        const mpfr_prec_t wp = 256;
        for (unsigned m = 0; m <= 8; ++m)
            for (double xd : {0.5, 1.0, 3.0, 10.0}) {
                const BigReal x = BigReal::of(xd, wp);
                const BigReal series = lower_incomplete_gamma(m + 1, x, wp);
                const BigReal quad = detail::romberg_gamma(m, x, wp);
                const double rel = (abs(series - quad) / series).to_double();
                if (!(rel <= 1e-15)) ok = false;
                worst = std::max(worst, rel);
            }
        line(8, ok,
             "gamma series vs Romberg quadrature, m=0..8, x in "
             "{0.5,1,3,10}, worst rel " +
                 g(worst) + " vs 1e-15");
    }

    return failures == 0 ? 0 : 1;
}
