#pragma once

#include <cmath>
#include <cstdlib>

#include "bernoulli.hpp"
#include "big_complex.hpp"
#include "precision.hpp"

namespace hardyz {

namespace detail {

/// Shift distance that puts the Stirling tail's turning point deep enough for
/// `relbits` of relative accuracy when expanding around z + N (order m jets
/// push the turning point out, hence the linear m term).
inline double stirling_shift_radius(long relbits, unsigned long m) {
    return 0.157 * static_cast<double>(relbits + 16) + 0.8 * static_cast<double>(m) + 8.0;
}

inline long shift_count(const BigComplex& z, double radius) {
    long n = 0;
    for (;;) {
        const double re = z.re.to_double() + static_cast<double>(n);
        const double im = z.im.to_double();
        const double r = std::hypot(re, im);
        if (r >= radius) return n;
        n += std::max(1L, static_cast<long>(radius - r));
    }
}

} // namespace detail

/// Principal-branch log Gamma for Re z > 0: upward recurrence into the
/// Stirling regime, then the asymptotic series.  Accurate to roughly
/// 2^-(prec-32) relative.
inline BigComplex log_gamma(const BigComplex& z, mpfr_prec_t prec) {
    if (z.re.sgn() <= 0)
        throw std::domain_error("log_gamma: require Re z > 0");
    const long relbits = static_cast<long>(prec) - 32;
    const BigReal eps = BigReal::pow2(-relbits, prec);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double radius =
            detail::stirling_shift_radius(relbits, 0) * static_cast<double>(1L << attempt);
        const long nshift = detail::shift_count(z, radius);
        BigComplex w(BigReal::of(z.re, prec) + BigReal::of(nshift, prec),
                     BigReal::of(z.im, prec));
        BigComplex logw = log(w);
        BigComplex half(BigReal::of(1, prec) / 2);
        BigComplex acc = (w - half) * logw - w;
        acc.re += (log(mul_2si(BigReal::pi(prec), 1))) / 2;

        BigComplex winv = inv(w);
        BigComplex winv2 = winv * winv;
        BigComplex wpow = winv;
        bool converged = false;
        BigReal prev_mag(prec);
        for (unsigned long j = 1; j <= 400; ++j) {
            // B_{2j} / ((2j)(2j-1)) = [B_{2j}/(2j)!] * (2j-2)!
            BigReal coef =
                bernoulli_over_factorial(2 * j, prec) * BigReal::factorial(2 * j - 2, prec);
            BigComplex term = coef * wpow;
            acc += term;
            BigReal mag = abs(term);
            if (mag <= abs(acc) * eps) {
                converged = true;
                break;
            }
            if (j > 4 && mag > prev_mag) break;
            prev_mag = std::move(mag);
            wpow = wpow * winv2;
        }
        if (!converged) continue;
        for (long n = 0; n < nshift; ++n) {
            BigComplex zn(BigReal::of(z.re, prec) + BigReal::of(n, prec),
                          BigReal::of(z.im, prec));
            acc -= log(zn);
        }
        return acc;
    }
    throw precision_error("log_gamma: Stirling tail did not converge");
}

/// psi^{(m)}(z) for Re z > 0.  m = 0 is the digamma Stirling series; m >= 1
/// goes through psi^{(m)}(z) = (-1)^{m+1} m! zeta(m+1, z) with the Hurwitz
/// zeta evaluated by Euler-Maclaurin around a shifted base point.
inline BigComplex polygamma(unsigned long m, const BigComplex& z, mpfr_prec_t prec) {
    if (z.re.sgn() <= 0)
        throw std::domain_error("polygamma: require Re z > 0");
    const long relbits = static_cast<long>(prec) - 32;
    const BigReal eps = BigReal::pow2(-relbits, prec);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double radius =
            detail::stirling_shift_radius(relbits, m) * static_cast<double>(1L << attempt);
        const long nshift = detail::shift_count(z, radius);
        BigComplex w(BigReal::of(z.re, prec) + BigReal::of(nshift, prec),
                     BigReal::of(z.im, prec));
        BigComplex winv = inv(w);
        BigComplex winv2 = winv * winv;
        bool converged = false;
        BigReal prev_mag(prec);
        BigComplex acc(prec);

        if (m == 0) {
            acc = log(w) - BigComplex(mul_2si(winv.re, -1), mul_2si(winv.im, -1));
            BigComplex wpow = winv2;
            for (unsigned long j = 1; j <= 400; ++j) {
                // B_{2j} / (2j) = [B_{2j}/(2j)!] * (2j-1)!
                BigReal coef = bernoulli_over_factorial(2 * j, prec) *
                               BigReal::factorial(2 * j - 1, prec);
                BigComplex term = -(coef * wpow);
                acc += term;
                BigReal mag = abs(term);
                if (mag <= abs(acc) * eps) {
                    converged = true;
                    break;
                }
                if (j > 4 && mag > prev_mag) break;
                prev_mag = std::move(mag);
                wpow = wpow * winv2;
            }
            if (!converged) continue;
            for (long n = 0; n < nshift; ++n) {
                BigComplex zn(BigReal::of(z.re, prec) + BigReal::of(n, prec),
                              BigReal::of(z.im, prec));
                acc -= inv(zn);
            }
            return acc;
        }

        // zeta(s, w) for integer s = m+1 >= 2.
        const unsigned long s = m + 1;
        BigComplex ws = pow_ui(winv, s);             // w^{-s}
        BigComplex tail = (ws * w) / static_cast<long>(s - 1)   // w^{1-s}/(s-1)
                          + BigComplex(mul_2si(ws.re, -1), mul_2si(ws.im, -1));
        acc = tail;
        BigReal poch = BigReal::of(static_cast<long>(s), prec); // (s)_1
        BigComplex wpow = ws * winv;                 // w^{-s-1}
        for (unsigned long j = 1; j <= 400; ++j) {
            BigComplex term = (bernoulli_over_factorial(2 * j, prec) * poch) * wpow;
            acc += term;
            BigReal mag = abs(term);
            if (mag <= abs(acc) * eps) {
                converged = true;
                break;
            }
            if (j > 4 && mag > prev_mag) break;
            prev_mag = std::move(mag);
            poch = poch * BigReal::of(static_cast<long>(s + 2 * j - 1), prec) *
                   BigReal::of(static_cast<long>(s + 2 * j), prec);
            wpow = wpow * winv2;
        }
        if (!converged) continue;
        for (long n = 0; n < nshift; ++n) {
            BigComplex zn(BigReal::of(z.re, prec) + BigReal::of(n, prec),
                          BigReal::of(z.im, prec));
            acc += pow_ui(inv(zn), s);
        }
        BigReal mfact = BigReal::factorial(m, prec);
        BigComplex out = mfact * acc;
        if (m % 2 == 0) out = -out;                  // (-1)^{m+1}
        return out;
    }
    throw precision_error("polygamma: Euler-Maclaurin tail did not converge");
}

} // namespace hardyz
