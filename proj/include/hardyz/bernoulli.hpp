#pragma once

#include <gmpxx.h>

#include <mutex>
#include <stdexcept>
#include <vector>

#include "big_real.hpp"

namespace hardyz {

/// Exact Bernoulli number B_n (B_1 = -1/2 convention) from the defining
/// recurrence sum_{j<=n} C(n+1,j) B_j = 0.  Cached; thread-safe.  Indices are
/// capped where the Euler-Maclaurin machinery stops using exact rationals.
inline mpq_class bernoulli_exact(unsigned long n) {
    constexpr unsigned long cap = 120;
    if (n > cap) throw std::domain_error("bernoulli_exact: index above exact-table cap");
    static std::vector<mpq_class> cache{mpq_class(1), mpq_class(-1, 2)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        const unsigned long m = static_cast<unsigned long>(cache.size());
        if (m % 2 == 1) {
            cache.emplace_back(0);
            continue;
        }
        mpq_class acc(0);
        mpz_class binom;
        for (unsigned long j = 0; j < m; ++j) {
            if (cache[j] == 0) continue;
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
            acc += mpq_class(binom) * cache[j];
        }
        acc /= -static_cast<long>(m + 1);
        cache.push_back(acc);
    }
    return cache[n];
}

/// B_{2l}/(2l)! at the requested precision, with a single rounding.  Below the
/// exact cap this divides the exact rational; above it the identity
/// B_{2l} = (-1)^{l+1} 2 (2l)! zeta(2l) / (2pi)^{2l} supplies the value without
/// ever forming the huge factorial quotient.
inline BigReal bernoulli_over_factorial(unsigned long two_l, mpfr_prec_t prec) {
    if (two_l == 0) return BigReal::of(1, prec);
    if (two_l % 2 != 0)
        throw std::domain_error("bernoulli_over_factorial: index must be even");
    if (two_l <= 120) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), two_l);
        return BigReal::of(bernoulli_exact(two_l) / mpq_class(f), prec);
    }
    const mpfr_prec_t wp = prec + 32;
    BigReal mag = mul_2si(
        BigReal::zeta_ui(two_l, wp) / pow_ui(mul_2si(BigReal::pi(wp), 1), two_l), 1);
    BigReal out(prec);
    const bool l_even = (two_l / 2) % 2 == 0;
    mpfr_set(out.raw(), mag.raw(), MPFR_RNDN);
    if (l_even) mpfr_neg(out.raw(), out.raw(), MPFR_RNDN);
    return out;
}

} // namespace hardyz
