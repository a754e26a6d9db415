#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "combinatorics.hpp"
#include "theta.hpp"

namespace hardyz {

enum class EtaMethod { euler_maclaurin, truncated_afe, short_afe };

/// Evaluation request for eta_p(d, s) = sum_n n^{-s} (d - log n)^p at
/// s = 1/2 + i t (analytically continued; the defining series diverges).
struct EtaParams {
    BigReal t;
    BigReal d;
    int p = 0;
    PrecisionContext ctx;

    EtaParams(BigReal t_, BigReal d_, int p_, PrecisionContext ctx_)
        : t(std::move(t_)), d(std::move(d_)), p(p_), ctx(ctx_) {
        if (t.sgn() <= 0) throw precision_error("EtaParams: require t > 0");
        if (p < 0 || p > theta_jet_order_cap(t.to_double()))
            throw precision_error("EtaParams: p outside [0, 10 (log t)^2]");
    }
};

struct EtaValue {
    BigComplex value;
    BigReal envelope;      // bound on the method error of `value`
    long m_cutoff = 0;     // summation cutoff actually used
    int correction_order = 0; // Euler-Maclaurin depth (0 for plain truncations)
    EtaMethod method = EtaMethod::euler_maclaurin;
    bool extrapolated = false; // envelope shape extends outside its proven range
};

/// Knobs for stress-testing eta_reference: start from a larger cutoff and/or
/// run extra correction terms past the stopping criterion.
struct EmOverride {
    long m_scale = 1;
    int k_extra = 0;
};

/// Shared per-height table of log n and n^{-s}.  Entries are memoized up to
/// `store_limit` and computed on the fly beyond it.  Growth is not
/// thread-safe: fill from one thread, then share read-only.
class PhiPowerCache {
public:
    PhiPowerCache(const BigReal& t, mpfr_prec_t prec, long store_limit = 1L << 17)
        : prec_(prec),
          limit_(store_limit),
          s_(BigReal::pow2(-1, prec), BigReal::of(t, prec)) {
        ln_.emplace_back(prec_);  // unused n = 0 slot
        pw_.emplace_back(prec_);
    }

    mpfr_prec_t prec() const { return prec_; }
    const BigComplex& s() const { return s_; }

    BigReal ln(long n) {
        if (n < 1) throw std::domain_error("PhiPowerCache: require n >= 1");
        if (n < limit_) {
            grow(n);
            return ln_[static_cast<std::size_t>(n)];
        }
        return log(BigReal::of(n, prec_));
    }

    /// n^{-s} = e^{-s log n}
    BigComplex pow_minus_s(long n) {
        if (n < 1) throw std::domain_error("PhiPowerCache: require n >= 1");
        if (n < limit_) {
            grow(n);
            return pw_[static_cast<std::size_t>(n)];
        }
        return compute_pow(log(BigReal::of(n, prec_)));
    }

private:
    void grow(long n) {
        while (static_cast<long>(ln_.size()) <= n) {
            const long m = static_cast<long>(ln_.size());
            BigReal lnm = log(BigReal::of(m, prec_));
            pw_.push_back(compute_pow(lnm));
            ln_.push_back(std::move(lnm));
        }
    }
    BigComplex compute_pow(const BigReal& lnn) const {
        return exp(BigComplex(mul_2si(-lnn, -1), -(s_.im * lnn)));
    }

    mpfr_prec_t prec_;
    long limit_;
    BigComplex s_;
    std::vector<BigReal> ln_;
    std::vector<BigComplex> pw_;
};

/// phi_p(n) = n^{-s} (log n - d)^p
inline BigComplex phi(PhiPowerCache& cache, long n, int p, const BigReal& d) {
    BigComplex base = cache.pow_minus_s(n);
    if (p == 0) return base;
    return base * pow_ui(cache.ln(n) - d, static_cast<unsigned long>(p));
}

/// sum_{n=n0}^{n1} phi_p(n), compensated.
inline BigComplex partial_sum_phi(PhiPowerCache& cache, long n0, long n1, int p,
                                  const BigReal& d) {
    CompensatedComplexSum acc(cache.prec());
    for (long n = n0; n <= n1; ++n) acc.add(phi(cache, n, p, d));
    return acc.value();
}

namespace detail {

/// Derivatives of g_p(x) = (log x - d)^p for m = 0..m_max, sharing one table
/// of powers of w = log x - d.  g^(m)(x) = x^-m sum_l s1(m,l) (p-l+1)_l w^{p-l}.
inline std::vector<BigReal> g_deriv_table(long x, const BigReal& w, int p, int m_max,
                                          mpfr_prec_t prec) {
    std::vector<BigReal> wpow;
    wpow.reserve(static_cast<std::size_t>(p) + 1);
    wpow.emplace_back(BigReal::of(1, prec));
    for (int i = 1; i <= p; ++i) wpow.push_back(wpow.back() * w);

    std::vector<BigReal> g;
    g.reserve(static_cast<std::size_t>(m_max) + 1);
    g.push_back(wpow[static_cast<std::size_t>(p)]);
    BigReal xinv_m = BigReal::of(1, prec);
    BigReal xb = BigReal::of(x, prec);
    for (int m = 1; m <= m_max; ++m) {
        xinv_m /= xb;
        CompensatedSum acc(prec);
        for (int l = 1; l <= std::min(m, p); ++l) {
            mpz_class coef = StirlingCache::s1(static_cast<unsigned>(m),
                                               static_cast<unsigned>(l)) *
                             pochhammer_int(p - l + 1, static_cast<unsigned long>(l));
            if (coef == 0) continue;
            acc.add(BigReal::of(coef, prec) * wpow[static_cast<std::size_t>(p - l)]);
        }
        g.push_back(acc.value() * xinv_m);
    }
    return g;
}

/// phi_p^{(k)}(x) from a precomputed g table:
/// sum_j C(k,j) (-1)^j (s)_j x^{-s-j} g^{(k-j)}(x).
inline BigComplex phi_deriv_from_table(const std::vector<BigReal>& g, long x,
                                       const BigComplex& xs, const BigComplex& s, int k,
                                       mpfr_prec_t prec) {
    BigComplex run = xs;                       // (s)_j x^{-s} x^{-j}, starting j = 0
    BigReal xinv = BigReal::of(1, prec) / BigReal::of(x, prec);
    CompensatedComplexSum acc(prec);
    for (int j = 0; j <= k; ++j) {
        BigReal coef = BigReal::binomial(static_cast<unsigned long>(k),
                                         static_cast<unsigned long>(j), prec) *
                       g[static_cast<std::size_t>(k - j)];
        if (j % 2 == 1) coef = -coef;
        acc.add(run * coef);
        run = run * (s + BigComplex::of(j, 0, prec)) * xinv;
    }
    return acc.value();
}

} // namespace detail

/// m-th derivative of (log x - d)^p at integer x.
inline BigReal g_deriv(long x, int p, int m, const BigReal& d, mpfr_prec_t prec) {
    if (m < 0 || static_cast<unsigned>(m) > StirlingCache::order_cap)
        throw std::domain_error("g_deriv: order outside Stirling cap");
    BigReal w = log(BigReal::of(x, prec)) - BigReal::of(d, prec);
    return detail::g_deriv_table(x, w, p, m, prec)[static_cast<std::size_t>(m)];
}

/// k-th derivative of phi_p at integer x.
inline BigComplex phi_deriv(PhiPowerCache& cache, long x, int p, int k, const BigReal& d) {
    const mpfr_prec_t prec = cache.prec();
    BigReal w = cache.ln(x) - BigReal::of(d, prec);
    std::vector<BigReal> g = detail::g_deriv_table(x, w, p, k, prec);
    return detail::phi_deriv_from_table(g, x, cache.pow_minus_s(x), cache.s(), k, prec);
}

/// Antiderivative main term at cutoff u:
/// F(u) = u^{1-s}/(s-1) (log u - d)^p p! sum_{l=0}^p ((s-1)(log u - d))^{-l} / (p-l)!
/// The tail sum_{n > u} phi_p(n) equals -F(u) + lower-order corrections.
inline BigComplex phi_antiderivative(PhiPowerCache& cache, long u, int p, const BigReal& d) {
    const mpfr_prec_t prec = cache.prec();
    BigReal w = cache.ln(u) - BigReal::of(d, prec);
    if (p >= 1 && w.sgn() <= 0)
        throw precision_error("phi_antiderivative: require log u > d for p >= 1");
    BigComplex sm1 = cache.s() - BigComplex::of(1, 0, prec);
    BigComplex iswinv = inv(sm1 * w);
    CompensatedComplexSum sum(prec);
    BigComplex pw = BigComplex::of(1, 0, prec);
    for (int l = 0; l <= p; ++l) {
        sum.add(pw / BigReal::factorial(static_cast<unsigned long>(p - l), prec));
        if (l < p) pw = pw * iswinv;
    }
    BigComplex u_pow = BigReal::of(u, prec) * cache.pow_minus_s(u); // u^{1-s}
    return (u_pow / sm1) *
           (pow_ui(w, static_cast<unsigned long>(p)) *
            BigReal::factorial(static_cast<unsigned long>(p), prec)) *
           sum.value();
}

/// Reference evaluation of eta_p by Euler-Maclaurin with a certified remainder
/// envelope.  The cutoff M doubles until both the last correction term and the
/// proven remainder bound drop under 2^-(target+8); correction depth is capped
/// where exact Bernoulli rationals stop.
inline EtaValue eta_reference(const EtaParams& params, PhiPowerCache& cache,
                              const EmOverride& ovr = {}) {
    const mpfr_prec_t prec = params.ctx.working_bits;
    if (cache.prec() != prec)
        throw precision_error("eta_reference: cache precision mismatch");
    const int p = params.p;
    const BigReal& d = params.d;
    const BigReal eps =
        BigReal::pow2(-(params.ctx.target_abs_error_exponent + 8), prec);
    constexpr int k_cap = 60;

    long m0 = 2 * (params.t / mul_2si(BigReal::pi(prec), 1)).ceil_long();
    if (p >= 1) m0 = std::max(m0, exp(mul_2si(BigReal::of(d, prec), 1)).ceil_long() + 2);
    if (ovr.m_scale >= 1) m0 *= ovr.m_scale;

    CompensatedComplexSum head(prec);
    long head_upto = 0; // head covers n in [1, head_upto]
    long m_cut = m0;
    for (int attempt = 0; attempt < 10; ++attempt) {
        for (long n = head_upto + 1; n <= m_cut - 1; ++n) head.add(phi(cache, n, p, d));
        head_upto = m_cut - 1;

        BigReal lnM = cache.ln(m_cut);
        BigReal w = lnM - BigReal::of(d, prec);
        BigComplex xs = cache.pow_minus_s(m_cut);
        BigComplex base = head.value() + phi_antiderivative(cache, m_cut, p, d);
        {
            BigComplex halfphi = phi(cache, m_cut, p, d);
            base += BigComplex(mul_2si(halfphi.re, -1), mul_2si(halfphi.im, -1));
        }

        std::vector<BigReal> g =
            detail::g_deriv_table(m_cut, w, p, 2 * k_cap - 1, prec);
        CompensatedComplexSum corr(prec);
        BigComplex poch = BigComplex::of(1, 0, prec); // becomes (s)_{2l}
        BigReal m_pow = sqrt(BigReal::of(m_cut, prec)); // M^{1/2 - 2l} running
        BigReal m_inv2 = BigReal::of(1, prec) / (BigReal::of(m_cut, prec) * m_cut);
        BigReal twopi_inv2 =
            BigReal::of(1, prec) / pow_ui(mul_2si(BigReal::pi(prec), 1), 2);
        BigReal twopi_pow = BigReal::of(1, prec); // (2 pi)^{-2l} running
        int stop_l = 0;
        BigReal env(prec);
        for (int l = 1; l <= k_cap; ++l) {
            BigComplex term = bernoulli_over_factorial(2 * static_cast<unsigned>(l), prec) *
                              detail::phi_deriv_from_table(g, m_cut, xs, cache.s(),
                                                           2 * l - 1, prec);
            term = -term;
            corr.add(term);
            poch = poch * (cache.s() + BigComplex::of(2 * l - 2, 0, prec)) *
                   (cache.s() + BigComplex::of(2 * l - 1, 0, prec));
            m_pow *= m_inv2;
            twopi_pow *= twopi_inv2;

            // remainder envelope after l terms
            BigReal r = p == 0 ? BigReal::of(4 * l * l, prec) / params.t
                               : BigReal::of(2 * l, prec) *
                                     (BigReal::of(p, prec) / w + 2 * l) / params.t;
            CompensatedSum jsum(prec);
            BigReal wp = pow_ui(w, static_cast<unsigned long>(p));
            BigReal denom = BigReal::of(2 * l, prec) - BigReal::of(0.5, prec);
            BigReal denom_pow = BigReal::of(1, prec) / denom;
            for (int j = 0; j <= p; ++j) {
                jsum.add(BigReal::binomial(static_cast<unsigned long>(p),
                                           static_cast<unsigned long>(j), prec) *
                         wp * BigReal::factorial(static_cast<unsigned long>(j), prec) *
                         denom_pow);
                if (j < p) {
                    wp /= w;
                    denom_pow /= denom;
                }
            }
            env = mul_2si(BigReal::zeta_ui(2 * static_cast<unsigned>(l), prec), 1) *
                  twopi_pow * abs(poch) * exp(r) * (m_pow * jsum.value());

            if (abs(term) <= eps && env <= eps) {
                stop_l = l;
                if (ovr.k_extra <= 0 || l + ovr.k_extra > k_cap) break;
                // keep sharpening for k_extra extra terms, keeping the envelope
                for (int e = 0; e < ovr.k_extra && l < k_cap; ++e) {
                    ++l;
                    BigComplex extra =
                        bernoulli_over_factorial(2 * static_cast<unsigned>(l), prec) *
                        detail::phi_deriv_from_table(g, m_cut, xs, cache.s(), 2 * l - 1,
                                                     prec);
                    corr.add(-extra);
                    stop_l = l;
                }
                break;
            }
        }
        if (stop_l > 0) {
            BigComplex value = base + corr.value();
            if (p % 2 == 1) value = -value;
            return EtaValue{std::move(value), std::move(env), m_cut, stop_l,
                            EtaMethod::euler_maclaurin, false};
        }
        m_cut *= 2;
    }
    throw precision_error("eta_reference: precision plan infeasible for requested target");
}

/// Truncated functional-equation form: (-1)^p [ sum_{n<=N} phi_p(n) + F(N) ],
/// with the crude unconditional envelope (1+t) N^{-1/2} log^p N.
inline EtaValue eta_truncated_afe(const EtaParams& params, PhiPowerCache& cache, long n_cut) {
    const mpfr_prec_t prec = params.ctx.working_bits;
    if (n_cut < 2) throw precision_error("eta_truncated_afe: require N >= 2");
    BigComplex value = partial_sum_phi(cache, 1, n_cut, params.p, params.d) +
                       phi_antiderivative(cache, n_cut, params.p, params.d);
    if (params.p % 2 == 1) value = -value;
    BigReal lnN = cache.ln(n_cut);
    BigReal envelope = (1 + params.t) / sqrt(BigReal::of(n_cut, prec)) *
                       pow_ui(lnN, static_cast<unsigned long>(params.p));
    return EtaValue{std::move(value), std::move(envelope), n_cut, 0,
                    EtaMethod::truncated_afe, false};
}

/// Short two-sum approximation (the eta-level analogue of the approximate
/// functional equation): sum over n <= floor(sqrt(t/2pi)) of
/// (d-log n)^p n^{-s} plus e^{-2 i theta} times its reflected partner.
inline EtaValue eta_afe(const EtaParams& params, const BigReal& theta_value,
                        const BigReal& c, PhiPowerCache& cache) {
    const mpfr_prec_t prec = params.ctx.working_bits;
    long m = (sqrt(params.t / mul_2si(BigReal::pi(prec), 1))).floor_long();
    while (BigReal::of(m + 1, prec) * (m + 1) * mul_2si(BigReal::pi(prec), 1) <= params.t)
        ++m;
    while (BigReal::of(m, prec) * m * mul_2si(BigReal::pi(prec), 1) > params.t) --m;

    CompensatedComplexSum s1(prec), s2(prec);
    for (long n = 1; n <= m; ++n) {
        BigComplex pw = cache.pow_minus_s(n);
        BigReal wp = pow_ui(BigReal::of(params.d, prec) - cache.ln(n),
                            static_cast<unsigned long>(params.p));
        s1.add(pw * wp);
        if (params.p % 2 == 1) wp = -wp;       // (log n - d)^p
        s2.add(conj(pw) * wp);
    }
    BigReal sc(prec), cc(prec);
    sin_cos(sc, cc, mul_2si(BigReal::of(theta_value, prec), 1));
    BigComplex rot(cc, -sc); // e^{-2 i theta}
    BigComplex value = s1.value() + rot * s2.value();

    BigReal envelope(prec);
    bool extrapolated = false;
    if (params.p >= 1) {
        envelope = pow(c, BigReal::of(params.p, prec) / params.d) *
                   pow_ui(params.d, static_cast<unsigned long>(params.p)) /
                   sqrt(params.t);
    } else {
        envelope = BigReal::of(5, prec) / sqrt(sqrt(params.t));
        extrapolated = true;
    }
    return EtaValue{std::move(value), std::move(envelope), m, 0, EtaMethod::short_afe,
                    extrapolated};
}

struct ConjugateShortSum {
    BigComplex lhs;
    BigComplex rhs;
    BigReal envelope;
    BigReal normalized;
    long n0 = 0;
    long n1 = 0;
};

/// Conjugate-reflection identity check across the AFE split point: the sum of
/// phi_p over (N0, N1] against the reflected short sum, normalized by
/// t^{-1/2} p^2 c^{p/d} d^{p-2}.
inline ConjugateShortSum conjugate_short_sum_check(const EtaParams& params,
                                                   const BigReal& theta_value,
                                                   const BigReal& c, PhiPowerCache& cache) {
    const mpfr_prec_t prec = params.ctx.working_bits;
    if (params.p < 2)
        throw precision_error("conjugate_short_sum_check: require p >= 2");
    long n0 = exp(BigReal::of(params.d, prec)).ceil_long();
    long n1 = (c * exp(mul_2si(BigReal::of(params.d, prec), 1))).floor_long();

    BigComplex lhs = partial_sum_phi(cache, n0 + 1, n1, params.p, params.d);

    CompensatedComplexSum short_sum(prec);
    for (long n = 1; n <= n0; ++n) {
        BigReal wp = pow_ui(BigReal::of(params.d, prec) - cache.ln(n),
                            static_cast<unsigned long>(params.p));
        short_sum.add(conj(cache.pow_minus_s(n)) * wp);
    }
    BigReal sc(prec), cc(prec);
    sin_cos(sc, cc, mul_2si(BigReal::of(theta_value, prec), 1));
    BigComplex rhs = BigComplex(cc, -sc) * short_sum.value();

    BigReal envelope = BigReal::of(params.p, prec) * params.p *
                       pow(c, BigReal::of(params.p, prec) / params.d) *
                       pow_ui(params.d, static_cast<unsigned long>(params.p - 2)) /
                       sqrt(params.t);
    BigReal normalized = abs(lhs - rhs) / envelope;
    return ConjugateShortSum{std::move(lhs), std::move(rhs), std::move(envelope),
                             std::move(normalized), n0, n1};
}

} // namespace hardyz
