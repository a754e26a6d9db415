#pragma once

#include <cmath>
#include <vector>

#include "gamma_complex.hpp"
#include "precision.hpp"

namespace hardyz {

/// Leading asymptotic form (t/2) log(t/(2 pi)) - t/2 - pi/8.
inline BigReal theta_asymptotic(const BigReal& t, mpfr_prec_t prec) {
    BigReal tb = BigReal::of(t, prec);
    BigReal half_t = mul_2si(tb, -1);
    return half_t * log(tb / mul_2si(BigReal::pi(prec), 1)) - half_t -
           mul_2si(BigReal::pi(prec), -3);
}

/// Riemann-Siegel theta via the Gamma definition; exact for all t > 0.
inline BigReal theta(const BigReal& t, const PrecisionContext& ctx) {
    if (t.sgn() <= 0) throw precision_error("theta: require t > 0");
    const mpfr_prec_t wp = ctx.working_bits;
    BigComplex z(BigReal::pow2(-2, wp), mul_2si(BigReal::of(t, wp), -1));
    BigComplex lg = log_gamma(z, wp);
    return lg.im - mul_2si(BigReal::of(t, wp) * log(BigReal::pi(wp)), -1);
}

/// theta and its derivatives 0..order at a single point, sharing one base
/// point z = 1/4 + i t/2 across all polygamma calls.
struct ThetaJet {
    BigReal t;
    std::vector<BigReal> derivs; // derivs[nu] = theta^{(nu)}(t)

    const BigReal& operator[](std::size_t nu) const { return derivs.at(nu); }
    int order() const { return static_cast<int>(derivs.size()) - 1; }
};

inline long theta_jet_order_cap(double t) {
    const double lt = std::log(t);
    return static_cast<long>(10.0 * lt * lt);
}

inline ThetaJet theta_jet(const BigReal& t, int order, const PrecisionContext& ctx) {
    if (t.sgn() <= 0) throw precision_error("theta_jet: require t > 0");
    if (order < 0 || order > theta_jet_order_cap(t.to_double()))
        throw precision_error("theta_jet: order outside [0, 10 (log t)^2]");
    const mpfr_prec_t wp = ctx.working_bits;
    ThetaJet jet{BigReal::of(t, wp), {}};
    jet.derivs.reserve(static_cast<std::size_t>(order) + 1);
    jet.derivs.push_back(theta(t, ctx));
    if (order == 0) return jet;
    BigComplex z(BigReal::pow2(-2, wp), mul_2si(BigReal::of(t, wp), -1));
    BigReal half_log_pi = mul_2si(log(BigReal::pi(wp)), -1);
    for (int nu = 1; nu <= order; ++nu) {
        BigComplex psi = polygamma(static_cast<unsigned long>(nu - 1), z, wp);
        BigReal v = mul_2si(mul_i_pow(psi, nu).im, -nu);
        if (nu == 1) v -= half_log_pi;
        jet.derivs.push_back(std::move(v));
    }
    return jet;
}

/// Proven envelope for |theta^{(nu)}(t)|, nu >= 2:
/// (nu-2)!/(2 t^{nu-1}) + 2 nu! / (sqrt(nu) t^nu).
inline BigReal theta_deriv_bound(const BigReal& t, int nu, mpfr_prec_t prec) {
    if (nu < 2) throw precision_error("theta_deriv_bound: require nu >= 2");
    BigReal tb = BigReal::of(t, prec);
    BigReal first = mul_2si(BigReal::factorial(static_cast<unsigned long>(nu - 2), prec), -1) /
                    pow_ui(tb, static_cast<unsigned long>(nu - 1));
    BigReal second = mul_2si(BigReal::factorial(static_cast<unsigned long>(nu), prec), 1) /
                     (sqrt(BigReal::of(nu, prec)) * pow_ui(tb, static_cast<unsigned long>(nu)));
    return first + second;
}

} // namespace hardyz
