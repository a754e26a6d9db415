#pragma once

#include <hardyz/combinatorics.hpp>
#include <hardyz/eta.hpp>
#include <hardyz/theta.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hardyz {

/// Largest n with 2 pi n^2 <= t, decided by integer squaring rather than by
/// rounding sqrt(t / 2pi), so the main-sum cutoff is never off by one.
inline long main_sum_terms(const BigReal& t, mpfr_prec_t prec) {
    const BigReal two_pi = mul_2si(BigReal::pi(prec), 1);
    long n = sqrt(t / two_pi).floor_long();
    while (BigReal::of(n + 1, prec) * (n + 1) * two_pi <= t) ++n;
    while (n > 0 && BigReal::of(n, prec) * n * two_pi > t) --n;
    return n;
}

struct MainSumResult {
    BigReal value;
    long n_terms = 0;
};

/// Main sum of the approximate functional equation for Z^(k):
///   2 sum_{2 pi n^2 <= t} n^{-1/2} (theta'(t) - log n)^k
///     cos(theta(t) - t log n + k pi/2).
/// The k pi/2 shift is applied as an exact quadrant rotation of sin/cos.
inline MainSumResult z_deriv_main_sum(const ThetaJet& jet, int k,
                                      const PrecisionContext& ctx) {
    if (k < 0) throw precision_error("z_deriv_main_sum: require k >= 0");
    if (jet.order() < 1)
        throw precision_error("z_deriv_main_sum: jet must carry theta'");
    const mpfr_prec_t wp = ctx.working_bits;
    const BigReal& t = jet.t;
    const BigReal& theta_value = jet[0];
    const BigReal& d = jet[1];
    const long n_terms = main_sum_terms(t, wp);
    const int quadrant = k % 4;
    CompensatedSum acc(wp);
    for (long n = 1; n <= n_terms; ++n) {
        const BigReal ln_n = log(BigReal::of(n, wp));
        BigReal s(wp), c(wp);
        sin_cos(s, c, theta_value - t * ln_n);
        const BigReal osc = quadrant == 0   ? c
                            : quadrant == 1 ? -s
                            : quadrant == 2 ? -c
                                            : s;
        acc.add(pow_si(d - ln_n, k) / sqrt(BigReal::of(n, wp)) * osc);
    }
    return {mul_2si(acc.value(), 1), n_terms};
}

struct EnvelopeValue {
    BigReal value;
    bool extrapolated = false;
};

/// Envelope for the error term R_k(t) = main sum - Z^(k)(t):
///   e^{k / (2 theta')} (t^{-1/2} theta'^k + t^{-3/4} k theta'^{k-1}),
/// the first factor being c^{k/theta'} with c = sqrt(e). Valid for k >= 1;
/// the k = 0 shape 5 t^{-1/4} extends an empirical fit outside the proven
/// range and is flagged extrapolated.
inline EnvelopeValue theorem_envelope(const BigReal& t, int k,
                                      const BigReal& theta_prime,
                                      mpfr_prec_t prec, const BigReal& c) {
    if (k < 0) throw precision_error("theorem_envelope: require k >= 0");
    const BigReal tt = BigReal::of(t, prec);
    if (k == 0) return {BigReal::of(5, prec) / sqrt(sqrt(tt)), true};
    const BigReal d = BigReal::of(theta_prime, prec);
    const BigReal kk = BigReal::of(k, prec);
    const BigReal ck = pow(BigReal::of(c, prec), kk / d);
    const BigReal ek = exp(mul_2si(kk / d, -1));
    const BigReal rt = sqrt(tt);
    const BigReal dk1 = pow_ui(d, static_cast<unsigned long>(k - 1));
    return {ck * dk1 * d / rt + ek * (dk1 * k) / (rt * sqrt(rt)), false};
}

inline EnvelopeValue theorem_envelope(const BigReal& t, int k,
                                      const BigReal& theta_prime,
                                      mpfr_prec_t prec) {
    return theorem_envelope(t, k, theta_prime, prec,
                            exp(BigReal::of(0.5, prec)));
}

struct ZValue {
    BigReal value;     // real part of the rotated eta assembly
    BigReal imag_leak; // |imag part|; the exact assembly is purely real
    long working_bits = 0;
};

namespace detail {

/// e^{i theta} (i^k eta_k + sum_{p=0}^{k-2} q_p i^p eta_p) with eta values
/// drawn from (and inserted into) eta_cache. bell may be null for k < 2.
inline BigComplex z_assembly(const ThetaJet& jet, const BellTable* bell, int k,
                             PhiPowerCache& phi_cache,
                             std::map<int, EtaValue>& eta_cache,
                             const PrecisionContext& ctx) {
    const mpfr_prec_t wp = ctx.working_bits;
    auto eta_at = [&](int p) -> const BigComplex& {
        auto it = eta_cache.find(p);
        if (it == eta_cache.end()) {
            EtaParams params(jet.t, jet[1], p, ctx);
            it = eta_cache.emplace(p, eta_reference(params, phi_cache)).first;
        }
        return it->second.value;
    };
    CompensatedComplexSum acc(wp);
    acc.add(mul_i_pow(eta_at(k), k));
    if (k >= 2) {
        if (bell == nullptr)
            throw precision_error("z_assembly: k >= 2 needs a Bell table");
        const std::vector<BigComplex> q = bell->qp_coefficients(k);
        for (int p = 0; p <= k - 2; ++p)
            acc.add(q[static_cast<std::size_t>(p)] * mul_i_pow(eta_at(p), p));
    }
    return exp(BigComplex(BigReal::of(0, wp), jet[0])) * acc.value();
}

inline BigReal leak_bound(const BigReal& value_abs, const BigReal& theta_prime,
                          int k, const PrecisionContext& ctx) {
    const BigReal scale =
        value_abs + pow_ui(theta_prime, static_cast<unsigned long>(k));
    return mul_2si(scale, 16 - ctx.target_abs_error_exponent);
}

} // namespace detail

/// Shared per-t state for evaluating Z^(k)(t) at several k: one theta jet at
/// order k_max, one Bell table, one eta cache and one phi power cache, all at
/// the uniform precision context_for(t, k_max).
class ZWorkspace {
public:
    ZWorkspace(const BigReal& t, int k_max,
               std::optional<PrecisionContext> ctx_override = std::nullopt)
        : ctx_(ctx_override ? *ctx_override
                            : context_for(t.to_double(), k_max)),
          k_max_(k_max),
          jet_(theta_jet(BigReal::of(t, ctx_.working_bits),
                         std::max(k_max, 1), ctx_)),
          phi_cache_(jet_.t, ctx_.working_bits) {
        if (k_max >= 2) bell_.emplace(jet_, k_max);
    }

    const PrecisionContext& ctx() const { return ctx_; }
    const ThetaJet& jet() const { return jet_; }
    int k_max() const { return k_max_; }

    MainSumResult main_sum(int k) const {
        return z_deriv_main_sum(jet_, k, ctx_);
    }

    /// Reference Z^(k)(t) through the eta identity. The imaginary part of the
    /// assembly must vanish; if the leak exceeds its budget the evaluation is
    /// redone once at escalated precision before giving up.
    ZValue reference(int k) {
        if (k < 0 || k > k_max_)
            throw precision_error("ZWorkspace: k outside [0, k_max]");
        const BellTable* bell = bell_ ? &*bell_ : nullptr;
        BigComplex val =
            detail::z_assembly(jet_, bell, k, phi_cache_, eta_cache_, ctx_);
        BigReal leak = abs(val.im);
        if (leak <= detail::leak_bound(abs(val.re), jet_[1], k, ctx_))
            return {val.re, leak, ctx_.working_bits};

        const PrecisionContext esc = ctx_.escalated();
        ensure_escalated(esc);
        val = detail::z_assembly(*esc_jet_, esc_bell_ ? &*esc_bell_ : nullptr,
                                 k, *esc_phi_cache_, esc_eta_cache_, esc);
        leak = abs(val.im);
        if (leak <= detail::leak_bound(abs(val.re), (*esc_jet_)[1], k, esc))
            return {val.re, leak, esc.working_bits};
        throw precision_error(
            "z reference: imaginary leak persists at escalated precision");
    }

private:
    void ensure_escalated(const PrecisionContext& esc) {
        if (esc_jet_) return;
        esc_jet_ = theta_jet(BigReal::of(jet_.t, esc.working_bits),
                             std::max(k_max_, 1), esc);
        if (k_max_ >= 2) esc_bell_.emplace(*esc_jet_, k_max_);
        esc_phi_cache_.emplace(esc_jet_->t, esc.working_bits);
    }

    PrecisionContext ctx_;
    int k_max_;
    ThetaJet jet_;
    PhiPowerCache phi_cache_;
    std::optional<BellTable> bell_;
    std::map<int, EtaValue> eta_cache_;

    std::optional<ThetaJet> esc_jet_;
    std::optional<BellTable> esc_bell_;
    std::optional<PhiPowerCache> esc_phi_cache_;
    std::map<int, EtaValue> esc_eta_cache_;
};

/// One row of a residual experiment: everything needed to audit
/// |main sum - Z^(k)(t)| against theta'^k and the theorem envelope.
struct ResidualRecord {
    double t = 0;
    int k = 0;
    BigReal main_sum;
    BigReal reference;
    BigReal residual;
    BigReal theta_prime;
    BigReal normalized;     // |residual| / theta'^k
    BigReal envelope;
    BigReal envelope_ratio; // |residual| / envelope
    BigReal imag_leak;
    long working_bits = 0;
    bool envelope_extrapolated = false;
    std::string error; // empty on success; failure text in exported tables
};

inline ResidualRecord residual_record(ZWorkspace& ws, int k,
                                      const BigReal& c) {
    ResidualRecord rec;
    rec.t = ws.jet().t.to_double();
    rec.k = k;
    const MainSumResult ms = ws.main_sum(k);
    const ZValue ref = ws.reference(k);
    rec.main_sum = ms.value;
    rec.reference = ref.value;
    rec.residual = ms.value - ref.value;
    rec.theta_prime = ws.jet()[1];
    rec.normalized =
        abs(rec.residual) /
        pow_ui(rec.theta_prime, static_cast<unsigned long>(k));
    const EnvelopeValue env = theorem_envelope(ws.jet().t, k, rec.theta_prime,
                                               ws.ctx().working_bits, c);
    rec.envelope = env.value;
    rec.envelope_extrapolated = env.extrapolated;
    rec.envelope_ratio = abs(rec.residual) / env.value;
    rec.imag_leak = ref.imag_leak;
    rec.working_bits = ref.working_bits;
    return rec;
}

inline ResidualRecord residual_record(ZWorkspace& ws, int k) {
    const mpfr_prec_t wp = ws.ctx().working_bits;
    return residual_record(ws, k, exp(BigReal::of(0.5, wp)));
}

/// Z(t) and single-k conveniences; each builds a throwaway workspace.
inline ZValue z_deriv_reference(const BigReal& t, int k,
                                std::optional<PrecisionContext> ctx =
                                    std::nullopt) {
    ZWorkspace ws(t, std::max(k, 1), ctx);
    return ws.reference(k);
}

inline BigReal z_reference(const BigReal& t,
                           std::optional<PrecisionContext> ctx = std::nullopt) {
    return z_deriv_reference(t, 0, ctx).value;
}

inline ResidualRecord residual_record(const BigReal& t, int k,
                                      std::optional<PrecisionContext> ctx =
                                          std::nullopt) {
    ZWorkspace ws(t, std::max(k, 1), ctx);
    return residual_record(ws, k);
}

} // namespace hardyz
