#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace hardyz {

class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// Precision plan for one (t, k) evaluation.  All arbitrary-precision values
/// derived under a context are carried at `working_bits`; `target_abs_error_exponent`
/// is the absolute accuracy (2^-target) the slowly-converging summation stages are
/// driven to, and `guard_bits` separates the two.
struct PrecisionContext {
    long working_bits;
    long guard_bits;
    long target_abs_error_exponent;

    PrecisionContext(long working, long guard, long target)
        : working_bits(working), guard_bits(guard), target_abs_error_exponent(target) {
        if (working_bits < 64)
            throw precision_error("PrecisionContext: working_bits must be >= 64");
        if (target_abs_error_exponent < 1)
            throw precision_error("PrecisionContext: target exponent must be >= 1");
        if (working_bits < target_abs_error_exponent + guard_bits)
            throw precision_error(
                "PrecisionContext: working_bits < target_abs_error_exponent + guard_bits");
    }

    PrecisionContext escalated() const {
        return PrecisionContext(2 * working_bits, guard_bits, target_abs_error_exponent + 64);
    }
};

/// Plan the precision for evaluating Z^(k)(t) and its ingredients.
///
/// working_bits = 64 + ceil(k*log2(1+theta'_asymp(t))) + ceil(log2 t)
///              + ceil(k*log2(k+2)) + 64,
/// which leaves >= 64 significant bits on every intermediate up to k!*theta'(t)^k.
/// The default absolute target (96 bits, clamped by the guard) governs how far the
/// Euler-Maclaurin stages are pushed; `target_override` (> 0) substitutes it.
inline PrecisionContext context_for(double t, int k, long target_override = 0) {
    if (!(t >= 10.0))
        throw precision_error("context_for: require t >= 10");
    const double logt = std::log(t);
    if (k < 0 || static_cast<double>(k) > 10.0 * logt * logt)
        throw precision_error("context_for: require 0 <= k <= 10*(log t)^2");
    const double tp = 0.5 * std::log(t / (2.0 * 3.14159265358979323846));
    long working = 64 + static_cast<long>(std::ceil(k * std::log2(1.0 + tp)))
                 + static_cast<long>(std::ceil(std::log2(t)))
                 + static_cast<long>(std::ceil(k * std::log2(static_cast<double>(k) + 2.0)))
                 + 64;
    const long guard = 64;
    long target;
    if (target_override > 0) {
        target = target_override;
        if (working < target + guard) working = target + guard;
    } else {
        target = std::min<long>(96, working - guard);
    }
    return PrecisionContext(working, guard, target);
}

} // namespace hardyz
