#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "precision.hpp"

namespace hardyz {

/// Arbitrary-precision real backed by MPFR.  Every value carries its own
/// precision; arithmetic results adopt the widest operand precision, so a
/// computation seeded from a PrecisionContext stays at context precision
/// without any ambient global state.  Rounding is always to nearest.
class BigReal {
public:
    explicit BigReal(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigReal(const BigReal& o) {
        mpfr_init2(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    static BigReal of(long n, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }
    static BigReal of(int n, mpfr_prec_t prec) { return of(static_cast<long>(n), prec); }
    /// Re-round an existing value to the requested precision.
    static BigReal of(const BigReal& x, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set(r.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static BigReal of(double d, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    static BigReal of(const mpz_class& z, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static BigReal of(const mpq_class& q, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static BigReal pi(mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    /// 2^e, exact.
    static BigReal pow2(long e, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }
    static BigReal factorial(unsigned long n, mpfr_prec_t prec) {
        mpz_class z;
        mpz_fac_ui(z.get_mpz_t(), n);
        return of(z, prec);
    }
    static BigReal binomial(unsigned long n, unsigned long k, mpfr_prec_t prec) {
        mpz_class z;
        mpz_bin_uiui(z.get_mpz_t(), n, k);
        return of(z, prec);
    }
    static BigReal zeta_ui(unsigned long u, mpfr_prec_t prec) {
        BigReal r(prec);
        mpfr_zeta_ui(r.v_, u, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    /// Binary exponent e with |x| in [2^(e-1), 2^e); only meaningful for nonzero finite x.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    long floor_long() const {
        BigReal f(prec());
        mpfr_floor(f.v_, v_);
        if (!mpfr_fits_slong_p(f.v_, MPFR_RNDN))
            throw std::domain_error("BigReal::floor_long: out of range");
        return mpfr_get_si(f.v_, MPFR_RNDN);
    }
    long ceil_long() const {
        BigReal f(prec());
        mpfr_ceil(f.v_, v_);
        if (!mpfr_fits_slong_p(f.v_, MPFR_RNDN))
            throw std::domain_error("BigReal::ceil_long: out of range");
        return mpfr_get_si(f.v_, MPFR_RNDN);
    }

private:
    mpfr_t v_;

    friend mpfr_prec_t pmax(const BigReal& a, const BigReal& b);
};

inline mpfr_prec_t pmax(const BigReal& a, const BigReal& b) {
    return std::max(a.prec(), b.prec());
}

#define HARDYZ_BINOP(op, fn)                                      \
    inline BigReal operator op(const BigReal& a, const BigReal& b) { \
        BigReal r(pmax(a, b));                                     \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);                  \
        return r;                                                  \
    }                                                              \
    inline BigReal operator op(const BigReal& a, long b) {         \
        BigReal r(a.prec());                                       \
        fn##_si(r.raw(), a.raw(), b, MPFR_RNDN);                   \
        return r;                                                  \
    }

HARDYZ_BINOP(+, mpfr_add)
HARDYZ_BINOP(-, mpfr_sub)
HARDYZ_BINOP(*, mpfr_mul)
HARDYZ_BINOP(/, mpfr_div)
#undef HARDYZ_BINOP

inline BigReal operator+(long a, const BigReal& b) { return b + a; }
inline BigReal operator*(long a, const BigReal& b) { return b * a; }
inline BigReal operator-(long a, const BigReal& b) {
    BigReal r(b.prec());
    mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}
inline BigReal operator/(long a, const BigReal& b) {
    BigReal r(b.prec());
    mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}
inline BigReal operator-(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal& operator+=(BigReal& a, const BigReal& b) { a = a + b; return a; }
inline BigReal& operator-=(BigReal& a, const BigReal& b) { a = a - b; return a; }
inline BigReal& operator*=(BigReal& a, const BigReal& b) { a = a * b; return a; }
inline BigReal& operator/=(BigReal& a, const BigReal& b) { a = a / b; return a; }

inline int cmp(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
inline bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
inline bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
inline bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
inline bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
inline bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) == 0; }
inline bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) < 0; }
inline bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) <= 0; }
inline bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) > 0; }
inline bool operator>=(const BigReal& a, long b) { return mpfr_cmp_si(a.raw(), b) >= 0; }

#define HARDYZ_UNFN(name, fn)                   \
    inline BigReal name(const BigReal& x) {     \
        BigReal r(x.prec());                    \
        fn(r.raw(), x.raw(), MPFR_RNDN);        \
        return r;                               \
    }
HARDYZ_UNFN(abs, mpfr_abs)
HARDYZ_UNFN(sqrt, mpfr_sqrt)
HARDYZ_UNFN(exp, mpfr_exp)
HARDYZ_UNFN(log, mpfr_log)
HARDYZ_UNFN(log2, mpfr_log2)
HARDYZ_UNFN(log10, mpfr_log10)
HARDYZ_UNFN(sin, mpfr_sin)
HARDYZ_UNFN(cos, mpfr_cos)
#undef HARDYZ_UNFN

inline void sin_cos(BigReal& s, BigReal& c, const BigReal& x) {
    BigReal ss(x.prec()), cc(x.prec());
    mpfr_sin_cos(ss.raw(), cc.raw(), x.raw(), MPFR_RNDN);
    s = std::move(ss);
    c = std::move(cc);
}
inline BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(pmax(y, x));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline BigReal pow(const BigReal& x, const BigReal& y) {
    BigReal r(pmax(x, y));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline BigReal pow_ui(const BigReal& x, unsigned long n) {
    BigReal r(x.prec());
    mpfr_pow_ui(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline BigReal pow_si(const BigReal& x, long n) {
    BigReal r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
/// x * 2^n, exact.
inline BigReal mul_2si(const BigReal& x, long n) {
    BigReal r(x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
inline BigReal hypot(const BigReal& a, const BigReal& b) {
    BigReal r(pmax(a, b));
    mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline BigReal min(const BigReal& a, const BigReal& b) { return a <= b ? a : b; }
inline BigReal max(const BigReal& a, const BigReal& b) { return a >= b ? a : b; }

/// Significant decimal digits used when serializing a value of precision `prec`:
/// enough that parse(to_string(x)) at equal precision reproduces x exactly.
inline long serialization_digits(mpfr_prec_t prec) {
    return static_cast<long>(std::ceil(static_cast<double>(prec) * 0.302)) + 2;
}

inline std::string to_string(const BigReal& x) {
    if (x.is_nan()) return "nan";
    if (x.is_inf()) return x.sgn() > 0 ? "inf" : "-inf";
    const long digits = serialization_digits(x.prec());
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", static_cast<int>(digits - 1), x.raw());
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

inline BigReal from_string(const std::string& text, mpfr_prec_t prec) {
    BigReal r(prec);
    if (text == "nan") {
        mpfr_set_nan(r.raw());
        return r;
    }
    if (text == "inf" || text == "-inf") {
        mpfr_set_inf(r.raw(), text[0] == '-' ? -1 : 1);
        return r;
    }
    if (mpfr_set_str(r.raw(), text.c_str(), 10, MPFR_RNDN) != 0)
        throw std::domain_error("BigReal: unparsable literal '" + text + "'");
    return r;
}

/// Neumaier-compensated accumulation at fixed precision.
class CompensatedSum {
public:
    explicit CompensatedSum(mpfr_prec_t prec) : s_(prec), c_(prec) {}

    void add(const BigReal& x) {
        BigReal t = s_ + x;
        if (mpfr_cmpabs(s_.raw(), x.raw()) >= 0)
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = std::move(t);
    }
    BigReal value() const { return s_ + c_; }

private:
    BigReal s_;
    BigReal c_;
};

} // namespace hardyz
