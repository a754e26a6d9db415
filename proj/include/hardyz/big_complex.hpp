#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "big_real.hpp"

namespace hardyz {

/// Rectangular complex value over BigReal.  MPFR has no native complex type;
/// the handful of operations needed here (field arithmetic, exp, log, powers
/// of i) are implemented directly on the component pair.
struct BigComplex {
    BigReal re;
    BigReal im;

    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(const BigReal& r) : re(r), im(BigReal(r.prec())) {}

    static BigComplex of(long r, long i, mpfr_prec_t prec) {
        return {BigReal::of(r, prec), BigReal::of(i, prec)};
    }
    static BigComplex i_unit(mpfr_prec_t prec) { return of(0, 1, prec); }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
}
inline BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline BigComplex operator*(const BigComplex& a, const BigReal& b) {
    return {a.re * b, a.im * b};
}
inline BigComplex operator*(const BigReal& a, const BigComplex& b) { return b * a; }
inline BigComplex operator*(const BigComplex& a, long b) { return {a.re * b, a.im * b}; }
inline BigComplex operator/(const BigComplex& a, const BigReal& b) {
    return {a.re / b, a.im / b};
}
inline BigComplex operator/(const BigComplex& a, long b) { return {a.re / b, a.im / b}; }
inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline BigComplex& operator+=(BigComplex& a, const BigComplex& b) { a = a + b; return a; }
inline BigComplex& operator-=(BigComplex& a, const BigComplex& b) { a = a - b; return a; }
inline BigComplex& operator*=(BigComplex& a, const BigComplex& b) { a = a * b; return a; }

inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
inline BigReal abs(const BigComplex& z) { return hypot(z.re, z.im); }

inline BigComplex inv(const BigComplex& z) {
    BigReal d = z.re * z.re + z.im * z.im;
    return {z.re / d, -z.im / d};
}

inline BigComplex pow_ui(const BigComplex& z, unsigned long n) {
    BigComplex acc = BigComplex::of(1, 0, z.prec());
    BigComplex base = z;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return acc;
}

inline BigComplex exp(const BigComplex& z) {
    BigReal m = exp(z.re);
    BigReal s(z.im.prec()), c(z.im.prec());
    sin_cos(s, c, z.im);
    return {m * c, m * s};
}
/// Principal branch; z must be nonzero.
inline BigComplex log(const BigComplex& z) {
    return {log(abs(z)), atan2(z.im, z.re)};
}

/// z * i^k, exact (component swap and sign flips only).
inline BigComplex mul_i_pow(const BigComplex& z, long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return z;
        case 1: return {-z.im, z.re};
        case 2: return {-z.re, -z.im};
        default: return {z.im, -z.re};
    }
}

/// x^w for real x > 0, as exp(w log x).
inline BigComplex pow(const BigReal& x, const BigComplex& w) {
    if (x.sgn() <= 0) throw std::domain_error("pow(BigReal, BigComplex): base must be positive");
    return exp(w * log(x));
}

inline std::string to_string(const BigComplex& z) {
    return "(" + to_string(z.re) + ", " + to_string(z.im) + ")";
}

inline BigComplex complex_from_string(const std::string& text, mpfr_prec_t prec) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw std::domain_error("BigComplex: literal must look like '(re, im)'");
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::domain_error("BigComplex: missing component separator");
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    return {from_string(trim(text.substr(1, comma - 1)), prec),
            from_string(trim(text.substr(comma + 1, text.size() - comma - 2)), prec)};
}

class CompensatedComplexSum {
public:
    explicit CompensatedComplexSum(mpfr_prec_t prec) : re_(prec), im_(prec) {}
    void add(const BigComplex& z) {
        re_.add(z.re);
        im_.add(z.im);
    }
    BigComplex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace hardyz
