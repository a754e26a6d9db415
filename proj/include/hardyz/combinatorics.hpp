#pragma once

#include <gmpxx.h>

#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "big_complex.hpp"
#include "theta.hpp"

namespace hardyz {

/// Signed Stirling numbers of the first kind s(k, l), exact integers, cached
/// row by row.  Thread-safe for concurrent readers.
class StirlingCache {
public:
    static constexpr unsigned order_cap = 400;

    static mpz_class s1(unsigned k, unsigned l) {
        if (k > order_cap) throw std::domain_error("StirlingCache: order above cap");
        if (l > k) return mpz_class(0);
        static std::vector<std::vector<mpz_class>> rows{{mpz_class(1)}};
        static std::shared_mutex mu;
        {
            std::shared_lock rd(mu);
            if (k < rows.size()) return rows[k][l];
        }
        std::unique_lock wr(mu);
        while (rows.size() <= k) {
            const unsigned m = static_cast<unsigned>(rows.size()) - 1;
            const std::vector<mpz_class>& prev = rows.back();
            std::vector<mpz_class> cur(m + 2);
            for (unsigned j = 0; j <= m + 1; ++j) {
                if (j >= 1) cur[j] = prev[j - 1];
                if (j <= m) cur[j] -= static_cast<long>(m) * prev[j];
            }
            rows.push_back(std::move(cur));
        }
        return rows[k][l];
    }
};

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), exact.
inline mpz_class pochhammer_int(long a, unsigned long n) {
    mpz_class r(1);
    for (unsigned long i = 0; i < n; ++i) r *= a + static_cast<long>(i);
    return r;
}

inline BigReal pochhammer(const BigReal& a, unsigned long n) {
    BigReal r = BigReal::of(1, a.prec());
    for (unsigned long i = 0; i < n; ++i) r *= a + static_cast<long>(i);
    return r;
}

inline BigComplex pochhammer(const BigComplex& a, unsigned long n) {
    BigComplex r = BigComplex::of(1, 0, a.prec());
    for (unsigned long i = 0; i < n; ++i)
        r = r * (a + BigComplex::of(static_cast<long>(i), 0, a.prec()));
    return r;
}

/// Lower incomplete gamma for integer first argument a >= 1 and x >= 0:
/// gamma(a, x) = (a-1)! e^{-x} sum_{n>=a} x^n/n!.  The series is positive and
/// eventually geometric, so truncation is controlled by the current term.
inline BigReal lower_incomplete_gamma(unsigned long a, const BigReal& x, mpfr_prec_t prec) {
    if (a < 1) throw std::domain_error("lower_incomplete_gamma: require a >= 1");
    if (x.sgn() < 0) throw std::domain_error("lower_incomplete_gamma: require x >= 0");
    if (x.is_zero()) return BigReal::of(0, prec);
    BigReal xb = BigReal::of(x, prec);
    BigReal term = pow_ui(xb, a) / BigReal::factorial(a, prec);
    BigReal acc = term;
    const BigReal eps = BigReal::pow2(-(static_cast<long>(prec) - 4), prec);
    for (unsigned long n = a + 1; n < 100000000UL; ++n) {
        term *= xb / static_cast<long>(n);
        acc += term;
        // once the ratio drops under 1/2 the tail is below the current term
        if (mul_2si(xb, 1) < static_cast<long>(n + 1) && term <= acc * eps) break;
    }
    return BigReal::factorial(a - 1, prec) * exp(-xb) * acc;
}

/// Partial Bell triangle over x_j = i theta^{(j)}(t), the workspace behind the
/// correction coefficients q_p: B_{n,m} = sum_j C(n-1, j-1) x_j B_{n-j, m-1}
/// with parts restricted to j >= 2, plus the row sums R_n = sum_m B_{n,m}.
class BellTable {
public:
    BellTable(const ThetaJet& jet, int n_max)
        : n_max_(n_max),
          prec_(jet.derivs.at(0).prec()),
          t_(jet.t),
          theta_prime_(jet.derivs.at(n_max >= 1 ? 1 : 0)) {
        if (n_max < 0) throw std::domain_error("BellTable: require n_max >= 0");
        if (jet.order() < n_max)
            throw std::domain_error("BellTable: jet order below requested n_max");
        rows_.resize(static_cast<std::size_t>(n_max) + 1);
        r_.reserve(static_cast<std::size_t>(n_max) + 1);
        for (int n = 0; n <= n_max; ++n)
            rows_[static_cast<std::size_t>(n)].assign(
                static_cast<std::size_t>(n) + 1, BigComplex(prec_));
        rows_[0][0] = BigComplex::of(1, 0, prec_);
        for (int n = 1; n <= n_max; ++n) {
            for (int m = 1; m <= n / 2; ++m) {
                CompensatedComplexSum acc(prec_);
                for (int j = 2; j <= n - 2 * (m - 1); ++j) {
                    const BigComplex& prev = rows_[static_cast<std::size_t>(n - j)]
                                                  [static_cast<std::size_t>(m - 1)];
                    if (prev.is_zero()) continue;
                    BigComplex xj(BigReal(prec_), jet[static_cast<std::size_t>(j)]);
                    acc.add(BigReal::binomial(static_cast<unsigned long>(n - 1),
                                              static_cast<unsigned long>(j - 1), prec_) *
                            xj * prev);
                }
                rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)] = acc.value();
            }
        }
        for (int n = 0; n <= n_max; ++n) {
            CompensatedComplexSum acc(prec_);
            for (int m = 0; m <= n; ++m)
                acc.add(rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)]);
            r_.push_back(acc.value());
        }
    }

    int n_max() const { return n_max_; }
    mpfr_prec_t prec() const { return prec_; }
    const BigReal& t() const { return t_; }
    const BigReal& theta_prime() const { return theta_prime_; }

    const BigComplex& bell(int n, int m) const {
        return rows_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(m));
    }
    const BigComplex& R(int n) const { return r_.at(static_cast<std::size_t>(n)); }

    /// q_p = C(k, p) R_{k-p} for p = 0..k-2.
    std::vector<BigComplex> qp_coefficients(int k) const {
        if (k < 1 || k > n_max_)
            throw std::domain_error("qp_coefficients: require 1 <= k <= n_max");
        std::vector<BigComplex> q;
        q.reserve(k >= 2 ? static_cast<std::size_t>(k) - 1 : 0);
        for (int p = 0; p + 2 <= k; ++p)
            q.push_back(BigReal::binomial(static_cast<unsigned long>(k),
                                          static_cast<unsigned long>(p), prec_) *
                        R(k - p));
        return q;
    }

private:
    int n_max_;
    mpfr_prec_t prec_;
    BigReal t_;
    BigReal theta_prime_;
    std::vector<std::vector<BigComplex>> rows_;
    std::vector<BigComplex> r_;
};

namespace detail {

inline void enumerate_partitions(int remaining, int max_part, std::vector<int>& parts,
                                 const ThetaJet& jet, mpfr_prec_t prec, long n,
                                 CompensatedComplexSum& acc) {
    if (remaining == 0) {
        // weight = n! * prod_j (x_j / j!)^{m_j} / m_j!
        BigComplex w(BigReal::factorial(static_cast<unsigned long>(n), prec), BigReal(prec));
        int run = 0;
        int prev = 0;
        mpz_class denom(1);
        for (int part : parts) {
            BigComplex xj(BigReal(prec), jet[static_cast<std::size_t>(part)]);
            mpz_class fj;
            mpz_fac_ui(fj.get_mpz_t(), static_cast<unsigned long>(part));
            w = w * xj / BigReal::of(fj, prec);
            if (part == prev) {
                ++run;
            } else {
                prev = part;
                run = 1;
            }
            denom *= run;
        }
        acc.add(w / BigReal::of(denom, prec));
        return;
    }
    for (int j = std::min(remaining, max_part); j >= 2; --j) {
        if (remaining - j == 1) continue; // a leftover of 1 can never be completed
        parts.push_back(j);
        enumerate_partitions(remaining - j, j, parts, jet, prec, n, acc);
        parts.pop_back();
    }
}

} // namespace detail

/// Independent q_p construction by explicit enumeration of partitions of k-p
/// into parts >= 2.  Exponential in k; guarded to small k for cross-checks.
inline std::vector<BigComplex> qp_coefficients_enumeration(int k, const ThetaJet& jet) {
    if (k < 1 || k > 12)
        throw std::domain_error("qp_coefficients_enumeration: require 1 <= k <= 12");
    if (jet.order() < k)
        throw std::domain_error("qp_coefficients_enumeration: jet order below k");
    const mpfr_prec_t prec = jet.derivs[0].prec();
    std::vector<BigComplex> q;
    for (int p = 0; p + 2 <= k; ++p) {
        const int n = k - p;
        CompensatedComplexSum acc(prec);
        std::vector<int> parts;
        detail::enumerate_partitions(n, n, parts, jet, prec, n, acc);
        q.push_back(BigReal::binomial(static_cast<unsigned long>(k),
                                      static_cast<unsigned long>(p), prec) *
                    acc.value());
    }
    return q;
}

struct QpWeightedSum {
    BigReal sum;      // sum_p |q_p| theta'^p
    BigReal envelope; // (k/t) e^{k/(2 theta')} theta'^{k-1}
};

/// Size of the correction layer against the proven growth envelope.
inline QpWeightedSum qp_weighted_sum(const BellTable& table, int k) {
    const mpfr_prec_t prec = table.prec();
    std::vector<BigComplex> q = table.qp_coefficients(k);
    CompensatedSum acc(prec);
    BigReal tp_pow = BigReal::of(1, prec);
    for (std::size_t p = 0; p < q.size(); ++p) {
        acc.add(abs(q[p]) * tp_pow);
        tp_pow *= table.theta_prime();
    }
    BigReal kk = BigReal::of(k, prec);
    BigReal envelope = kk / table.t() *
                       exp(kk / mul_2si(table.theta_prime(), 1)) *
                       pow_ui(table.theta_prime(), static_cast<unsigned long>(k - 1));
    return {acc.value(), envelope};
}

} // namespace hardyz
