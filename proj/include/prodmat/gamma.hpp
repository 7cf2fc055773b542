#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace prodmat {

// Value stored as sign * exp(log_abs).  Factorial products such as h_n or the
// jpdf normalisation overflow double long before their ratios do, so every
// such product is assembled in this form and exponentiated once.
struct LogValue {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogValue from(double v) {
        if (v == 0.0) return {};
        return {std::log(std::abs(v)), v > 0 ? 1 : -1};
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    LogValue operator*(const LogValue& o) const {
        if (sign == 0 || o.sign == 0) return {};
        return {log_abs + o.log_abs, sign * o.sign};
    }
    LogValue operator/(const LogValue& o) const {
        if (sign == 0) return {};
        return {log_abs - o.log_abs, sign * o.sign};
    }
};

namespace detail {

// Lanczos coefficients, g = 7, n = 9.
inline constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma for Re(z) >= 0.5 via Lanczos.  Accurate to ~1e-14 relative.
inline std::complex<double> log_gamma_lanczos(std::complex<double> z) {
    std::complex<double> acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z - 1.0 + double(i));
    const std::complex<double> t = z + 6.5;  // z + g - 0.5
    return 0.91893853320467274178 /* ln sqrt(2 pi) */
           + (z - 0.5) * std::log(t) - t + std::log(acc);
}

// log sin(pi z), stable for large |Im z|; branch is irrelevant to callers
// that exponentiate the result.
inline std::complex<double> log_sin_pi(std::complex<double> z) {
    const std::complex<double> ipi(0.0, M_PI);
    if (z.imag() > 0.0) {
        // sin(pi z) = exp(-i pi z) (1 - exp(2 i pi z)) * (i/2)
        return -ipi * z + std::log(1.0 - std::exp(2.0 * ipi * z))
               + std::log(std::complex<double>(0.0, 0.5));
    }
    // sin(pi z) = exp(i pi z) (1 - exp(-2 i pi z)) / (2i)
    return ipi * z + std::log(1.0 - std::exp(-2.0 * ipi * z))
           - std::log(std::complex<double>(0.0, 2.0));
}

}  // namespace detail

// Principal-branch log of Gamma(z).  Poles at non-positive integers are
// rejected.  Real part is exact to ~1e-14 relative; imaginary part may differ
// from the analytic LogGamma continuation by multiples of 2*pi, which is
// immaterial once exponentiated.
inline std::complex<double> log_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::domain_error("log_gamma: pole at non-positive integer");
    if (z.imag() == 0.0 && z.real() > 0.0)
        return {std::lgamma(z.real()), 0.0};
    if (z.real() >= 0.5) return detail::log_gamma_lanczos(z);
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    return 1.1447298858494001741 /* ln pi */ - detail::log_sin_pi(z)
           - detail::log_gamma_lanczos(1.0 - z);
}

inline std::complex<double> log_gamma(double x) {
    return log_gamma(std::complex<double>(x, 0.0));
}

// Gamma(x) for real x as (sign, log|Gamma|); sign of Gamma alternates between
// consecutive negative integers.
inline LogValue gamma_signed(double x) {
    if (x > 0.0) return {std::lgamma(x), 1};
    if (x == std::floor(x))
        throw std::domain_error("gamma_signed: pole at non-positive integer");
    const int sign = (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
    return {std::lgamma(x), sign};
}

// 1/Gamma(x), entire: returns exactly 0 at the poles of Gamma.  That zero is
// what removes terms from the closed moment sums.
inline double reciprocal_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    const LogValue g = gamma_signed(x);
    return g.sign * std::exp(-g.log_abs);
}

// log(n!)
inline double log_factorial(int n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    return std::lgamma(double(n) + 1.0);
}

}  // namespace prodmat
