#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prodmat/accumulate.hpp"
#include "prodmat/gamma.hpp"

namespace prodmat {

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleSeparationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integer-parameter Meijer G instance,
//   G^{m,n}_{p,q}(a_1..a_p; b_1..b_q | z)
//     = (1/2*pi*i) Int du z^u prod_{i<=m} Gamma(b_i-u) prod_{i<=n} Gamma(1-a_i+u)
//                         / [prod_{i>n} Gamma(a_i-u) prod_{i>m} Gamma(1-b_i+u)].
// Only the shapes the product-matrix formulas instantiate are admitted.
struct MeijerGParams {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<int> a;
    std::vector<int> b;

    void validate() const {
        if (m < 0 || n < 0 || m > q || n > p)
            throw std::invalid_argument("MeijerGParams: need m <= q, n <= p");
        if (int(a.size()) != p || int(b.size()) != q)
            throw std::invalid_argument("MeijerGParams: a, b sizes must be p, q");
        const bool admitted =
            (n == 0 && p == 0 && m == q && m >= 1) ||              // (M,0,0,M)
            (m == 1 && n == 0 && p == 1 && q >= 2) ||              // (1,0,1,M+1)
            (n == 1 && p == 1 && q == m + 1 && m >= 1) ||          // (M,1,1,M+1)
            (n == 1 && p == 2 && q == m && m >= 3) ||              // (M+2,1,2,M+2)
            (n == 2 && p == 3 && q == m + 1 && m >= 3) ||          // (M+2,2,3,M+3)
            (m == 1 && n == 2 && p == 2 && q == 2);                // (1,2,2,2)
        if (!admitted)
            throw std::invalid_argument("MeijerGParams: shape (" + std::to_string(m) + "," +
                                        std::to_string(n) + "," + std::to_string(p) + "," +
                                        std::to_string(q) + ") not admitted");
    }
};

// Controls for the Mellin-Barnes line quadrature.  half_length and nodes are
// starting values; the evaluator doubles the truncation until the tail bound
// is below tol and halves the spacing until two estimates agree.
struct ContourConfig {
    double tol = 1e-12;
    double half_length = 16.0;
    int nodes = 256;
    double offset = std::numeric_limits<double>::quiet_NaN();  // NaN: choose from poles
    long max_nodes = 1 << 21;
};

// mantissa * exp(log_scale); the kernel sums need G values whose magnitude
// exceeds double range once the indices grow.
struct ScaledReal {
    double mantissa = 0.0;
    double log_scale = 0.0;
    double value() const { return mantissa * std::exp(log_scale); }
    double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
};

namespace detail {

// Separating offset for the integration line.  Pole multiplicities are
// counted net of the zeros contributed by denominator gamma factors on the
// same lattice; that is what keeps the (M+2,2,3,M+3) shape separable at k = n
// where a raw count would report a collision at u = 0.
inline double contour_offset(const MeijerGParams& g) {
    const long NONE = std::numeric_limits<long>::min();
    long left_max = NONE;
    // candidates for the largest left pole: x <= a_i - 1 (i < n)
    long hi = NONE, lo = std::numeric_limits<long>::max();
    for (int i = 0; i < g.n; ++i) hi = std::max(hi, long(g.a[i]) - 1);
    for (int x : g.a) lo = std::min(lo, long(x) - 2);
    for (int x : g.b) lo = std::min(lo, long(x) - 2);
    if (g.n > 0) {
        for (long x = hi; x >= lo && left_max == NONE; --x) {
            int net = 0;
            for (int i = 0; i < g.n; ++i) net += (x <= g.a[i] - 1);
            for (int i = g.m; i < g.q; ++i) net -= (x <= g.b[i] - 1);
            if (net > 0) left_max = x;
        }
    }
    long right_min = NONE;
    long rlo = std::numeric_limits<long>::max(), rhi = NONE;
    for (int i = 0; i < g.m; ++i) rlo = std::min(rlo, long(g.b[i]));
    for (int x : g.a) rhi = std::max(rhi, long(x) + 2);
    for (int x : g.b) rhi = std::max(rhi, long(x) + 2);
    for (long x = rlo; x <= rhi && right_min == NONE; ++x) {
        int net = 0;
        for (int i = 0; i < g.m; ++i) net += (x >= g.b[i]);
        for (int i = g.n; i < g.p; ++i) net -= (x >= g.a[i]);
        if (net > 0) right_min = x;
    }
    if (right_min == NONE)
        throw PoleSeparationError("meijer_g: no right pole family");
    if (left_max == NONE) return double(right_min) - 0.5;
    if (left_max >= right_min)
        throw PoleSeparationError("meijer_g: pole families overlap, no separating line");
    return 0.5 * double(left_max + right_min);
}

inline std::complex<double> log_integrand(const MeijerGParams& g, double log_z,
                                          std::complex<double> u) {
    std::complex<double> acc = u * log_z;
    for (int i = 0; i < g.m; ++i) acc += log_gamma(double(g.b[i]) - u);
    for (int i = 0; i < g.n; ++i) acc += log_gamma(1.0 - double(g.a[i]) + u);
    for (int i = g.n; i < g.p; ++i) acc -= log_gamma(double(g.a[i]) - u);
    for (int i = g.m; i < g.q; ++i) acc -= log_gamma(1.0 - double(g.b[i]) + u);
    return acc;
}

// Vertical-line trapezoid for shapes whose integrand decays like
// exp(-kappa |t|), kappa = (2(m+n)-p-q) pi / 2.
inline ScaledReal meijer_contour(const MeijerGParams& g, double z, const ContourConfig& cfg) {
    const int twodelta = 2 * (g.m + g.n) - g.p - g.q;
    if (twodelta <= 0)
        throw PoleSeparationError("meijer_g: integrand does not decay on a vertical line");
    const double kappa = 0.5 * M_PI * double(twodelta);
    const double c = std::isnan(cfg.offset) ? contour_offset(g) : cfg.offset;
    const double log_z = std::log(z);

    auto logF = [&](double t) { return log_integrand(g, log_z, {c, t}); };

    // grow the truncation until the exponential tail is negligible
    double T = std::max(cfg.half_length, 8.0);
    double scale = std::max(logF(0.0).real(), logF(T / 2).real());
    long evals = 0;
    for (;;) {
        const double fT = logF(T).real();
        scale = std::max(scale, fT);
        const double tail = std::exp(fT - scale) * 2.0 / (M_PI * kappa * 0.5);
        if (tail <= 0.25 * cfg.tol * std::exp(-scale) || tail <= 1e-18) break;
        T *= 2.0;
        if (++evals > 40 || T > 65536.0)
            throw NonConvergenceError("meijer_g: tail bound not met");
    }

    const double h0 = std::min({T / std::max(cfg.nodes, 64), 0.25,
                                M_PI / (4.0 * (1.0 + std::abs(log_z)))});
    auto gval = [&](double t) {
        const std::complex<double> lf = logF(t);
        const double re = lf.real() - scale;
        return re < -745.0 ? 0.0 : std::exp(re) * std::cos(lf.imag());
    };

    // trapezoid of the even integrand: I(h) = h (g(0) + 2 sum_{k>=1} g(kh))
    double h = h0;
    long K = std::lround(std::ceil(T / h));
    h = T / double(K);
    CompensatedSum s0;
    for (long k = 1; k <= K; ++k) s0.add(gval(double(k) * h));
    evals += K;
    double Ih = h * (gval(0.0) + 2.0 * s0.value());
    double prev = std::numeric_limits<double>::infinity();
    int refinements = 0;
    for (;;) {
        const double diff_abs = std::abs(Ih - prev) * std::exp(scale) / (2.0 * M_PI);
        const double Gmag = std::abs(Ih) * std::exp(scale) / (2.0 * M_PI);
        if (refinements >= 2 && diff_abs <= std::max(0.5 * cfg.tol, 1e-14 * Gmag)) break;
        if (evals > cfg.max_nodes)
            throw NonConvergenceError("meijer_g: node budget exhausted before tolerance");
        prev = Ih;
        CompensatedSum odd;
        for (long k = 0; k < K; ++k) odd.add(gval((double(k) + 0.5) * h));
        evals += K;
        Ih = 0.5 * Ih + 0.5 * h * 2.0 * odd.value();
        h *= 0.5;
        K *= 2;
        ++refinements;
    }
    return {Ih / (2.0 * M_PI), scale};
}

// Terminating residue sum for G^{1,0}_{1,q}: the only admitted shape whose
// integrand grows on vertical lines.  The contour closes around the finitely
// many poles of Gamma(b_1 - u) not cancelled by Gamma(a_1 - u), so the value
// is the polynomial  sum_j z^(b1+j) (-1)^j / (j! Gamma(a1-b1-j) prod_{i>1} Gamma(1-b_i+b1+j)).
inline ScaledReal meijer_polynomial(const MeijerGParams& g, double z) {
    const int b1 = g.b[0], a1 = g.a[0];
    const int terms = a1 - b1;
    if (terms < 1)
        throw std::invalid_argument("meijer_g: non-terminating G^{1,0}_{1,q}");
    const double log_z = std::log(z);
    CompensatedSum acc;
    for (int j = 0; j < terms; ++j) {
        double lg = double(b1 + j) * log_z - log_factorial(j) - log_factorial(terms - 1 - j);
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        bool dead = false;
        for (int i = 1; i < g.q; ++i) {
            const int arg = 1 - g.b[i] + b1 + j;
            if (arg <= 0) { dead = true; break; }
            lg -= log_factorial(arg - 1);
        }
        if (!dead) acc.add(sign * std::exp(lg));
    }
    return {acc.value(), 0.0};
}

}  // namespace detail

inline ScaledReal meijer_g_scaled(const MeijerGParams& params, double z,
                                  const ContourConfig& cfg = {}) {
    params.validate();
    if (!(z > 0.0)) throw std::domain_error("meijer_g: argument must be positive");
    if (cfg.tol <= 0.0 || cfg.half_length <= 0.0 || cfg.nodes < 64)
        throw std::invalid_argument("meijer_g: bad ContourConfig");
    if (params.m == 1 && params.n == 0 && params.p == 0 && params.q == 1)
        return {1.0, double(params.b[0]) * std::log(z) - z};
    if (params.m == 1 && params.n == 0 && params.p == 1)
        return detail::meijer_polynomial(params, z);
    return detail::meijer_contour(params, z, cfg);
}

inline double meijer_g(const MeijerGParams& params, double z, const ContourConfig& cfg = {}) {
    return meijer_g_scaled(params, z, cfg).value();
}

// Fast path for the weight class G^{M,0}_{0,M}(-; b_1..b_M | x); M = 1 is the
// exact elementary case x^b e^{-x}.
inline ScaledReal meijer_g_M0_scaled(std::span<const int> b, double x,
                                     const ContourConfig& cfg = {}) {
    if (b.empty()) throw std::invalid_argument("meijer_g_M0: empty parameter list");
    if (!(x > 0.0)) throw std::domain_error("meijer_g_M0: argument must be positive");
    if (b.size() == 1) return {1.0, double(b[0]) * std::log(x) - x};
    MeijerGParams g;
    g.m = g.q = int(b.size());
    g.b.assign(b.begin(), b.end());
    return detail::meijer_contour(g, x, cfg);
}

inline double meijer_g_M0(std::span<const int> b, double x, const ContourConfig& cfg = {}) {
    return meijer_g_M0_scaled(b, x, cfg).value();
}

inline double meijer_g_M0(const std::vector<int>& b, double x, const ContourConfig& cfg = {}) {
    return meijer_g_M0(std::span<const int>(b), x, cfg);
}

}  // namespace prodmat
