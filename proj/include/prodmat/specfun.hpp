#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "prodmat/accumulate.hpp"
#include "prodmat/gamma.hpp"

namespace prodmat {

// Monic associated Laguerre polynomial
//   Ltilde_n^nu(t) = sum_k (-1)^(n+k)/(n-k)! * (n+nu)!/(k+nu)! * n!/k! * t^k,
// leading coefficient exactly 1.  Terms are chained by their ratio so no
// factorial is ever formed explicitly.
inline double laguerre_monic(int n, int nu, double t) {
    if (n < 0 || nu < 0) throw std::domain_error("laguerre_monic: n, nu >= 0");
    if (n == 0) return 1.0;
    // term_0 = (-1)^n (n+nu)!/nu!, ratio term_{k+1}/term_k = -(n-k) t / ((k+1+nu)(k+1))
    double term = (n % 2 == 0) ? 1.0 : -1.0;
    for (int j = 1; j <= n; ++j) term *= double(nu + j);
    CompensatedSum acc;
    acc.add(term);
    for (int k = 0; k < n; ++k) {
        term *= -double(n - k) * t / (double(k + 1 + nu) * double(k + 1));
        acc.add(term);
    }
    return acc.value();
}

// Terminating generalised hypergeometric polynomial
//   1F_M(-n; 1+nu_M, ..., 1+nu_1; s) = sum_k (-1)^k n!/((n-k)! k!) s^k / prod_m (1+nu_m)_k.
inline double hyper_1FM_poly(int n, std::span<const int> shifts, double s) {
    if (n < 0) throw std::domain_error("hyper_1FM_poly: n >= 0");
    double term = 1.0;
    CompensatedSum acc;
    acc.add(term);
    for (int k = 0; k < n; ++k) {
        double denom = double(k + 1);
        for (int nu : shifts) denom *= double(nu + 1 + k);
        term *= -double(n - k) * s / denom;
        acc.add(term);
    }
    return acc.value();
}

inline double hyper_1FM_poly(int n, const std::vector<int>& shifts, double s) {
    return hyper_1FM_poly(n, std::span<const int>(shifts), s);
}

}  // namespace prodmat
