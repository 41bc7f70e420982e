#pragma once

// Modified Bessel functions K_nu for the half-integer orders used by the
// relativistic kernel, plus K_1. K_{1/2} and K_{3/2} are closed forms. K_1
// uses the ascending series for z <= 9.5 and the large-z asymptotic expansion
// beyond; the seam is placed where both branches carry comparable error
// (series cancellation grows like e^{2z} eps, the optimally truncated
// asymptotic floor decays like e^{-2z}).

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symg {

namespace detail {

inline constexpr double kBesselK1Seam = 9.5;

// Ascending series: K_1(z) = ln(z/2) I_1(z) + 1/z
//   - (z/4) sum_k [psi(k+1) + psi(k+2)] (z^2/4)^k / (k! (k+1)!).
inline double bessel_k1_series(double z) {
    const double q = 0.25 * z * z;
    const double lz = std::log(0.5 * z);
    double i1 = 0.0;           // I_1(z) / (z/2)
    double s = 0.0;            // the psi-weighted sum
    double term = 1.0;         // (z^2/4)^k / (k! (k+1)!)
    double psi_a = -std::numbers::egamma;        // psi(k+1)
    double psi_b = 1.0 - std::numbers::egamma;   // psi(k+2)
    for (int k = 0; k < 200; ++k) {
        i1 += term;
        s += term * (psi_a + psi_b);
        const double next = term * q / ((k + 1.0) * (k + 2.0));
        psi_a += 1.0 / (k + 1.0);
        psi_b += 1.0 / (k + 2.0);
        if (next < 1e-20 * (std::abs(s) + 1.0) && k > 3) break;
        term = next;
    }
    return lz * (0.5 * z) * i1 + 1.0 / z - 0.25 * z * s;
}

// K_1(z) ~ sqrt(pi/(2z)) e^{-z} [1 + 3/(8z) - 15/(128 z^2) + ...];
// stop at the smallest term (the expansion is asymptotic, not convergent).
inline double bessel_k1_asymptotic(double z) {
    const double mu = 4.0;  // 4 nu^2 for nu = 1
    double term = 1.0, sum = 1.0, prev = 1e300;
    for (int k = 1; k <= 30; ++k) {
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * z * k);
        if (std::abs(term) >= prev) break;
        sum += term;
        prev = std::abs(term);
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) * sum;
}

}  // namespace detail

/// K_nu(z) for nu in {1/2, 1, 3/2}, z > 0. Asymptotic to sqrt(pi/(2z)) e^{-z}.
inline double bessel_k(double nu, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("bessel_k: z must be > 0");
    const double pref = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
    if (nu == 0.5) return pref;
    if (nu == 1.5) return pref * (1.0 + 1.0 / z);
    if (nu == 1.0)
        return z <= detail::kBesselK1Seam ? detail::bessel_k1_series(z)
                                          : detail::bessel_k1_asymptotic(z);
    throw std::invalid_argument("bessel_k: unsupported order");
}

}  // namespace symg
