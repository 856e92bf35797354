#pragma once

// Test-only reference computations, independent of the library's code paths.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>

namespace sgf::test {

// J_n(x) = (1/π) ∫₀^π cos(nτ − x sin τ) dτ. The integrand is smooth and
// periodic, so the trapezoid rule converges geometrically once the point
// count exceeds x.
inline double bessel_integral(int n, double x) {
    const std::size_t points = 200 + static_cast<std::size_t>(2.0 * x);
    const double h = std::numbers::pi / static_cast<double>(points);
    long double sum = 0.5L * (std::cos(0.0) + std::cos(n * std::numbers::pi));
    for (std::size_t i = 1; i < points; ++i) {
        const double tau = h * static_cast<double>(i);
        sum += std::cos(n * tau - x * std::sin(tau));
    }
    return static_cast<double>(sum * h / std::numbers::pi);
}

// Plain bisection on the integral representation over a sign-change bracket.
inline double bisect_j1_zero(double lo, double hi, double tol = 1e-13) {
    double flo = bessel_integral(1, lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_integral(1, mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline std::mt19937_64 make_rng(std::uint64_t seed = 20260) { return std::mt19937_64(seed); }

}  // namespace sgf::test
