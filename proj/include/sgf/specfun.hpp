#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sgf {

// Bessel functions of the first kind, orders 0 and 1, for real x >= 0.
// Power series (compensated) up to kSeriesCutoff, Hankel asymptotic expansion
// beyond. Absolute accuracy is better than 1e-10 on [0, 200].
inline constexpr double kSeriesCutoff = 12.0;

double bessel_j0(double x);
double bessel_j1(double x);

/// d/dx J1(x) = J0(x) - J1(x)/x, with the limit 1/2 at the origin.
double bessel_j1_prime(double x);

/// Σ_{m≥0} (x/2)^{2m} / (m!)², i.e. I0(x). Defined for 0 <= x <= 100.
double modified_i0(double x);

/// Ordered positive zeros of J1 with a certified absolute error bound.
class BesselZeroTable {
public:
    BesselZeroTable() = default;
    BesselZeroTable(std::vector<double> zeros, double tol);

    std::span<const double> zeros() const noexcept { return zeros_; }
    double tol() const noexcept { return tol_; }
    std::size_t size() const noexcept { return zeros_.size(); }
    bool empty() const noexcept { return zeros_.empty(); }
    /// 1-based, matching j_1 < j_2 < ...
    double j(std::size_t k) const { return zeros_.at(k - 1); }

    /// Checks ordering, residual and bracket invariants. Returns false on the
    /// first violation.
    bool satisfies_invariants() const;

private:
    std::vector<double> zeros_;
    double tol_ = 1e-12;
};

/// First `count` positive zeros of J1, each located to within `tol` (tol >= 1e-14).
BesselZeroTable j1_zeros(std::size_t count, double tol = 1e-12);

}  // namespace sgf
