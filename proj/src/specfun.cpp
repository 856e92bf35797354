#include "sgf/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sgf/errors.hpp"

namespace sgf {

namespace {

void require_domain(double x, const char* fn) {
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError(std::string(fn) + ": argument must be finite and >= 0, got " +
                          std::to_string(x));
    }
}

// Neumaier variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

constexpr double kTermFloor = 1e-18;
constexpr int kMaxSeriesTerms = 80;

// Σ (-1)^m q^m / (m! (m+order)!) with q = x²/4.
double series(double x, int order) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    if (order == 1) term = 0.5 * x;
    CompensatedSum sum;
    sum.add(term);
    const double peak = std::sqrt(q);
    for (int m = 1; m < kMaxSeriesTerms; ++m) {
        term *= -q / (static_cast<double>(m) * static_cast<double>(m + order));
        sum.add(term);
        if (m > peak && std::abs(term) < kTermFloor) break;
    }
    return sum.value();
}

// Hankel expansion J_n(x) ~ sqrt(2/(πx)) (P cos χ - Q sin χ), χ = x - (n/2 + 1/4)π.
double asymptotic(double x, int order) {
    const double mu = 4.0 * order * order;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev_abs = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 64; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) / (8.0 * k * x);
        const double next_abs = std::abs(next);
        // Stop at the smallest term of the divergent series.
        if (next_abs > prev_abs || next_abs < kTermFloor) break;
        term = next;
        prev_abs = next_abs;
        // a_k / x^k enters P (k even) or Q (k odd) with sign (-1)^{floor(k/2)}.
        const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
        if (k % 2 == 0) {
            p += signed_term;
        } else {
            q += signed_term;
        }
    }
    const double c = std::cos(x);
    const double s = std::sin(x);
    double cos_chi;
    double sin_chi;
    if (order == 0) {
        cos_chi = (c + s) * std::numbers::sqrt2 * 0.5;
        sin_chi = (s - c) * std::numbers::sqrt2 * 0.5;
    } else {
        cos_chi = (s - c) * std::numbers::sqrt2 * 0.5;
        sin_chi = -(s + c) * std::numbers::sqrt2 * 0.5;
    }
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

double bessel_j0(double x) {
    require_domain(x, "bessel_j0");
    return x <= kSeriesCutoff ? series(x, 0) : asymptotic(x, 0);
}

double bessel_j1(double x) {
    require_domain(x, "bessel_j1");
    return x <= kSeriesCutoff ? series(x, 1) : asymptotic(x, 1);
}

double bessel_j1_prime(double x) {
    require_domain(x, "bessel_j1_prime");
    if (x == 0.0) return 0.5;
    return bessel_j0(x) - bessel_j1(x) / x;
}

double modified_i0(double x) {
    require_domain(x, "modified_i0");
    if (x > 100.0) {
        throw std::overflow_error("modified_i0: argument above supported range 100, got " +
                                  std::to_string(x));
    }
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1;; ++m) {
        term *= q / (static_cast<double>(m) * m);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

BesselZeroTable::BesselZeroTable(std::vector<double> zeros, double tol)
    : zeros_(std::move(zeros)), tol_(tol) {
    if (!(tol_ > 0.0)) throw std::invalid_argument("BesselZeroTable: tol must be positive");
}

bool BesselZeroTable::satisfies_invariants() const {
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        const double z = zeros_[i];
        const double k = static_cast<double>(i + 1);
        if (i + 1 < zeros_.size() && !(z < zeros_[i + 1])) return false;
        if (!(z > k * std::numbers::pi && z < (k + 1.0) * std::numbers::pi + 1.0)) return false;
        if (!(std::abs(bessel_j1(z)) < 10.0 * tol_ * std::abs(bessel_j1_prime(z)))) return false;
    }
    return true;
}

BesselZeroTable j1_zeros(std::size_t count, double tol) {
    if (!(tol >= 1e-14) || !std::isfinite(tol)) {
        throw std::invalid_argument("j1_zeros: tol must be >= 1e-14");
    }
    std::vector<double> zeros;
    zeros.reserve(count);
    double certified = tol;
    for (std::size_t i = 1; i <= count; ++i) {
        // McMahon: j_k ≈ β - 3/(8β), β = (k + 1/4)π. Neighbouring zeros are ~π apart.
        const double beta = (static_cast<double>(i) + 0.25) * std::numbers::pi;
        const double estimate = beta - 3.0 / (8.0 * beta);
        double lo = estimate - std::numbers::pi / 8.0;
        double hi = estimate + std::numbers::pi / 8.0;
        double f_lo = bessel_j1(lo);
        const double f_hi = bessel_j1(hi);
        if (f_lo * f_hi >= 0.0) {
            throw std::logic_error("j1_zeros: no sign change in McMahon bracket for k = " +
                                   std::to_string(i));
        }
        while (hi - lo > 2.0 * tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;  // interval exhausted at this magnitude
            const double f_mid = bessel_j1(mid);
            if (f_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((f_mid < 0.0) == (f_lo < 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        certified = std::max(certified, 0.5 * (hi - lo));
        zeros.push_back(0.5 * (lo + hi));
    }
    return BesselZeroTable(std::move(zeros), certified);
}

}  // namespace sgf
