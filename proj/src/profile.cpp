#include "sgf/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sgf/errors.hpp"

namespace sgf {

RadialProfile::RadialProfile(std::vector<double> radii, std::vector<double> values)
    : radii_(std::move(radii)), values_(std::move(values)) {
    if (radii_.size() != values_.size()) {
        throw DomainError("RadialProfile: radii and values differ in length");
    }
    if (radii_.size() < 2) throw DomainError("RadialProfile: need at least two samples");
    if (radii_.front() != 0.0 || radii_.back() != 1.0) {
        throw DomainError("RadialProfile: radii must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < radii_.size(); ++i) {
        if (!(radii_[i] > radii_[i - 1])) {
            throw DomainError("RadialProfile: radii must be strictly increasing (index " +
                              std::to_string(i) + ")");
        }
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("RadialProfile: non-finite value at index " + std::to_string(i));
        }
    }
}

RadialProfile RadialProfile::sample(std::vector<double> radii, const RadialFunction& f) {
    std::vector<double> values(radii.size());
    std::transform(radii.begin(), radii.end(), values.begin(), f);
    return RadialProfile(std::move(radii), std::move(values));
}

double RadialProfile::operator()(double r) const {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("RadialProfile: radius outside [0, 1]: " + std::to_string(r));
    }
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    if (it == radii_.end()) return values_.back();
    const auto hi = static_cast<std::size_t>(it - radii_.begin());
    const std::size_t lo = hi - 1;
    const double s = (r - radii_[lo]) / (radii_[hi] - radii_[lo]);
    return values_[lo] + s * (values_[hi] - values_[lo]);
}

RadialFunction RadialProfile::as_function() const {
    return [self = *this](double r) { return self(r); };
}

double RadialProfile::weighted_integral() const {
    // Simpson is exact for the quadratic r·(linear) on each segment.
    double total = 0.0;
    for (std::size_t i = 1; i < radii_.size(); ++i) {
        const double a = radii_[i - 1];
        const double b = radii_[i];
        const double m = 0.5 * (a + b);
        const double fm = 0.5 * (values_[i - 1] + values_[i]);
        total += (b - a) / 6.0 * (a * values_[i - 1] + 4.0 * m * fm + b * values_[i]);
    }
    return total;
}

RadialProfile RadialProfile::shifted(double offset) const {
    std::vector<double> values(values_);
    for (double& v : values) v += offset;
    return RadialProfile(radii_, std::move(values));
}

std::vector<double> uniform_radii(std::size_t n) {
    if (n < 2) throw std::invalid_argument("uniform_radii: need n >= 2");
    std::vector<double> r(n);
    const double h = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<double>(i) * h;
    r.back() = 1.0;
    return r;
}

}  // namespace sgf
