#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sgf {

/// Real function of the radius r in [0, 1].
using RadialFunction = std::function<double(double)>;

/// Samples of a radial function on a strictly increasing grid from 0 to 1.
class RadialProfile {
public:
    /// Throws DomainError unless radii start at 0, end at 1, increase strictly,
    /// and every value is finite.
    RadialProfile(std::vector<double> radii, std::vector<double> values);

    static RadialProfile sample(std::vector<double> radii, const RadialFunction& f);

    std::span<const double> radii() const noexcept { return radii_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return radii_.size(); }

    /// Piecewise-linear interpolant.
    double operator()(double r) const;
    RadialFunction as_function() const;

    /// ∫₀¹ r·p(r) dr of the linear interpolant, exact up to rounding.
    double weighted_integral() const;

    RadialProfile shifted(double offset) const;

private:
    std::vector<double> radii_;
    std::vector<double> values_;
};

/// Azimuthal speed on a radial grid; the full field is u_theta·(-x₂/r, x₁/r).
struct VelocityProfile {
    std::vector<double> radii;
    std::vector<double> u_theta;
};

/// n >= 2 equispaced radii 0, 1/(n-1), ..., 1.
std::vector<double> uniform_radii(std::size_t n);

}  // namespace sgf
