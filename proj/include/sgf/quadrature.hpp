#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "sgf/profile.hpp"

namespace sgf {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(std::size_t n);

/// Composite Gauss–Legendre rule on [0, 1]. Nodes ascend; weights sum to 1.
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> breakpoints, std::size_t nodes_per_panel);

    std::size_t panels() const noexcept { return breakpoints_.size() - 1; }
    std::size_t nodes_per_panel() const noexcept { return nodes_per_panel_; }
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Panel index of node i.
    std::size_t panel_of(std::size_t i) const noexcept { return i / nodes_per_panel_; }

private:
    std::vector<double> breakpoints_;
    std::size_t nodes_per_panel_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

inline constexpr std::size_t kDefaultPanels = 32;
inline constexpr std::size_t kDefaultNodesPerPanel = 16;

/// `panels` equal panels, 2 <= nodes_per_panel <= 32.
QuadratureRule gauss_rule(std::size_t panels, std::size_t nodes_per_panel);

/// Panels given by explicit breakpoints 0 = b₀ < b₁ < ... < b_P = 1.
QuadratureRule gauss_rule(std::vector<double> breakpoints, std::size_t nodes_per_panel);

/// 32 panels × 16 nodes.
const QuadratureRule& default_rule();

/// Rule whose panel edges include every kink (e.g. the samples of a
/// piecewise-linear profile), subdivided so no panel is wider than 1/max_panels.
QuadratureRule kink_aligned_rule(std::span<const double> kinks,
                                 std::size_t max_panels = kDefaultPanels,
                                 std::size_t nodes_per_panel = kDefaultNodesPerPanel);

/// ∫₀¹ f(x) dx. Throws DomainError on non-finite integrand values.
template <class F>
double integrate(const F& f, const QuadratureRule& rule);

/// ∫₀¹ f(r)·r dr.
template <class F>
double integrate_radial(const F& f, const QuadratureRule& rule);

/// sqrt(2π ∫₀¹ f(r)² r dr): the L²(D) norm of a radial function on the unit disk.
template <class F>
double l2_disk_norm(const F& f, const QuadratureRule& rule);

double l2_disk_norm(const RadialProfile& profile, const QuadratureRule& rule);

namespace detail {
[[noreturn]] void throw_non_finite(double x);
}

template <class F>
double integrate(const F& f, const QuadratureRule& rule) {
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = f(nodes[i]);
        if (!std::isfinite(v)) detail::throw_non_finite(nodes[i]);
        sum += weights[i] * v;
    }
    return sum;
}

template <class F>
double integrate_radial(const F& f, const QuadratureRule& rule) {
    return integrate([&f](double r) { return f(r) * r; }, rule);
}

template <class F>
double l2_disk_norm(const F& f, const QuadratureRule& rule) {
    const double sq = integrate_radial(
        [&f](double r) {
            const double v = f(r);
            return v * v;
        },
        rule);
    return std::sqrt(2.0 * std::numbers::pi * sq);
}

}  // namespace sgf
