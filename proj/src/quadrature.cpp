#include "sgf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sgf/errors.hpp"

namespace sgf {

namespace detail {
void throw_non_finite(double x) {
    throw DomainError("quadrature: non-finite integrand at x = " + std::to_string(x));
}
}  // namespace detail

GaussLegendre gauss_legendre(std::size_t n) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussLegendre gl{std::vector<double>(n), std::vector<double>(n)};
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Newton on P_n from the Tricomi-style initial guess.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
    return gl;
}

QuadratureRule::QuadratureRule(std::vector<double> breakpoints, std::size_t nodes_per_panel)
    : breakpoints_(std::move(breakpoints)), nodes_per_panel_(nodes_per_panel) {
    if (nodes_per_panel_ < 2 || nodes_per_panel_ > 32) {
        throw std::invalid_argument("QuadratureRule: nodes_per_panel must be in [2, 32], got " +
                                    std::to_string(nodes_per_panel_));
    }
    if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
        throw std::invalid_argument("QuadratureRule: breakpoints must run from 0 to 1");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] > breakpoints_[i - 1])) {
            throw std::invalid_argument("QuadratureRule: breakpoints must be strictly increasing");
        }
    }
    const GaussLegendre ref = gauss_legendre(nodes_per_panel_);
    nodes_.reserve(panels() * nodes_per_panel_);
    weights_.reserve(panels() * nodes_per_panel_);
    for (std::size_t p = 0; p < panels(); ++p) {
        const double a = breakpoints_[p];
        const double b = breakpoints_[p + 1];
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < nodes_per_panel_; ++i) {
            nodes_.push_back(mid + half * ref.nodes[i]);
            weights_.push_back(half * ref.weights[i]);
        }
    }
}

QuadratureRule gauss_rule(std::size_t panels, std::size_t nodes_per_panel) {
    if (panels == 0) throw std::invalid_argument("gauss_rule: panels must be >= 1");
    std::vector<double> bp(panels + 1);
    for (std::size_t p = 0; p <= panels; ++p) {
        bp[p] = static_cast<double>(p) / static_cast<double>(panels);
    }
    bp.back() = 1.0;
    return QuadratureRule(std::move(bp), nodes_per_panel);
}

QuadratureRule gauss_rule(std::vector<double> breakpoints, std::size_t nodes_per_panel) {
    return QuadratureRule(std::move(breakpoints), nodes_per_panel);
}

const QuadratureRule& default_rule() {
    static const QuadratureRule rule = gauss_rule(kDefaultPanels, kDefaultNodesPerPanel);
    return rule;
}

QuadratureRule kink_aligned_rule(std::span<const double> kinks, std::size_t max_panels,
                                 std::size_t nodes_per_panel) {
    if (max_panels == 0) throw std::invalid_argument("kink_aligned_rule: max_panels must be >= 1");
    std::vector<double> edges{0.0, 1.0};
    for (double k : kinks) {
        if (k > 0.0 && k < 1.0) edges.push_back(k);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const double max_width = 1.0 / static_cast<double>(max_panels);
    std::vector<double> bp{0.0};
    for (std::size_t i = 1; i < edges.size(); ++i) {
        const double a = edges[i - 1];
        const double b = edges[i];
        const auto pieces = static_cast<std::size_t>(std::ceil((b - a) / max_width - 1e-12));
        for (std::size_t s = 1; s < pieces; ++s) {
            bp.push_back(a + (b - a) * static_cast<double>(s) / static_cast<double>(pieces));
        }
        bp.push_back(b);
    }
    return QuadratureRule(std::move(bp), nodes_per_panel);
}

double l2_disk_norm(const RadialProfile& profile, const QuadratureRule& rule) {
    return l2_disk_norm([&profile](double r) { return profile(r); }, rule);
}

}  // namespace sgf
