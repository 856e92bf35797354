#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "sgf/errors.hpp"
#include "sgf/quadrature.hpp"
#include "sgf/specfun.hpp"

using namespace sgf;

namespace {
double sum_weights(const QuadratureRule& rule) {
    double s = 0.0;
    for (double w : rule.weights()) s += w;
    return s;
}
}  // namespace

TEST_CASE("rule structure") {
    for (std::size_t n : {2u, 3u, 7u, 16u, 32u}) {
        const QuadratureRule rule = gauss_rule(5, n);
        CHECK(rule.size() == 5 * n);
        CHECK(std::abs(sum_weights(rule) - 1.0) < 1e-13);
        const auto x = rule.nodes();
        CHECK(x.front() > 0.0);
        CHECK(x.back() < 1.0);
        for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] > x[i - 1]);
        for (double w : rule.weights()) CHECK(w > 0.0);
    }
    CHECK_THROWS_AS(gauss_rule(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(gauss_rule(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(gauss_rule(4, 33), std::invalid_argument);
}

TEST_CASE("exactness through degree 2n-1 per panel") {
    CHECK(std::abs(integrate([](double x) { return x * x * x; }, gauss_rule(1, 2)) - 0.25) < 1e-15);
    CHECK(std::abs(integrate([](double) { return 1.0; }, gauss_rule(4, 8)) - 1.0) < 1e-14);
    for (std::size_t n = 2; n <= 32; n += 3) {
        const QuadratureRule rule = gauss_rule(1, n);
        const int deg = static_cast<int>(2 * n - 1);
        const double got = integrate([deg](double x) { return std::pow(x, deg); }, rule);
        CHECK(std::abs(got - 1.0 / (deg + 1)) < 1e-12);
    }
}

TEST_CASE("integrate_radial examples") {
    const QuadratureRule& rule = default_rule();
    CHECK(std::abs(integrate_radial([](double) { return 1.0; }, rule) - 0.5) < 1e-14);
    CHECK(std::abs(integrate_radial([](double r) { return 1.0 - 2.0 * r * r; }, rule)) < 1e-14);

    const double j1 = j1_zeros(1).j(1);
    const double expected = 0.5 * std::pow(test::bessel_integral(0, j1), 2);
    CHECK(std::abs(expected - 0.08110757) < 1e-8);
    const auto sq = [j1](double r) { return std::pow(bessel_j0(j1 * r), 2); };
    const double coarse = integrate_radial(sq, rule);
    const double fine = integrate_radial(sq, gauss_rule(64, 16));
    CHECK(std::abs(coarse - expected) < 1e-12);
    CHECK(std::abs(coarse - fine) < 1e-13);
}

TEST_CASE("mode integral of the third zero vanishes") {
    const double j3 = j1_zeros(3).j(3);
    const double got = integrate([j3](double r) { return r * bessel_j0(j3 * r); }, gauss_rule(8, 16));
    CHECK(std::abs(got) < 1e-10);
    CHECK(std::abs(got - bessel_j1(j3) / j3) < 1e-10);
}

TEST_CASE("default rule resolves every mode up to k = 64") {
    const BesselZeroTable zeros = j1_zeros(64);
    for (double j : zeros.zeros()) {
        const double got = integrate_radial([j](double r) { return std::pow(bessel_j0(j * r), 2); },
                                            default_rule());
        CHECK(std::abs(got - 0.5 * std::pow(bessel_j0(j), 2)) < 1e-8);
    }
}

TEST_CASE("l2_disk_norm") {
    const QuadratureRule& rule = default_rule();
    CHECK(l2_disk_norm([](double) { return 0.0; }, rule) == 0.0);
    CHECK(std::abs(l2_disk_norm([](double) { return 1.0; }, rule) - std::sqrt(std::numbers::pi)) <
          1e-14);
    const double j1 = j1_zeros(1).j(1);
    const double got = l2_disk_norm([j1](double r) { return bessel_j0(j1 * r); }, rule);
    CHECK(std::abs(got - std::sqrt(std::numbers::pi * 0.16221513082668565)) < 1e-12);
    CHECK(std::abs(got - 0.7138) < 1e-4);

    const RadialProfile flat({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
    CHECK(std::abs(l2_disk_norm(flat, rule) - std::sqrt(std::numbers::pi)) < 1e-14);
}

TEST_CASE("non-finite integrand is reported") {
    const auto bad = [](double r) {
        return r > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    };
    CHECK_THROWS_AS(integrate_radial(bad, default_rule()), DomainError);
    CHECK_THROWS_AS(l2_disk_norm(bad, default_rule()), DomainError);
}

TEST_CASE("linearity") {
    auto rng = test::make_rng(3);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    const auto f = [](double r) { return std::sin(3.0 * r) + r * r; };
    const auto g = [](double r) { return std::exp(-r) * std::cos(7.0 * r); };
    for (int i = 0; i < 20; ++i) {
        const double a = coef(rng);
        const double b = coef(rng);
        const double lhs =
            integrate_radial([&](double r) { return a * f(r) + b * g(r); }, default_rule());
        const double rhs = a * integrate_radial(f, default_rule()) + b * integrate_radial(g, default_rule());
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("refinement with an interior kink converges at the expected rate") {
    // |r - 0.3|^1.5 has an unbounded second derivative off the panel edges, so the
    // composite rule converges like h^2.5 instead of spectrally.
    const auto f = [](double r) { return std::pow(std::abs(r - 0.3), 1.5); };
    const double exact = std::pow(0.7, 3.5) / 3.5 + 0.3 * std::pow(0.7, 2.5) / 2.5 +
                         0.3 * std::pow(0.3, 2.5) / 2.5 - std::pow(0.3, 3.5) / 3.5;
    for (std::size_t p = 3; p <= 192; p *= 2) {
        const double err = std::abs(integrate_radial(f, gauss_rule(p, 4)) - exact);
        CHECK(err * std::pow(static_cast<double>(p), 2.5) < 1e-3);
    }
    CHECK(std::abs(integrate_radial(f, gauss_rule(192, 4)) - exact) < 1e-10);
    CHECK(std::abs(integrate_radial(f, kink_aligned_rule(std::vector<double>{0.0, 0.3, 1.0})) - exact) < 1e-10);
}

TEST_CASE("kink-aligned rule puts panel edges on the kinks") {
    const std::vector<double> kinks{0.0, 0.123, 0.5, 0.77, 1.0};
    const QuadratureRule rule = kink_aligned_rule(kinks, 8, 6);
    const auto bp = rule.breakpoints();
    for (double k : kinks) CHECK(std::find(bp.begin(), bp.end(), k) != bp.end());
    for (std::size_t i = 1; i < bp.size(); ++i) CHECK(bp[i] - bp[i - 1] <= 1.0 / 8 + 1e-15);
    CHECK(std::abs(sum_weights(rule) - 1.0) < 1e-13);
    // Exact for the piecewise-linear hat with apex at a kink.
    const auto hat = [](double r) { return r < 0.5 ? r : 1.0 - r; };
    CHECK(std::abs(integrate(hat, rule) - 0.25) < 1e-15);
}
