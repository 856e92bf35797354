#include "sgf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sgf/errors.hpp"

namespace sgf {

namespace {

void require_radius(double r, const char* fn) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError(std::string(fn) + ": radius outside [0, 1]: " + std::to_string(r));
    }
}

void require_time(double t, const char* fn) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(fn) + ": time must be finite and >= 0: " + std::to_string(t));
    }
}

std::string describe_mean(double mean, double tol) {
    std::ostringstream os;
    os.precision(17);
    os << "initial vorticity violates the no-slip constraint: 2*int_0^1 r*omega0 dr = " << mean
       << " exceeds tolerance " << tol;
    return os.str();
}

}  // namespace

FluidParams::FluidParams(double nu, double alpha) : nu_(nu), alpha_(alpha) {
    if (!std::isfinite(nu) || nu < 0.0) {
        throw DomainError("FluidParams: nu must be finite and >= 0");
    }
    if (!std::isfinite(alpha) || alpha < 0.0) {
        throw DomainError("FluidParams: alpha must be finite and >= 0");
    }
}

double FluidParams::elastic_ratio() const noexcept {
    if (nu_ == 0.0) return std::numeric_limits<double>::infinity();
    return alpha_ * alpha_ / nu_;
}

double DiniExpansion::operator()(double r) const {
    require_radius(r, "DiniExpansion");
    double sum = mean;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        sum += coeffs[k] * bessel_j0(zeros.zeros()[k] * r);
    }
    return sum;
}

RadialProfile validate_initial_vorticity(const RadialProfile& profile, double tol,
                                         bool project_mean) {
    const double mean = 2.0 * profile.weighted_integral();
    if (std::abs(mean) <= tol) return profile;
    if (project_mean) return profile.shifted(-mean);
    throw ZeroMeanViolation(describe_mean(mean, tol), mean);
}

double dini_mean(const RadialFunction& f, const QuadratureRule& rule) {
    return 2.0 * integrate_radial(f, rule);
}

RadialFunction validate_initial_vorticity(RadialFunction omega0, const QuadratureRule& rule,
                                          double tol, bool project_mean) {
    const double mean = dini_mean(omega0, rule);
    if (std::abs(mean) <= tol) return omega0;
    if (project_mean) {
        return [f = std::move(omega0), mean](double r) { return f(r) - mean; };
    }
    throw ZeroMeanViolation(describe_mean(mean, tol), mean);
}

DiniExpansion dini_expand(const RadialFunction& omega0, std::size_t n_modes,
                          const BesselZeroTable& zeros, const QuadratureRule& rule) {
    if (n_modes > zeros.size()) {
        throw std::invalid_argument("dini_expand: n_modes " + std::to_string(n_modes) +
                                    " exceeds zero table size " + std::to_string(zeros.size()));
    }
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    // ω₀(r)·r·w at each node, evaluated once.
    std::vector<double> weighted(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = omega0(nodes[i]);
        if (!std::isfinite(v)) detail::throw_non_finite(nodes[i]);
        weighted[i] = v * nodes[i] * weights[i];
    }

    DiniExpansion out;
    out.zeros = zeros;
    double mean = 0.0;
    for (double v : weighted) mean += v;
    out.mean = 2.0 * mean;

    out.coeffs.resize(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double j = zeros.zeros()[k];
        double proj = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            proj += weighted[i] * bessel_j0(j * nodes[i]);
        }
        const double j0 = bessel_j0(j);
        out.coeffs[k] = 2.0 * proj / (j0 * j0);
    }
    return out;
}

std::vector<double> decay_rates(const FluidParams& params, const BesselZeroTable& zeros) {
    std::vector<double> rates;
    rates.reserve(zeros.size());
    const double a2 = params.alpha() * params.alpha();
    for (double j : zeros.zeros()) {
        const double j2 = j * j;
        rates.push_back(j2 * params.nu() / (1.0 + j2 * a2));
    }
    return rates;
}

double tail_estimate(const DiniExpansion& expansion) {
    const std::size_t n = expansion.n_modes();
    if (n == 0) return 0.0;
    auto term = [&](std::size_t k) {
        return std::abs(expansion.coeffs[k] * bessel_j0(expansion.zeros.zeros()[k]));
    };
    const std::size_t fit = std::min<std::size_t>(8, n);
    const double last = term(n - 1);
    if (fit < 2) return last;

    // Least-squares fit of log|A_k J₀(j_k)| = a + b·k over the last `fit` terms.
    constexpr double kFloor = 1e-300;
    double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
    for (std::size_t k = n - fit; k < n; ++k) {
        const double x = static_cast<double>(k);
        const double y = std::log(std::max(term(k), kFloor));
        sk += x;
        sy += y;
        skk += x * x;
        sky += x * y;
    }
    const double m = static_cast<double>(fit);
    const double slope = (m * sky - sk * sy) / (m * skk - sk * sk);
    const double intercept = (sy - slope * sk) / m;
    const double fitted_last = std::exp(intercept + slope * static_cast<double>(n - 1));
    const double ratio = std::exp(slope);
    if (!(ratio < 1.0)) return static_cast<double>(n) * std::max(last, fitted_last);
    return fitted_last * ratio / (1.0 - ratio);
}

const char* to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Degenerate: return "Degenerate";
        case Regime::ElasticPositive: return "ElasticPositive";
        case Regime::Oscillatory: return "Oscillatory";
    }
    return "?";
}

Regime classify_regime(const FluidParams& params, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("classify_regime: lambda must be positive and finite");
    }
    const double elastic = lambda * lambda * params.alpha() * params.alpha();
    const double nu = params.nu();
    const double scale = std::max(std::abs(nu), std::abs(elastic));
    if (std::abs(nu - elastic) <= 1e-12 * scale) return Regime::Degenerate;
    return nu < elastic ? Regime::ElasticPositive : Regime::Oscillatory;
}

double elastic_mode_profile(const FluidParams& params, double lambda, double r) {
    require_radius(r, "elastic_mode_profile");
    if (classify_regime(params, lambda) != Regime::ElasticPositive) {
        throw DomainError("elastic_mode_profile: parameters are not in the ElasticPositive regime");
    }
    const double denom = std::sqrt(lambda * lambda * params.alpha() * params.alpha() - params.nu());
    return modified_i0(lambda * r / denom);
}

ModalSolution::ModalSolution(DiniExpansion expansion, FluidParams params)
    : expansion_(std::move(expansion)), params_(params) {
    if (expansion_.zeros.size() < expansion_.n_modes()) {
        throw std::invalid_argument("ModalSolution: zero table shorter than coefficient list");
    }
    for (double a : expansion_.coeffs) {
        if (!std::isfinite(a)) throw DomainError("ModalSolution: non-finite coefficient");
    }
    const double a2 = params_.alpha() * params_.alpha();
    rates_.reserve(n_modes());
    j0_at_zeros_.reserve(n_modes());
    for (std::size_t k = 0; k < n_modes(); ++k) {
        const double j = expansion_.zeros.zeros()[k];
        rates_.push_back(j * j * params_.nu() / (1.0 + j * j * a2));
        j0_at_zeros_.push_back(bessel_j0(j));
    }
}

std::vector<double> ModalSolution::amplitudes(double t) const {
    std::vector<double> amps(n_modes());
    for (std::size_t k = 0; k < n_modes(); ++k) {
        amps[k] = expansion_.coeffs[k] * std::exp(-rates_[k] * t);
    }
    return amps;
}

double evaluate_vorticity(const ModalSolution& sol, double r, double t) {
    require_radius(r, "evaluate_vorticity");
    require_time(t, "evaluate_vorticity");
    double sum = sol.mean();
    const auto coeffs = sol.coeffs();
    const auto rates = sol.decay_rates();
    for (std::size_t k = 0; k < sol.n_modes(); ++k) {
        sum += coeffs[k] * std::exp(-rates[k] * t) * bessel_j0(sol.zero(k + 1) * r);
    }
    return sum;
}

std::vector<double> evaluate_vorticity(const ModalSolution& sol, std::span<const double> grid,
                                       double t) {
    require_time(t, "evaluate_vorticity");
    const std::vector<double> amps = sol.amplitudes(t);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require_radius(grid[i], "evaluate_vorticity");
        double sum = sol.mean();
        for (std::size_t k = 0; k < amps.size(); ++k) {
            sum += amps[k] * bessel_j0(sol.zero(k + 1) * grid[i]);
        }
        out[i] = sum;
    }
    return out;
}

double euler_reference(const RadialFunction& omega0, double r, double t) {
    require_radius(r, "euler_reference");
    require_time(t, "euler_reference");
    return omega0(r);
}

double evaluate_velocity(const ModalSolution& sol, double r, double t) {
    require_radius(r, "evaluate_velocity");
    require_time(t, "evaluate_velocity");
    if (r == 0.0) return 0.0;
    double sum = 0.5 * sol.mean() * r;
    const auto coeffs = sol.coeffs();
    const auto rates = sol.decay_rates();
    for (std::size_t k = 0; k < sol.n_modes(); ++k) {
        const double j = sol.zero(k + 1);
        sum += coeffs[k] * std::exp(-rates[k] * t) * bessel_j1(j * r) / j;
    }
    return sum;
}

VelocityProfile evaluate_velocity(const ModalSolution& sol, std::span<const double> grid,
                                  double t) {
    require_time(t, "evaluate_velocity");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw DomainError("evaluate_velocity: grid must be strictly increasing");
        }
    }
    const std::vector<double> amps = sol.amplitudes(t);
    VelocityProfile out{std::vector<double>(grid.begin(), grid.end()),
                        std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        require_radius(r, "evaluate_velocity");
        if (r == 0.0) {
            out.u_theta[i] = 0.0;
            continue;
        }
        double sum = 0.5 * sol.mean() * r;
        for (std::size_t k = 0; k < amps.size(); ++k) {
            const double j = sol.zero(k + 1);
            sum += amps[k] * bessel_j1(j * r) / j;
        }
        out.u_theta[i] = sum;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Error norms

ErrorNormEvaluator::ErrorNormEvaluator(const ModalSolution& sol, RadialFunction omega0,
                                       const QuadratureRule& rule, CrossCheckTolerances tol)
    : sol_(sol), omega0_(std::move(omega0)), rule_(rule), tol_(tol), n_modes_(sol.n_modes()) {
    const auto nodes = rule_.nodes();
    const std::size_t npp = rule_.nodes_per_panel();
    const GaussLegendre ref = gauss_legendre(npp);
    const auto bp = rule_.breakpoints();

    auto fill = [&](NodeSet& set) {
        set.omega0.resize(set.r.size());
        set.j0.resize(set.r.size() * n_modes_);
        for (std::size_t i = 0; i < set.r.size(); ++i) {
            const double v = omega0_(set.r[i]);
            if (!std::isfinite(v)) detail::throw_non_finite(set.r[i]);
            set.omega0[i] = v;
            for (std::size_t k = 0; k < n_modes_; ++k) {
                set.j0[i * n_modes_ + k] = bessel_j0(sol_.zero(k + 1) * set.r[i]);
            }
        }
    };

    outer_.r.assign(nodes.begin(), nodes.end());
    fill(outer_);

    sub_.r.reserve(nodes.size() * npp);
    sub_weights_.reserve(nodes.size() * npp);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double a = bp[rule_.panel_of(i)];
        const double half = 0.5 * (nodes[i] - a);
        for (std::size_t m = 0; m < npp; ++m) {
            sub_.r.push_back(a + half * (1.0 + ref.nodes[m]));
            sub_weights_.push_back(half * ref.weights[m]);
        }
    }
    fill(sub_);

    j1_outer_.resize(nodes.size() * n_modes_);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t k = 0; k < n_modes_; ++k) {
            const double j = sol_.zero(k + 1);
            j1_outer_[i * n_modes_ + k] = bessel_j1(j * nodes[i]) / j;
        }
    }

    recon0_outer_ = synthesize(outer_, sol_.coeffs(), sol_.mean());
    recon0_sub_ = synthesize(sub_, sol_.coeffs(), sol_.mean());
}

std::vector<double> ErrorNormEvaluator::synthesize(const NodeSet& set,
                                                   std::span<const double> amps,
                                                   double mean) const {
    std::vector<double> out(set.r.size());
    for (std::size_t i = 0; i < set.r.size(); ++i) {
        const double* row = &set.j0[i * n_modes_];
        double sum = mean;
        for (std::size_t k = 0; k < n_modes_; ++k) sum += amps[k] * row[k];
        out[i] = sum;
    }
    return out;
}

// ∫₀^{x_i} ρ d(ρ) dρ at every outer node: whole panels to the left, then a
// Gauss rule on the partial panel [a_p, x_i].
std::vector<double> ErrorNormEvaluator::nested_inner(std::span<const double> outer_diff,
                                                     std::span<const double> sub_diff) const {
    const auto nodes = rule_.nodes();
    const auto weights = rule_.weights();
    const std::size_t npp = rule_.nodes_per_panel();
    std::vector<double> inner(nodes.size());
    double completed = 0.0;
    for (std::size_t p = 0; p < rule_.panels(); ++p) {
        double panel_total = 0.0;
        for (std::size_t q = 0; q < npp; ++q) {
            const std::size_t i = p * npp + q;
            double partial = 0.0;
            for (std::size_t m = 0; m < npp; ++m) {
                const std::size_t s = i * npp + m;
                partial += sub_weights_[s] * sub_.r[s] * sub_diff[s];
            }
            inner[i] = completed + partial;
            panel_total += weights[i] * nodes[i] * outer_diff[i];
        }
        completed += panel_total;
    }
    return inner;
}

VorticityErrorNorm ErrorNormEvaluator::vorticity(double t) const {
    require_time(t, "vorticity_error_norm");
    const auto weights = rule_.weights();
    const auto amps = sol_.amplitudes(t);
    const std::vector<double> omega_t = synthesize(outer_, amps, sol_.mean());

    double direct = 0.0, modal = 0.0, trunc = 0.0;
    for (std::size_t i = 0; i < outer_.r.size(); ++i) {
        const double wr = weights[i] * outer_.r[i];
        const double d = omega_t[i] - outer_.omega0[i];
        const double m = omega_t[i] - recon0_outer_[i];
        const double e = recon0_outer_[i] - outer_.omega0[i];
        direct += wr * d * d;
        modal += wr * m * m;
        trunc += wr * e * e;
    }
    double spectral = 0.0;
    const auto coeffs = sol_.coeffs();
    const auto rates = sol_.decay_rates();
    for (std::size_t k = 0; k < n_modes_; ++k) {
        const double a = coeffs[k] * sol_.j0_at_zero(k + 1) * -std::expm1(-rates[k] * t);
        spectral += a * a;
    }

    const double two_pi = 2.0 * std::numbers::pi;
    VorticityErrorNorm out{std::sqrt(two_pi * direct), std::sqrt(std::numbers::pi * spectral),
                           std::sqrt(two_pi * modal), std::sqrt(two_pi * trunc)};

    if (!(std::abs(out.modal_quadrature - out.spectral) <= tol_.parseval) ||
        !(std::abs(out.quadrature - out.spectral) <= tol_.parseval + out.truncation)) {
        std::ostringstream os;
        os.precision(17);
        os << "vorticity error norm: quadrature " << out.quadrature << " (modal "
           << out.modal_quadrature << ") disagrees with spectral identity " << out.spectral
           << " at t = " << t << " (truncation " << out.truncation << ")";
        throw ConsistencyFailure(os.str());
    }
    return out;
}

VelocityErrorNorm ErrorNormEvaluator::velocity(double t) const {
    require_time(t, "velocity_error_norm");
    const auto nodes = rule_.nodes();
    const auto weights = rule_.weights();
    const std::size_t n = nodes.size();

    // Closed form: ∫₀^r ρ Δω dρ = Σ A_k (e^{−μ_k t} − 1) r J₁(j_k r)/j_k.
    std::vector<double> change(n_modes_);
    const auto coeffs = sol_.coeffs();
    const auto rates = sol_.decay_rates();
    for (std::size_t k = 0; k < n_modes_; ++k) {
        change[k] = coeffs[k] * std::expm1(-rates[k] * t);
    }
    std::vector<double> closed(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = &j1_outer_[i * n_modes_];
        double sum = 0.0;
        for (std::size_t k = 0; k < n_modes_; ++k) sum += change[k] * row[k];
        closed[i] = nodes[i] * sum;
    }

    const auto amps = sol_.amplitudes(t);
    const std::vector<double> omega_outer = synthesize(outer_, amps, sol_.mean());
    const std::vector<double> omega_sub = synthesize(sub_, amps, sol_.mean());
    auto diff = [](const std::vector<double>& a, std::span<const double> b) {
        std::vector<double> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        return d;
    };
    const auto nested = nested_inner(diff(omega_outer, outer_.omega0), diff(omega_sub, sub_.omega0));
    const auto modal = nested_inner(diff(omega_outer, recon0_outer_), diff(omega_sub, recon0_sub_));
    const auto trunc = nested_inner(diff(recon0_outer_, outer_.omega0), diff(recon0_sub_, sub_.omega0));

    auto norm = [&](const std::vector<double>& inner) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += weights[i] * inner[i] * inner[i] / nodes[i];
        return std::sqrt(2.0 * std::numbers::pi * s);
    };
    VelocityErrorNorm out{norm(closed), norm(nested), norm(modal), norm(trunc)};

    if (!(std::abs(out.modal_nested - out.closed_form) <= tol_.velocity) ||
        !(std::abs(out.nested - out.closed_form) <= tol_.velocity + out.truncation)) {
        std::ostringstream os;
        os.precision(17);
        os << "velocity error norm: closed form " << out.closed_form << " disagrees with nested "
           << "quadrature " << out.nested << " (modal " << out.modal_nested << ") at t = " << t
           << " (truncation " << out.truncation << ")";
        throw ConsistencyFailure(os.str());
    }
    return out;
}

double vorticity_error_norm(const ModalSolution& sol, const RadialFunction& omega0, double t,
                            const QuadratureRule& rule) {
    return ErrorNormEvaluator(sol, omega0, rule).vorticity(t).quadrature;
}

double velocity_error_norm(const ModalSolution& sol, const RadialFunction& omega0, double t,
                           const QuadratureRule& rule) {
    return ErrorNormEvaluator(sol, omega0, rule).velocity(t).closed_form;
}

}  // namespace sgf
