#pragma once

// Modal (Dini series) solution of the radially symmetric second-grade fluid
// vorticity equation on the unit disk,
//
//     ω_t − α²Δω_t − νΔω = 0,   ∫₀¹ r ω dr = 0,
//
// whose separated solutions are A_k e^{−μ_k t} J₀(j_k r) with j_k the positive
// zeros of J₁ and μ_k = j_k²ν / (1 + j_k²α²). The Euler reference solution is
// the stationary ω₀.

#include <cstddef>
#include <span>
#include <vector>

#include "sgf/profile.hpp"
#include "sgf/quadrature.hpp"
#include "sgf/specfun.hpp"

namespace sgf {

inline constexpr std::size_t kDefaultModes = 64;
inline constexpr double kDefaultAdmissibilityTol = 1e-9;
inline constexpr double kParsevalTol = 1e-8;
inline constexpr double kVelocityCrossCheckTol = 1e-6;

/// Viscosity ν and elastic length α, both finite and non-negative.
class FluidParams {
public:
    FluidParams(double nu, double alpha);

    double nu() const noexcept { return nu_; }
    double alpha() const noexcept { return alpha_; }
    /// α²/ν, or +inf when ν = 0.
    double elastic_ratio() const noexcept;

private:
    double nu_;
    double alpha_;
};

/// h(r) = mean + Σ_k coeffs[k-1] J₀(j_k r), with mean = 2∫₀¹ r h dr.
struct DiniExpansion {
    double mean = 0.0;
    std::vector<double> coeffs;
    BesselZeroTable zeros;

    std::size_t n_modes() const noexcept { return coeffs.size(); }
    /// Sum of the truncated series at t = 0.
    double operator()(double r) const;
};

/// Rejects (or projects) an initial vorticity whose no-slip mean 2∫₀¹ r ω₀ dr
/// exceeds `tol`. With `project_mean` the constant mean is subtracted.
RadialProfile validate_initial_vorticity(const RadialProfile& profile,
                                         double tol = kDefaultAdmissibilityTol,
                                         bool project_mean = false);

/// Same check for an analytic profile, with the mean computed by `rule`.
RadialFunction validate_initial_vorticity(RadialFunction omega0, const QuadratureRule& rule,
                                          double tol = kDefaultAdmissibilityTol,
                                          bool project_mean = false);

/// 2∫₀¹ r f(r) dr.
double dini_mean(const RadialFunction& f, const QuadratureRule& rule);

/// A_k = 2/J₀(j_k)² ∫₀¹ ω₀(r) J₀(j_k r) r dr for k = 1..n_modes.
DiniExpansion dini_expand(const RadialFunction& omega0, std::size_t n_modes,
                          const BesselZeroTable& zeros,
                          const QuadratureRule& rule = default_rule());

/// μ_k = j_k²ν / (1 + j_k²α²) for each tabulated zero.
std::vector<double> decay_rates(const FluidParams& params, const BesselZeroTable& zeros);

/// Crude proxy for Σ_{k>N} |A_k J₀(j_k)| from a geometric fit to the last
/// eight terms. Falls back to N·|last| when the fit does not decay.
double tail_estimate(const DiniExpansion& expansion);

enum class Regime {
    Degenerate,       // ν = λ²α²: only the trivial separated solution
    ElasticPositive,  // ν < λ²α²: modified-Bessel profile, strictly positive
    Oscillatory,      // ν > λ²α²: J₀ profile, admits the zero-mean constraint
};

const char* to_string(Regime regime) noexcept;

/// Which of the three separated-solution cases a decay constant λ > 0 falls in.
Regime classify_regime(const FluidParams& params, double lambda);

/// I₀(λ r / sqrt(λ²α² − ν)): the separated radial profile in the
/// ElasticPositive case. Throws DomainError for the other regimes.
double elastic_mode_profile(const FluidParams& params, double lambda, double r);

/// Expansion plus per-mode decay rates; the complete solution state.
class ModalSolution {
public:
    ModalSolution(DiniExpansion expansion, FluidParams params);

    const DiniExpansion& expansion() const noexcept { return expansion_; }
    const FluidParams& params() const noexcept { return params_; }
    std::span<const double> decay_rates() const noexcept { return rates_; }
    std::span<const double> coeffs() const noexcept { return expansion_.coeffs; }
    std::size_t n_modes() const noexcept { return expansion_.n_modes(); }
    double mean() const noexcept { return expansion_.mean; }
    double zero(std::size_t k) const { return expansion_.zeros.j(k); }
    /// J₀(j_k), 1-based.
    double j0_at_zero(std::size_t k) const { return j0_at_zeros_.at(k - 1); }

    /// A_k e^{−μ_k t}, k = 1..N.
    std::vector<double> amplitudes(double t) const;

private:
    DiniExpansion expansion_;
    FluidParams params_;
    std::vector<double> rates_;
    std::vector<double> j0_at_zeros_;
};

/// mean + Σ A_k e^{−μ_k t} J₀(j_k r).
double evaluate_vorticity(const ModalSolution& sol, double r, double t);

/// Vorticity at every radius of `grid`.
std::vector<double> evaluate_vorticity(const ModalSolution& sol, std::span<const double> grid,
                                       double t);

/// ω^E(r, t) = ω₀(r).
double euler_reference(const RadialFunction& omega0, double r, double t);

/// u_theta(r) = (1/r)∫₀^r ρ ω(ρ,t) dρ = mean·r/2 + Σ A_k e^{−μ_k t} J₁(j_k r)/j_k.
VelocityProfile evaluate_velocity(const ModalSolution& sol, std::span<const double> grid,
                                  double t);

double evaluate_velocity(const ModalSolution& sol, double r, double t);

/// Both routes to ‖ω(·,t) − ω^E(·,t)‖_{L²(D)}.
struct VorticityErrorNorm {
    double quadrature;        // direct quadrature of ω_N(t) − ω₀ (the reported value)
    double spectral;          // sqrt(π Σ A_k² J₀(j_k)² (1 − e^{−μ_k t})²)
    double modal_quadrature;  // quadrature of ω_N(t) − ω_N(0); Parseval partner of `spectral`
    double truncation;        // ‖ω_N(0) − ω₀‖, the series truncation error
};

/// Both routes to ‖u(·,t) − u^E(·,t)‖_{L²(D)} = sqrt(2π ∫₀¹ [∫₀^r ρ Δω dρ]² dr/r).
struct VelocityErrorNorm {
    double closed_form;     // inner integral from the modal J₁ identity (the reported value)
    double nested;          // inner integral by quadrature of ω_N(t) − ω₀
    double modal_nested;    // inner integral by quadrature of ω_N(t) − ω_N(0)
    double truncation;      // nested norm of the truncation residual
};

/// Tolerances for the runtime cross-checks.
struct CrossCheckTolerances {
    double parseval = kParsevalTol;
    double velocity = kVelocityCrossCheckTol;
};

/// Evaluates error norms at many times for one (solution, ω₀, rule) triple.
/// Bessel samples at the quadrature nodes are computed once.
class ErrorNormEvaluator {
public:
    ErrorNormEvaluator(const ModalSolution& sol, RadialFunction omega0,
                       const QuadratureRule& rule = default_rule(),
                       CrossCheckTolerances tol = {});

    /// Throws ConsistencyFailure when the routes disagree beyond tolerance.
    VorticityErrorNorm vorticity(double t) const;
    VelocityErrorNorm velocity(double t) const;

private:
    struct NodeSet {
        std::vector<double> r;
        std::vector<double> omega0;
        std::vector<double> j0;  // row-major [node][mode]
    };
    std::vector<double> synthesize(const NodeSet& set, std::span<const double> amps,
                                   double mean) const;
    std::vector<double> nested_inner(std::span<const double> outer_diff,
                                     std::span<const double> sub_diff) const;

    ModalSolution sol_;
    RadialFunction omega0_;
    QuadratureRule rule_;
    CrossCheckTolerances tol_;
    std::size_t n_modes_;
    NodeSet outer_;
    NodeSet sub_;                     // partial-panel nodes, nodes_per_panel per outer node
    std::vector<double> sub_weights_;
    std::vector<double> j1_outer_;    // J₁(j_k r)/j_k at outer nodes
    std::vector<double> recon0_outer_;
    std::vector<double> recon0_sub_;
};

/// ‖ω(·,t) − ω^E(·,t)‖_{L²(D)} by quadrature, cross-checked against the
/// spectral identity. Throws ConsistencyFailure on disagreement.
double vorticity_error_norm(const ModalSolution& sol, const RadialFunction& omega0, double t,
                            const QuadratureRule& rule = default_rule());

/// ‖u(·,t) − u^E(·,t)‖_{L²(D)} from the closed modal inner integral,
/// cross-checked against nested quadrature. Throws ConsistencyFailure.
double velocity_error_norm(const ModalSolution& sol, const RadialFunction& omega0, double t,
                           const QuadratureRule& rule = default_rule());

}  // namespace sgf
