#pragma once

// Independent checks of the modal solution: pointwise residuals of
// ω_t − α²Δω_t − νΔω = 0 and a Crank–Nicolson finite-difference evolution.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sgf/profile.hpp"
#include "sgf/spectral.hpp"

namespace sgf {

inline constexpr std::size_t kDefaultFdNodes = 1025;
inline constexpr double kDiscreteMeanTol = 1e-9;

/// Uniform radial grid 0, h, 2h, ..., 1 with n_nodes >= 3.
class FdGrid {
public:
    explicit FdGrid(std::size_t n_nodes);

    std::size_t n_nodes() const noexcept { return radii_.size(); }
    double h() const noexcept { return h_; }
    std::span<const double> radii() const noexcept { return radii_; }

    /// Approximate ∫ r dr over the dual cell of each node: h²/8, r_i·h, ..., h/2 − h²/4.
    /// With these weights the Neumann stencil has zero weighted column sums and
    /// diag(V)·L is symmetric. They sum to 1/2 − h²/8.
    std::span<const double> cell_weights() const noexcept { return cell_weights_; }

private:
    double h_;
    std::vector<double> radii_;
    std::vector<double> cell_weights_;
};

struct FdState {
    FdGrid grid;
    std::vector<double> values;
    double time = 0.0;
};

/// 2 Σ_i V_i ω_i: discrete analogue of 2∫₀¹ r ω dr.
double discrete_mean(const FdGrid& grid, std::span<const double> values);

/// sqrt(2π Σ_i V_i ω_i²): discrete L²(D) norm.
double discrete_l2(const FdGrid& grid, std::span<const double> values);

/// Second-order ω'' + ω'/r. Origin: 4(ω₁ − ω₀)/h². Outer edge: Neumann ghost ω_{N+1} = ω_{N−1}.
std::vector<double> radial_laplacian(const FdState& state);
void radial_laplacian(const FdGrid& grid, std::span<const double> values, std::span<double> out);

/// Tridiagonal solve by Thomas elimination without pivoting. `sub[0]` and
/// `sup[n-1]` are ignored. Throws std::runtime_error on a zero pivot.
std::vector<double> thomas_solve(std::span<const double> sub, std::span<const double> diag,
                                 std::span<const double> sup, std::span<const double> rhs);

/// ω(r, t) as a callable for the generic residual.
using SpaceTimeField = std::function<double(double, double)>;

/// Max over interior nodes of |ω_t − α²Δω_t − νΔω|, with central time
/// differences of half-width dt and the discrete Laplacian.
double pde_residual(const SpaceTimeField& omega, const FluidParams& params, const FdGrid& grid,
                    double t, double dt);

/// Same, for the modal solution. The time difference is formed mode by mode
/// (A_k (e^{−μ(t+dt)} − e^{−μ(t−dt)}) / 2dt) so no O(1) samples are subtracted.
double pde_residual(const ModalSolution& sol, const FdGrid& grid, double t, double dt);

/// Called after every step with the new state.
using StepObserver = std::function<void(const FdState&)>;

/// Crank–Nicolson evolution of (I − α²L)ω_t = νLω to t_final in n_steps.
/// ω₀ is sampled (linearly interpolated) on the grid and must have
/// |discrete_mean| <= mean_tol, else ZeroMeanViolation.
FdState fd_solve(const RadialProfile& omega0, const FluidParams& params, const FdGrid& grid,
                 double t_final, std::size_t n_steps, const StepObserver& observer = {},
                 double mean_tol = kDiscreteMeanTol);

/// ω sampled on the grid nodes, shifted by a constant so its discrete mean is zero.
RadialProfile sample_zero_mean(const FdGrid& grid, const RadialFunction& f);

}  // namespace sgf
