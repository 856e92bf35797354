#include "sgf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sgf/errors.hpp"

namespace sgf {

FdGrid::FdGrid(std::size_t n_nodes) {
    if (n_nodes < 3) throw std::invalid_argument("FdGrid: need at least 3 nodes");
    radii_ = uniform_radii(n_nodes);
    h_ = 1.0 / static_cast<double>(n_nodes - 1);
    cell_weights_.resize(n_nodes);
    cell_weights_.front() = h_ * h_ / 8.0;
    for (std::size_t i = 1; i + 1 < n_nodes; ++i) cell_weights_[i] = radii_[i] * h_;
    cell_weights_.back() = h_ / 2.0 - h_ * h_ / 4.0;
}

double discrete_mean(const FdGrid& grid, std::span<const double> values) {
    const auto w = grid.cell_weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += w[i] * values[i];
    return 2.0 * sum;
}

double discrete_l2(const FdGrid& grid, std::span<const double> values) {
    const auto w = grid.cell_weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += w[i] * values[i] * values[i];
    return std::sqrt(2.0 * std::numbers::pi * sum);
}

void radial_laplacian(const FdGrid& grid, std::span<const double> v, std::span<double> out) {
    const std::size_t n = grid.n_nodes();
    if (v.size() != n || out.size() != n) {
        throw std::invalid_argument("radial_laplacian: size mismatch with grid");
    }
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    const auto r = grid.radii();
    out[0] = 4.0 * (v[1] - v[0]) * inv_h2;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_h2 +
                 (v[i + 1] - v[i - 1]) / (2.0 * h * r[i]);
    }
    out[n - 1] = 2.0 * (v[n - 2] - v[n - 1]) * inv_h2;
}

std::vector<double> radial_laplacian(const FdState& state) {
    std::vector<double> out(state.values.size());
    radial_laplacian(state.grid, state.values, out);
    return out;
}

std::vector<double> thomas_solve(std::span<const double> sub, std::span<const double> diag,
                                 std::span<const double> sup, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (sub.size() != n || sup.size() != n || rhs.size() != n || n == 0) {
        throw std::invalid_argument("thomas_solve: inconsistent system size");
    }
    std::vector<double> c(n);
    std::vector<double> d(n);
    double pivot = diag[0];
    if (pivot == 0.0) throw std::runtime_error("thomas_solve: singular tridiagonal system (row 0)");
    c[0] = sup[0] / pivot;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - sub[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw std::runtime_error("thomas_solve: singular tridiagonal system (row " +
                                     std::to_string(i) + ")");
        }
        c[i] = (i + 1 < n) ? sup[i] / pivot : 0.0;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / pivot;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

namespace {

double interior_residual(const FdGrid& grid, const FluidParams& params,
                         std::span<const double> omega_t, std::span<const double> omega) {
    const std::size_t n = grid.n_nodes();
    std::vector<double> lap_t(n);
    std::vector<double> lap(n);
    radial_laplacian(grid, omega_t, lap_t);
    radial_laplacian(grid, omega, lap);
    const double a2 = params.alpha() * params.alpha();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double res = omega_t[i] - a2 * lap_t[i] - params.nu() * lap[i];
        worst = std::max(worst, std::abs(res));
    }
    return worst;
}

void require_window(double t, double dt) {
    if (!(dt > 0.0) || !(t - dt >= 0.0)) {
        throw DomainError("pde_residual: need dt > 0 and t - dt >= 0");
    }
}

}  // namespace

double pde_residual(const SpaceTimeField& omega, const FluidParams& params, const FdGrid& grid,
                    double t, double dt) {
    require_window(t, dt);
    const auto r = grid.radii();
    const std::size_t n = grid.n_nodes();
    std::vector<double> now(n);
    std::vector<double> rate(n);
    for (std::size_t i = 0; i < n; ++i) {
        now[i] = omega(r[i], t);
        rate[i] = (omega(r[i], t + dt) - omega(r[i], t - dt)) / (2.0 * dt);
    }
    return interior_residual(grid, params, rate, now);
}

double pde_residual(const ModalSolution& sol, const FdGrid& grid, double t, double dt) {
    require_window(t, dt);
    const auto coeffs = sol.coeffs();
    const auto rates = sol.decay_rates();
    const std::size_t modes = sol.n_modes();
    std::vector<double> amp_now(modes);
    std::vector<double> amp_rate(modes);
    for (std::size_t k = 0; k < modes; ++k) {
        const double mu = rates[k];
        amp_now[k] = coeffs[k] * std::exp(-mu * t);
        // e^{−μ(t+dt)} − e^{−μ(t−dt)} = e^{−μt}·(−2 sinh(μ dt))
        amp_rate[k] = -amp_now[k] * std::sinh(mu * dt) / dt;
    }
    const auto r = grid.radii();
    const std::size_t n = grid.n_nodes();
    std::vector<double> now(n);
    std::vector<double> rate(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s_now = sol.mean();
        double s_rate = 0.0;
        for (std::size_t k = 0; k < modes; ++k) {
            const double b = bessel_j0(sol.zero(k + 1) * r[i]);
            s_now += amp_now[k] * b;
            s_rate += amp_rate[k] * b;
        }
        now[i] = s_now;
        rate[i] = s_rate;
    }
    return interior_residual(grid, sol.params(), rate, now);
}

FdState fd_solve(const RadialProfile& omega0, const FluidParams& params, const FdGrid& grid,
                 double t_final, std::size_t n_steps, const StepObserver& observer,
                 double mean_tol) {
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw DomainError("fd_solve: t_final must be positive and finite");
    }
    if (n_steps == 0) throw std::invalid_argument("fd_solve: n_steps must be positive");

    const std::size_t n = grid.n_nodes();
    const auto r = grid.radii();
    FdState state{grid, std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) state.values[i] = omega0(r[i]);

    const double mean = discrete_mean(grid, state.values);
    if (std::abs(mean) > mean_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "fd_solve: discrete mean " << mean << " exceeds tolerance " << mean_tol;
        throw ZeroMeanViolation(os.str(), mean);
    }

    const double dt = t_final / static_cast<double>(n_steps);
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    // A = I − βL, β = α² + ν dt/2. Stepping in increment form,
    // A δ = ν dt L ωⁿ, ωⁿ⁺¹ = ωⁿ + δ, is algebraically the Crank–Nicolson update.
    const double beta = params.alpha() * params.alpha() + 0.5 * params.nu() * dt;
    std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0);
    diag[0] = 1.0 + beta * 4.0 * inv_h2;
    sup[0] = -beta * 4.0 * inv_h2;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double skew = 1.0 / (2.0 * h * r[i]);
        sub[i] = -beta * (inv_h2 - skew);
        diag[i] = 1.0 + beta * 2.0 * inv_h2;
        sup[i] = -beta * (inv_h2 + skew);
    }
    sub[n - 1] = -beta * 2.0 * inv_h2;
    diag[n - 1] = 1.0 + beta * 2.0 * inv_h2;

    std::vector<double> lap(n);
    std::vector<double> rhs(n);
    const double scale = params.nu() * dt;
    for (std::size_t step = 1; step <= n_steps; ++step) {
        radial_laplacian(grid, state.values, lap);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = scale * lap[i];
        const std::vector<double> delta = thomas_solve(sub, diag, sup, rhs);
        for (std::size_t i = 0; i < n; ++i) state.values[i] += delta[i];
        state.time = static_cast<double>(step) * dt;
        if (observer) observer(state);
    }
    state.time = t_final;
    return state;
}

RadialProfile sample_zero_mean(const FdGrid& grid, const RadialFunction& f) {
    const auto r = grid.radii();
    std::vector<double> values(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) values[i] = f(r[i]);
    // discrete_mean of the constant 1 is 1 − h²/4, not 1.
    const double shift = discrete_mean(grid, values) /
                         discrete_mean(grid, std::vector<double>(values.size(), 1.0));
    for (double& v : values) v -= shift;
    return RadialProfile(std::vector<double>(r.begin(), r.end()), std::move(values));
}

}  // namespace sgf
