// Acceptance suite: one PASS/FAIL line per criterion.
//
//   sgf_acceptance <path-to-sgf> [--known-failure N]...
//
// Exits 0 when the set of failing criteria equals the set passed with
// --known-failure, so a criterion that starts passing is reported too.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sgf/errors.hpp"
#include "sgf/harness.hpp"
#include "sgf/oracle.hpp"
#include "sgf/quadrature.hpp"
#include "sgf/specfun.hpp"
#include "sgf/spectral.hpp"

using namespace sgf;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

Outcome special_functions() {
    const BesselZeroTable zeros = j1_zeros(20);
    double worst = 0.0;
    for (double z : zeros.zeros()) worst = std::max(worst, std::abs(bessel_j1(z)));
    const double expected[] = {3.83170597021, 7.01558666982, 10.17346813506};
    double dev = 0.0;
    for (std::size_t k = 1; k <= 3; ++k) dev = std::max(dev, std::abs(zeros.j(k) - expected[k - 1]));
    return {worst < 1e-10 && dev < 1e-9,
            "max|J1(j_k)| = " + sci(worst) + ", max|j_k - ref| = " + sci(dev)};
}

Outcome orthogonality() {
    const double dev = gram_deviation(20);
    return {dev < 1e-8, "max|G - I| = " + sci(dev)};
}

Outcome dini_round_trip() {
    const InitialData data = builtin_initial("poly:1,-2");
    const BesselZeroTable zeros = j1_zeros(64);
    const DiniExpansion exp = dini_expand(data.omega0, 64, zeros);
    double recon = 0.0;
    for (double r : linspace(0.0, 0.9, 901)) recon = std::max(recon, std::abs(exp(r) - data.omega0(r)));
    double coeff = 0.0;
    for (std::size_t k = 1; k <= 20; ++k) {
        const double j = zeros.j(k);
        const double closed = -8.0 / (j * j * bessel_j0(j));
        coeff = std::max(coeff, std::abs(exp.coeffs[k - 1] - closed) / std::abs(closed));
    }
    return {recon < 1e-6 && coeff < 1e-8,
            "max reconstruction error on [0, 0.9] = " + sci(recon) +
                " (limit 1e-6), max coefficient rel. error = " + sci(coeff)};
}

Outcome exact_mode() {
    const FluidParams params(0.01, 0.1);
    const InitialData data = builtin_initial("eigen:1");
    const BesselZeroTable zeros = j1_zeros(kDefaultModes);
    const ModalSolution sol(dini_expand(data.omega0, kDefaultModes, zeros), params);
    const double j = zeros.j(1);
    const double mu = sol.decay_rates()[0];
    const auto radii = linspace(0.0, 1.0, 101);
    double worst = 0.0;
    double slip = 0.0;
    for (double t : linspace(0.0, 1.0, 33)) {
        const auto omega = evaluate_vorticity(sol, radii, t);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            worst = std::max(worst, std::abs(omega[i] - std::exp(-mu * t) * bessel_j0(j * radii[i])));
        }
        slip = std::max(slip, std::abs(evaluate_velocity(sol, 1.0, t)));
    }
    const bool mu_ok = std::abs(mu - 0.128024) < 1e-6;  // quoted to six places
    return {worst < 1e-10 && slip < 1e-10 && mu_ok,
            "mu1 = " + sci(mu) + ", max pointwise error = " + sci(worst) +
                ", max|u(1,t)| = " + sci(slip)};
}

Outcome parseval() {
    const ExperimentConfig cfg;
    const InitialData data = builtin_initial(cfg.initial);
    const BesselZeroTable zeros = j1_zeros(cfg.n_modes);
    const DiniExpansion exp = dini_expand(data.omega0, cfg.n_modes, zeros);
    // The checks are reported here rather than raised, so loosen the built-in ones.
    const CrossCheckTolerances loose{1.0, 1.0};
    double vort = 0.0;
    double vort_direct = 0.0;
    double vel = 0.0;
    for (const SweepPoint& p : cfg.sweep) {
        const ErrorNormEvaluator norms(ModalSolution(exp, FluidParams(p.nu, p.alpha)), data.omega0,
                                       default_rule(), loose);
        for (double t : linspace(0.0, cfg.t_final, cfg.t_samples)) {
            const VorticityErrorNorm w = norms.vorticity(t);
            vort = std::max(vort, std::abs(w.modal_quadrature - w.spectral));
            vort_direct = std::max(vort_direct, std::abs(w.quadrature - w.spectral) - w.truncation);
            const VelocityErrorNorm u = norms.velocity(t);
            vel = std::max(vel, std::abs(u.modal_nested - u.closed_form));
        }
    }
    return {vort < 1e-8 && vort_direct < 1e-8 && vel < 1e-6,
            "vorticity quadrature vs spectral = " + sci(vort) +
                " (direct, beyond truncation: " + sci(vort_direct) +
                "), velocity nested vs closed form = " + sci(vel)};
}

Outcome pde_oracle() {
    const FluidParams params(0.01, 0.1);
    const BesselZeroTable zeros = j1_zeros(1);
    const ModalSolution sol(DiniExpansion{0.0, {1.0}, zeros}, params);
    const double coarse = pde_residual(sol, FdGrid(513), 0.5, 1e-3);
    const double fine = pde_residual(sol, FdGrid(1025), 0.5, 5e-4);
    const double ratio = coarse / fine;

    const FdGrid grid(1025);
    const double j = zeros.j(1);
    const RadialProfile init = sample_zero_mean(grid, [j](double r) { return bessel_j0(j * r); });
    double prev = discrete_mean(grid, init.values());
    double drift = 0.0;
    const FdState out = fd_solve(init, params, grid, 1.0, 1000, [&](const FdState& s) {
        const double m = discrete_mean(grid, s.values);
        drift = std::max(drift, std::abs(m - prev));
        prev = m;
    });
    const double mu = sol.decay_rates()[0];
    std::vector<double> diff, exact;
    for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
        exact.push_back(std::exp(-mu) * bessel_j0(j * grid.radii()[i]));
        diff.push_back(out.values[i] - exact.back());
    }
    const double rel = discrete_l2(grid, diff) / discrete_l2(grid, exact);
    return {ratio >= 3.5 && ratio <= 4.5 && rel < 1e-4 && drift < 1e-12,
            "residual ratio = " + sci(ratio) + ", CN relative L2 = " + sci(rel) +
                ", max mean drift per step = " + sci(drift)};
}

Outcome convergence() {
    const SweepReport parabola = run_convergence_sweep(ExperimentConfig{});
    bool decreasing = parabola.rows.size() == 5;
    for (std::size_t i = 1; i < parabola.rows.size(); ++i) {
        decreasing = decreasing &&
                     parabola.rows[i].sup_err_omega_l2 < parabola.rows[i - 1].sup_err_omega_l2 &&
                     parabola.rows[i].sup_err_u_l2 < parabola.rows[i - 1].sup_err_u_l2;
    }
    const double norm0 = std::sqrt(std::numbers::pi / 3.0);
    const double final_frac = parabola.rows.back().sup_err_omega_l2 / norm0;

    ExperimentConfig eigen;
    eigen.initial = "eigen:1";
    const SweepReport rows = run_convergence_sweep(eigen);
    const double j = j1_zeros(1).j(1);
    double worst = 0.0;
    for (const SweepRow& row : rows.rows) {
        const double mu = j * j * row.nu / (1.0 + j * j * row.alpha * row.alpha);
        const double closed = std::sqrt(std::numbers::pi) * std::abs(bessel_j0(j)) * (1.0 - std::exp(-mu));
        worst = std::max(worst, std::abs(row.sup_err_omega_l2 - closed));
    }
    return {decreasing && final_frac < 0.05 && worst < 1e-8,
            std::string("columns strictly decreasing: ") + (decreasing ? "yes" : "no") +
                ", final error / |omega0| = " + sci(final_frac) +
                ", eigen:1 max deviation from closed form = " + sci(worst)};
}

Outcome regimes() {
    const FluidParams params(0.01, 0.1);  // boundary at lambda = sqrt(nu)/alpha = 1
    const bool cases = classify_regime(params, 1.0) == Regime::Degenerate &&
                       classify_regime(params, 1.5) == Regime::ElasticPositive &&
                       classify_regime(params, 0.5) == Regime::Oscillatory &&
                       classify_regime(FluidParams(0.0, 0.1), 2.0) == Regime::ElasticPositive;
    double smallest = std::numeric_limits<double>::infinity();
    for (double r : linspace(0.0, 1.0, 100)) {
        smallest = std::min(smallest, elastic_mode_profile(params, 1.5, r));
    }
    return {cases && smallest >= 1.0,
            std::string("regimes classified: ") + (cases ? "yes" : "no") +
                ", min I0 profile over 100 radii = " + sci(smallest)};
}

Outcome limits() {
    const BesselZeroTable zeros = j1_zeros(kDefaultModes);
    const InitialData data = builtin_initial("poly:1,-2");
    const DiniExpansion exp = dini_expand(data.omega0, kDefaultModes, zeros);

    const ModalSolution euler(exp, FluidParams(0.0, 0.1));
    const auto radii = linspace(0.0, 1.0, 101);
    const auto at0 = evaluate_vorticity(euler, radii, 0.0);
    const auto at5 = evaluate_vorticity(euler, radii, 5.0);
    double stationary = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) stationary = std::max(stationary, std::abs(at5[i] - at0[i]));

    const FdGrid grid(257);
    const RadialProfile init = sample_zero_mean(grid, data.omega0);
    const FdState still = fd_solve(init, FluidParams(0.0, 0.1), grid, 5.0, 200);
    double identity = 0.0;
    for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
        identity = std::max(identity, std::abs(still.values[i] - init.values()[i]));
    }

    const FluidParams ns(0.01, 0.0);
    const auto rates = decay_rates(ns, zeros);
    double rate_dev = 0.0;
    for (std::size_t k = 1; k <= zeros.size(); ++k) {
        const double nsr = 0.01 * zeros.j(k) * zeros.j(k);
        rate_dev = std::max(rate_dev, std::abs(rates[k - 1] - nsr) / nsr);
    }
    const FdAgreement fd = fd_eigen_agreement(ns, kDefaultFdNodes, 1000, 1.0);
    return {stationary < 1e-13 && identity < 1e-13 && rate_dev < 1e-14 && fd.relative_l2 < 1e-4,
            "nu=0: spectral drift = " + sci(stationary) + ", FD drift = " + sci(identity) +
                "; alpha=0: rate deviation = " + sci(rate_dev) + ", FD relative L2 = " +
                sci(fd.relative_l2)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome determinism(const std::string& cli) {
    const auto dir = std::filesystem::temp_directory_path() / "sgf_acceptance";
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "sweep.json";
    std::ofstream(cfg) << R"({"initial": "poly:1,-2", "sweep_rule": {"exponent": 0.75, "m_min": 1, "m_max": 5}})";
    std::string outputs[2];
    int status = 0;
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / ("run" + std::to_string(i) + ".csv");
        const std::string cmd = "\"" + cli + "\" converge --config \"" + cfg.string() + "\" --output \"" +
                                out.string() + "\"";
        status |= std::system(cmd.c_str());
        outputs[i] = slurp(out);
    }
    std::filesystem::remove_all(dir);
    const bool same = status == 0 && !outputs[0].empty() && outputs[0] == outputs[1];
    return {same, std::to_string(outputs[0].size()) + " bytes, identical: " + (same ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: sgf_acceptance <path-to-sgf> [--known-failure N]...\n";
        return 2;
    }
    const std::string cli = argv[1];
    std::set<int> known;
    for (int i = 2; i + 1 < argc; i += 2) {
        if (std::string(argv[i]) == "--known-failure") known.insert(std::atoi(argv[i + 1]));
    }

    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // 0: no runtime limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "special functions", 1.0, special_functions},
        {2, "orthogonality", 5.0, orthogonality},
        {3, "Dini round trip", 0.0, dini_round_trip},
        {4, "exact-mode evolution", 0.0, exact_mode},
        {5, "Parseval consistency", 0.0, parseval},
        {6, "PDE oracle", 0.0, pde_oracle},
        {7, "convergence along the sweep", 30.0, convergence},
        {8, "regime demonstration", 0.0, regimes},
        {9, "limit edge cases", 0.0, limits},
        {10, "determinism", 0.0, [&cli] { return determinism(cli); }},
    };

    std::set<int> failed;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0.0 && secs >= c.budget_s) {
            o.passed = false;
            o.detail += "; runtime " + sci(secs) + " s exceeds " + sci(c.budget_s) + " s";
        }
        if (!o.passed) failed.insert(c.id);
        std::printf("%s %2d %-28s %s (%.2f s)%s\n", o.passed ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs,
                    !o.passed && known.contains(c.id) ? " [known failure]" : "");
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
    for (int id : known) {
        if (!failed.contains(id)) std::printf("criterion %d was expected to fail but passed\n", id);
    }
    return failed == known ? 0 : 1;
}
