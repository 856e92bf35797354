// sgf: command-line front end for the radial second-grade fluid solver.
//
//   sgf zeros    --count N [--tol 1e-12]
//   sgf expand   --initial <desc> --modes N
//   sgf evolve   --initial <desc> --nu X --alpha Y --t-final T --t-samples S --grid G --modes N
//   sgf verify   [--nu X --alpha Y --grid G --steps M]
//   sgf converge --config <file> | inline flags
//
// Exit codes: 0 success, 2 validation failure, 3 consistency failure, 1 other errors.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgf/errors.hpp"
#include "sgf/harness.hpp"
#include "sgf/oracle.hpp"
#include "sgf/spectral.hpp"
#include "sgf/specfun.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConsistency = 3;

using sgf::format_double;

int cmd_zeros(std::size_t count, double tol) {
    const sgf::BesselZeroTable table = sgf::j1_zeros(count, tol);
    std::cout << "k,j_k\n";
    for (std::size_t k = 1; k <= table.size(); ++k) {
        std::cout << k << ',' << format_double(table.j(k)) << '\n';
    }
    return 0;
}

int cmd_expand(const std::string& initial, std::size_t modes, bool project) {
    const sgf::InitialData data = sgf::builtin_initial(initial, sgf::kDefaultAdmissibilityTol, project);
    const sgf::BesselZeroTable zeros = sgf::j1_zeros(modes);
    const sgf::DiniExpansion exp = sgf::dini_expand(data.omega0, modes, zeros, sgf::rule_for(data));
    std::cout << "k,j_k,A_k\n";
    // k = 0 is the constant (mean) term: J₀(0·r) = 1.
    std::cout << "0,0," << format_double(exp.mean) << '\n';
    for (std::size_t k = 1; k <= exp.n_modes(); ++k) {
        std::cout << k << ',' << format_double(zeros.j(k)) << ','
                  << format_double(exp.coeffs[k - 1]) << '\n';
    }
    return 0;
}

int cmd_evolve(const std::string& initial, double nu, double alpha, double t_final,
               std::size_t t_samples, std::size_t grid, std::size_t modes, bool project) {
    if (t_samples == 0 || grid < 2 || !(t_final >= 0.0)) {
        throw sgf::ConfigError("evolve: need t-samples >= 1, grid >= 2, t-final >= 0");
    }
    const sgf::InitialData data = sgf::builtin_initial(initial, sgf::kDefaultAdmissibilityTol, project);
    const sgf::BesselZeroTable zeros = sgf::j1_zeros(modes);
    const sgf::ModalSolution sol(sgf::dini_expand(data.omega0, modes, zeros, sgf::rule_for(data)),
                                 sgf::FluidParams(nu, alpha));
    const std::vector<double> radii = sgf::uniform_radii(grid);
    std::cout << "t,r,omega,u_theta\n";
    for (std::size_t s = 0; s < t_samples; ++s) {
        const double t = t_samples == 1 ? t_final
                                        : t_final * static_cast<double>(s) /
                                              static_cast<double>(t_samples - 1);
        const auto omega = sgf::evaluate_vorticity(sol, radii, t);
        const auto vel = sgf::evaluate_velocity(sol, radii, t);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            std::cout << format_double(t) << ',' << format_double(radii[i]) << ','
                      << format_double(omega[i]) << ',' << format_double(vel.u_theta[i]) << '\n';
        }
    }
    return 0;
}

int cmd_verify(const sgf::VerifyOptions& options) {
    const auto results = sgf::run_oracle_suite(options);
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " value=" << format_double(r.value)
                  << " threshold=" << format_double(r.threshold) << "  # " << r.detail << '\n';
        ok = ok && r.passed;
    }
    return ok ? 0 : kExitConsistency;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver and verification harness for the radial second-grade fluid"};
    app.require_subcommand(1);

    std::size_t count = 0;
    double tol = 1e-12;
    auto* zeros = app.add_subcommand("zeros", "Positive zeros of J1 as CSV k,j_k");
    zeros->add_option("--count", count, "Number of zeros")->required();
    zeros->add_option("--tol", tol, "Absolute tolerance (>= 1e-14)");

    std::string initial = "poly:1,-2";
    std::size_t modes = sgf::kDefaultModes;
    bool project = false;
    auto* expand = app.add_subcommand("expand", "Dini coefficients as CSV k,j_k,A_k");
    expand->add_option("--initial", initial, "eigen:k | poly:c0,c2,... | file:path")->required();
    expand->add_option("--modes", modes, "Number of modes");
    expand->add_flag("--project-mean", project, "Subtract the mean instead of rejecting");

    double nu = 0.01, alpha = 0.1, t_final = 1.0;
    std::size_t t_samples = 33, grid = 101;
    auto* evolve = app.add_subcommand("evolve", "Vorticity and velocity samples as CSV t,r,omega,u_theta");
    evolve->add_option("--initial", initial, "eigen:k | poly:c0,c2,... | file:path")->required();
    evolve->add_option("--nu", nu, "Viscosity");
    evolve->add_option("--alpha", alpha, "Elastic length");
    evolve->add_option("--t-final", t_final, "Final time");
    evolve->add_option("--t-samples", t_samples, "Number of time samples (including 0 and T)");
    evolve->add_option("--grid", grid, "Number of equispaced radii on [0, 1]");
    evolve->add_option("--modes", modes, "Number of modes");
    evolve->add_flag("--project-mean", project, "Subtract the mean instead of rejecting");

    sgf::VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "Run the oracle suite");
    verify->add_option("--nu", vopt.nu, "Viscosity");
    verify->add_option("--alpha", vopt.alpha, "Elastic length");
    verify->add_option("--grid", vopt.grid, "Finite-difference nodes");
    verify->add_option("--steps", vopt.steps, "Crank-Nicolson steps");
    verify->add_option("--t-final", vopt.t_final, "Final time");
    verify->add_option("--fd-tol", vopt.fd_tol, "Relative L2 tolerance for FD agreement");

    std::string config_path;
    std::string format = "csv";
    std::string output;
    sgf::ExperimentConfig inline_cfg;
    std::vector<double> nus, alphas;
    sgf::SweepRule rule;
    bool with_rule = false;
    auto* converge = app.add_subcommand("converge", "Convergence sweep over (nu, alpha)");
    converge->add_option("--config", config_path, "JSON config file");
    converge->add_option("--initial", inline_cfg.initial, "Initial data descriptor");
    converge->add_option("--modes", inline_cfg.n_modes, "Number of modes");
    converge->add_option("--t-final", inline_cfg.t_final, "Final time");
    converge->add_option("--t-samples", inline_cfg.t_samples, "Time samples");
    converge->add_option("--grid", inline_cfg.grid_points, "Radii sampled on [0, 0.9]");
    converge->add_option("--nu", nus, "Explicit nu values (paired with --alpha)");
    converge->add_option("--alpha", alphas, "Explicit alpha values (paired with --nu)");
    converge->add_option("--exponent", rule.exponent, "Path rule alpha = nu^p")
        ->each([&](const std::string&) { with_rule = true; });
    converge->add_option("--m-min", rule.m_min, "Path rule: first m in nu = 10^-m")
        ->each([&](const std::string&) { with_rule = true; });
    converge->add_option("--m-max", rule.m_max, "Path rule: last m in nu = 10^-m")
        ->each([&](const std::string&) { with_rule = true; });
    converge->add_flag("--verify", inline_cfg.verify, "Also check FD-vs-spectral agreement per cell");
    converge->add_flag("--project-mean", inline_cfg.project_mean, "Subtract a nonzero mean");
    converge->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    converge->add_option("--output", output, "Destination file (default: standard output)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*zeros) return cmd_zeros(count, tol);
        if (*expand) return cmd_expand(initial, modes, project);
        if (*evolve) return cmd_evolve(initial, nu, alpha, t_final, t_samples, grid, modes, project);
        if (*verify) return cmd_verify(vopt);
        if (*converge) {
            sgf::ExperimentConfig cfg;
            if (!config_path.empty()) {
                cfg = sgf::load_config(config_path);
            } else {
                cfg = inline_cfg;
                if (nus.size() != alphas.size()) {
                    throw sgf::ConfigError("--nu and --alpha must be given the same number of times");
                }
                if (!nus.empty() && with_rule) {
                    throw sgf::ConfigError("give explicit --nu/--alpha pairs or a path rule, not both");
                }
                if (!nus.empty()) {
                    cfg.sweep.clear();
                    for (std::size_t i = 0; i < nus.size(); ++i) cfg.sweep.push_back({nus[i], alphas[i]});
                } else {
                    cfg.sweep = sgf::expand_sweep_rule(rule);
                }
                cfg.validate();
            }
            const sgf::SweepReport report = sgf::run_convergence_sweep(cfg);
            const auto fmt = format == "json" ? sgf::ReportFormat::Json : sgf::ReportFormat::Csv;
            if (output.empty()) {
                sgf::emit_report(report, fmt, std::cout);
            } else {
                sgf::emit_report(report, fmt, std::filesystem::path(output));
            }
            return 0;
        }
    } catch (const sgf::ConsistencyFailure& e) {
        std::cerr << "consistency failure: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const sgf::ZeroMeanViolation& e) {
        std::cerr << "validation failure: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation failure: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation failure: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
