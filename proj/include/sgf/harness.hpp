#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sgf/oracle.hpp"
#include "sgf/profile.hpp"
#include "sgf/quadrature.hpp"
#include "sgf/spectral.hpp"

namespace sgf {

/// An initial vorticity ω₀ together with any kinks a quadrature rule should
/// align its panels to (sample radii of file profiles).
struct InitialData {
    std::string descriptor;
    RadialFunction omega0;
    std::vector<double> kinks;
};

/// "eigen:k" → J₀(j_k r); "poly:c0,c2,c4,..." → Σ c_{2m} r^{2m};
/// "file:path" → two-column CSV r,omega, linearly interpolated.
/// Every profile is checked for the no-slip mean (ZeroMeanViolation).
InitialData builtin_initial(std::string_view name, double tol = kDefaultAdmissibilityTol,
                            bool project_mean = false);

/// Reads "r,omega" rows (optional header). Radii must increase strictly from 0 to 1.
RadialProfile read_profile_csv(const std::filesystem::path& path);

/// Default rule, or a kink-aligned rule when the data has kinks.
QuadratureRule rule_for(const InitialData& data);

struct SweepPoint {
    double nu;
    double alpha;
};

/// ν_m = 10^{-m}, α_m = ν_m^exponent for m = m_min..m_max.
struct SweepRule {
    double exponent = 0.75;
    int m_min = 1;
    int m_max = 5;
};

std::vector<SweepPoint> expand_sweep_rule(const SweepRule& rule);

struct ExperimentConfig {
    std::string initial = "poly:1,-2";
    std::size_t n_modes = kDefaultModes;
    double t_final = 1.0;
    std::size_t t_samples = 33;
    std::size_t grid_points = 91;
    std::vector<SweepPoint> sweep = expand_sweep_rule({});
    bool project_mean = false;
    /// Also run the FD-vs-spectral check (eigen:1 data) for every sweep cell.
    bool verify = false;
    /// admissibility, parseval, velocity_crosscheck, fd_agreement.
    std::map<std::string, double> tolerances = default_tolerances();

    static std::map<std::string, double> default_tolerances();
    double tolerance(const std::string& name) const;

    /// Throws ConfigError on an invalid field.
    void validate() const;
};

/// Parses the JSON config document. Unknown keys are rejected with ConfigError.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct SweepRow {
    double nu;
    double alpha;
    double alpha2_over_nu;
    double sup_err_omega_l2;
    double sup_err_u_l2;
    double max_err_compact;
    double tail_estimate;
};

struct SweepReport {
    std::vector<SweepRow> rows;
};

/// One row per configured (ν, α), in configuration order. A failed
/// cross-check aborts with ConsistencyFailure naming the cell.
SweepReport run_convergence_sweep(const ExperimentConfig& config);

enum class ReportFormat { Csv, Json };

inline constexpr std::string_view kCsvHeader =
    "nu,alpha,alpha2_over_nu,sup_err_omega_l2,sup_err_u_l2,max_err_compact,tail_estimate";

void emit_report(const SweepReport& report, ReportFormat format, std::ostream& out);
/// Throws IoError naming the destination when it cannot be written.
void emit_report(const SweepReport& report, ReportFormat format,
                 const std::filesystem::path& destination);

/// Shortest-safe round-trip decimal: 17 significant digits.
std::string format_double(double x);

// ---------------------------------------------------------------------------
// Oracle suite behind the `verify` subcommand.

struct VerifyOptions {
    double nu = 0.01;
    double alpha = 0.1;
    std::size_t grid = kDefaultFdNodes;
    std::size_t steps = 1000;
    double t_final = 1.0;
    double fd_tol = 1e-4;
};

struct CheckResult {
    std::string name;
    bool passed;
    double value;
    double threshold;
    std::string detail;
};

std::vector<CheckResult> run_oracle_suite(const VerifyOptions& options);

/// Max |G − I| over the normalized Gram matrix (2/J₀(j_k)²)∫ J₀(j_k r)J₀(j_l r) r dr.
double gram_deviation(std::size_t size, const QuadratureRule& rule = default_rule());

/// Relative discrete L² error of CN against the single-mode solution e^{−μ₁t}J₀(j₁r),
/// together with the largest per-step change of the discrete mean.
struct FdAgreement {
    double relative_l2;
    double absolute_l2;
    double max_mean_drift;
};

FdAgreement fd_eigen_agreement(const FluidParams& params, std::size_t grid_nodes,
                               std::size_t steps, double t_final, std::size_t mode = 1);

}  // namespace sgf
