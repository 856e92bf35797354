#include "sgf/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sgf/errors.hpp"

namespace sgf {

namespace {

double parse_number(std::string_view text, std::string_view context) {
    // Trim surrounding blanks.
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument(std::string(context) + ": not a number: '" + std::string(text) +
                                    "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Initial data

RadialProfile read_profile_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open initial-data file '" + path.string() + "'");
    std::vector<double> radii;
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        const bool header_allowed = first_row;
        first_row = false;
        const auto cols = split(line, ',');
        if (cols.size() != 2) {
            throw DomainError(path.string() + ":" + std::to_string(lineno) +
                              ": expected two columns r,omega");
        }
        try {
            const double r = parse_number(cols[0], "r");
            const double w = parse_number(cols[1], "omega");
            radii.push_back(r);
            values.push_back(w);
        } catch (const std::invalid_argument&) {
            if (header_allowed) continue;  // header row
            throw DomainError(path.string() + ":" + std::to_string(lineno) + ": malformed row");
        }
    }
    try {
        return RadialProfile(std::move(radii), std::move(values));
    } catch (const DomainError& e) {
        throw DomainError(path.string() + ": " + e.what());
    }
}

InitialData builtin_initial(std::string_view name, double tol, bool project_mean) {
    const std::size_t colon = name.find(':');
    if (colon == std::string_view::npos) {
        throw UnknownBuiltin("unknown initial data '" + std::string(name) +
                             "' (expected eigen:k, poly:c0,c2,... or file:path)");
    }
    const std::string_view kind = name.substr(0, colon);
    const std::string_view arg = name.substr(colon + 1);
    InitialData data;
    data.descriptor = std::string(name);

    if (kind == "eigen") {
        std::size_t k = 0;
        const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
        if (ec != std::errc() || ptr != arg.data() + arg.size() || k == 0) {
            throw UnknownBuiltin("eigen:k needs an integer k >= 1, got '" + std::string(arg) + "'");
        }
        const double j = j1_zeros(k).j(k);
        data.omega0 = [j](double r) { return bessel_j0(j * r); };
    } else if (kind == "poly") {
        std::vector<double> coeffs;
        for (const auto part : split(arg, ',')) {
            try {
                coeffs.push_back(parse_number(part, "poly coefficient"));
            } catch (const std::invalid_argument& e) {
                throw UnknownBuiltin(e.what());
            }
        }
        // Σ c_{2m} r^{2m} by Horner in r².
        data.omega0 = [coeffs](double r) {
            const double r2 = r * r;
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r2 + *it;
            return acc;
        };
    } else if (kind == "file") {
        RadialProfile profile = validate_initial_vorticity(
            read_profile_csv(std::filesystem::path(std::string(arg))), tol, project_mean);
        data.kinks.assign(profile.radii().begin(), profile.radii().end());
        data.omega0 = [p = std::move(profile)](double r) { return p(r); };
        return data;
    } else {
        throw UnknownBuiltin("unknown initial data kind '" + std::string(kind) + "'");
    }
    data.omega0 = validate_initial_vorticity(std::move(data.omega0), default_rule(), tol,
                                             project_mean);
    return data;
}

QuadratureRule rule_for(const InitialData& data) {
    if (data.kinks.empty()) return default_rule();
    return kink_aligned_rule(data.kinks);
}

// ---------------------------------------------------------------------------
// Configuration

std::vector<SweepPoint> expand_sweep_rule(const SweepRule& rule) {
    if (rule.m_max < rule.m_min) return {};
    std::vector<SweepPoint> points;
    for (int m = rule.m_min; m <= rule.m_max; ++m) {
        const double nu = std::pow(10.0, -static_cast<double>(m));
        points.push_back({nu, std::pow(nu, rule.exponent)});
    }
    return points;
}

std::map<std::string, double> ExperimentConfig::default_tolerances() {
    return {{"admissibility", kDefaultAdmissibilityTol},
            {"parseval", kParsevalTol},
            {"velocity_crosscheck", kVelocityCrossCheckTol},
            {"fd_agreement", 1e-3}};
}

double ExperimentConfig::tolerance(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
    return it->second;
}

void ExperimentConfig::validate() const {
    if (n_modes == 0) throw ConfigError("n_modes must be positive");
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be > 0");
    if (t_samples == 0) throw ConfigError("t_samples must be positive");
    if (grid_points < 3) throw ConfigError("grid_points must be >= 3");
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto& p = sweep[i];
        if (!(p.nu > 0.0) || !std::isfinite(p.nu) || !(p.alpha >= 0.0) ||
            !std::isfinite(p.alpha)) {
            throw ConfigError("sweep entry " + std::to_string(i) +
                              ": need finite nu > 0 and alpha >= 0");
        }
    }
    const auto defaults = default_tolerances();
    for (const auto& [key, value] : tolerances) {
        if (!defaults.contains(key)) throw ConfigError("unknown tolerance '" + key + "'");
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ConfigError("tolerance '" + key + "' must be positive");
        }
    }
}

ExperimentConfig parse_config(std::string_view json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    ExperimentConfig cfg;
    bool have_sweep = false;
    bool have_rule = false;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "initial") {
                cfg.initial = value.get<std::string>();
            } else if (key == "n_modes") {
                cfg.n_modes = value.get<std::size_t>();
            } else if (key == "t_final") {
                cfg.t_final = value.get<double>();
            } else if (key == "t_samples") {
                cfg.t_samples = value.get<std::size_t>();
            } else if (key == "grid_points") {
                cfg.grid_points = value.get<std::size_t>();
            } else if (key == "project_mean") {
                cfg.project_mean = value.get<bool>();
            } else if (key == "verify") {
                cfg.verify = value.get<bool>();
            } else if (key == "sweep") {
                have_sweep = true;
                cfg.sweep.clear();
                for (const auto& entry : value) {
                    if (entry.is_array() && entry.size() == 2) {
                        cfg.sweep.push_back({entry[0].get<double>(), entry[1].get<double>()});
                    } else if (entry.is_object()) {
                        for (const auto& [k, v] : entry.items()) {
                            if (k != "nu" && k != "alpha") {
                                throw ConfigError("unknown key '" + k + "' in sweep entry");
                            }
                        }
                        cfg.sweep.push_back({entry.at("nu").get<double>(),
                                             entry.at("alpha").get<double>()});
                    } else {
                        throw ConfigError("sweep entries must be [nu, alpha] or {nu, alpha}");
                    }
                }
            } else if (key == "sweep_rule") {
                have_rule = true;
                SweepRule rule;
                for (const auto& [k, v] : value.items()) {
                    if (k == "exponent") {
                        rule.exponent = v.get<double>();
                    } else if (k == "m_min") {
                        rule.m_min = v.get<int>();
                    } else if (k == "m_max") {
                        rule.m_max = v.get<int>();
                    } else {
                        throw ConfigError("unknown key '" + k + "' in sweep_rule");
                    }
                }
                cfg.sweep = expand_sweep_rule(rule);
            } else if (key == "tolerances") {
                for (const auto& [k, v] : value.items()) cfg.tolerances[k] = v.get<double>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    }
    if (have_sweep && have_rule) throw ConfigError("give either 'sweep' or 'sweep_rule', not both");
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// ---------------------------------------------------------------------------
// Sweep

SweepReport run_convergence_sweep(const ExperimentConfig& config) {
    config.validate();
    SweepReport report;
    if (config.sweep.empty()) return report;

    const InitialData data = builtin_initial(config.initial, config.tolerance("admissibility"),
                                             config.project_mean);
    const QuadratureRule rule = rule_for(data);
    const BesselZeroTable zeros = j1_zeros(config.n_modes);
    const DiniExpansion expansion = dini_expand(data.omega0, config.n_modes, zeros, rule);
    const double tail = tail_estimate(expansion);
    const CrossCheckTolerances tol{config.tolerance("parseval"),
                                   config.tolerance("velocity_crosscheck")};

    std::vector<double> times(config.t_samples);
    for (std::size_t s = 0; s < config.t_samples; ++s) {
        times[s] = config.t_samples == 1
                       ? config.t_final
                       : config.t_final * static_cast<double>(s) /
                             static_cast<double>(config.t_samples - 1);
    }
    times.back() = config.t_final;

    std::vector<double> compact(config.grid_points);
    for (std::size_t i = 0; i < compact.size(); ++i) {
        compact[i] = 0.9 * static_cast<double>(i) / static_cast<double>(compact.size() - 1);
    }

    for (std::size_t row = 0; row < config.sweep.size(); ++row) {
        const SweepPoint& p = config.sweep[row];
        std::ostringstream cell;
        cell.precision(17);
        cell << "sweep row " << row << " (nu = " << p.nu << ", alpha = " << p.alpha << ")";
        try {
            const FluidParams params(p.nu, p.alpha);
            const ModalSolution sol(expansion, params);
            const ErrorNormEvaluator norms(sol, data.omega0, rule, tol);
            double sup_omega = 0.0;
            double sup_u = 0.0;
            for (double t : times) {
                sup_omega = std::max(sup_omega, norms.vorticity(t).quadrature);
                sup_u = std::max(sup_u, norms.velocity(t).closed_form);
            }
            const std::vector<double> omega_t = evaluate_vorticity(sol, compact, config.t_final);
            double max_err = 0.0;
            for (std::size_t i = 0; i < compact.size(); ++i) {
                max_err = std::max(max_err, std::abs(omega_t[i] - data.omega0(compact[i])));
            }
            if (config.verify) {
                const auto steps = static_cast<std::size_t>(
                    std::ceil(config.t_final * static_cast<double>(kDefaultFdNodes - 1)));
                const FdAgreement fd =
                    fd_eigen_agreement(params, kDefaultFdNodes, steps, config.t_final);
                if (!(fd.absolute_l2 < config.tolerance("fd_agreement"))) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "FD-vs-spectral L2 difference " << fd.absolute_l2 << " exceeds "
                       << config.tolerance("fd_agreement");
                    throw ConsistencyFailure(os.str());
                }
            }
            report.rows.push_back({p.nu, p.alpha, params.elastic_ratio(), sup_omega, sup_u,
                                   max_err, tail});
        } catch (const ConsistencyFailure& e) {
            throw ConsistencyFailure(cell.str() + ": " + e.what());
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Output

std::string format_double(double x) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(n));
}

void emit_report(const SweepReport& report, ReportFormat format, std::ostream& out) {
    if (format == ReportFormat::Csv) {
        out << kCsvHeader << '\n';
        for (const auto& r : report.rows) {
            out << format_double(r.nu) << ',' << format_double(r.alpha) << ','
                << format_double(r.alpha2_over_nu) << ',' << format_double(r.sup_err_omega_l2)
                << ',' << format_double(r.sup_err_u_l2) << ',' << format_double(r.max_err_compact)
                << ',' << format_double(r.tail_estimate) << '\n';
        }
        return;
    }
    // JSON is written by hand so every float keeps 17 significant digits.
    out << "{\n  \"columns\": [";
    const auto cols = split(kCsvHeader, ',');
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? ", " : "") << '"' << cols[i] << '"';
    }
    out << "],\n  \"rows\": [";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        const double vals[] = {r.nu,           r.alpha,        r.alpha2_over_nu, r.sup_err_omega_l2,
                               r.sup_err_u_l2, r.max_err_compact, r.tail_estimate};
        out << (i ? ",\n    {" : "\n    {");
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out << (c ? ", " : "") << '"' << cols[c] << "\": " << format_double(vals[c]);
        }
        out << '}';
    }
    out << (report.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void emit_report(const SweepReport& report, ReportFormat format,
                 const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw IoError("cannot open '" + destination.string() + "' for writing");
    emit_report(report, format, out);
    out.flush();
    if (!out) throw IoError("write to '" + destination.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Oracle suite

double gram_deviation(std::size_t size, const QuadratureRule& rule) {
    const BesselZeroTable zeros = j1_zeros(size);
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    std::vector<double> basis(size * nodes.size());
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            basis[k * nodes.size() + i] = bessel_j0(zeros.zeros()[k] * nodes[i]);
        }
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
        const double j0k = bessel_j0(zeros.zeros()[k]);
        for (std::size_t l = 0; l < size; ++l) {
            double s = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                s += weights[i] * nodes[i] * basis[k * nodes.size() + i] *
                     basis[l * nodes.size() + i];
            }
            const double g = 2.0 * s / (j0k * j0k);
            worst = std::max(worst, std::abs(g - (k == l ? 1.0 : 0.0)));
        }
    }
    return worst;
}

FdAgreement fd_eigen_agreement(const FluidParams& params, std::size_t grid_nodes,
                               std::size_t steps, double t_final, std::size_t mode) {
    const FdGrid grid(grid_nodes);
    const double j = j1_zeros(mode).j(mode);
    const RadialProfile initial =
        sample_zero_mean(grid, [j](double r) { return bessel_j0(j * r); });

    double prev_mean = discrete_mean(grid, initial.values());
    double drift = 0.0;
    const FdState final_state =
        fd_solve(initial, params, grid, t_final, steps, [&](const FdState& s) {
            const double m = discrete_mean(grid, s.values);
            drift = std::max(drift, std::abs(m - prev_mean));
            prev_mean = m;
        });

    const double j2 = j * j;
    const double a2 = params.alpha() * params.alpha();
    const double decay = std::exp(-j2 * params.nu() / (1.0 + j2 * a2) * t_final);
    const auto r = grid.radii();
    std::vector<double> exact(r.size());
    std::vector<double> diff(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        exact[i] = decay * bessel_j0(j * r[i]);
        diff[i] = final_state.values[i] - exact[i];
    }
    const double abs_err = discrete_l2(grid, diff);
    return {abs_err / discrete_l2(grid, exact), abs_err, drift};
}

std::vector<CheckResult> run_oracle_suite(const VerifyOptions& options) {
    const FluidParams params(options.nu, options.alpha);
    std::vector<CheckResult> results;
    auto add = [&](std::string name, double value, double threshold, bool passed,
                   std::string detail = {}) {
        results.push_back({std::move(name), passed, value, threshold, std::move(detail)});
    };

    const double gram = gram_deviation(20);
    add("orthogonality", gram, 1e-8, gram < 1e-8, "max |G - I| over 20x20 Gram matrix");

    {
        const InitialData data = builtin_initial("poly:1,-2");
        const BesselZeroTable zeros = j1_zeros(kDefaultModes);
        const ModalSolution sol(dini_expand(data.omega0, kDefaultModes, zeros), params);
        const ErrorNormEvaluator norms(sol, data.omega0, default_rule(),
                                       {.parseval = 1.0, .velocity = 1.0});
        const auto v = norms.vorticity(options.t_final);
        const double gap = std::abs(v.modal_quadrature - v.spectral);
        add("parseval", gap, kParsevalTol, gap <= kParsevalTol,
            "|quadrature - spectral| of the vorticity error norm, poly:1,-2");
        const auto u = norms.velocity(options.t_final);
        const double ugap = std::abs(u.modal_nested - u.closed_form);
        add("velocity_crosscheck", ugap, kVelocityCrossCheckTol, ugap <= kVelocityCrossCheckTol,
            "|nested quadrature - closed form| of the velocity error norm");
    }

    {
        const BesselZeroTable zeros = j1_zeros(1);
        DiniExpansion single{0.0, {1.0}, zeros};
        const ModalSolution sol(single, params);
        const double t = 0.5;
        const double coarse = pde_residual(sol, FdGrid(513), t, 1e-3);
        const double fine = pde_residual(sol, FdGrid(1025), t, 5e-4);
        if (params.nu() == 0.0) {
            add("residual_order", coarse, 1e-12, coarse < 1e-12,
                "stationary solution: residual must vanish");
        } else {
            const double ratio = coarse / fine;
            add("residual_order", ratio, 4.0, ratio >= 3.5 && ratio <= 4.5,
                "residual ratio under halving h and dt, expected in [3.5, 4.5]");
        }
    }

    const FdAgreement fd =
        fd_eigen_agreement(params, options.grid, options.steps, options.t_final);
    add("fd_agreement", fd.relative_l2, options.fd_tol, fd.relative_l2 < options.fd_tol,
        "relative L2 error of Crank-Nicolson vs modal solution, eigen:1");
    add("mean_conservation", fd.max_mean_drift, 1e-12, fd.max_mean_drift < 1e-12,
        "max per-step change of the discrete weighted mean");
    return results;
}

}  // namespace sgf
