// Copyright 2026 The bellsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellsim/engine.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/statistics.hpp"

namespace bellsim::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char *kToolVersion = "0.1.0";

struct RunConfig {
    std::string command;
    std::string out_path;
    std::string format = "json";
    std::string pointer = "delta";
    std::string method = "auto";
    std::optional<std::size_t> sites;
    double sigma = 1.0;
    std::optional<double> epsilon;
    std::optional<double> time;
    std::optional<double> coupling;
    double mu = 1.0;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    double leak_tolerance = 1e-6;

    double alpha_deg = 0.0;
    double beta_deg = 22.5;
    std::size_t resolution = 19;
    double a_deg = 0.0;
    double a_prime_deg = 45.0;
    double b_deg = 22.5;
    double b_prime_deg = 67.5;
    std::size_t n_samples = 100000;
    std::vector<double> sigmas{1.0, 2.0, 4.0};
};

/// Everything a command produces. Rendered either as one JSON object or as
/// CSV with the metadata and summary as leading '#' lines.
struct Report {
    json metadata;
    json summary = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

std::string format_cell(const json &cell) {
    if (cell.is_string()) {
        return cell.get<std::string>();
    }
    if (cell.is_number_float()) {
        return format_number(cell.get<double>());
    }
    return cell.dump();
}

void write_flat(std::ostream &os, const std::string &prefix, const json &j) {
    if (j.is_object()) {
        for (const auto &[key, value] : j.items()) {
            write_flat(os, prefix.empty() ? key : prefix + "." + key, value);
        }
    } else {
        os << "# " << prefix << ": " << format_cell(j) << '\n';
    }
}

void render(const Report &report, const std::string &format,
            std::ostream &os) {
    if (format == "csv") {
        write_flat(os, "metadata", report.metadata);
        write_flat(os, "summary", report.summary);
        for (std::size_t c = 0; c < report.columns.size(); ++c) {
            os << (c ? "," : "") << report.columns[c];
        }
        os << '\n';
        for (const auto &row : report.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "," : "") << format_cell(row[c]);
            }
            os << '\n';
        }
        return;
    }
    json rows = json::array();
    for (const auto &row : report.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            obj[report.columns[c]] = row[c];
        }
        rows.push_back(std::move(obj));
    }
    const json doc{{"metadata", report.metadata},
                   {"summary", report.summary},
                   {"rows", std::move(rows)}};
    os << doc.dump(2) << '\n';
}

double rad(double deg) { return degrees_to_radians(deg); }

/// Resolves epsilon = time * coupling from whichever of the three were
/// given. Defaults: time 1, epsilon `default_eps`.
ExperimentConfig experiment_config(const RunConfig &rc,
                                   std::size_t default_sites,
                                   double default_eps) {
    ExperimentConfig config;
    config.pointer_sites = rc.sites.value_or(default_sites);
    if (rc.pointer == "delta") {
        config.pointer_mode = PointerMode::delta();
    } else {
        config.pointer_mode = PointerMode::gaussian(rc.sigma);
    }
    double t = rc.time.value_or(1.0);
    double lambda = rc.coupling.value_or(default_eps);
    if (rc.epsilon) {
        if (rc.time && rc.coupling) {
            if (std::abs(*rc.time * *rc.coupling - *rc.epsilon) > 1e-12) {
                throw ConfigError("--epsilon disagrees with --time * --coupling");
            }
        } else if (rc.coupling) {
            if (*rc.coupling == 0.0) {
                throw ConfigError("--coupling 0 cannot produce --epsilon");
            }
            t = *rc.epsilon / *rc.coupling;
        } else {
            if (t == 0.0) {
                throw ConfigError("--time 0 cannot produce --epsilon");
            }
            lambda = *rc.epsilon / t;
        }
    } else if (rc.time && !rc.coupling) {
        lambda = default_eps / t;
    }
    config.interaction_time = t;
    config.coupling = lambda;
    config.tolerance = rc.tolerance;
    config.leak_tolerance = rc.leak_tolerance;
    config.seed = rc.seed;
    config.analyzers = {rad(rc.alpha_deg), rad(rc.beta_deg)};
    config.validate();
    return config;
}

EvolutionMethod resolve_method(const std::string &name,
                               const ExperimentConfig &config) {
    if (name == "exact") {
        return EvolutionMethod::exact;
    }
    if (name == "factorized") {
        return EvolutionMethod::factorized;
    }
    if (name == "branch") {
        return EvolutionMethod::branch;
    }
    return config.layout().total_dim() <= config.max_dim
               ? EvolutionMethod::exact
               : EvolutionMethod::branch;
}

json metadata(const RunConfig &rc, const ExperimentConfig &config) {
    json cfg{
        {"alpha_deg", rc.alpha_deg},
        {"beta_deg", rc.beta_deg},
        {"pointer", rc.pointer},
        {"sites", config.pointer_sites},
        {"time", config.interaction_time},
        {"coupling", config.coupling},
        {"epsilon", config.epsilon()},
        {"mu", rc.mu},
        {"seed", rc.seed},
        {"method", rc.method},
        {"format", rc.format},
        {"leak_tolerance", rc.leak_tolerance},
    };
    if (rc.pointer == "gaussian") {
        cfg["sigma"] = rc.sigma;
    }
    if (rc.command == "scan") {
        cfg["resolution"] = rc.resolution;
    } else if (rc.command == "chsh") {
        cfg["a_deg"] = rc.a_deg;
        cfg["a_prime_deg"] = rc.a_prime_deg;
        cfg["b_deg"] = rc.b_deg;
        cfg["b_prime_deg"] = rc.b_prime_deg;
    } else if (rc.command == "sample") {
        cfg["n"] = rc.n_samples;
    } else if (rc.command == "converge") {
        cfg["sigmas"] = rc.sigmas;
    }
    return {{"tool", "bellsim"},
            {"version", kToolVersion},
            {"schema_version", kSchemaVersion},
            {"command", rc.command},
            {"tolerance", config.tolerance},
            {"config", std::move(cfg)}};
}

std::vector<json> probability_cells(const OutcomeProbabilities &p) {
    return {p.pp, p.pm, p.mp, p.mm, p.inconclusive};
}

Report cmd_probs(const RunConfig &rc) {
    const auto config = experiment_config(rc, 3, 1.0);
    const auto method = resolve_method(rc.method, config);
    const auto result = run(config, method);
    const auto closed = closed_form_probabilities(config.analyzers);
    const auto dist =
        OutcomeDistribution::from(result.outcome_probs, config.analyzers);

    Report r;
    r.metadata = metadata(rc, config);
    r.columns = {"alpha_deg",    "beta_deg",    "method",      "p_pp",
                 "p_pm",         "p_mp",        "p_mm",        "p_inconclusive",
                 "closed_pp",    "closed_pm",   "closed_mp",   "closed_mm",
                 "max_abs_error", "correlation"};
    std::vector<json> row{rc.alpha_deg, rc.beta_deg, to_string(method)};
    for (auto &cell : probability_cells(result.outcome_probs)) {
        row.push_back(std::move(cell));
    }
    row.insert(row.end(), {closed.pp, closed.pm, closed.mp, closed.mm});
    row.emplace_back(max_abs_difference(result.outcome_probs, closed));
    row.emplace_back(correlation(dist));
    r.rows.push_back(std::move(row));
    return r;
}

Report cmd_scan(const RunConfig &rc) {
    if (rc.resolution < 1) {
        throw ConfigError("--resolution must be at least 1");
    }
    auto config = experiment_config(rc, 3, 1.0);
    const auto method = resolve_method(rc.method, config);
    Report r;
    r.metadata = metadata(rc, config);
    r.columns = {"alpha_deg", "beta_deg", "p_pp", "p_pm", "p_mp",
                 "p_mm", "p_inconclusive", "correlation"};
    const auto grid = angle_grid(rc.resolution);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            config.analyzers = {grid[i], grid[j]};
            const auto result = run(config, method);
            const auto dist = OutcomeDistribution::from(result.outcome_probs,
                                                        config.analyzers);
            worst = std::max(worst,
                             max_abs_difference(
                                 result.outcome_probs,
                                 closed_form_probabilities(config.analyzers)));
            std::vector<json> row{180.0 * static_cast<double>(i) /
                                      static_cast<double>(rc.resolution),
                                  180.0 * static_cast<double>(j) /
                                      static_cast<double>(rc.resolution)};
            for (auto &cell : probability_cells(result.outcome_probs)) {
                row.push_back(std::move(cell));
            }
            row.emplace_back(correlation(dist));
            r.rows.push_back(std::move(row));
        }
    }
    r.summary = {{"points", r.rows.size()},
                 {"method", to_string(method)},
                 {"max_abs_error_vs_closed_form", worst}};
    return r;
}

Report cmd_chsh(const RunConfig &rc) {
    const auto config = experiment_config(rc, 3, 1.0);
    const auto method = resolve_method(rc.method, config);
    const ChshAngles angles{rad(rc.a_deg), rad(rc.a_prime_deg), rad(rc.b_deg),
                            rad(rc.b_prime_deg)};
    const auto result = chsh(angles, local_engine(config, method));
    Report r;
    r.metadata = metadata(rc, config);
    r.columns = {"a_deg", "a_prime_deg", "b_deg", "b_prime_deg", "E_ab",
                 "E_ab_prime", "E_a_prime_b", "E_a_prime_b_prime", "S",
                 "tsirelson_bound"};
    r.rows.push_back({rc.a_deg, rc.a_prime_deg, rc.b_deg, rc.b_prime_deg,
                      result.correlations[0], result.correlations[1],
                      result.correlations[2], result.correlations[3], result.s,
                      2.0 * std::numbers::sqrt2});
    return r;
}

Report cmd_locality(const RunConfig &rc) {
    const auto config = experiment_config(rc, 3, 1.0);
    const auto layout = config.layout();
    const StateVector psi0 = initial_state(config);
    const ComplexMatrix h_a = local_hamiltonian(Station::A, config, layout);
    const ComplexMatrix h_b = local_hamiltonian(Station::B, config, layout);
    const ComplexMatrix h_b_nonlocal = nonlocal_hamiltonian(config, rc.mu, layout);

    Report r;
    r.metadata = metadata(rc, config);
    r.columns = {"hamiltonians", "commutator_norm", "factorization_gap",
                 "order_swap_state_gap", "order_swap_probability_gap"};
    const auto add = [&](const char *label, const ComplexMatrix &hb) {
        const auto swap = order_swap_gap(config, h_a, hb, psi0);
        r.rows.push_back({label, commutator_norm(h_a, hb),
                          factorization_gap(config, h_a, hb), swap.state_gap,
                          swap.probability_gap});
    };
    add("local", h_b);
    add("nonlocal", h_b_nonlocal);
    return r;
}

Report cmd_sample(const RunConfig &rc) {
    if (rc.n_samples < 1) {
        throw ConfigError("--n must be at least 1");
    }
    const auto config = experiment_config(rc, 3, 1.0);
    const auto result = run(config, resolve_method(rc.method, config));
    const auto dist =
        OutcomeDistribution::from(result.outcome_probs, config.analyzers);
    const auto seq = sample(dist, rc.n_samples, rc.seed);
    const auto counts = seq.counts();
    const auto q = dist.renormalized();

    Report r;
    r.metadata = metadata(rc, config);
    json c = json::object();
    json f = json::object();
    json p = json::object();
    for (const Outcome o : kOutcomes) {
        const auto i = static_cast<std::size_t>(o);
        c[to_string(o)] = counts[i];
        f[to_string(o)] =
            static_cast<double>(counts[i]) / static_cast<double>(rc.n_samples);
        p[to_string(o)] = q[i];
    }
    r.summary = {{"n", rc.n_samples},
                 {"prng", "mt19937_64"},
                 {"counts", c},
                 {"frequencies", f},
                 {"probabilities", p},
                 {"p_inconclusive", dist.p_inconclusive}};
    // The goodness-of-fit self test has its own preconditions; report why it
    // was skipped instead of failing the whole command.
    try {
        const auto chi = chi_square_self_test(seq, dist);
        const double critical = chi_square_critical_99(chi.dof);
        r.summary["chi_square"] = {{"statistic", chi.statistic},
                                   {"dof", chi.dof},
                                   {"critical_99", critical},
                                   {"passed", chi.statistic <= critical}};
    } catch (const std::invalid_argument &e) {
        r.summary["chi_square"] = {{"skipped", e.what()}};
    }
    r.columns = {"trial", "outcome"};
    r.rows.reserve(seq.outcomes.size());
    for (std::size_t k = 0; k < seq.outcomes.size(); ++k) {
        r.rows.push_back({k, to_string(seq.outcomes[k])});
    }
    return r;
}

Report cmd_converge(const RunConfig &rc) {
    if (rc.sigmas.empty()) {
        throw ConfigError("--sigmas needs at least one value");
    }
    RunConfig gaussian = rc;
    gaussian.pointer = "gaussian";
    gaussian.sigma = rc.sigmas.front();
    auto config = experiment_config(gaussian, 64, 8.0);
    // Wide pointers are the object of study here: their leaked mass is
    // reported as inconclusive instead of rejected.
    config.leak_tolerance = 1.0;

    Report r;
    r.metadata = metadata(gaussian, config);
    r.metadata["config"]["leak_tolerance"] = config.leak_tolerance;
    r.columns = {"sigma", "sigma_over_epsilon", "p_pp", "p_pm", "p_mp", "p_mm",
                 "p_inconclusive", "max_deviation", "branch_off_diagonal",
                 "pointer_overlap"};
    const auto closed = closed_form_probabilities(config.analyzers);
    for (const double sigma : rc.sigmas) {
        config.pointer_mode = PointerMode::gaussian(sigma);
        config.validate();
        const auto result = run(config, EvolutionMethod::branch);
        const ComplexMatrix m = branch_basis_matrix(config, result.pointer_density);
        std::vector<json> row{sigma, sigma / config.epsilon()};
        for (auto &cell : probability_cells(result.outcome_probs)) {
            row.push_back(std::move(cell));
        }
        row.emplace_back(max_abs_difference(result.outcome_probs, closed));
        row.emplace_back(max_off_diagonal(m));
        row.emplace_back(displaced_overlap(config));
        r.rows.push_back(std::move(row));
    }
    return r;
}

void add_common(CLI::App *sub, RunConfig &rc) {
    sub->add_option("--out", rc.out_path, "Write output to this file");
    sub->add_option("--format", rc.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--pointer", rc.pointer, "Pointer initial state")
        ->check(CLI::IsMember({"delta", "gaussian"}));
    sub->add_option("--sites", rc.sites, "Pointer lattice sites N");
    sub->add_option("--sigma", rc.sigma, "Gaussian pointer width (sites)");
    sub->add_option("--epsilon", rc.epsilon,
                    "Pointer displacement epsilon = time * coupling");
    sub->add_option("--time", rc.time, "Interaction time t");
    sub->add_option("--coupling", rc.coupling, "Coupling strength lambda");
    sub->add_option("--mu", rc.mu, "Nonlocal cross-coupling strength");
    sub->add_option("--seed", rc.seed, "PRNG seed");
    sub->add_option("--tolerance", rc.tolerance,
                    "Tolerance for numerical invariant checks");
    sub->add_option("--leak-tolerance", rc.leak_tolerance,
                    "Max initial pointer mass outside the neutral bin");
    sub->add_option("--method", rc.method, "Evolution method")
        ->check(CLI::IsMember({"auto", "exact", "factorized", "branch"}));
}

void add_angles(CLI::App *sub, RunConfig &rc) {
    sub->add_option("--alpha", rc.alpha_deg, "Station A analyzer (degrees)");
    sub->add_option("--beta", rc.beta_deg, "Station B analyzer (degrees)");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
    RunConfig rc;
    CLI::App app{"Von Neumann measurement simulator for a two-station Bell "
                 "experiment",
                 "bellsim"};
    app.require_subcommand(1);

    auto *probs = app.add_subcommand("probs", "Outcome probabilities");
    add_common(probs, rc);
    add_angles(probs, rc);

    auto *scan = app.add_subcommand("scan", "Probabilities over an angle grid");
    add_common(scan, rc);
    scan->add_option("--resolution", rc.resolution,
                     "Grid points per angle over [0, 180) degrees");

    auto *chsh_cmd = app.add_subcommand("chsh", "CHSH S value");
    add_common(chsh_cmd, rc);
    chsh_cmd->add_option("--a", rc.a_deg, "Angle a (degrees)");
    chsh_cmd->add_option("--a-prime", rc.a_prime_deg, "Angle a' (degrees)");
    chsh_cmd->add_option("--b", rc.b_deg, "Angle b (degrees)");
    chsh_cmd->add_option("--b-prime", rc.b_prime_deg, "Angle b' (degrees)");

    auto *locality = app.add_subcommand(
        "locality", "Commutator and factorization diagnostics");
    add_common(locality, rc);
    add_angles(locality, rc);

    auto *sample_cmd = app.add_subcommand("sample", "Seeded outcome sampling");
    add_common(sample_cmd, rc);
    add_angles(sample_cmd, rc);
    sample_cmd->add_option("--n", rc.n_samples, "Number of trials");

    auto *converge = app.add_subcommand(
        "converge", "Gaussian pointer deviation from the ideal probabilities");
    add_common(converge, rc);
    add_angles(converge, rc);
    converge->add_option("--sigmas", rc.sigmas, "Gaussian widths to compare")
        ->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "bellsim: " << e.what() << '\n';
        return kConfigError;
    }
    rc.command = app.get_subcommands().front()->get_name();

    try {
        Report report;
        if (rc.command == "probs") {
            report = cmd_probs(rc);
        } else if (rc.command == "scan") {
            report = cmd_scan(rc);
        } else if (rc.command == "chsh") {
            report = cmd_chsh(rc);
        } else if (rc.command == "locality") {
            report = cmd_locality(rc);
        } else if (rc.command == "sample") {
            report = cmd_sample(rc);
        } else {
            report = cmd_converge(rc);
        }

        if (rc.out_path.empty()) {
            render(report, rc.format, out);
        } else {
            std::ofstream file(rc.out_path);
            if (!file) {
                err << "bellsim: cannot open " << rc.out_path << '\n';
                return kConfigError;
            }
            render(report, rc.format, file);
        }
    } catch (const ConfigError &e) {
        err << "bellsim: configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument &e) {
        err << "bellsim: configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvariantError &e) {
        err << "bellsim: numerical invariant violated: " << e.what() << '\n';
        return kInvariantError;
    }
    return kSuccess;
}

} // namespace bellsim::cli
