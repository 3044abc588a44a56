// Copyright 2026 The speclocc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speclocc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "speclocc/bench.hpp"
#include "speclocc/entangle.hpp"
#include "speclocc/errors.hpp"
#include "speclocc/estimator.hpp"
#include "speclocc/lemma.hpp"
#include "speclocc/model.hpp"
#include "speclocc/sampling.hpp"

namespace speclocc {

namespace {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form, so serialized numbers are lossless and
// reruns are byte-identical.
std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

Json matrix_to_json(const Eigen::MatrixXd &m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const Eigen::VectorXd &v) {
    Json out = Json::array();
    for (int k = 0; k < v.size(); ++k) {
        out.push_back(v(k));
    }
    return out;
}

// --- config access helpers; every message names the offending field ------

const Json &require_field(const Json &config, const char *field) {
    const auto it = config.find(field);
    if (it == config.end()) {
        throw ValidationError(std::string(field) + ": required field is missing");
    }
    return *it;
}

long long get_integer(const Json &config, const char *field) {
    const Json &value = require_field(config, field);
    if (!value.is_number_integer()) {
        throw ValidationError(std::string(field) + ": expected an integer");
    }
    return value.get<long long>();
}

long long get_integer_or(const Json &config, const char *field, long long fallback) {
    return config.contains(field) ? get_integer(config, field) : fallback;
}

double get_real(const Json &config, const char *field) {
    const Json &value = require_field(config, field);
    if (!value.is_number()) {
        throw ValidationError(std::string(field) + ": expected a number");
    }
    return value.get<double>();
}

std::uint64_t get_seed(const Json &config) {
    const Json &value = require_field(config, "seed");
    if (!value.is_number_integer() ||
        (value.is_number_integer() && !value.is_number_unsigned() &&
         value.get<long long>() < 0)) {
        throw ValidationError("seed: expected a nonnegative integer (no wall-clock seeding)");
    }
    return value.get<std::uint64_t>();
}

std::vector<long long> get_integer_list(const Json &config, const char *field) {
    const Json &value = require_field(config, field);
    if (!value.is_array() || value.empty()) {
        throw ValidationError(std::string(field) + ": expected a nonempty array");
    }
    std::vector<long long> out;
    for (const Json &item : value) {
        if (!item.is_number_integer()) {
            throw ValidationError(std::string(field) + ": expected integer entries");
        }
        out.push_back(item.get<long long>());
    }
    return out;
}

std::vector<double> get_real_list(const Json &config, const char *field) {
    const Json &value = require_field(config, field);
    if (!value.is_array() || value.empty()) {
        throw ValidationError(std::string(field) + ": expected a nonempty array");
    }
    std::vector<double> out;
    for (const Json &item : value) {
        if (!item.is_number()) {
            throw ValidationError(std::string(field) + ": expected numeric entries");
        }
        out.push_back(item.get<double>());
    }
    return out;
}

// n-grid from either "n_grid" or a single "n".
std::vector<long long> get_n_grid(const Json &config) {
    if (config.contains("n_grid")) {
        return get_integer_list(config, "n_grid");
    }
    if (config.contains("n")) {
        return {get_integer(config, "n")};
    }
    throw ValidationError("n: either n or n_grid is required");
}

std::vector<double> get_mu_list(const Json &config) {
    if (config.contains("mu_list")) {
        return get_real_list(config, "mu_list");
    }
    if (config.contains("mu")) {
        return {get_real(config, "mu")};
    }
    throw ValidationError("mu: either mu or mu_list is required");
}

SpectrumParams get_spectrum(const Json &config) {
    const long long d = get_integer(config, "d");
    if (d < 2 || d > 16) {
        throw ValidationError("d: dimension must lie in [2, 16]");
    }
    const std::vector<double> entries = get_real_list(config, "spectrum");
    if (static_cast<long long>(entries.size()) != d - 1) {
        throw ValidationError("spectrum: expected d-1 entries");
    }
    SpectrumParams params;
    params.d = static_cast<int>(d);
    params.p = Eigen::Map<const Eigen::VectorXd>(entries.data(),
                                                 static_cast<int>(entries.size()));
    if (!params.in_simplex()) {
        throw ValidationError(
            "spectrum: entries must lie in [0,1] with sum at most 1 (simplex membership)");
    }
    return params;
}

Matrix random_frame(int d, std::uint64_t frame_seed, std::uint64_t stream) {
    const HermitianBasis basis = gell_mann_basis(d);
    RngStream rng(frame_seed, stream);
    Eigen::VectorXd eta(basis.size());
    for (int a = 0; a < basis.size(); ++a) {
        eta(a) = rng.next_uniform(-2.0, 2.0);
    }
    return unitary_from_generators(eta, basis);
}

// "eigenframe": "identity" (default) or {"random": <seed>}.
Matrix get_frame(const Json &config, int d, std::uint64_t stream = 0) {
    if (!config.contains("eigenframe") || config["eigenframe"] == "identity") {
        return Matrix::Identity(d, d);
    }
    const Json &value = config["eigenframe"];
    if (value.is_object() && value.contains("random") &&
        value["random"].is_number_integer()) {
        return random_frame(d, value["random"].get<std::uint64_t>(), stream);
    }
    throw ValidationError("eigenframe: expected \"identity\" or {\"random\": <seed>}");
}

std::string get_format(const Json &config) {
    if (!config.contains("format")) {
        return "json";
    }
    const Json &value = config["format"];
    if (!value.is_string() || (value != "json" && value != "csv")) {
        throw ValidationError("format: expected \"json\" or \"csv\"");
    }
    return value.get<std::string>();
}

void reject_unknown_fields(const Json &config,
                           std::initializer_list<const char *> known) {
    for (const auto &item : config.items()) {
        bool found = false;
        for (const char *name : known) {
            if (item.key() == name) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ValidationError(item.key() + ": unknown config field");
        }
    }
}

// Provenance header shared by every CSV table.
void csv_preamble(std::ostringstream &out, const Json &resolved) {
    out << "# speclocc " << kArtifactVersion << "\n";
    out << "# config " << resolved.dump() << "\n";
}

Json envelope(const std::string &command, const Json &resolved) {
    Json out;
    out["command"] = command;
    out["version"] = kArtifactVersion;
    out["config"] = resolved;
    return out;
}

// --- commands -------------------------------------------------------------

ExperimentResult run_estimate(const Json &config) {
    reject_unknown_fields(config, {"command", "d", "spectrum", "eigenframe", "n",
                                   "mu", "seed", "out", "format"});
    const SpectrumParams params = get_spectrum(config);
    const long long n = get_integer(config, "n");
    const double mu = get_real(config, "mu");
    const std::uint64_t seed = get_seed(config);
    const Matrix frame = get_frame(config, params.d);
    if (get_format(config) != "json") {
        throw ValidationError("format: estimate emits JSON only");
    }

    const Matrix rho = rho_from_spectrum(params, frame);
    const HermitianBasis basis = gell_mann_basis(params.d);
    RngStream rng(seed, 0);
    const SpectrumEstimate estimate = adaptive_estimate(rho, n, mu, basis, rng);

    Json resolved = config;
    if (!resolved.contains("eigenframe")) {
        resolved["eigenframe"] = "identity";
    }
    if (!resolved.contains("format")) {
        resolved["format"] = "json";
    }

    Json out = envelope("estimate", resolved);
    out["p_hat"] = vector_to_json(estimate.p_hat);
    out["split"] = {{"n0", estimate.split.n0},
                    {"n_initial", estimate.split.n_initial},
                    {"n_final", estimate.split.n_final},
                    {"mu", estimate.split.mu}};
    Json counts = Json::array();
    for (long long c : estimate.second_stage_counts.counts) {
        counts.push_back(c);
    }
    out["second_stage_counts"] = std::move(counts);
    out["sigma_eigenvalues"] = vector_to_json(estimate.sigma_eigenvalues);
    out["close_eigenvalues"] = estimate.close_eigenvalues;

    ExperimentResult result;
    result.json = out.dump(2) + "\n";
    return result;
}

ExperimentResult run_bench(const Json &config) {
    reject_unknown_fields(config, {"command", "d", "spectrum", "eigenframe", "n",
                                   "n_grid", "mu", "trials", "seed", "strategy",
                                   "out", "format"});
    const SpectrumParams params = get_spectrum(config);
    const std::vector<long long> n_grid = get_n_grid(config);
    const long long trials = get_integer_or(config, "trials", 2000);
    const std::uint64_t seed = get_seed(config);
    const Matrix frame = get_frame(config, params.d);

    Strategy strategy = Strategy::kAdaptive;
    if (config.contains("strategy")) {
        const Json &value = config["strategy"];
        if (value == "known-basis") {
            strategy = Strategy::kKnownBasis;
        } else if (value != "adaptive") {
            throw ValidationError("strategy: expected \"adaptive\" or \"known-basis\"");
        }
    }
    // mu plays no role when the basis is known.
    const double mu = strategy == Strategy::kKnownBasis && !config.contains("mu")
                          ? 0.5
                          : get_real(config, "mu");

    Json resolved = config;
    if (!resolved.contains("eigenframe")) {
        resolved["eigenframe"] = "identity";
    }
    resolved["trials"] = trials;
    if (!resolved.contains("strategy")) {
        resolved["strategy"] = "adaptive";
    }
    if (!resolved.contains("format")) {
        resolved["format"] = "json";
    }

    std::vector<MseReport> reports;
    reports.reserve(n_grid.size());
    for (long long n : n_grid) {
        reports.push_back(
            mse_monte_carlo(params, frame, n, mu, trials, seed, strategy));
    }

    Json out = envelope("bench-qcrb", resolved);
    Json rows = Json::array();
    for (const MseReport &report : reports) {
        Json row;
        row["n"] = report.n;
        row["mu"] = report.mu;
        row["trials"] = report.trials;
        row["seed"] = report.seed;
        row["strategy"] =
            report.strategy == Strategy::kAdaptive ? "adaptive" : "known-basis";
        row["mse"] = matrix_to_json(report.mse);
        row["scaled_mse"] = matrix_to_json(report.scaled_mse);
        row["qcrb_target"] = matrix_to_json(report.qcrb_target);
        row["gap"] = matrix_to_json(report.gap);
        row["standard_errors"] = matrix_to_json(report.standard_errors);
        row["bias"] = vector_to_json(report.bias);
        rows.push_back(std::move(row));
    }
    out["results"] = std::move(rows);

    std::ostringstream csv;
    csv_preamble(csv, resolved);
    csv << "d,N,mu,R,seed,k,l,mse,scaled_mse,target,gap,stderr\n";
    for (const MseReport &report : reports) {
        const int m = params.d - 1;
        for (int k = 0; k < m; ++k) {
            for (int l = 0; l < m; ++l) {
                csv << params.d << ',' << report.n << ',' << format_double(report.mu)
                    << ',' << report.trials << ',' << report.seed << ',' << (k + 1)
                    << ',' << (l + 1) << ',' << format_double(report.mse(k, l)) << ','
                    << format_double(report.scaled_mse(k, l)) << ','
                    << format_double(report.qcrb_target(k, l)) << ','
                    << format_double(report.gap(k, l)) << ','
                    << format_double(report.standard_errors(k, l)) << "\n";
            }
        }
    }

    ExperimentResult result;
    result.json = out.dump(2) + "\n";
    result.csv = csv.str();
    result.has_csv = true;
    return result;
}

ExperimentResult run_sweep(const Json &config) {
    reject_unknown_fields(config, {"command", "d", "spectrum", "eigenframe", "n",
                                   "n_grid", "mu", "mu_list", "trials", "seed",
                                   "out", "format"});
    const SpectrumParams params = get_spectrum(config);
    const std::vector<long long> n_grid = get_n_grid(config);
    const std::vector<double> mu_list = get_mu_list(config);
    const long long trials = get_integer_or(config, "trials", 10000);
    const std::uint64_t seed = get_seed(config);
    const Matrix frame = get_frame(config, params.d);

    Json resolved = config;
    if (!resolved.contains("eigenframe")) {
        resolved["eigenframe"] = "identity";
    }
    resolved["trials"] = trials;
    if (!resolved.contains("format")) {
        resolved["format"] = "json";
    }

    const std::vector<SweepCell> cells =
        mu_threshold_sweep(params, frame, n_grid, mu_list, trials, seed);

    Json out = envelope("sweep-mu", resolved);
    Json rows = Json::array();
    for (const SweepCell &cell : cells) {
        Json row;
        row["n"] = cell.n;
        row["mu"] = cell.mu;
        row["trials"] = cell.trials;
        row["seed"] = cell.seed;
        row["scaled_bias_sq"] = matrix_to_json(cell.scaled_bias_sq);
        row["standard_errors"] = matrix_to_json(cell.standard_errors);
        rows.push_back(std::move(row));
    }
    out["results"] = std::move(rows);

    std::ostringstream csv;
    csv_preamble(csv, resolved);
    csv << "d,N,mu,R,seed,k,l,scaled_bias_sq,stderr\n";
    for (const SweepCell &cell : cells) {
        const int m = params.d - 1;
        for (int k = 0; k < m; ++k) {
            for (int l = 0; l < m; ++l) {
                csv << params.d << ',' << cell.n << ',' << format_double(cell.mu)
                    << ',' << cell.trials << ',' << cell.seed << ',' << (k + 1) << ','
                    << (l + 1) << ',' << format_double(cell.scaled_bias_sq(k, l))
                    << ',' << format_double(cell.standard_errors(k, l)) << "\n";
            }
        }
    }

    ExperimentResult result;
    result.json = out.dump(2) + "\n";
    result.csv = csv.str();
    result.has_csv = true;
    return result;
}

ExperimentResult run_verify_lemma1(const Json &config) {
    reject_unknown_fields(config,
                          {"command", "d", "dims", "trials", "seed", "out", "format"});
    std::vector<int> dims;
    if (config.contains("dims")) {
        for (long long d : get_integer_list(config, "dims")) {
            if (d < 2 || d > 16) {
                throw ValidationError("dims: dimensions must lie in [2, 16]");
            }
            dims.push_back(static_cast<int>(d));
        }
    } else if (config.contains("d")) {
        dims.push_back(static_cast<int>(get_integer(config, "d")));
    } else {
        dims = {2, 3, 4};
    }
    const long long trials = get_integer_or(config, "trials", 10000);
    const std::uint64_t seed = get_seed(config);
    if (get_format(config) != "json") {
        throw ValidationError("format: verify-lemma1 emits JSON only");
    }

    Json resolved = config;
    resolved["dims"] = dims;
    resolved["trials"] = trials;
    if (!resolved.contains("format")) {
        resolved["format"] = "json";
    }

    const ViolationReport report = run_lemma1_suite(trials, dims, seed);

    Json out = envelope("verify-lemma1", resolved);
    out["samples_tested"] = report.samples_tested;
    out["degenerate_instances"] = report.degenerate_instances;
    out["violations"] = report.violations;
    out["worst_margins"] = report.worst_margins;
    out["clean"] = report.clean();

    ExperimentResult result;
    result.status = report.clean() ? kStatusOk : kStatusSuiteFailure;
    if (!report.clean()) {
        result.error = "verify-lemma1: violations detected";
    }
    result.json = out.dump(2) + "\n";
    return result;
}

ExperimentResult run_verify_tails(const Json &config) {
    reject_unknown_fields(config, {"command", "d", "spectrum", "eigenframe", "n",
                                   "n_grid", "mu", "epsilon_list", "trials", "seed",
                                   "out", "format"});
    const SpectrumParams params = get_spectrum(config);
    const std::vector<long long> n_grid = get_n_grid(config);
    const double mu = get_real(config, "mu");
    const long long trials = get_integer_or(config, "trials", 10000);
    const std::uint64_t seed = get_seed(config);
    const Matrix frame = get_frame(config, params.d);
    std::vector<double> epsilons = {0.5, 1.0};
    if (config.contains("epsilon_list")) {
        epsilons = get_real_list(config, "epsilon_list");
    }
    if (get_format(config) != "json") {
        throw ValidationError("format: verify-tails emits JSON only");
    }

    Json resolved = config;
    if (!resolved.contains("eigenframe")) {
        resolved["eigenframe"] = "identity";
    }
    resolved["trials"] = trials;
    resolved["epsilon_list"] = epsilons;
    if (!resolved.contains("format")) {
        resolved["format"] = "json";
    }

    bool ok = true;

    // Part one: the binomial concentration bound dominates the exact
    // two-sided tail across the fixed grid.
    long long grid_points = 0;
    long long chernoff_violations = 0;
    double worst_excess = -1.0;
    for (long long n : {10LL, 100LL, 1000LL}) {
        for (double p : {0.1, 0.3, 0.5}) {
            for (long long lambda = 0; lambda <= n / 2; ++lambda) {
                const long double exact = exact_binomial_two_sided_tail(
                    n, p, static_cast<double>(lambda));
                const double bound = chernoff_bound(n, static_cast<double>(lambda));
                ++grid_points;
                const double excess = static_cast<double>(exact - bound);
                worst_excess = std::max(worst_excess, excess);
                if (excess > 1e-12) {
                    ++chernoff_violations;
                }
            }
        }
    }
    ok = ok && chernoff_violations == 0;

    // Part two: the end-to-end tail bound dominates the empirical tail of
    // the first stage within Monte Carlo error.
    const Matrix rho = rho_from_spectrum(params, frame);
    const SpectralStructure structure = spectral_structure(rho);
    Json tail_rows = Json::array();
    for (long long n : n_grid) {
        for (double epsilon : epsilons) {
            const double bound = tail_probability_bound(
                epsilon, static_cast<double>(n), mu, structure, params.d);
            const double frequency =
                empirical_tail(params, frame, n, mu, epsilon, trials, seed);
            const double stderr_freq =
                std::sqrt(std::max(0.0, frequency * (1.0 - frequency)) /
                          static_cast<double>(trials));
            const bool within = frequency <= bound + 3.0 * stderr_freq;
            ok = ok && within;
            Json row;
            row["n"] = n;
            row["mu"] = mu;
            row["epsilon"] = epsilon;
            row["bound"] = bound;
            row["empirical"] = frequency;
            row["stderr"] = stderr_freq;
            row["within"] = within;
            tail_rows.push_back(std::move(row));
        }
    }

    Json out = envelope("verify-tails", resolved);
    out["chernoff"] = {{"grid_points", grid_points},
                       {"violations", chernoff_violations},
                       {"worst_excess", worst_excess}};
    out["tail_bound"] = std::move(tail_rows);
    out["clean"] = ok;

    ExperimentResult result;
    result.status = ok ? kStatusOk : kStatusSuiteFailure;
    if (!ok) {
        result.error = "verify-tails: bound violated";
    }
    result.json = out.dump(2) + "\n";
    return result;
}

ExperimentResult run_entangle(const Json &config) {
    reject_unknown_fields(config, {"command", "d", "spectrum", "eigenframe", "n",
                                   "mu", "trials", "seed", "out", "format"});
    const SpectrumParams params = get_spectrum(config);
    const long long n = get_integer(config, "n");
    const double mu = get_real(config, "mu");
    const long long trials = get_integer_or(config, "trials", 500);
    const std::uint64_t seed = get_seed(config);
    if (trials < 1) {
        throw ValidationError("trials: must be at least 1");
    }
    if (get_format(config) != "json") {
        throw ValidationError("format: entangle emits JSON only");
    }

    // Local bases of the two subsystems; streams 0 and 1 of the frame seed.
    Matrix unitary_a;
    Matrix unitary_b;
    if (config.contains("eigenframe") && config["eigenframe"] != "identity") {
        const Json &value = config["eigenframe"];
        if (!(value.is_object() && value.contains("random") &&
              value["random"].is_number_integer())) {
            throw ValidationError("eigenframe: expected \"identity\" or {\"random\": <seed>}");
        }
        const auto frame_seed = value["random"].get<std::uint64_t>();
        unitary_a = random_frame(params.d, frame_seed, 0);
        unitary_b = random_frame(params.d, frame_seed, 1);
    }
    const BipartitePureState psi = state_from_schmidt(params, unitary_a, unitary_b);

    Json resolved = config;
    if (!resolved.contains("eigenframe")) {
        resolved["eigenframe"] = "identity";
    }
    resolved["trials"] = trials;
    if (!resolved.contains("format")) {
        resolved["format"] = "json";
    }

    Eigen::VectorXd p_desc = params.full();
    std::sort(p_desc.data(), p_desc.data() + p_desc.size(), std::greater<double>());
    const double true_entropy = entanglement_entropy(p_desc);

    std::vector<double> estimates(static_cast<std::size_t>(trials));
    for (long long r = 0; r < trials; ++r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        estimates[static_cast<std::size_t>(r)] =
            estimate_entanglement(psi, n, mu, rng);
    }
    double mean = 0.0;
    for (double e : estimates) {
        mean += e;
    }
    mean /= static_cast<double>(trials);
    double variance = 0.0;
    for (double e : estimates) {
        variance += (e - mean) * (e - mean);
    }
    const double sd =
        trials > 1 ? std::sqrt(variance / static_cast<double>(trials - 1)) : 0.0;

    Json out = envelope("entangle", resolved);
    out["true_entropy"] = true_entropy;
    out["estimate_mean"] = mean;
    out["estimate_sd"] = sd;
    out["N"] = n;
    out["mu"] = mu;
    out["trials"] = trials;

    ExperimentResult result;
    result.json = out.dump(2) + "\n";
    return result;
}

} // namespace

ExperimentResult run_experiment_json(const std::string &config_json) {
    ExperimentResult result;
    try {
        Json config;
        try {
            config = Json::parse(config_json);
        } catch (const nlohmann::json::parse_error &err) {
            throw ValidationError(std::string("config: not valid JSON (") + err.what() + ")");
        }
        if (!config.is_object()) {
            throw ValidationError("config: expected a JSON object");
        }
        const Json &command = require_field(config, "command");
        if (!command.is_string()) {
            throw ValidationError("command: expected a string");
        }
        const std::string name = command.get<std::string>();
        if (name == "estimate") {
            return run_estimate(config);
        }
        if (name == "bench-qcrb") {
            return run_bench(config);
        }
        if (name == "sweep-mu") {
            return run_sweep(config);
        }
        if (name == "verify-lemma1") {
            return run_verify_lemma1(config);
        }
        if (name == "verify-tails") {
            return run_verify_tails(config);
        }
        if (name == "entangle") {
            return run_entangle(config);
        }
        throw ValidationError("command: unknown command \"" + name + "\"");
    } catch (const ValidationError &err) {
        result.status = kStatusConfigError;
        result.error = err.what();
    } catch (const NumericError &err) {
        result.status = kStatusNumericError;
        result.error = err.what();
    } catch (const Error &err) {
        result.status = kStatusNumericError;
        result.error = err.what();
    } catch (const std::exception &err) {
        result.status = kStatusInternalError;
        result.error = err.what();
    }
    return result;
}

} // namespace speclocc
