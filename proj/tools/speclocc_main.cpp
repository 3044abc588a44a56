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

// Command-line driver. Builds a JSON config from an optional config file
// plus flag overrides (flags win), hands it to the shared library through
// the C API, and writes the rendered report. Exit codes: 0 success, 1
// invalid config, 2 suite failure or runtime error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "speclocc/speclocc.h"

namespace {

using Json = nlohmann::ordered_json;

struct Flags {
    std::string config_path;
    std::optional<long long> d;
    std::optional<std::string> spectrum;
    std::optional<long long> n;
    std::optional<std::string> n_grid;
    std::optional<double> mu;
    std::optional<std::string> mu_list;
    std::optional<long long> trials;
    std::optional<unsigned long long> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_common_flags(CLI::App *cmd, Flags &flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file; flags override it");
    cmd->add_option("--d", flags.d, "Hilbert space dimension");
    cmd->add_option("--spectrum", flags.spectrum,
                    "d-1 free eigenvalues, comma separated (e.g. 0.5,0.3)");
    cmd->add_option("--n", flags.n, "total number of copies N");
    cmd->add_option("--n-grid", flags.n_grid, "grid of N values, comma separated");
    cmd->add_option("--mu", flags.mu, "first-stage exponent mu in (0,1)");
    cmd->add_option("--mu-list", flags.mu_list, "list of mu values, comma separated");
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials R");
    cmd->add_option("--seed", flags.seed, "master seed (required; no wall-clock seeding)");
    cmd->add_option("--out", flags.out, "output file path (stdout when absent)");
    cmd->add_option("--format", flags.format, "output format: json or csv");
}

std::vector<double> parse_real_list(const std::string &text, const std::string &flag) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            std::cerr << flag << ": cannot parse '" << item << "' as a number\n";
            std::exit(1);
        }
    }
    if (values.empty()) {
        std::cerr << flag << ": empty list\n";
        std::exit(1);
    }
    return values;
}

std::vector<long long> parse_integer_list(const std::string &text,
                                          const std::string &flag) {
    std::vector<long long> values;
    for (double v : parse_real_list(text, flag)) {
        values.push_back(static_cast<long long>(v));
    }
    return values;
}

Json load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "config: cannot open '" << path << "'\n";
        std::exit(1);
    }
    try {
        Json parsed;
        in >> parsed;
        if (!parsed.is_object()) {
            std::cerr << "config: expected a JSON object\n";
            std::exit(1);
        }
        return parsed;
    } catch (const std::exception &err) {
        std::cerr << "config: " << err.what() << "\n";
        std::exit(1);
    }
}

Json build_config(const std::string &command, const Flags &flags) {
    Json config = flags.config_path.empty() ? Json::object()
                                            : load_config_file(flags.config_path);
    config["command"] = command;
    if (flags.d) {
        config["d"] = *flags.d;
    }
    if (flags.spectrum) {
        config["spectrum"] = parse_real_list(*flags.spectrum, "--spectrum");
    }
    if (flags.n) {
        config["n"] = *flags.n;
    }
    if (flags.n_grid) {
        config["n_grid"] = parse_integer_list(*flags.n_grid, "--n-grid");
    }
    if (flags.mu) {
        config["mu"] = *flags.mu;
    }
    if (flags.mu_list) {
        config["mu_list"] = parse_real_list(*flags.mu_list, "--mu-list");
    }
    if (flags.trials) {
        config["trials"] = *flags.trials;
    }
    if (flags.seed) {
        config["seed"] = *flags.seed;
    }
    if (flags.out) {
        config["out"] = *flags.out;
    }
    if (flags.format) {
        config["format"] = *flags.format;
    }
    return config;
}

int run_command(const std::string &command, const Flags &flags) {
    const Json config = build_config(command, flags);

    speclocc_result *result = nullptr;
    const int status = speclocc_run_config(config.dump().c_str(), &result);
    if (result == nullptr) {
        std::cerr << "error: " << speclocc_last_error() << "\n";
        return status == SPECLOCC_ERR_CONFIG ? 1 : 2;
    }

    const bool want_csv = config.contains("format") && config["format"] == "csv";
    const char *payload =
        want_csv ? speclocc_result_csv(result) : speclocc_result_json(result);
    if (payload == nullptr) {
        std::cerr << "error: no output in the requested format\n";
        speclocc_result_destroy(result);
        return 1;
    }

    int exit_code = 0;
    if (status == SPECLOCC_ERR_SUITE) {
        std::cerr << "suite failure: " << speclocc_last_error() << "\n";
        exit_code = 2;
    }

    if (config.contains("out")) {
        const std::string path = config["out"].get<std::string>();
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "out: cannot write '" << path << "'\n";
            speclocc_result_destroy(result);
            return 1;
        }
        out << payload;
    } else {
        std::cout << payload;
    }
    speclocc_result_destroy(result);
    return exit_code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spectrum estimation toolkit: two-stage adaptive estimation of "
                 "density-matrix eigenvalues with benchmarking and verification "
                 "suites"};
    app.require_subcommand(1);
    app.set_version_flag("--version", speclocc_version());

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"estimate", "single adaptive estimation run"},
        {"bench-qcrb", "Monte Carlo MSE benchmark against the inverse QFI"},
        {"sweep-mu", "first-stage bias sweep over (N, mu)"},
        {"verify-lemma1", "randomized eigenvalue perturbation lemma suite"},
        {"verify-tails", "binomial tail bound checks, exact and empirical"},
        {"entangle", "entanglement entropy estimation for a bipartite pure state"},
    };

    std::vector<Flags> flags(commands.size());
    std::vector<CLI::App *> apps;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App *cmd = app.add_subcommand(commands[i].first, commands[i].second);
        add_common_flags(cmd, flags[i]);
        apps.push_back(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (apps[i]->parsed()) {
            return run_command(commands[i].first, flags[i]);
        }
    }
    return 1;
}
