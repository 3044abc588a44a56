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

/**
 * @file
 * Batch experiment driver: a JSON config names a command and its
 * parameters; the result is a JSON report (and a CSV table for the
 * benchmarking commands) with the fully resolved config and the artifact
 * version embedded for provenance. Identical configs produce byte-identical
 * output.
 */

#pragma once

#include <string>

namespace speclocc {

inline constexpr const char *kArtifactVersion = "0.1.0";

/// Status codes shared with the C API and the CLI exit codes.
enum ExperimentStatus : int {
    kStatusOk = 0,
    kStatusConfigError = 1,
    kStatusSuiteFailure = 2,
    kStatusNumericError = 3,
    kStatusInternalError = 4,
};

struct ExperimentResult {
    int status = kStatusOk;
    std::string json; ///< report (status 0/2) — empty otherwise
    std::string csv;  ///< only for commands with a CSV schema
    bool has_csv = false;
    std::string error; ///< set when status is not kStatusOk
};

/// Commands: estimate, bench-qcrb, sweep-mu, verify-lemma1, verify-tails,
/// entangle. Never throws; failures are reported through `status`/`error`.
ExperimentResult run_experiment_json(const std::string &config_json);

} // namespace speclocc
