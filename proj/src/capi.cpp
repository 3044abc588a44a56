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

#include "speclocc/speclocc.h"

#include <cmath>
#include <limits>
#include <string>

#include "speclocc/entangle.hpp"
#include "speclocc/errors.hpp"
#include "speclocc/experiment.hpp"
#include "speclocc/model.hpp"

struct speclocc_result {
    speclocc::ExperimentResult inner;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(const std::string &message) { g_last_error = message; }

} // namespace

extern "C" {

const char *speclocc_version(void) { return speclocc::kArtifactVersion; }

int speclocc_run_config(const char *config_json, speclocc_result **out) {
    if (out != nullptr) {
        *out = nullptr;
    }
    if (config_json == nullptr) {
        set_last_error("config: null pointer");
        return SPECLOCC_ERR_CONFIG;
    }
    speclocc::ExperimentResult result;
    try {
        result = speclocc::run_experiment_json(config_json);
    } catch (const std::exception &err) {
        set_last_error(err.what());
        return SPECLOCC_ERR_INTERNAL;
    } catch (...) {
        set_last_error("unknown failure");
        return SPECLOCC_ERR_INTERNAL;
    }
    const int status = result.status;
    if (!result.error.empty()) {
        set_last_error(result.error);
    }
    if (status == SPECLOCC_OK || status == SPECLOCC_ERR_SUITE) {
        if (out != nullptr) {
            *out = new speclocc_result{std::move(result)};
        }
    }
    return status;
}

int speclocc_result_status(const speclocc_result *result) {
    return result == nullptr ? SPECLOCC_ERR_INTERNAL : result->inner.status;
}

const char *speclocc_result_json(const speclocc_result *result) {
    return result == nullptr ? nullptr : result->inner.json.c_str();
}

const char *speclocc_result_csv(const speclocc_result *result) {
    if (result == nullptr || !result->inner.has_csv) {
        return nullptr;
    }
    return result->inner.csv.c_str();
}

void speclocc_result_destroy(speclocc_result *result) { delete result; }

const char *speclocc_last_error(void) { return g_last_error.c_str(); }

double speclocc_entanglement_entropy(const double *probs, size_t count) {
    if (probs == nullptr || count == 0) {
        set_last_error("probs: null or empty");
        return std::numeric_limits<double>::quiet_NaN();
    }
    try {
        const Eigen::Map<const Eigen::VectorXd> view(probs,
                                                     static_cast<Eigen::Index>(count));
        return speclocc::entanglement_entropy(Eigen::VectorXd(view));
    } catch (const std::exception &err) {
        set_last_error(err.what());
        return std::numeric_limits<double>::quiet_NaN();
    }
}

int speclocc_qfi_inverse(const double *p, int d, double *out) {
    if (p == nullptr || out == nullptr) {
        set_last_error("qfi_inverse: null pointer");
        return SPECLOCC_ERR_CONFIG;
    }
    if (d < 2) {
        set_last_error("d: dimension must be at least 2");
        return SPECLOCC_ERR_CONFIG;
    }
    try {
        speclocc::SpectrumParams params;
        params.d = d;
        params.p = Eigen::Map<const Eigen::VectorXd>(p, d - 1);
        const Eigen::MatrixXd inverse = speclocc::qfi_inverse(params);
        for (int k = 0; k < d - 1; ++k) {
            for (int l = 0; l < d - 1; ++l) {
                out[k * (d - 1) + l] = inverse(k, l);
            }
        }
        return SPECLOCC_OK;
    } catch (const speclocc::ValidationError &err) {
        set_last_error(err.what());
        return SPECLOCC_ERR_CONFIG;
    } catch (const std::exception &err) {
        set_last_error(err.what());
        return SPECLOCC_ERR_INTERNAL;
    }
}

} // extern "C"
