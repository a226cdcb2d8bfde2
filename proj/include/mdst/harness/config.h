// Copyright 2026 The mdst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MDST_HARNESS_CONFIG_H
#define MDST_HARNESS_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdst/states.h"
#include "mdst/tomography.h"

namespace mdst {

/// Invalid campaign description (maps to exit code 1).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class StateMode { Fresh, Fixed };

/// A Monte Carlo campaign: every (scheme, d, N) combination is a cell run for `trials` trials.
struct ExperimentConfig {
    std::vector<size_t> dims;
    std::vector<TomographyScheme> schemes;
    std::vector<uint64_t> n_values;
    uint64_t trials = 1000;
    std::optional<uint64_t> seed;
    Ensemble ensemble = Ensemble::HilbertSchmidt;
    /// Only "equal" is implemented: shots split evenly across settings.
    std::string allocation = "equal";
    bool hermitize = false;
    /// Fresh random state per trial, or one state per dimension reused by every trial.
    StateMode state_mode = StateMode::Fresh;
    std::string output;
    size_t workers = 1;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
};

/// Parses flat `key=value` lines. Lists are comma separated, `#` starts a comment, and
/// unknown keys are errors. Keys: dims, schemes, n_values, trials, seed, ensemble,
/// allocation, hermitize, state_mode, output, workers.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

}  // namespace mdst

#endif
