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

#ifndef MDST_HARNESS_EXPERIMENT_H
#define MDST_HARNESS_EXPERIMENT_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdst/harness/config.h"

namespace mdst {

/// One (scheme, d, N) cell of a campaign.
struct CellSpec {
    TomographyScheme scheme;
    size_t d = 0;
    uint64_t n = 0;
    /// Reference value for this cell, if any.
    std::optional<double> reference_d;
};

struct ResultRecord {
    std::string scheme;
    size_t d = 0;
    std::optional<double> g;
    uint64_t n = 0;
    uint64_t trials = 0;
    double mean_d = 0;
    /// Sample standard deviation of the per-trial trace distance divided by sqrt(trials).
    double stderr_d = 0;
    /// Frobenius norm of the trial-averaged error rho_r - rho_t.
    double bias_norm = 0;
    /// Summed time spent inside this cell's trials.
    double wall_seconds = 0;
    std::optional<double> reference_d;
    /// Empty on success. Set when the cell's parameters are invalid or a trial failed.
    std::string error;
    bool numerical_failure = false;

    bool ok() const { return error.empty(); }
    std::optional<double> rel_dev() const;
};

struct RunOptions {
    uint64_t seed = 0;
    uint64_t trials = 1000;
    Ensemble ensemble = Ensemble::HilbertSchmidt;
    bool hermitize = false;
    StateMode state_mode = StateMode::Fresh;
    size_t workers = 1;
    /// Called once per finished cell (in completion order, serialized). Use for progress only.
    std::function<void(const ResultRecord &)> on_cell_done;
};

/// Runs every cell. Trial t of a cell draws its state from a stream keyed by (seed, d, t),
/// shared by all cells of that dimension, and its measurement record from a stream keyed by
/// (seed, cell, t). Aggregation follows trial order, so results do not depend on `workers`.
std::vector<ResultRecord> run_cells(const std::vector<CellSpec> &cells, const RunOptions &options);

/// Expands the config into cells ordered scheme-major, then d, then N, and runs them.
std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg,
                                         std::function<void(const ResultRecord &)> on_cell_done = {});

/// Stable 64-bit key of a cell, used to derive its random streams.
uint64_t cell_key(const TomographyScheme &scheme, size_t d, uint64_t n);

/// Empty if the cell's parameters are admissible, otherwise the reason.
std::string check_cell(const CellSpec &cell);

}  // namespace mdst

#endif
