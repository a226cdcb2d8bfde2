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

#include "mdst/harness/experiment.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <thread>

namespace mdst {

std::optional<double> ResultRecord::rel_dev() const {
    if (!reference_d || !ok() || *reference_d == 0) {
        return std::nullopt;
    }
    return (mean_d - *reference_d) / *reference_d;
}

static uint64_t fnv1a(const std::string &text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t cell_key(const TomographyScheme &scheme, size_t d, uint64_t n) {
    return fnv1a(scheme.spec_string() + "|" + std::to_string(d) + "|" + std::to_string(n));
}

static uint64_t state_key(size_t d) { return fnv1a("state|" + std::to_string(d)); }

std::string check_cell(const CellSpec &cell) {
    const auto &s = cell.scheme;
    if (cell.d < 2) {
        return "dimension must be at least 2";
    }
    if (s.kind == SchemeKind::Pauli && cell.d != 2) {
        return "Pauli tomography is defined for d=2 only";
    }
    if (s.kind == SchemeKind::Mdst) {
        try {
            (void)cd_observables(s.g);
        } catch (const PreconditionError &e) {
            return e.what();
        }
    }
    if (s.kind == SchemeKind::Dst && !(s.g > 0 && std::isfinite(s.g))) {
        return "DST requires g > 0";
    }
    if (s.kind == SchemeKind::RandomBasisLsq && s.bases != 0 && s.bases < cell.d) {
        return "random-basis tomography needs at least d bases";
    }
    if (cell.n < minimum_samples(s, cell.d)) {
        return s.name() + " needs N >= " + std::to_string(minimum_samples(s, cell.d));
    }
    return {};
}

namespace {

struct TrialResult {
    double distance = 0;
    double seconds = 0;
    CMatrix error;
    std::string failure;
    bool numerical = false;
};

struct CellState {
    CellSpec spec;
    uint64_t key = 0;
    std::vector<TrialResult> trials;
    std::atomic<uint64_t> remaining{0};
    ResultRecord record;
};

TrialResult run_trial(const CellState &cell, uint64_t trial, const RunOptions &options) {
    TrialResult out;
    auto start = std::chrono::steady_clock::now();
    try {
        const size_t d = cell.spec.d;
        uint64_t state_trial = options.state_mode == StateMode::Fixed ? 0 : trial;
        Rng state_rng = Rng::stream(options.seed, state_key(d), state_trial);
        DensityMatrix rho = random_state(options.ensemble, d, state_rng);
        Rng rng = Rng::stream(options.seed, cell.key, trial);
        MubPair mub = fourier_mub(d);
        auto rec = run_scheme(cell.spec.scheme, rho, cell.spec.n, mub, rng);
        if (!rec.mat.all_finite()) {
            throw NumericalError("non-finite reconstruction");
        }
        out.distance = trace_distance(rho.mat(), rec.mat, options.hermitize);
        out.error = rec.mat - rho.mat();
    } catch (const NumericalError &e) {
        out.failure = e.what();
        out.numerical = true;
    } catch (const std::exception &e) {
        out.failure = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

void aggregate(CellState &cell) {
    auto &rec = cell.record;
    if (!rec.error.empty()) {
        return;
    }
    const size_t t = cell.trials.size();
    double sum = 0;
    double seconds = 0;
    CMatrix error_sum(cell.spec.d, cell.spec.d);
    for (const auto &tr : cell.trials) {
        if (!tr.failure.empty()) {
            rec.error = tr.failure;
            rec.numerical_failure = tr.numerical;
            return;
        }
        sum += tr.distance;
        seconds += tr.seconds;
        error_sum += tr.error;
    }
    rec.mean_d = sum / static_cast<double>(t);
    double ss = 0;
    for (const auto &tr : cell.trials) {
        ss += (tr.distance - rec.mean_d) * (tr.distance - rec.mean_d);
    }
    rec.stderr_d = t > 1 ? std::sqrt(ss / static_cast<double>(t - 1)) / std::sqrt(static_cast<double>(t)) : 0.0;
    error_sum *= 1 / static_cast<double>(t);
    rec.bias_norm = error_sum.frobenius_norm();
    rec.wall_seconds = seconds;
    // Release per-trial storage once reduced.
    cell.trials.clear();
    cell.trials.shrink_to_fit();
}

}  // namespace

std::vector<ResultRecord> run_cells(const std::vector<CellSpec> &cells, const RunOptions &options) {
    if (options.trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    std::vector<std::unique_ptr<CellState>> states;
    std::vector<std::pair<size_t, uint64_t>> jobs;
    std::mutex report_mutex;

    for (const auto &spec : cells) {
        auto cell = std::make_unique<CellState>();
        cell->spec = spec;
        cell->key = cell_key(spec.scheme, spec.d, spec.n);
        auto &rec = cell->record;
        rec.scheme = spec.scheme.name();
        rec.d = spec.d;
        if (spec.scheme.is_direct()) {
            rec.g = spec.scheme.g;
        }
        rec.n = spec.n;
        rec.trials = options.trials;
        rec.reference_d = spec.reference_d;
        rec.error = check_cell(spec);
        if (rec.error.empty()) {
            cell->trials.resize(options.trials);
            cell->remaining = options.trials;
            for (uint64_t t = 0; t < options.trials; t++) {
                jobs.emplace_back(states.size(), t);
            }
        } else if (options.on_cell_done) {
            options.on_cell_done(rec);
        }
        states.push_back(std::move(cell));
    }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t job = next.fetch_add(1);
            if (job >= jobs.size()) {
                return;
            }
            auto [c, t] = jobs[job];
            auto &cell = *states[c];
            cell.trials[t] = run_trial(cell, t, options);
            if (cell.remaining.fetch_sub(1) == 1) {
                aggregate(cell);
                if (options.on_cell_done) {
                    std::lock_guard lock(report_mutex);
                    options.on_cell_done(cell.record);
                }
            }
        }
    };

    const size_t workers = std::max<size_t>(1, std::min(options.workers, jobs.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(worker);
        }
    }

    std::vector<ResultRecord> out;
    out.reserve(states.size());
    for (auto &cell : states) {
        out.push_back(std::move(cell->record));
    }
    return out;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig &cfg,
                                         std::function<void(const ResultRecord &)> on_cell_done) {
    cfg.validate();
    std::vector<CellSpec> cells;
    for (const auto &scheme : cfg.schemes) {
        for (size_t d : cfg.dims) {
            for (uint64_t n : cfg.n_values) {
                cells.push_back({scheme, d, n, std::nullopt});
            }
        }
    }
    RunOptions options;
    options.seed = *cfg.seed;
    options.trials = cfg.trials;
    options.ensemble = cfg.ensemble;
    options.hermitize = cfg.hermitize;
    options.state_mode = cfg.state_mode;
    options.workers = cfg.workers;
    options.on_cell_done = std::move(on_cell_done);
    return run_cells(cells, options);
}

}  // namespace mdst
