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

#ifndef MDST_HARNESS_PRESETS_H
#define MDST_HARNESS_PRESETS_H

#include <array>
#include <optional>
#include <vector>

#include "mdst/harness/experiment.h"

namespace mdst {

/// Reference trace distances for one table: MDST at strength g and the SU(2) baseline,
/// three sample sizes each.
struct ReferenceTable {
    int number = 0;
    size_t d = 0;
    double g = 0;
    std::array<uint64_t, 3> n_mdst{};
    std::array<double, 3> d_mdst{};
    std::array<uint64_t, 3> n_su2{};
    std::array<double, 3> d_su2{};
    /// The N_MDST / (d N_SU2) factor quoted for this table's dimension.
    double quoted_ratio = 0;
};

/// Tables 1 to 7.
const std::vector<ReferenceTable> &reference_tables();
const ReferenceTable &reference_table(int number);

struct Fig1Row {
    double g = 0;
    double tv1 = 0;
    double mean_d = 0;
    double stderr_d = 0;
};

/// MDST at d=2, N=1000 over g = 1.00, 1.05, ..., 1.60, next to the closed-form TV1.
std::vector<Fig1Row> preset_fig1(const RunOptions &options);

/// N = 10^2, 10^2.5, ..., 10^5 (rounded).
std::vector<uint64_t> fig_sample_sizes();

enum class Su2Flavor { Kernel, Lsq, Both };
Su2Flavor parse_su2_flavor(const std::string &text);

/// d=2: MDST(1.3), DST(0.1), Pauli and the SU(2) flavors over fig_sample_sizes().
std::vector<ResultRecord> preset_fig2(const RunOptions &options, Su2Flavor flavor = Su2Flavor::Both);
/// d=5: MDST(1.4), DST(0.1) and the SU(2) flavors over fig_sample_sizes().
std::vector<ResultRecord> preset_fig3(const RunOptions &options, Su2Flavor flavor = Su2Flavor::Lsq);

/// Sample size at which a curve through (n, D) points reaches `target_d`, by piecewise-linear
/// interpolation in log N vs log D (linear extrapolation from the end segments).
double interpolate_sample_size(std::span<const uint64_t> n, std::span<const double> d, double target_d);

/// For each MDST point, N_MDST / N_ref(D_MDST) with N_ref interpolated on the reference curve.
std::vector<double> matched_sample_ratios(std::span<const uint64_t> n_mdst, std::span<const double> d_mdst,
                                          std::span<const uint64_t> n_ref, std::span<const double> d_ref);

struct TablesOptions {
    /// Table numbers to run (1..7); empty means all.
    std::vector<int> tables;
    /// The SU(2) kernel flavor is run only for d <= kernel_max_d (its cost grows as d^3 per shot).
    size_t kernel_max_d = 2;
    bool run_lsq = true;
};

struct TableSummary {
    int number = 0;
    size_t d = 0;
    double g = 0;
    double quoted_ratio = 0;
    /// N_MDST / (d N_SU2) at matched D, per MDST point, for each SU(2) flavor that was run.
    std::vector<double> ratio_kernel;
    std::vector<double> ratio_lsq;
    /// Mean |rel_dev| of each SU(2) flavor against the reference SU(2) column.
    std::optional<double> kernel_mean_abs_dev;
    std::optional<double> lsq_mean_abs_dev;
    /// Flavor whose SU(2) column is closer to the reference one ("SU2Kernel" or "SU2Lsq").
    std::string closer_flavor;
    /// Non-empty when every cell of a scheme deviates from the reference value in the same direction.
    std::vector<std::string> one_sided;
};

struct TablesResult {
    std::vector<ResultRecord> records;
    std::vector<TableSummary> summaries;
};

TablesResult preset_tables(const RunOptions &options, const TablesOptions &tables = {});

}  // namespace mdst

#endif
