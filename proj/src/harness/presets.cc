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

#include "mdst/harness/presets.h"

#include <algorithm>
#include <cmath>

#include "mdst/analysis.h"

namespace mdst {

const std::vector<ReferenceTable> &reference_tables() {
    static const std::vector<ReferenceTable> tables{
        {1, 2, 1.3, {1600, 2560, 4096}, {0.0497, 0.0386, 0.0300}, {1000, 1600, 2560}, {0.0499, 0.0384, 0.0299}, 0.8},
        {2, 4, 1.4, {3200, 10240, 32768}, {0.140, 0.0780, 0.0435}, {1000, 3200, 10240}, {0.141, 0.0784, 0.0435}, 0.8},
        {3, 5, 1.4, {4000, 16000, 64000}, {0.192, 0.0961, 0.0481}, {1000, 4000, 16000}, {0.196, 0.0977, 0.0482}, 0.8},
        {4, 6, 1.4, {9000, 40500, 182250}, {0.182, 0.0849, 0.0404}, {2000, 9000, 40500}, {0.184, 0.0864, 0.0409}, 0.75},
        {5, 8, 1.4, {18000, 108000, 648000}, {0.224, 0.0916, 0.0374}, {3000, 18000, 108000}, {0.233, 0.0954, 0.0390},
         0.75},
        {6, 9, 1.4, {31500, 94500, 315000}, {0.211, 0.123, 0.0677}, {5000, 15000, 50000}, {0.214, 0.126, 0.0683}, 0.7},
        {7, 10, 1.4, {21000, 70000, 210000}, {0.316, 0.175, 0.100}, {3000, 10000, 30000}, {0.327, 0.180, 0.103}, 0.7},
    };
    return tables;
}

const ReferenceTable &reference_table(int number) {
    for (const auto &t : reference_tables()) {
        if (t.number == number) {
            return t;
        }
    }
    throw PreconditionError("no reference table " + std::to_string(number) + " (expected 1..7)");
}

std::vector<Fig1Row> preset_fig1(const RunOptions &options) {
    std::vector<CellSpec> cells;
    std::vector<double> gs;
    for (int k = 0; k <= 12; k++) {
        double g = 1.0 + 0.05 * k;
        gs.push_back(g);
        cells.push_back({TomographyScheme::mdst(g), 2, 1000, std::nullopt});
    }
    auto records = run_cells(cells, options);
    std::vector<Fig1Row> rows;
    for (size_t k = 0; k < gs.size(); k++) {
        if (!records[k].ok()) {
            throw NumericalError("fig1 cell g=" + std::to_string(gs[k]) + " failed: " + records[k].error);
        }
        rows.push_back({gs[k], tv1_closed_form(2, gs[k]), records[k].mean_d, records[k].stderr_d});
    }
    return rows;
}

std::vector<uint64_t> fig_sample_sizes() {
    std::vector<uint64_t> out;
    for (int k = 0; k <= 6; k++) {
        out.push_back(static_cast<uint64_t>(std::llround(std::pow(10.0, 2.0 + 0.5 * k))));
    }
    return out;
}

Su2Flavor parse_su2_flavor(const std::string &text) {
    if (text == "kernel") {
        return Su2Flavor::Kernel;
    }
    if (text == "lsq") {
        return Su2Flavor::Lsq;
    }
    if (text == "both") {
        return Su2Flavor::Both;
    }
    throw PreconditionError("unknown SU(2) flavor '" + text + "' (expected kernel, lsq or both)");
}

static void add_su2(std::vector<TomographyScheme> &schemes, Su2Flavor flavor) {
    if (flavor != Su2Flavor::Lsq) {
        schemes.push_back(TomographyScheme::su2_kernel());
    }
    if (flavor != Su2Flavor::Kernel) {
        schemes.push_back(TomographyScheme::random_basis_lsq());
    }
}

static std::vector<ResultRecord> run_figure(size_t d, const std::vector<TomographyScheme> &schemes,
                                            const RunOptions &options) {
    std::vector<CellSpec> cells;
    for (const auto &s : schemes) {
        for (uint64_t n : fig_sample_sizes()) {
            cells.push_back({s, d, n, std::nullopt});
        }
    }
    return run_cells(cells, options);
}

std::vector<ResultRecord> preset_fig2(const RunOptions &options, Su2Flavor flavor) {
    std::vector<TomographyScheme> schemes{TomographyScheme::mdst(1.3), TomographyScheme::dst(0.1),
                                          TomographyScheme::pauli()};
    add_su2(schemes, flavor);
    return run_figure(2, schemes, options);
}

std::vector<ResultRecord> preset_fig3(const RunOptions &options, Su2Flavor flavor) {
    std::vector<TomographyScheme> schemes{TomographyScheme::mdst(1.4), TomographyScheme::dst(0.1)};
    add_su2(schemes, flavor);
    return run_figure(5, schemes, options);
}

double interpolate_sample_size(std::span<const uint64_t> n, std::span<const double> d, double target_d) {
    if (n.size() != d.size() || n.size() < 2) {
        throw PreconditionError("interpolate_sample_size: need at least two (N, D) points");
    }
    std::vector<std::pair<double, double>> pts;  // (log N, log D)
    for (size_t k = 0; k < n.size(); k++) {
        if (!(d[k] > 0) || n[k] == 0) {
            throw PreconditionError("interpolate_sample_size: N and D must be positive");
        }
        pts.emplace_back(std::log(static_cast<double>(n[k])), std::log(d[k]));
    }
    std::sort(pts.begin(), pts.end());
    const double y = std::log(target_d);
    size_t seg = 0;
    // First segment whose D range brackets the target; else the end segment nearest to it.
    bool found = false;
    for (size_t k = 0; k + 1 < pts.size(); k++) {
        double lo = std::min(pts[k].second, pts[k + 1].second);
        double hi = std::max(pts[k].second, pts[k + 1].second);
        if (y >= lo && y <= hi) {
            seg = k;
            found = true;
            break;
        }
    }
    if (!found) {
        seg = y > pts.front().second ? 0 : pts.size() - 2;
    }
    auto [x0, y0] = pts[seg];
    auto [x1, y1] = pts[seg + 1];
    if (y1 == y0) {
        return std::exp(0.5 * (x0 + x1));
    }
    double x = x0 + (y - y0) * (x1 - x0) / (y1 - y0);
    return std::exp(x);
}

std::vector<double> matched_sample_ratios(std::span<const uint64_t> n_mdst, std::span<const double> d_mdst,
                                          std::span<const uint64_t> n_ref, std::span<const double> d_ref) {
    std::vector<double> out;
    for (size_t k = 0; k < n_mdst.size(); k++) {
        out.push_back(static_cast<double>(n_mdst[k]) / interpolate_sample_size(n_ref, d_ref, d_mdst[k]));
    }
    return out;
}

TablesResult preset_tables(const RunOptions &options, const TablesOptions &tables) {
    std::vector<const ReferenceTable *> selected;
    for (const auto &t : reference_tables()) {
        if (tables.tables.empty() ||
            std::find(tables.tables.begin(), tables.tables.end(), t.number) != tables.tables.end()) {
            selected.push_back(&t);
        }
    }
    for (int number : tables.tables) {
        (void)reference_table(number);
    }

    std::vector<CellSpec> cells;
    for (const auto *t : selected) {
        for (size_t k = 0; k < 3; k++) {
            cells.push_back({TomographyScheme::mdst(t->g), t->d, t->n_mdst[k], t->d_mdst[k]});
        }
        if (t->d <= tables.kernel_max_d) {
            for (size_t k = 0; k < 3; k++) {
                cells.push_back({TomographyScheme::su2_kernel(), t->d, t->n_su2[k], t->d_su2[k]});
            }
        }
        if (tables.run_lsq) {
            for (size_t k = 0; k < 3; k++) {
                cells.push_back({TomographyScheme::random_basis_lsq(), t->d, t->n_su2[k], t->d_su2[k]});
            }
        }
    }

    TablesResult result;
    result.records = run_cells(cells, options);

    for (const auto *t : selected) {
        TableSummary summary;
        summary.number = t->number;
        summary.d = t->d;
        summary.g = t->g;
        summary.quoted_ratio = t->quoted_ratio;

        auto rows_for = [&](const std::string &scheme) {
            std::vector<const ResultRecord *> rows;
            for (const auto &r : result.records) {
                if (r.d == t->d && r.scheme == scheme && r.ok() && r.reference_d) {
                    rows.push_back(&r);
                }
            }
            return rows;
        };
        auto mdst_rows = rows_for("MDST");
        std::vector<uint64_t> n_m;
        std::vector<double> d_m;
        for (const auto *r : mdst_rows) {
            n_m.push_back(r->n);
            d_m.push_back(r->mean_d);
        }

        auto flavor_summary = [&](const std::string &scheme, std::vector<double> &ratios,
                                  std::optional<double> &mean_abs_dev) {
            auto rows = rows_for(scheme);
            if (rows.size() != 3) {
                return;
            }
            std::vector<uint64_t> n_s;
            std::vector<double> d_s;
            double dev = 0;
            for (const auto *r : rows) {
                n_s.push_back(r->n);
                d_s.push_back(r->mean_d);
                dev += std::abs(*r->rel_dev());
            }
            mean_abs_dev = dev / 3;
            if (n_m.size() == 3) {
                ratios = matched_sample_ratios(n_m, d_m, n_s, d_s);
                for (auto &x : ratios) {
                    x /= static_cast<double>(t->d);
                }
            }
        };
        flavor_summary("SU2Kernel", summary.ratio_kernel, summary.kernel_mean_abs_dev);
        flavor_summary("SU2Lsq", summary.ratio_lsq, summary.lsq_mean_abs_dev);
        if (summary.kernel_mean_abs_dev && summary.lsq_mean_abs_dev) {
            summary.closer_flavor =
                *summary.kernel_mean_abs_dev <= *summary.lsq_mean_abs_dev ? "SU2Kernel" : "SU2Lsq";
        } else if (summary.kernel_mean_abs_dev) {
            summary.closer_flavor = "SU2Kernel";
        } else if (summary.lsq_mean_abs_dev) {
            summary.closer_flavor = "SU2Lsq";
        }

        for (const std::string scheme : {"MDST", "SU2Kernel", "SU2Lsq"}) {
            auto rows = rows_for(scheme);
            if (rows.empty()) {
                continue;
            }
            bool all_above = std::all_of(rows.begin(), rows.end(), [](auto *r) { return *r->rel_dev() > 0; });
            bool all_below = std::all_of(rows.begin(), rows.end(), [](auto *r) { return *r->rel_dev() < 0; });
            if (all_above || all_below) {
                summary.one_sided.push_back(scheme + (all_above ? " above" : " below") + " reference D in every cell");
            }
        }
        result.summaries.push_back(std::move(summary));
    }
    return result;
}

}  // namespace mdst
