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

#include "mdst/harness/report.h"

#include <cstdio>

#ifndef MDST_VERSION
#define MDST_VERSION "unknown"
#endif

namespace mdst {

const char *library_version() { return MDST_VERSION; }

static std::string num(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

void write_results_csv(std::ostream &out, const std::vector<ResultRecord> &records) {
    out << "scheme,d,g,N,trials,mean_D,stderr,paper_D,rel_dev\n";
    for (const auto &r : records) {
        out << r.scheme << ',' << r.d << ',' << (r.g ? num(*r.g, 10) : "") << ',' << r.n << ',' << r.trials << ',';
        if (r.ok()) {
            out << num(r.mean_d) << ',' << num(r.stderr_d);
        } else {
            out << ',';
        }
        out << ',' << (r.reference_d ? num(*r.reference_d) : "") << ',';
        if (auto dev = r.rel_dev()) {
            out << num(*dev, 4);
        }
        out << '\n';
    }
}

void write_fig1_csv(std::ostream &out, const std::vector<Fig1Row> &rows) {
    out << "g,tv1,mean_D,stderr\n";
    for (const auto &r : rows) {
        out << num(r.g, 10) << ',' << num(r.tv1, 8) << ',' << num(r.mean_d) << ',' << num(r.stderr_d) << '\n';
    }
}

nlohmann::json record_to_json(const ResultRecord &r) {
    nlohmann::json j;
    j["scheme"] = r.scheme;
    j["d"] = r.d;
    j["g"] = r.g ? nlohmann::json(*r.g) : nlohmann::json(nullptr);
    j["N"] = r.n;
    j["trials"] = r.trials;
    if (r.ok()) {
        j["mean_D"] = r.mean_d;
        j["stderr"] = r.stderr_d;
        j["bias_norm"] = r.bias_norm;
        j["wall_seconds"] = r.wall_seconds;
    } else {
        j["error"] = r.error;
    }
    if (r.reference_d) {
        j["paper_D"] = *r.reference_d;
    }
    if (auto dev = r.rel_dev()) {
        j["rel_dev"] = *dev;
    }
    return j;
}

nlohmann::json summary_to_json(const TableSummary &s) {
    nlohmann::json j;
    j["table"] = s.number;
    j["d"] = s.d;
    j["g"] = s.g;
    j["quoted_ratio"] = s.quoted_ratio;
    auto mean = [](const std::vector<double> &v) {
        double total = 0;
        for (double x : v) {
            total += x;
        }
        return v.empty() ? 0.0 : total / static_cast<double>(v.size());
    };
    if (!s.ratio_kernel.empty()) {
        j["ratio_kernel"] = s.ratio_kernel;
        j["ratio_kernel_mean"] = mean(s.ratio_kernel);
    }
    if (!s.ratio_lsq.empty()) {
        j["ratio_lsq"] = s.ratio_lsq;
        j["ratio_lsq_mean"] = mean(s.ratio_lsq);
    }
    if (s.kernel_mean_abs_dev) {
        j["kernel_mean_abs_rel_dev"] = *s.kernel_mean_abs_dev;
    }
    if (s.lsq_mean_abs_dev) {
        j["lsq_mean_abs_rel_dev"] = *s.lsq_mean_abs_dev;
    }
    j["closer_su2_flavor"] = s.closer_flavor;
    j["one_sided_deviation"] = s.one_sided;
    return j;
}

nlohmann::json make_manifest(const std::string &command, const RunOptions &options, double wall_seconds,
                             const std::vector<ResultRecord> &records) {
    nlohmann::json j;
    j["tool"] = "mdst";
    j["version"] = library_version();
    j["command"] = command;
    j["seed"] = options.seed;
    j["trials"] = options.trials;
    j["workers"] = options.workers;
    j["ensemble"] = to_string(options.ensemble);
    j["hermitize"] = options.hermitize;
    j["state_mode"] = options.state_mode == StateMode::Fixed ? "fixed" : "fresh";
    j["allocation"] = "equal";
    j["wall_seconds"] = wall_seconds;
    j["cells"] = nlohmann::json::array();
    for (const auto &r : records) {
        j["cells"].push_back(record_to_json(r));
    }
    return j;
}

std::string manifest_path_for(const std::string &csv_path) {
    std::string base = csv_path;
    auto slash = base.find_last_of('/');
    auto dot = base.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        base = base.substr(0, dot);
    }
    return base + ".manifest.json";
}

}  // namespace mdst
