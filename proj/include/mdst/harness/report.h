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

#ifndef MDST_HARNESS_REPORT_H
#define MDST_HARNESS_REPORT_H

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdst/harness/presets.h"

namespace mdst {

/// Header: scheme,d,g,N,trials,mean_D,stderr,paper_D,rel_dev. Columns without a value
/// (g for non-direct schemes, paper_D and rel_dev outside table presets, mean_D and stderr
/// for failed cells) are left empty.
void write_results_csv(std::ostream &out, const std::vector<ResultRecord> &records);

/// Header: g,tv1,mean_D,stderr.
void write_fig1_csv(std::ostream &out, const std::vector<Fig1Row> &rows);

nlohmann::json record_to_json(const ResultRecord &record);
nlohmann::json summary_to_json(const TableSummary &summary);

/// Run manifest: tool version, the invocation, options, wall time and per-cell details.
nlohmann::json make_manifest(const std::string &command, const RunOptions &options, double wall_seconds,
                             const std::vector<ResultRecord> &records);

/// `out.csv` -> `out.manifest.json`.
std::string manifest_path_for(const std::string &csv_path);

const char *library_version();

}  // namespace mdst

#endif
