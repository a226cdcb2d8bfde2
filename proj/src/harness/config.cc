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

#include "mdst/harness/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace mdst {

namespace {

std::string trim(const std::string &s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        b++;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        e--;
    }
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string &value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

uint64_t parse_count(const std::string &key, const std::string &text) {
    // Accept plain integers and exact scientific forms like 1e5.
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != text.size() || used == 0 || v < 0 || v != std::floor(v) || v > 1.8e19) {
        throw ConfigError("config key '" + key + "': '" + text + "' is not a non-negative integer");
    }
    return static_cast<uint64_t>(v);
}

bool parse_bool(const std::string &key, const std::string &text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw ConfigError("config key '" + key + "': '" + text + "' is not a boolean");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (dims.empty()) {
        throw ConfigError("config: dims is empty");
    }
    if (schemes.empty()) {
        throw ConfigError("config: schemes is empty");
    }
    if (n_values.empty()) {
        throw ConfigError("config: n_values is empty");
    }
    if (trials < 1) {
        throw ConfigError("config: trials must be at least 1");
    }
    if (!seed) {
        throw ConfigError("config: seed is required");
    }
    if (workers < 1) {
        throw ConfigError("config: workers must be at least 1");
    }
    if (allocation != "equal") {
        throw ConfigError("config: unsupported allocation '" + allocation + "' (only 'equal')");
    }
    for (size_t d : dims) {
        if (d < 2) {
            throw ConfigError("config: every dimension must be at least 2");
        }
    }
    const size_t max_d = *std::max_element(dims.begin(), dims.end());
    for (uint64_t n : n_values) {
        if (n < 2 * max_d) {
            throw ConfigError("config: every N must be at least 2*max(d) = " + std::to_string(2 * max_d));
        }
    }
}

ExperimentConfig parse_config(const std::string &text) {
    ExperimentConfig cfg;
    std::map<std::string, bool> seen;
    std::stringstream lines(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(lines, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (seen[key]) {
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        seen[key] = true;
        try {
            if (key == "dims") {
                for (const auto &item : split_list(value)) {
                    cfg.dims.push_back(static_cast<size_t>(parse_count(key, item)));
                }
            } else if (key == "schemes") {
                for (const auto &item : split_list(value)) {
                    cfg.schemes.push_back(TomographyScheme::parse(item));
                }
            } else if (key == "n_values") {
                for (const auto &item : split_list(value)) {
                    cfg.n_values.push_back(parse_count(key, item));
                }
            } else if (key == "trials") {
                cfg.trials = parse_count(key, value);
            } else if (key == "seed") {
                cfg.seed = parse_count(key, value);
            } else if (key == "ensemble") {
                cfg.ensemble = parse_ensemble(value);
            } else if (key == "allocation") {
                cfg.allocation = value;
            } else if (key == "hermitize") {
                cfg.hermitize = parse_bool(key, value);
            } else if (key == "state_mode") {
                if (value == "fresh") {
                    cfg.state_mode = StateMode::Fresh;
                } else if (value == "fixed") {
                    cfg.state_mode = StateMode::Fixed;
                } else {
                    throw ConfigError("config key 'state_mode': expected fresh or fixed");
                }
            } else if (key == "output") {
                cfg.output = value;
            } else if (key == "workers") {
                cfg.workers = static_cast<size_t>(parse_count(key, value));
            } else {
                throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            }
        } catch (const PreconditionError &e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace mdst
