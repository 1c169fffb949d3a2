// SPDX-License-Identifier: Apache-2.0
//
// rissim - simulator for RIS-assisted mmWave FDD downlink
// Copyright (C) 2026 rissim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "rissim/baselines.hpp"
#include "rissim/channel.hpp"
#include "rissim/selection.hpp"
#include "rissim/update.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rissim
{

// Run configuration. Read from a flat "key = value" file; lists are comma separated and '#'
// starts a comment. Every key is optional.
struct ScenarioConfig
{
    SystemGeometry geometry;
    std::uint64_t seed = 1;
    Index realizations = 1000;
    int workers = 1;
    double noise_var = 1.0;

    Index l_s = 4;                                          // dominant paths for fixed-L_s sweeps
    std::vector<double> pnr_db{-15.0, -10.0, -5.0, 0.0};    // nmse-pnr
    std::vector<double> dnr_db{-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10}; // se-dnr
    std::vector<int> bits{2, 4, 6, 8, 10, 12, 14, 16};      // nmse-bits, se-bits
    std::vector<Index> l_s_list{2, 3, 4, 5, 6};             // se-paths
    std::vector<Index> baseline_slots{6, 24};               // LS / MMSE pilot counts in nmse-pnr
    std::vector<Index> se_bits_paths{4, 5};                 // dominant-path schemes in se-bits
    Index mmse_slots = 24;                                  // MMSE pilot count with limited feedback
    int bits_full = 16;                                     // se-dnr, whole-gain feedback
    int bits_dominant = 8;                                  // se-dnr, dominant-gain feedback
    std::optional<double> fixed_pnr_db;                     // default: 0 dB for nmse-bits, -15 dB otherwise
    double fixed_dnr_db = 0.0;                              // se-paths, se-bits
    std::vector<std::string> schemes;                       // empty: every scheme of the sweep

    SelectionOptions selection;
    UpdateOptions update;
    bool update_warm_start = false; // start the update from the selection's phase profile
    AoOptions ao;
    int ls_max_resamples = 100;

    double validate_q_offset = 0.0; // perturbs Q inside the validation checks only
};

ScenarioConfig parse_config(const std::string &text);
ScenarioConfig load_config(const std::string &path);

// Range and consistency checks; throws std::invalid_argument naming the offending key.
void validate_config(const ScenarioConfig &cfg);

} // namespace rissim
