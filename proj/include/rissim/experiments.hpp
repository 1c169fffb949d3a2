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

#include "rissim/config.hpp"

#include <string>
#include <vector>

namespace rissim
{

// One output row: scheme, sweep_var, sweep_value, metric, value, n_realizations, seed.
// metric is nmse_db, nmse_aligned_db (common phase removed before the error is taken) or se_bps_hz.
struct MetricRecord
{
    std::string scheme;
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string metric;
    double value = 0.0;
    Index n_realizations = 0;
    std::uint64_t seed = 0;
};

struct RunOutput
{
    std::vector<MetricRecord> records;
    std::vector<std::string> notes; // e.g. resampled ill-conditioned pilot draws
};

enum class Sweep
{
    nmse_pnr,
    nmse_bits,
    se_paths,
    se_bits,
    se_dnr
};

// Scheme names a sweep produces under the given configuration.
std::vector<std::string> scheme_names(Sweep sweep, const ScenarioConfig &cfg);

RunOutput run_nmse_vs_pnr(const ScenarioConfig &cfg);
RunOutput run_nmse_vs_bits(const ScenarioConfig &cfg);
RunOutput run_se_vs_paths(const ScenarioConfig &cfg);
RunOutput run_se_vs_bits(const ScenarioConfig &cfg);
RunOutput run_se_vs_dnr(const ScenarioConfig &cfg);
RunOutput run_sweep(Sweep sweep, const ScenarioConfig &cfg);

std::string format_number(double v);
std::string to_csv(const std::vector<MetricRecord> &records);

// Per-realization NMSE ratio |est - ref|^2 / |ref|^2, and the same after the best common phase
// rotation of est.
double nmse_ratio(const CVector &est, const CVector &ref);
double nmse_ratio_aligned(const CVector &est, const CVector &ref);

} // namespace rissim
