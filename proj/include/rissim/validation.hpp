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

// status is "pass", "fail", or "info" for measurements that are reported without a gate.
struct CheckResult
{
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string status;
};

struct ValidationReport
{
    std::vector<CheckResult> checks;
    bool passed() const;
};

// Exact E|g^T A^H V conj(g_s)|^2 for coupled gains g = beta (x) alpha with i.i.d. CN(0, 1) factors.
double coupled_expectation(const SystemGeometry &geo, const CMatrix &a, const CMatrix &v,
                           const std::vector<Index> &selected);

ValidationReport run_validation(const ScenarioConfig &cfg);

// check,measured,threshold,status
std::string to_csv(const ValidationReport &report);

} // namespace rissim
