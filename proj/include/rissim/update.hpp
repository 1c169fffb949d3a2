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

#include "rissim/channel.hpp"
#include "rissim/manifold.hpp"
#include "rissim/selection.hpp"

namespace rissim
{

// Average gain when the selected gains g_s are known and the removed ones are CN(0, I):
//   |A_r^H f|^2 + |g_s^T A_s^H f|^2
double lemma2_expectation(const CMatrix &a_s, const CMatrix &a_r, const CVector &g_s, const CVector &f);

// A_r A_r^H + A_s conj(g_s) g_s^T A_s^H (N_B square)
CMatrix build_j_act_tilde(const CMatrix &a_s, const CMatrix &a_r, const CVector &g_s);

// Principal unit eigenvector.
CVector update_f_t(const CMatrix &j_act_tilde);

// N_R square J with psi^H J psi = lemma2_expectation at A(psi), from the couplings through
// Gamma_r = I (x) f^H and gamma_s = g_s (x) f.
CMatrix build_j_pass_tilde(const std::vector<CMatrix> &b_s, const std::vector<CMatrix> &b_r,
                           const CVector &g_s, const CVector &f);

// Same matrix in factored form over the path dictionary.
HermitianForm j_pass_tilde_form(const ChannelRealization &ch, const SelectionState &state,
                                const CVector &g_s, const CVector &f);

struct UpdateOptions
{
    ManifoldOptions manifold;
    double tol = 1e-6; // relative change between rounds
    int max_rounds = 30;
};

struct UpdateResult
{
    CVector f_t;
    CVector psi;
    double objective = 0.0;
    std::vector<double> trace;
    int rounds = 0;
};

// Alternating f_t / psi design from the fed-back gains of the selected paths. psi0 defaults to
// the all-ones profile.
UpdateResult alternate_update(const ChannelRealization &ch, const SelectionState &state,
                              const CVector &g_tilde_s, const UpdateOptions &opts = {},
                              const CVector &psi0 = CVector());

} // namespace rissim
