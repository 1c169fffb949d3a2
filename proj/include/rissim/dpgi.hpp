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
#include "rissim/rvq.hpp"
#include "rissim/selection.hpp"

namespace rissim
{

// Beamformers of pilot slot t: f_e = a_tilde_b(:, l) and psi = N_R conj(a_tilde_r(:, l)) for the
// t-th selected path l, so the slot isolates that path with full array gain.
struct PilotSlot
{
    CVector f_e;
    CVector psi;
};

PilotSlot pilot_beamformers(const ChannelRealization &ch, const SelectionState &state, Index t);

// Effective path weights of one pilot slot:
// kappa = sqrt(P_e) path_scale ((f_e^T conj(A_tilde_b)) .* (psi^T A_tilde_r))^T, length L.
// y = kappa^T g + n for that slot.
CVector kappa_vector(const ChannelRealization &ch, const CVector &f_e, const CVector &psi, double p_e);

// Noisy pilot observation through the full cascaded channel (one symbol s = 1).
cplx pilot_observation(const ChannelRealization &ch, const CVector &f_e, const CVector &psi, double p_e,
                       double noise_var, RandomSource &rng);

// T = L_s slots, one per selected path.
CVector run_pilot_phase(const ChannelRealization &ch, const SelectionState &state, double p_e,
                        double noise_var, RandomSource &rng);

// g_hat_s = y / (sqrt(P_e) path_scale)
CVector estimate_dpgi(const CVector &y, double p_e, const SystemGeometry &geo);

struct DpgiEstimate
{
    CVector g_hat;
    CVector g_tilde;
    Index codeword = 0;
};

DpgiEstimate feedback_dpgi(const CVector &g_hat, const RvqCodebook &cb);

} // namespace rissim
