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

#include <vector>

namespace rissim
{

// T pilot slots with random active beamformers (normalized CN) and uniform-phase RIS profiles.
// Column t of d holds the path weights of slot t, so y = d^T g + n.
struct RandomPilotBatch
{
    CMatrix f_e; // N_B x T
    CMatrix psi; // N_R x T
    CMatrix d;   // L x T
};

RandomPilotBatch random_pilot_matrix(const ChannelRealization &ch, Index t_slots, double p_e,
                                     RandomSource &rng);

// Noisy observations of every slot through the full cascaded channel.
CVector receive_pilots(const ChannelRealization &ch, const RandomPilotBatch &batch, double p_e,
                       double noise_var, RandomSource &rng);

class IllConditionedError : public std::runtime_error
{
public:
    IllConditionedError(const std::string &what, double cond)
        : std::runtime_error(what), cond_(cond) {}
    double condition() const { return cond_; }

private:
    double cond_;
};

// (conj(D) D^T)^{-1} conj(D) y. Needs T >= L and a condition number below max_cond.
CVector ls_estimate(const CMatrix &d, const CVector &y, double max_cond = 1e12);

// conj(D) (D^T conj(D) + noise_var I_T)^{-1} y for a CN(0, I) prior on g.
CVector mmse_estimate(const CMatrix &d, const CVector &y, double noise_var);

// H = path_scale * A_tilde_r diag(g) A_tilde_b^H, N_R x N_B, so that psi^T H f = h(psi)^H f.
CMatrix build_h_matrix(const ChannelRealization &ch, const CVector &g);

struct AoOptions
{
    double tol = 1e-6;
    int max_rounds = 100;
};

struct AoResult
{
    CVector f;
    CVector psi;
    std::vector<double> trace; // |psi^T H f|^2 after every round
    int rounds = 0;
};

// Alternating closed-form maximization of |psi^T H f| from psi = 1.
AoResult ao_beamforming(const CMatrix &h, const AoOptions &opts = {});

// Full gain vector: the fed-back gains at the selected indices, fresh CN(0, 1) draws elsewhere.
CVector partial_random_pgi(const CVector &g_tilde_s, const std::vector<Index> &selected, Index paths,
                           RandomSource &rng);

} // namespace rissim
