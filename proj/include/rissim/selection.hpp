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

#include <vector>

namespace rissim
{

// Average fourth moment of the coupled gains, Q = (L + L_RB + L_RU - 3) / (L - 1). Requires L >= 2.
double moment_q(Index l_rb, Index l_ru);

// Selected / removed index sets (zero based, ascending, disjoint, union = {0..L-1}).
struct SelectionState
{
    std::vector<Index> selected;
    std::vector<Index> removed;

    static SelectionState from_selected(Index paths, std::vector<Index> selected);
    static SelectionState all(Index paths);
};

CMatrix select_columns(const CMatrix &a, const std::vector<Index> &idx);
CVector select_entries(const CVector &v, const std::vector<Index> &idx);

// Closed-form average gain over the gains for fixed V and psi:
//   (4 - 2Q) |diag(A_s^H V)|^2 + Q |tr(A_s^H V)|^2 + Q |A_s^H V|_F^2 + Q |A_r^H V|_F^2
double lemma1_expectation(const CMatrix &a_s, const CMatrix &a_r, const CMatrix &v, double q);

// Hermitian J_act (N_B L_s square) with vec(V)^H J_act vec(V) equal to lemma1_expectation.
CMatrix build_j_act(const CMatrix &a_s, const CMatrix &a_r, double q);

struct ActiveBeamformer
{
    CMatrix v;        // N_B x L_s, unit Frobenius norm
    double objective; // vec(V)^H J_act vec(V)
};

ActiveBeamformer optimal_v(const CMatrix &j_act, Index n_b);

// Hermitian J_pass (N_R square) with psi^H J_pass psi equal to lemma1_expectation at A(psi),
// assembled term by term from the couplings of the selected (b_s) and removed (b_r) paths.
CMatrix build_j_pass(const std::vector<CMatrix> &b_s, const std::vector<CMatrix> &b_r, const CMatrix &v,
                     double q);

// The same matrix in factored form conj(a_tilde_r) K a_tilde_r^T with an L x L core.
HermitianForm j_pass_form(const ChannelRealization &ch, const SelectionState &state, const CMatrix &v,
                          double q);

// Contribution zeta of selected column ls to the closed-form average gain.
double path_contribution(Index ls, const CMatrix &a_s, const CMatrix &a_r, const CMatrix &v, double q);

struct SelectionOptions
{
    ManifoldOptions manifold;
    double alt_tol = 1e-6; // relative change of the objective between rounds
    int max_alternations = 50;
};

// Alternating optimization of V and psi for a fixed selection.
struct FixedSetResult
{
    CMatrix v;
    CVector psi;
    double objective = 0.0;
    std::vector<double> trace; // objective after every V step and every psi step
    int alternations = 0;
};

FixedSetResult optimize_fixed_set(const ChannelRealization &ch, const SelectionState &state,
                                  const CVector &psi0, const SelectionOptions &opts = {});

struct SelectionStage
{
    SelectionState state;
    CMatrix v;
    CVector psi;
    double objective;
};

struct SelectionResult
{
    SelectionState state;
    CMatrix v;
    CVector psi;
    double objective = 0.0;
    std::vector<SelectionStage> stages; // one per visited L_s, from L down to the target
    std::vector<double> trace;
};

// Greedy removal of the path with the smallest contribution until l_target paths remain.
// Reads only the path angles of `ch`; the gains are never touched.
SelectionResult select_paths(const ChannelRealization &ch, Index l_target, const SelectionOptions &opts = {});

struct ExhaustiveResult
{
    SelectionState state;
    CMatrix v;
    CVector psi;
    double objective = 0.0;
    std::size_t subsets = 0;
};

// Best subset of size l_target by the converged closed-form objective. Refuses more than
// max_subsets candidates.
ExhaustiveResult exhaustive_path_selection(const ChannelRealization &ch, Index l_target,
                                           const SelectionOptions &opts = {},
                                           std::size_t max_subsets = 10000);

// Uniformly random subset of size l_target.
SelectionState random_path_selection(Index paths, Index l_target, RandomSource &rng);

} // namespace rissim
