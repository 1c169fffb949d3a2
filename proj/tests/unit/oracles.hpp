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

// Reference computations written independently of the library code paths: explicit index sums
// instead of matrix algebra, exact moments instead of closed forms.

#include "rissim/channel.hpp"

#include <vector>

namespace oracle
{

using namespace rissim;

// UPA response from the 2-D index formula.
CVector upa(Index n_v, Index n_h, double theta_v, double theta_h);

// h(psi) by an explicit sum over BS-RIS paths, RIS-user paths and RIS elements.
CVector cascaded_channel(const ChannelRealization &ch, const CVector &psi);

// Exact E|g^T A^H V conj(g_s)|^2 over g = beta (x) alpha with CN(0,1) factors, using the fourth
// moments of the complex Gaussian factors.
double coupled_expectation(const SystemGeometry &geo, const CMatrix &a, const CMatrix &v,
                           const std::vector<Index> &selected);

// Worst relative deviation between two arrays, relative to the largest entry of b.
double rel_diff(const CMatrix &a, const CMatrix &b);

CVector random_phases(RandomSource &rng, Index n);

// Random complex matrix with unit Frobenius norm.
CMatrix random_unit_matrix(RandomSource &rng, Index rows, Index cols);

} // namespace oracle
