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

#include "rissim/dpgi.hpp"

#include <cmath>
#include <stdexcept>

namespace rissim
{

PilotSlot pilot_beamformers(const ChannelRealization &ch, const SelectionState &state, Index t)
{
    if (t < 0 || t >= Index(state.selected.size()))
        throw std::invalid_argument("pilot_beamformers: slot index out of range");
    const Index l = state.selected[std::size_t(t)];
    return {ch.a_tilde_b.col(l), double(ch.geometry.n_r()) * ch.a_tilde_r.col(l).conjugate()};
}

CVector kappa_vector(const ChannelRealization &ch, const CVector &f_e, const CVector &psi, double p_e)
{
    if (p_e <= 0.0)
        throw std::invalid_argument("kappa_vector: pilot power must be positive");
    if (f_e.size() != ch.geometry.n_b() || psi.size() != ch.geometry.n_r())
        throw std::invalid_argument("kappa_vector: beamformer length mismatch");
    const CVector fb = ch.a_tilde_b.conjugate().transpose() * f_e; // (f^T conj(A_b))^T
    const CVector pr = ch.a_tilde_r.transpose() * psi;             // (psi^T A_r)^T
    return std::sqrt(p_e) * ch.geometry.path_scale() * fb.cwiseProduct(pr);
}

cplx pilot_observation(const ChannelRealization &ch, const CVector &f_e, const CVector &psi, double p_e,
                       double noise_var, RandomSource &rng)
{
    return received_symbol(cascaded_channel(ch, psi), f_e, p_e, 1.0, noise_var, rng);
}

CVector run_pilot_phase(const ChannelRealization &ch, const SelectionState &state, double p_e,
                        double noise_var, RandomSource &rng)
{
    if (p_e <= 0.0)
        throw std::invalid_argument("run_pilot_phase: pilot power must be positive");
    const Index t_slots = Index(state.selected.size());
    CVector y(t_slots);
    for (Index t = 0; t < t_slots; ++t)
    {
        PilotSlot s = pilot_beamformers(ch, state, t);
        y(t) = pilot_observation(ch, s.f_e, s.psi, p_e, noise_var, rng);
    }
    return y;
}

CVector estimate_dpgi(const CVector &y, double p_e, const SystemGeometry &geo)
{
    if (p_e <= 0.0)
        throw std::invalid_argument("estimate_dpgi: pilot power must be positive");
    return y / (std::sqrt(p_e) * geo.path_scale());
}

DpgiEstimate feedback_dpgi(const CVector &g_hat, const RvqCodebook &cb)
{
    QuantizedVector qv = quantize(g_hat, cb);
    return {g_hat, qv.reconstructed, qv.index};
}

} // namespace rissim
