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

#include "rissim/update.hpp"

#include <cmath>
#include <stdexcept>

namespace rissim
{

double lemma2_expectation(const CMatrix &a_s, const CMatrix &a_r, const CVector &g_s, const CVector &f)
{
    if (g_s.size() != a_s.cols() || f.size() != a_s.rows() || a_r.rows() != a_s.rows())
        throw std::invalid_argument("lemma2_expectation: shape mismatch");
    return (a_r.adjoint() * f).squaredNorm() + std::norm(g_s.dot((a_s.adjoint() * f).conjugate()));
}

CMatrix build_j_act_tilde(const CMatrix &a_s, const CMatrix &a_r, const CVector &g_s)
{
    if (g_s.size() != a_s.cols() || a_r.rows() != a_s.rows())
        throw std::invalid_argument("build_j_act_tilde: shape mismatch");
    const CVector u = a_s * g_s.conjugate();
    return a_r * a_r.adjoint() + u * u.adjoint();
}

CVector update_f_t(const CMatrix &j_act_tilde)
{
    return hermitian_max_eigenpair(j_act_tilde).vector;
}

CMatrix build_j_pass_tilde(const std::vector<CMatrix> &b_s, const std::vector<CMatrix> &b_r,
                           const CVector &g_s, const CVector &f)
{
    const Index ls = Index(b_s.size()), lr = Index(b_r.size());
    if (ls < 1 || g_s.size() != ls)
        throw std::invalid_argument("build_j_pass_tilde: one gain per selected coupling required");
    const Index nb = f.size(), nr = b_s.front().cols();
    CMatrix j = CMatrix::Zero(nr, nr);

    if (lr > 0)
    {
        const CMatrix gam_r = kron(CMatrix::Identity(lr, lr), f.adjoint()); // L_r x N_B L_r
        CMatrix m_r = CMatrix::Zero(nr, lr);
        for (Index l = 0; l < lr; ++l)
            m_r += b_r[std::size_t(l)].transpose() * gam_r.middleCols(l * nb, nb).transpose();
        j += m_r * m_r.adjoint();
    }

    const CVector gam_s = kron(g_s, f); // N_B L_s
    CVector m_s = CVector::Zero(nr);
    for (Index l = 0; l < ls; ++l)
        m_s += b_s[std::size_t(l)].transpose() * gam_s.segment(l * nb, nb).conjugate();
    j += m_s * m_s.adjoint();
    return j;
}

HermitianForm j_pass_tilde_form(const ChannelRealization &ch, const SelectionState &state,
                                const CVector &g_s, const CVector &f)
{
    const Index L = ch.geometry.paths();
    if (g_s.size() != Index(state.selected.size()) || f.size() != ch.geometry.n_b())
        throw std::invalid_argument("j_pass_tilde_form: shape mismatch");
    // B_l^T conj(f) = conj(a_tilde_r(:, l)) * coef(l)
    const CVector coef = ch.geometry.path_scale() * (ch.a_tilde_b.transpose() * f.conjugate());
    CMatrix core = CMatrix::Zero(L, L);
    for (Index l : state.removed)
        core(l, l) += std::norm(coef(l));
    CVector s = CVector::Zero(L);
    for (std::size_t i = 0; i < state.selected.size(); ++i)
    {
        const Index l = state.selected[i];
        s(l) = std::conj(g_s(Index(i))) * coef(l);
    }
    core += s * s.adjoint();
    return HermitianForm(ch.a_tilde_r.conjugate(), core);
}

UpdateResult alternate_update(const ChannelRealization &ch, const SelectionState &state,
                              const CVector &g_tilde_s, const UpdateOptions &opts, const CVector &psi0)
{
    if (g_tilde_s.size() != Index(state.selected.size()))
        throw std::invalid_argument("alternate_update: one gain per selected path required");
    if (opts.max_rounds < 1)
        throw std::invalid_argument("alternate_update: max_rounds must be positive");

    UpdateResult res;
    res.psi = psi0.size() ? psi0 : CVector(CVector::Ones(ch.geometry.n_r()));
    double prev = 0.0;
    for (int r = 0; r < opts.max_rounds; ++r)
    {
        const CMatrix a = path_matrix(ch, res.psi);
        const CMatrix a_s = select_columns(a, state.selected);
        const CMatrix a_r = select_columns(a, state.removed);
        res.f_t = update_f_t(build_j_act_tilde(a_s, a_r, g_tilde_s));
        res.trace.push_back(lemma2_expectation(a_s, a_r, g_tilde_s, res.f_t));

        ManifoldResult m = minimize(j_pass_tilde_form(ch, state, g_tilde_s, res.f_t), res.psi, opts.manifold);
        res.psi = m.psi;
        res.objective = -m.objective.back();
        res.trace.push_back(res.objective);
        res.rounds = r + 1;
        if (r > 0 && std::abs(res.objective - prev) <= opts.tol * std::abs(res.objective))
            break;
        prev = res.objective;
    }
    return res;
}

} // namespace rissim
