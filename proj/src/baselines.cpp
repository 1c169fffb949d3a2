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

#include "rissim/baselines.hpp"

#include "rissim/dpgi.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rissim
{

RandomPilotBatch random_pilot_matrix(const ChannelRealization &ch, Index t_slots, double p_e,
                                     RandomSource &rng)
{
    if (t_slots < 1)
        throw std::invalid_argument("random_pilot_matrix: need at least one slot");
    const auto &geo = ch.geometry;
    RandomPilotBatch b{CMatrix(geo.n_b(), t_slots), CMatrix(geo.n_r(), t_slots),
                       CMatrix(geo.paths(), t_slots)};
    for (Index t = 0; t < t_slots; ++t)
    {
        b.f_e.col(t) = sample_unit_vector(rng, geo.n_b());
        for (Index i = 0; i < geo.n_r(); ++i)
            b.psi(i, t) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        b.d.col(t) = kappa_vector(ch, b.f_e.col(t), b.psi.col(t), p_e);
    }
    return b;
}

CVector receive_pilots(const ChannelRealization &ch, const RandomPilotBatch &batch, double p_e,
                       double noise_var, RandomSource &rng)
{
    CVector y(batch.d.cols());
    for (Index t = 0; t < y.size(); ++t)
        y(t) = pilot_observation(ch, batch.f_e.col(t), batch.psi.col(t), p_e, noise_var, rng);
    return y;
}

CVector ls_estimate(const CMatrix &d, const CVector &y, double max_cond)
{
    if (y.size() != d.cols())
        throw std::invalid_argument("ls_estimate: one observation per slot required");
    if (d.cols() < d.rows())
        throw std::invalid_argument("ls_estimate: fewer slots than paths");
    const CMatrix gram = d.conjugate() * d.transpose();
    Eigen::JacobiSVD<CMatrix> svd(gram);
    const RVector &s = svd.singularValues();
    const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
    if (!(cond < max_cond))
        throw IllConditionedError("ls_estimate: pilot Gram matrix is ill-conditioned", cond);
    return gram.partialPivLu().solve(d.conjugate() * y);
}

CVector mmse_estimate(const CMatrix &d, const CVector &y, double noise_var)
{
    if (y.size() != d.cols())
        throw std::invalid_argument("mmse_estimate: one observation per slot required");
    if (noise_var < 0.0)
        throw std::invalid_argument("mmse_estimate: noise variance must be non-negative");
    // Solved in the L x L form (conj(D) D^T + s I_L)^{-1} conj(D) y, which equals the T x T
    // expression and stays well posed when T > L and the noise variance is tiny.
    const Index L = d.rows();
    CMatrix gram = d.conjugate() * d.transpose();
    gram += noise_var * CMatrix::Identity(L, L);
    return gram.partialPivLu().solve(d.conjugate() * y);
}

CMatrix build_h_matrix(const ChannelRealization &ch, const CVector &g)
{
    if (g.size() != ch.geometry.paths())
        throw std::invalid_argument("build_h_matrix: one gain per path required");
    return ch.geometry.path_scale() * ch.a_tilde_r * g.asDiagonal() * ch.a_tilde_b.adjoint();
}

AoResult ao_beamforming(const CMatrix &h, const AoOptions &opts)
{
    if (h.size() == 0 || h.cwiseAbs().maxCoeff() == 0.0)
        throw std::invalid_argument("ao_beamforming: channel matrix is zero");
    if (opts.max_rounds < 1)
        throw std::invalid_argument("ao_beamforming: max_rounds must be positive");
    AoResult res;
    res.psi = CVector::Ones(h.rows());
    double prev = 0.0;
    for (int r = 0; r < opts.max_rounds; ++r)
    {
        CVector f = h.adjoint() * res.psi.conjugate();
        double nf = f.norm();
        if (nf == 0.0)
        {
            // psi annihilates every column of H; restart from the dominant right singular vector
            Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinV);
            f = svd.matrixV().col(0);
            nf = 1.0;
        }
        res.f = f / nf;
        const CVector hf = h * res.f;
        res.psi = unit_modulus(hf.conjugate(), res.psi);
        const double obj = std::norm(res.psi.cwiseProduct(hf).sum());
        res.trace.push_back(obj);
        res.rounds = r + 1;
        if (r > 0 && std::abs(obj - prev) <= opts.tol * std::abs(obj))
            break;
        prev = obj;
    }
    return res;
}

CVector partial_random_pgi(const CVector &g_tilde_s, const std::vector<Index> &selected, Index paths,
                           RandomSource &rng)
{
    if (g_tilde_s.size() != Index(selected.size()))
        throw std::invalid_argument("partial_random_pgi: one gain per selected path required");
    CVector g(paths);
    std::vector<bool> known(std::size_t(paths), false);
    for (std::size_t i = 0; i < selected.size(); ++i)
    {
        const Index l = selected[i];
        if (l < 0 || l >= paths || known[std::size_t(l)])
            throw std::invalid_argument("partial_random_pgi: invalid selection");
        known[std::size_t(l)] = true;
        g(l) = g_tilde_s(Index(i));
    }
    for (Index l = 0; l < paths; ++l)
        if (!known[std::size_t(l)])
            g(l) = rng.complex_normal();
    return g;
}

} // namespace rissim
