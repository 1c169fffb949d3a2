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

#include "rissim/numerics.hpp"

#include <vector>

namespace rissim
{

// Array sizes and path counts. The BS and the RIS are uniform planar arrays with half-wavelength
// spacing; L_RB paths leave the BS towards the RIS and L_RU paths leave the RIS towards the user,
// giving L = L_RB * L_RU cascaded paths.
struct SystemGeometry
{
    Index nb_v = 4, nb_h = 4;   // BS rows x columns
    Index nr_v = 16, nr_h = 16; // RIS rows x columns
    Index l_rb = 2;             // BS-RIS paths
    Index l_ru = 3;             // RIS-user paths

    Index n_b() const { return nb_v * nb_h; }
    Index n_r() const { return nr_v * nr_h; }
    Index paths() const { return l_rb * l_ru; }

    // sqrt(N_B N_R^2 / L), the common amplitude of every cascaded path
    double path_scale() const;

    // Cascaded path index for BS-RIS path p and RIS-user path q (both zero based).
    Index path_index(Index p, Index q) const { return q * l_rb + p; }
    Index bs_ris_of(Index l) const { return l % l_rb; }
    Index ris_user_of(Index l) const { return l / l_rb; }

    void validate() const;
};

// All angles in radians, in (0, pi].
struct PathAngles
{
    RVector bs_v, bs_h;        // departure at the BS, one per BS-RIS path
    RVector ris_in_v, ris_in_h; // arrival at the RIS, one per BS-RIS path
    RVector ris_out_v, ris_out_h; // departure at the RIS, one per RIS-user path
};

struct PathGains
{
    CVector alpha; // BS-RIS, length L_RB
    CVector beta;  // RIS-user, length L_RU
};

// g = beta (x) alpha, so g_l = beta_q alpha_p for l = path_index(p, q)
CVector cascaded_gains(const PathGains &gains);

// UPA factors: a_v[k] = exp(j pi k cos(v)) / sqrt(n), a_h[k] = exp(j pi k sin(v) sin(h)) / sqrt(n)
CVector array_response_v(Index n, double theta_v);
CVector array_response_h(Index n, double theta_v, double theta_h);
// a_v (x) a_h
CVector upa_response(Index n_v, Index n_h, double theta_v, double theta_h);

struct SteeringMatrices
{
    CMatrix a_b;  // N_B x L_RB
    CMatrix a_rb; // N_R x L_RB
    CMatrix a_ru; // N_R x L_RU
};

SteeringMatrices build_steering(const SystemGeometry &geo, const PathAngles &angles);

// One channel draw together with everything derived from it.
//
// Dictionaries (column l is cascaded path l):
//   a_tilde_b(:, l) = a_B,p
//   a_tilde_r(:, l) = conj(a_RU,q) .* a_RB,p      (every entry has modulus 1/N_R)
// Couplings: B_l = path_scale * a_B,p a_RB,p^H diag(a_RU,q), so that path column l of the
// cascaded channel is B_l conj(psi).
struct ChannelRealization
{
    SystemGeometry geometry;
    PathAngles angles;
    PathGains gains;
    CVector g;
    SteeringMatrices steering;
    CMatrix a_tilde_b; // N_B x L
    CMatrix a_tilde_r; // N_R x L
    std::vector<CMatrix> couplings; // L matrices, N_B x N_R
};

PathAngles sample_angles(const SystemGeometry &geo, RandomSource &rng);
PathGains sample_gains(const SystemGeometry &geo, RandomSource &rng);

ChannelRealization make_realization(const SystemGeometry &geo, const PathAngles &angles,
                                    const PathGains &gains);

// Angles first, then alpha, then beta.
ChannelRealization sample_realization(const SystemGeometry &geo, RandomSource &rng);

void require_unit_modulus(const CVector &psi, Index n, double tol = 1e-9);

// A(psi): N_B x L matrix whose column l is B_l conj(psi), computed through the dictionaries as
// path_scale * a_tilde_b diag(conj(a_tilde_r^T psi)).
CMatrix path_matrix(const ChannelRealization &ch, const CVector &psi);

// Same matrix assembled from the explicit couplings B_l.
CMatrix path_matrix_from_couplings(const ChannelRealization &ch, const CVector &psi);

// Cascaded channel h(psi), N_B x 1, with h^H = path_scale * beta^T A_RU^H Psi A_RB diag(alpha) A_B^H.
CVector cascaded_channel(const ChannelRealization &ch, const CVector &psi);

// Same channel as the path sum A(psi) conj(g).
CVector cascaded_channel_from_paths(const ChannelRealization &ch, const CVector &psi);

// y = sqrt(power) h^H f s + n with n ~ CN(0, noise_var). f must have unit norm.
cplx received_symbol(const CVector &h, const CVector &f, double power, cplx s, double noise_var,
                     RandomSource &rng);

// log2(1 + dnr * gain) with gain = |h^H f|^2 and dnr linear.
double spectral_efficiency(double gain, double dnr);

} // namespace rissim
