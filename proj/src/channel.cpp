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

#include "rissim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rissim
{

double SystemGeometry::path_scale() const
{
    double nr = double(n_r());
    return std::sqrt(double(n_b()) * nr * nr / double(paths()));
}

void SystemGeometry::validate() const
{
    if (nb_v < 1 || nb_h < 1 || nr_v < 1 || nr_h < 1)
        throw std::invalid_argument("SystemGeometry: array dimensions must be positive");
    if (l_rb < 1 || l_ru < 1)
        throw std::invalid_argument("SystemGeometry: path counts must be positive");
}

CVector cascaded_gains(const PathGains &gains)
{
    const Index l_rb = gains.alpha.size(), l_ru = gains.beta.size();
    CVector g(l_rb * l_ru);
    for (Index q = 0; q < l_ru; ++q)
        for (Index p = 0; p < l_rb; ++p)
            g(q * l_rb + p) = gains.beta(q) * gains.alpha(p);
    return g;
}

namespace
{
CVector phase_ramp(Index n, double step)
{
    if (n < 1)
        throw std::invalid_argument("array response: size must be positive");
    CVector a(n);
    const double s = 1.0 / std::sqrt(double(n));
    for (Index k = 0; k < n; ++k)
        a(k) = std::polar(s, std::numbers::pi * double(k) * step);
    return a;
}
} // namespace

CVector array_response_v(Index n, double theta_v)
{
    return phase_ramp(n, std::cos(theta_v));
}

CVector array_response_h(Index n, double theta_v, double theta_h)
{
    return phase_ramp(n, std::sin(theta_v) * std::sin(theta_h));
}

CVector upa_response(Index n_v, Index n_h, double theta_v, double theta_h)
{
    return kron(array_response_v(n_v, theta_v), array_response_h(n_h, theta_v, theta_h));
}

SteeringMatrices build_steering(const SystemGeometry &geo, const PathAngles &ang)
{
    if (ang.bs_v.size() != geo.l_rb || ang.bs_h.size() != geo.l_rb || ang.ris_in_v.size() != geo.l_rb ||
        ang.ris_in_h.size() != geo.l_rb || ang.ris_out_v.size() != geo.l_ru ||
        ang.ris_out_h.size() != geo.l_ru)
        throw std::invalid_argument("build_steering: angle counts do not match the geometry");

    SteeringMatrices s{CMatrix(geo.n_b(), geo.l_rb), CMatrix(geo.n_r(), geo.l_rb),
                       CMatrix(geo.n_r(), geo.l_ru)};
    for (Index p = 0; p < geo.l_rb; ++p)
    {
        s.a_b.col(p) = upa_response(geo.nb_v, geo.nb_h, ang.bs_v(p), ang.bs_h(p));
        s.a_rb.col(p) = upa_response(geo.nr_v, geo.nr_h, ang.ris_in_v(p), ang.ris_in_h(p));
    }
    for (Index q = 0; q < geo.l_ru; ++q)
        s.a_ru.col(q) = upa_response(geo.nr_v, geo.nr_h, ang.ris_out_v(q), ang.ris_out_h(q));
    return s;
}

PathAngles sample_angles(const SystemGeometry &geo, RandomSource &rng)
{
    auto draw = [&](Index n) {
        RVector v(n);
        for (Index i = 0; i < n; ++i)
            v(i) = std::numbers::pi * rng.uniform_open_closed();
        return v;
    };
    PathAngles a;
    a.bs_v = draw(geo.l_rb);
    a.bs_h = draw(geo.l_rb);
    a.ris_in_v = draw(geo.l_rb);
    a.ris_in_h = draw(geo.l_rb);
    a.ris_out_v = draw(geo.l_ru);
    a.ris_out_h = draw(geo.l_ru);
    return a;
}

PathGains sample_gains(const SystemGeometry &geo, RandomSource &rng)
{
    PathGains g;
    g.alpha = sample_cn(rng, geo.l_rb);
    g.beta = sample_cn(rng, geo.l_ru);
    return g;
}

ChannelRealization make_realization(const SystemGeometry &geo, const PathAngles &angles,
                                    const PathGains &gains)
{
    geo.validate();
    if (gains.alpha.size() != geo.l_rb || gains.beta.size() != geo.l_ru)
        throw std::invalid_argument("make_realization: gain counts do not match the geometry");

    ChannelRealization ch;
    ch.geometry = geo;
    ch.angles = angles;
    ch.gains = gains;
    ch.g = cascaded_gains(gains);
    ch.steering = build_steering(geo, angles);

    const Index L = geo.paths();
    const double scale = geo.path_scale();
    ch.a_tilde_b.resize(geo.n_b(), L);
    ch.a_tilde_r.resize(geo.n_r(), L);
    ch.couplings.reserve(std::size_t(L));
    for (Index l = 0; l < L; ++l)
    {
        const Index p = geo.bs_ris_of(l), q = geo.ris_user_of(l);
        ch.a_tilde_b.col(l) = ch.steering.a_b.col(p);
        ch.a_tilde_r.col(l) = ch.steering.a_ru.col(q).conjugate().cwiseProduct(ch.steering.a_rb.col(p));
        // a_RB,p^H diag(a_RU,q) as a row vector
        CVector row = ch.steering.a_rb.col(p).conjugate().cwiseProduct(ch.steering.a_ru.col(q));
        ch.couplings.push_back(scale * ch.steering.a_b.col(p) * row.transpose());
    }
    return ch;
}

ChannelRealization sample_realization(const SystemGeometry &geo, RandomSource &rng)
{
    geo.validate();
    PathAngles angles = sample_angles(geo, rng);
    PathGains gains = sample_gains(geo, rng);
    return make_realization(geo, angles, gains);
}

void require_unit_modulus(const CVector &psi, Index n, double tol)
{
    if (psi.size() != n)
        throw std::invalid_argument("phase profile has the wrong length");
    for (Index i = 0; i < n; ++i)
        if (std::abs(std::abs(psi(i)) - 1.0) > tol)
            throw std::invalid_argument("phase profile entries must have unit modulus");
}

CMatrix path_matrix(const ChannelRealization &ch, const CVector &psi)
{
    require_unit_modulus(psi, ch.geometry.n_r());
    CVector x = ch.a_tilde_r.transpose() * psi;
    return ch.geometry.path_scale() * ch.a_tilde_b * x.conjugate().asDiagonal();
}

CMatrix path_matrix_from_couplings(const ChannelRealization &ch, const CVector &psi)
{
    require_unit_modulus(psi, ch.geometry.n_r());
    CMatrix a(ch.geometry.n_b(), ch.geometry.paths());
    const CVector psi_c = psi.conjugate();
    for (Index l = 0; l < a.cols(); ++l)
        a.col(l) = ch.couplings[std::size_t(l)] * psi_c;
    return a;
}

CVector cascaded_channel(const ChannelRealization &ch, const CVector &psi)
{
    require_unit_modulus(psi, ch.geometry.n_r());
    const auto &s = ch.steering;
    // row vectors, left to right
    Eigen::RowVectorXcd r = ch.gains.beta.transpose() * s.a_ru.adjoint();
    r = r.cwiseProduct(psi.transpose());
    Eigen::RowVectorXcd t = r * s.a_rb;
    t = t.cwiseProduct(ch.gains.alpha.transpose());
    Eigen::RowVectorXcd hh = ch.geometry.path_scale() * (t * s.a_b.adjoint());
    return hh.adjoint();
}

CVector cascaded_channel_from_paths(const ChannelRealization &ch, const CVector &psi)
{
    return path_matrix_from_couplings(ch, psi) * ch.g.conjugate();
}

cplx received_symbol(const CVector &h, const CVector &f, double power, cplx s, double noise_var,
                     RandomSource &rng)
{
    if (h.size() != f.size())
        throw std::invalid_argument("received_symbol: beamformer length mismatch");
    if (std::abs(f.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("received_symbol: beamformer must have unit norm");
    if (power < 0.0 || noise_var < 0.0)
        throw std::invalid_argument("received_symbol: power and noise variance must be non-negative");
    cplx n = std::sqrt(noise_var) * rng.complex_normal();
    return std::sqrt(power) * h.dot(f) * s + n;
}

double spectral_efficiency(double gain, double dnr)
{
    if (gain < 0.0 || dnr < 0.0)
        throw std::invalid_argument("spectral_efficiency: gain and DNR must be non-negative");
    return std::log2(1.0 + dnr * gain);
}

} // namespace rissim
