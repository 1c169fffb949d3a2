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

#include "rissim/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>

namespace rissim
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_stream(std::uint64_t stream, std::uint64_t salt)
{
    return splitmix64(stream ^ splitmix64(salt + 0x632be59bd9b4e019ULL));
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream)))
{
}

double RandomSource::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform_open_closed()
{
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RandomSource::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform_open_closed()));
    double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

cplx RandomSource::complex_normal()
{
    double re = normal();
    double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t RandomSource::uniform_index(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_index: empty range");
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t x;
    do
        x = engine_();
    while (x >= limit);
    return x % n;
}

CVector sample_cn(RandomSource &rng, Index n)
{
    CVector v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = rng.complex_normal();
    return v;
}

CMatrix sample_cn(RandomSource &rng, Index rows, Index cols)
{
    CMatrix m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r)
            m(r, c) = rng.complex_normal();
    return m;
}

CVector sample_unit_vector(RandomSource &rng, Index n)
{
    CVector v = sample_cn(rng, n);
    double nv = v.norm();
    while (nv == 0.0)
    {
        v = sample_cn(rng, n);
        nv = v.norm();
    }
    return v / nv;
}

double hermitian_defect(const CMatrix &m)
{
    if (m.rows() != m.cols())
        return std::numeric_limits<double>::infinity();
    if (m.size() == 0)
        return 0.0;
    double scale = 1.0 + m.cwiseAbs().maxCoeff();
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

bool is_hermitian(const CMatrix &m, double rel_tol)
{
    return hermitian_defect(m) <= rel_tol;
}

namespace
{

EigenPair power_iteration(const CMatrix &m, double tol, int max_iter)
{
    const Index n = m.rows();
    // Gershgorin bound on the spectral radius; M + shift*I is positive semidefinite so the
    // dominant eigenvector of the shifted matrix belongs to the largest eigenvalue of M.
    double shift = m.cwiseAbs().rowwise().sum().maxCoeff();

    CVector v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = cplx(1.0 + 0.5 * std::sin(1.0 + double(i)), 0.25 * std::cos(3.0 * double(i)));
    v.normalize();

    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it)
    {
        CVector mv = m * v;
        double lambda = v.dot(mv).real();
        residual = (mv - lambda * v).norm();
        if (residual <= tol * (1.0 + std::abs(lambda)))
            return {lambda, v};
        v = mv + shift * v;
        double nv = v.norm();
        if (nv == 0.0)
            break;
        v /= nv;
    }
    throw ConvergenceError("hermitian_max_eigenpair: power iteration did not converge", residual);
}

} // namespace

EigenPair hermitian_max_eigenpair(const CMatrix &m, double tol, int max_iter, Index dense_limit)
{
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("hermitian_max_eigenpair: matrix must be square and non-empty");
    if (!m.allFinite())
        throw std::invalid_argument("hermitian_max_eigenpair: non-finite entries");
    if (!is_hermitian(m))
        throw std::invalid_argument("hermitian_max_eigenpair: matrix is not Hermitian");

    if (m.rows() > dense_limit)
        return power_iteration(m, tol, max_iter);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("hermitian_max_eigenpair: dense solver failed", -1.0);
    const Index n = m.rows();
    EigenPair out{es.eigenvalues()(n - 1), es.eigenvectors().col(n - 1)};
    out.vector.normalize();
    double residual = (m * out.vector - out.value * out.vector).norm();
    if (residual > tol * (1.0 + std::abs(out.value)))
        throw ConvergenceError("hermitian_max_eigenpair: residual above tolerance", residual);
    return out;
}

CVector vec(const CMatrix &m)
{
    return m.reshaped();
}

CMatrix invec(const CVector &v, Index rows)
{
    if (rows <= 0 || v.size() % rows != 0)
        throw std::invalid_argument("invec: length is not a multiple of the row count");
    return v.reshaped(rows, v.size() / rows);
}

CMatrix kron(const CMatrix &a, const CMatrix &b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix hadamard(const CMatrix &a, const CMatrix &b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hadamard: shape mismatch");
    return a.cwiseProduct(b);
}

CVector unit_modulus(const CVector &x, const CVector &fallback, double floor)
{
    CVector out(x.size());
    for (Index i = 0; i < x.size(); ++i)
    {
        double a = std::abs(x(i));
        out(i) = a < floor ? fallback(i) : x(i) / a;
    }
    return out;
}

} // namespace rissim
