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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rissim
{

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Raised when an iterative solver stops without meeting its tolerance.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string &what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Seeded random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard. Seeds are
// derived with SplitMix64 from a (seed, stream) pair so that Monte Carlo realization i of a run
// with master seed s always sees RandomSource(s, i), independent of scheduling. Uniform and normal
// variates are produced here (53-bit mantissa conversion and Box-Muller) instead of through the
// <random> distributions, whose algorithms are implementation-defined.
class RandomSource
{
public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64() { return engine_(); }
    double uniform();              // [0, 1)
    double uniform_open_closed();  // (0, 1]
    double normal();               // N(0, 1)
    cplx complex_normal();         // CN(0, 1)
    std::uint64_t uniform_index(std::uint64_t n); // {0, ..., n-1}, rejection sampled

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Derives a sub-stream key, e.g. for independent noise per scheme within one realization.
std::uint64_t derive_stream(std::uint64_t stream, std::uint64_t salt);

CVector sample_cn(RandomSource &rng, Index n);
CMatrix sample_cn(RandomSource &rng, Index rows, Index cols);

// Unit-norm vector with i.i.d. CN entries before normalization (isotropic on the complex sphere).
CVector sample_unit_vector(RandomSource &rng, Index n);

struct EigenPair
{
    double value;
    CVector vector; // unit norm
};

// max_ij |M_ij - conj(M_ji)| relative to 1 + max_ij |M_ij|
double hermitian_defect(const CMatrix &m);
bool is_hermitian(const CMatrix &m, double rel_tol = 1e-10);

// Largest eigenvalue and a unit eigenvector of a Hermitian matrix. Dense decomposition up to
// dense_limit rows, shifted power iteration above. Throws std::invalid_argument for non-Hermitian
// input and ConvergenceError when the residual |Mv - lv| exceeds tol * (1 + |l|).
EigenPair hermitian_max_eigenpair(const CMatrix &m, double tol = 1e-8, int max_iter = 20000,
                                  Index dense_limit = 4096);

// Column-stacking vectorization and its inverse.
CVector vec(const CMatrix &m);
CMatrix invec(const CVector &v, Index rows);

CMatrix kron(const CMatrix &a, const CMatrix &b);
CMatrix hadamard(const CMatrix &a, const CMatrix &b);

// Elementwise x / |x|; entries with |x| below floor are replaced by the matching entry of fallback.
CVector unit_modulus(const CVector &x, const CVector &fallback, double floor = 1e-14);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

} // namespace rissim
