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

#include <functional>
#include <optional>
#include <vector>

namespace rissim
{

// Hermitian matrix J, stored either densely or as basis * core * basis^H with a small Hermitian
// core. The factored form lets the optimizer work in O(n r) per product when J has rank r << n.
class HermitianForm
{
public:
    HermitianForm(const CMatrix &dense); // NOLINT: implicit on purpose
    HermitianForm(const CMatrix &basis, const CMatrix &core);

    Index dim() const { return factored_ ? basis_.rows() : dense_.rows(); }
    bool factored() const { return factored_; }
    CVector apply(const CVector &x) const;
    double quadratic(const CVector &x) const; // Re(x^H J x)
    CMatrix dense() const;

private:
    bool factored_ = false;
    CMatrix dense_;
    CMatrix basis_, core_;
};

struct ArmijoOptions
{
    double initial_step = 1.0;
    double backtrack = 0.5;
    double sufficient_decrease = 1e-4;
    int max_backtracks = 30;
};

struct ManifoldOptions
{
    int max_iters = 500;
    double grad_tol = 1e-6; // on |grad| / max(1, |f|)
    double obj_tol = 1e-8;  // on |f_k - f_{k+1}| / max(1, |f|)
    ArmijoOptions armijo;
    int restart_every = 0;  // 0: restart every n iterations
    int max_degenerate_retractions = 3;
    std::function<void(const CVector &)> on_iterate; // sees psi0 and every accepted iterate
};

struct ManifoldResult
{
    CVector psi;
    std::vector<double> objective; // f at the start and after every accepted step
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Thrown when the retraction denominator vanishes repeatedly at the same iterate.
class RetractionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// f(psi) = -psi^H J psi on the complex circle manifold |psi_i| = 1.
double objective(const HermitianForm &j, const CVector &psi);

// Gradients use the conjugate (Wirtinger) convention: the change of f along a direction d is
// 2 Re(grad^H d), so a finite difference along a real coordinate sees twice the real part.
CVector euclidean_gradient(const HermitianForm &j, const CVector &psi); // -J psi
CVector project_tangent(const CVector &psi, const CVector &z);         // z - Re(z .* conj(psi)) .* psi
CVector riemannian_gradient(const HermitianForm &j, const CVector &psi);

// Vector transport to the tangent space at psi_new (the same projection).
CVector transport(const CVector &d, const CVector &psi_new);

// Polak-Ribiere+ coefficient for the new gradient and the transported old gradient.
double polak_ribiere(const CVector &grad_new, const CVector &grad_old_transported, double grad_old_sq);

// -grad + tau1 * d_transported
CVector conjugate_direction(const CVector &grad, const CVector &d_transported, double tau1);

// (psi + tau d) ./ |psi + tau d|, empty when an entry of psi + tau d is smaller than 1e-14.
std::optional<CVector> retract(const CVector &psi, const CVector &d, double tau);

// Riemannian conjugate gradient with Armijo backtracking, minimizing f from psi0.
ManifoldResult minimize(const HermitianForm &j, const CVector &psi0, const ManifoldOptions &opts = {});

} // namespace rissim
