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

#include "rissim/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rissim
{

HermitianForm::HermitianForm(const CMatrix &dense) : dense_(dense)
{
    if (dense.rows() != dense.cols())
        throw std::invalid_argument("HermitianForm: matrix must be square");
    if (!is_hermitian(dense))
        throw std::invalid_argument("HermitianForm: matrix is not Hermitian");
}

HermitianForm::HermitianForm(const CMatrix &basis, const CMatrix &core)
    : factored_(true), basis_(basis), core_(core)
{
    if (core.rows() != core.cols() || core.rows() != basis.cols())
        throw std::invalid_argument("HermitianForm: core must be square with one row per basis column");
    if (!is_hermitian(core))
        throw std::invalid_argument("HermitianForm: core is not Hermitian");
}

CVector HermitianForm::apply(const CVector &x) const
{
    if (x.size() != dim())
        throw std::invalid_argument("HermitianForm::apply: length mismatch");
    if (!factored_)
        return dense_ * x;
    return basis_ * (core_ * (basis_.adjoint() * x));
}

double HermitianForm::quadratic(const CVector &x) const
{
    if (x.size() != dim())
        throw std::invalid_argument("HermitianForm::quadratic: length mismatch");
    if (!factored_)
        return x.dot(dense_ * x).real();
    CVector y = basis_.adjoint() * x;
    return y.dot(core_ * y).real();
}

CMatrix HermitianForm::dense() const
{
    if (!factored_)
        return dense_;
    return basis_ * core_ * basis_.adjoint();
}

double objective(const HermitianForm &j, const CVector &psi)
{
    return -j.quadratic(psi);
}

CVector euclidean_gradient(const HermitianForm &j, const CVector &psi)
{
    return -j.apply(psi);
}

CVector project_tangent(const CVector &psi, const CVector &z)
{
    if (psi.size() != z.size())
        throw std::invalid_argument("project_tangent: length mismatch");
    CVector out(z.size());
    for (Index i = 0; i < z.size(); ++i)
        out(i) = z(i) - (z(i) * std::conj(psi(i))).real() * psi(i);
    return out;
}

CVector riemannian_gradient(const HermitianForm &j, const CVector &psi)
{
    return project_tangent(psi, euclidean_gradient(j, psi));
}

CVector transport(const CVector &d, const CVector &psi_new)
{
    return project_tangent(psi_new, d);
}

double polak_ribiere(const CVector &grad_new, const CVector &grad_old_transported, double grad_old_sq)
{
    if (!(grad_old_sq > 0.0))
        return 0.0;
    double beta = grad_new.dot(grad_new - grad_old_transported).real() / grad_old_sq;
    return std::max(0.0, beta);
}

CVector conjugate_direction(const CVector &grad, const CVector &d_transported, double tau1)
{
    return -grad + tau1 * d_transported;
}

std::optional<CVector> retract(const CVector &psi, const CVector &d, double tau)
{
    CVector out = psi + tau * d;
    for (Index i = 0; i < out.size(); ++i)
    {
        double a = std::abs(out(i));
        if (a < 1e-14)
            return std::nullopt;
        out(i) /= a;
    }
    return out;
}

ManifoldResult minimize(const HermitianForm &j, const CVector &psi0, const ManifoldOptions &opts)
{
    const Index n = j.dim();
    if (psi0.size() != n)
        throw std::invalid_argument("minimize: psi0 has the wrong length");
    for (Index i = 0; i < n; ++i)
        if (std::abs(std::abs(psi0(i)) - 1.0) > 1e-9)
            throw std::invalid_argument("minimize: psi0 is not on the manifold");
    if (opts.max_iters < 1 || opts.armijo.backtrack <= 0.0 || opts.armijo.backtrack >= 1.0)
        throw std::invalid_argument("minimize: invalid options");

    const int restart = opts.restart_every > 0 ? opts.restart_every : int(n);

    ManifoldResult res;
    res.psi = psi0;
    double f = objective(j, res.psi);
    res.objective.push_back(f);
    if (opts.on_iterate)
        opts.on_iterate(res.psi);

    CVector grad, grad_prev, d;
    double grad_prev_sq = 0.0;
    int stalled = 0;
    for (int it = 0; it < opts.max_iters; ++it)
    {
        res.iterations = it + 1;
        grad = riemannian_gradient(j, res.psi);
        const double scale = std::max(1.0, std::abs(f));
        res.grad_norm = grad.norm();
        if (res.grad_norm <= opts.grad_tol * scale)
        {
            res.converged = true;
            break;
        }

        if (it == 0 || it % restart == 0)
            d = -grad;
        else
        {
            CVector d_t = transport(d, res.psi);
            double tau1 = polak_ribiere(grad, transport(grad_prev, res.psi), grad_prev_sq);
            d = conjugate_direction(grad, d_t, tau1);
            if (grad.dot(d).real() >= 0.0)
                d = -grad;
        }
        const double slope = 2.0 * grad.dot(d).real();

        double tau = opts.armijo.initial_step / d.cwiseAbs().maxCoeff();
        int degenerate = 0;
        bool accepted = false;
        CVector cand;
        double f_cand = f;
        for (int k = 0; k <= opts.armijo.max_backtracks; ++k)
        {
            auto r = retract(res.psi, d, tau);
            if (!r)
            {
                if (++degenerate > opts.max_degenerate_retractions)
                    throw RetractionError("minimize: retraction denominator vanished repeatedly");
                tau *= 0.5;
                continue;
            }
            f_cand = objective(j, *r);
            if (f_cand <= f + opts.armijo.sufficient_decrease * tau * slope)
            {
                cand = std::move(*r);
                accepted = true;
                break;
            }
            tau *= opts.armijo.backtrack;
        }
        if (!accepted)
        {
            // no representable decrease along a descent direction
            res.converged = true;
            break;
        }

        const double decrease = f - f_cand;
        grad_prev = grad;
        grad_prev_sq = grad.squaredNorm();
        res.psi = std::move(cand);
        f = f_cand;
        res.objective.push_back(f);
        if (opts.on_iterate)
            opts.on_iterate(res.psi);
        // a single short step can come from a poor line-search bracket, so require two in a row
        stalled = decrease <= opts.obj_tol * scale ? stalled + 1 : 0;
        if (stalled >= 2)
        {
            res.converged = true;
            break;
        }
    }
    return res;
}

} // namespace rissim
