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

#include "rissim/selection.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rissim
{

double moment_q(Index l_rb, Index l_ru)
{
    if (l_rb < 1 || l_ru < 1)
        throw std::invalid_argument("moment_q: path counts must be positive");
    const double L = double(l_rb * l_ru);
    if (L < 2.0)
        throw std::invalid_argument("moment_q: undefined for a single cascaded path");
    return (L + double(l_rb) + double(l_ru) - 3.0) / (L - 1.0);
}

SelectionState SelectionState::from_selected(Index paths, std::vector<Index> selected)
{
    std::sort(selected.begin(), selected.end());
    if (std::adjacent_find(selected.begin(), selected.end()) != selected.end())
        throw std::invalid_argument("SelectionState: duplicate path index");
    for (Index l : selected)
        if (l < 0 || l >= paths)
            throw std::invalid_argument("SelectionState: path index out of range");
    SelectionState s;
    s.selected = std::move(selected);
    for (Index l = 0; l < paths; ++l)
        if (!std::binary_search(s.selected.begin(), s.selected.end(), l))
            s.removed.push_back(l);
    return s;
}

SelectionState SelectionState::all(Index paths)
{
    std::vector<Index> idx(std::size_t(paths), 0);
    std::iota(idx.begin(), idx.end(), Index(0));
    return from_selected(paths, idx);
}

CMatrix select_columns(const CMatrix &a, const std::vector<Index> &idx)
{
    CMatrix out(a.rows(), Index(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.col(Index(i)) = a.col(idx[i]);
    return out;
}

CVector select_entries(const CVector &v, const std::vector<Index> &idx)
{
    CVector out(Index(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out(Index(i)) = v(idx[i]);
    return out;
}

double lemma1_expectation(const CMatrix &a_s, const CMatrix &a_r, const CMatrix &v, double q)
{
    if (v.rows() != a_s.rows() || v.cols() != a_s.cols() || a_r.rows() != a_s.rows())
        throw std::invalid_argument("lemma1_expectation: shape mismatch");
    const CMatrix w_s = a_s.adjoint() * v;
    const CMatrix w_r = a_r.adjoint() * v;
    return (4.0 - 2.0 * q) * w_s.diagonal().squaredNorm() + q * std::norm(w_s.trace()) +
           q * w_s.squaredNorm() + q * w_r.squaredNorm();
}

CMatrix build_j_act(const CMatrix &a_s, const CMatrix &a_r, double q)
{
    if (a_r.rows() != a_s.rows())
        throw std::invalid_argument("build_j_act: shape mismatch");
    const Index nb = a_s.rows(), ls = a_s.cols();
    CMatrix j = CMatrix::Zero(nb * ls, nb * ls);
    for (Index l = 0; l < ls; ++l)
        j.block(l * nb, l * nb, nb, nb) += (4.0 - 2.0 * q) * a_s.col(l) * a_s.col(l).adjoint();
    const CVector va = vec(a_s);
    j += q * va * va.adjoint();
    const CMatrix eye = CMatrix::Identity(ls, ls);
    const CMatrix ks = kron(eye, a_s.adjoint());
    const CMatrix kr = kron(eye, a_r.adjoint());
    j += q * ks.adjoint() * ks;
    j += q * kr.adjoint() * kr;
    return j;
}

ActiveBeamformer optimal_v(const CMatrix &j_act, Index n_b)
{
    EigenPair e = hermitian_max_eigenpair(j_act);
    return {invec(e.vector, n_b), e.value};
}

CMatrix build_j_pass(const std::vector<CMatrix> &b_s, const std::vector<CMatrix> &b_r, const CMatrix &v,
                     double q)
{
    const Index ls = Index(b_s.size()), lr = Index(b_r.size());
    if (ls < 1 || v.cols() != ls)
        throw std::invalid_argument("build_j_pass: V needs one column per selected path");
    const Index nb = v.rows(), nr = b_s.front().cols();
    for (const auto &b : b_s)
        if (b.rows() != nb || b.cols() != nr)
            throw std::invalid_argument("build_j_pass: coupling shape mismatch");
    for (const auto &b : b_r)
        if (b.rows() != nb || b.cols() != nr)
            throw std::invalid_argument("build_j_pass: coupling shape mismatch");

    const CMatrix v_c = v.conjugate();
    CMatrix j = CMatrix::Zero(nr, nr);

    // diagonal and trace terms
    CVector sum = CVector::Zero(nr);
    for (Index l = 0; l < ls; ++l)
    {
        CVector m = b_s[std::size_t(l)].transpose() * v_c.col(l);
        j += (4.0 - 2.0 * q) * m * m.adjoint();
        sum += m;
    }
    j += q * sum * sum.adjoint();

    // Frobenius terms through Upsilon = I (x) V^H; block column l has V^H in block row l
    const CMatrix ups_s = kron(CMatrix::Identity(ls, ls), v.adjoint());
    CMatrix m_s = CMatrix::Zero(nr, ls * ls);
    for (Index l = 0; l < ls; ++l)
        m_s += b_s[std::size_t(l)].transpose() * ups_s.middleCols(l * nb, nb).transpose();
    j += q * m_s * m_s.adjoint();

    if (lr > 0)
    {
        const CMatrix ups_r = kron(CMatrix::Identity(lr, lr), v.adjoint());
        CMatrix m_r = CMatrix::Zero(nr, ls * lr);
        for (Index l = 0; l < lr; ++l)
            m_r += b_r[std::size_t(l)].transpose() * ups_r.middleCols(l * nb, nb).transpose();
        j += q * m_r * m_r.adjoint();
    }
    return j;
}

HermitianForm j_pass_form(const ChannelRealization &ch, const SelectionState &state, const CMatrix &v,
                          double q)
{
    const Index L = ch.geometry.paths();
    if (v.cols() != Index(state.selected.size()) || v.rows() != ch.geometry.n_b())
        throw std::invalid_argument("j_pass_form: V needs one column per selected path");
    const double scale = ch.geometry.path_scale();
    // B_l^T conj(w) = conj(a_tilde_r(:, l)) * coef(l, w)
    const CMatrix coef = scale * ch.a_tilde_b.transpose() * v.conjugate(); // L x L_s

    CMatrix core = CMatrix::Zero(L, L);
    CVector sum = CVector::Zero(L);
    for (std::size_t i = 0; i < state.selected.size(); ++i)
    {
        const Index l = state.selected[i];
        const cplx c = coef(l, Index(i));
        core(l, l) += (4.0 - 2.0 * q) * std::norm(c) + q * coef.row(l).squaredNorm();
        sum(l) += c;
    }
    for (Index l : state.removed)
        core(l, l) += q * coef.row(l).squaredNorm();
    core += q * sum * sum.adjoint();
    return HermitianForm(ch.a_tilde_r.conjugate(), core);
}

double path_contribution(Index ls, const CMatrix &a_s, const CMatrix &a_r, const CMatrix &v, double q)
{
    if (ls < 0 || ls >= a_s.cols() || v.cols() != a_s.cols() || v.rows() != a_s.rows())
        throw std::invalid_argument("path_contribution: index or shape mismatch");
    const cplx w = v.col(ls).dot(a_s.col(ls)); // v^H a
    cplx cross = 0.0;
    for (Index i = 0; i < a_s.cols(); ++i)
        if (i != ls)
            cross += w * a_s.col(i).dot(v.col(i));
    return (4.0 - 2.0 * q) * std::norm(w) + q * (std::norm(w) + 2.0 * cross.real()) +
           q * (a_s.adjoint() * v.col(ls)).squaredNorm() + q * (a_r.adjoint() * v.col(ls)).squaredNorm();
}

namespace
{

double selection_q(const SystemGeometry &geo)
{
    // With a single path the closed form is 4 |a^H v|^2 for any Q, so any value works.
    return geo.paths() >= 2 ? moment_q(geo.l_rb, geo.l_ru) : 2.0;
}

// Orthonormal basis of the span of the BS steering vectors. Every path column of A lies in it.
CMatrix bs_basis(const ChannelRealization &ch)
{
    Eigen::JacobiSVD<CMatrix> svd(ch.steering.a_b, Eigen::ComputeThinU);
    const RVector &s = svd.singularValues();
    Index r = 0;
    while (r < s.size() && s(r) > 1e-12 * s(0))
        ++r;
    return svd.matrixU().leftCols(r);
}

// Maximizer of the closed form over V for fixed A. The eigenproblem is solved in the
// (L_s * rank) dimensional subspace that contains the range of J_act.
CMatrix active_step(const CMatrix &a_s, const CMatrix &a_r, double q, const CMatrix &basis)
{
    const Index nb = a_s.rows();
    if (basis.cols() < nb)
    {
        const CMatrix c_s = basis.adjoint() * a_s;
        const CMatrix c_r = basis.adjoint() * a_r;
        EigenPair e = hermitian_max_eigenpair(build_j_act(c_s, c_r, q));
        if (e.value >= 0.0)
            return basis * invec(e.vector, basis.cols());
    }
    return optimal_v(build_j_act(a_s, a_r, q), nb).v;
}

} // namespace

FixedSetResult optimize_fixed_set(const ChannelRealization &ch, const SelectionState &state,
                                  const CVector &psi0, const SelectionOptions &opts)
{
    if (state.selected.empty())
        throw std::invalid_argument("optimize_fixed_set: empty selection");
    if (opts.max_alternations < 1)
        throw std::invalid_argument("optimize_fixed_set: max_alternations must be positive");
    const double q = selection_q(ch.geometry);
    const CMatrix basis = bs_basis(ch);

    FixedSetResult res;
    res.psi = psi0;
    double prev = 0.0;
    for (int r = 0; r < opts.max_alternations; ++r)
    {
        const CMatrix a = path_matrix(ch, res.psi);
        const CMatrix a_s = select_columns(a, state.selected);
        const CMatrix a_r = select_columns(a, state.removed);
        res.v = active_step(a_s, a_r, q, basis);
        res.trace.push_back(lemma1_expectation(a_s, a_r, res.v, q));

        ManifoldResult m = minimize(j_pass_form(ch, state, res.v, q), res.psi, opts.manifold);
        res.psi = m.psi;
        res.objective = -m.objective.back();
        res.trace.push_back(res.objective);
        res.alternations = r + 1;
        if (r > 0 && std::abs(res.objective - prev) <= opts.alt_tol * std::abs(res.objective))
            break;
        prev = res.objective;
    }
    return res;
}

SelectionResult select_paths(const ChannelRealization &ch, Index l_target, const SelectionOptions &opts)
{
    const Index L = ch.geometry.paths();
    if (l_target < 1 || l_target > L)
        throw std::invalid_argument("select_paths: target must lie in [1, L]");
    const double q = selection_q(ch.geometry);

    SelectionResult out;
    SelectionState state = SelectionState::all(L);
    CVector psi = CVector::Ones(ch.geometry.n_r());
    while (true)
    {
        FixedSetResult fs = optimize_fixed_set(ch, state, psi, opts);
        out.trace.insert(out.trace.end(), fs.trace.begin(), fs.trace.end());
        out.stages.push_back({state, fs.v, fs.psi, fs.objective});
        psi = fs.psi;
        if (Index(state.selected.size()) == l_target)
        {
            out.state = state;
            out.v = fs.v;
            out.psi = fs.psi;
            out.objective = fs.objective;
            return out;
        }

        const CMatrix a = path_matrix(ch, psi);
        const CMatrix a_s = select_columns(a, state.selected);
        const CMatrix a_r = select_columns(a, state.removed);
        Index worst = 0;
        double worst_zeta = path_contribution(0, a_s, a_r, fs.v, q);
        for (Index i = 1; i < a_s.cols(); ++i)
        {
            double z = path_contribution(i, a_s, a_r, fs.v, q);
            if (z < worst_zeta)
            {
                worst_zeta = z;
                worst = i;
            }
        }
        std::vector<Index> keep = state.selected;
        keep.erase(keep.begin() + worst);
        state = SelectionState::from_selected(L, keep);
    }
}

ExhaustiveResult exhaustive_path_selection(const ChannelRealization &ch, Index l_target,
                                           const SelectionOptions &opts, std::size_t max_subsets)
{
    const Index L = ch.geometry.paths();
    if (l_target < 1 || l_target > L)
        throw std::invalid_argument("exhaustive_path_selection: target must lie in [1, L]");
    double count = 1.0;
    for (Index i = 0; i < l_target; ++i)
        count = count * double(L - i) / double(i + 1);
    if (count > double(max_subsets))
        throw std::invalid_argument("exhaustive_path_selection: subset budget exceeded");

    ExhaustiveResult best;
    bool have = false;
    std::vector<Index> idx(std::size_t(l_target), 0);
    std::iota(idx.begin(), idx.end(), Index(0));
    const CVector ones = CVector::Ones(ch.geometry.n_r());
    while (true)
    {
        SelectionState state = SelectionState::from_selected(L, idx);
        FixedSetResult fs = optimize_fixed_set(ch, state, ones, opts);
        ++best.subsets;
        if (!have || fs.objective > best.objective)
        {
            best.state = state;
            best.v = fs.v;
            best.psi = fs.psi;
            best.objective = fs.objective;
            have = true;
        }
        // next combination in lexicographic order
        Index k = l_target - 1;
        while (k >= 0 && idx[std::size_t(k)] == L - l_target + k)
            --k;
        if (k < 0)
            break;
        ++idx[std::size_t(k)];
        for (Index m = k + 1; m < l_target; ++m)
            idx[std::size_t(m)] = idx[std::size_t(m - 1)] + 1;
    }
    return best;
}

SelectionState random_path_selection(Index paths, Index l_target, RandomSource &rng)
{
    if (l_target < 1 || l_target > paths)
        throw std::invalid_argument("random_path_selection: target must lie in [1, L]");
    std::vector<Index> pool(std::size_t(paths), 0);
    std::iota(pool.begin(), pool.end(), Index(0));
    for (Index i = 0; i < l_target; ++i)
    {
        Index j = i + Index(rng.uniform_index(std::uint64_t(paths - i)));
        std::swap(pool[std::size_t(i)], pool[std::size_t(j)]);
    }
    pool.resize(std::size_t(l_target));
    return SelectionState::from_selected(paths, pool);
}

} // namespace rissim
