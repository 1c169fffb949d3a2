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

#include "rissim/validation.hpp"

#include "rissim/dpgi.hpp"
#include "rissim/experiments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rissim
{

bool ValidationReport::passed() const
{
    for (const auto &c : checks)
        if (c.status == "fail")
            return false;
    return true;
}

std::string to_csv(const ValidationReport &report)
{
    std::ostringstream os;
    os << "check,measured,threshold,status\n";
    for (const auto &c : report.checks)
        os << c.name << ',' << format_number(c.measured) << ',' << format_number(c.threshold) << ',' << c.status << '\n';
    return os.str();
}

double coupled_expectation(const SystemGeometry &geo, const CMatrix &a, const CMatrix &v,
                           const std::vector<Index> &selected)
{
    const CMatrix m = a.adjoint() * v;
    const Index L = geo.paths(), ls = Index(selected.size());
    // E[x_a conj(x_b) conj(x_c) x_d] = [a=b][c=d] + [a=c][b=d] for i.i.d. CN(0, 1)
    auto m4 = [](Index a_, Index b_, Index c_, Index d_) {
        return double(a_ == b_ && c_ == d_) + double(a_ == c_ && b_ == d_);
    };
    double total = 0.0;
    for (Index la = 0; la < L; ++la)
        for (Index k = 0; k < ls; ++k)
            for (Index lc = 0; lc < L; ++lc)
                for (Index j = 0; j < ls; ++j)
                {
                    const Index lb = selected[std::size_t(k)], ld = selected[std::size_t(j)];
                    const double e = m4(geo.bs_ris_of(la), geo.bs_ris_of(lb), geo.bs_ris_of(lc), geo.bs_ris_of(ld)) *
                                     m4(geo.ris_user_of(la), geo.ris_user_of(lb), geo.ris_user_of(lc), geo.ris_user_of(ld));
                    if (e != 0.0)
                        total += e * (m(la, k) * std::conj(m(lc, j))).real();
                }
    return total;
}

namespace
{

CheckResult gate(const std::string &name, double measured, double threshold)
{
    return {name, measured, threshold, measured <= threshold ? "pass" : "fail"};
}

CheckResult info(const std::string &name, double measured)
{
    return {name, measured, 0.0, "info"};
}

CVector random_phases(RandomSource &rng, Index n)
{
    CVector p(n);
    for (Index i = 0; i < n; ++i)
        p(i) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    return p;
}

struct Probe
{
    ChannelRealization ch;
    SelectionState state;
    CMatrix a, v;
};

Probe make_probe(const SystemGeometry &geo, RandomSource &rng)
{
    Probe x{sample_realization(geo, rng), {}, {}, {}};
    const Index L = geo.paths();
    x.state = random_path_selection(L, std::max<Index>(1, L / 2), rng);
    x.a = path_matrix(x.ch, random_phases(rng, geo.n_r()));
    CMatrix v = sample_cn(rng, geo.n_b(), Index(x.state.selected.size()));
    x.v = v / v.norm();
    return x;
}

double closed_form(const Probe &x, double q)
{
    return lemma1_expectation(select_columns(x.a, x.state.selected), select_columns(x.a, x.state.removed), x.v, q);
}

double gain_monte_carlo(const Probe &x, long draws, RandomSource &rng)
{
    const CMatrix m = x.a.adjoint() * x.v;
    double acc = 0.0;
    for (long d = 0; d < draws; ++d)
    {
        const CVector g = cascaded_gains(sample_gains(x.ch.geometry, rng));
        const CVector gs = select_entries(g, x.state.selected);
        acc += std::norm(cplx(g.transpose() * m * gs.conjugate()));
    }
    return acc / double(draws);
}

std::vector<CMatrix> pick(const std::vector<CMatrix> &all, const std::vector<Index> &idx)
{
    std::vector<CMatrix> out;
    for (Index l : idx)
        out.push_back(all[std::size_t(l)]);
    return out;
}

} // namespace

ValidationReport run_validation(const ScenarioConfig &cfg)
{
    validate_config(cfg);
    ValidationReport rep;
    const SystemGeometry &geo = cfg.geometry;
    const double q_shift = cfg.validate_q_offset;

    // fourth moments of the coupled gains
    {
        SystemGeometry mg = geo;
        mg.l_rb = std::max<Index>(2, geo.l_rb);
        mg.l_ru = std::max<Index>(2, geo.l_ru);
        RandomSource rng(cfg.seed, derive_stream(0, 1));
        const long draws = 1000000;
        const Index same = 0, shared = mg.path_index(1, 0), disjoint = mg.path_index(1, 1);
        double m_same = 0.0, m_shared = 0.0, m_disjoint = 0.0;
        for (long d = 0; d < draws; ++d)
        {
            const CVector g = cascaded_gains(sample_gains(mg, rng));
            m_same += std::pow(std::norm(g(same)), 2);
            m_shared += std::norm(g(same)) * std::norm(g(shared));
            m_disjoint += std::norm(g(same)) * std::norm(g(disjoint));
        }
        rep.checks.push_back(gate("moment_fourth_rel_err", std::abs(m_same / draws / 4.0 - 1.0), 0.03));
        rep.checks.push_back(gate("moment_shared_factor_rel_err", std::abs(m_shared / draws / 2.0 - 1.0), 0.03));
        rep.checks.push_back(gate("moment_disjoint_rel_err", std::abs(m_disjoint / draws - 1.0), 0.03));
    }

    // Closed-form average gain where it is exact: a single BS-RIS path.
    {
        SystemGeometry eg = geo;
        eg.l_rb = 1;
        eg.l_ru = std::max<Index>(2, geo.l_ru);
        const double q = moment_q(eg.l_rb, eg.l_ru) + q_shift;
        RandomSource rng(cfg.seed, derive_stream(0, 2));
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
        {
            Probe x = make_probe(eg, rng);
            const double exact = coupled_expectation(eg, x.a, x.v, x.state.selected);
            worst = std::max(worst, std::abs(closed_form(x, q) - exact) / exact);
        }
        rep.checks.push_back(gate("lemma1_exact_geometry_rel_err", worst, 1e-9));

        Probe x = make_probe(eg, rng);
        const double mc = gain_monte_carlo(x, 1000000, rng);
        rep.checks.push_back(gate("gain_monte_carlo_rel_err", std::abs(closed_form(x, q) - mc) / mc, 0.02));
    }

    // Closed form against the exact coupled moment at the configured geometry (approximate when
    // both path counts exceed one).
    if (geo.paths() >= 2)
    {
        const double q = moment_q(geo.l_rb, geo.l_ru) + q_shift;
        RandomSource rng(cfg.seed, derive_stream(0, 3));
        double worst = 0.0;
        for (int i = 0; i < 5; ++i)
        {
            Probe x = make_probe(geo, rng);
            const double exact = coupled_expectation(geo, x.a, x.v, x.state.selected);
            worst = std::max(worst, std::abs(closed_form(x, q) - exact) / exact);
        }
        rep.checks.push_back(info("lemma1_coupling_gap_rel", worst));
    }

    // Update objective with independent unknown gains.
    {
        RandomSource rng(cfg.seed, derive_stream(0, 4));
        Probe x = make_probe(geo, rng);
        const CMatrix a_s = select_columns(x.a, x.state.selected), a_r = select_columns(x.a, x.state.removed);
        const CVector g_s = select_entries(x.ch.g, x.state.selected);
        const CVector f = sample_unit_vector(rng, geo.n_b());
        const CVector known = a_s * g_s.conjugate();
        const long draws = 1000000;
        double acc = 0.0;
        for (long d = 0; d < draws; ++d)
            acc += std::norm((known + a_r * sample_cn(rng, a_r.cols()).conjugate()).dot(f));
        const double closed = lemma2_expectation(a_s, a_r, g_s, f);
        rep.checks.push_back(gate("lemma2_monte_carlo_rel_err", std::abs(closed - acc / draws) / closed, 0.02));
    }

    // Pilot slot weights and quadratic-form identities.
    {
        RandomSource rng(cfg.seed, derive_stream(0, 5));
        double kappa_err = 0.0, channel_err = 0.0, j_act_err = 0.0, j_pass_err = 0.0, j_pass_form_err = 0.0,
               jt_act_err = 0.0, jt_pass_err = 0.0;
        const double q = geo.paths() >= 2 ? moment_q(geo.l_rb, geo.l_ru) : 2.0;
        for (int i = 0; i < 100; ++i)
        {
            ChannelRealization ch = sample_realization(geo, rng);
            SelectionState st = random_path_selection(geo.paths(), std::max<Index>(1, geo.paths() - 1), rng);
            for (Index t = 0; t < Index(st.selected.size()); ++t)
            {
                PilotSlot slot = pilot_beamformers(ch, st, t);
                const double expect = geo.path_scale();
                kappa_err = std::max(kappa_err, std::abs(kappa_vector(ch, slot.f_e, slot.psi, 1.0)(st.selected[std::size_t(t)]) - expect) / expect);
            }
            if (i >= 10)
                continue;
            const CVector psi = random_phases(rng, geo.n_r());
            const CVector h = cascaded_channel(ch, psi);
            channel_err = std::max(channel_err, (cascaded_channel_from_paths(ch, psi) - h).norm() / h.norm());

            const CMatrix a = path_matrix(ch, psi);
            const CMatrix a_s = select_columns(a, st.selected), a_r = select_columns(a, st.removed);
            CMatrix v = sample_cn(rng, geo.n_b(), a_s.cols());
            v /= v.norm();
            const double l1 = lemma1_expectation(a_s, a_r, v, q);
            const CVector vv = vec(v);
            j_act_err = std::max(j_act_err, std::abs(vv.dot(build_j_act(a_s, a_r, q) * vv).real() - l1) / l1);
            const CMatrix jp = build_j_pass(pick(ch.couplings, st.selected), pick(ch.couplings, st.removed), v, q);
            j_pass_err = std::max(j_pass_err, std::abs(psi.dot(jp * psi).real() - l1) / l1);
            const CMatrix jf = j_pass_form(ch, st, v, q).dense();
            j_pass_form_err = std::max(j_pass_form_err, (jf - jp).cwiseAbs().maxCoeff() / jp.cwiseAbs().maxCoeff());

            const CVector g_s = select_entries(ch.g, st.selected);
            const CVector f = sample_unit_vector(rng, geo.n_b());
            const double l2 = lemma2_expectation(a_s, a_r, g_s, f);
            jt_act_err = std::max(jt_act_err, std::abs(f.dot(build_j_act_tilde(a_s, a_r, g_s) * f).real() - l2) / l2);
            const CMatrix jtp = build_j_pass_tilde(pick(ch.couplings, st.selected), pick(ch.couplings, st.removed), g_s, f);
            jt_pass_err = std::max(jt_pass_err, std::abs(psi.dot(jtp * psi).real() - l2) / l2);
        }
        rep.checks.push_back(gate("kappa_selected_entry_rel_err", kappa_err, 1e-9));
        rep.checks.push_back(gate("channel_two_routes_rel_err", channel_err, 1e-9));
        rep.checks.push_back(gate("j_act_identity_rel_err", j_act_err, 1e-9));
        rep.checks.push_back(gate("j_pass_identity_rel_err", j_pass_err, 1e-9));
        rep.checks.push_back(gate("j_pass_factored_rel_err", j_pass_form_err, 1e-9));
        rep.checks.push_back(gate("j_act_tilde_identity_rel_err", jt_act_err, 1e-9));
        rep.checks.push_back(gate("j_pass_tilde_identity_rel_err", jt_pass_err, 1e-9));
    }

    // Manifold optimizer invariants.
    {
        RandomSource rng(cfg.seed, derive_stream(0, 6));
        double modulus_err = 0.0, increase = 0.0;
        for (int i = 0; i < 20; ++i)
        {
            CMatrix g = sample_cn(rng, 16, 4);
            ManifoldResult r = minimize(CMatrix(g * g.adjoint()), random_phases(rng, 16));
            modulus_err = std::max(modulus_err, (r.psi.cwiseAbs().array() - 1.0).abs().maxCoeff());
            for (std::size_t k = 1; k < r.objective.size(); ++k)
                increase = std::max(increase, (r.objective[k] - r.objective[k - 1]) / std::abs(r.objective[0]));
        }
        rep.checks.push_back(gate("manifold_unit_modulus_err", modulus_err, 1e-12));
        rep.checks.push_back(gate("manifold_objective_increase", increase, 0.0));
    }

    // Gain predicted by the update objective against the gain realized with the coupled gains.
    if (cfg.l_s < geo.paths())
    {
        RandomSource rng(cfg.seed, derive_stream(0, 7));
        double predicted = 0.0, realized = 0.0;
        for (int i = 0; i < 30; ++i)
        {
            ChannelRealization ch = sample_realization(geo, rng);
            SelectionResult sel = select_paths(ch, cfg.l_s, cfg.selection);
            UpdateResult u = alternate_update(ch, sel.state, select_entries(ch.g, sel.state.selected), cfg.update);
            predicted += u.objective;
            realized += std::norm(cascaded_channel(ch, u.psi).dot(u.f_t));
        }
        rep.checks.push_back(info("lemma2_realized_over_predicted", realized / predicted));
    }
    return rep;
}

} // namespace rissim
