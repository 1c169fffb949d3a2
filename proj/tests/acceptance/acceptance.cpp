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

// Acceptance harness. One line per criterion: "criterion N: PASS|FAIL <summary>".
// Exit status is nonzero when any requested criterion fails.

#include "rissim/dpgi.hpp"
#include "rissim/experiments.hpp"
#include "rissim/validation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

using namespace rissim;

namespace
{

struct Verdict
{
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

CVector phases(RandomSource &rng, Index n)
{
    CVector p(n);
    for (Index i = 0; i < n; ++i)
        p(i) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    return p;
}

SystemGeometry lemma_geometry()
{
    SystemGeometry g;
    g.nb_v = 4;
    g.nb_h = 4;
    g.nr_v = 8;
    g.nr_h = 8;
    g.l_rb = 2;
    g.l_ru = 3;
    return g;
}

struct Instance
{
    ChannelRealization ch;
    SelectionState st;
    CMatrix a_s, a_r;
};

Instance instance(const SystemGeometry &geo, RandomSource &rng)
{
    Instance x{sample_realization(geo, rng), {}, {}, {}};
    x.st = random_path_selection(geo.paths(), 4, rng);
    const CMatrix a = path_matrix(x.ch, phases(rng, geo.n_r()));
    x.a_s = select_columns(a, x.st.selected);
    x.a_r = select_columns(a, x.st.removed);
    return x;
}

Verdict criterion1()
{
    const SystemGeometry geo = lemma_geometry();
    const double q = moment_q(geo.l_rb, geo.l_ru);
    const long draws = 2000000;
    double worst = 0.0, worst_exact = 0.0, worst_mc_vs_exact = 0.0;
    for (int i = 0; i < 20; ++i)
    {
        RandomSource rng(1001, std::uint64_t(i));
        Instance x = instance(geo, rng);
        CMatrix v = sample_cn(rng, geo.n_b(), 4);
        v /= v.norm();
        CMatrix a(geo.n_b(), geo.paths());
        for (std::size_t k = 0; k < x.st.selected.size(); ++k)
            a.col(x.st.selected[k]) = x.a_s.col(Index(k));
        for (std::size_t k = 0; k < x.st.removed.size(); ++k)
            a.col(x.st.removed[k]) = x.a_r.col(Index(k));
        const CMatrix m = a.adjoint() * v;
        double acc = 0.0;
        for (long d = 0; d < draws; ++d)
        {
            const CVector g = cascaded_gains(sample_gains(geo, rng));
            acc += std::norm(cplx(g.transpose() * m * select_entries(g, x.st.selected).conjugate()));
        }
        const double mc = acc / double(draws);
        const double closed = lemma1_expectation(x.a_s, x.a_r, v, q);
        const double exact = coupled_expectation(geo, a, v, x.st.selected);
        worst = std::max(worst, std::abs(closed - mc) / mc);
        worst_exact = std::max(worst_exact, std::abs(closed - exact) / exact);
        worst_mc_vs_exact = std::max(worst_mc_vs_exact, std::abs(mc - exact) / exact);
    }
    return {worst <= 0.01, "max |closed - MC|/MC = " + fmt("%.4g", worst) + " (tol 0.01); closed vs exact coupled moment " +
                               fmt("%.4g", worst_exact) + "; MC vs exact " + fmt("%.4g", worst_mc_vs_exact)};
}

Verdict criterion2()
{
    const SystemGeometry geo = lemma_geometry();
    const long draws = 2000000;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
    {
        RandomSource rng(1002, std::uint64_t(i));
        Instance x = instance(geo, rng);
        const CVector g_s = select_entries(x.ch.g, x.st.selected);
        const CVector f = sample_unit_vector(rng, geo.n_b());
        const cplx known = (x.a_s * g_s.conjugate()).dot(f);
        const CVector w = x.a_r.adjoint() * f; // h^H f = known + sum_k g_r(k) w(k)
        double acc = 0.0;
        for (long d = 0; d < draws; ++d)
            acc += std::norm(known + sample_cn(rng, w.size()).cwiseProduct(w).sum());
        const double mc = acc / double(draws);
        worst = std::max(worst, std::abs(lemma2_expectation(x.a_s, x.a_r, g_s, f) - mc) / mc);
    }
    return {worst <= 0.01, "max |closed - MC|/MC = " + fmt("%.4g", worst) + " (tol 0.01)"};
}

Verdict criterion3()
{
    SystemGeometry geo;
    RandomSource rng(1003);
    const long draws = 1000000;
    const Index same = 0, shared = geo.path_index(1, 0), disjoint = geo.path_index(1, 1);
    double m4 = 0.0, ms = 0.0, md = 0.0;
    for (long d = 0; d < draws; ++d)
    {
        const CVector g = cascaded_gains(sample_gains(geo, rng));
        m4 += std::pow(std::norm(g(same)), 2);
        ms += std::norm(g(same)) * std::norm(g(shared));
        md += std::norm(g(same)) * std::norm(g(disjoint));
    }
    m4 /= draws;
    ms /= draws;
    md /= draws;
    const bool ok = std::abs(m4 / 4 - 1) <= 0.03 && std::abs(ms / 2 - 1) <= 0.03 && std::abs(md - 1) <= 0.03;
    return {ok, "E|g|^4 = " + fmt("%.4f", m4) + ", shared factor " + fmt("%.4f", ms) + ", disjoint " + fmt("%.4f", md)};
}

Verdict criterion4()
{
    SystemGeometry geo;
    const double p_e = db_to_linear(-15.0);
    const double expect = std::sqrt(p_e) * geo.path_scale();
    double worst = 0.0;
    long slots = 0;
    for (int seed = 0; seed < 100; ++seed)
    {
        RandomSource rng{std::uint64_t(seed)};
        ChannelRealization ch = sample_realization(geo, rng);
        for (const SelectionState &st : {select_paths(ch, 4).state, SelectionState::all(geo.paths())})
            for (Index t = 0; t < Index(st.selected.size()); ++t, ++slots)
            {
                PilotSlot s = pilot_beamformers(ch, st, t);
                const cplx k = kappa_vector(ch, s.f_e, s.psi, p_e)(st.selected[std::size_t(t)]);
                worst = std::max(worst, std::abs(k - expect) / expect);
            }
    }
    return {worst <= 1e-9, "max rel err " + fmt("%.3g", worst) + " over " + std::to_string(slots) + " slots"};
}

std::vector<CMatrix> pick(const std::vector<CMatrix> &all, const std::vector<Index> &idx)
{
    std::vector<CMatrix> out;
    for (Index l : idx)
        out.push_back(all[std::size_t(l)]);
    return out;
}

Verdict criterion5()
{
    SystemGeometry geo;
    const double q = moment_q(geo.l_rb, geo.l_ru);
    double e_act = 0, e_pass = 0, e_pass_f = 0, e_tact = 0, e_tpass = 0, e_tpass_f = 0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    for (int i = 0; i < 100; ++i)
    {
        RandomSource rng(1005, std::uint64_t(i));
        ChannelRealization ch = sample_realization(geo, rng);
        SelectionState st = random_path_selection(geo.paths(), 1 + Index(rng.uniform_index(5)), rng);
        const CVector psi = phases(rng, geo.n_r());
        const CMatrix a = path_matrix(ch, psi);
        const CMatrix a_s = select_columns(a, st.selected), a_r = select_columns(a, st.removed);
        CMatrix v = sample_cn(rng, geo.n_b(), a_s.cols());
        v /= v.norm();
        const double l1 = lemma1_expectation(a_s, a_r, v, q);
        const CVector vv = vec(v);
        e_act = std::max(e_act, rel(vv.dot(build_j_act(a_s, a_r, q) * vv).real(), l1));
        const auto b_s = pick(ch.couplings, st.selected), b_r = pick(ch.couplings, st.removed);
        e_pass = std::max(e_pass, rel(psi.dot(build_j_pass(b_s, b_r, v, q) * psi).real(), l1));
        e_pass_f = std::max(e_pass_f, rel(j_pass_form(ch, st, v, q).quadratic(psi), l1));

        const CVector g_s = select_entries(ch.g, st.selected);
        const CVector f = sample_unit_vector(rng, geo.n_b());
        const double l2 = lemma2_expectation(a_s, a_r, g_s, f);
        e_tact = std::max(e_tact, rel(f.dot(build_j_act_tilde(a_s, a_r, g_s) * f).real(), l2));
        e_tpass = std::max(e_tpass, rel(psi.dot(build_j_pass_tilde(b_s, b_r, g_s, f) * psi).real(), l2));
        e_tpass_f = std::max(e_tpass_f, rel(j_pass_tilde_form(ch, st, g_s, f).quadratic(psi), l2));
    }
    const double worst = std::max({e_act, e_pass, e_pass_f, e_tact, e_tpass, e_tpass_f});
    return {worst <= 1e-9, "J_act " + fmt("%.2g", e_act) + ", J_pass " + fmt("%.2g", e_pass) + " (factored " +
                               fmt("%.2g", e_pass_f) + "), J~_act " + fmt("%.2g", e_tact) + ", J~_pass " +
                               fmt("%.2g", e_tpass) + " (factored " + fmt("%.2g", e_tpass_f) + ")"};
}

Verdict criterion6()
{
    const Index n = 4;
    int misses = 0;
    double worst_gap = 0.0, worst_mod = 0.0, worst_rise = 0.0;
    for (int i = 0; i < 100; ++i)
    {
        RandomSource rng(1006, std::uint64_t(i));
        const CMatrix g = sample_cn(rng, n, n);
        const CMatrix j = g * g.adjoint();
        ManifoldOptions opts;
        opts.on_iterate = [&](const CVector &p) {
            worst_mod = std::max(worst_mod, (p.cwiseAbs().array() - 1.0).abs().maxCoeff());
        };
        const ManifoldResult r = minimize(j, CVector::Ones(n), opts);
        for (std::size_t k = 1; k < r.objective.size(); ++k)
            worst_rise = std::max(worst_rise, r.objective[k] - r.objective[k - 1]);
        double best = -1e300;
        for (int s = 0; s < 100000; ++s)
        {
            const CVector p = phases(rng, n);
            best = std::max(best, p.dot(j * p).real());
        }
        const double got = -r.objective.back();
        const double gap = (best - got) / std::max(1.0, best);
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-6)
            ++misses;
    }
    const bool ok = misses == 0 && worst_mod <= 1e-12 && worst_rise <= 1e-10;
    return {ok, std::to_string(misses) + "/100 instances below best random point by > 1e-6 (worst rel gap " +
                    fmt("%.3g", worst_gap) + "); max |psi_i| defect " + fmt("%.2g", worst_mod) +
                    "; max objective rise " + fmt("%.2g", worst_rise)};
}

std::map<std::string, double> index(const std::vector<MetricRecord> &recs, const std::string &metric)
{
    std::map<std::string, double> m;
    for (const auto &r : recs)
        if (r.metric == metric)
            m[r.scheme + "@" + format_number(r.sweep_value)] = r.value;
    return m;
}

Verdict criterion7()
{
    ScenarioConfig cfg;
    const auto m = index(run_nmse_vs_pnr(cfg).records, "nmse_db");
    bool ok = true;
    std::ostringstream os;
    for (double p : cfg.pnr_db)
    {
        const std::string k = "@" + format_number(p);
        const double t4 = m.at("proposed_T4" + k), t6 = m.at("proposed_T6" + k), mm = m.at("mmse_T6" + k),
                     ls = m.at("ls_T6" + k);
        const bool row = t4 < t6 && t6 < mm && mm < ls;
        ok = ok && row;
        os << "PNR " << p << ": T4 " << fmt("%.2f", t4) << " T6 " << fmt("%.2f", t6) << " MMSE6 " << fmt("%.2f", mm)
           << " LS6 " << fmt("%.2f", ls) << (row ? "" : " [order broken]") << "; ";
    }
    for (const char *s : {"proposed_T4", "proposed_T6"})
    {
        const double d = std::abs(m.at(std::string(s) + "@0") - m.at(std::string(s) + "@-5"));
        ok = ok && d < 2.0;
        os << s << " |0dB - -5dB| " << fmt("%.3f", d) << "; ";
    }
    return {ok, os.str()};
}

Verdict criterion8()
{
    ScenarioConfig cfg;
    cfg.l_s_list = {2, 3, 4, 5};
    const auto m = index(run_se_vs_paths(cfg).records, "se_bps_hz");
    bool ok = true;
    std::ostringstream os;
    for (Index n : cfg.l_s_list)
    {
        const std::string k = "@" + std::to_string(n);
        const double o = m.at("optimal" + k), s = m.at("selected" + k), r = m.at("random" + k),
                     p = m.at("partial_random_ao" + k);
        const bool row = o >= s && s >= r && s > p;
        ok = ok && row;
        os << "L_s " << n << ": opt " << fmt("%.3f", o) << " sel " << fmt("%.3f", s) << " rand " << fmt("%.3f", r)
           << " partial " << fmt("%.3f", p) << (row ? "" : " [order broken]") << "; ";
    }
    return {ok, os.str()};
}

Verdict criterion9()
{
    ScenarioConfig cfg;
    cfg.fixed_pnr_db = -15.0;
    cfg.l_s = 4;
    const auto m = index(run_se_vs_dnr(cfg).records, "se_bps_hz");
    double g1 = 0.0, g2 = 0.0;
    for (double d : cfg.dnr_db)
    {
        const std::string k = "@" + format_number(d);
        g1 = std::max(g1, m.at("perfect_pgi_ao" + k) - m.at("proposed_T6_B16_ao" + k));
        g2 = std::max(g2, m.at("perfect_dpgi_T4_alg3" + k) - m.at("proposed_T4_B8_alg3" + k));
    }
    return {g1 <= 0.4 && g2 <= 0.4,
            "max gap perfect-PGI vs T6/B16 " + fmt("%.3f", g1) + ", perfect-DPGI vs T4/B8 " + fmt("%.3f", g2) + " (tol 0.4)"};
}

Verdict criterion10()
{
    ScenarioConfig cfg;
    cfg.realizations = 12;
    cfg.bits = {2, 8};
    cfg.dnr_db = {-10, 0, 10};
    std::vector<std::string> broken;
    auto runs = [&](int workers) {
        ScenarioConfig c = cfg;
        c.workers = workers;
        std::vector<std::string> out{to_csv(run_validation(c))};
        for (Sweep s : {Sweep::nmse_pnr, Sweep::nmse_bits, Sweep::se_paths, Sweep::se_bits, Sweep::se_dnr})
            out.push_back(to_csv(run_sweep(s, c).records));
        return out;
    };
    const auto a = runs(1), b = runs(1), c = runs(4);
    const char *names[] = {"validate", "nmse-pnr", "nmse-bits", "se-paths", "se-bits", "se-dnr"};
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] || a[i] != c[i])
            broken.push_back(names[i]);
    std::string detail = "6 outputs compared across reruns with 1, 1 and 4 workers";
    for (const auto &s : broken)
        detail += "; differs: " + s;
    return {broken.empty(), detail};
}

Verdict criterion11()
{
    SystemGeometry geo;
    int mismatches = 0;
    for (int i = 0; i < 100; ++i)
    {
        RandomSource rng(1011, std::uint64_t(i));
        const PathAngles ang = sample_angles(geo, rng);
        const ChannelRealization a = make_realization(geo, ang, sample_gains(geo, rng));
        const ChannelRealization b = make_realization(geo, ang, sample_gains(geo, rng));
        for (Index n = 1; n < geo.paths(); ++n)
            if (select_paths(a, n).state.selected != select_paths(b, n).state.selected)
                ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + " differing selections over 100 angle sets x L_s = 1..5"};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"rissim acceptance criteria"};
    std::vector<int> which;
    app.add_option("--criterion", which, "criterion numbers (default: all)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);
    if (which.empty())
        for (int i = 1; i <= 11; ++i)
            which.push_back(i);

    const std::function<Verdict()> table[] = {criterion1, criterion2, criterion3,  criterion4,
                                              criterion5, criterion6, criterion7,  criterion8,
                                              criterion9, criterion10, criterion11};
    bool all = true;
    for (int c : which)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = table[c - 1]();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d: %s %s [%.1f s]\n", c, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
