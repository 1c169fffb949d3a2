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

#include "oracles.hpp"

#include "rissim/selection.hpp"

#include <doctest.h>

#include <set>

using namespace rissim;

namespace
{
SystemGeometry geometry(Index l_rb, Index l_ru, Index nb_side = 2, Index nr_side = 4)
{
    SystemGeometry g;
    g.nb_v = g.nb_h = nb_side;
    g.nr_v = g.nr_h = nr_side;
    g.l_rb = l_rb;
    g.l_ru = l_ru;
    return g;
}

struct Instance
{
    ChannelRealization ch;
    SelectionState state;
    CVector psi;
    CMatrix a, a_s, a_r, v;
};

Instance instance(const SystemGeometry &geo, std::vector<Index> selected, RandomSource &rng)
{
    Instance x{sample_realization(geo, rng), SelectionState::from_selected(geo.paths(), selected), {}, {}, {}, {}, {}};
    x.psi = oracle::random_phases(rng, geo.n_r());
    x.a = path_matrix(x.ch, x.psi);
    x.a_s = select_columns(x.a, x.state.selected);
    x.a_r = select_columns(x.a, x.state.removed);
    x.v = oracle::random_unit_matrix(rng, geo.n_b(), Index(selected.size()));
    return x;
}

std::vector<CMatrix> pick(const std::vector<CMatrix> &all, const std::vector<Index> &idx)
{
    std::vector<CMatrix> out;
    for (Index l : idx)
        out.push_back(all[std::size_t(l)]);
    return out;
}
} // namespace

TEST_CASE("moment constant")
{
    CHECK(moment_q(2, 3) == doctest::Approx(1.6));
    CHECK(moment_q(1, 4) == doctest::Approx(2.0));
    CHECK(moment_q(5, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(moment_q(1, 1), std::invalid_argument);
}

TEST_CASE("selection state partitions the paths")
{
    SelectionState s = SelectionState::from_selected(6, {4, 1});
    CHECK(s.selected == std::vector<Index>{1, 4});
    CHECK(s.removed == std::vector<Index>{0, 2, 3, 5});
    CHECK_THROWS_AS(SelectionState::from_selected(6, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SelectionState::from_selected(6, {6}), std::invalid_argument);
}

TEST_CASE("closed form equals the exact coupled moment when one side has a single path")
{
    RandomSource rng(31);
    for (auto [l_rb, l_ru] : {std::pair<Index, Index>{1, 3}, {3, 1}, {1, 2}})
    {
        SystemGeometry geo = geometry(l_rb, l_ru);
        for (std::vector<Index> sel : {std::vector<Index>{0, 2}, {1}, {0, 1, 2}})
        {
            if (sel.back() >= geo.paths())
                continue;
            Instance x = instance(geo, sel, rng);
            double exact = oracle::coupled_expectation(geo, x.a, x.v, x.state.selected);
            double closed = lemma1_expectation(x.a_s, x.a_r, x.v, moment_q(l_rb, l_ru));
            CHECK(closed == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("closed form departs from the exact coupled moment when both sides have several paths")
{
    // Q averages pairwise moments of 1 and 2, and pairs sharing p with one path and q with another
    // are dropped, so the closed form is an approximation here.
    RandomSource rng(32);
    SystemGeometry geo = geometry(2, 3);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
    {
        Instance x = instance(geo, {0, 2, 3, 5}, rng);
        double exact = oracle::coupled_expectation(geo, x.a, x.v, x.state.selected);
        double closed = lemma1_expectation(x.a_s, x.a_r, x.v, moment_q(2, 3));
        worst = std::max(worst, std::abs(closed - exact) / exact);
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("J_act reproduces the closed form and its top eigenvector is optimal")
{
    RandomSource rng(33);
    for (int i = 0; i < 10; ++i)
    {
        Instance x = instance(geometry(2, 3), {0, 3, 4}, rng);
        const double q = moment_q(2, 3);
        CMatrix j = build_j_act(x.a_s, x.a_r, q);
        CHECK(is_hermitian(j));
        CVector vv = vec(x.v);
        CHECK(vv.dot(j * vv).real() == doctest::Approx(lemma1_expectation(x.a_s, x.a_r, x.v, q)).epsilon(1e-9));

        ActiveBeamformer best = optimal_v(j, x.a_s.rows());
        CHECK(best.v.norm() == doctest::Approx(1.0));
        CHECK(lemma1_expectation(x.a_s, x.a_r, best.v, q) == doctest::Approx(best.objective).epsilon(1e-9));
        for (int k = 0; k < 50; ++k)
        {
            CMatrix v = oracle::random_unit_matrix(rng, x.a_s.rows(), x.a_s.cols());
            CHECK(lemma1_expectation(x.a_s, x.a_r, v, q) <= best.objective * (1 + 1e-12));
        }
    }
}

TEST_CASE("J_pass reproduces the closed form in dense and factored form")
{
    RandomSource rng(34);
    for (SystemGeometry geo : {geometry(2, 3), geometry(1, 3), geometry(3, 2, 2, 3)})
    {
        for (int i = 0; i < 5; ++i)
        {
            Instance x = instance(geo, {0, 2}, rng);
            const double q = moment_q(geo.l_rb, geo.l_ru);
            CMatrix j = build_j_pass(pick(x.ch.couplings, x.state.selected), pick(x.ch.couplings, x.state.removed), x.v, q);
            CHECK(is_hermitian(j));
            CVector psi = oracle::random_phases(rng, geo.n_r());
            CMatrix a = path_matrix(x.ch, psi);
            double closed = lemma1_expectation(select_columns(a, x.state.selected), select_columns(a, x.state.removed), x.v, q);
            CHECK(psi.dot(j * psi).real() == doctest::Approx(closed).epsilon(1e-9));

            HermitianForm f = j_pass_form(x.ch, x.state, x.v, q);
            CHECK(oracle::rel_diff(f.dense(), j) < 1e-9);
        }
    }
}

TEST_CASE("single-path contribution equals the closed form")
{
    RandomSource rng(35);
    Instance x = instance(geometry(2, 3), {4}, rng);
    const double q = moment_q(2, 3);
    CHECK(path_contribution(0, x.a_s, x.a_r, x.v, q) ==
          doctest::Approx(lemma1_expectation(x.a_s, x.a_r, x.v, q)).epsilon(1e-12));
}

TEST_CASE("alternation for a fixed set never decreases the objective")
{
    RandomSource rng(36);
    SystemGeometry geo = geometry(2, 3, 2, 6);
    for (int i = 0; i < 5; ++i)
    {
        ChannelRealization ch = sample_realization(geo, rng);
        FixedSetResult r = optimize_fixed_set(ch, SelectionState::from_selected(6, {0, 1, 4}), CVector::Ones(geo.n_r()));
        for (std::size_t k = 1; k < r.trace.size(); ++k)
            CHECK(r.trace[k] >= r.trace[k - 1] * (1 - 1e-9));
        CHECK(r.v.norm() == doctest::Approx(1.0));
        CMatrix a = path_matrix(ch, r.psi);
        CHECK(r.objective == doctest::Approx(lemma1_expectation(select_columns(a, {0, 1, 4}),
                                                                select_columns(a, {2, 3, 5}), r.v, moment_q(2, 3)))
                                 .epsilon(1e-9));
    }
}

TEST_CASE("reduced active step matches the full eigenproblem")
{
    // The alternation solves for V inside the span of the BS steering vectors; the first V step
    // must equal the full-size eigenvector objective.
    RandomSource rng(37);
    SystemGeometry geo = geometry(2, 3, 3, 4);
    for (int i = 0; i < 5; ++i)
    {
        ChannelRealization ch = sample_realization(geo, rng);
        SelectionState s = SelectionState::from_selected(6, {1, 2, 5});
        SelectionOptions opts;
        opts.max_alternations = 1;
        FixedSetResult r = optimize_fixed_set(ch, s, CVector::Ones(geo.n_r()), opts);
        CMatrix a = path_matrix(ch, CVector::Ones(geo.n_r()));
        ActiveBeamformer full = optimal_v(build_j_act(select_columns(a, s.selected), select_columns(a, s.removed), 1.6), geo.n_b());
        CHECK(r.trace.front() == doctest::Approx(full.objective).epsilon(1e-9));
    }
}

TEST_CASE("greedy selection shape and stages")
{
    RandomSource rng(38);
    SystemGeometry geo = geometry(2, 3, 2, 6);
    ChannelRealization ch = sample_realization(geo, rng);
    SelectionResult r = select_paths(ch, 3);
    CHECK(r.state.selected.size() == 3);
    CHECK(r.state.removed.size() == 3);
    CHECK(r.stages.size() == 4);
    for (std::size_t k = 0; k < r.stages.size(); ++k)
        CHECK(r.stages[k].state.selected.size() == 6 - k);
    std::set<Index> all(r.state.selected.begin(), r.state.selected.end());
    all.insert(r.state.removed.begin(), r.state.removed.end());
    CHECK(all.size() == 6);
    CHECK((r.psi.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);

    SelectionResult none = select_paths(ch, 6);
    CHECK(none.state.selected.size() == 6);
    CHECK(none.stages.size() == 1);
    CHECK_THROWS_AS(select_paths(ch, 0), std::invalid_argument);
    CHECK_THROWS_AS(select_paths(ch, 7), std::invalid_argument);
}

TEST_CASE("greedy selection ignores the path gains")
{
    RandomSource rng(39);
    SystemGeometry geo = geometry(2, 3, 2, 6);
    PathAngles angles = sample_angles(geo, rng);
    ChannelRealization a = make_realization(geo, angles, sample_gains(geo, rng));
    ChannelRealization b = make_realization(geo, angles, sample_gains(geo, rng));
    SelectionResult ra = select_paths(a, 2), rb = select_paths(b, 2);
    CHECK(ra.state.selected == rb.state.selected);
    CHECK(ra.psi == rb.psi);
}

TEST_CASE("single path geometry")
{
    RandomSource rng(40);
    ChannelRealization ch = sample_realization(geometry(1, 1), rng);
    SelectionResult r = select_paths(ch, 1);
    CHECK(r.state.selected == std::vector<Index>{0});
    // 4 |a^H v|^2 with |a| = path scale at the co-phased optimum
    CHECK(r.objective == doctest::Approx(4.0 * std::pow(ch.geometry.path_scale(), 2)).epsilon(1e-6));
}

TEST_CASE("exhaustive search dominates every subset it scans")
{
    RandomSource rng(41);
    SystemGeometry geo = geometry(2, 3, 2, 4);
    ChannelRealization ch = sample_realization(geo, rng);
    ExhaustiveResult ex = exhaustive_path_selection(ch, 2);
    CHECK(ex.subsets == 15);
    SelectionResult greedy = select_paths(ch, 2);
    FixedSetResult same = optimize_fixed_set(ch, greedy.state, CVector::Ones(geo.n_r()));
    CHECK(ex.objective >= same.objective * (1 - 1e-12));

    SystemGeometry big = geometry(4, 5, 1, 2);
    ChannelRealization cb = sample_realization(big, rng);
    CHECK_THROWS_AS(exhaustive_path_selection(cb, 10), std::invalid_argument);
}

TEST_CASE("random selection is uniform over subsets")
{
    RandomSource rng(42);
    std::vector<int> counts(6, 0);
    for (int i = 0; i < 30000; ++i)
    {
        SelectionState s = random_path_selection(6, 2, rng);
        REQUIRE(s.selected.size() == 2);
        CHECK(s.selected[0] < s.selected[1]);
        for (Index l : s.selected)
            ++counts[std::size_t(l)];
    }
    for (int c : counts)
        CHECK(std::abs(c - 10000) < 400);
}
