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

#include "rissim/experiments.hpp"

#include "parallel.hpp"
#include "rissim/dpgi.hpp"
#include "rissim/rvq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace rissim
{

double nmse_ratio(const CVector &est, const CVector &ref)
{
    if (est.size() != ref.size())
        throw std::invalid_argument("nmse_ratio: length mismatch");
    return (est - ref).squaredNorm() / ref.squaredNorm();
}

double nmse_ratio_aligned(const CVector &est, const CVector &ref)
{
    if (est.size() != ref.size())
        throw std::invalid_argument("nmse_ratio_aligned: length mismatch");
    double err = est.squaredNorm() + ref.squaredNorm() - 2.0 * std::abs(est.dot(ref));
    return std::max(0.0, err) / ref.squaredNorm();
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string to_csv(const std::vector<MetricRecord> &records)
{
    std::ostringstream os;
    os << "scheme,sweep_var,sweep_value,metric,value,n_realizations,seed\n";
    for (const auto &r : records)
        os << r.scheme << ',' << r.sweep_var << ',' << format_number(r.sweep_value) << ',' << r.metric << ','
           << format_number(r.value) << ',' << r.n_realizations << ',' << r.seed << '\n';
    return os.str();
}

namespace
{

// Stream salts: realization i uses RandomSource(seed, i) for the channel and
// RandomSource(seed, derive_stream(i, salt)) for everything else.
enum Salt : std::uint64_t
{
    salt_codebook = 0xC0DEB00C,
    salt_dominant = 100,
    salt_whole = 200,
    salt_baseline = 300,
    salt_random_set = 400,
    salt_partial = 500,
};

RandomSource stream(const ScenarioConfig &cfg, long i, std::uint64_t salt)
{
    return RandomSource(cfg.seed, derive_stream(std::uint64_t(i), salt));
}

std::string t_name(const std::string &prefix, Index t, const std::string &suffix = "")
{
    return prefix + "_T" + std::to_string(t) + suffix;
}

struct Sample
{
    std::vector<double> v;
    long resampled = 0;
};

// Output cells of a sweep, fixed before the Monte Carlo loop starts.
class Table
{
public:
    Table(std::string sweep_var, const ScenarioConfig &cfg, const std::vector<std::string> &available)
        : var_(std::move(sweep_var)), cfg_(cfg)
    {
        std::set<std::string> avail(available.begin(), available.end());
        for (const auto &s : cfg.schemes)
            if (!avail.count(s))
            {
                std::string list;
                for (const auto &a : available)
                    list += (list.empty() ? "" : ", ") + a;
                throw std::invalid_argument("unknown scheme '" + s + "' (available: " + list + ")");
            }
        for (const auto &a : available)
            if (cfg.schemes.empty() || std::find(cfg.schemes.begin(), cfg.schemes.end(), a) != cfg.schemes.end())
                active_.insert(a);
    }

    bool wants(const std::string &scheme) const { return active_.count(scheme) > 0; }

    void add(const std::string &scheme, double value, const std::string &metric)
    {
        if (!wants(scheme))
            return;
        auto key = std::make_tuple(scheme, value, metric);
        if (index_.count(key))
            return;
        index_[key] = cells_.size();
        cells_.push_back(key);
    }

    void put(Sample &s, const std::string &scheme, double value, const std::string &metric, double x) const
    {
        auto it = index_.find(std::make_tuple(scheme, value, metric));
        if (it == index_.end())
            throw std::logic_error("Table::put: unregistered cell " + scheme + "/" + metric);
        s.v[it->second] = x;
    }

    Sample blank() const { return Sample{std::vector<double>(cells_.size(), NAN), 0}; }

    RunOutput finish(const std::vector<Sample> &samples) const
    {
        RunOutput out;
        const double n = double(samples.size());
        long resampled = 0;
        for (const auto &s : samples)
            resampled += s.resampled;
        for (std::size_t c = 0; c < cells_.size(); ++c)
        {
            double acc = 0.0;
            for (const auto &s : samples)
                acc += s.v[c];
            const auto &[scheme, value, metric] = cells_[c];
            double mean = acc / n;
            double shown = metric.rfind("nmse", 0) == 0 ? linear_to_db(mean) : mean;
            out.records.push_back({scheme, var_, value, metric, shown, Index(samples.size()), cfg_.seed});
        }
        if (resampled > 0)
            out.notes.push_back("resampled ill-conditioned LS pilot draws: " + std::to_string(resampled));
        return out;
    }

private:
    std::string var_;
    const ScenarioConfig &cfg_;
    std::set<std::string> active_;
    std::map<std::tuple<std::string, double, std::string>, std::size_t> index_;
    std::vector<std::tuple<std::string, double, std::string>> cells_;
};

class Codebooks
{
public:
    Codebooks(std::uint64_t seed) : seed_(derive_stream(seed, salt_codebook)) {}
    void need(Index dim, int bits)
    {
        auto key = std::make_pair(dim, bits);
        if (!books_.count(key))
            books_.emplace(key, generate_codebook(dim, bits, seed_));
    }
    const RvqCodebook &get(Index dim, int bits) const { return books_.at(std::make_pair(dim, bits)); }

private:
    std::uint64_t seed_;
    std::map<std::pair<Index, int>, RvqCodebook> books_;
};

struct LsDraw
{
    RandomPilotBatch batch;
    CVector y;
};

// Random pilot batch and its noisy observations; for LS the batch is redrawn while the Gram
// matrix is ill-conditioned.
LsDraw draw_random_pilots(const ChannelRealization &ch, Index t, double pe, const ScenarioConfig &cfg,
                          RandomSource &rng, bool need_ls, CVector *ls_out, long &resampled)
{
    for (int attempt = 0; attempt <= cfg.ls_max_resamples; ++attempt)
    {
        LsDraw d{random_pilot_matrix(ch, t, pe, rng), {}};
        d.y = receive_pilots(ch, d.batch, pe, cfg.noise_var, rng);
        if (!need_ls)
            return d;
        try
        {
            *ls_out = ls_estimate(d.batch.d, d.y);
            return d;
        }
        catch (const IllConditionedError &)
        {
            ++resampled;
        }
    }
    throw std::runtime_error("random pilots stayed ill-conditioned after ls.max_resamples redraws");
}

double se_of(const ChannelRealization &ch, const CVector &f, const CVector &psi, double dnr)
{
    return spectral_efficiency(std::norm(cascaded_channel(ch, psi).dot(f)), dnr);
}

double gain_of(const ChannelRealization &ch, const CVector &f, const CVector &psi)
{
    return std::norm(cascaded_channel(ch, psi).dot(f));
}

UpdateResult design(const ChannelRealization &ch, const SelectionState &state, const CVector &g_s,
                    const ScenarioConfig &cfg, const CVector &psi_sel)
{
    return alternate_update(ch, state, g_s, cfg.update, cfg.update_warm_start ? psi_sel : CVector());
}

double fixed_pnr(const ScenarioConfig &cfg, double fallback)
{
    return cfg.fixed_pnr_db.value_or(fallback);
}

std::vector<Sample> run_all(const ScenarioConfig &cfg, const std::function<Sample(long)> &fn)
{
    return detail::parallel_map<Sample>(long(cfg.realizations), cfg.workers, fn);
}

} // namespace

std::vector<std::string> scheme_names(Sweep sweep, const ScenarioConfig &cfg)
{
    const Index L = cfg.geometry.paths();
    std::vector<std::string> out;
    auto add = [&](const std::string &s) {
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    };
    switch (sweep)
    {
    case Sweep::nmse_pnr:
        add(t_name("proposed", cfg.l_s));
        add(t_name("proposed", L));
        for (Index t : cfg.baseline_slots)
        {
            if (t >= L)
                add(t_name("ls", t));
            add(t_name("mmse", t));
        }
        break;
    case Sweep::nmse_bits:
        add(t_name("proposed", cfg.l_s));
        add(t_name("proposed", L));
        add(t_name("mmse", cfg.mmse_slots));
        break;
    case Sweep::se_paths:
        for (const char *s : {"optimal", "selected", "random", "partial_random_ao"})
            add(s);
        break;
    case Sweep::se_bits:
        for (Index n : cfg.se_bits_paths)
            add(t_name("proposed", n, "_alg3"));
        add(t_name("proposed", L, "_ao"));
        add(t_name("mmse", cfg.mmse_slots, "_ao"));
        add("perfect_pgi_ao");
        break;
    case Sweep::se_dnr:
        add("perfect_pgi_ao");
        add(t_name("proposed", L, "_B" + std::to_string(cfg.bits_full) + "_ao"));
        add(t_name("perfect_dpgi", cfg.l_s, "_alg3"));
        add(t_name("proposed", cfg.l_s, "_B" + std::to_string(cfg.bits_dominant) + "_alg3"));
        add(t_name("mmse", cfg.mmse_slots, "_B" + std::to_string(cfg.bits_full) + "_ao"));
        break;
    }
    return out;
}

RunOutput run_nmse_vs_pnr(const ScenarioConfig &cfg)
{
    validate_config(cfg);
    const Index L = cfg.geometry.paths();
    Table table("pnr_db", cfg, scheme_names(Sweep::nmse_pnr, cfg));
    const std::string dom = t_name("proposed", cfg.l_s), whole = t_name("proposed", L);
    for (double pnr : cfg.pnr_db)
    {
        table.add(dom, pnr, "nmse_db");
        table.add(whole, pnr, "nmse_db");
        for (Index t : cfg.baseline_slots)
        {
            if (t >= L)
                table.add(t_name("ls", t), pnr, "nmse_db");
            table.add(t_name("mmse", t), pnr, "nmse_db");
        }
    }

    auto samples = run_all(cfg, [&](long i) {
        Sample s = table.blank();
        RandomSource rng(cfg.seed, std::uint64_t(i));
        const ChannelRealization ch = sample_realization(cfg.geometry, rng);
        SelectionState dom_state = SelectionState::all(L);
        if (table.wants(dom) && cfg.l_s < L)
            dom_state = select_paths(ch, cfg.l_s, cfg.selection).state;
        const SelectionState all = SelectionState::all(L);

        for (std::size_t k = 0; k < cfg.pnr_db.size(); ++k)
        {
            const double pnr = cfg.pnr_db[k];
            const double pe = db_to_linear(pnr) * cfg.noise_var;
            for (auto [name, state, salt] : {std::make_tuple(dom, static_cast<const SelectionState *>(&dom_state), salt_dominant),
                                             std::make_tuple(whole, &all, salt_whole)})
            {
                if (!table.wants(name))
                    continue;
                RandomSource noise = stream(cfg, i, salt + k);
                CVector g_hat = estimate_dpgi(run_pilot_phase(ch, *state, pe, cfg.noise_var, noise), pe, cfg.geometry);
                table.put(s, name, pnr, "nmse_db", nmse_ratio(g_hat, select_entries(ch.g, state->selected)));
            }
            for (std::size_t b = 0; b < cfg.baseline_slots.size(); ++b)
            {
                const Index t = cfg.baseline_slots[b];
                const std::string ls = t_name("ls", t), mm = t_name("mmse", t);
                const bool want_ls = t >= L && table.wants(ls);
                if (!want_ls && !table.wants(mm))
                    continue;
                RandomSource noise = stream(cfg, i, salt_baseline + 16 * k + b);
                CVector g_ls;
                LsDraw d = draw_random_pilots(ch, t, pe, cfg, noise, want_ls, &g_ls, s.resampled);
                if (want_ls)
                    table.put(s, ls, pnr, "nmse_db", nmse_ratio(g_ls, ch.g));
                if (table.wants(mm))
                    table.put(s, mm, pnr, "nmse_db", nmse_ratio(mmse_estimate(d.batch.d, d.y, cfg.noise_var), ch.g));
            }
        }
        return s;
    });
    return table.finish(samples);
}

RunOutput run_nmse_vs_bits(const ScenarioConfig &cfg)
{
    validate_config(cfg);
    const Index L = cfg.geometry.paths();
    Table table("bits", cfg, scheme_names(Sweep::nmse_bits, cfg));
    const std::string dom = t_name("proposed", cfg.l_s), whole = t_name("proposed", L),
                      mm = t_name("mmse", cfg.mmse_slots);
    Codebooks books(cfg.seed);
    for (int b : cfg.bits)
    {
        for (const auto &[name, dim] : {std::make_pair(dom, cfg.l_s), std::make_pair(whole, L),
                                        std::make_pair(mm, cfg.mmse_slots)})
        {
            if (!table.wants(name))
                continue;
            table.add(name, b, "nmse_db");
            table.add(name, b, "nmse_aligned_db");
            books.need(dim, b);
        }
    }
    const double pe = db_to_linear(fixed_pnr(cfg, 0.0)) * cfg.noise_var;

    auto samples = run_all(cfg, [&](long i) {
        Sample s = table.blank();
        RandomSource rng(cfg.seed, std::uint64_t(i));
        const ChannelRealization ch = sample_realization(cfg.geometry, rng);
        const SelectionState all = SelectionState::all(L);
        SelectionState dom_state = all;
        if (table.wants(dom) && cfg.l_s < L)
            dom_state = select_paths(ch, cfg.l_s, cfg.selection).state;

        for (auto [name, state, salt] : {std::make_tuple(dom, static_cast<const SelectionState *>(&dom_state), salt_dominant),
                                         std::make_tuple(whole, &all, salt_whole)})
        {
            if (!table.wants(name))
                continue;
            RandomSource noise = stream(cfg, i, salt);
            const CVector g_hat = estimate_dpgi(run_pilot_phase(ch, *state, pe, cfg.noise_var, noise), pe, cfg.geometry);
            const CVector ref = select_entries(ch.g, state->selected);
            for (int b : cfg.bits)
            {
                DpgiEstimate e = feedback_dpgi(g_hat, books.get(g_hat.size(), b));
                table.put(s, name, b, "nmse_db", nmse_ratio(e.g_tilde, ref));
                table.put(s, name, b, "nmse_aligned_db", nmse_ratio_aligned(e.g_tilde, ref));
            }
        }
        if (table.wants(mm))
        {
            RandomSource noise = stream(cfg, i, salt_baseline);
            LsDraw d = draw_random_pilots(ch, cfg.mmse_slots, pe, cfg, noise, false, nullptr, s.resampled);
            for (int b : cfg.bits)
            {
                CVector y_q = quantize(d.y, books.get(cfg.mmse_slots, b)).reconstructed;
                CVector g_hat = mmse_estimate(d.batch.d, y_q, cfg.noise_var);
                table.put(s, mm, b, "nmse_db", nmse_ratio(g_hat, ch.g));
                table.put(s, mm, b, "nmse_aligned_db", nmse_ratio_aligned(g_hat, ch.g));
            }
        }
        return s;
    });
    return table.finish(samples);
}

RunOutput run_se_vs_paths(const ScenarioConfig &cfg)
{
    validate_config(cfg);
    const Index L = cfg.geometry.paths();
    Table table("l_s", cfg, scheme_names(Sweep::se_paths, cfg));
    for (Index n : cfg.l_s_list)
        for (const char *name : {"optimal", "selected", "random", "partial_random_ao"})
            table.add(name, double(n), "se_bps_hz");
    const double dnr = db_to_linear(cfg.fixed_dnr_db);
    const Index l_min = *std::min_element(cfg.l_s_list.begin(), cfg.l_s_list.end());

    auto samples = run_all(cfg, [&](long i) {
        Sample s = table.blank();
        RandomSource rng(cfg.seed, std::uint64_t(i));
        const ChannelRealization ch = sample_realization(cfg.geometry, rng);
        const SelectionResult greedy = select_paths(ch, l_min, cfg.selection);
        for (std::size_t k = 0; k < cfg.l_s_list.size(); ++k)
        {
            const Index n = cfg.l_s_list[k];
            const double x = double(n);
            const SelectionStage &stage = greedy.stages[std::size_t(L - n)];
            const CVector g_s = select_entries(ch.g, stage.state.selected);
            if (table.wants("selected"))
            {
                UpdateResult u = design(ch, stage.state, g_s, cfg, stage.psi);
                table.put(s, "selected", x, "se_bps_hz", se_of(ch, u.f_t, u.psi, dnr));
            }
            if (table.wants("optimal"))
            {
                ExhaustiveResult ex = exhaustive_path_selection(ch, n, cfg.selection);
                UpdateResult u = design(ch, ex.state, select_entries(ch.g, ex.state.selected), cfg, ex.psi);
                table.put(s, "optimal", x, "se_bps_hz", se_of(ch, u.f_t, u.psi, dnr));
            }
            if (table.wants("random"))
            {
                RandomSource r = stream(cfg, i, salt_random_set + k);
                SelectionState rs = random_path_selection(L, n, r);
                UpdateResult u = design(ch, rs, select_entries(ch.g, rs.selected), cfg, CVector::Ones(cfg.geometry.n_r()));
                table.put(s, "random", x, "se_bps_hz", se_of(ch, u.f_t, u.psi, dnr));
            }
            if (table.wants("partial_random_ao"))
            {
                RandomSource r = stream(cfg, i, salt_partial + k);
                CVector g = partial_random_pgi(g_s, stage.state.selected, L, r);
                AoResult ao = ao_beamforming(build_h_matrix(ch, g), cfg.ao);
                table.put(s, "partial_random_ao", x, "se_bps_hz", se_of(ch, ao.f, ao.psi, dnr));
            }
        }
        return s;
    });
    return table.finish(samples);
}

RunOutput run_se_vs_bits(const ScenarioConfig &cfg)
{
    validate_config(cfg);
    const Index L = cfg.geometry.paths();
    Table table("bits", cfg, scheme_names(Sweep::se_bits, cfg));
    Codebooks books(cfg.seed);
    const std::string whole = t_name("proposed", L, "_ao"), mm = t_name("mmse", cfg.mmse_slots, "_ao");
    for (int b : cfg.bits)
    {
        for (Index n : cfg.se_bits_paths)
            if (table.wants(t_name("proposed", n, "_alg3")))
            {
                table.add(t_name("proposed", n, "_alg3"), b, "se_bps_hz");
                books.need(n, b);
            }
        if (table.wants(whole))
        {
            table.add(whole, b, "se_bps_hz");
            books.need(L, b);
        }
        if (table.wants(mm))
        {
            table.add(mm, b, "se_bps_hz");
            books.need(cfg.mmse_slots, b);
        }
        table.add("perfect_pgi_ao", b, "se_bps_hz");
    }
    const double pe = db_to_linear(fixed_pnr(cfg, -15.0)) * cfg.noise_var;
    const double dnr = db_to_linear(cfg.fixed_dnr_db);
    const Index l_min = *std::min_element(cfg.se_bits_paths.begin(), cfg.se_bits_paths.end());

    auto samples = run_all(cfg, [&](long i) {
        Sample s = table.blank();
        RandomSource rng(cfg.seed, std::uint64_t(i));
        const ChannelRealization ch = sample_realization(cfg.geometry, rng);
        const SelectionResult greedy = select_paths(ch, l_min, cfg.selection);
        for (std::size_t k = 0; k < cfg.se_bits_paths.size(); ++k)
        {
            const Index n = cfg.se_bits_paths[k];
            const std::string name = t_name("proposed", n, "_alg3");
            if (!table.wants(name))
                continue;
            const SelectionStage &stage = greedy.stages[std::size_t(L - n)];
            RandomSource noise = stream(cfg, i, salt_dominant + k);
            const CVector g_hat = estimate_dpgi(run_pilot_phase(ch, stage.state, pe, cfg.noise_var, noise), pe, cfg.geometry);
            for (int b : cfg.bits)
            {
                DpgiEstimate e = feedback_dpgi(g_hat, books.get(n, b));
                UpdateResult u = design(ch, stage.state, e.g_tilde, cfg, stage.psi);
                table.put(s, name, b, "se_bps_hz", se_of(ch, u.f_t, u.psi, dnr));
            }
        }
        if (table.wants(whole))
        {
            RandomSource noise = stream(cfg, i, salt_whole);
            const SelectionState all = SelectionState::all(L);
            const CVector g_hat = estimate_dpgi(run_pilot_phase(ch, all, pe, cfg.noise_var, noise), pe, cfg.geometry);
            for (int b : cfg.bits)
            {
                DpgiEstimate e = feedback_dpgi(g_hat, books.get(L, b));
                AoResult ao = ao_beamforming(build_h_matrix(ch, e.g_tilde), cfg.ao);
                table.put(s, whole, b, "se_bps_hz", se_of(ch, ao.f, ao.psi, dnr));
            }
        }
        if (table.wants(mm))
        {
            RandomSource noise = stream(cfg, i, salt_baseline);
            LsDraw d = draw_random_pilots(ch, cfg.mmse_slots, pe, cfg, noise, false, nullptr, s.resampled);
            for (int b : cfg.bits)
            {
                CVector y_q = quantize(d.y, books.get(cfg.mmse_slots, b)).reconstructed;
                AoResult ao = ao_beamforming(build_h_matrix(ch, mmse_estimate(d.batch.d, y_q, cfg.noise_var)), cfg.ao);
                table.put(s, mm, b, "se_bps_hz", se_of(ch, ao.f, ao.psi, dnr));
            }
        }
        if (table.wants("perfect_pgi_ao"))
        {
            AoResult ao = ao_beamforming(build_h_matrix(ch, ch.g), cfg.ao);
            const double se = se_of(ch, ao.f, ao.psi, dnr);
            for (int b : cfg.bits)
                table.put(s, "perfect_pgi_ao", b, "se_bps_hz", se);
        }
        return s;
    });
    return table.finish(samples);
}

RunOutput run_se_vs_dnr(const ScenarioConfig &cfg)
{
    validate_config(cfg);
    const Index L = cfg.geometry.paths();
    const auto names = scheme_names(Sweep::se_dnr, cfg);
    // names: perfect AO, whole-gain feedback AO, perfect dominant, dominant feedback, MMSE
    Table table("dnr_db", cfg, names);
    for (double d : cfg.dnr_db)
        for (const auto &n : names)
            table.add(n, d, "se_bps_hz");
    Codebooks books(cfg.seed);
    if (table.wants(names[1]))
        books.need(L, cfg.bits_full);
    if (table.wants(names[3]))
        books.need(cfg.l_s, cfg.bits_dominant);
    if (table.wants(names[4]))
        books.need(cfg.mmse_slots, cfg.bits_full);
    const double pe = db_to_linear(fixed_pnr(cfg, -15.0)) * cfg.noise_var;

    auto samples = run_all(cfg, [&](long i) {
        Sample s = table.blank();
        RandomSource rng(cfg.seed, std::uint64_t(i));
        const ChannelRealization ch = sample_realization(cfg.geometry, rng);
        std::vector<double> gain(names.size(), NAN);

        if (table.wants(names[0]))
        {
            AoResult ao = ao_beamforming(build_h_matrix(ch, ch.g), cfg.ao);
            gain[0] = gain_of(ch, ao.f, ao.psi);
        }
        if (table.wants(names[1]))
        {
            RandomSource noise = stream(cfg, i, salt_whole);
            const CVector g_hat = estimate_dpgi(run_pilot_phase(ch, SelectionState::all(L), pe, cfg.noise_var, noise), pe, cfg.geometry);
            DpgiEstimate e = feedback_dpgi(g_hat, books.get(L, cfg.bits_full));
            AoResult ao = ao_beamforming(build_h_matrix(ch, e.g_tilde), cfg.ao);
            gain[1] = gain_of(ch, ao.f, ao.psi);
        }
        if (table.wants(names[2]) || table.wants(names[3]))
        {
            const SelectionResult sel = select_paths(ch, cfg.l_s, cfg.selection);
            if (table.wants(names[2]))
            {
                UpdateResult u = design(ch, sel.state, select_entries(ch.g, sel.state.selected), cfg, sel.psi);
                gain[2] = gain_of(ch, u.f_t, u.psi);
            }
            if (table.wants(names[3]))
            {
                RandomSource noise = stream(cfg, i, salt_dominant);
                const CVector g_hat = estimate_dpgi(run_pilot_phase(ch, sel.state, pe, cfg.noise_var, noise), pe, cfg.geometry);
                DpgiEstimate e = feedback_dpgi(g_hat, books.get(cfg.l_s, cfg.bits_dominant));
                UpdateResult u = design(ch, sel.state, e.g_tilde, cfg, sel.psi);
                gain[3] = gain_of(ch, u.f_t, u.psi);
            }
        }
        if (table.wants(names[4]))
        {
            RandomSource noise = stream(cfg, i, salt_baseline);
            LsDraw d = draw_random_pilots(ch, cfg.mmse_slots, pe, cfg, noise, false, nullptr, s.resampled);
            CVector y_q = quantize(d.y, books.get(cfg.mmse_slots, cfg.bits_full)).reconstructed;
            AoResult ao = ao_beamforming(build_h_matrix(ch, mmse_estimate(d.batch.d, y_q, cfg.noise_var)), cfg.ao);
            gain[4] = gain_of(ch, ao.f, ao.psi);
        }
        for (std::size_t n = 0; n < names.size(); ++n)
            if (table.wants(names[n]))
                for (double d : cfg.dnr_db)
                    table.put(s, names[n], d, "se_bps_hz", spectral_efficiency(gain[n], db_to_linear(d)));
        return s;
    });
    return table.finish(samples);
}

RunOutput run_sweep(Sweep sweep, const ScenarioConfig &cfg)
{
    switch (sweep)
    {
    case Sweep::nmse_pnr:
        return run_nmse_vs_pnr(cfg);
    case Sweep::nmse_bits:
        return run_nmse_vs_bits(cfg);
    case Sweep::se_paths:
        return run_se_vs_paths(cfg);
    case Sweep::se_bits:
        return run_se_vs_bits(cfg);
    case Sweep::se_dnr:
        return run_se_vs_dnr(cfg);
    }
    throw std::invalid_argument("run_sweep: unknown sweep");
}

} // namespace rissim
