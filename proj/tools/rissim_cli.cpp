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
#include "rissim/validation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace
{

struct Common
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<long> realizations;
    std::optional<int> workers;
    std::string out;
};

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--config", c.config, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--realizations", c.realizations, "channel realizations per point")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "CSV output path (default: stdout)");
}

rissim::ScenarioConfig resolve(const Common &c)
{
    rissim::ScenarioConfig cfg = c.config.empty() ? rissim::ScenarioConfig{} : rissim::load_config(c.config);
    if (c.seed)
        cfg.seed = *c.seed;
    if (c.realizations)
        cfg.realizations = *c.realizations;
    if (c.workers)
        cfg.workers = *c.workers;
    rissim::validate_config(cfg);
    return cfg;
}

void emit(const std::string &path, const std::string &csv)
{
    if (path.empty())
    {
        std::cout << csv;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << csv;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"rissim: RIS-assisted mmWave FDD downlink simulator"};
    app.require_subcommand(1);

    const std::pair<const char *, rissim::Sweep> sweeps[] = {
        {"nmse-pnr", rissim::Sweep::nmse_pnr}, {"nmse-bits", rissim::Sweep::nmse_bits},
        {"se-paths", rissim::Sweep::se_paths}, {"se-bits", rissim::Sweep::se_bits},
        {"se-dnr", rissim::Sweep::se_dnr}};
    Common common;
    std::vector<std::pair<CLI::App *, rissim::Sweep>> cmds;
    for (const auto &[name, sweep] : sweeps)
    {
        CLI::App *cmd = app.add_subcommand(name, std::string("run the ") + name + " sweep");
        add_common(cmd, common);
        cmds.emplace_back(cmd, sweep);
    }
    CLI::App *validate = app.add_subcommand("validate", "analytic and Monte Carlo self-checks");
    add_common(validate, common);

    CLI11_PARSE(app, argc, argv);

    try
    {
        const rissim::ScenarioConfig cfg = resolve(common);
        if (validate->parsed())
        {
            const rissim::ValidationReport rep = rissim::run_validation(cfg);
            emit(common.out, rissim::to_csv(rep));
            for (const auto &c : rep.checks)
                if (c.status == "fail")
                    std::cerr << "validation failed: " << c.name << " = " << c.measured << " > " << c.threshold << '\n';
            return rep.passed() ? 0 : 1;
        }
        for (const auto &[cmd, sweep] : cmds)
        {
            if (!cmd->parsed())
                continue;
            const rissim::RunOutput out = rissim::run_sweep(sweep, cfg);
            for (const auto &n : out.notes)
                std::cerr << "note: " << n << '\n';
            emit(common.out, rissim::to_csv(out.records));
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
