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

#include "rissim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rissim
{

namespace
{

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    if (trim(s).empty())
        return out;
    std::stringstream ss(s + ",");
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (item.empty())
            throw std::invalid_argument("config: empty item in list '" + s + "'");
        out.push_back(item);
    }
    return out;
}

template <class T>
T parse_number(const std::string &key, const std::string &s)
{
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("config: cannot parse value '" + s + "' for key '" + key + "'");
    return v;
}

bool parse_bool(const std::string &key, const std::string &s)
{
    if (s == "true" || s == "1" || s == "on")
        return true;
    if (s == "false" || s == "0" || s == "off")
        return false;
    throw std::invalid_argument("config: cannot parse boolean '" + s + "' for key '" + key + "'");
}

template <class T>
std::vector<T> parse_list(const std::string &key, const std::string &s)
{
    std::vector<T> out;
    for (const auto &item : split_list(s))
        out.push_back(parse_number<T>(key, item));
    return out;
}

using Setter = std::function<void(ScenarioConfig &, const std::string &, const std::string &)>;

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> m = {
        {"nb_v", [](auto &c, auto &k, auto &v) { c.geometry.nb_v = parse_number<Index>(k, v); }},
        {"nb_h", [](auto &c, auto &k, auto &v) { c.geometry.nb_h = parse_number<Index>(k, v); }},
        {"nr_v", [](auto &c, auto &k, auto &v) { c.geometry.nr_v = parse_number<Index>(k, v); }},
        {"nr_h", [](auto &c, auto &k, auto &v) { c.geometry.nr_h = parse_number<Index>(k, v); }},
        {"l_rb", [](auto &c, auto &k, auto &v) { c.geometry.l_rb = parse_number<Index>(k, v); }},
        {"l_ru", [](auto &c, auto &k, auto &v) { c.geometry.l_ru = parse_number<Index>(k, v); }},
        {"seed", [](auto &c, auto &k, auto &v) { c.seed = parse_number<std::uint64_t>(k, v); }},
        {"realizations", [](auto &c, auto &k, auto &v) { c.realizations = parse_number<Index>(k, v); }},
        {"workers", [](auto &c, auto &k, auto &v) { c.workers = parse_number<int>(k, v); }},
        {"noise_var", [](auto &c, auto &k, auto &v) { c.noise_var = parse_number<double>(k, v); }},
        {"l_s", [](auto &c, auto &k, auto &v) { c.l_s = parse_number<Index>(k, v); }},
        {"pnr_db", [](auto &c, auto &k, auto &v) { c.pnr_db = parse_list<double>(k, v); }},
        {"dnr_db", [](auto &c, auto &k, auto &v) { c.dnr_db = parse_list<double>(k, v); }},
        {"bits", [](auto &c, auto &k, auto &v) { c.bits = parse_list<int>(k, v); }},
        {"l_s_list", [](auto &c, auto &k, auto &v) { c.l_s_list = parse_list<Index>(k, v); }},
        {"baseline_slots", [](auto &c, auto &k, auto &v) { c.baseline_slots = parse_list<Index>(k, v); }},
        {"se_bits_paths", [](auto &c, auto &k, auto &v) { c.se_bits_paths = parse_list<Index>(k, v); }},
        {"mmse_slots", [](auto &c, auto &k, auto &v) { c.mmse_slots = parse_number<Index>(k, v); }},
        {"bits_full", [](auto &c, auto &k, auto &v) { c.bits_full = parse_number<int>(k, v); }},
        {"bits_dominant", [](auto &c, auto &k, auto &v) { c.bits_dominant = parse_number<int>(k, v); }},
        {"fixed_pnr_db", [](auto &c, auto &k, auto &v) { c.fixed_pnr_db = parse_number<double>(k, v); }},
        {"fixed_dnr_db", [](auto &c, auto &k, auto &v) { c.fixed_dnr_db = parse_number<double>(k, v); }},
        {"schemes", [](auto &c, auto &, auto &v) { c.schemes = split_list(v); }},
        {"manifold.max_iters", [](auto &c, auto &k, auto &v) { c.selection.manifold.max_iters = c.update.manifold.max_iters = parse_number<int>(k, v); }},
        {"manifold.grad_tol", [](auto &c, auto &k, auto &v) { c.selection.manifold.grad_tol = c.update.manifold.grad_tol = parse_number<double>(k, v); }},
        {"manifold.obj_tol", [](auto &c, auto &k, auto &v) { c.selection.manifold.obj_tol = c.update.manifold.obj_tol = parse_number<double>(k, v); }},
        {"selection.alt_tol", [](auto &c, auto &k, auto &v) { c.selection.alt_tol = parse_number<double>(k, v); }},
        {"selection.max_alternations", [](auto &c, auto &k, auto &v) { c.selection.max_alternations = parse_number<int>(k, v); }},
        {"update.tol", [](auto &c, auto &k, auto &v) { c.update.tol = parse_number<double>(k, v); }},
        {"update.max_rounds", [](auto &c, auto &k, auto &v) { c.update.max_rounds = parse_number<int>(k, v); }},
        {"update.warm_start", [](auto &c, auto &k, auto &v) { c.update_warm_start = parse_bool(k, v); }},
        {"ao.tol", [](auto &c, auto &k, auto &v) { c.ao.tol = parse_number<double>(k, v); }},
        {"ao.max_rounds", [](auto &c, auto &k, auto &v) { c.ao.max_rounds = parse_number<int>(k, v); }},
        {"ls.max_resamples", [](auto &c, auto &k, auto &v) { c.ls_max_resamples = parse_number<int>(k, v); }},
        {"validate.q_offset", [](auto &c, auto &k, auto &v) { c.validate_q_offset = parse_number<double>(k, v); }},
    };
    return m;
}

} // namespace

ScenarioConfig parse_config(const std::string &text)
{
    ScenarioConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line))
    {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        auto it = setters().find(key);
        if (it == setters().end())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(cfg, key, value);
    }
    return cfg;
}

ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ScenarioConfig &c)
{
    auto fail = [](const std::string &key, const std::string &why) {
        throw std::invalid_argument("config key '" + key + "': " + why);
    };
    c.geometry.validate();
    const Index L = c.geometry.paths();
    if (c.realizations < 1)
        fail("realizations", "must be at least 1");
    if (c.workers < 1)
        fail("workers", "must be at least 1");
    if (!(c.noise_var > 0.0))
        fail("noise_var", "must be positive");
    if (c.l_s < 1 || c.l_s > L)
        fail("l_s", "must lie in [1, L]");
    for (Index v : c.l_s_list)
        if (v < 1 || v > L)
            fail("l_s_list", "entries must lie in [1, L]");
    for (Index v : c.se_bits_paths)
        if (v < 1 || v > L)
            fail("se_bits_paths", "entries must lie in [1, L]");
    for (Index v : c.baseline_slots)
        if (v < 1)
            fail("baseline_slots", "entries must be positive");
    if (c.mmse_slots < 1)
        fail("mmse_slots", "must be positive");
    for (int b : c.bits)
        if (b < 1 || b > 24)
            fail("bits", "entries must lie in [1, 24]");
    if (c.bits_full < 1 || c.bits_full > 24)
        fail("bits_full", "must lie in [1, 24]");
    if (c.bits_dominant < 1 || c.bits_dominant > 24)
        fail("bits_dominant", "must lie in [1, 24]");
    if (c.pnr_db.empty())
        fail("pnr_db", "must not be empty");
    if (c.dnr_db.empty())
        fail("dnr_db", "must not be empty");
    if (c.bits.empty())
        fail("bits", "must not be empty");
    if (c.l_s_list.empty())
        fail("l_s_list", "must not be empty");
    if (c.ls_max_resamples < 0)
        fail("ls.max_resamples", "must be non-negative");
}

} // namespace rissim
