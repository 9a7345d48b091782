// Copyright (C) 2026 The ddmod authors
// SPDX-License-Identifier: Apache-2.0
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

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ddmod::cli
{
namespace
{
std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        out.push_back(trim(item));
    return out;
}

template <class T> std::optional<T> parse_number(const std::string &s)
{
    T value{};
    const char *first = s.data();
    const char *last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        return std::nullopt;
    if constexpr (std::is_floating_point_v<T>)
        if (!std::isfinite(value))
            return std::nullopt;
    return value;
}

} // namespace

ConfigError::ConfigError(std::string key, const std::string &message)
    : std::runtime_error(message), key_(std::move(key))
{
}

Section::Section(std::string name, std::map<std::string, std::string> values)
    : name_(std::move(name)), values_(std::move(values))
{
}

bool Section::has(const std::string &key) const
{
    return values_.count(key) != 0;
}

const std::string *Section::raw(const std::string &key)
{
    used_.insert(key);
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

std::string Section::get_string(const std::string &key, const std::string &fallback)
{
    const std::string *v = raw(key);
    return v ? *v : fallback;
}

int Section::get_int(const std::string &key, int fallback, int lo, int hi)
{
    const std::string *v = raw(key);
    int value = fallback;
    if (v)
    {
        const auto parsed = parse_number<int>(*v);
        if (!parsed)
            throw ConfigError(qualified(key), "expected an integer, got '" + *v + "'");
        value = *parsed;
    }
    if (value < lo || value > hi)
        throw ConfigError(qualified(key),
                          "value " + std::to_string(value) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return value;
}

double Section::get_double(const std::string &key, double fallback)
{
    const std::string *v = raw(key);
    if (!v)
        return fallback;
    const auto parsed = parse_number<double>(*v);
    if (!parsed)
        throw ConfigError(qualified(key), "expected a finite number, got '" + *v + "'");
    return *parsed;
}

double Section::get_positive(const std::string &key, double fallback)
{
    const double value = get_double(key, fallback);
    if (!(value > 0.0))
        throw ConfigError(qualified(key), "must be positive");
    return value;
}

std::uint64_t Section::get_u64(const std::string &key, std::uint64_t fallback)
{
    const std::string *v = raw(key);
    if (!v)
        return fallback;
    const auto parsed = parse_number<std::uint64_t>(*v);
    if (!parsed)
        throw ConfigError(qualified(key), "expected an unsigned 64-bit integer, got '" + *v + "'");
    return *parsed;
}

std::vector<double> Section::get_doubles(const std::string &key, const std::vector<double> &fallback)
{
    const std::string *v = raw(key);
    if (!v)
        return fallback;
    std::vector<double> out;
    for (const auto &item : split_list(*v))
    {
        const auto parsed = parse_number<double>(item);
        if (!parsed)
            throw ConfigError(qualified(key), "expected a comma-separated list of numbers, got '" + *v + "'");
        out.push_back(*parsed);
    }
    if (out.empty())
        throw ConfigError(qualified(key), "empty list");
    return out;
}

std::vector<int> Section::get_ints(const std::string &key, const std::vector<int> &fallback, int lo, int hi)
{
    const std::string *v = raw(key);
    std::vector<int> out = fallback;
    if (v)
    {
        out.clear();
        for (const auto &item : split_list(*v))
        {
            const auto parsed = parse_number<int>(item);
            if (!parsed)
                throw ConfigError(qualified(key), "expected a comma-separated list of integers, got '" + *v + "'");
            out.push_back(*parsed);
        }
    }
    if (out.empty())
        throw ConfigError(qualified(key), "empty list");
    for (int value : out)
        if (value < lo || value > hi)
            throw ConfigError(qualified(key), "entry " + std::to_string(value) + " outside [" + std::to_string(lo) + ", " +
                                                  std::to_string(hi) + "]");
    return out;
}

void Section::reject_unused() const
{
    for (const auto &[key, value] : values_)
        if (!used_.count(key))
            throw ConfigError(qualified(key), "unknown key");
}

const std::vector<std::string> &experiment_names()
{
    static const std::vector<std::string> names{"zak-check", "basis-gram",   "modulate-compare", "channel-oracle",
                                                "se",        "interference", "ofdm-compare",     "avionics"};
    return names;
}

ExperimentConfig parse_config_text(const std::string &text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try
    {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        std::string msg = e.message();
        if (e.line() > 0)
            msg += " at line " + std::to_string(e.line());
        throw ConfigError("", msg);
    }

    std::map<std::string, std::map<std::string, std::string>> sections;
    for (const auto &[name, node] : tree)
    {
        if (node.empty())
            throw ConfigError(name, "key outside a section");
        auto &dst = sections[name];
        for (const auto &[key, child] : node)
            dst[key] = trim(child.data());
    }

    ExperimentConfig cfg;
    if (!sections.count("experiment"))
        throw ConfigError("experiment", "missing section");
    Section exp("experiment", sections["experiment"]);
    cfg.experiment = exp.get_string("name", "");
    const auto &names = experiment_names();
    if (cfg.experiment.empty())
        throw ConfigError("experiment.name", "missing");
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
        throw ConfigError("experiment.name", "unknown experiment '" + cfg.experiment + "'");
    cfg.seed = exp.get_u64("seed", 1);
    exp.reject_unused();

    for (const auto &[name, values] : sections)
        if (name != "experiment" && name != "grid" && name != cfg.experiment)
            throw ConfigError(name, "unknown section");

    Section grid("grid", sections.count("grid") ? sections["grid"] : std::map<std::string, std::string>{});
    if (grid.has("T") && grid.has("delta_f"))
        throw ConfigError("grid.delta_f", "give either T or delta_f, not both");
    for (const char *key : {"M", "N"})
        if (!grid.has(key))
            throw ConfigError(std::string("grid.") + key, "missing");
    const int M = grid.get_int("M", 0, 1, 1 << 20);
    const int N = grid.get_int("N", 0, 1, 1 << 20);
    if (grid.has("delta_f"))
        cfg.grid = DDGridParams::from_delta_f(grid.get_positive("delta_f", 1.0), M, N);
    else
        cfg.grid = DDGridParams(grid.get_positive("T", 1.0), M, N);
    grid.reject_unused();

    if (sections.count(cfg.experiment))
        cfg.options = Section(cfg.experiment, sections[cfg.experiment]);
    else
        cfg.options = Section(cfg.experiment, {});
    return cfg;
}

ExperimentConfig parse_config_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("", "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace ddmod::cli
