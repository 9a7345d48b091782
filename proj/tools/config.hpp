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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddmod/grid.hpp"

namespace ddmod::cli
{

// Invalid or unreadable configuration. `key` is "section.key" or empty.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, const std::string &message);
    const std::string &key() const { return key_; }

  private:
    std::string key_;
};

// Key/value pairs of one section. Every getter marks its key as used so that
// leftover keys can be rejected once an experiment has read its parameters.
class Section
{
  public:
    Section() = default;
    Section(std::string name, std::map<std::string, std::string> values);

    const std::string &name() const { return name_; }
    bool has(const std::string &key) const;

    std::string get_string(const std::string &key, const std::string &fallback);
    int get_int(const std::string &key, int fallback, int lo, int hi);
    double get_double(const std::string &key, double fallback);
    double get_positive(const std::string &key, double fallback);
    std::uint64_t get_u64(const std::string &key, std::uint64_t fallback);
    std::vector<double> get_doubles(const std::string &key, const std::vector<double> &fallback);
    std::vector<int> get_ints(const std::string &key, const std::vector<int> &fallback, int lo, int hi);

    // Throws ConfigError naming the first key that no getter asked for.
    void reject_unused() const;

  private:
    const std::string *raw(const std::string &key);
    std::string qualified(const std::string &key) const { return name_ + "." + key; }

    std::string name_;
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

struct ExperimentConfig
{
    std::string experiment;
    DDGridParams grid{1.0, 1, 1};
    std::uint64_t seed = 1;
    // Section named after the experiment; empty when absent from the file.
    Section options;
};

const std::vector<std::string> &experiment_names();

ExperimentConfig parse_config_text(const std::string &text);
ExperimentConfig parse_config_file(const std::string &path);

} // namespace ddmod::cli
