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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace ddmod::cli
{

struct RunOptions
{
    std::filesystem::path out_dir{"."};
    unsigned threads = 1;
    // Full-scale avionics draws.
    bool full = false;
    std::optional<std::uint64_t> seed;
};

struct RunResult
{
    std::vector<std::filesystem::path> files;
    // False when a self-check experiment reports a failed check.
    bool passed = true;
};

// Reads every experiment parameter, rejects unknown keys, then computes and
// writes <out_dir>/<experiment>.csv (plus companion tables for some experiments).
RunResult run_experiment(ExperimentConfig cfg, const RunOptions &opts, std::ostream &log);

} // namespace ddmod::cli
