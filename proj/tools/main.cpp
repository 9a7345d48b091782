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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "ddmod/numerics.hpp"
#include "experiments.hpp"

namespace
{
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Single-line logfmt record; quotes and backslashes in the message are escaped.
std::string quoted(const std::string &s)
{
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"' || c == '\\')
            out += '\\';
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out + "\"";
}

int report(const std::string &kind, const std::string &key, const std::string &message, int code)
{
    std::cerr << "error=" << kind;
    if (!key.empty())
        std::cerr << " key=" << key;
    std::cerr << " message=" << quoted(message) << '\n';
    return code;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Delay-Doppler experiment runner. Writes CSV tables for one configured experiment."};
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool full = false;
    app.add_option("--config", config_path, "INI experiment configuration")->required();
    app.add_option("--out", out_dir, "Output directory for CSV files")->capture_default_str();
    auto *seed_opt = app.add_option("--seed", seed, "Override [experiment] seed");
    app.add_option("--threads", threads, "Worker threads; output does not depend on this")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    app.add_flag("--full", full, "Full-scale avionics draws (100)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return report("usage", "", e.what(), kExitConfig);
    }

    using namespace ddmod;
    try
    {
        cli::RunOptions opts;
        opts.out_dir = out_dir;
        opts.threads = threads;
        opts.full = full;
        if (seed_opt->count() > 0)
            opts.seed = seed;
        const cli::RunResult res = cli::run_experiment(cli::parse_config_file(config_path), opts, std::cout);
        for (const auto &f : res.files)
            std::cout << "wrote " << f.string() << '\n';
        if (!res.passed)
            return report("check", "", "one or more self-checks failed", kExitNumeric);
        return 0;
    }
    catch (const cli::ConfigError &e)
    {
        return report("config", e.key(), e.what(), kExitConfig);
    }
    catch (const DomainError &e)
    {
        return report("config", "", e.what(), kExitConfig);
    }
    catch (const NumericError &e)
    {
        return report("numeric", "", e.what(), kExitNumeric);
    }
    catch (const std::exception &e)
    {
        return report("runtime", "", e.what(), kExitNumeric);
    }
}
