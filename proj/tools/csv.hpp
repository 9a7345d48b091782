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
#include <fstream>
#include <string>
#include <vector>

#include "ddmod/numerics.hpp"

namespace ddmod::cli
{

// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_double(double v);


// Comma-separated output with a header row. Complex values take two columns.
class CsvWriter
{
  public:
    CsvWriter(const std::string &path, const std::vector<std::string> &header);

    CsvWriter &operator<<(double v);
    CsvWriter &operator<<(int v);
    CsvWriter &operator<<(std::int64_t v);
    CsvWriter &operator<<(const std::string &v);
    CsvWriter &operator<<(const char *v) { return *this << std::string(v); }
    CsvWriter &operator<<(const cd &v);
    // Ends the current row; throws if the column count differs from the header.
    void end_row();
    void close();

  private:
    void field(const std::string &text);

    std::string path_;
    std::ofstream out_;
    std::size_t columns_;
    std::size_t pending_ = 0;
};

} // namespace ddmod::cli
