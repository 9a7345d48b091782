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

#include "csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ddmod::cli
{

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        v = 0.0; // drop the sign of negative zero
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc())
        throw std::runtime_error("format_double: buffer too small");
    return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(const std::string &path, const std::vector<std::string> &header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size())
{
    if (!out_)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const auto &h : header)
        field(h);
    end_row();
}

void CsvWriter::field(const std::string &text)
{
    if (text.find_first_of(",\"\n") != std::string::npos)
        throw std::invalid_argument("CSV field needs quoting: " + text);
    if (pending_ > 0)
        out_ << ',';
    out_ << text;
    ++pending_;
}

CsvWriter &CsvWriter::operator<<(double v)
{
    field(format_double(v));
    return *this;
}

CsvWriter &CsvWriter::operator<<(int v)
{
    return *this << static_cast<std::int64_t>(v);
}

CsvWriter &CsvWriter::operator<<(std::int64_t v)
{
    field(std::to_string(v));
    return *this;
}

CsvWriter &CsvWriter::operator<<(const std::string &v)
{
    field(v);
    return *this;
}

CsvWriter &CsvWriter::operator<<(const cd &v)
{
    field(format_double(v.real()));
    field(format_double(v.imag()));
    return *this;
}

void CsvWriter::end_row()
{
    if (pending_ != columns_)
        throw std::logic_error("CSV row has " + std::to_string(pending_) + " fields, header has " + std::to_string(columns_));
    out_ << '\n';
    pending_ = 0;
}

void CsvWriter::close()
{
    out_.close();
    if (!out_)
        throw std::runtime_error("failed writing '" + path_ + "'");
}

} // namespace ddmod::cli
