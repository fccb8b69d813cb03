/*
 * Copyright 2026 The pebble authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pebble/text_io.hpp"

#include <charconv>

namespace pebble {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line), column_(column)
{
}

std::vector<Token>
tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) i++;
        if (i == line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') i++;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

std::optional<std::string>
LineReader::next()
{
    std::string line;
    if (!std::getline(is_, line)) return std::nullopt;
    line_++;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    return line;
}

std::optional<std::vector<Token>>
LineReader::next_tokens()
{
    while (auto line = next()) {
        auto toks = tokenize(*line);
        if (!toks.empty()) return toks;
    }
    return std::nullopt;
}

void
LineReader::fail(const Token& at, const std::string& what) const
{
    throw ParseError(line_, at.column, what);
}

void
LineReader::fail(std::size_t column, const std::string& what) const
{
    throw ParseError(line_, column, what);
}

std::uint64_t
parse_uint(const LineReader& r, const Token& t, std::uint64_t max)
{
    std::uint64_t v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) r.fail(t, "expected a non-negative integer, got '" + t.text + "'");
    if (v > max) r.fail(t, "value " + t.text + " out of range (max " + std::to_string(max) + ")");
    return v;
}

} // namespace pebble
