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

#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pebble {

/** Malformed input; line and column are 1-based. */
class ParseError : public std::runtime_error
{
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

struct Token
{
    std::string text;
    std::size_t column = 1;
};

/** Splits a line on whitespace and records where each token starts. */
std::vector<Token> tokenize(std::string_view line);

/** Reads lines while counting them; `#` starts a comment. */
class LineReader
{
  public:
    explicit LineReader(std::istream& is) : is_(is) {}

    /** Next line with comments stripped, or nullopt at end of input. */
    std::optional<std::string> next();
    /** Next line that has at least one token. */
    std::optional<std::vector<Token>> next_tokens();

    std::size_t line() const { return line_; }

    [[noreturn]] void fail(const Token& at, const std::string& what) const;
    [[noreturn]] void fail(std::size_t column, const std::string& what) const;

  private:
    std::istream& is_;
    std::size_t line_ = 0;
};

std::uint64_t parse_uint(const LineReader& r, const Token& t, std::uint64_t max = UINT64_MAX);

} // namespace pebble
