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

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pebble {

using Pigeon = std::uint32_t;
using Hole = std::uint32_t;

/** Thrown when a caller violates an operation's precondition. */
class GameError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/** Thrown when an internal invariant fails; indicates a bug or a false claim. */
class ContractViolation : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/**
 * Pigeons are 0..pigeons-1, holes are 0..holes-1.
 * The standard game has n holes and n+1 pigeons.
 */
struct GameSize
{
    std::uint32_t holes = 1;
    std::uint32_t pigeons = 2;

    static GameSize standard(std::uint32_t n);
    static GameSize with_pigeons(std::uint32_t n, std::uint32_t pigeon_count);

    std::uint32_t n() const { return holes; }
    bool has_pigeon(Pigeon p) const { return p < pigeons; }
    bool has_hole(Hole h) const { return h < holes; }

    friend bool operator==(const GameSize&, const GameSize&) = default;
};

struct Record
{
    Pigeon pigeon = 0;
    Hole hole = 0;

    friend auto operator<=>(const Record&, const Record&) = default;
};

bool records_conflict(const Record& a, const Record& b);

/** A partial matching, stored sorted by pigeon. */
class Matching
{
  public:
    Matching() = default;

    /** Throws GameError if the records are not injective both ways. */
    static Matching of(std::vector<Record> records);
    static std::optional<Matching> try_of(std::vector<Record> records);

    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }
    const std::vector<Record>& records() const { return records_; }
    auto begin() const { return records_.begin(); }
    auto end() const { return records_.end(); }

    bool contains(const Record& r) const;
    std::optional<Hole> hole_of(Pigeon p) const;
    std::optional<Pigeon> pigeon_of(Hole h) const;
    bool is_subset_of(const Matching& other) const;

    /** Union if it is still a matching. */
    std::optional<Matching> merged(const Matching& other) const;

    friend auto operator<=>(const Matching&, const Matching&) = default;
    friend bool operator==(const Matching&, const Matching&) = default;

  private:
    std::vector<Record> records_;
};

bool matchings_consistent(const Matching& m, const Matching& m2);

/** One element of a query: a pigeon or a hole. */
struct QueryItem
{
    enum class Kind : std::uint8_t { Pigeon, Hole };
    Kind kind = Kind::Pigeon;
    std::uint32_t id = 0;

    static QueryItem pigeon(Pigeon p) { return {Kind::Pigeon, p}; }
    static QueryItem hole(Hole h) { return {Kind::Hole, h}; }

    friend auto operator<=>(const QueryItem&, const QueryItem&) = default;
};

using Query = std::vector<QueryItem>;

/** Sorts and deduplicates. */
Query normalize_query(Query q);

bool covers(const Matching& m, const QueryItem& item);
bool covers(const Matching& m, const Query& q);
bool is_minimal_cover(const Matching& m, const Query& q);

/**
 * All inclusion-minimal matchings covering q, sorted.
 * With a base, only those consistent with it.
 */
std::vector<Matching> minimal_covers(const Query& q, const std::optional<Matching>& base, const GameSize& size);

/** |i| = ceil(log2(i+1)), the binary length of i. */
std::uint32_t bit_length(std::uint64_t i);

/**
 * The |n|^C and 2^{|n|^C} bounds. The cap saturates at 2^63 and can be
 * lowered for tests.
 */
class LogPower
{
  public:
    LogPower(std::uint32_t n, std::uint32_t c);

    std::uint32_t n() const { return n_; }
    std::uint32_t c() const { return c_; }
    std::uint32_t log_n() const { return log_n_; }
    std::uint64_t width() const { return width_; }
    std::uint64_t cap() const { return cap_; }
    bool cap_exact() const { return cap_exact_; }

    LogPower with_cap(std::uint64_t cap) const;

  private:
    std::uint32_t n_;
    std::uint32_t c_;
    std::uint32_t log_n_;
    std::uint64_t width_;
    std::uint64_t cap_;
    bool cap_exact_;
};

std::ostream& operator<<(std::ostream& os, const Record& r);
std::ostream& operator<<(std::ostream& os, const Matching& m);
std::ostream& operator<<(std::ostream& os, const QueryItem& q);
std::string to_string(const Matching& m);
std::string to_string(const Query& q);

/** `p h` lines terminated by a blank line or end of input. */
void write_matching(std::ostream& os, const Matching& m);
Matching read_matching(std::istream& is, const GameSize& size);

} // namespace pebble
