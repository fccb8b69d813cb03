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

#include "pebble/matching.hpp"
#include "pebble/text_io.hpp"

#include <istream>
#include <ostream>
#include <vector>

namespace pebble {

/** The matchings M_0, ..., M_l with M_0 empty. */
struct G1Position
{
    std::vector<Matching> history{Matching{}};

    const Matching& last() const { return history.back(); }
};

enum class G1Tag { Ongoing, ProverWins, DelayerWinsAtCap };

const char* to_string(G1Tag t);

struct G1Outcome
{
    G1Tag tag = G1Tag::Ongoing;
    G1Position position;
};

/**
 * One round. Throws GameError if the query is too large or the answer is not
 * a minimal cover of it.
 */
G1Outcome g1_step(const G1Position& pos, const Query& q, const Matching& answer, const LogPower& cfg);

/**
 * Extends the last matching greedily (smallest free hole, smallest free
 * pigeon) and keeps the records that cover the query. Throws GameError if
 * the greedy extension runs out of holes or pigeons.
 */
Matching g1_delayer_canonical(const G1Position& pos, const Query& q, const LogPower& cfg);

/** Parses `p3` / `h0`. Throws GameError. */
QueryItem parse_query_item(const std::string& s);
/** Records as `p:h` tokens. */
std::string format_records(const Matching& m);
/** Parses `p:h` tokens from index `from` on; reports errors through the reader. */
Matching parse_records(const LineReader& reader, const std::vector<Token>& toks, std::size_t from);

struct G1Round
{
    Query query;
    Matching answer;
};

struct G1Transcript
{
    std::uint32_t n = 1;
    std::uint32_t c = 1;
    std::vector<G1Round> rounds;
};

void write_g1_transcript(std::ostream& os, const G1Transcript& t);
G1Transcript read_g1_transcript(std::istream& is);

/** Replays a transcript from the initial position. */
G1Outcome g1_replay(const G1Transcript& t);

} // namespace pebble
