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
#include "pebble/tree.hpp"

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace pebble {

using AuxWord = std::vector<std::uint64_t>;

struct PositionLabel
{
    Matching matching;
    AuxWord aux;

    friend bool operator==(const PositionLabel&, const PositionLabel&) = default;
};

/** A labeling of a downward-closed subtree of T. */
class G2Position
{
  public:
    /** The initial position: the root labeled with the empty matching. */
    G2Position();

    const std::map<Vertex, PositionLabel>& labels() const { return labels_; }
    /** c(L), the lexicographically largest labeled vertex. */
    const Vertex& frontier() const { return labels_.rbegin()->first; }
    const PositionLabel& at(const Vertex& v) const;
    bool contains(const Vertex& v) const { return labels_.count(v) != 0; }
    FiniteTree dom() const;

    /** Inserts or replaces; no invariant checks (see check_position). */
    void set(const Vertex& v, PositionLabel label) { labels_[v] = std::move(label); }
    void erase(const Vertex& v) { labels_.erase(v); }

    friend bool operator==(const G2Position&, const G2Position&) = default;

  private:
    std::map<Vertex, PositionLabel> labels_;
};

/** Throws ContractViolation unless dom is downward closed and labels grow along paths. */
void check_position(const G2Position& pos, bool with_aux = true);

/**
 * The triple <o, x, B>. For o = 1, x holds the single child index;
 * for o = 2 and 3 it is a proper prefix of c(L).
 */
struct ProverMove
{
    int option = 1;
    Vertex x;
    std::uint64_t b = 1;

    friend bool operator==(const ProverMove&, const ProverMove&) = default;
};

enum class G2Tag { Ongoing, ProverWins, ProverLoses, DelayerWins };

const char* to_string(G2Tag t);

struct G2Outcome
{
    G2Tag tag = G2Tag::Ongoing;
    G2Position position;
    /** Labels forgotten by an o=3 backtrack. */
    std::vector<std::pair<Vertex, PositionLabel>> erased;
};

/**
 * Applies one round. The answer is validated as a minimal cover of q but is
 * only checked for consistency inside the transition rules. Throws GameError
 * on malformed input and ContractViolation if dom fails to increase.
 */
G2Outcome g2_apply(const G2Position& pos, const Query& q, const Matching& answer, const ProverMove& mv,
                   const LogPower& cfg, const FiniteTree& t);

/** Same rules with the auxiliary words ignored; positions carry empty aux. */
G2Outcome g2prime_apply(const G2Position& pos, const Query& q, const Matching& answer, const ProverMove& mv,
                        const LogPower& cfg, const FiniteTree& t);

/** Prover callbacks that see only c(L), its matching and its aux word. */
struct ObliviousStrategy
{
    std::function<Query(const Vertex&, const Matching&, const AuxWord&)> query;
    std::function<ProverMove(const Vertex&, const Matching&, const AuxWord&, const Matching&)> move;
};

using G2Delayer = std::function<Matching(const G2Position&, const Query&)>;

struct G2Round
{
    Query query;
    Matching answer;
    ProverMove move;
    std::vector<std::pair<Vertex, PositionLabel>> erased;
};

struct G2Play
{
    std::vector<G2Round> rounds;
    std::vector<FiniteTree> doms;
    G2Tag winner = G2Tag::Ongoing;
    G2Position final_position;
};

/**
 * Runs query, answer, move, apply until the game ends or step_cap rounds
 * pass; hitting the cap is scored DelayerWins. A query without any minimal
 * cover is scored ProverWins.
 */
G2Play g2_play(const LogPower& cfg, const FiniteTree& t, const ObliviousStrategy& prover, const G2Delayer& delayer,
               std::uint64_t step_cap);

struct G2TreeSummary
{
    std::uint64_t branches = 0;
    std::uint64_t prover_wins = 0;
    std::uint64_t prover_loses = 0;
    std::uint64_t capped = 0;
    std::size_t longest = 0;
};

/** Plays the strategy against every Delayer answer at every round. */
G2TreeSummary g2_exhaustive(const LogPower& cfg, const FiniteTree& t, const ObliviousStrategy& prover,
                            std::uint64_t step_cap);

struct RootRamify
{
    FiniteTree tree;
    ObliviousStrategy strategy;
};

/**
 * T = [n+1]^{<=1} with each root child i extended by i*1. Prover ramifies at
 * the root, sweeps to the second child with o=2, then backtracks with o=3.
 * Throws GameError unless n >= 2, 2^{|n|^C} > n and ceil(n/2) <= |n|^C.
 */
RootRamify prover_root_ramify(std::uint32_t n, const LogPower& cfg);

/** Largest number of rounds allowed by the determinacy bound, saturated. */
std::uint64_t g2_step_bound(const LogPower& cfg, const FiniteTree& t);

/** [[k, A]] = A (cap+1) + k. */
std::uint64_t encode_index(std::uint64_t k, std::uint64_t a, std::uint64_t cap);

struct DecodedIndex
{
    std::uint64_t k = 0;
    /** 0 for a plain index in [1, cap]. */
    std::uint64_t a = 0;
};

std::optional<DecodedIndex> decode_index(std::uint64_t y, std::uint64_t cap);

/** The aux-free strategy on the encoded tree. */
struct PrimeStrategy
{
    std::function<Query(const Vertex&, const Matching&)> query;
    std::function<ProverMove(const Vertex&, const Matching&, const Matching&)> move;
};

struct G2PrimeGame
{
    LogPower cfg;
    FiniteTree tree;
    PrimeStrategy strategy;
};

/** Smallest C' >= C with cap(cap+1)+cap <= 2^{|n|^C'}, or nullopt within c_limit. */
std::optional<std::uint32_t> prime_height(const LogPower& cfg, std::uint32_t c_limit = 16);

/**
 * Encodes each child index with its aux entry. Besides the encoded indices,
 * plain indices in [1, cap] are kept so o=3 can still land on l*1.
 */
G2PrimeGame to_g2prime(const ObliviousStrategy& s, const LogPower& cfg, const FiniteTree& t,
                       std::uint32_t c_limit = 16);

/** Vertex and aux word read off an encoded vertex. */
std::pair<Vertex, AuxWord> decode_vertex(const Vertex& v, std::uint64_t cap);
/** A G2' position viewed as a G2 position with aux read off the vertices. */
G2Position decode_position(const G2Position& prime, std::uint64_t cap);

using G2PrimeDelayer = std::function<Matching(const G2Position&, const Query&)>;

G2Play g2prime_play(const G2PrimeGame& game, const G2PrimeDelayer& delayer, std::uint64_t step_cap);

void write_position(std::ostream& os, const G2Position& pos);
G2Position read_position(std::istream& is, const GameSize& size);

struct G2Transcript
{
    std::uint32_t n = 1;
    std::uint32_t c = 1;
    std::vector<G2Round> rounds;
};

void write_g2_transcript(std::ostream& os, const G2Transcript& t);
G2Transcript read_g2_transcript(std::istream& is);
std::string format_move(const ProverMove& mv);

} // namespace pebble
