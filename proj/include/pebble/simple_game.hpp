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

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <vector>

namespace pebble {

/** A Prover strategy (s, F) for the two-record game. */
struct SimpleStrategy
{
    GameSize size;
    std::uint32_t s = 1;
    Pigeon init = 0;
    /** F(p, h) at p * holes + h. */
    std::vector<Pigeon> table;

    /** Table filled with loops F(p,h) = p. */
    static SimpleStrategy all_loops(const GameSize& size, std::uint32_t s, Pigeon init);

    Pigeon at(Pigeon p, Hole h) const { return table[p * size.holes + h]; }
    void set(Pigeon p, Hole h, Pigeon q) { table[p * size.holes + h] = q; }
    /** Throws GameError if the table is not total or out of range. */
    void validate() const;

    friend bool operator==(const SimpleStrategy&, const SimpleStrategy&) = default;
};

struct EdgeRef
{
    Pigeon tail = 0;
    Hole label = 0;

    Record record() const { return {tail, label}; }
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

bool edges_compatible(const EdgeRef& e, const EdgeRef& e2);

struct Play
{
    std::vector<Hole> answers;
};

enum class PlayTag { ProverWinsMidgame, ProverWinsFinal, DelayerWins, Incomplete };

const char* to_string(PlayTag t);

struct PlayOutcome
{
    PlayTag tag = PlayTag::Incomplete;
    /** 1-based round of the contradiction for ProverWinsMidgame. */
    std::size_t step = 0;
    std::vector<Record> records;
};

/** Throws GameError on answers out of range or more than s answers. */
PlayOutcome play_simplified(const SimpleStrategy& strat, const Play& play);

struct GraphEdge
{
    Pigeon tail = 0;
    Hole label = 0;
    Pigeon head = 0;
};

/** The multigraph G_F: one edge per (pigeon, hole). */
struct StrategyGraph
{
    std::uint32_t nodes = 0;
    Pigeon initial = 0;
    std::vector<GraphEdge> edges;
    /** Edge indices leaving each node. */
    std::vector<std::vector<std::size_t>> out;
};

StrategyGraph build_graph(const SimpleStrategy& strat);

struct PathConsistency
{
    bool is_path = false;
    bool locally_consistent = false;
    bool globally_consistent = false;
    bool last_edge_globally_consistent = false;
};

PathConsistency path_consistency(const SimpleStrategy& strat, const std::vector<EdgeRef>& path);

/** The pairs with F(p,h) = p. */
std::vector<EdgeRef> find_loops(const SimpleStrategy& strat);

/** Picks one of the unused holes (sorted) given the round number. */
using HolePolicy = std::function<Hole(const std::vector<Hole>& unused, std::size_t round)>;

Hole smallest_unused(const std::vector<Hole>& unused, std::size_t round);

struct CanonicalPlay
{
    Play play;
    PlayOutcome outcome;
    /** Round at which all holes were used and 0 was answered, if any. */
    std::optional<std::size_t> gave_up_at;
};

CanonicalPlay canonical_antistrategy(const SimpleStrategy& strat, const HolePolicy& policy = smallest_unused);

/** The plays of every canonical anti-strategy, one per distinct branch. */
std::vector<CanonicalPlay> enumerate_canonical_plays(const SimpleStrategy& strat);

class BudgetExceeded : public GameError
{
  public:
    using GameError::GameError;
};

/** A Delayer-winning play of length s, found by exhaustive search. */
std::optional<Play> find_delayer_witness(const SimpleStrategy& strat, std::uint32_t s, double budget = 1e8);
bool brute_force_delayer_wins(const SimpleStrategy& strat, std::uint32_t s, double budget = 1e8);

/** Winning lengths for all s >= 1: explicit up to s_max, periodic afterwards. */
struct WinCertificate
{
    std::uint32_t s_max = 0;
    /** explicit_wins[s-1] for s in [1, s_max]. */
    std::vector<bool> explicit_wins;
    std::uint64_t preperiod = 1;
    std::uint64_t period = 1;
    /** s >= preperiod wins iff s mod period is listed. */
    std::set<std::uint64_t> residues;

    bool wins(std::uint64_t s) const;
    bool all_win() const;
    /** Throws ContractViolation if the explicit part disagrees with the periodic part. */
    void check() const;
};

/**
 * Exact decision for every s. A length-s win ending in edge f is a locally
 * consistent walk of length s from the initial node that ends in f and uses
 * only edges compatible with f; the reachable sets R_{t+1} = N(R_t) are
 * iterated until they repeat. Throws GameError if the combined period
 * exceeds period_limit.
 */
WinCertificate delayer_wins_lengths(const SimpleStrategy& strat, std::uint32_t s_max,
                                    std::uint64_t period_limit = std::uint64_t(1) << 24);

/**
 * Reusable scratch space for deciding "Delayer wins every s" on many tables
 * of the same size without allocation.
 */
class LengthAnalyzer
{
  public:
    explicit LengthAnalyzer(const GameSize& size);

    /** True iff every s >= 1 is Delayer-winning. */
    bool all_win(const SimpleStrategy& strat);

  private:
    struct Sequence
    {
        std::uint32_t mu = 0;
        std::uint32_t lambda = 0;
        std::vector<bool> member;
    };
    void trace(const SimpleStrategy& strat, std::size_t f, Sequence& out);

    GameSize size_;
    std::size_t edges_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
    std::vector<Sequence> seqs_;
};

/** The n <= 2 winning Prover strategy. */
SimpleStrategy prover_small_n(std::uint32_t n, std::uint32_t s);

/** Pigeons are subsets of the holes as bitmasks; s = n + 1. */
SimpleStrategy subset_prover(std::uint32_t n);

/** A finite prefix followed by a cycle repeated forever. */
struct PathSpec
{
    std::vector<EdgeRef> prefix;
    std::vector<EdgeRef> cycle;
    /** Edges drawn red on this path: the final edge is not globally consistent there. */
    std::set<EdgeRef> red;

    /** The first len edges. */
    std::vector<EdgeRef> unroll(std::size_t len) const;
};

struct CoverSpec
{
    std::string name;
    std::uint32_t n = 3;
    Pigeon init = 3;
    std::size_t threshold = 4;
    std::size_t horizon = 60;
    std::vector<PathSpec> paths;
};

struct CoverReport
{
    bool ok = false;
    std::string failure;
    /** wins[i][s - threshold] for path i. */
    std::vector<std::vector<bool>> wins;
};

/** Throws GameError on a malformed spec. */
CoverReport check_cover_by_two(const CoverSpec& spec);
bool check_cover_by_two(const PathSpec& a, const PathSpec& b, std::size_t threshold, std::size_t horizon,
                        std::uint32_t n, Pigeon init);

void write_strategy(std::ostream& os, const SimpleStrategy& strat);
SimpleStrategy read_strategy(std::istream& is);
void write_play(std::ostream& os, const Play& play);
Play read_play(std::istream& is);
CoverSpec read_cover_spec(std::istream& is);

} // namespace pebble
