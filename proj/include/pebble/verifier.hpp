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

#include "pebble/game_g2.hpp"
#include "pebble/simple_game.hpp"
#include "pebble/tree.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pebble {

/** Largest n for full enumeration. */
inline constexpr std::uint32_t kFullCeiling = 3;
/** Strategies per shard block and per checkpoint. */
inline constexpr std::uint64_t kBlock = std::uint64_t(1) << 20;

/** (n+1)^(1 + (n+1)n). Throws GameError if it does not fit in 64 bits. */
std::uint64_t strategy_count(std::uint32_t n);

/** init = index mod (n+1); the table cells follow as base-(n+1) digits, pigeon-major. */
SimpleStrategy decode_strategy(std::uint32_t n, std::uint64_t index, std::uint32_t s = 1);
std::uint64_t encode_strategy(const SimpleStrategy& strat);

/** Lexicographically least (init, table) under simultaneous pigeon and hole relabeling. */
SimpleStrategy canonical_form(const SimpleStrategy& strat);
bool is_canonical(const SimpleStrategy& strat);

/** Iterates all strategies of shard k out of m, or one per symmetry class. */
class StrategyEnumerator
{
  public:
    StrategyEnumerator(std::uint32_t n, bool symmetry, std::uint32_t shard, std::uint32_t shards,
                       std::uint64_t start = 0, std::uint32_t ceiling = kFullCeiling);

    /** Advances to the next strategy; false at the end. */
    bool next(SimpleStrategy& out, std::uint64_t& index);
    /** Index the next call will look at first. */
    std::uint64_t position() const { return cursor_; }

  private:
    std::uint32_t n_;
    bool symmetry_;
    std::uint32_t shard_;
    std::uint32_t shards_;
    std::uint64_t total_;
    std::uint64_t cursor_;
};

struct CampaignOptions
{
    std::uint32_t shards = 1;
    /** Runs only this shard when set. */
    std::optional<std::uint32_t> shard_index;
    std::uint32_t threads = 1;
    std::uint32_t s_max = 64;
    std::uint64_t seed = 1;
    bool symmetry = false;
    /** Random samples for the sampled campaigns; 0 picks the default. */
    std::uint64_t samples = 0;
    /** Append-only progress file for the exhaustive campaign; empty disables it. */
    std::filesystem::path checkpoint;
    /** Directory holding fig1.strat, php1.tree and the figures directory. */
    std::filesystem::path data_dir;
};

struct Counterexample
{
    std::string name;
    std::string text;
};

struct CampaignReport
{
    std::string claim;
    std::uint64_t space = 0;
    std::vector<Counterexample> counterexamples;
    double seconds = 0;
    std::uint32_t shards = 1;
    std::uint32_t threads = 1;
    /** Additional `key=value` lines describing the run. */
    std::vector<std::string> details;

    bool success() const { return counterexamples.empty(); }
    void merge(CampaignReport other);
};

/** `claim=<id> space=<count> counterexamples=<count> seconds=<float>` */
std::string format_report(const CampaignReport& r, bool timing = true);
/** One file per counterexample, named after it. */
void write_counterexamples(const CampaignReport& r, const std::filesystem::path& dir);

const std::vector<std::string>& claim_ids();
/** Throws GameError for an unknown claim. */
CampaignReport run_campaign(const std::string& claim, const CampaignOptions& opts);

/** Uniformly random table and init. */
SimpleStrategy random_strategy(std::uint32_t n, std::uint32_t s, std::mt19937_64& rng);

/** Delayer wins every s, using the loop shortcut when it applies. */
bool delayer_wins_all(const SimpleStrategy& strat, LengthAnalyzer& analyzer);

CampaignReport verify_theorem_main(std::uint32_t n, const CampaignOptions& opts);
CampaignReport verify_theorem_main_sampled(std::uint32_t n, const CampaignOptions& opts);
CampaignReport verify_oracle_equivalence(std::uint64_t samples_n3, std::uint64_t samples_n4, std::uint32_t s_limit,
                                         std::uint64_t seed);
CampaignReport verify_small_n();
CampaignReport verify_subset_prop(std::uint32_t n_max = 4);
CampaignReport verify_order_axioms();
CampaignReport verify_g2_playouts(std::uint64_t playouts, std::uint64_t seed);
CampaignReport verify_root_ramify();
CampaignReport verify_g2prime(std::uint64_t plays, std::uint64_t seed);
CampaignReport verify_g2_properties(const CampaignOptions& opts);
CampaignReport verify_figures(const std::filesystem::path& data_dir);
CampaignReport verify_php_trees(const CampaignOptions& opts);

/** T precedes U iff some w in U but not in T has the same lexicographic predecessors in both. */
Order tree_order_by_definition(const FiniteTree& t, const FiniteTree& u);

/** Prover callbacks that ignore the aux word and pick moves by hashing what they see. */
ObliviousStrategy random_oblivious_strategy(const LogPower& cfg, std::uint64_t seed);
/** Picks a minimal cover by hashing the plain frontier path, its matching and the query. */
G2Delayer random_g2_delayer(const GameSize& size, std::uint64_t seed, std::uint64_t decode_cap = 0);

} // namespace pebble
