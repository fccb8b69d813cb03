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

#include "pebble/simple_game.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

namespace pebble {

/** A rooted tree with pigeon-labeled nodes and hole-labeled edges. */
struct PhpTree
{
    struct Node
    {
        Pigeon label = 0;
        /** Label of the edge from the parent; unused at the root. */
        Hole edge = 0;
        std::optional<std::size_t> parent;
        std::vector<std::size_t> children;
        std::size_t level = 0;
    };

    GameSize size;
    /** Node 0 is the root. */
    std::vector<Node> nodes;

    explicit PhpTree(const GameSize& size, Pigeon root_label = 0);

    std::size_t add_child(std::size_t parent, Hole edge, Pigeon label);
    std::size_t depth() const;
};

/** The symmetric tree of canonical plays against F. */
PhpTree build_php_tree(const SimpleStrategy& strat);

bool validate_php_tree(const PhpTree& t);
bool is_complete(const PhpTree& t);
bool is_symmetric(const PhpTree& t);

/** Pairs (p,h) with no p-labeled node having an outgoing h-labeled edge. */
std::vector<EdgeRef> find_loose_pairs(const PhpTree& t);

/** A table restricted to fewer pigeons and holes, with the bijections used. */
struct Reduction
{
    SimpleStrategy reduced;
    /** Original pigeon of each reduced pigeon. */
    std::vector<Pigeon> pigeon_map;
    /** Original hole of each reduced hole. */
    std::vector<Hole> hole_map;
    /** Original answers given before the reduced game starts. */
    std::vector<Hole> lead;
    /** Records reachable in plays that respect the restriction, in original ids. */
    std::vector<EdgeRef> admissible;
    bool closed = true;
    /** An admissible record whose value leaves the restricted pigeons. */
    std::optional<EdgeRef> escape;

    /** Maps a reduced play back to original holes. */
    Play lift(const Play& reduced_play) const;
};

/**
 * Delayer answers h to init and never again. The reduced game starts at
 * F(init, h) with s' = s - 1. Throws GameError when s < 2; a value equal to
 * init is reported through closed and escape.
 */
Reduction commit_to_root(const SimpleStrategy& strat, Hole h);

/** Delayer never uses the given holes; the given pigeons must not be asked. */
Reduction forbid_holes(const SimpleStrategy& strat, const std::vector<Hole>& holes, const std::vector<Pigeon>& pigeons);

/**
 * Length of the shortest locally consistent path from the initial node that
 * ends at p, visits p only at its end and never uses label h.
 */
std::optional<std::size_t> loop_approach_length(const SimpleStrategy& strat, Pigeon p, Hole h);
/** The path measured by loop_approach_length. */
std::optional<std::vector<EdgeRef>> loop_approach(const SimpleStrategy& strat, Pigeon p, Hole h);

/** The approach path followed by the (p,h) loop; wins every s > approach length. */
std::optional<Play> loop_play(const SimpleStrategy& strat, Pigeon p, Hole h, std::uint32_t s);

/** True iff some canonical play revisits a pigeon, so Delayer wins every s. */
bool canonical_loop_exists(const SimpleStrategy& strat);

void write_php_tree(std::ostream& os, const PhpTree& t);
PhpTree read_php_tree(std::istream& is, const GameSize& size);

} // namespace pebble
