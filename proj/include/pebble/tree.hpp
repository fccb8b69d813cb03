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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace pebble {

/** A node of an index-sequence tree; indices are >= 1, the root is empty. */
using Vertex = std::vector<std::uint64_t>;

enum class Order { Less, Equal, Greater };

const char* to_string(Order o);

/** Lexicographic order; a proper prefix is smaller. */
Order lex_compare(const Vertex& v, const Vertex& w);

bool is_prefix(const Vertex& v, const Vertex& w);
Vertex child(const Vertex& v, std::uint64_t i);

std::string to_string(const Vertex& v);
/** Parses `1.2.1` or `-`; throws GameError. */
Vertex parse_vertex(const std::string& s);

/** A nonempty prefix-closed set of vertices, kept in lexicographic order. */
class FiniteTree
{
  public:
    /** The tree {root}. */
    FiniteTree();
    /** Throws GameError unless the set is prefix-closed with indices >= 1. */
    explicit FiniteTree(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    bool contains(const Vertex& v) const;
    std::size_t height() const;
    /** Largest child index used anywhere. */
    std::uint64_t max_index() const;
    /** Number of children of v. */
    std::size_t branching(const Vertex& v) const;

    friend bool operator==(const FiniteTree&, const FiniteTree&) = default;

  private:
    std::vector<Vertex> vertices_;
};

/** Returns Less iff t precedes u in the tree order. */
Order tree_compare(const FiniteTree& t, const FiniteTree& u);

using BigNat = boost::multiprecision::cpp_int;

/**
 * An order-reversing injection into the naturals for trees of height <= h
 * with child indices < b: the missing vertices of [b-1]^{<=h}, weighted by
 * 2^(number of lexicographically later vertices).
 */
BigNat ordinal_embed(const FiniteTree& t, std::uint64_t b, std::size_t h);

/** Sum over leaves v of b^(h - height(v)). */
BigNat leaf_weight(const FiniteTree& t, std::uint64_t b, std::size_t h);

struct NCTreeShape
{
    LogPower power;
};

bool is_nc_tree(const FiniteTree& t, const NCTreeShape& shape);

/** Every prefix-closed subset of [b]^{<=h}. */
std::vector<FiniteTree> enumerate_trees(std::uint64_t b, std::size_t h);

/** All vertices of [b]^{<=h} in lexicographic order. */
std::vector<Vertex> vertex_universe(std::uint64_t b, std::size_t h);

void write_tree(std::ostream& os, const FiniteTree& t);
FiniteTree read_tree(std::istream& is);

} // namespace pebble
