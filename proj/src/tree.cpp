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

#include "pebble/tree.hpp"
#include "pebble/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace pebble {

const char*
to_string(Order o)
{
    switch (o) {
    case Order::Less: return "Less";
    case Order::Equal: return "Equal";
    case Order::Greater: return "Greater";
    }
    return "?";
}

Order
lex_compare(const Vertex& v, const Vertex& w)
{
    if (std::lexicographical_compare(v.begin(), v.end(), w.begin(), w.end())) return Order::Less;
    if (std::lexicographical_compare(w.begin(), w.end(), v.begin(), v.end())) return Order::Greater;
    return Order::Equal;
}

bool
is_prefix(const Vertex& v, const Vertex& w)
{
    return v.size() <= w.size() && std::equal(v.begin(), v.end(), w.begin());
}

Vertex
child(const Vertex& v, std::uint64_t i)
{
    Vertex c = v;
    c.push_back(i);
    return c;
}

std::string
to_string(const Vertex& v)
{
    if (v.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < v.size(); i++) {
        if (i) s += '.';
        s += std::to_string(v[i]);
    }
    return s;
}

Vertex
parse_vertex(const std::string& s)
{
    if (s == "-") return {};
    Vertex v;
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = s.find('.', pos);
        std::string part = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        std::uint64_t x = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || x == 0) {
            throw GameError("bad vertex '" + s + "': indices are positive integers joined by '.'");
        }
        v.push_back(x);
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return v;
}

FiniteTree::FiniteTree() : vertices_{Vertex{}} {}

FiniteTree::FiniteTree(std::vector<Vertex> vertices)
{
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty()) throw GameError("a tree is nonempty");
    for (const auto& v : vertices) {
        if (std::find(v.begin(), v.end(), 0) != v.end()) throw GameError("vertex indices start at 1");
        if (!v.empty()) {
            Vertex parent(v.begin(), v.end() - 1);
            if (!std::binary_search(vertices.begin(), vertices.end(), parent)) {
                throw GameError("vertex " + to_string(v) + " has no parent in the tree");
            }
        }
    }
    vertices_ = std::move(vertices);
}

bool
FiniteTree::contains(const Vertex& v) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t
FiniteTree::height() const
{
    std::size_t h = 0;
    for (const auto& v : vertices_) h = std::max(h, v.size());
    return h;
}

std::uint64_t
FiniteTree::max_index() const
{
    std::uint64_t m = 0;
    for (const auto& v : vertices_) {
        if (!v.empty()) m = std::max(m, v.back());
    }
    return m;
}

std::size_t
FiniteTree::branching(const Vertex& v) const
{
    // children of v form a contiguous run right after v
    auto it = std::upper_bound(vertices_.begin(), vertices_.end(), v);
    std::size_t count = 0;
    for (; it != vertices_.end() && is_prefix(v, *it); ++it) {
        if (it->size() == v.size() + 1) count++;
    }
    return count;
}

Order
tree_compare(const FiniteTree& t, const FiniteTree& u)
{
    const auto& a = t.vertices();
    const auto& b = u.vertices();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        switch (lex_compare(a[i], b[j])) {
        case Order::Equal:
            i++;
            j++;
            continue;
        case Order::Less: return Order::Greater;
        case Order::Greater: return Order::Less;
        }
    }
    if (i < a.size()) return Order::Greater;
    if (j < b.size()) return Order::Less;
    return Order::Equal;
}

std::vector<Vertex>
vertex_universe(std::uint64_t b, std::size_t h)
{
    std::vector<Vertex> out;
    Vertex cur;
    auto rec = [&](auto& self) -> void {
        out.push_back(cur);
        if (cur.size() == h) return;
        for (std::uint64_t i = 1; i <= b; i++) {
            cur.push_back(i);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

static void
check_bounds(const FiniteTree& t, std::uint64_t b, std::size_t h)
{
    if (b < 2) throw GameError("branching bound b must be at least 2");
    if (t.height() > h) throw GameError("tree exceeds the height bound");
    if (t.max_index() >= b) throw GameError("tree exceeds the branching bound");
}

BigNat
ordinal_embed(const FiniteTree& t, std::uint64_t b, std::size_t h)
{
    check_bounds(t, b, h);
    auto universe = vertex_universe(b - 1, h);
    BigNat value = 0;
    for (const auto& v : universe) {
        value <<= 1;
        if (!t.contains(v)) value += 1;
    }
    return value;
}

BigNat
leaf_weight(const FiniteTree& t, std::uint64_t b, std::size_t h)
{
    check_bounds(t, b, h);
    BigNat sum = 0;
    for (const auto& v : t.vertices()) {
        if (t.branching(v) == 0) {
            BigNat term = 1;
            for (std::size_t k = v.size(); k < h; k++) term *= b;
            sum += term;
        }
    }
    return sum;
}

bool
is_nc_tree(const FiniteTree& t, const NCTreeShape& shape)
{
    if (t.height() > shape.power.c()) return false;
    for (const auto& v : t.vertices()) {
        if (v.empty()) continue;
        if (v.back() > shape.power.cap()) return false;
        if (v.back() > 1) {
            Vertex left = v;
            left.back()--;
            if (!t.contains(left)) return false;
        }
    }
    return true;
}

std::vector<FiniteTree>
enumerate_trees(std::uint64_t b, std::size_t h)
{
    // subtree shapes of height <= k, as vertex lists relative to their root
    std::vector<std::vector<std::vector<Vertex>>> shapes(h + 1);
    shapes[0] = {{Vertex{}}};
    for (std::size_t k = 1; k <= h; k++) {
        std::vector<std::vector<Vertex>> acc = {{Vertex{}}};
        for (std::uint64_t i = 1; i <= b; i++) {
            std::vector<std::vector<Vertex>> next;
            for (const auto& base : acc) {
                next.push_back(base);
                for (const auto& sub : shapes[k - 1]) {
                    auto grown = base;
                    for (const auto& v : sub) {
                        Vertex w{i};
                        w.insert(w.end(), v.begin(), v.end());
                        grown.push_back(std::move(w));
                    }
                    next.push_back(std::move(grown));
                }
            }
            acc = std::move(next);
        }
        shapes[k] = std::move(acc);
    }
    std::vector<FiniteTree> out;
    out.reserve(shapes[h].size());
    for (auto& s : shapes[h]) out.emplace_back(std::move(s));
    return out;
}

void
write_tree(std::ostream& os, const FiniteTree& t)
{
    for (const auto& v : t.vertices()) os << to_string(v) << "\n";
}

FiniteTree
read_tree(std::istream& is)
{
    LineReader reader(is);
    std::vector<Vertex> vs;
    while (auto toks = reader.next_tokens()) {
        if (toks->size() != 1) reader.fail((*toks)[1], "one vertex per line");
        try {
            vs.push_back(parse_vertex((*toks)[0].text));
        } catch (const GameError& e) {
            reader.fail((*toks)[0], e.what());
        }
    }
    try {
        return FiniteTree(std::move(vs));
    } catch (const GameError& e) {
        throw ParseError(reader.line(), 1, e.what());
    }
}

} // namespace pebble
