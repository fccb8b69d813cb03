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

#include "pebble/php_tree.hpp"
#include "pebble/text_io.hpp"
#include "pebble/tree.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace pebble {

PhpTree::PhpTree(const GameSize& s, Pigeon root_label) : size(s)
{
    nodes.push_back({root_label, 0, std::nullopt, {}, 0});
}

std::size_t
PhpTree::add_child(std::size_t parent, Hole edge, Pigeon label)
{
    std::size_t id = nodes.size();
    nodes.push_back({label, edge, parent, {}, nodes[parent].level + 1});
    nodes[parent].children.push_back(id);
    return id;
}

std::size_t
PhpTree::depth() const
{
    std::size_t d = 0;
    for (const auto& node : nodes) d = std::max(d, node.level);
    return d;
}

PhpTree
build_php_tree(const SimpleStrategy& strat)
{
    strat.validate();
    PhpTree t(strat.size, strat.init);
    std::vector<bool> on_path(strat.size.pigeons, false), used(strat.size.holes, false);
    auto grow = [&](auto& self, std::size_t v) -> void {
        Pigeon p = t.nodes[v].label;
        on_path[p] = true;
        for (Hole h = 0; h < strat.size.holes; h++) {
            if (used[h]) continue;
            Pigeon q = strat.at(p, h);
            if (on_path[q]) continue;
            std::size_t c = t.add_child(v, h, q);
            used[h] = true;
            self(self, c);
            used[h] = false;
        }
        on_path[p] = false;
    };
    grow(grow, 0);
    return t;
}

bool
validate_php_tree(const PhpTree& t)
{
    const auto n = t.size.holes;
    for (std::size_t v = 0; v < t.nodes.size(); v++) {
        const auto& node = t.nodes[v];
        if (!t.size.has_pigeon(node.label)) return false;
        if (node.parent && !t.size.has_hole(node.edge)) return false;
        if (node.level > n || node.children.size() > n - node.level) return false;
        std::vector<bool> seen_p(t.size.pigeons, false), seen_h(n, false);
        for (std::optional<std::size_t> u = v; u; u = t.nodes[*u].parent) {
            const auto& cur = t.nodes[*u];
            if (seen_p[cur.label]) return false;
            seen_p[cur.label] = true;
            if (cur.parent) {
                if (seen_h[cur.edge]) return false;
                seen_h[cur.edge] = true;
            }
        }
    }
    return true;
}

bool
is_complete(const PhpTree& t)
{
    if (t.depth() != t.size.holes) return false;
    for (const auto& node : t.nodes) {
        if (node.children.size() != t.size.holes - node.level) return false;
    }
    return true;
}

bool
is_symmetric(const PhpTree& t)
{
    std::map<std::pair<Pigeon, Hole>, Pigeon> seen;
    for (const auto& node : t.nodes) {
        if (!node.parent) continue;
        auto key = std::make_pair(t.nodes[*node.parent].label, node.edge);
        auto [it, fresh] = seen.emplace(key, node.label);
        if (!fresh && it->second != node.label) return false;
    }
    return true;
}

std::vector<EdgeRef>
find_loose_pairs(const PhpTree& t)
{
    std::vector<bool> played(std::size_t(t.size.pigeons) * t.size.holes, false);
    for (const auto& node : t.nodes) {
        for (auto c : node.children) played[node.label * t.size.holes + t.nodes[c].edge] = true;
    }
    std::vector<EdgeRef> out;
    for (Pigeon p = 0; p < t.size.pigeons; p++) {
        for (Hole h = 0; h < t.size.holes; h++) {
            if (!played[p * t.size.holes + h]) out.push_back({p, h});
        }
    }
    return out;
}

Play
Reduction::lift(const Play& reduced_play) const
{
    Play out{lead};
    for (auto h : reduced_play.answers) {
        if (h >= hole_map.size()) throw GameError("reduced answer out of range");
        out.answers.push_back(hole_map[h]);
    }
    return out;
}

namespace {

/**
 * Restricts F to the kept pigeons and holes, starting from `start`.
 * Records reachable from start through kept holes are admissible; an
 * admissible value outside the kept pigeons is an escape.
 */
Reduction
restrict_table(const SimpleStrategy& strat, const std::vector<bool>& keep_p, const std::vector<bool>& keep_h,
               std::optional<Pigeon> start, std::uint32_t s)
{
    Reduction red;
    std::vector<std::optional<Pigeon>> to_reduced(strat.size.pigeons);
    for (Pigeon p = 0; p < strat.size.pigeons; p++) {
        if (keep_p[p]) {
            to_reduced[p] = Pigeon(red.pigeon_map.size());
            red.pigeon_map.push_back(p);
        }
    }
    std::vector<std::optional<Hole>> to_reduced_h(strat.size.holes);
    for (Hole h = 0; h < strat.size.holes; h++) {
        if (keep_h[h]) {
            to_reduced_h[h] = Hole(red.hole_map.size());
            red.hole_map.push_back(h);
        }
    }
    if (red.hole_map.empty()) throw GameError("restriction leaves no holes");
    if (red.pigeon_map.size() < red.hole_map.size() + 1) throw GameError("restriction leaves too few pigeons");
    GameSize size{std::uint32_t(red.hole_map.size()), std::uint32_t(red.pigeon_map.size())};

    if (!start || !keep_p[*start]) red.closed = false;
    std::vector<bool> reached(strat.size.pigeons, false);
    std::deque<Pigeon> queue;
    if (start && keep_p[*start]) {
        reached[*start] = true;
        queue.push_back(*start);
    }
    while (!queue.empty()) {
        Pigeon q = queue.front();
        queue.pop_front();
        for (Hole h = 0; h < strat.size.holes; h++) {
            if (!keep_h[h]) continue;
            red.admissible.push_back({q, h});
            Pigeon v = strat.at(q, h);
            if (!keep_p[v]) {
                if (red.closed) red.escape = EdgeRef{q, h};
                red.closed = false;
                continue;
            }
            if (!reached[v]) {
                reached[v] = true;
                queue.push_back(v);
            }
        }
    }
    std::sort(red.admissible.begin(), red.admissible.end());

    Pigeon init = start && to_reduced[*start] ? *to_reduced[*start] : 0;
    red.reduced = SimpleStrategy{size, s, init, std::vector<Pigeon>(std::size_t(size.pigeons) * size.holes, 0)};
    for (Pigeon p = 0; p < size.pigeons; p++) {
        for (Hole h = 0; h < size.holes; h++) {
            Pigeon v = strat.at(red.pigeon_map[p], red.hole_map[h]);
            // escaping values are completed with the smallest legal pigeon
            red.reduced.set(p, h, to_reduced[v] ? *to_reduced[v] : 0);
        }
    }
    return red;
}

} // namespace

Reduction
commit_to_root(const SimpleStrategy& strat, Hole h)
{
    strat.validate();
    if (!strat.size.has_hole(h)) throw GameError("hole out of range");
    if (strat.s < 2) throw GameError("commit to the root needs s >= 2");
    std::vector<bool> keep_p(strat.size.pigeons, true), keep_h(strat.size.holes, true);
    keep_p[strat.init] = false;
    keep_h[h] = false;
    Pigeon next = strat.at(strat.init, h);
    auto red = restrict_table(strat, keep_p, keep_h, next, strat.s - 1);
    if (next == strat.init) red.escape = EdgeRef{strat.init, h};
    red.lead = {h};
    return red;
}

Reduction
forbid_holes(const SimpleStrategy& strat, const std::vector<Hole>& holes, const std::vector<Pigeon>& pigeons)
{
    strat.validate();
    if (holes.size() != pigeons.size()) throw GameError("forbid holes needs as many pigeons as holes");
    std::vector<bool> keep_p(strat.size.pigeons, true), keep_h(strat.size.holes, true);
    for (auto h : holes) {
        if (!strat.size.has_hole(h) || !keep_h[h]) throw GameError("forbidden holes must be distinct and in range");
        keep_h[h] = false;
    }
    for (auto p : pigeons) {
        if (!strat.size.has_pigeon(p) || !keep_p[p]) throw GameError("forbidden pigeons must be distinct and in range");
        keep_p[p] = false;
    }
    return restrict_table(strat, keep_p, keep_h, strat.init, strat.s);
}

namespace {

/** Shortest approach as a list of edges, by BFS over last edges. */
std::optional<std::vector<EdgeRef>>
approach_path(const SimpleStrategy& strat, Pigeon p, Hole h)
{
    strat.validate();
    if (!strat.size.has_pigeon(p) || !strat.size.has_hole(h)) throw GameError("loop out of range");
    if (strat.init == p) return std::vector<EdgeRef>{};
    const std::uint32_t holes = strat.size.holes;
    std::vector<std::optional<std::size_t>> parent(std::size_t(strat.size.pigeons) * holes);
    std::vector<bool> seen(parent.size(), false);
    std::deque<std::size_t> queue;
    for (Hole l = 0; l < holes; l++) {
        if (l == h) continue;
        std::size_t e = strat.init * holes + l;
        seen[e] = true;
        queue.push_back(e);
    }
    auto unwind = [&](std::size_t e) {
        std::vector<EdgeRef> path;
        for (std::optional<std::size_t> cur = e; cur; cur = parent[*cur]) {
            path.push_back({Pigeon(*cur / holes), Hole(*cur % holes)});
        }
        std::reverse(path.begin(), path.end());
        return path;
    };
    while (!queue.empty()) {
        std::size_t e = queue.front();
        queue.pop_front();
        EdgeRef a{Pigeon(e / holes), Hole(e % holes)};
        Pigeon q = strat.at(a.tail, a.label);
        if (q == p) return unwind(e);
        for (Hole l = 0; l < holes; l++) {
            if (l == h) continue;
            std::size_t e2 = q * holes + l;
            if (seen[e2] || !edges_compatible(a, {q, l})) continue;
            seen[e2] = true;
            parent[e2] = e;
            queue.push_back(e2);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<std::vector<EdgeRef>>
loop_approach(const SimpleStrategy& strat, Pigeon p, Hole h)
{
    return approach_path(strat, p, h);
}

std::optional<std::size_t>
loop_approach_length(const SimpleStrategy& strat, Pigeon p, Hole h)
{
    auto path = approach_path(strat, p, h);
    if (!path) return std::nullopt;
    return path->size();
}

std::optional<Play>
loop_play(const SimpleStrategy& strat, Pigeon p, Hole h, std::uint32_t s)
{
    if (strat.at(p, h) != p) throw GameError("(p,h) is not a loop");
    auto path = approach_path(strat, p, h);
    if (!path || s <= path->size()) return std::nullopt;
    Play play;
    for (const auto& e : *path) play.answers.push_back(e.label);
    while (play.answers.size() < s) play.answers.push_back(h);
    return play;
}

bool
canonical_loop_exists(const SimpleStrategy& strat)
{
    const std::uint32_t holes = strat.size.holes;
    std::uint64_t on_path = 0;
    std::uint32_t used = 0;
    auto dfs = [&](auto& self, Pigeon p) -> bool {
        on_path |= std::uint64_t(1) << p;
        for (Hole h = 0; h < holes; h++) {
            if (used >> h & 1) continue;
            Pigeon q = strat.table[p * holes + h];
            if (on_path >> q & 1) return true;
            used |= 1u << h;
            bool hit = self(self, q);
            used &= ~(1u << h);
            if (hit) return true;
        }
        on_path &= ~(std::uint64_t(1) << p);
        return false;
    };
    if (strat.size.pigeons > 64 || holes > 32) throw GameError("canonical loop search supports at most 64 pigeons");
    return dfs(dfs, strat.init);
}

static std::string
node_path(const PhpTree& t, std::size_t v)
{
    Vertex path;
    for (std::optional<std::size_t> u = v; t.nodes[*u].parent; u = t.nodes[*u].parent) {
        const auto& sib = t.nodes[*t.nodes[*u].parent].children;
        path.push_back(std::find(sib.begin(), sib.end(), *u) - sib.begin() + 1);
    }
    std::reverse(path.begin(), path.end());
    return to_string(path);
}

void
write_php_tree(std::ostream& os, const PhpTree& t)
{
    for (std::size_t v = 0; v < t.nodes.size(); v++) os << node_path(t, v) << " label=" << t.nodes[v].label << "\n";
    for (std::size_t v = 1; v < t.nodes.size(); v++) os << "edge " << node_path(t, v) << " " << t.nodes[v].edge << "\n";
}

PhpTree
read_php_tree(std::istream& is, const GameSize& size)
{
    LineReader reader(is);
    std::map<Vertex, Pigeon> labels;
    std::map<Vertex, Hole> edges;
    while (auto toks = reader.next_tokens()) {
        const auto& first = (*toks)[0];
        if (first.text == "edge") {
            if (toks->size() != 3) reader.fail(first, "expected 'edge <dot-path> <hole>'");
            Vertex v;
            try {
                v = parse_vertex((*toks)[1].text);
            } catch (const GameError& e) {
                reader.fail((*toks)[1], e.what());
            }
            if (v.empty()) reader.fail((*toks)[1], "the root has no incoming edge");
            if (!edges.emplace(v, Hole(parse_uint(reader, (*toks)[2], size.holes - 1))).second) {
                reader.fail((*toks)[1], "duplicate edge line");
            }
            continue;
        }
        if (toks->size() != 2 || (*toks)[1].text.rfind("label=", 0) != 0) {
            reader.fail(first, "expected '<dot-path> label=<pigeon>'");
        }
        Vertex v;
        try {
            v = parse_vertex(first.text);
        } catch (const GameError& e) {
            reader.fail(first, e.what());
        }
        Token num{(*toks)[1].text.substr(6), (*toks)[1].column + 6};
        if (!labels.emplace(v, Pigeon(parse_uint(reader, num, size.pigeons - 1))).second) {
            reader.fail(first, "duplicate node line");
        }
    }
    std::size_t end = reader.line() + 1;
    if (!labels.count(Vertex{})) throw ParseError(end, 1, "missing the root line '- label=<p>'");
    PhpTree t(size, labels.at(Vertex{}));
    std::map<Vertex, std::size_t> ids{{Vertex{}, 0}};
    for (const auto& [v, label] : labels) {
        if (v.empty()) continue;
        Vertex parent(v.begin(), v.end() - 1);
        auto pit = ids.find(parent);
        if (pit == ids.end()) throw ParseError(end, 1, "node " + to_string(v) + " has no parent");
        if (t.nodes[pit->second].children.size() + 1 != v.back()) {
            throw ParseError(end, 1, "children of " + to_string(parent) + " are not numbered 1, 2, ...");
        }
        auto eit = edges.find(v);
        if (eit == edges.end()) throw ParseError(end, 1, "node " + to_string(v) + " has no edge line");
        ids[v] = t.add_child(pit->second, eit->second, label);
    }
    if (edges.size() + 1 != labels.size()) throw ParseError(end, 1, "edge line for a missing node");
    return t;
}

} // namespace pebble
