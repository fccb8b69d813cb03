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

#include "pebble/simple_game.hpp"
#include "pebble/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pebble {

SimpleStrategy
SimpleStrategy::all_loops(const GameSize& size, std::uint32_t s, Pigeon init)
{
    SimpleStrategy st{size, s, init, std::vector<Pigeon>(std::size_t(size.pigeons) * size.holes)};
    for (Pigeon p = 0; p < size.pigeons; p++) {
        for (Hole h = 0; h < size.holes; h++) st.set(p, h, p);
    }
    return st;
}

void
SimpleStrategy::validate() const
{
    if (s < 1) throw GameError("strategy needs s >= 1");
    if (!size.has_pigeon(init)) throw GameError("initial pigeon out of range");
    if (table.size() != std::size_t(size.pigeons) * size.holes) throw GameError("table is not total");
    for (auto q : table) {
        if (!size.has_pigeon(q)) throw GameError("table value out of range");
    }
}

bool
edges_compatible(const EdgeRef& e, const EdgeRef& e2)
{
    return !records_conflict(e.record(), e2.record());
}

const char*
to_string(PlayTag t)
{
    switch (t) {
    case PlayTag::ProverWinsMidgame: return "ProverWinsMidgame";
    case PlayTag::ProverWinsFinal: return "ProverWinsFinal";
    case PlayTag::DelayerWins: return "DelayerWins";
    case PlayTag::Incomplete: return "Incomplete";
    }
    return "?";
}

PlayOutcome
play_simplified(const SimpleStrategy& strat, const Play& play)
{
    strat.validate();
    if (play.answers.size() > strat.s) throw GameError("play has more than s answers");
    PlayOutcome out;
    Pigeon q = strat.init;
    for (std::size_t i = 1; i <= play.answers.size(); i++) {
        Hole h = play.answers[i - 1];
        if (!strat.size.has_hole(h)) throw GameError("answer out of range");
        Record rec{q, h};
        if (i > 1 && records_conflict(rec, out.records.back())) {
            out.records.push_back(rec);
            out.tag = PlayTag::ProverWinsMidgame;
            out.step = i;
            return out;
        }
        out.records.push_back(rec);
        if (i == strat.s) {
            for (std::size_t j = 0; j + 1 < out.records.size(); j++) {
                if (records_conflict(rec, out.records[j])) {
                    out.tag = PlayTag::ProverWinsFinal;
                    return out;
                }
            }
            out.tag = PlayTag::DelayerWins;
            return out;
        }
        q = strat.at(q, h);
    }
    out.tag = PlayTag::Incomplete;
    return out;
}

StrategyGraph
build_graph(const SimpleStrategy& strat)
{
    strat.validate();
    StrategyGraph g;
    g.nodes = strat.size.pigeons;
    g.initial = strat.init;
    g.out.resize(g.nodes);
    for (Pigeon p = 0; p < g.nodes; p++) {
        for (Hole h = 0; h < strat.size.holes; h++) {
            g.out[p].push_back(g.edges.size());
            g.edges.push_back({p, h, strat.at(p, h)});
        }
    }
    return g;
}

PathConsistency
path_consistency(const SimpleStrategy& strat, const std::vector<EdgeRef>& path)
{
    PathConsistency pc;
    pc.is_path = true;
    Pigeon at = strat.init;
    for (const auto& e : path) {
        if (!strat.size.has_pigeon(e.tail) || !strat.size.has_hole(e.label) || e.tail != at) {
            pc.is_path = false;
            break;
        }
        at = strat.at(e.tail, e.label);
    }
    pc.locally_consistent = true;
    for (std::size_t i = 1; i < path.size(); i++) {
        if (!edges_compatible(path[i - 1], path[i])) pc.locally_consistent = false;
    }
    pc.globally_consistent = true;
    for (std::size_t i = 0; i < path.size(); i++) {
        for (std::size_t j = i + 1; j < path.size(); j++) {
            if (!edges_compatible(path[i], path[j])) pc.globally_consistent = false;
        }
    }
    pc.last_edge_globally_consistent = true;
    for (std::size_t i = 0; i + 1 < path.size(); i++) {
        if (!edges_compatible(path[i], path.back())) pc.last_edge_globally_consistent = false;
    }
    return pc;
}

std::vector<EdgeRef>
find_loops(const SimpleStrategy& strat)
{
    std::vector<EdgeRef> loops;
    for (Pigeon p = 0; p < strat.size.pigeons; p++) {
        for (Hole h = 0; h < strat.size.holes; h++) {
            if (strat.at(p, h) == p) loops.push_back({p, h});
        }
    }
    return loops;
}

Hole
smallest_unused(const std::vector<Hole>& unused, std::size_t)
{
    return unused.front();
}

namespace {

/** State of a canonical Delayer during one play. */
struct CanonicalState
{
    std::vector<std::optional<Hole>> first;
    std::vector<bool> used;
    Play play;
    std::optional<std::size_t> gave_up_at;
    Pigeon question = 0;

    std::vector<Hole> unused() const
    {
        std::vector<Hole> out;
        for (Hole h = 0; h < used.size(); h++) {
            if (!used[h]) out.push_back(h);
        }
        return out;
    }

    void answer(const SimpleStrategy& strat, Hole h)
    {
        if (!first[question]) first[question] = h;
        used[h] = true;
        play.answers.push_back(h);
        question = strat.at(question, h);
    }
};

CanonicalState
start_canonical(const SimpleStrategy& strat)
{
    CanonicalState st;
    st.first.assign(strat.size.pigeons, std::nullopt);
    st.used.assign(strat.size.holes, false);
    st.question = strat.init;
    return st;
}

void
canonical_branches(const SimpleStrategy& strat, CanonicalState st, std::vector<CanonicalPlay>& out)
{
    while (st.play.answers.size() < strat.s) {
        if (st.first[st.question]) {
            st.answer(strat, *st.first[st.question]);
            continue;
        }
        auto free = st.unused();
        if (free.empty()) {
            if (!st.gave_up_at) st.gave_up_at = st.play.answers.size() + 1;
            st.answer(strat, 0);
            continue;
        }
        for (std::size_t i = 0; i + 1 < free.size(); i++) {
            CanonicalState branch = st;
            branch.answer(strat, free[i]);
            canonical_branches(strat, std::move(branch), out);
        }
        st.answer(strat, free.back());
    }
    out.push_back({st.play, play_simplified(strat, st.play), st.gave_up_at});
}

} // namespace

CanonicalPlay
canonical_antistrategy(const SimpleStrategy& strat, const HolePolicy& policy)
{
    strat.validate();
    auto st = start_canonical(strat);
    while (st.play.answers.size() < strat.s) {
        if (st.first[st.question]) {
            st.answer(strat, *st.first[st.question]);
            continue;
        }
        auto free = st.unused();
        if (free.empty()) {
            if (!st.gave_up_at) st.gave_up_at = st.play.answers.size() + 1;
            st.answer(strat, 0);
            continue;
        }
        Hole h = policy(free, st.play.answers.size() + 1);
        if (std::find(free.begin(), free.end(), h) == free.end()) throw GameError("hole policy picked a used hole");
        st.answer(strat, h);
    }
    return {st.play, play_simplified(strat, st.play), st.gave_up_at};
}

std::vector<CanonicalPlay>
enumerate_canonical_plays(const SimpleStrategy& strat)
{
    strat.validate();
    std::vector<CanonicalPlay> out;
    canonical_branches(strat, start_canonical(strat), out);
    return out;
}

std::optional<Play>
find_delayer_witness(const SimpleStrategy& strat, std::uint32_t s, double budget)
{
    strat.validate();
    if (s < 1) throw GameError("s must be positive");
    if (std::pow(double(strat.size.holes), double(s)) > budget) throw BudgetExceeded("n^s exceeds the search budget");
    std::vector<Record> recs;
    Play play;
    auto dfs = [&](auto& self, Pigeon q) -> bool {
        for (Hole h = 0; h < strat.size.holes; h++) {
            Record rec{q, h};
            if (!recs.empty() && records_conflict(recs.back(), rec)) continue;
            if (recs.size() + 1 == s) {
                bool ok = true;
                for (const auto& r : recs) {
                    if (records_conflict(r, rec)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    play.answers.push_back(h);
                    return true;
                }
                continue;
            }
            recs.push_back(rec);
            play.answers.push_back(h);
            if (self(self, strat.at(q, h))) return true;
            recs.pop_back();
            play.answers.pop_back();
        }
        return false;
    };
    if (dfs(dfs, strat.init)) return play;
    return std::nullopt;
}

bool
brute_force_delayer_wins(const SimpleStrategy& strat, std::uint32_t s, double budget)
{
    return find_delayer_witness(strat, s, budget).has_value();
}

SimpleStrategy
prover_small_n(std::uint32_t n, std::uint32_t s)
{
    if (n < 1 || n > 2) throw GameError("the small-n Prover exists only for n in {1, 2}");
    if (s < n + 1) throw GameError("the small-n Prover needs s >= n+1");
    auto st = SimpleStrategy::all_loops(GameSize::standard(n), s, 0);
    for (Hole h = 0; h < n; h++) {
        st.set(0, h, 1);
        if (n == 2) st.set(1, h, 2);
    }
    return st;
}

SimpleStrategy
subset_prover(std::uint32_t n)
{
    if (n < 1 || n > 16) throw GameError("subset Prover supports 1 <= n <= 16");
    auto size = GameSize::with_pigeons(n, std::uint32_t(1) << n);
    SimpleStrategy st{size, n + 1, 0, std::vector<Pigeon>(std::size_t(size.pigeons) * n)};
    for (Pigeon set = 0; set < size.pigeons; set++) {
        for (Hole h = 0; h < n; h++) st.set(set, h, set | (Pigeon(1) << h));
    }
    return st;
}

std::vector<EdgeRef>
PathSpec::unroll(std::size_t len) const
{
    std::vector<EdgeRef> out;
    for (std::size_t i = 0; i < len; i++) {
        if (i < prefix.size()) out.push_back(prefix[i]);
        else if (!cycle.empty()) out.push_back(cycle[(i - prefix.size()) % cycle.size()]);
        else break;
    }
    return out;
}

/** Heads implied by consecutive tails; throws if the specs disagree or a walk breaks. */
static std::map<EdgeRef, Pigeon>
implied_heads(const CoverSpec& spec)
{
    std::map<EdgeRef, Pigeon> head;
    auto note = [&](const EdgeRef& e, Pigeon h) {
        auto [it, fresh] = head.emplace(e, h);
        if (!fresh && it->second != h) {
            throw GameError("edge (" + std::to_string(e.tail) + "," + std::to_string(e.label) + ") has two heads");
        }
    };
    for (const auto& path : spec.paths) {
        if (path.cycle.empty()) throw GameError("a path spec needs a nonempty cycle");
        std::vector<EdgeRef> walk = path.prefix;
        walk.insert(walk.end(), path.cycle.begin(), path.cycle.end());
        if (walk.front().tail != spec.init) throw GameError("a path must start at the initial node");
        for (const auto& e : walk) {
            if (e.tail > spec.n || e.label >= spec.n) throw GameError("edge out of range");
        }
        for (std::size_t i = 0; i + 1 < walk.size(); i++) note(walk[i], walk[i + 1].tail);
        note(walk.back(), path.cycle.front().tail);
    }
    return head;
}

CoverReport
check_cover_by_two(const CoverSpec& spec)
{
    if (spec.paths.empty() || spec.paths.size() > 2) throw GameError("a cover uses one or two paths");
    implied_heads(spec);
    for (const auto& path : spec.paths) {
        for (const auto& e : path.red) {
            bool on_path = std::count(path.prefix.begin(), path.prefix.end(), e) ||
                           std::count(path.cycle.begin(), path.cycle.end(), e);
            if (!on_path) throw GameError("red edge is not on its path");
        }
    }
    CoverReport rep;
    rep.wins.assign(spec.paths.size(), {});
    for (std::size_t s = spec.threshold; s <= spec.threshold + spec.horizon; s++) {
        bool covered = false;
        for (std::size_t i = 0; i < spec.paths.size(); i++) {
            auto walk = spec.paths[i].unroll(s);
            if (walk.size() != s) throw GameError("path too short");
            for (std::size_t j = 1; j < walk.size(); j++) {
                if (!edges_compatible(walk[j - 1], walk[j])) {
                    rep.failure = "path " + std::to_string(i) + " is not locally consistent at length " + std::to_string(s);
                    return rep;
                }
            }
            bool consistent = true;
            for (std::size_t j = 0; j + 1 < walk.size(); j++) {
                if (!edges_compatible(walk[j], walk.back())) consistent = false;
            }
            bool red = spec.paths[i].red.count(walk.back()) != 0;
            if (red == consistent) {
                rep.failure = "coloring of path " + std::to_string(i) + " disagrees with consistency at length " +
                              std::to_string(s);
                return rep;
            }
            rep.wins[i].push_back(consistent);
            covered = covered || consistent;
        }
        if (!covered) {
            rep.failure = "no path wins at length " + std::to_string(s);
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

bool
check_cover_by_two(const PathSpec& a, const PathSpec& b, std::size_t threshold, std::size_t horizon, std::uint32_t n,
                   Pigeon init)
{
    CoverSpec spec{"", n, init, threshold, horizon, {a, b}};
    return check_cover_by_two(spec).ok;
}

void
write_strategy(std::ostream& os, const SimpleStrategy& strat)
{
    os << "game simple\nn " << strat.size.holes << "\n";
    if (strat.size.pigeons != strat.size.holes + 1) os << "pigeons " << strat.size.pigeons << "\n";
    os << "s " << strat.s << "\ninit " << strat.init << "\n";
    for (Pigeon p = 0; p < strat.size.pigeons; p++) {
        for (Hole h = 0; h < strat.size.holes; h++) os << "map " << p << " " << h << " -> " << strat.at(p, h) << "\n";
    }
}

SimpleStrategy
read_strategy(std::istream& is)
{
    LineReader reader(is);
    auto head = reader.next_tokens();
    if (!head || head->size() != 2 || (*head)[0].text != "game" || (*head)[1].text != "simple") {
        throw ParseError(reader.line() ? reader.line() : 1, 1, "expected 'game simple'");
    }
    std::optional<std::uint64_t> n, s, init, pigeons;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cells;
    while (auto toks = reader.next_tokens()) {
        const auto& key = (*toks)[0];
        if (key.text == "map") {
            if (!n) reader.fail(key, "'n' must precede the map lines");
            std::uint64_t pc = pigeons ? *pigeons : *n + 1;
            if (toks->size() != 5 || (*toks)[3].text != "->") reader.fail(key, "expected 'map <p> <h> -> <p'>'");
            auto p = parse_uint(reader, (*toks)[1], pc - 1);
            auto h = parse_uint(reader, (*toks)[2], *n - 1);
            auto q = parse_uint(reader, (*toks)[4], pc - 1);
            if (!cells.emplace(std::make_pair(p, h), q).second) reader.fail((*toks)[1], "duplicate map entry");
            continue;
        }
        std::optional<std::uint64_t>* slot = nullptr;
        if (key.text == "n") slot = &n;
        else if (key.text == "s") slot = &s;
        else if (key.text == "init") slot = &init;
        else if (key.text == "pigeons") slot = &pigeons;
        else reader.fail(key, "unknown key '" + key.text + "'");
        if (toks->size() != 2) reader.fail(key, "expected '" + key.text + " <int>'");
        if (slot->has_value()) reader.fail(key, "duplicate key '" + key.text + "'");
        if (!cells.empty()) reader.fail(key, "header keys must precede the map lines");
        *slot = parse_uint(reader, (*toks)[1], UINT32_MAX);
    }
    std::size_t end = reader.line() + 1;
    if (!n || !s || !init) throw ParseError(end, 1, "missing one of 'n', 's', 'init'");
    if (*n < 1) throw ParseError(end, 1, "n must be positive");
    if (*s < 1) throw ParseError(end, 1, "s must be positive");
    GameSize size = pigeons ? GameSize::with_pigeons(std::uint32_t(*n), std::uint32_t(*pigeons))
                            : GameSize::standard(std::uint32_t(*n));
    if (*init >= size.pigeons) throw ParseError(end, 1, "init out of range");
    if (cells.size() != std::size_t(size.pigeons) * size.holes) {
        throw ParseError(end, 1, "expected exactly " + std::to_string(std::size_t(size.pigeons) * size.holes) +
                                     " map lines, got " + std::to_string(cells.size()));
    }
    SimpleStrategy st{size, std::uint32_t(*s), Pigeon(*init), std::vector<Pigeon>(cells.size())};
    for (const auto& [key, q] : cells) st.set(Pigeon(key.first), Hole(key.second), Pigeon(q));
    return st;
}

void
write_play(std::ostream& os, const Play& play)
{
    os << "answers";
    for (auto h : play.answers) os << " " << h;
    os << "\n";
}

Play
read_play(std::istream& is)
{
    LineReader reader(is);
    auto toks = reader.next_tokens();
    if (!toks || (*toks)[0].text != "answers") throw ParseError(reader.line() ? reader.line() : 1, 1, "expected 'answers ...'");
    Play play;
    for (std::size_t i = 1; i < toks->size(); i++) play.answers.push_back(Hole(parse_uint(reader, (*toks)[i], UINT32_MAX)));
    if (auto extra = reader.next_tokens()) reader.fail((*extra)[0], "trailing content after the answers line");
    return play;
}

static EdgeRef
parse_edge(const LineReader& reader, const Token& t)
{
    auto colon = t.text.find(':');
    if (colon == std::string::npos) reader.fail(t, "edges look like tail:label");
    Token a{t.text.substr(0, colon), t.column};
    Token b{t.text.substr(colon + 1), t.column + colon + 1};
    return {Pigeon(parse_uint(reader, a, UINT32_MAX)), Hole(parse_uint(reader, b, UINT32_MAX))};
}

CoverSpec
read_cover_spec(std::istream& is)
{
    LineReader reader(is);
    CoverSpec spec;
    PathSpec* cur = nullptr;
    while (auto toks = reader.next_tokens()) {
        const auto& key = (*toks)[0];
        auto one = [&]() {
            if (toks->size() != 2) reader.fail(key, "expected '" + key.text + " <value>'");
            return parse_uint(reader, (*toks)[1], UINT32_MAX);
        };
        if (key.text == "figure") {
            if (toks->size() != 2) reader.fail(key, "expected 'figure <name>'");
            spec.name = (*toks)[1].text;
        } else if (key.text == "n") spec.n = std::uint32_t(one());
        else if (key.text == "init") spec.init = Pigeon(one());
        else if (key.text == "threshold") spec.threshold = one();
        else if (key.text == "horizon") spec.horizon = one();
        else if (key.text == "path") {
            if (toks->size() != 2) reader.fail(key, "expected 'path <name>'");
            spec.paths.emplace_back();
            cur = &spec.paths.back();
        } else if (key.text == "prefix" || key.text == "cycle") {
            if (!cur) reader.fail(key, "'" + key.text + "' outside a path");
            auto& dst = key.text == "prefix" ? cur->prefix : cur->cycle;
            for (std::size_t i = 1; i < toks->size(); i++) dst.push_back(parse_edge(reader, (*toks)[i]));
        } else if (key.text == "red") {
            if (!cur) reader.fail(key, "'red' outside a path");
            for (std::size_t i = 1; i < toks->size(); i++) cur->red.insert(parse_edge(reader, (*toks)[i]));
        } else {
            reader.fail(key, "unknown key '" + key.text + "'");
        }
    }
    if (spec.paths.empty()) throw ParseError(reader.line() + 1, 1, "no paths");
    return spec;
}

} // namespace pebble
