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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace pebble;

namespace {

const std::filesystem::path kData = PEBBLE_DATA_DIR;

SimpleStrategy
random_table(std::uint32_t n, std::uint32_t s, std::mt19937_64& rng)
{
    std::uniform_int_distribution<Pigeon> pick(0, n);
    auto st = SimpleStrategy::all_loops(GameSize::standard(n), s, pick(rng));
    for (auto& cell : st.table) cell = pick(rng);
    return st;
}

SimpleStrategy
fig1(std::uint32_t s = 3)
{
    std::ifstream in(kData / "fig1.strat");
    auto st = read_strategy(in);
    st.s = s;
    return st;
}

PhpTree
php1()
{
    std::ifstream in(kData / "php1.tree");
    return read_php_tree(in, GameSize::standard(3));
}

std::vector<std::size_t>
root_path(const PhpTree& t, std::size_t v)
{
    std::vector<std::size_t> out;
    for (std::optional<std::size_t> u = v; u; u = t.nodes[*u].parent) out.push_back(*u);
    std::reverse(out.begin(), out.end());
    return out;
}

bool
clash(const Record& a, const Record& b)
{
    return (a.pigeon == b.pigeon) != (a.hole == b.hole);
}

/**
 * Whether some canonical anti-strategy wins at length s: repeated questions
 * get their first answer, fresh ones any unused hole, and hole 0 once every
 * hole is used. Without allow_give_up, plays that reach that last case do
 * not count.
 */
bool
some_canonical_play_wins(const SimpleStrategy& st, std::uint32_t s, bool allow_give_up = false)
{
    std::vector<Record> recs;
    std::vector<std::optional<Hole>> first(st.size.pigeons);
    std::vector<bool> used(st.size.holes, false);
    auto rec = [&](auto& self, Pigeon q) -> bool {
        if (recs.size() == s) {
            for (std::size_t i = 1; i < recs.size(); i++) {
                if (clash(recs[i - 1], recs[i])) return false;
            }
            for (std::size_t i = 0; i + 1 < recs.size(); i++) {
                if (clash(recs[i], recs.back())) return false;
            }
            return true;
        }
        std::vector<Hole> options;
        if (first[q]) options = {*first[q]};
        else {
            for (Hole h = 0; h < st.size.holes; h++) {
                if (!used[h]) options.push_back(h);
            }
            if (options.empty()) {
                if (!allow_give_up) return false;
                options = {0};
            }
        }
        for (auto h : options) {
            bool fresh = !first[q] && !used[h];
            if (fresh) {
                first[q] = h;
                used[h] = true;
            }
            recs.push_back({q, h});
            bool win = self(self, st.at(q, h));
            recs.pop_back();
            if (fresh) {
                first[q].reset();
                used[h] = false;
            }
            if (win) return true;
        }
        return false;
    };
    return rec(rec, st.init);
}

} // namespace

TEST(BuildPhpTree, AllLoopsGivesSingleRoot)
{
    auto t = build_php_tree(SimpleStrategy::all_loops(GameSize::standard(3), 4, 2));
    ASSERT_EQ(t.nodes.size(), 1u);
    EXPECT_EQ(t.nodes[0].label, 2u);
    EXPECT_TRUE(validate_php_tree(t));
    EXPECT_FALSE(is_complete(t));
    EXPECT_TRUE(is_symmetric(t));
    EXPECT_EQ(find_loose_pairs(t).size(), 12u);
}

TEST(BuildPhpTree, ChainTable)
{
    // 3 -[2]-> 2 -[1]-> 1 -[0]-> 0, every other value returns to the asking pigeon
    auto st = SimpleStrategy::all_loops(GameSize::standard(3), 4, 3);
    st.set(3, 2, 2);
    st.set(2, 1, 1);
    st.set(1, 0, 0);
    auto t = build_php_tree(st);
    EXPECT_EQ(t.depth(), 3u);
    EXPECT_EQ(t.nodes.size(), 4u);
    std::vector<Pigeon> labels;
    for (auto v : root_path(t, t.nodes.size() - 1)) labels.push_back(t.nodes[v].label);
    EXPECT_EQ(labels, (std::vector<Pigeon>{3, 2, 1, 0}));
}

TEST(BuildPhpTree, FollowsConstructionRule)
{
    std::mt19937_64 rng(23);
    for (std::uint32_t n : {3u, 4u}) {
        for (int trial = 0; trial < 1000; trial++) {
            auto st = random_table(n, n + 1, rng);
            auto t = build_php_tree(st);
            ASSERT_TRUE(validate_php_tree(t));
            ASSERT_TRUE(is_symmetric(t));
            EXPECT_EQ(t.nodes[0].label, st.init);
            for (std::size_t v = 0; v < t.nodes.size(); v++) {
                auto path = root_path(t, v);
                std::set<Pigeon> seen_p;
                std::set<Hole> seen_h;
                for (auto u : path) {
                    seen_p.insert(t.nodes[u].label);
                    if (t.nodes[u].parent) seen_h.insert(t.nodes[u].edge);
                }
                std::set<Hole> expect;
                for (Hole h = 0; h < n; h++) {
                    if (!seen_h.count(h) && !seen_p.count(st.at(t.nodes[v].label, h))) expect.insert(h);
                }
                std::set<Hole> got;
                for (auto c : t.nodes[v].children) {
                    got.insert(t.nodes[c].edge);
                    ASSERT_EQ(t.nodes[c].label, st.at(t.nodes[v].label, t.nodes[c].edge));
                }
                ASSERT_EQ(got, expect);
            }
        }
    }
}

TEST(PhpTreePredicates, FigureTree)
{
    auto t = php1();
    EXPECT_TRUE(validate_php_tree(t));
    EXPECT_FALSE(is_complete(t));
    EXPECT_FALSE(is_symmetric(t));
    auto loose = find_loose_pairs(t);
    EXPECT_TRUE(std::count(loose.begin(), loose.end(), EdgeRef{0, 1}));
    EXPECT_FALSE(std::count(loose.begin(), loose.end(), EdgeRef{0, 0}));
    EXPECT_FALSE(std::count(loose.begin(), loose.end(), EdgeRef{0, 2}));
}

TEST(PhpTreePredicates, InvalidTrees)
{
    PhpTree repeated_edge(GameSize::standard(3), 0);
    auto a = repeated_edge.add_child(0, 1, 1);
    repeated_edge.add_child(a, 1, 2);
    EXPECT_FALSE(validate_php_tree(repeated_edge));

    PhpTree repeated_label(GameSize::standard(3), 0);
    auto b = repeated_label.add_child(0, 1, 1);
    repeated_label.add_child(b, 2, 0);
    EXPECT_FALSE(validate_php_tree(repeated_label));

    PhpTree wide(GameSize::standard(2), 0);
    auto c = wide.add_child(0, 0, 1);
    wide.add_child(c, 1, 2);
    wide.add_child(c, 1, 3 - 1);
    EXPECT_FALSE(validate_php_tree(wide));

    PhpTree single(GameSize::standard(2), 1);
    EXPECT_TRUE(validate_php_tree(single));
    EXPECT_FALSE(is_complete(single));
    EXPECT_TRUE(is_symmetric(single));
}

TEST(PhpTreePredicates, CompleteTreeHasNoLoosePairs)
{
    // n = 2: F(p,h) = the smallest pigeon not in {p} reachable fresh
    auto st = SimpleStrategy::all_loops(GameSize::standard(2), 3, 0);
    st.set(0, 0, 1);
    st.set(0, 1, 2);
    st.set(1, 0, 2);
    st.set(1, 1, 2);
    st.set(2, 0, 1);
    st.set(2, 1, 1);
    auto t = build_php_tree(st);
    EXPECT_TRUE(is_complete(t));
    // every (p,h) appears somewhere except the ones the tree cannot reach
    for (const auto& lp : find_loose_pairs(t)) {
        for (const auto& node : t.nodes) {
            for (auto ch : node.children) {
                EXPECT_FALSE(node.label == lp.tail && t.nodes[ch].edge == lp.label);
            }
        }
    }
}

TEST(PhpTreePredicates, CompletenessMatchesCanonicalPlays)
{
    std::mt19937_64 rng(31);
    int complete = 0;
    for (int trial = 0; trial < 400; trial++) {
        auto st = random_table(3, 4, rng);
        if (trial % 2) {
            // a single 4-cycle through all pigeons, sometimes with one cell changed
            std::vector<Pigeon> order{0, 1, 2, 3};
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t i = 0; i < 4; i++) {
                for (Hole h = 0; h < 3; h++) st.set(order[i], h, order[(i + 1) % 4]);
            }
            if (trial % 4 == 1) st.set(Pigeon(rng() % 4), Hole(rng() % 3), Pigeon(rng() % 4));
        }
        bool c = is_complete(build_php_tree(st));
        complete += c;
        for (std::uint32_t s : {4u, 5u, 7u}) {
            ASSERT_EQ(c, !some_canonical_play_wins(st, s)) << "trial " << trial << " s=" << s;
        }
    }
    EXPECT_GT(complete, 50);
    EXPECT_LT(complete, 350);
}

TEST(PhpTreePredicates, GivingUpCanStillWin)
{
    // complete tree, yet the Delayer that gives up at round 4 wins at s = 5
    auto st = SimpleStrategy::all_loops(GameSize::standard(3), 5, 2);
    std::vector<Pigeon> cells{2, 2, 1, 3, 3, 3, 1, 1, 1, 0, 0, 0};
    st.table = cells;
    EXPECT_TRUE(is_complete(build_php_tree(st)));
    EXPECT_FALSE(some_canonical_play_wins(st, 5));
    EXPECT_TRUE(some_canonical_play_wins(st, 5, true));
    EXPECT_EQ(play_simplified(st, {{1, 0, 2, 0, 1}}).tag, PlayTag::DelayerWins);
}

TEST(CommitToRoot, ArityAndRelabeling)
{
    auto st = fig1(5);
    auto red = commit_to_root(st, 2);
    EXPECT_EQ(red.reduced.size.holes, 2u);
    EXPECT_EQ(red.reduced.size.pigeons, 3u);
    EXPECT_EQ(red.reduced.table.size(), 6u);
    EXPECT_EQ(red.reduced.s, 4u);
    EXPECT_EQ(red.pigeon_map, (std::vector<Pigeon>{1, 2, 3}));
    EXPECT_EQ(red.hole_map, (std::vector<Hole>{0, 1}));
    EXPECT_EQ(red.lead, (std::vector<Hole>{2}));
    EXPECT_EQ(red.pigeon_map[red.reduced.init], st.at(st.init, 2));
    for (const auto& e : red.admissible) {
        auto rp = std::find(red.pigeon_map.begin(), red.pigeon_map.end(), e.tail) - red.pigeon_map.begin();
        auto rh = std::find(red.hole_map.begin(), red.hole_map.end(), e.label) - red.hole_map.begin();
        if (red.closed) {
            EXPECT_EQ(red.pigeon_map[red.reduced.at(Pigeon(rp), Hole(rh))], st.at(e.tail, e.label));
        }
    }
    EXPECT_THROW(commit_to_root(fig1(1), 0), GameError);
    EXPECT_THROW(commit_to_root(st, 3), GameError);

    auto self = SimpleStrategy::all_loops(GameSize::standard(3), 4, 0);
    auto r2 = commit_to_root(self, 1);
    EXPECT_FALSE(r2.closed);
    ASSERT_TRUE(r2.escape.has_value());
    EXPECT_EQ(*r2.escape, (EdgeRef{0, 1}));
}

TEST(Reductions, DelayerWinsTransfer)
{
    std::mt19937_64 rng(41);
    int transferred = 0;
    for (int trial = 0; trial < 3000; trial++) {
        auto st = random_table(3, 5, rng);
        for (Hole h = 0; h < 3; h++) {
            auto red = commit_to_root(st, h);
            if (!red.closed) continue;
            auto w = find_delayer_witness(red.reduced, red.reduced.s);
            if (!w) continue;
            auto lifted = red.lift(*w);
            ASSERT_EQ(lifted.answers.size(), st.s);
            ASSERT_EQ(play_simplified(st, lifted).tag, PlayTag::DelayerWins);
            transferred++;
        }
        Pigeon other = st.init == 3 ? 2 : 3;
        auto fb = forbid_holes(st, {0}, {other});
        EXPECT_EQ(fb.reduced.size.holes, 2u);
        EXPECT_EQ(fb.reduced.size.pigeons, 3u);
        EXPECT_EQ(fb.reduced.s, st.s);
        if (!fb.closed) continue;
        auto w = find_delayer_witness(fb.reduced, fb.reduced.s);
        if (!w) continue;
        ASSERT_EQ(play_simplified(st, fb.lift(*w)).tag, PlayTag::DelayerWins);
        transferred++;
    }
    EXPECT_GT(transferred, 100);
}

TEST(ForbidHoles, RejectsBadArguments)
{
    auto st = fig1(4);
    EXPECT_THROW(forbid_holes(st, {0, 1}, {1}), GameError);
    EXPECT_THROW(forbid_holes(st, {0, 0}, {1, 2}), GameError);
    EXPECT_THROW(forbid_holes(st, {5}, {1}), GameError);
    auto r = forbid_holes(st, {0}, {3});
    EXPECT_EQ(r.hole_map, (std::vector<Hole>{1, 2}));
    EXPECT_EQ(r.pigeon_map, (std::vector<Pigeon>{0, 1, 2}));
    EXPECT_TRUE(r.lead.empty());
}

TEST(LoopPlay, FigureOne)
{
    auto st = fig1(8);
    auto len = loop_approach_length(st, 2, 0);
    ASSERT_TRUE(len.has_value());
    EXPECT_EQ(*len, 2u);
    auto path = loop_approach(st, 2, 0);
    ASSERT_TRUE(path.has_value());
    EXPECT_EQ(path->size(), 2u);
    for (const auto& e : *path) EXPECT_NE(e.label, 0u);
    for (std::uint32_t s = 3; s <= 8; s++) {
        st.s = s;
        auto play = loop_play(st, 2, 0, s);
        ASSERT_TRUE(play.has_value());
        EXPECT_EQ(play_simplified(st, *play).tag, PlayTag::DelayerWins) << s;
    }
    EXPECT_FALSE(loop_play(st, 2, 0, 2).has_value());
    EXPECT_THROW(loop_play(st, 0, 0, 5), GameError);
    EXPECT_TRUE(canonical_loop_exists(st));
}

TEST(LoopPlay, ApproachBoundAtThree)
{
    // every loop at n = 3 is approached within 2(n-2)+1 = 3 steps when it is approachable
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20000; trial++) {
        auto st = random_table(3, 8, rng);
        for (const auto& lp : find_loops(st)) {
            auto path = loop_approach(st, lp.tail, lp.label);
            if (!path) continue;
            ASSERT_LE(path->size(), 3u);
            auto pc = path_consistency(st, *path);
            if (!path->empty()) {
                ASSERT_TRUE(pc.is_path);
                ASSERT_TRUE(pc.locally_consistent);
            }
            auto play = loop_play(st, lp.tail, lp.label, 8);
            ASSERT_TRUE(play.has_value());
            ASSERT_EQ(play_simplified(st, *play).tag, PlayTag::DelayerWins);
        }
    }
}

TEST(PhpTreeText, RoundTripAndErrors)
{
    auto t = php1();
    std::stringstream ss;
    write_php_tree(ss, t);
    auto back = read_php_tree(ss, GameSize::standard(3));
    ASSERT_EQ(back.nodes.size(), t.nodes.size());
    std::stringstream again;
    write_php_tree(again, back);
    std::stringstream first;
    write_php_tree(first, t);
    EXPECT_EQ(again.str(), first.str());

    std::istringstream bad("- label=0\n1 label=1\nedge 1 9\n");
    try {
        read_php_tree(bad, GameSize::standard(3));
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 8u);
    }
    std::istringstream missing("- label=0\n1 label=1\n");
    EXPECT_THROW(read_php_tree(missing, GameSize::standard(3)), ParseError);
}
