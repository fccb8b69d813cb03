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

#include "pebble/game_g1.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

using namespace pebble;

namespace {

G1Position
position_of(std::vector<Matching> ms)
{
    G1Position pos;
    for (auto& m : ms) pos.history.push_back(std::move(m));
    return pos;
}

std::vector<Query>
small_queries(const GameSize& size, std::size_t max_items)
{
    std::vector<QueryItem> items;
    for (Pigeon p = 0; p < size.pigeons; p++) items.push_back(QueryItem::pigeon(p));
    for (Hole h = 0; h < size.holes; h++) items.push_back(QueryItem::hole(h));
    std::vector<Query> out{Query{}};
    for (std::size_t i = 0; i < items.size(); i++) {
        out.push_back({items[i]});
        if (max_items < 2) continue;
        for (std::size_t j = i + 1; j < items.size(); j++) out.push_back({items[i], items[j]});
    }
    return out;
}

} // namespace

TEST(G1Step, Examples)
{
    LogPower cfg(3, 2);
    G1Position start;
    auto a = g1_step(start, {QueryItem::pigeon(0)}, Matching::of({{0, 1}}), cfg);
    EXPECT_EQ(a.tag, G1Tag::Ongoing);
    ASSERT_EQ(a.position.history.size(), 2u);
    EXPECT_TRUE(a.position.history[0].empty());
    EXPECT_EQ(a.position.last(), Matching::of({{0, 1}}));

    auto b = g1_step(a.position, {QueryItem::pigeon(1)}, Matching::of({{1, 1}}), cfg);
    EXPECT_EQ(b.tag, G1Tag::ProverWins);
}

TEST(G1Step, CapRule)
{
    LogPower cfg = LogPower(3, 2).with_cap(3);
    auto pos = position_of({Matching::of({{0, 0}}), Matching::of({{1, 1}})});
    ASSERT_EQ(pos.history.size(), 3u);
    auto out = g1_step(pos, {QueryItem::pigeon(2)}, Matching::of({{2, 2}}), cfg);
    EXPECT_EQ(out.tag, G1Tag::DelayerWinsAtCap);

    auto shorter = position_of({Matching::of({{0, 0}})});
    EXPECT_EQ(g1_step(shorter, {QueryItem::pigeon(2)}, Matching::of({{2, 2}}), cfg).tag, G1Tag::Ongoing);
}

TEST(G1Step, RejectsMalformedAnswers)
{
    LogPower cfg(3, 1);
    G1Position start;
    // not covering
    EXPECT_THROW(g1_step(start, {QueryItem::pigeon(0)}, Matching::of({{1, 0}}), cfg), GameError);
    // not minimal
    EXPECT_THROW(g1_step(start, {QueryItem::pigeon(0)}, Matching::of({{0, 0}, {1, 1}}), cfg), GameError);
    // query over |n|^C = 2
    Query big{QueryItem::pigeon(0), QueryItem::pigeon(1), QueryItem::pigeon(2)};
    EXPECT_THROW(g1_step(start, big, Matching::of({{0, 0}, {1, 1}, {2, 2}}), cfg), GameError);
    // out of range
    EXPECT_THROW(g1_step(start, {QueryItem::pigeon(7)}, Matching::of({{7, 0}}), cfg), GameError);
}

TEST(G1Delayer, Examples)
{
    LogPower cfg(8, 1);
    G1Position start;
    auto m = g1_delayer_canonical(start, {QueryItem::pigeon(0), QueryItem::pigeon(1)}, cfg);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_NE(m.records()[0].hole, m.records()[1].hole);

    EXPECT_TRUE(g1_delayer_canonical(start, {}, cfg).empty());

    auto pos = position_of({Matching::of({{0, 3}, {4, 5}})});
    EXPECT_EQ(g1_delayer_canonical(pos, {QueryItem::hole(5)}, cfg), Matching::of({{4, 5}}));
}

TEST(G1Delayer, NeverLosesWhenTwiceWidthAtMostN)
{
    // 2|n|^C = 8 <= n = 8. The next position depends only on the last matching,
    // so exploring (last matching, rounds left) covers every query sequence.
    LogPower cfg(8, 1);
    ASSERT_EQ(cfg.width(), 4u);
    auto size = GameSize::standard(8);
    auto queries = small_queries(size, 2);
    ASSERT_EQ(queries.size(), 1u + 17 + 136);

    std::set<std::pair<Matching, int>> seen;
    std::uint64_t rounds = 0;
    auto explore = [&](auto& self, const Matching& last, int left) -> void {
        if (left == 0 || !seen.insert({last, left}).second) return;
        G1Position pos = position_of({last});
        for (const auto& q : queries) {
            auto answer = g1_delayer_canonical(pos, q, cfg);
            ASSERT_TRUE(is_minimal_cover(answer, normalize_query(q)));
            auto out = g1_step(pos, q, answer, cfg);
            ASSERT_EQ(out.tag, G1Tag::Ongoing) << "query " << to_string(q) << " after " << to_string(last);
            rounds++;
            self(self, answer, left - 1);
        }
    };
    explore(explore, Matching{}, 4);
    EXPECT_GT(rounds, 1000u);
}

TEST(G1Transcript, RoundTripAndReplay)
{
    G1Transcript t;
    t.n = 3;
    t.c = 2;
    t.rounds.push_back({{QueryItem::pigeon(0)}, Matching::of({{0, 1}})});
    t.rounds.push_back({{QueryItem::hole(2)}, Matching::of({{3, 2}})});
    std::stringstream ss;
    write_g1_transcript(ss, t);
    EXPECT_EQ(ss.str(), "game g1\nn 3\nC 2\nquery: p0\nanswer: 0:1\nquery: h2\nanswer: 3:2\n");
    auto back = read_g1_transcript(ss);
    EXPECT_EQ(back.n, 3u);
    ASSERT_EQ(back.rounds.size(), 2u);
    EXPECT_EQ(back.rounds[1].answer, Matching::of({{3, 2}}));
    EXPECT_EQ(g1_replay(back).tag, G1Tag::Ongoing);

    // only the last matching counts: reusing hole 1 is fine, hole 2 is not
    t.rounds.push_back({{QueryItem::pigeon(1)}, Matching::of({{1, 1}})});
    EXPECT_EQ(g1_replay(t).tag, G1Tag::Ongoing);
    t.rounds.back() = {{QueryItem::pigeon(1)}, Matching::of({{1, 2}})};
    EXPECT_EQ(g1_replay(t).tag, G1Tag::ProverWins);
}

TEST(G1Transcript, ParseErrorsCarryPosition)
{
    std::istringstream bad("game g1\nn 3\nC 2\nquery: p0\nanswer: 0-1\n");
    try {
        read_g1_transcript(bad);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 5u);
        EXPECT_EQ(e.column(), 9u);
    }
    EXPECT_THROW(parse_query_item("x3"), GameError);
    EXPECT_EQ(parse_query_item("h2"), QueryItem::hole(2));
}
