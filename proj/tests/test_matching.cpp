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

#include "pebble/matching.hpp"
#include "pebble/text_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace pebble;

namespace {

std::vector<Record>
all_records(const GameSize& size)
{
    std::vector<Record> out;
    for (Pigeon p = 0; p < size.pigeons; p++) {
        for (Hole h = 0; h < size.holes; h++) out.push_back({p, h});
    }
    return out;
}

/** Every matching with at most k records. */
std::vector<Matching>
all_matchings(const GameSize& size, std::size_t k)
{
    auto recs = all_records(size);
    std::vector<Matching> out;
    std::vector<Record> cur;
    auto rec = [&](auto& self, std::size_t from) -> void {
        if (auto m = Matching::try_of(cur)) out.push_back(*m);
        else return;
        if (cur.size() == k) return;
        for (std::size_t i = from; i < recs.size(); i++) {
            cur.push_back(recs[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

bool
covers_by_hand(const Matching& m, const Query& q)
{
    for (const auto& item : q) {
        bool hit = false;
        for (const auto& r : m) {
            if (item.kind == QueryItem::Kind::Pigeon ? r.pigeon == item.id : r.hole == item.id) hit = true;
        }
        if (!hit) return false;
    }
    return true;
}

} // namespace

TEST(RecordsConflict, Examples)
{
    EXPECT_TRUE(records_conflict({0, 0}, {1, 0}));
    EXPECT_TRUE(records_conflict({0, 0}, {0, 1}));
    EXPECT_FALSE(records_conflict({0, 0}, {1, 1}));
}

TEST(RecordsConflict, SymmetricAndIrreflexive)
{
    auto recs = all_records(GameSize::standard(3));
    for (const auto& a : recs) {
        EXPECT_FALSE(records_conflict(a, a));
        for (const auto& b : recs) EXPECT_EQ(records_conflict(a, b), records_conflict(b, a));
    }
}

TEST(Matching, RejectsNonInjective)
{
    EXPECT_THROW(Matching::of({{0, 1}, {1, 1}}), GameError);
    EXPECT_THROW(Matching::of({{0, 1}, {0, 2}}), GameError);
    EXPECT_FALSE(Matching::try_of({{2, 0}, {3, 0}}).has_value());
    auto m = Matching::of({{2, 1}, {0, 0}});
    EXPECT_EQ(m.records().front().pigeon, 0u);
    EXPECT_EQ(m.hole_of(2), 1u);
    EXPECT_EQ(m.pigeon_of(0), 0u);
    EXPECT_FALSE(m.hole_of(1).has_value());
}

TEST(MatchingsConsistent, Examples)
{
    EXPECT_TRUE(matchings_consistent(Matching{}, Matching::of({{2, 1}})));
    EXPECT_TRUE(matchings_consistent(Matching::of({{0, 0}}), Matching::of({{0, 0}})));
    EXPECT_FALSE(matchings_consistent(Matching::of({{0, 0}, {1, 1}}), Matching::of({{2, 1}})));
}

TEST(MatchingsConsistent, AgreesWithPairwiseConflictsUpToThreeRecords)
{
    auto ms = all_matchings(GameSize::standard(3), 3);
    // 1 + 4*3 + C(4,2)*3*2 + C(4,3)*3!
    ASSERT_EQ(ms.size(), 73u);
    for (std::size_t i = 0; i < ms.size(); i++) {
        for (std::size_t j = 0; j < ms.size(); j++) {
            bool pairwise = true;
            for (const auto& a : ms[i]) {
                for (const auto& b : ms[j]) pairwise = pairwise && !records_conflict(a, b);
            }
            ASSERT_EQ(matchings_consistent(ms[i], ms[j]), pairwise);
            ASSERT_EQ(ms[i].merged(ms[j]).has_value(), pairwise);
        }
    }
}

TEST(MinimalCovers, Examples)
{
    auto size = GameSize::standard(3);
    auto a = minimal_covers({QueryItem::pigeon(0)}, std::nullopt, size);
    std::vector<Matching> expect_a{Matching::of({{0, 0}}), Matching::of({{0, 1}}), Matching::of({{0, 2}})};
    std::sort(a.begin(), a.end());
    EXPECT_EQ(a, expect_a);

    auto b = minimal_covers({QueryItem::hole(0)}, std::nullopt, size);
    std::vector<Matching> expect_b{Matching::of({{0, 0}}), Matching::of({{1, 0}}), Matching::of({{2, 0}}),
                                   Matching::of({{3, 0}})};
    std::sort(b.begin(), b.end());
    EXPECT_EQ(b, expect_b);

    auto c = minimal_covers({QueryItem::pigeon(0)}, Matching::of({{0, 2}}), size);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0], Matching::of({{0, 2}}));
}

TEST(MinimalCovers, ExhaustiveAgainstBruteForce)
{
    for (std::uint32_t n = 1; n <= 4; n++) {
        auto size = GameSize::standard(n);
        std::vector<QueryItem> items;
        for (Pigeon p = 0; p <= n; p++) items.push_back(QueryItem::pigeon(p));
        for (Hole h = 0; h < n; h++) items.push_back(QueryItem::hole(h));
        auto ms = all_matchings(size, 2);
        for (std::size_t i = 0; i < items.size(); i++) {
            for (std::size_t j = i; j < items.size(); j++) {
                Query q = normalize_query({items[i], items[j]});
                // minimal: covers, and no single record can be dropped
                std::vector<Matching> expect;
                for (const auto& m : ms) {
                    if (!covers_by_hand(m, q)) continue;
                    bool minimal = true;
                    for (std::size_t k = 0; k < m.size(); k++) {
                        auto recs = m.records();
                        recs.erase(recs.begin() + k);
                        if (covers_by_hand(Matching::of(recs), q)) minimal = false;
                    }
                    if (minimal) expect.push_back(m);
                }
                auto got = minimal_covers(q, std::nullopt, size);
                std::sort(got.begin(), got.end());
                std::sort(expect.begin(), expect.end());
                ASSERT_EQ(got, expect) << "n=" << n << " q=" << to_string(q);
                for (const auto& m : got) {
                    EXPECT_TRUE(covers(m, q));
                    EXPECT_TRUE(is_minimal_cover(m, q));
                }
            }
        }
    }
}

TEST(MinimalCovers, EmptyWhenBaseBlocksEveryAnswer)
{
    auto size = GameSize::standard(1);
    auto got = minimal_covers({QueryItem::pigeon(1)}, Matching::of({{0, 0}}), size);
    EXPECT_TRUE(got.empty());
}

TEST(LogPower, MatchesCeilLog)
{
    for (std::uint64_t i = 0; i < 5000; i++) {
        auto expect = std::uint32_t(std::ceil(std::log2(double(i) + 1)));
        ASSERT_EQ(bit_length(i), expect) << i;
    }
    LogPower a(3, 2);
    EXPECT_EQ(a.log_n(), 2u);
    EXPECT_EQ(a.width(), 4u);
    EXPECT_EQ(a.cap(), 16u);
    LogPower b(8, 1);
    EXPECT_EQ(b.width(), 4u);
    EXPECT_EQ(b.cap(), 16u);
    EXPECT_EQ(a.with_cap(5).cap(), 5u);
    LogPower huge(1000, 4);
    EXPECT_FALSE(huge.cap_exact());
}

TEST(GameSize, Variants)
{
    auto s = GameSize::standard(3);
    EXPECT_EQ(s.pigeons, 4u);
    EXPECT_EQ(s.holes, 3u);
    EXPECT_EQ(GameSize::with_pigeons(3, 8).pigeons, 8u);
    EXPECT_THROW(GameSize::with_pigeons(3, 3), GameError);
    EXPECT_THROW(GameSize::standard(0), GameError);
}

TEST(MatchingText, RoundTripAndDiagnostics)
{
    auto m = Matching::of({{0, 2}, {3, 1}});
    std::stringstream ss;
    write_matching(ss, m);
    EXPECT_EQ(read_matching(ss, GameSize::standard(3)), m);

    std::istringstream bad("0 2\n3 x\n");
    try {
        read_matching(bad, GameSize::standard(3));
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 3u);
    }
    std::istringstream clash("0 2\n1 2\n");
    EXPECT_THROW(read_matching(clash, GameSize::standard(3)), ParseError);
}
