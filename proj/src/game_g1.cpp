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
#include "pebble/text_io.hpp"

#include <charconv>
#include <set>

namespace pebble {

const char*
to_string(G1Tag t)
{
    switch (t) {
    case G1Tag::Ongoing: return "Ongoing";
    case G1Tag::ProverWins: return "ProverWins";
    case G1Tag::DelayerWinsAtCap: return "DelayerWinsAtCap";
    }
    return "?";
}

static void
check_query(const Query& q, const LogPower& cfg, const GameSize& size)
{
    if (normalize_query(q).size() > cfg.width()) throw GameError("query larger than |n|^C");
    for (const auto& item : q) {
        bool ok = item.kind == QueryItem::Kind::Pigeon ? size.has_pigeon(item.id) : size.has_hole(item.id);
        if (!ok) throw GameError("query item out of range");
    }
}

G1Outcome
g1_step(const G1Position& pos, const Query& q, const Matching& answer, const LogPower& cfg)
{
    auto size = GameSize::standard(cfg.n());
    if (pos.history.size() >= cfg.cap()) return {G1Tag::DelayerWinsAtCap, pos};
    check_query(q, cfg, size);
    for (const auto& r : answer) {
        if (!size.has_pigeon(r.pigeon) || !size.has_hole(r.hole)) throw GameError("answer record out of range");
    }
    if (!is_minimal_cover(answer, normalize_query(q))) throw GameError("answer is not a minimal cover of the query");
    if (!matchings_consistent(pos.last(), answer)) return {G1Tag::ProverWins, pos};
    G1Outcome out{G1Tag::Ongoing, pos};
    out.position.history.push_back(answer);
    return out;
}

Matching
g1_delayer_canonical(const G1Position& pos, const Query& query, const LogPower& cfg)
{
    auto size = GameSize::standard(cfg.n());
    Query q = normalize_query(query);
    check_query(q, cfg, size);
    std::vector<Record> ext(pos.last().begin(), pos.last().end());
    std::set<Pigeon> used_p;
    std::set<Hole> used_h;
    for (const auto& r : ext) {
        used_p.insert(r.pigeon);
        used_h.insert(r.hole);
    }
    for (const auto& item : q) {
        if (item.kind == QueryItem::Kind::Pigeon) {
            if (used_p.count(item.id)) continue;
            Hole h = 0;
            while (h < size.holes && used_h.count(h)) h++;
            if (h == size.holes) throw GameError("no free hole left for the greedy extension");
            ext.push_back({item.id, h});
            used_p.insert(item.id);
            used_h.insert(h);
        } else {
            if (used_h.count(item.id)) continue;
            Pigeon p = 0;
            while (p < size.pigeons && used_p.count(p)) p++;
            if (p == size.pigeons) throw GameError("no free pigeon left for the greedy extension");
            ext.push_back({p, item.id});
            used_p.insert(p);
            used_h.insert(item.id);
        }
    }
    auto full = Matching::of(ext);
    std::vector<Record> keep;
    for (const auto& item : q) {
        for (const auto& r : full) {
            bool hit = item.kind == QueryItem::Kind::Pigeon ? r.pigeon == item.id : r.hole == item.id;
            if (hit) keep.push_back(r);
        }
    }
    return Matching::of(keep);
}

QueryItem
parse_query_item(const std::string& s)
{
    if (s.size() < 2 || (s[0] != 'p' && s[0] != 'h')) throw GameError("query items look like p3 or h0");
    std::uint32_t id = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), id);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw GameError("bad query item '" + s + "'");
    return s[0] == 'p' ? QueryItem::pigeon(id) : QueryItem::hole(id);
}

std::string
format_records(const Matching& m)
{
    std::string s;
    for (const auto& r : m) {
        if (!s.empty()) s += ' ';
        s += std::to_string(r.pigeon) + ":" + std::to_string(r.hole);
    }
    return s;
}

void
write_g1_transcript(std::ostream& os, const G1Transcript& t)
{
    os << "game g1\nn " << t.n << "\nC " << t.c << "\n";
    for (const auto& r : t.rounds) {
        os << "query:";
        for (const auto& item : r.query) os << " " << item;
        os << "\nanswer:";
        if (!r.answer.empty()) os << " " << format_records(r.answer);
        os << "\n";
    }
}

Matching
parse_records(const LineReader& reader, const std::vector<Token>& toks, std::size_t from)
{
    std::vector<Record> rs;
    for (std::size_t i = from; i < toks.size(); i++) {
        const auto& t = toks[i];
        auto colon = t.text.find(':');
        if (colon == std::string::npos) reader.fail(t, "records look like pigeon:hole");
        Token a{t.text.substr(0, colon), t.column};
        Token b{t.text.substr(colon + 1), t.column + colon + 1};
        rs.push_back({static_cast<Pigeon>(parse_uint(reader, a, UINT32_MAX)),
                      static_cast<Hole>(parse_uint(reader, b, UINT32_MAX))});
    }
    auto m = Matching::try_of(rs);
    if (!m) reader.fail(toks[0], "records do not form a partial matching");
    return *m;
}

static std::uint32_t
read_header_int(LineReader& reader, const char* key)
{
    auto toks = reader.next_tokens();
    if (!toks) throw ParseError(reader.line(), 1, std::string("missing '") + key + "' line");
    if (toks->size() != 2 || (*toks)[0].text != key) reader.fail((*toks)[0], std::string("expected '") + key + " <int>'");
    return static_cast<std::uint32_t>(parse_uint(reader, (*toks)[1], UINT32_MAX));
}

G1Transcript
read_g1_transcript(std::istream& is)
{
    LineReader reader(is);
    auto head = reader.next_tokens();
    if (!head || head->size() != 2 || (*head)[0].text != "game" || (*head)[1].text != "g1") {
        throw ParseError(reader.line(), 1, "expected 'game g1'");
    }
    G1Transcript t;
    t.n = read_header_int(reader, "n");
    t.c = read_header_int(reader, "C");
    while (auto toks = reader.next_tokens()) {
        if ((*toks)[0].text != "query:") reader.fail((*toks)[0], "expected 'query:'");
        G1Round round;
        for (std::size_t i = 1; i < toks->size(); i++) {
            try {
                round.query.push_back(parse_query_item((*toks)[i].text));
            } catch (const GameError& e) {
                reader.fail((*toks)[i], e.what());
            }
        }
        auto ans = reader.next_tokens();
        if (!ans || (*ans)[0].text != "answer:") throw ParseError(reader.line(), 1, "expected 'answer:'");
        round.answer = parse_records(reader, *ans, 1);
        t.rounds.push_back(std::move(round));
    }
    return t;
}

G1Outcome
g1_replay(const G1Transcript& t)
{
    LogPower cfg(t.n, t.c);
    G1Outcome out;
    for (const auto& r : t.rounds) {
        out = g1_step(out.position, r.query, r.answer, cfg);
        if (out.tag != G1Tag::Ongoing) break;
    }
    return out;
}

} // namespace pebble
