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

#include "pebble/game_g2.hpp"
#include "pebble/game_g1.hpp"
#include "pebble/text_io.hpp"

#include <algorithm>

namespace pebble {

G2Position::G2Position()
{
    labels_[Vertex{}] = PositionLabel{};
}

const PositionLabel&
G2Position::at(const Vertex& v) const
{
    auto it = labels_.find(v);
    if (it == labels_.end()) throw GameError("vertex " + to_string(v) + " is not labeled");
    return it->second;
}

FiniteTree
G2Position::dom() const
{
    std::vector<Vertex> vs;
    vs.reserve(labels_.size());
    for (const auto& [v, _] : labels_) vs.push_back(v);
    return FiniteTree(std::move(vs));
}

void
check_position(const G2Position& pos, bool with_aux)
{
    if (!pos.contains(Vertex{})) throw ContractViolation("position lost its root");
    for (const auto& [v, label] : pos.labels()) {
        if (with_aux && label.aux.size() != v.size()) throw ContractViolation("aux length differs from height at " + to_string(v));
        if (v.empty()) continue;
        Vertex parent(v.begin(), v.end() - 1);
        if (!pos.contains(parent)) throw ContractViolation("dom not downward closed at " + to_string(v));
        const auto& up = pos.at(parent);
        if (!up.matching.is_subset_of(label.matching)) throw ContractViolation("matching shrinks at " + to_string(v));
        if (with_aux && !std::equal(up.aux.begin(), up.aux.end(), label.aux.begin())) {
            throw ContractViolation("aux word is not extended at " + to_string(v));
        }
    }
}

const char*
to_string(G2Tag t)
{
    switch (t) {
    case G2Tag::Ongoing: return "Ongoing";
    case G2Tag::ProverWins: return "ProverWins";
    case G2Tag::ProverLoses: return "ProverLoses";
    case G2Tag::DelayerWins: return "DelayerWins";
    }
    return "?";
}

static void
validate_round(const G2Position& pos, const Query& q, const Matching& answer, const ProverMove& mv,
               const LogPower& cfg, bool with_aux)
{
    auto size = GameSize::standard(cfg.n());
    if (normalize_query(q).size() > cfg.width()) throw GameError("query larger than |n|^C");
    for (const auto& item : q) {
        bool ok = item.kind == QueryItem::Kind::Pigeon ? size.has_pigeon(item.id) : size.has_hole(item.id);
        if (!ok) throw GameError("query item out of range");
    }
    for (const auto& r : answer) {
        if (!size.has_pigeon(r.pigeon) || !size.has_hole(r.hole)) throw GameError("answer record out of range");
    }
    if (!is_minimal_cover(answer, normalize_query(q))) throw GameError("answer is not a minimal cover of the query");
    if (mv.option < 1 || mv.option > 3) throw GameError("move option must be 1, 2 or 3");
    if (mv.option == 1) {
        if (mv.x.size() != 1 || mv.x[0] < 1 || mv.x[0] > cfg.cap()) throw GameError("o=1 needs a child index in [1, cap]");
    } else {
        const Vertex& c = pos.frontier();
        if (mv.x.size() >= c.size() || !is_prefix(mv.x, c)) throw GameError("o=2,3 need a proper prefix of c(L)");
    }
    if (with_aux && (mv.b < 1 || mv.b > cfg.cap())) throw GameError("B must lie in [1, cap]");
}

static AuxWord
extend_aux(const AuxWord& a, std::uint64_t b, bool with_aux)
{
    if (!with_aux) return {};
    AuxWord out = a;
    out.push_back(b);
    return out;
}

static G2Outcome
transition(const G2Position& pos, const Query& q, const Matching& answer, const ProverMove& mv, const LogPower& cfg,
           const FiniteTree& t, bool with_aux)
{
    validate_round(pos, q, answer, mv, cfg, with_aux);
    const Vertex& c = pos.frontier();
    G2Outcome out{G2Tag::Ongoing, pos, {}};
    G2Position& next = out.position;

    if (mv.option == 1) {
        Vertex v = child(c, mv.x[0]);
        if (!t.contains(v)) return {G2Tag::ProverLoses, pos, {}};
        const auto& label = pos.at(c);
        if (!matchings_consistent(label.matching, answer)) return {G2Tag::ProverWins, pos, {}};
        next.set(v, {*label.matching.merged(answer), extend_aux(label.aux, mv.b, with_aux)});
    } else if (mv.option == 2) {
        std::uint64_t k = c[mv.x.size()];
        Vertex v = child(mv.x, k + 1);
        if (k + 1 > cfg.cap() || !t.contains(v)) return {G2Tag::ProverLoses, pos, {}};
        const auto& label = pos.at(mv.x);
        if (!matchings_consistent(label.matching, answer)) return {G2Tag::ProverWins, pos, {}};
        next.set(v, {*label.matching.merged(answer), extend_aux(label.aux, mv.b, with_aux)});
    } else {
        std::uint64_t k = c[mv.x.size()];
        if (k < 2) return {G2Tag::ProverLoses, pos, {}};
        Vertex left = child(mv.x, k - 1);
        if (!pos.contains(left)) return {G2Tag::ProverLoses, pos, {}};
        // the lexicographically largest labeled extension of x*(k-1)
        Vertex l = left;
        for (auto it = pos.labels().find(left); it != pos.labels().end() && is_prefix(left, it->first); ++it) {
            l = it->first;
        }
        Vertex grow = child(l, 1);
        if (!t.contains(grow)) return {G2Tag::ProverLoses, pos, {}};
        const auto label = pos.at(l);
        if (!matchings_consistent(label.matching, answer)) return {G2Tag::ProverWins, pos, {}};
        Vertex cut = child(mv.x, k);
        for (const auto& [v, lab] : pos.labels()) {
            if (is_prefix(cut, v)) out.erased.emplace_back(v, lab);
        }
        for (const auto& [v, _] : out.erased) next.erase(v);
        next.set(grow, {*label.matching.merged(answer), extend_aux(label.aux, mv.b, with_aux)});
    }

    if (tree_compare(pos.dom(), next.dom()) != Order::Less) {
        throw ContractViolation("dom(L) did not strictly increase in the tree order");
    }
    return out;
}

G2Outcome
g2_apply(const G2Position& pos, const Query& q, const Matching& answer, const ProverMove& mv, const LogPower& cfg,
         const FiniteTree& t)
{
    return transition(pos, q, answer, mv, cfg, t, true);
}

G2Outcome
g2prime_apply(const G2Position& pos, const Query& q, const Matching& answer, const ProverMove& mv,
              const LogPower& cfg, const FiniteTree& t)
{
    return transition(pos, q, answer, mv, cfg, t, false);
}

using QueryFn = std::function<Query(const G2Position&)>;
using MoveFn = std::function<ProverMove(const G2Position&, const Matching&)>;

static G2Play
drive(const LogPower& cfg, const FiniteTree& t, const QueryFn& query, const MoveFn& move, const G2Delayer& delayer,
      std::uint64_t step_cap, bool with_aux)
{
    auto size = GameSize::standard(cfg.n());
    G2Play play;
    G2Position pos;
    play.doms.push_back(pos.dom());
    for (std::uint64_t step = 0; step < step_cap; step++) {
        Query q = query(pos);
        if (minimal_covers(q, std::nullopt, size).empty()) {
            play.rounds.push_back({q, {}, {}, {}});
            play.winner = G2Tag::ProverWins;
            play.final_position = pos;
            return play;
        }
        Matching answer = delayer(pos, q);
        ProverMove mv = move(pos, answer);
        auto out = transition(pos, q, answer, mv, cfg, t, with_aux);
        play.rounds.push_back({q, answer, mv, out.erased});
        if (out.tag != G2Tag::Ongoing) {
            play.winner = out.tag;
            play.final_position = pos;
            return play;
        }
        pos = std::move(out.position);
        play.doms.push_back(pos.dom());
    }
    play.winner = G2Tag::DelayerWins;
    play.final_position = pos;
    return play;
}

G2Play
g2_play(const LogPower& cfg, const FiniteTree& t, const ObliviousStrategy& prover, const G2Delayer& delayer,
        std::uint64_t step_cap)
{
    if (step_cap < 1) throw GameError("step cap must be positive");
    QueryFn query = [&](const G2Position& pos) {
        const auto& label = pos.at(pos.frontier());
        return prover.query(pos.frontier(), label.matching, label.aux);
    };
    MoveFn move = [&](const G2Position& pos, const Matching& answer) {
        const auto& label = pos.at(pos.frontier());
        return prover.move(pos.frontier(), label.matching, label.aux, answer);
    };
    return drive(cfg, t, query, move, delayer, step_cap, true);
}

static void
explore(const LogPower& cfg, const FiniteTree& t, const ObliviousStrategy& prover, const G2Position& pos,
        std::uint64_t steps_left, std::size_t depth, G2TreeSummary& sum)
{
    auto size = GameSize::standard(cfg.n());
    if (steps_left == 0) {
        sum.branches++;
        sum.capped++;
        sum.longest = std::max(sum.longest, depth);
        return;
    }
    const Vertex& c = pos.frontier();
    const auto& label = pos.at(c);
    Query q = prover.query(c, label.matching, label.aux);
    auto answers = minimal_covers(q, std::nullopt, size);
    if (answers.empty()) {
        sum.branches++;
        sum.prover_wins++;
        sum.longest = std::max(sum.longest, depth + 1);
        return;
    }
    for (const auto& answer : answers) {
        ProverMove mv = prover.move(c, label.matching, label.aux, answer);
        auto out = g2_apply(pos, q, answer, mv, cfg, t);
        if (out.tag == G2Tag::Ongoing) {
            explore(cfg, t, prover, out.position, steps_left - 1, depth + 1, sum);
            continue;
        }
        sum.branches++;
        sum.longest = std::max(sum.longest, depth + 1);
        if (out.tag == G2Tag::ProverWins) sum.prover_wins++;
        else sum.prover_loses++;
    }
}

G2TreeSummary
g2_exhaustive(const LogPower& cfg, const FiniteTree& t, const ObliviousStrategy& prover, std::uint64_t step_cap)
{
    G2TreeSummary sum;
    explore(cfg, t, prover, G2Position{}, step_cap, 0, sum);
    return sum;
}

RootRamify
prover_root_ramify(std::uint32_t n, const LogPower& cfg)
{
    if (n < 2) throw GameError("root ramification needs n >= 2");
    if (cfg.n() != n) throw GameError("LogPower built for a different n");
    if (cfg.cap() <= n) throw GameError("root ramification needs 2^{|n|^C} > n");
    std::uint32_t half = (n + 1) / 2;
    if (half > cfg.width()) throw GameError("root ramification needs ceil(n/2) <= |n|^C");

    std::vector<Vertex> vs{Vertex{}};
    for (std::uint64_t i = 1; i <= n + 1; i++) {
        vs.push_back({i});
        vs.push_back({i, 1});
    }

    auto pigeons = [](std::uint32_t from, std::uint32_t to) {
        Query q;
        for (std::uint32_t p = from; p < to; p++) q.push_back(QueryItem::pigeon(p));
        return q;
    };

    ObliviousStrategy s;
    s.query = [=](const Vertex& v, const Matching&, const AuxWord&) {
        if (v.empty()) return pigeons(0, half);
        if (v == Vertex{1}) return pigeons(half, n);
        return pigeons(n, n + 1);
    };
    s.move = [](const Vertex& v, const Matching& m, const AuxWord&, const Matching& answer) {
        // a clash with the current label is won by climbing
        if (v.empty() || !matchings_consistent(m, answer)) return ProverMove{1, {1}, 1};
        // child 1 and child 2 now hold all n holes; the last pigeon clashes with one of them
        if (v == Vertex{1}) return ProverMove{2, {}, 1};
        return ProverMove{3, {}, 1};
    };
    return {FiniteTree(std::move(vs)), std::move(s)};
}

std::uint64_t
g2_step_bound(const LogPower& cfg, const FiniteTree& t)
{
    // subsets of T bound the number of distinct doms
    std::uint64_t exp = t.size();
    // the corollary counts trees inside [cap]^{<=C}
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i <= cfg.c() && count < exp; i++) count *= cfg.cap();
    exp = std::min(exp, count);
    if (exp >= 64) return UINT64_MAX;
    return std::uint64_t(1) << exp;
}

std::uint64_t
encode_index(std::uint64_t k, std::uint64_t a, std::uint64_t cap)
{
    if (k < 1 || k > cap || a < 1 || a > cap) throw GameError("encode_index needs k, A in [1, cap]");
    return a * (cap + 1) + k;
}

std::optional<DecodedIndex>
decode_index(std::uint64_t y, std::uint64_t cap)
{
    if (y >= 1 && y <= cap) return DecodedIndex{y, 0};
    if (y <= cap + 1) return std::nullopt;
    std::uint64_t a = (y - 1) / (cap + 1);
    std::uint64_t k = y - a * (cap + 1);
    if (a < 1 || a > cap || k < 1 || k > cap) return std::nullopt;
    return DecodedIndex{k, a};
}

std::optional<std::uint32_t>
prime_height(const LogPower& cfg, std::uint32_t c_limit)
{
    std::uint64_t cap = cfg.cap();
    if (cap > (std::uint64_t(1) << 30)) return std::nullopt;
    std::uint64_t need = cap * (cap + 1) + cap;
    for (std::uint32_t c = cfg.c(); c <= c_limit; c++) {
        LogPower p(cfg.n(), c);
        if (!p.cap_exact() || p.cap() >= need) return c;
    }
    return std::nullopt;
}

std::pair<Vertex, AuxWord>
decode_vertex(const Vertex& v, std::uint64_t cap)
{
    Vertex plain;
    AuxWord aux;
    for (auto y : v) {
        auto d = decode_index(y, cap);
        if (!d) throw GameError("index " + std::to_string(y) + " is not an encoded child index");
        plain.push_back(d->k);
        aux.push_back(d->a);
    }
    return {plain, aux};
}

G2Position
decode_position(const G2Position& prime, std::uint64_t cap)
{
    G2Position out;
    for (const auto& [v, label] : prime.labels()) {
        auto [plain, aux] = decode_vertex(v, cap);
        out.set(plain, {label.matching, aux});
    }
    return out;
}

G2PrimeGame
to_g2prime(const ObliviousStrategy& s, const LogPower& cfg, const FiniteTree& t, std::uint32_t c_limit)
{
    auto c_prime = prime_height(cfg, c_limit);
    if (!c_prime) throw GameError("no admissible C' within the configured limit");
    std::uint64_t cap = cfg.cap();
    LogPower cfg_prime(cfg.n(), *c_prime);

    // every component may be plain or carry any aux value
    std::vector<Vertex> vs{Vertex{}};
    std::vector<Vertex> layer{Vertex{}};
    for (std::size_t depth = 0; depth < t.height(); depth++) {
        std::vector<Vertex> next;
        for (const auto& vp : layer) {
            Vertex plain = decode_vertex(vp, cap).first;
            for (std::uint64_t k = 1; k <= cap; k++) {
                if (!t.contains(child(plain, k))) continue;
                next.push_back(child(vp, k));
                for (std::uint64_t a = 1; a <= cap; a++) next.push_back(child(vp, encode_index(k, a, cap)));
            }
        }
        vs.insert(vs.end(), next.begin(), next.end());
        layer = std::move(next);
    }

    PrimeStrategy ps;
    ps.query = [s, cap](const Vertex& vp, const Matching& m) {
        auto [v, aux] = decode_vertex(vp, cap);
        return s.query(v, m, aux);
    };
    ps.move = [s, cap](const Vertex& vp, const Matching& m, const Matching& answer) {
        auto [v, aux] = decode_vertex(vp, cap);
        ProverMove mv = s.move(v, m, aux, answer);
        if (mv.option == 1) {
            if (mv.x.size() != 1) throw GameError("o=1 needs a single child index");
            std::uint64_t a = std::clamp<std::uint64_t>(mv.b, 1, cap);
            std::uint64_t k = mv.x[0];
            if (k >= 1 && k <= cap) return ProverMove{1, {encode_index(k, a, cap)}, 1};
            return ProverMove{1, mv.x, 1};
        }
        if (mv.x.size() >= vp.size()) throw GameError("o=2,3 need a proper prefix of c(L)");
        return ProverMove{mv.option, Vertex(vp.begin(), vp.begin() + mv.x.size()), 1};
    };
    return {cfg_prime, FiniteTree(std::move(vs)), std::move(ps)};
}

G2Play
g2prime_play(const G2PrimeGame& game, const G2PrimeDelayer& delayer, std::uint64_t step_cap)
{
    if (step_cap < 1) throw GameError("step cap must be positive");
    QueryFn query = [&](const G2Position& pos) {
        return game.strategy.query(pos.frontier(), pos.at(pos.frontier()).matching);
    };
    MoveFn move = [&](const G2Position& pos, const Matching& answer) {
        return game.strategy.move(pos.frontier(), pos.at(pos.frontier()).matching, answer);
    };
    return drive(game.cfg, game.tree, query, move, delayer, step_cap, false);
}

void
write_position(std::ostream& os, const G2Position& pos)
{
    for (const auto& [v, label] : pos.labels()) {
        os << to_string(v) << " | " << format_records(label.matching) << " |";
        for (auto a : label.aux) os << " " << a;
        os << "\n";
    }
}

G2Position
read_position(std::istream& is, const GameSize& size)
{
    LineReader reader(is);
    G2Position pos;
    bool any = false;
    while (auto line = reader.next()) {
        auto toks = tokenize(*line);
        if (toks.empty()) continue;
        std::vector<std::size_t> bars;
        for (std::size_t i = 0; i < toks.size(); i++) {
            if (toks[i].text == "|") bars.push_back(i);
        }
        if (bars.size() != 2 || bars[0] != 1) reader.fail(toks[0], "expected '<dot-path> | <records> | <aux>'");
        Vertex v;
        try {
            v = parse_vertex(toks[0].text);
        } catch (const GameError& e) {
            reader.fail(toks[0], e.what());
        }
        std::vector<Token> rec(toks.begin() + 1, toks.begin() + bars[1]);
        Matching m = parse_records(reader, rec, 1);
        for (const auto& r : m) {
            if (!size.has_pigeon(r.pigeon) || !size.has_hole(r.hole)) reader.fail(toks[0], "record out of range");
        }
        AuxWord aux;
        for (std::size_t i = bars[1] + 1; i < toks.size(); i++) aux.push_back(parse_uint(reader, toks[i]));
        pos.set(v, {m, aux});
        any = true;
    }
    if (!any) throw ParseError(reader.line(), 1, "empty position");
    try {
        check_position(pos);
    } catch (const ContractViolation& e) {
        throw ParseError(reader.line(), 1, e.what());
    }
    return pos;
}

std::string
format_move(const ProverMove& mv)
{
    return "o=" + std::to_string(mv.option) + " x=" + to_string(mv.x) + " B=" + std::to_string(mv.b);
}

void
write_g2_transcript(std::ostream& os, const G2Transcript& t)
{
    os << "game g2\nn " << t.n << "\nC " << t.c << "\n";
    for (const auto& r : t.rounds) {
        os << "query:";
        for (const auto& item : r.query) os << " " << item;
        os << "\nanswer:";
        if (!r.answer.empty()) os << " " << format_records(r.answer);
        os << "\nmove: " << format_move(r.move) << "\n";
    }
}

static std::uint32_t
header_int(LineReader& reader, const char* key)
{
    auto toks = reader.next_tokens();
    if (!toks) throw ParseError(reader.line(), 1, std::string("missing '") + key + "' line");
    if (toks->size() != 2 || (*toks)[0].text != key) reader.fail((*toks)[0], std::string("expected '") + key + " <int>'");
    return static_cast<std::uint32_t>(parse_uint(reader, (*toks)[1], UINT32_MAX));
}

static std::string
field(const LineReader& reader, const Token& t, const std::string& key)
{
    if (t.text.rfind(key + "=", 0) != 0) reader.fail(t, "expected " + key + "=...");
    return t.text.substr(key.size() + 1);
}

G2Transcript
read_g2_transcript(std::istream& is)
{
    LineReader reader(is);
    auto head = reader.next_tokens();
    if (!head || head->size() != 2 || (*head)[0].text != "game" || (*head)[1].text != "g2") {
        throw ParseError(reader.line(), 1, "expected 'game g2'");
    }
    G2Transcript t;
    t.n = header_int(reader, "n");
    t.c = header_int(reader, "C");
    while (auto toks = reader.next_tokens()) {
        if ((*toks)[0].text != "query:") reader.fail((*toks)[0], "expected 'query:'");
        G2Round round;
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
        auto mv = reader.next_tokens();
        if (!mv || (*mv)[0].text != "move:" || mv->size() != 4) {
            throw ParseError(reader.line(), 1, "expected 'move: o=<1|2|3> x=<path> B=<int>'");
        }
        Token o{field(reader, (*mv)[1], "o"), (*mv)[1].column + 2};
        round.move.option = static_cast<int>(parse_uint(reader, o, 3));
        try {
            round.move.x = parse_vertex(field(reader, (*mv)[2], "x"));
        } catch (const GameError& e) {
            reader.fail((*mv)[2], e.what());
        }
        Token b{field(reader, (*mv)[3], "B"), (*mv)[3].column + 2};
        round.move.b = parse_uint(reader, b);
        t.rounds.push_back(std::move(round));
    }
    return t;
}

} // namespace pebble
