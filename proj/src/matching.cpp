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

#include <algorithm>
#include <sstream>

namespace pebble {

GameSize
GameSize::standard(std::uint32_t n)
{
    if (n < 1) throw GameError("game size needs n >= 1");
    return GameSize{n, n + 1};
}

GameSize
GameSize::with_pigeons(std::uint32_t n, std::uint32_t pigeon_count)
{
    if (n < 1) throw GameError("game size needs n >= 1");
    if (pigeon_count < n + 1) throw GameError("pigeon count must be at least n+1");
    return GameSize{n, pigeon_count};
}

bool
records_conflict(const Record& a, const Record& b)
{
    return (a.pigeon == b.pigeon) != (a.hole == b.hole);
}

std::optional<Matching>
Matching::try_of(std::vector<Record> records)
{
    std::sort(records.begin(), records.end());
    records.erase(std::unique(records.begin(), records.end()), records.end());
    for (std::size_t i = 0; i < records.size(); i++) {
        for (std::size_t j = i + 1; j < records.size(); j++) {
            if (records_conflict(records[i], records[j])) return std::nullopt;
        }
    }
    Matching m;
    m.records_ = std::move(records);
    return m;
}

Matching
Matching::of(std::vector<Record> records)
{
    auto m = try_of(std::move(records));
    if (!m) throw GameError("records do not form a partial matching");
    return *m;
}

bool
Matching::contains(const Record& r) const
{
    return std::binary_search(records_.begin(), records_.end(), r);
}

std::optional<Hole>
Matching::hole_of(Pigeon p) const
{
    auto it = std::lower_bound(records_.begin(), records_.end(), Record{p, 0});
    if (it != records_.end() && it->pigeon == p) return it->hole;
    return std::nullopt;
}

std::optional<Pigeon>
Matching::pigeon_of(Hole h) const
{
    for (const auto& r : records_) {
        if (r.hole == h) return r.pigeon;
    }
    return std::nullopt;
}

bool
Matching::is_subset_of(const Matching& other) const
{
    return std::includes(other.records_.begin(), other.records_.end(), records_.begin(), records_.end());
}

std::optional<Matching>
Matching::merged(const Matching& other) const
{
    if (!matchings_consistent(*this, other)) return std::nullopt;
    Matching m;
    std::set_union(records_.begin(), records_.end(), other.records_.begin(), other.records_.end(),
                   std::back_inserter(m.records_));
    return m;
}

bool
matchings_consistent(const Matching& m, const Matching& m2)
{
    for (const auto& a : m) {
        for (const auto& b : m2) {
            if (records_conflict(a, b)) return false;
        }
    }
    return true;
}

Query
normalize_query(Query q)
{
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
}

bool
covers(const Matching& m, const QueryItem& item)
{
    if (item.kind == QueryItem::Kind::Pigeon) return m.hole_of(item.id).has_value();
    return m.pigeon_of(item.id).has_value();
}

bool
covers(const Matching& m, const Query& q)
{
    return std::all_of(q.begin(), q.end(), [&](const QueryItem& item) { return covers(m, item); });
}

bool
is_minimal_cover(const Matching& m, const Query& q)
{
    if (!covers(m, q)) return false;
    for (std::size_t skip = 0; skip < m.size(); skip++) {
        std::vector<Record> rest;
        for (std::size_t i = 0; i < m.size(); i++) {
            if (i != skip) rest.push_back(m.records()[i]);
        }
        if (covers(Matching::of(rest), q)) return false;
    }
    return true;
}

std::vector<Matching>
minimal_covers(const Query& query, const std::optional<Matching>& base, const GameSize& size)
{
    Query q = normalize_query(query);
    std::vector<std::uint32_t> radix;
    double combos = 1;
    for (const auto& item : q) {
        if (item.kind == QueryItem::Kind::Pigeon) {
            if (!size.has_pigeon(item.id)) throw GameError("queried pigeon out of range");
            radix.push_back(size.holes);
        } else {
            if (!size.has_hole(item.id)) throw GameError("queried hole out of range");
            radix.push_back(size.pigeons);
        }
        combos *= radix.back();
    }
    if (combos > 5e7) throw GameError("query too large for cover enumeration");

    // Every minimal cover is the union of one witness record per queried item.
    std::vector<Matching> out;
    std::vector<std::uint32_t> digit(q.size(), 0);
    std::vector<Record> records(q.size());
    while (true) {
        for (std::size_t i = 0; i < q.size(); i++) {
            records[i] = q[i].kind == QueryItem::Kind::Pigeon ? Record{q[i].id, digit[i]} : Record{digit[i], q[i].id};
        }
        if (auto m = Matching::try_of(records)) {
            if (is_minimal_cover(*m, q) && (!base || matchings_consistent(*m, *base))) out.push_back(std::move(*m));
        }
        std::size_t i = 0;
        while (i < q.size() && ++digit[i] == radix[i]) digit[i++] = 0;
        if (i == q.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint32_t
bit_length(std::uint64_t i)
{
    std::uint32_t len = 0;
    while (i) {
        len++;
        i >>= 1;
    }
    return len;
}

LogPower::LogPower(std::uint32_t n, std::uint32_t c) : n_(n), c_(c)
{
    if (n < 1 || c < 1) throw GameError("LogPower needs n >= 1 and C >= 1");
    log_n_ = bit_length(n);
    width_ = 1;
    bool width_ok = true;
    for (std::uint32_t i = 0; i < c; i++) {
        if (width_ > (std::uint64_t(1) << 62) / log_n_) {
            width_ok = false;
            break;
        }
        width_ *= log_n_;
    }
    cap_exact_ = width_ok && width_ < 63;
    cap_ = cap_exact_ ? (std::uint64_t(1) << width_) : (std::uint64_t(1) << 63);
    if (!width_ok) width_ = std::uint64_t(1) << 62;
}

LogPower
LogPower::with_cap(std::uint64_t cap) const
{
    if (cap < 1 || cap > cap_) throw GameError("test cap must be in [1, 2^{|n|^C}]");
    LogPower copy = *this;
    copy.cap_ = cap;
    copy.cap_exact_ = true;
    return copy;
}

std::ostream&
operator<<(std::ostream& os, const Record& r)
{
    return os << "(" << r.pigeon << "," << r.hole << ")";
}

std::ostream&
operator<<(std::ostream& os, const Matching& m)
{
    os << "{";
    bool first = true;
    for (const auto& r : m) {
        if (!first) os << ",";
        os << r;
        first = false;
    }
    return os << "}";
}

std::ostream&
operator<<(std::ostream& os, const QueryItem& q)
{
    return os << (q.kind == QueryItem::Kind::Pigeon ? "p" : "h") << q.id;
}

std::string
to_string(const Matching& m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

std::string
to_string(const Query& q)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < q.size(); i++) os << (i ? " " : "") << q[i];
    return os.str();
}

void
write_matching(std::ostream& os, const Matching& m)
{
    for (const auto& r : m) os << r.pigeon << " " << r.hole << "\n";
    os << "\n";
}

Matching
read_matching(std::istream& is, const GameSize& size)
{
    LineReader reader(is);
    std::vector<Record> records;
    while (auto line = reader.next()) {
        auto toks = tokenize(*line);
        if (toks.empty()) break;
        if (toks.size() != 2) reader.fail(toks[0], "expected 'pigeon hole'");
        auto p = parse_uint(reader, toks[0], size.pigeons - 1);
        auto h = parse_uint(reader, toks[1], size.holes - 1);
        records.push_back({static_cast<Pigeon>(p), static_cast<Hole>(h)});
    }
    auto m = Matching::try_of(records);
    if (!m) throw ParseError(reader.line(), 1, "records do not form a partial matching");
    return *m;
}

} // namespace pebble
