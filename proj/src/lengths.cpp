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

#include <bit>
#include <numeric>
#include <unordered_map>

namespace pebble {

namespace {

constexpr std::size_t kFlatBits = 20;

/** The edges compatible with a fixed final edge, renumbered 0..m-1. */
struct Restriction
{
    std::vector<std::size_t> edges;
    std::vector<std::uint64_t> succ;
    std::uint64_t start = 0;
    std::size_t final_bit = 0;
};

void
restrict_to(const SimpleStrategy& strat, std::size_t f, Restriction& r)
{
    const std::uint32_t holes = strat.size.holes;
    const std::size_t total = std::size_t(strat.size.pigeons) * holes;
    EdgeRef fe{Pigeon(f / holes), Hole(f % holes)};
    r.edges.clear();
    for (std::size_t e = 0; e < total; e++) {
        if (edges_compatible(fe, {Pigeon(e / holes), Hole(e % holes)})) {
            if (e == f) r.final_bit = r.edges.size();
            r.edges.push_back(e);
        }
    }
    if (r.edges.size() > 64) throw GameError("more than 64 edges compatible with one edge");
    r.succ.assign(r.edges.size(), 0);
    r.start = 0;
    for (std::size_t i = 0; i < r.edges.size(); i++) {
        EdgeRef a{Pigeon(r.edges[i] / holes), Hole(r.edges[i] % holes)};
        if (a.tail == strat.init) r.start |= std::uint64_t(1) << i;
        Pigeon head = strat.at(a.tail, a.label);
        for (std::size_t j = 0; j < r.edges.size(); j++) {
            EdgeRef b{Pigeon(r.edges[j] / holes), Hole(r.edges[j] % holes)};
            if (b.tail == head && edges_compatible(a, b)) r.succ[i] |= std::uint64_t(1) << j;
        }
    }
}

std::uint64_t
step(const Restriction& r, std::uint64_t set)
{
    std::uint64_t next = 0;
    while (set) {
        next |= r.succ[std::countr_zero(set)];
        set &= set - 1;
    }
    return next;
}

std::uint64_t
lcm_capped(std::uint64_t a, std::uint64_t b, std::uint64_t limit)
{
    std::uint64_t g = std::gcd(a, b);
    std::uint64_t q = a / g;
    if (q > limit / b) return limit + 1;
    return q * b;
}

/** Membership of the final edge in R_1, R_2, ... with its eventual period. */
struct Trace
{
    std::uint64_t mu = 0;
    std::uint64_t lambda = 0;
    std::vector<bool> member;

    bool at(std::uint64_t s) const
    {
        if (s < mu) return member[s - 1];
        return member[mu - 1 + (s - mu) % lambda];
    }
};

Trace
trace_general(const Restriction& r)
{
    Trace t;
    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    std::uint64_t set = r.start;
    for (std::uint64_t i = 1;; i++) {
        auto [it, fresh] = seen.emplace(set, i);
        if (!fresh) {
            t.mu = it->second;
            t.lambda = i - it->second;
            return t;
        }
        t.member.push_back((set >> r.final_bit) & 1);
        set = step(r, set);
    }
}

} // namespace

bool
WinCertificate::wins(std::uint64_t s) const
{
    if (s < 1) throw GameError("s must be positive");
    if (s <= explicit_wins.size()) return explicit_wins[s - 1];
    return residues.count(s % period) != 0;
}

bool
WinCertificate::all_win() const
{
    for (bool w : explicit_wins) {
        if (!w) return false;
    }
    return residues.size() == period;
}

void
WinCertificate::check() const
{
    if (period < 1 || preperiod < 1) throw ContractViolation("certificate needs preperiod, period >= 1");
    if (explicit_wins.size() < s_max) throw ContractViolation("certificate misses explicit lengths");
    for (std::uint64_t s = preperiod; s <= explicit_wins.size(); s++) {
        if (explicit_wins[s - 1] != (residues.count(s % period) != 0)) {
            throw ContractViolation("explicit and periodic parts disagree at s=" + std::to_string(s));
        }
    }
}

WinCertificate
delayer_wins_lengths(const SimpleStrategy& strat, std::uint32_t s_max, std::uint64_t period_limit)
{
    strat.validate();
    const std::size_t total = std::size_t(strat.size.pigeons) * strat.size.holes;
    std::vector<Trace> traces;
    traces.reserve(total);
    Restriction r;
    std::uint64_t mu = 1, lambda = 1;
    for (std::size_t f = 0; f < total; f++) {
        restrict_to(strat, f, r);
        traces.push_back(trace_general(r));
        mu = std::max(mu, traces.back().mu);
        lambda = lcm_capped(lambda, traces.back().lambda, period_limit);
        if (lambda > period_limit) throw GameError("combined period exceeds the limit");
    }
    WinCertificate cert;
    cert.s_max = s_max;
    cert.preperiod = mu;
    cert.period = lambda;
    std::uint64_t len = std::max<std::uint64_t>(s_max, mu + lambda - 1);
    cert.explicit_wins.assign(len, false);
    for (std::uint64_t s = 1; s <= len; s++) {
        for (const auto& t : traces) {
            if (t.at(s)) {
                cert.explicit_wins[s - 1] = true;
                break;
            }
        }
    }
    for (std::uint64_t s = mu; s < mu + lambda; s++) {
        if (cert.explicit_wins[s - 1]) cert.residues.insert(s % lambda);
    }
    return cert;
}

LengthAnalyzer::LengthAnalyzer(const GameSize& size)
    : size_(size), edges_(std::size_t(size.pigeons) * size.holes)
{
    std::size_t m = 1 + std::size_t(size.pigeons - 1) * (size.holes - 1);
    if (m <= kFlatBits) stamp_.assign(std::size_t(1) << m, 0);
    seqs_.resize(edges_);
}

void
LengthAnalyzer::trace(const SimpleStrategy& strat, std::size_t f, Sequence& out)
{
    Restriction r;
    restrict_to(strat, f, r);
    out.member.clear();
    if (stamp_.empty()) {
        auto t = trace_general(r);
        out.mu = std::uint32_t(t.mu);
        out.lambda = std::uint32_t(t.lambda);
        out.member = std::move(t.member);
        return;
    }
    // stamp_ holds generation in the high half and first time in the low half
    if (++generation_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        generation_ = 1;
    }
    std::uint64_t set = r.start;
    for (std::uint32_t i = 1;; i++) {
        std::uint32_t& slot = stamp_[set];
        if ((slot >> 16) == (generation_ & 0xffff) && (slot & 0xffff)) {
            out.mu = slot & 0xffff;
            out.lambda = i - out.mu;
            return;
        }
        slot = ((generation_ & 0xffff) << 16) | i;
        out.member.push_back((set >> r.final_bit) & 1);
        set = step(r, set);
    }
}

bool
LengthAnalyzer::all_win(const SimpleStrategy& strat)
{
    if (strat.size.holes != size_.holes || strat.size.pigeons != size_.pigeons) throw GameError("size mismatch");
    std::uint64_t mu = 1, lambda = 1;
    const std::uint64_t limit = std::uint64_t(1) << 24;
    for (std::size_t f = 0; f < edges_; f++) {
        trace(strat, f, seqs_[f]);
        mu = std::max<std::uint64_t>(mu, seqs_[f].mu);
        lambda = lcm_capped(lambda, seqs_[f].lambda, limit);
        if (lambda > limit) throw GameError("combined period exceeds the limit");
    }
    for (std::uint64_t s = 1; s < mu + lambda; s++) {
        bool any = false;
        for (std::size_t f = 0; f < edges_ && !any; f++) {
            const auto& q = seqs_[f];
            any = s < q.mu ? q.member[s - 1] : q.member[q.mu - 1 + (s - q.mu) % q.lambda];
        }
        if (!any) return false;
    }
    return true;
}

} // namespace pebble
