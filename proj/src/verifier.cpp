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

#include "pebble/verifier.hpp"
#include "pebble/php_tree.hpp"
#include "pebble/text_io.hpp"
#include "pebble/tree.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace pebble {

namespace {

std::uint64_t
mix(std::uint64_t seed, std::uint64_t value)
{
    std::size_t h = seed;
    boost::hash_combine(h, value);
    return h;
}

std::mt19937_64
rng_for(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                      std::uint32_t(stream >> 32)};
    return std::mt19937_64(seq);
}

std::string
strategy_text(const SimpleStrategy& strat)
{
    std::ostringstream os;
    write_strategy(os, strat);
    return os.str();
}

std::string
tree_text(const FiniteTree& t)
{
    std::ostringstream os;
    write_tree(os, t);
    return os.str();
}

class Stopwatch
{
  public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/** Smallest s with a Prover win, or 0 when all s win for Delayer. */
std::uint32_t
first_losing_length(const SimpleStrategy& strat, std::uint32_t s_max)
{
    auto cert = delayer_wins_lengths(strat, s_max);
    for (std::uint64_t s = 1; s <= cert.explicit_wins.size(); s++) {
        if (!cert.explicit_wins[s - 1]) return std::uint32_t(s);
    }
    return 0;
}

} // namespace

void
CampaignReport::merge(CampaignReport other)
{
    space += other.space;
    for (auto& c : other.counterexamples) counterexamples.push_back(std::move(c));
    for (auto& d : other.details) details.push_back(std::move(d));
}

std::string
format_report(const CampaignReport& r, bool timing)
{
    std::ostringstream os;
    os << "claim=" << r.claim << " space=" << r.space << " counterexamples=" << r.counterexamples.size()
       << " seconds=";
    os.setf(std::ios::fixed);
    os.precision(3);
    os << (timing ? r.seconds : 0.0) << "\n";
    os << "shards=" << r.shards << " threads=" << r.threads << "\n";
    for (const auto& d : r.details) os << d << "\n";
    for (const auto& c : r.counterexamples) os << "counterexample " << c.name << "\n";
    return os.str();
}

void
write_counterexamples(const CampaignReport& r, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    for (const auto& c : r.counterexamples) {
        std::ofstream os(dir / c.name);
        if (!os) throw GameError("cannot write " + (dir / c.name).string());
        os << c.text;
    }
}

std::uint64_t
strategy_count(std::uint32_t n)
{
    if (n < 1) throw GameError("n must be positive");
    std::uint64_t base = n + 1;
    std::uint64_t cells = 1 + std::uint64_t(n + 1) * n;
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < cells; i++) {
        if (total > UINT64_MAX / base) throw GameError("strategy count does not fit in 64 bits");
        total *= base;
    }
    return total;
}

SimpleStrategy
decode_strategy(std::uint32_t n, std::uint64_t index, std::uint32_t s)
{
    auto size = GameSize::standard(n);
    const std::uint64_t base = n + 1;
    SimpleStrategy st{size, s, Pigeon(index % base), std::vector<Pigeon>(std::size_t(size.pigeons) * n)};
    index /= base;
    for (auto& cell : st.table) {
        cell = Pigeon(index % base);
        index /= base;
    }
    return st;
}

std::uint64_t
encode_strategy(const SimpleStrategy& strat)
{
    const std::uint64_t base = strat.size.pigeons;
    std::uint64_t index = 0;
    for (auto it = strat.table.rbegin(); it != strat.table.rend(); ++it) index = index * base + *it;
    return index * base + strat.init;
}

namespace {

SimpleStrategy
relabel(const SimpleStrategy& strat, const std::vector<Pigeon>& sigma, const std::vector<Hole>& tau)
{
    SimpleStrategy out = strat;
    out.init = sigma[strat.init];
    for (Pigeon p = 0; p < strat.size.pigeons; p++) {
        for (Hole h = 0; h < strat.size.holes; h++) out.set(sigma[p], tau[h], sigma[strat.at(p, h)]);
    }
    return out;
}

bool
key_less(const SimpleStrategy& a, const SimpleStrategy& b)
{
    return std::tie(a.init, a.table) < std::tie(b.init, b.table);
}

} // namespace

SimpleStrategy
canonical_form(const SimpleStrategy& strat)
{
    strat.validate();
    std::vector<Pigeon> sigma(strat.size.pigeons);
    std::vector<Hole> tau(strat.size.holes);
    std::iota(sigma.begin(), sigma.end(), 0);
    SimpleStrategy best = strat;
    do {
        std::iota(tau.begin(), tau.end(), 0);
        do {
            auto cand = relabel(strat, sigma, tau);
            if (key_less(cand, best)) best = std::move(cand);
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
}

bool
is_canonical(const SimpleStrategy& strat)
{
    // mapping init to 0 is always possible, so a least key has init 0
    if (strat.init != 0) return false;
    std::vector<Pigeon> sigma(strat.size.pigeons);
    std::vector<Hole> tau(strat.size.holes);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        std::iota(tau.begin(), tau.end(), 0);
        do {
            if (key_less(relabel(strat, sigma, tau), strat)) return false;
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
    return true;
}

StrategyEnumerator::StrategyEnumerator(std::uint32_t n, bool symmetry, std::uint32_t shard, std::uint32_t shards,
                                       std::uint64_t start, std::uint32_t ceiling)
    : n_(n), symmetry_(symmetry), shard_(shard), shards_(shards), total_(0), cursor_(start)
{
    if (n > ceiling) throw GameError("n = " + std::to_string(n) + " exceeds the enumeration ceiling " +
                                     std::to_string(ceiling));
    if (shards < 1 || shard >= shards) throw GameError("shard index must be below the shard count");
    total_ = strategy_count(n);
}

bool
StrategyEnumerator::next(SimpleStrategy& out, std::uint64_t& index)
{
    while (cursor_ < total_) {
        std::uint64_t block = cursor_ / kBlock;
        if (block % shards_ != shard_) {
            cursor_ = (block + 1) * kBlock;
            continue;
        }
        std::uint64_t i = cursor_++;
        if (symmetry_ && i % (n_ + 1) != 0) continue;
        out = decode_strategy(n_, i, 1);
        if (symmetry_ && !is_canonical(out)) continue;
        index = i;
        return true;
    }
    return false;
}

SimpleStrategy
random_strategy(std::uint32_t n, std::uint32_t s, std::mt19937_64& rng)
{
    auto size = GameSize::standard(n);
    std::uniform_int_distribution<Pigeon> pick(0, n);
    SimpleStrategy st{size, s, pick(rng), std::vector<Pigeon>(std::size_t(size.pigeons) * n)};
    for (auto& cell : st.table) cell = pick(rng);
    return st;
}

bool
delayer_wins_all(const SimpleStrategy& strat, LengthAnalyzer& analyzer)
{
    if (canonical_loop_exists(strat)) return true;
    return analyzer.all_win(strat);
}

// ---------------------------------------------------------------------------
// theorem-main

namespace {

struct ShardState
{
    std::uint64_t next = 0;
    std::uint64_t done = 0;
    std::uint64_t fast = 0;
    std::uint64_t sampled = 0;
    std::vector<std::uint64_t> found;
    std::vector<std::uint64_t> disagree;
};

/** Append-only progress file shared by the shard workers. */
class Checkpoint
{
  public:
    Checkpoint(std::filesystem::path path, const std::string& header) : path_(std::move(path)), header_(header) {}

    bool enabled() const { return !path_.empty(); }

    /** Reads the last committed state of every shard; writes the header for a fresh file. */
    std::map<std::uint32_t, ShardState> load()
    {
        std::map<std::uint32_t, ShardState> states;
        if (!enabled()) return states;
        std::ifstream is(path_);
        if (!is) {
            std::ofstream os(path_);
            if (!os) throw GameError("cannot create checkpoint " + path_.string());
            os << header_ << "\n";
            return states;
        }
        LineReader reader(is);
        auto head = reader.next();
        if (!head || *head != header_) {
            throw GameError("checkpoint " + path_.string() + " belongs to a different run");
        }
        std::map<std::uint32_t, ShardState> pending;
        while (auto toks = reader.next_tokens()) {
            const auto& key = (*toks)[0].text;
            auto num = [&](std::size_t i) { return parse_uint(reader, (*toks)[i], UINT64_MAX); };
            if ((key == "found" || key == "disagree") && toks->size() == 3) {
                auto& st = pending[std::uint32_t(num(1))];
                (key == "found" ? st.found : st.disagree).push_back(num(2));
            } else if (key == "shard" && toks->size() == 10) {
                auto k = std::uint32_t(num(1));
                auto& st = pending[k];
                st.next = num(3);
                st.done = num(5);
                st.fast = num(7);
                st.sampled = num(9);
                states[k] = st;
            } else {
                reader.fail((*toks)[0], "malformed checkpoint line");
            }
        }
        return states;
    }

    void commit(std::uint32_t k, const ShardState& st, std::size_t found_from, std::size_t disagree_from)
    {
        if (!enabled()) return;
        std::ostringstream os;
        for (std::size_t i = found_from; i < st.found.size(); i++) os << "found " << k << " " << st.found[i] << "\n";
        for (std::size_t i = disagree_from; i < st.disagree.size(); i++) {
            os << "disagree " << k << " " << st.disagree[i] << "\n";
        }
        os << "shard " << k << " next " << st.next << " done " << st.done << " fast " << st.fast << " sampled "
           << st.sampled << "\n";
        std::lock_guard<std::mutex> lock(mutex_);
        std::ofstream out(path_, std::ios::app);
        out << os.str();
        out.flush();
        if (!out) throw GameError("cannot append to checkpoint " + path_.string());
    }

  private:
    std::filesystem::path path_;
    std::string header_;
    std::mutex mutex_;
};

void
run_shard(std::uint32_t n, std::uint32_t k, const CampaignOptions& opts, ShardState& st, Checkpoint& cp)
{
    LengthAnalyzer analyzer(GameSize::standard(n));
    StrategyEnumerator e(n, opts.symmetry, k, opts.shards, st.next);
    SimpleStrategy strat;
    std::uint64_t index = 0;
    std::uint64_t block = UINT64_MAX;
    std::size_t found_mark = st.found.size(), disagree_mark = st.disagree.size();
    while (e.next(strat, index)) {
        if (index / kBlock != block) {
            if (block != UINT64_MAX) {
                st.next = index / kBlock * kBlock;
                cp.commit(k, st, found_mark, disagree_mark);
                found_mark = st.found.size();
                disagree_mark = st.disagree.size();
            }
            block = index / kBlock;
        }
        st.done++;
        bool win;
        if (canonical_loop_exists(strat)) {
            st.fast++;
            win = true;
            if (mix(opts.seed, index) % 100 == 0) {
                st.sampled++;
                if (!analyzer.all_win(strat)) st.disagree.push_back(index);
            }
        } else {
            win = analyzer.all_win(strat);
        }
        if (!win) st.found.push_back(index);
    }
    st.next = e.position();
    cp.commit(k, st, found_mark, disagree_mark);
}

/** Deterministic check that canonical representatives keep the verdict. */
void
validate_symmetry(std::uint32_t n, const CampaignOptions& opts, CampaignReport& rep)
{
    auto rng = rng_for(opts.seed, 0x5e);
    LengthAnalyzer analyzer(GameSize::standard(n));
    std::uint64_t total = strategy_count(n);
    std::uint64_t samples = std::max<std::uint64_t>(1, total / 1000);
    std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < samples; i++) {
        auto st = decode_strategy(n, pick(rng), 1);
        auto rep_st = canonical_form(st);
        if (!is_canonical(rep_st) || delayer_wins_all(st, analyzer) != delayer_wins_all(rep_st, analyzer)) {
            bad++;
            rep.counterexamples.push_back({"symmetry-" + std::to_string(encode_strategy(st)) + ".strat",
                                           strategy_text(st)});
        }
    }
    rep.details.push_back("symmetry_validation_samples=" + std::to_string(samples) +
                          " mismatches=" + std::to_string(bad));
}

} // namespace

CampaignReport
verify_theorem_main(std::uint32_t n, const CampaignOptions& opts)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "theorem-main-n" + std::to_string(n);
    rep.shards = opts.shards;
    rep.threads = std::max<std::uint32_t>(1, opts.threads);
    if (opts.shard_index && *opts.shard_index >= opts.shards) throw GameError("shard index out of range");
    if (n > kFullCeiling) throw GameError("full enumeration is limited to n <= " + std::to_string(kFullCeiling));

    auto gate = verify_oracle_equivalence(500, 0, 8, opts.seed);
    if (!gate.success()) throw ContractViolation("oracle gate failed: the length analysis disagrees with brute force");
    rep.details.push_back("oracle_gate=passed tables=" + std::to_string(gate.space));

    std::ostringstream header;
    header << "checkpoint " << rep.claim << " shards " << opts.shards << " seed " << opts.seed << " symmetry "
           << (opts.symmetry ? "on" : "off");
    Checkpoint cp(opts.checkpoint, header.str());
    auto resumed = cp.load();

    std::vector<std::uint32_t> mine;
    for (std::uint32_t k = 0; k < opts.shards; k++) {
        if (!opts.shard_index || *opts.shard_index == k) mine.push_back(k);
    }
    std::vector<ShardState> states(mine.size());
    for (std::size_t i = 0; i < mine.size(); i++) {
        if (resumed.count(mine[i])) states[i] = resumed[mine[i]];
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(rep.threads);
    for (std::uint32_t t = 0; t < rep.threads; t++) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < mine.size(); i += rep.threads) run_shard(n, mine[i], opts, states[i], cp);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    std::vector<std::uint64_t> found, disagree;
    std::uint64_t fast = 0, sampled = 0;
    for (const auto& st : states) {
        rep.space += st.done;
        fast += st.fast;
        sampled += st.sampled;
        found.insert(found.end(), st.found.begin(), st.found.end());
        disagree.insert(disagree.end(), st.disagree.begin(), st.disagree.end());
    }
    std::sort(found.begin(), found.end());
    std::sort(disagree.begin(), disagree.end());
    for (auto index : found) {
        auto st = decode_strategy(n, index, 1);
        st.s = std::max<std::uint32_t>(1, first_losing_length(st, opts.s_max));
        rep.counterexamples.push_back({rep.claim + "-" + std::to_string(index) + ".strat", strategy_text(st)});
    }
    for (auto index : disagree) {
        rep.counterexamples.push_back({rep.claim + "-fastpath-" + std::to_string(index) + ".strat",
                                       strategy_text(decode_strategy(n, index, 1))});
    }
    rep.details.push_back("loop_fast_path=" + std::to_string(fast) + " cross_checked=" + std::to_string(sampled) +
                          " disagreements=" + std::to_string(disagree.size()));
    rep.details.push_back("certified=" + std::to_string(rep.space - fast) +
                          " prover_wins=" + std::to_string(found.size()));
    if (opts.symmetry) validate_symmetry(n, opts, rep);
    if (n <= 2) {
        auto small = prover_small_n(n, n + 1);
        bool listed = std::binary_search(found.begin(), found.end(), encode_strategy(small));
        rep.details.push_back(std::string("small_n_prover_found=") + (listed ? "yes" : "no"));
    }
    rep.seconds = clock.seconds();
    return rep;
}

CampaignReport
verify_theorem_main_sampled(std::uint32_t n, const CampaignOptions& opts)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "theorem-main-n" + std::to_string(n) + "-sampled";
    auto gate = verify_oracle_equivalence(0, 200, 8, opts.seed);
    if (!gate.success()) throw ContractViolation("oracle gate failed: the length analysis disagrees with brute force");
    rep.details.push_back("oracle_gate=passed tables=" + std::to_string(gate.space));
    std::uint64_t samples = opts.samples ? opts.samples : 100000;
    auto rng = rng_for(opts.seed, n);
    LengthAnalyzer analyzer(GameSize::standard(n));
    std::uint64_t fast = 0;
    for (std::uint64_t i = 0; i < samples; i++) {
        auto st = random_strategy(n, 1, rng);
        rep.space++;
        if (canonical_loop_exists(st)) fast++;
        if (!delayer_wins_all(st, analyzer)) {
            st.s = std::max<std::uint32_t>(1, first_losing_length(st, opts.s_max));
            rep.counterexamples.push_back({rep.claim + "-" + std::to_string(i) + ".strat", strategy_text(st)});
        }
    }
    rep.details.push_back("loop_fast_path=" + std::to_string(fast));
    rep.seconds = clock.seconds();
    return rep;
}

CampaignReport
verify_oracle_equivalence(std::uint64_t samples_n3, std::uint64_t samples_n4, std::uint32_t s_limit,
                          std::uint64_t seed)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "oracle-equivalence";
    std::uint64_t prover_cells = 0;
    auto check = [&](const SimpleStrategy& st, const std::string& tag) {
        rep.space++;
        auto cert = delayer_wins_lengths(st, s_limit);
        cert.check();
        for (std::uint32_t s = 1; s <= s_limit; s++) {
            SimpleStrategy at = st;
            at.s = s;
            bool oracle = brute_force_delayer_wins(at, s);
            if (!oracle) prover_cells++;
            if (oracle != cert.wins(s)) {
                rep.counterexamples.push_back({"oracle-" + tag + "-s" + std::to_string(s) + ".strat",
                                               strategy_text(at)});
            }
        }
    };
    if (samples_n3 > 0) {
        for (std::uint64_t i = 0; i < strategy_count(2); i++) check(decode_strategy(2, i, 1), "n2-" + std::to_string(i));
    }
    auto rng3 = rng_for(seed, 3);
    for (std::uint64_t i = 0; i < samples_n3; i++) check(random_strategy(3, 1, rng3), "n3-" + std::to_string(i));
    auto rng4 = rng_for(seed, 4);
    for (std::uint64_t i = 0; i < samples_n4; i++) check(random_strategy(4, 1, rng4), "n4-" + std::to_string(i));
    rep.details.push_back("n3_tables=" + std::to_string(samples_n3) + " n4_tables=" + std::to_string(samples_n4) +
                          " s_limit=" + std::to_string(s_limit) + " prover_won_cells=" + std::to_string(prover_cells));
    rep.seconds = clock.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// small strategies

namespace {

/** Calls f on every answer sequence of length s over the holes. */
template <typename F>
void
for_each_play(std::uint32_t holes, std::uint32_t s, F&& f)
{
    Play play;
    play.answers.assign(s, 0);
    while (true) {
        f(play);
        std::size_t i = 0;
        while (i < s && ++play.answers[i] == holes) play.answers[i++] = 0;
        if (i == s) return;
    }
}

bool
prover_won(PlayTag t)
{
    return t == PlayTag::ProverWinsMidgame || t == PlayTag::ProverWinsFinal;
}

void
exhaust_prover(const SimpleStrategy& st, const std::string& tag, CampaignReport& rep)
{
    std::uint64_t plays = 0;
    for_each_play(st.size.holes, st.s, [&](const Play& play) {
        plays++;
        auto out = play_simplified(st, play);
        if (!prover_won(out.tag)) {
            std::ostringstream os;
            write_strategy(os, st);
            write_play(os, play);
            rep.counterexamples.push_back({tag + "-play-" + std::to_string(plays) + ".txt", os.str()});
        }
    });
    rep.space += plays;
    rep.details.push_back(tag + " plays=" + std::to_string(plays));
}

} // namespace

CampaignReport
verify_small_n()
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "small-n";
    for (auto [n, s] : {std::pair<std::uint32_t, std::uint32_t>{1, 2}, {2, 3}, {2, 6}}) {
        exhaust_prover(prover_small_n(n, s), "n" + std::to_string(n) + "-s" + std::to_string(s), rep);
    }
    rep.seconds = clock.seconds();
    return rep;
}

CampaignReport
verify_subset_prop(std::uint32_t n_max)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "subset-prop";
    for (std::uint32_t n = 1; n <= n_max; n++) {
        auto st = subset_prover(n);
        exhaust_prover(st, "n" + std::to_string(n), rep);
        // with only n answers Delayer must be able to survive
        st.s = n;
        bool delayer = false;
        for_each_play(n, n, [&](const Play& play) {
            if (play_simplified(st, play).tag == PlayTag::DelayerWins) delayer = true;
        });
        if (!delayer) rep.counterexamples.push_back({"subset-control-n" + std::to_string(n) + ".strat", strategy_text(st)});
        rep.details.push_back("n" + std::to_string(n) + " control_s=n delayer_survives=" + (delayer ? "yes" : "no"));
    }
    rep.seconds = clock.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// tree order

Order
tree_order_by_definition(const FiniteTree& t, const FiniteTree& u)
{
    auto below = [](const FiniteTree& x, const Vertex& w) {
        std::vector<Vertex> out;
        for (const auto& v : x.vertices()) {
            if (v < w) out.push_back(v);
        }
        return out;
    };
    auto precedes = [&](const FiniteTree& a, const FiniteTree& b) {
        for (const auto& w : b.vertices()) {
            if (!a.contains(w) && below(a, w) == below(b, w)) return true;
        }
        return false;
    };
    if (precedes(t, u)) return Order::Less;
    if (precedes(u, t)) return Order::Greater;
    return Order::Equal;
}

namespace {

void
check_order_family(std::uint64_t b, std::size_t h, CampaignReport& rep)
{
    auto trees = enumerate_trees(b, h);
    const std::size_t m = trees.size();
    std::vector<Order> cmp(m * m);
    std::vector<BigNat> embed(m);
    for (std::size_t i = 0; i < m; i++) embed[i] = ordinal_embed(trees[i], b + 1, h);
    auto fail = [&](const std::string& what, std::initializer_list<std::size_t> ids) {
        std::string text;
        for (auto i : ids) text += tree_text(trees[i]) + "--\n";
        rep.counterexamples.push_back({"order-b" + std::to_string(b) + "-h" + std::to_string(h) + "-" + what + "-" +
                                           std::to_string(rep.counterexamples.size()) + ".txt",
                                       text});
    };
    for (std::size_t i = 0; i < m; i++) {
        for (std::size_t j = 0; j < m; j++) cmp[i * m + j] = tree_compare(trees[i], trees[j]);
    }
    std::uint64_t checks = 0;
    for (std::size_t i = 0; i < m; i++) {
        for (std::size_t j = 0; j < m; j++) {
            checks++;
            Order o = cmp[i * m + j], r = cmp[j * m + i];
            if ((o == Order::Equal) != (i == j)) fail("trichotomy", {i, j});
            if ((o == Order::Less) != (r == Order::Greater)) fail("antisymmetry", {i, j});
            if (o != tree_order_by_definition(trees[i], trees[j])) fail("definition", {i, j});
            if ((o == Order::Less) != (embed[i] > embed[j])) fail("embedding", {i, j});
        }
    }
    for (std::size_t i = 0; i < m; i++) {
        for (std::size_t j = 0; j < m; j++) {
            if (cmp[i * m + j] != Order::Less) continue;
            for (std::size_t k = 0; k < m; k++) {
                if (cmp[j * m + k] == Order::Less && cmp[i * m + k] != Order::Less) fail("transitivity", {i, j, k});
            }
        }
    }
    checks += std::uint64_t(m) * m * m;
    rep.space += checks;
    rep.details.push_back("universe=[" + std::to_string(b) + "]^<=" + std::to_string(h) +
                          " trees=" + std::to_string(m) + " pairs=" + std::to_string(m * m) +
                          " triples=" + std::to_string(std::uint64_t(m) * m * m));
}

} // namespace

CampaignReport
verify_order_axioms()
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "order-axioms";
    check_order_family(2, 2, rep);
    check_order_family(3, 2, rep);
    check_order_family(1, 4, rep);
    rep.seconds = clock.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// G2

namespace {

std::size_t
hash_view(std::uint64_t seed, std::uint64_t salt, const Vertex& v, const Matching& m)
{
    std::size_t h = seed;
    boost::hash_combine(h, salt);
    boost::hash_combine(h, boost::hash_range(v.begin(), v.end()));
    for (const auto& r : m) {
        boost::hash_combine(h, r.pigeon);
        boost::hash_combine(h, r.hole);
    }
    return h;
}

} // namespace

ObliviousStrategy
random_oblivious_strategy(const LogPower& cfg, std::uint64_t seed)
{
    const std::uint32_t n = cfg.n();
    const std::uint64_t cap = cfg.cap();
    ObliviousStrategy s;
    s.query = [=](const Vertex& v, const Matching& m, const AuxWord&) {
        auto rng = rng_for(seed, hash_view(seed, 1, v, m));
        Query q;
        std::size_t items = 1 + rng() % 2;
        for (std::size_t i = 0; i < items; i++) {
            if (rng() % 2) q.push_back(QueryItem::pigeon(Pigeon(rng() % (n + 1))));
            else q.push_back(QueryItem::hole(Hole(rng() % n)));
        }
        return normalize_query(q);
    };
    s.move = [=](const Vertex& v, const Matching& m, const AuxWord&, const Matching& answer) {
        std::size_t h = hash_view(seed, 2, v, m);
        for (const auto& r : answer) {
            boost::hash_combine(h, r.pigeon);
            boost::hash_combine(h, r.hole);
        }
        auto rng = rng_for(seed, h);
        ProverMove mv;
        mv.option = v.empty() ? 1 : int(1 + rng() % 3);
        mv.b = 1 + rng() % cap;
        if (mv.option == 1) mv.x = {1 + rng() % cap};
        else mv.x = Vertex(v.begin(), v.begin() + rng() % v.size());
        return mv;
    };
    return s;
}

G2Delayer
random_g2_delayer(const GameSize& size, std::uint64_t seed, std::uint64_t decode_cap)
{
    return [=](const G2Position& pos, const Query& q) {
        Vertex v = decode_cap ? decode_vertex(pos.frontier(), decode_cap).first : pos.frontier();
        std::size_t h = hash_view(seed, 3, v, pos.at(pos.frontier()).matching);
        for (const auto& item : q) {
            boost::hash_combine(h, int(item.kind));
            boost::hash_combine(h, item.id);
        }
        auto covers = minimal_covers(q, std::nullopt, size);
        return covers.at(h % covers.size());
    };
}

CampaignReport
verify_g2_playouts(std::uint64_t playouts, std::uint64_t seed)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "g2-playouts";
    const std::uint64_t test_cap = 4;
    FiniteTree t(vertex_universe(test_cap, 2));
    std::uint64_t longest = 0;
    std::map<std::string, std::uint64_t> winners;
    for (std::uint64_t i = 0; i < playouts; i++) {
        std::uint32_t n = 3 + std::uint32_t(i % 3);
        auto cfg = LogPower(n, 2).with_cap(test_cap);
        std::uint64_t bound = g2_step_bound(cfg, t);
        std::uint64_t sd = mix(seed, i);
        auto prover = random_oblivious_strategy(cfg, sd);
        auto delayer = random_g2_delayer(GameSize::standard(n), sd);
        rep.space++;
        std::string tag = "g2-playout-" + std::to_string(i) + ".txt";
        try {
            auto play = g2_play(cfg, t, prover, delayer, bound);
            winners[to_string(play.winner)]++;
            longest = std::max<std::uint64_t>(longest, play.rounds.size());
            bool ok = play.winner != G2Tag::DelayerWins && play.rounds.size() <= bound;
            for (std::size_t k = 1; k < play.doms.size() && ok; k++) {
                ok = tree_order_by_definition(play.doms[k - 1], play.doms[k]) == Order::Less;
            }
            if (!ok) {
                G2Transcript tr{n, 2, play.rounds};
                std::ostringstream os;
                write_g2_transcript(os, tr);
                rep.counterexamples.push_back({tag, os.str()});
            }
        } catch (const ContractViolation& e) {
            rep.counterexamples.push_back({tag, std::string("contract violation: ") + e.what() + "\n"});
        }
    }
    std::string w = "test_cap=4 C=2 longest=" + std::to_string(longest);
    for (const auto& [k, v] : winners) w += " " + k + "=" + std::to_string(v);
    rep.details.push_back(w);
    rep.seconds = clock.seconds();
    return rep;
}

CampaignReport
verify_root_ramify()
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "root-ramify";
    for (std::uint32_t n = 2; n <= 5; n++) {
        LogPower cfg(n, 2);
        auto rr = prover_root_ramify(n, cfg);
        auto sum = g2_exhaustive(cfg, rr.tree, rr.strategy, g2_step_bound(cfg, rr.tree));
        rep.space += sum.branches;
        rep.details.push_back("n" + std::to_string(n) + " branches=" + std::to_string(sum.branches) +
                              " prover_wins=" + std::to_string(sum.prover_wins) +
                              " longest=" + std::to_string(sum.longest));
        if (sum.prover_wins != sum.branches) {
            rep.counterexamples.push_back({"root-ramify-n" + std::to_string(n) + ".txt",
                                           "branches " + std::to_string(sum.branches) + " prover_loses " +
                                               std::to_string(sum.prover_loses) + " capped " +
                                               std::to_string(sum.capped) + "\n"});
        }
    }
    rep.seconds = clock.seconds();
    return rep;
}

namespace {

/** Plain vertices with their matchings. */
std::map<Vertex, Matching>
plain_view(const G2Position& pos, std::uint64_t decode_cap)
{
    std::map<Vertex, Matching> out;
    for (const auto& [v, label] : pos.labels()) {
        out[decode_cap ? decode_vertex(v, decode_cap).first : v] = label.matching;
    }
    return out;
}

std::string
compare_plays(const G2Play& a, const G2Play& b, std::uint64_t cap)
{
    if (a.winner != b.winner) return std::string("winner ") + to_string(a.winner) + " vs " + to_string(b.winner);
    if (a.rounds.size() != b.rounds.size()) return "round count differs";
    for (std::size_t i = 0; i < a.rounds.size(); i++) {
        if (a.rounds[i].answer != b.rounds[i].answer) return "answer differs at round " + std::to_string(i + 1);
    }
    if (plain_view(a.final_position, 0) != plain_view(b.final_position, cap)) return "final positions differ";
    return "";
}

} // namespace

CampaignReport
verify_g2prime(std::uint64_t plays, std::uint64_t seed)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "g2prime";
    const std::uint64_t test_cap = 3;
    FiniteTree t(vertex_universe(test_cap, 2));
    std::map<std::string, std::uint64_t> winners;
    auto record = [&](const std::string& tag, const G2Play& a, const G2Play& b, std::uint64_t cap) {
        rep.space++;
        winners[to_string(a.winner)]++;
        auto diff = compare_plays(a, b, cap);
        if (!diff.empty()) rep.counterexamples.push_back({tag, diff + "\n"});
    };
    for (std::uint64_t i = 0; i < plays; i++) {
        std::uint32_t n = 3 + std::uint32_t(i % 2);
        auto cfg = LogPower(n, 2).with_cap(test_cap);
        std::uint64_t sd = mix(seed, i);
        auto s = random_oblivious_strategy(cfg, sd);
        auto size = GameSize::standard(n);
        std::uint64_t cap_steps = g2_step_bound(cfg, t);
        auto plain = g2_play(cfg, t, s, random_g2_delayer(size, sd), cap_steps);
        auto game = to_g2prime(s, cfg, t);
        auto prime = g2prime_play(game, random_g2_delayer(size, sd, test_cap), cap_steps);
        record("g2prime-" + std::to_string(i) + ".txt", plain, prime, test_cap);
    }
    // the winning strategy at the real cap, against hashed Delayers
    LogPower cfg(3, 2);
    auto rr = prover_root_ramify(3, cfg);
    auto game = to_g2prime(rr.strategy, cfg, rr.tree);
    for (std::uint64_t i = 0; i < 20; i++) {
        std::uint64_t sd = mix(seed ^ 0x77, i);
        std::uint64_t cap_steps = g2_step_bound(cfg, rr.tree);
        auto plain = g2_play(cfg, rr.tree, rr.strategy, random_g2_delayer(GameSize::standard(3), sd), cap_steps);
        auto prime = g2prime_play(game, random_g2_delayer(GameSize::standard(3), sd, cfg.cap()), cap_steps);
        record("g2prime-ramify-" + std::to_string(i) + ".txt", plain, prime, cfg.cap());
    }
    std::string w = "test_cap=3 ramify_plays=20";
    for (const auto& [k, v] : winners) w += " " + k + "=" + std::to_string(v);
    rep.details.push_back(w);
    rep.seconds = clock.seconds();
    return rep;
}

CampaignReport
verify_g2_properties(const CampaignOptions& opts)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "g2-properties";
    std::uint64_t playouts = opts.samples ? opts.samples : 10000;
    for (auto part : {verify_g2_playouts(playouts, opts.seed), verify_root_ramify(), verify_g2prime(1000, opts.seed)}) {
        rep.details.push_back(part.claim + " space=" + std::to_string(part.space) +
                              " counterexamples=" + std::to_string(part.counterexamples.size()));
        rep.merge(std::move(part));
    }
    rep.seconds = clock.seconds();
    return rep;
}

// ---------------------------------------------------------------------------
// figures and php-trees

namespace {

const std::vector<std::string> kFigures = {"fig4",  "fig5",  "fig6",  "fig7", "fig9", "fig12", "fig14", "fig15",
                                           "fig19", "fig21", "fig24", "php5", "php6", "php7",  "php10", "php12"};

std::ifstream
open_data(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is) throw GameError("cannot open " + path.string());
    return is;
}

} // namespace

CampaignReport
verify_figures(const std::filesystem::path& data_dir)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "figures";

    auto is = open_data(data_dir / "fig1.strat");
    auto fig1 = read_strategy(is);
    auto loops = find_loops(fig1);
    std::vector<EdgeRef> expected{{2, 0}, {2, 1}, {3, 2}};
    rep.space++;
    if (loops != expected || build_graph(fig1).edges.size() != 12) {
        rep.counterexamples.push_back({"fig1.strat", strategy_text(fig1)});
    }

    for (const auto& name : kFigures) {
        auto cis = open_data(data_dir / "figures" / (name + ".cover"));
        auto spec = read_cover_spec(cis);
        auto report = check_cover_by_two(spec);
        rep.space++;
        std::string wins;
        for (const auto& w : report.wins) {
            std::size_t count = std::count(w.begin(), w.end(), true);
            wins += " " + std::to_string(count) + "/" + std::to_string(w.size());
        }
        rep.details.push_back(name + " ok=" + (report.ok ? "yes" : "no") + " path_wins" + wins);
        if (!report.ok) rep.counterexamples.push_back({name + ".txt", report.failure + "\n"});
        if (name == "fig5" && report.ok) {
            // the first path wins exactly at odd lengths
            bool odd = true;
            for (std::size_t k = 0; k < report.wins[0].size(); k++) {
                std::size_t s = spec.threshold + k;
                if (report.wins[0][k] != (s % 2 == 1)) odd = false;
            }
            rep.details.push_back(std::string("fig5_first_path_wins_iff_s_odd=") + (odd ? "yes" : "no"));
        }
    }

    auto tis = open_data(data_dir / "php1.tree");
    auto php1 = read_php_tree(tis, GameSize::standard(3));
    auto loose = find_loose_pairs(php1);
    rep.space++;
    bool php_ok = validate_php_tree(php1) && !is_complete(php1) && !is_symmetric(php1) &&
                  std::find(loose.begin(), loose.end(), EdgeRef{0, 1}) != loose.end();
    if (!php_ok) rep.counterexamples.push_back({"php1.txt", "php1 tree predicates differ\n"});
    rep.seconds = clock.seconds();
    return rep;
}

namespace {

/** Uniform tables mixed with cyclic tables, whose php-trees are complete. */
SimpleStrategy
mixed_strategy(std::uint32_t n, std::uint32_t s, std::mt19937_64& rng)
{
    auto st = random_strategy(n, s, rng);
    std::uint64_t kind = rng() % 3;
    if (kind == 0) return st;
    std::vector<Pigeon> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Pigeon> succ(n + 1);
    for (std::size_t i = 0; i <= n; i++) succ[order[i]] = order[(i + 1) % (n + 1)];
    for (Pigeon p = 0; p <= n; p++) {
        for (Hole h = 0; h < n; h++) st.set(p, h, succ[p]);
    }
    if (kind == 1) st.set(Pigeon(rng() % (n + 1)), Hole(rng() % n), Pigeon(rng() % (n + 1)));
    return st;
}

bool
canonical_win_without_giving_up(const SimpleStrategy& st)
{
    for (const auto& cp : enumerate_canonical_plays(st)) {
        if (!cp.gave_up_at && cp.outcome.tag == PlayTag::DelayerWins) return true;
    }
    return false;
}

} // namespace

CampaignReport
verify_php_trees(const CampaignOptions& opts)
{
    Stopwatch clock;
    CampaignReport rep;
    rep.claim = "php-trees";
    std::uint64_t trees = opts.samples ? opts.samples : 10000;

    auto rng = rng_for(opts.seed, 0x71);
    for (std::uint64_t i = 0; i < trees; i++) {
        std::uint32_t n = 3 + std::uint32_t(i % 2);
        auto st = mixed_strategy(n, n + 1, rng);
        auto t = build_php_tree(st);
        rep.space++;
        if (!validate_php_tree(t) || !is_symmetric(t)) {
            rep.counterexamples.push_back({"php-build-" + std::to_string(i) + ".strat", strategy_text(st)});
        }
    }

    std::uint64_t complete = 0;
    for (std::uint64_t i = 0; i < 1000; i++) {
        auto st = mixed_strategy(3, 4, rng);
        bool full = is_complete(build_php_tree(st));
        complete += full;
        rep.space++;
        bool ok = full == !canonical_loop_exists(st);
        for (std::uint32_t s : {4u, 5u, 6u, 9u}) {
            st.s = s;
            ok = ok && (full == !canonical_win_without_giving_up(st));
        }
        if (!ok) rep.counterexamples.push_back({"php-complete-" + std::to_string(i) + ".strat", strategy_text(st)});
    }
    rep.details.push_back("completeness_tables=1000 complete=" + std::to_string(complete));

    // every table with a loop at (p, h): only rows other than p matter for the approach
    const std::uint32_t n = 3;
    const std::size_t bound = 2 * (n - 2) + 1;
    std::size_t worst = 0;
    std::uint64_t loops = 0, replayed = 0;
    auto size = GameSize::standard(n);
    for (Pigeon p = 0; p <= n; p++) {
        for (Hole h = 0; h < n; h++) {
            std::vector<std::size_t> cells;
            for (Pigeon q = 0; q <= n; q++) {
                if (q == p) continue;
                for (Hole l = 0; l < n; l++) cells.push_back(q * n + l);
            }
            std::uint64_t combos = 1;
            for (std::size_t i = 0; i < cells.size(); i++) combos *= n + 1;
            SimpleStrategy st{size, 1, 0, std::vector<Pigeon>(std::size_t(n + 1) * n, p)};
            for (std::uint64_t c = 0; c < combos; c++) {
                std::uint64_t rest = c;
                for (auto cell : cells) {
                    st.table[cell] = Pigeon(rest % (n + 1));
                    rest /= n + 1;
                }
                for (Pigeon init = 0; init <= n; init++) {
                    st.init = init;
                    loops++;
                    auto path = loop_approach(st, p, h);
                    if (!path) continue;
                    worst = std::max(worst, path->size());
                    std::vector<int> visits(n + 1, 0);
                    for (std::size_t k = 1; k < path->size(); k++) visits[(*path)[k].tail]++;
                    bool ok = path->size() <= bound;
                    for (Pigeon q = 0; q <= n; q++) {
                        if (q != p && q != init && visits[q] > 2) ok = false;
                    }
                    if (mix(opts.seed, loops) % 1000 == 0) {
                        replayed++;
                        for (std::uint32_t s = std::uint32_t(path->size()) + 1; s <= path->size() + 3; s++) {
                            st.s = s;
                            auto play = loop_play(st, p, h, s);
                            ok = ok && play && play_simplified(st, *play).tag == PlayTag::DelayerWins;
                        }
                        st.s = 1;
                    }
                    if (!ok) {
                        rep.counterexamples.push_back({"loop-bound-" + std::to_string(loops) + ".strat",
                                                       strategy_text(st)});
                    }
                }
            }
        }
    }
    rep.space += loops;
    rep.details.push_back("loop_instances=" + std::to_string(loops) + " worst_approach=" + std::to_string(worst) +
                          " bound=" + std::to_string(bound) + " replayed=" + std::to_string(replayed));

    // at n = 4 the counting bound of two visits per pigeon gives 2(n-1)+1
    std::size_t worst4 = 0, over = 0;
    for (std::uint64_t i = 0; i < 1000; i++) {
        auto st = random_strategy(4, 1, rng);
        for (const auto& e : find_loops(st)) {
            auto len = loop_approach_length(st, e.tail, e.label);
            if (!len) continue;
            worst4 = std::max(worst4, *len);
            if (*len > 2 * (4 - 2) + 1) over++;
            if (*len > 2 * (4 - 1) + 1) {
                rep.counterexamples.push_back({"loop-bound-n4-" + std::to_string(i) + ".strat", strategy_text(st)});
            }
        }
    }
    rep.details.push_back("n4_tables=1000 worst_approach=" + std::to_string(worst4) +
                          " above_2n-3=" + std::to_string(over));
    rep.seconds = clock.seconds();
    return rep;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>&
claim_ids()
{
    static const std::vector<std::string> ids = {"theorem-main-n3", "theorem-main-n2",   "theorem-main-n4-sampled",
                                                 "small-n",         "subset-prop",       "order-axioms",
                                                 "g2-properties",   "oracle-equivalence", "figures",
                                                 "php-trees"};
    return ids;
}

CampaignReport
run_campaign(const std::string& claim, const CampaignOptions& opts)
{
    CampaignReport rep;
    if (claim == "theorem-main-n3") rep = verify_theorem_main(3, opts);
    else if (claim == "theorem-main-n2") rep = verify_theorem_main(2, opts);
    else if (claim == "theorem-main-n4-sampled") rep = verify_theorem_main_sampled(4, opts);
    else if (claim == "small-n") rep = verify_small_n();
    else if (claim == "subset-prop") rep = verify_subset_prop(4);
    else if (claim == "order-axioms") rep = verify_order_axioms();
    else if (claim == "g2-properties") rep = verify_g2_properties(opts);
    else if (claim == "oracle-equivalence") {
        rep = verify_oracle_equivalence(opts.samples ? opts.samples : 10000, opts.samples ? opts.samples / 10 : 1000,
                                        8, opts.seed);
    } else if (claim == "figures") rep = verify_figures(opts.data_dir);
    else if (claim == "php-trees") rep = verify_php_trees(opts);
    else throw GameError("unknown claim '" + claim + "'");
    rep.claim = claim;
    rep.shards = opts.shards;
    rep.threads = std::max<std::uint32_t>(1, opts.threads);
    return rep;
}

} // namespace pebble
