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

#include "cli.hpp"

#include "pebble/game_g1.hpp"
#include "pebble/game_g2.hpp"
#include "pebble/php_tree.hpp"
#include "pebble/simple_game.hpp"
#include "pebble/text_io.hpp"
#include "pebble/tree.hpp"
#include "pebble/verifier.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace pebble {

namespace {

/** Input failure already formatted for the user. */
class InputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

template <typename F>
auto
read_file(const std::string& path, F&& parse)
{
    std::ifstream is(path);
    if (!is) throw InputError(path + ": cannot open");
    try {
        return parse(is);
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    } catch (const GameError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string
edge_list(const std::vector<EdgeRef>& edges)
{
    std::string out;
    for (const auto& e : edges) {
        if (!out.empty()) out += ",";
        out += "(" + std::to_string(e.tail) + "," + std::to_string(e.label) + ")";
    }
    return "{" + out + "}";
}

int
analyze(const std::string& path, std::uint32_t s_max, std::optional<std::uint32_t> s0, std::ostream& out)
{
    auto strat = read_file(path, [](std::istream& is) { return read_strategy(is); });
    strat.validate();
    auto graph = build_graph(strat);
    out << "n=" << strat.size.holes << " pigeons=" << strat.size.pigeons << " s=" << strat.s
        << " init=" << strat.init << "\n";
    out << "graph nodes=" << graph.nodes << " edges=" << graph.edges.size() << "\n";
    for (Pigeon p = 0; p < graph.nodes; p++) {
        out << "  " << p << ":";
        for (auto e : graph.out[p]) out << " " << graph.edges[e].label << "->" << graph.edges[e].head;
        out << "\n";
    }
    auto loops = find_loops(strat);
    out << "loops=" << edge_list(loops) << "\n";
    if (strat.size.pigeons == strat.size.holes + 1) {
        auto tree = build_php_tree(strat);
        out << "php_tree nodes=" << tree.nodes.size() << " depth=" << tree.depth()
            << " valid=" << validate_php_tree(tree) << " complete=" << is_complete(tree)
            << " symmetric=" << is_symmetric(tree) << "\n";
        out << "loose_pairs=" << edge_list(find_loose_pairs(tree)) << "\n";
    }
    auto cert = delayer_wins_lengths(strat, s_max);
    cert.check();
    out << "delayer_wins s=1.." << cert.explicit_wins.size() << ": ";
    for (bool w : cert.explicit_wins) out << (w ? '1' : '0');
    out << "\npreperiod=" << cert.preperiod << " period=" << cert.period << " residues={";
    bool first = true;
    for (auto r : cert.residues) {
        out << (first ? "" : ",") << r;
        first = false;
    }
    out << "} all_s=" << (cert.all_win() ? "delayer" : "mixed") << "\n";
    if (s0) {
        for (const auto& e : loops) {
            auto len = loop_approach_length(strat, e.tail, e.label);
            out << "loop (" << e.tail << "," << e.label << ") approach=";
            if (!len) {
                out << "none\n";
                continue;
            }
            std::uint64_t from = std::max<std::uint64_t>(*s0, *len + 1);
            bool all = true;
            for (std::uint64_t s = from; s < from + cert.preperiod + cert.period; s++) all = all && cert.wins(s);
            out << *len << " wins_from_s=" << from << " " << (all ? "confirmed" : "refuted") << "\n";
        }
    }
    return 0;
}

int
play(const std::string& strat_path, const std::string& answers_path, std::ostream& out)
{
    auto strat = read_file(strat_path, [](std::istream& is) { return read_strategy(is); });
    auto answers = read_file(answers_path, [](std::istream& is) { return read_play(is); });
    PlayOutcome outcome;
    try {
        outcome = play_simplified(strat, answers);
    } catch (const GameError& e) {
        throw InputError(answers_path + ": " + e.what());
    }
    for (std::size_t i = 0; i < outcome.records.size(); i++) {
        out << "round " << i + 1 << " ask " << outcome.records[i].pigeon << " answer " << outcome.records[i].hole
            << "\n";
    }
    out << "outcome=" << to_string(outcome.tag);
    if (outcome.tag == PlayTag::ProverWinsMidgame) out << " step=" << outcome.step;
    out << "\n";
    return 0;
}

int
order(const std::string& a_path, const std::string& b_path, std::ostream& out)
{
    auto a = read_file(a_path, [](std::istream& is) { return read_tree(is); });
    auto b = read_file(b_path, [](std::istream& is) { return read_tree(is); });
    out << to_string(tree_compare(a, b)) << "\n";
    std::uint64_t base = std::max<std::uint64_t>({a.max_index(), b.max_index(), 1}) + 1;
    std::size_t height = std::max(a.height(), b.height());
    if (std::pow(double(base - 1), double(height)) > 1e6) {
        out << "embeddings skipped: universe too large\n";
        return 0;
    }
    out << "embed(A)=" << ordinal_embed(a, base, height) << "\n";
    out << "embed(B)=" << ordinal_embed(b, base, height) << "\n";
    return 0;
}

std::vector<Matching>
read_answers(std::istream& is)
{
    LineReader reader(is);
    std::vector<Matching> out;
    while (auto toks = reader.next_tokens()) {
        if ((*toks)[0].text != "answer:") reader.fail((*toks)[0], "expected 'answer: <records>'");
        out.push_back(parse_records(reader, *toks, 1));
    }
    return out;
}

int
g2sim(std::uint32_t n, std::uint32_t c, const std::string& strategy, const std::string& answers_path,
      std::optional<std::uint64_t> cap, std::ostream& out)
{
    LogPower cfg(n, c);
    if (cap) cfg = cfg.with_cap(*cap);
    G2Transcript tr{n, c, {}};
    G2Tag winner;
    if (strategy == "root-ramify") {
        auto rr = prover_root_ramify(n, cfg);
        std::vector<Matching> scripted;
        if (!answers_path.empty()) scripted = read_file(answers_path, [](std::istream& is) { return read_answers(is); });
        std::size_t next = 0;
        auto size = GameSize::standard(n);
        G2Delayer delayer = [&](const G2Position&, const Query& q) {
            if (answers_path.empty()) return minimal_covers(q, std::nullopt, size).front();
            if (next >= scripted.size()) throw InputError(answers_path + ": ran out of answers");
            return scripted[next++];
        };
        G2Play played;
        try {
            played = g2_play(cfg, rr.tree, rr.strategy, delayer, g2_step_bound(cfg, rr.tree));
        } catch (const GameError& e) {
            throw InputError(answers_path + ": " + e.what());
        }
        tr.rounds = played.rounds;
        winner = played.winner;
    } else if (strategy.empty()) {
        if (answers_path.empty()) throw InputError("g2sim needs --strategy or an --answers transcript");
        auto script = read_file(answers_path, [](std::istream& is) { return read_g2_transcript(is); });
        if (script.n != n || script.c != c) throw InputError(answers_path + ": transcript n or C differs from the flags");
        if (std::pow(double(cfg.cap()), double(c)) > 1e6) throw InputError("the (n,C)-tree is too large; lower --cap");
        FiniteTree t(vertex_universe(cfg.cap(), c));
        G2Position pos;
        winner = G2Tag::Ongoing;
        for (std::size_t i = 0; i < script.rounds.size(); i++) {
            const auto& r = script.rounds[i];
            G2Outcome o;
            try {
                o = g2_apply(pos, normalize_query(r.query), r.answer, r.move, cfg, t);
            } catch (const GameError& e) {
                throw InputError(answers_path + ": round " + std::to_string(i + 1) + ": " + e.what());
            }
            tr.rounds.push_back({r.query, r.answer, r.move, o.erased});
            if (o.tag != G2Tag::Ongoing) {
                winner = o.tag;
                break;
            }
            pos = std::move(o.position);
        }
        out << "final position:\n";
        write_position(out, pos);
    } else {
        throw InputError("unknown strategy '" + strategy + "'");
    }
    write_g2_transcript(out, tr);
    out << "winner=" << to_string(winner) << "\n";
    return 0;
}

} // namespace

int
run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Prover-Delayer pebble game toolkit"};
    app.require_subcommand(1);

    std::string strat_path, answers_path, tree_a, tree_b, claim, strategy, cx_dir, checkpoint, data_dir;
    std::uint32_t s_max = 64, shards = 1, threads = 1, n = 3, c = 2;
    std::optional<std::uint32_t> s0, shard_index;
    std::optional<std::uint64_t> cap;
    std::uint64_t seed = 1, samples = 0;
    bool symmetry = false, no_timing = false;

    auto* an = app.add_subcommand("analyze", "Graph, loops, php-tree and winning lengths of a strategy");
    an->add_option("strategy", strat_path, "strategy file")->required();
    an->add_option("--s-max", s_max, "explicit lengths to print");
    an->add_option("--s0", s0, "threshold for the loop report");

    auto* pl = app.add_subcommand("play", "Replay answers against a strategy");
    pl->add_option("strategy", strat_path, "strategy file")->required();
    pl->add_option("answers", answers_path, "answers file")->required();

    auto* ve = app.add_subcommand("verify", "Run a verification campaign");
    ve->add_option("claim", claim, "claim id")->required()->check(CLI::IsMember(claim_ids()));
    ve->add_option("--shards", shards, "shard count")->check(CLI::PositiveNumber);
    ve->add_option("--shard-index", shard_index, "run only this shard");
    ve->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    ve->add_option("--s-max", s_max, "explicit length bound")->check(CLI::PositiveNumber);
    ve->add_option("--seed", seed, "seed for randomized campaigns");
    ve->add_option("--samples", samples, "sample count for sampled campaigns");
    ve->add_option("--checkpoint", checkpoint, "append-only progress file");
    ve->add_option("--counterexamples", cx_dir, "directory for counterexample files");
    ve->add_option("--data", data_dir, "data directory")->check(CLI::ExistingDirectory);
    ve->add_flag("--symmetry", symmetry, "one strategy per relabeling class");
    ve->add_flag("--no-timing", no_timing, "print seconds=0.000");

    auto* orr = app.add_subcommand("order", "Compare two finite trees");
    orr->add_option("treeA", tree_a, "tree file")->required();
    orr->add_option("treeB", tree_b, "tree file")->required();

    auto* g2 = app.add_subcommand("g2sim", "Play or replay the backtracking game");
    g2->add_option("--n", n, "holes")->check(CLI::PositiveNumber);
    g2->add_option("--C", c, "height")->check(CLI::PositiveNumber);
    g2->add_option("--strategy", strategy, "built-in Prover")->check(CLI::IsMember({"root-ramify"}));
    g2->add_option("--answers", answers_path, "answers (with --strategy) or a full transcript");
    g2->add_option("--cap", cap, "replace 2^{|n|^C} by a smaller cap")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*an) return analyze(strat_path, s_max, s0, out);
        if (*pl) return play(strat_path, answers_path, out);
        if (*orr) return order(tree_a, tree_b, out);
        if (*g2) return g2sim(n, c, strategy, answers_path, cap, out);
        CampaignOptions opts;
        opts.shards = shards;
        opts.shard_index = shard_index;
        opts.threads = threads;
        opts.s_max = s_max;
        opts.seed = seed;
        opts.samples = samples;
        opts.symmetry = symmetry;
        opts.checkpoint = checkpoint;
        opts.data_dir = data_dir.empty() ? std::string(PEBBLE_DATA_DIR) : data_dir;
        auto rep = run_campaign(claim, opts);
        out << format_report(rep, !no_timing);
        if (!cx_dir.empty()) write_counterexamples(rep, cx_dir);
        return rep.success() ? 0 : 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const GameError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace pebble
