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

// Runs every acceptance campaign and prints one PASS/FAIL line per criterion.

#include "cli.hpp"
#include "pebble/verifier.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

using namespace pebble;

namespace {

struct Criterion
{
    int id;
    const char* title;
    std::function<CampaignReport()> run;
};

bool
has_detail(const CampaignReport& r, const std::string& needle)
{
    return std::any_of(r.details.begin(), r.details.end(),
                       [&](const std::string& d) { return d.find(needle) != std::string::npos; });
}

CampaignReport
fig1_loops()
{
    CampaignReport rep;
    rep.claim = "analyze-fig1";
    rep.space = 1;
    std::string path = std::string(PEBBLE_DATA_DIR) + "/fig1.strat";
    const char* argv[] = {"pebble", "analyze", path.c_str()};
    std::ostringstream out, err;
    int code = run_cli(3, argv, out, err);
    if (code != 0 || out.str().find("loops={(2,0),(2,1),(3,2)}\n") == std::string::npos) {
        rep.counterexamples.push_back({"analyze-fig1.txt", out.str() + err.str()});
    }
    return rep;
}

} // namespace

int
main()
{
    CampaignOptions full;
    full.threads = std::max(1u, std::thread::hardware_concurrency());
    full.data_dir = PEBBLE_DATA_DIR;

    std::vector<Criterion> criteria{
        {1, "Delayer wins every length at n=3, all 4^13 strategies",
         [&] {
             auto r = verify_theorem_main(3, full);
             if (r.space != 67108864) r.counterexamples.push_back({"space", std::to_string(r.space)});
             return r;
         }},
        {2, "length certificates agree with brute force",
         [&] { return verify_oracle_equivalence(10000, 1000, 8, full.seed); }},
        {3, "small-n Prover wins every play", [] { return verify_small_n(); }},
        {4, "subset Prover wins every play", [] { return verify_subset_prop(4); }},
        {5, "tree order axioms and order-reversing embedding", [] { return verify_order_axioms(); }},
        {6, "G2 monotonicity and determinacy on random playouts",
         [&] { return verify_g2_playouts(10000, full.seed); }},
        {7, "root ramification beats every Delayer", [] { return verify_root_ramify(); }},
        {8, "winner preservation through the aux-free translation",
         [&] { return verify_g2prime(1000, full.seed); }},
        {9, "figure 1 loops and every cover-by-two",
         [&] {
             auto r = verify_figures(full.data_dir);
             r.merge(fig1_loops());
             return r;
         }},
        {10, "php-tree construction, completeness and loop bound",
         [&] {
             auto r = verify_php_trees(full);
             if (!has_detail(r, "loop_instances=12582912")) {
                 r.counterexamples.push_back({"details", "missing exhaustive n=3 loop sweep"});
             }
             return r;
         }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        CampaignReport r;
        std::string why;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r.counterexamples.push_back({"exception", e.what()});
            why = e.what();
        }
        bool ok = r.success();
        failed += !ok;
        std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " " << c.title << " (space=" << r.space
                  << " counterexamples=" << r.counterexamples.size() << ")";
        if (!why.empty()) std::cout << " error: " << why;
        std::cout << std::endl;
        if (!ok) {
            for (const auto& cx : r.counterexamples) std::cout << "  counterexample " << cx.name << "\n";
        }
    }
    return failed ? 1 : 0;
}
