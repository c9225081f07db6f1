// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <nlohmann/json.hpp>

#include <chrono>
#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cogs/inference.hpp"
#include "cogs/learner.hpp"
#include "cogs/oracle.hpp"
#include "cogs/planner.hpp"
#include "commands.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace cogs;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint32_t suite_seed = 20240601;
constexpr std::size_t suite_size = 1000;
constexpr std::size_t max_len = 32;

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    if (!ok) ++failures;
    lines[id] = std::string(ok ? "PASS" : "FAIL") + " criterion " + std::to_string(id) + ": " + what + " [" + detail + "]";
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(digits);
    o << v;
    return o.str();
}

void golden_examples() {
    {
        auto t0 = Clock::now();
        ActionSpace space(fixtures::loan_schema(), fixtures::loan_q1(), RuleSet{});
        auto r = find_path(fixtures::john(), space, PlanConfig{});
        double ms = ms_since(t0);
        bool ok = r.found() && r.path.size() == 2 && r.path.entries[0].state == fixtures::john() &&
                  r.path.goal() == fixtures::loan_state(31, 5000, 60000, 599) &&
                  r.path.entries[1].actions_taken == std::vector<Action>{Action::direct(2, Value(60000))} &&
                  ms < 1000.0;
        report(1, ok, "The balance-only loan yields the 2-state path with one direct bank_balance action",
               std::to_string(r.path.size()) + " states, " + fmt(ms) + " ms");
    }
    {
        auto t0 = Clock::now();
        ActionSpace space(fixtures::loan_schema(), fixtures::loan_q(), fixtures::loan_c());
        auto r = find_path(fixtures::john(), space, PlanConfig{});
        double ms = ms_since(t0);
        bool ok = r.found() && r.path.goal() == fixtures::loan_state(31, 0, 60000, 620) && ms < 1000.0;
        // a direct debt -> 0 followed (in the same or a later step) by the C1 repair to 620
        std::vector<Action> all;
        for (const auto& e : r.path.entries) all.insert(all.end(), e.actions_taken.begin(), e.actions_taken.end());
        std::size_t debt_at = all.size(), repair_at = all.size();
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (all[i].is_direct() && all[i].feature == 1 && all[i].value == Value(0) && debt_at == all.size())
                debt_at = i;
            if (!all[i].is_direct() && all[i].rule_id == "C1" && all[i].feature == 3 && all[i].value == Value(620))
                repair_at = i;
        }
        ok = ok && debt_at < repair_at && repair_at < all.size();
        report(2, ok, "The causal loan ends at (31, 0, 60000, 620) via direct debt->0 then the C1 repair",
               std::to_string(r.path.size()) + " states, " + fmt(ms) + " ms");
    }
}

// Criteria 3, 4 and 7 share one suite of random instances.
void random_suite() {
    testgen::Rng rng(suite_seed);
    std::size_t found = 0, verify_failures = 0, iff_mismatch = 0, len_mismatch = 0, plaus = 0, paths = 0;
    std::size_t budget_hits = 0;
    std::string first_problem;
    auto t0 = Clock::now();
    double planner_ms = 0;
    for (std::size_t n = 0; n < suite_size; ++n) {
        auto inst = testgen::random_instance(rng);
        ActionSpace space(inst.schema, inst.decisions, inst.causal);
        PlanConfig cfg;
        cfg.max_path_len = max_len;
        auto tp = Clock::now();
        auto r = find_path(inst.initial, space, cfg);
        cfg.minimal = true;
        auto rm = find_path(inst.initial, space, cfg);
        planner_ms += ms_since(tp);
        auto truth = oracle::bfs_shortest_path(inst.initial, inst.schema, inst.causal, inst.decisions, max_len);

        for (const auto* res : {&r, &rm}) {
            if (res->status == PlanStatus::budget_exhausted) ++budget_hits;
            if (!res->found()) continue;
            ++paths;
            auto v = oracle::verify_path(res->path, inst.initial, inst.schema, inst.causal, inst.decisions);
            if (!v.empty()) {
                ++verify_failures;
                if (first_problem.empty())
                    first_problem = "instance " + std::to_string(n) + ": " + std::string(oracle::to_string(v[0].kind));
            }
            if (!oracle::check_plausibility(res->path, inst.schema, inst.causal).empty()) ++plaus;
        }
        if (r.found()) ++found;
        if (r.found() != truth.has_value() || rm.found() != truth.has_value()) ++iff_mismatch;
        if (rm.found() && truth && rm.path.size() != truth->size()) ++len_mismatch;
    }
    double total_ms = ms_since(t0);
    std::string where = first_problem.empty() ? "" : ", first: " + first_problem;
    report(3, verify_failures == 0 && budget_hits == 0 && planner_ms < 60000.0,
           "every path found on 1000 random instances passes verify_path",
           std::to_string(paths) + " paths checked, " + std::to_string(verify_failures) + " violations, " +
               std::to_string(budget_hits) + " budget exhaustions, planner " + fmt(planner_ms / 1000.0) + " s" +
               where);
    report(4, iff_mismatch == 0 && len_mismatch == 0,
           "planner succeeds iff BFS succeeds; minimal lengths equal BFS lengths",
           std::to_string(found) + "/" + std::to_string(suite_size) + " solvable, " + std::to_string(iff_mismatch) +
               " existence mismatches, " + std::to_string(len_mismatch) + " length mismatches, suite " +
               fmt(total_ms / 1000.0) + " s");
    report(7, plaus == 0, "immutable, monotone and causal-only features respected on every suite path",
           std::to_string(paths) + " paths, " + std::to_string(plaus) + " violations");
}

void counterfactual_sets() {
    testgen::Rng rng(suite_seed + 5);
    std::size_t mismatches = 0, states = 0;
    for (int n = 0; n < 200; ++n) {
        auto inst = testgen::random_instance(rng);
        auto space = oracle::enumerate_space(inst.schema, combine(inst.decisions, inst.causal), inst.initial);
        std::vector<State> expected;
        for (const auto& s : space) {
            if (is_counterfactual(s, inst.causal, inst.decisions)) expected.push_back(s);
        }
        std::sort(expected.begin(), expected.end());
        auto got = oracle::brute_force_counterfactuals(inst.schema, inst.causal, inst.decisions, inst.initial);
        states += space.size();
        if (got != expected) ++mismatches;
    }
    report(5, mismatches == 0, "brute-force counterfactual set equals the filtered state space on 200 instances",
           std::to_string(states) + " states enumerated, " + std::to_string(mismatches) + " mismatches");
}

void duality() {
    testgen::Rng rng(suite_seed + 6);
    std::size_t mismatches = 0, unavailable = 0, with_exceptions = 0;
    for (int n = 0; n < 10000; ++n) {
        auto schema = testgen::small_schema(rng, {});
        auto q = testgen::random_decisions(rng, schema, 4, true);
        auto s = testgen::random_state(rng, schema);
        bool exc = std::any_of(q.decision_rules.begin(), q.decision_rules.end(),
                               [](const DecisionRule& r) { return !r.exceptions.empty(); });
        if (exc) ++with_exceptions;
        auto g = goal_conditions(q);
        if (!g) {
            ++unavailable;
            continue;
        }
        if (satisfies(*g, s) != !decision(q, s)) ++mismatches;
    }
    report(6, mismatches == 0 && unavailable == 0, "goal condition holds exactly when the decision does not",
           "10000 pairs, " + std::to_string(with_exceptions) + " with exceptions, " + std::to_string(mismatches) +
               " mismatches, " + std::to_string(unavailable) + " without a goal condition");
}

void surrogate() {
    testgen::Rng rng(0);
    auto p = testgen::hidden_concept(rng);
    auto data = testgen::labelled_rows(rng, p.schema, p.hidden, 1000);
    auto split = train_test_split(data, 0.2, 0);
    auto learned = extract_logic(Model{split.train});
    double train = fidelity(learned, split.train);
    double held = fidelity(learned, split.test);

    testgen::Rng noisy_rng(0);
    auto pn = testgen::hidden_concept(noisy_rng);
    auto noisy = testgen::labelled_rows(noisy_rng, pn.schema, pn.hidden, 1000, 0.05);
    auto nsplit = train_test_split(noisy, 0.2, 0);
    double noisy_held = fidelity(extract_logic(Model{nsplit.train}), nsplit.test);

    report(8, train == 1.0 && held >= 0.98 && noisy_held >= 0.90,
           "learner matches a hidden rule generator (seed 0) and tolerates 5% label noise",
           "train " + fmt(train) + ", held-out " + fmt(held) + ", noisy held-out " + fmt(noisy_held));
}

void scalability() {
    std::ostringstream out, err;
    int code = cli::run({"bench", "--reps", "20", "--format", "json"}, out, err);
    bool ok = code == 0;
    std::string detail;
    if (ok) {
        auto doc = nlohmann::json::parse(out.str());
        double prev = -1.0;
        std::vector<double> avgs;
        for (const auto& row : doc.at("rows")) {
            double mean = row.at("mean_ms").get<double>();
            ok = ok && mean >= prev && row.at("repetitions").get<std::size_t>() >= 20 && row.at("status") == "found";
            prev = mean;
            avgs.push_back(row.at("average_feature_values").get<double>());
            detail += (detail.empty() ? "" : ", ") + fmt(avgs.back(), 1) + " -> " + fmt(mean) + " ms";
        }
        ok = ok && avgs == std::vector<double>{2.0, 2.5, 3.0};
    } else {
        detail = "bench exited " + std::to_string(code) + ": " + err.str();
    }
    report(9, ok, "mean bench runtime is non-decreasing in average feature values", detail);
}

void round_trip() {
    testgen::Rng rng(suite_seed + 10);
    std::size_t diffs = 0, rules = 0;
    std::string first;
    for (int n = 0; n < 1000; ++n) {
        auto schema = testgen::rich_schema(rng);
        auto program = testgen::rich_program(rng, schema);
        rules += program.decision_rules.size() + program.causal_rules.size();
        try {
            auto schema2 = load_schema(serialize_schema(schema));
            auto program2 = parse_ruleset(serialize_ruleset(program), schema2);
            if (!(schema2 == schema) || !(program2 == program)) {
                ++diffs;
                if (first.empty()) first = serialize_ruleset(program);
            }
        } catch (const std::exception& e) {
            ++diffs;
            if (first.empty()) first = e.what();
        }
    }
    report(10, diffs == 0, "parse after serialize is the identity on 1000 schemas and programs",
           std::to_string(rules) + " rules, " + std::to_string(diffs) + " structural diffs" +
               (first.empty() ? "" : ", first: " + first));
}

}  // namespace

int main() {
    golden_examples();
    random_suite();
    counterfactual_sets();
    duality();
    surrogate();
    scalability();
    round_trip();
    for (const auto& [id, line] : lines) std::cout << line << '\n';
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
