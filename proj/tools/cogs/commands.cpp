#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cogs/actions.hpp"
#include "cogs/bench.hpp"
#include "cogs/dataset.hpp"
#include "cogs/errors.hpp"
#include "cogs/learner.hpp"
#include "cogs/oracle.hpp"
#include "cogs/planner.hpp"
#include "report.hpp"

namespace cogs::cli {

namespace {

namespace fs = std::filesystem;

// Raised for any user-facing input problem; maps to exit_input_error.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

// Prefixes parse errors with the file they came from.
template <typename F>
auto from_file(const std::string& path, F&& parse) {
    try {
        return parse(read_file(path));
    } catch (const ParseError& e) {
        throw InputError(path + ":" + e.what());
    } catch (const SchemaError& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct Problem {
    FeatureSchemaSet schema;
    RuleSet decisions;
    RuleSet causal;
    State initial;
};

struct ProblemFiles {
    std::string schema, rules, causal, instance;
};

void add_problem_options(CLI::App& cmd, ProblemFiles& files) {
    cmd.add_option("--schema", files.schema, "Feature schema file")->required();
    cmd.add_option("--rules", files.rules, "Decision rules (may also hold causal rules)")->required();
    cmd.add_option("--causal", files.causal, "Causal rules");
    cmd.add_option("--instance", files.instance, "Instance file, one 'feature = value' per line")->required();
}

Problem load_problem(const ProblemFiles& files) {
    Problem p;
    p.schema = from_file(files.schema, [](const std::string& t) { return load_schema(t); });
    RuleSet rules = from_file(files.rules, [&](const std::string& t) { return parse_ruleset(t, p.schema); });
    p.decisions.decision_atom = rules.decision_atom;
    p.decisions.decision_rules = std::move(rules.decision_rules);
    p.causal.causal_rules = std::move(rules.causal_rules);
    if (!files.causal.empty()) {
        RuleSet extra = from_file(files.causal, [&](const std::string& t) { return parse_ruleset(t, p.schema); });
        if (!extra.decision_rules.empty()) throw InputError(files.causal + ": holds decision rules");
        for (auto& r : extra.causal_rules) {
            if (p.causal.find_causal(r.id)) throw InputError(files.causal + ": duplicate causal rule id '" + r.id + "'");
            p.causal.causal_rules.push_back(std::move(r));
        }
    }
    auto diagnostics = validate_ruleset(combine(p.decisions, p.causal), p.schema);
    for (const auto& d : diagnostics) {
        if (d.kind != Diagnostic::Kind::causal_conflict) throw InputError("rule " + d.rule_id + ": " + d.message);
    }
    p.initial = from_file(files.instance, [&](const std::string& t) { return parse_instance(t, p.schema); });
    if (!is_causally_consistent(p.causal, p.initial)) {
        throw InputError("instance violates the causal rules");
    }
    return p;
}

struct PlanFlags {
    bool minimal = false;
    std::size_t max_path_len = 32;
    std::uint64_t max_expansions = 1'000'000;
    std::string format = "text";
    std::uint64_t seed = 0;

    PlanConfig config() const {
        PlanConfig cfg;
        cfg.minimal = minimal;
        cfg.max_path_len = max_path_len;
        cfg.max_expansions = max_expansions;
        cfg.seed = seed;
        return cfg;
    }
};

void add_plan_options(CLI::App& cmd, PlanFlags& flags) {
    cmd.add_flag("--minimal", flags.minimal, "Return a shortest path (iterative deepening)");
    cmd.add_option("--max-path-len", flags.max_path_len, "Longest path, in states")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--max-expansions", flags.max_expansions, "Search budget, in applied actions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd.add_option("--seed", flags.seed, "Seed for randomised steps")->capture_default_str();
}

PathReport plan(const Problem& p, const PlanFlags& flags) {
    ActionSpace space(p.schema, p.decisions, p.causal);
    auto start = std::chrono::steady_clock::now();
    PlanResult r = find_path(p.initial, space, flags.config());
    auto stop = std::chrono::steady_clock::now();
    return {r.status, p.initial, std::move(r.path), r.stats.expansions,
            std::chrono::duration<double, std::milli>(stop - start).count()};
}

int cmd_explain(const ProblemFiles& files, const PlanFlags& flags, std::ostream& out, std::ostream& err) {
    Problem p = load_problem(files);
    PathReport report = plan(p, flags);
    if (flags.format == "json") {
        out << path_json(p.schema, report).dump(2) << '\n';
    } else if (report.status == PlanStatus::found) {
        out << path_table(p.schema, report.path);
        out << "\nstates " << report.path.size() << ", expansions " << report.expansions << ", "
            << report.elapsed_ms << " ms\n";
    }
    if (report.status == PlanStatus::found) return exit_ok;
    err << "cogs: " << to_string(report.status) << " (max path length " << flags.max_path_len << ", "
        << report.expansions << " expansions)\n";
    return exit_no_solution;
}

int cmd_verify(const ProblemFiles& files, const PlanFlags& flags, std::size_t cap, std::ostream& out,
               std::ostream& err) {
    Problem p = load_problem(files);
    std::size_t space = oracle::space_size(p.schema, combine(p.decisions, p.causal), p.initial);
    if (space > cap) {
        err << "cogs: oracle state space has " << space << " states, above the cap of " << cap << '\n';
        return exit_cap_exceeded;
    }
    PathReport report = plan(p, flags);
    auto truth = oracle::bfs_shortest_path(p.initial, p.schema, p.causal, p.decisions, flags.max_path_len, cap);

    std::vector<oracle::PathViolation> violations;
    std::vector<std::string> implausible;
    if (report.status == PlanStatus::found) {
        violations = oracle::verify_path(report.path, p.initial, p.schema, p.causal, p.decisions);
        implausible = oracle::check_plausibility(report.path, p.schema, p.causal);
    }
    bool found = report.status == PlanStatus::found;
    bool sound = violations.empty() && implausible.empty();
    bool agree = found == truth.has_value();
    std::size_t planner_len = found ? report.path.size() : 0;
    std::size_t oracle_len = truth ? truth->size() : 0;

    std::string verdict;
    if (found && truth) {
        verdict = std::string(sound ? "sound" : "unsound") + ", " +
                  (planner_len == oracle_len ? "minimal" : "not minimal") + " (" + std::to_string(planner_len) +
                  (planner_len == oracle_len ? " == " : " > ") + std::to_string(oracle_len) + ")";
    } else if (!found && !truth) {
        verdict = "no solution within bounds (oracle agrees)";
    } else if (found) {
        verdict = "unsound: oracle finds no path of at most " + std::to_string(flags.max_path_len) + " states";
    } else {
        verdict = "incomplete: planner " + std::string(to_string(report.status)) + ", oracle path has " +
                  std::to_string(oracle_len) + " states";
    }

    if (flags.format == "json") {
        json doc;
        doc["verdict"] = verdict;
        doc["sound"] = sound && agree;
        doc["minimal"] = found && truth && planner_len == oracle_len;
        doc["planner"] = path_json(p.schema, report);
        doc["oracle"] = {{"found", truth.has_value()}, {"path_len", oracle_len}, {"space_size", space}};
        json v = json::array();
        for (const auto& x : violations) {
            v.push_back({{"kind", std::string(oracle::to_string(x.kind))}, {"position", x.position}, {"detail", x.detail}});
        }
        for (const auto& x : implausible) v.push_back({{"kind", "implausible"}, {"position", nullptr}, {"detail", x}});
        doc["violations"] = std::move(v);
        out << doc.dump(2) << '\n';
    } else {
        out << verdict << '\n';
        for (const auto& x : violations) {
            out << "  " << oracle::to_string(x.kind) << " at " << x.position << ": " << x.detail << '\n';
        }
        for (const auto& x : implausible) out << "  implausible: " << x << '\n';
    }
    if (!sound || !agree) return exit_verify_failed;
    return found ? exit_ok : exit_no_solution;
}

struct ExtractFlags {
    std::string data, label, schema, binning, rules_in, out, truth, format = "text";
    std::vector<std::string> positive{"1"};
    std::vector<std::string> drop;
    std::uint64_t seed = 0;
    double test_fraction = 0.2;
    bool skip_invalid = false;
    LearnParams params;
};

int cmd_extract(const ExtractFlags& f, std::ostream& out, std::ostream& err) {
    if (f.data.empty() && f.rules_in.empty()) throw InputError("extract needs --data or --rules-in");

    std::optional<FeatureSchemaSet> schema;
    if (!f.schema.empty()) schema = from_file(f.schema, [](const std::string& t) { return load_schema(t); });

    std::optional<DatasetTable> truth_table;
    std::optional<Split> split;
    std::size_t skipped = 0;
    if (!f.data.empty()) {
        if (f.label.empty()) throw InputError("--data needs --label");
        CsvTable csv = from_file(f.data, [](const std::string& t) { return parse_csv(t); });
        CsvOptions opt;
        opt.label_column = f.label;
        opt.positive_values = f.positive;
        opt.schema = schema;
        opt.drop_columns = f.drop;
        if (!f.truth.empty()) opt.drop_columns.push_back(f.truth);
        opt.skip_invalid_rows = f.skip_invalid;
        if (!f.binning.empty()) opt.binning = from_file(f.binning, [](const std::string& t) { return parse_binning(t); });
        CsvLoad load;
        try {
            load = load_csv(csv, opt);
        } catch (const SchemaError& e) {
            throw InputError(f.data + ": " + e.what());
        }
        skipped = load.skipped_rows;
        if (load.table.empty()) throw InputError(f.data + ": no usable rows");
        schema = load.table.schema;
        DatasetTable labelled = load.table;
        if (!f.truth.empty()) {
            auto col = std::find(csv.header.begin(), csv.header.end(), f.truth);
            if (col == csv.header.end()) throw InputError(f.data + ": truth column '" + f.truth + "' not found");
            auto c = static_cast<std::size_t>(col - csv.header.begin());
            DatasetTable t = labelled;
            for (std::size_t k = 0; k < t.size(); ++k) {
                const auto& cell = csv.rows[load.source_rows[k]][c];
                (*t.labels)[k] = std::find(f.positive.begin(), f.positive.end(), cell) != f.positive.end();
            }
            truth_table = std::move(t);
        }
        split = train_test_split(labelled, f.test_fraction, f.seed);
        if (truth_table) {
            // Keep the ground truth aligned with the same shuffle.
            Split ts = train_test_split(*truth_table, f.test_fraction, f.seed);
            truth_table = std::move(ts.test);
        }
    }

    RuleSet rules;
    if (!f.rules_in.empty()) {
        if (!schema) throw InputError("--rules-in needs --schema or --data");
        rules = extract_logic(from_file(f.rules_in, [&](const std::string& t) { return parse_ruleset(t, *schema); }),
                              f.params);
    } else {
        if (split->train.empty()) throw InputError("training split is empty");
        rules = extract_logic(split->train, f.params);
    }
    std::string text = serialize_ruleset(rules);
    if (!f.out.empty()) write_file(f.out, text);

    json doc;
    if (split) {
        const DatasetTable& eval = truth_table ? *truth_table : split->test;
        doc["rows"] = {{"train", split->train.size()}, {"test", split->test.size()}, {"skipped", skipped}};
        doc["fidelity"] = {{"train", split->train.empty() ? json(nullptr) : json(fidelity(rules, split->train))},
                           {"test", split->test.empty() ? json(nullptr) : json(fidelity(rules, split->test))}};
        doc["metrics"] = eval.empty() ? json(nullptr) : metrics_json(classification_metrics(rules, eval));
        doc["metrics_against"] = truth_table ? f.truth : f.label;
    }
    doc["rules"] = text;

    if (f.format == "json") {
        out << doc.dump(2) << '\n';
        return exit_ok;
    }
    if (f.out.empty()) out << text;
    if (split) {
        auto ratio = [](const json& v) { return v.is_null() ? std::string("undefined") : format_ratio(v.get<double>()); };
        out << "train rows " << split->train.size() << ", test rows " << split->test.size();
        if (skipped) out << ", skipped " << skipped;
        out << '\n';
        out << "fidelity train " << ratio(doc["fidelity"]["train"]) << ", test " << ratio(doc["fidelity"]["test"])
            << '\n';
        if (!doc["metrics"].is_null()) {
            const auto& m = doc["metrics"];
            out << "against '" << doc["metrics_against"].get<std::string>() << "' on the test split: accuracy "
                << ratio(m["accuracy"]) << ", precision " << ratio(m["precision"]) << ", recall "
                << ratio(m["recall"]) << ", f1 " << ratio(m["f1"]) << '\n';
        }
    }
    (void)err;
    return exit_ok;
}

std::vector<BenchVariant> default_bench_variants() {
    return {synthetic_variant("synthetic-2.0", {2, 2, 2, 2, 2, 2}),
            synthetic_variant("synthetic-2.5", {2, 2, 2, 3, 3, 3}),
            synthetic_variant("synthetic-3.0", {3, 3, 3, 3, 3, 3})};
}

std::vector<BenchVariant> load_bench_spec(const std::string& path, PlanFlags& flags, bool minimal_given) {
    json spec;
    try {
        spec = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) { return (base / p).string(); };
    std::vector<BenchVariant> out;
    try {
        if (spec.contains("minimal") && !minimal_given) flags.minimal = spec.at("minimal").get<bool>();
        if (spec.contains("max_path_len")) flags.max_path_len = spec.at("max_path_len").get<std::size_t>();
        for (const auto& v : spec.at("variants")) {
            std::string name = v.at("name").get<std::string>();
            if (v.contains("domain_sizes")) {
                out.push_back(synthetic_variant(name, v.at("domain_sizes").get<std::vector<std::size_t>>()));
                continue;
            }
            ProblemFiles files{resolve(v.at("schema").get<std::string>()), resolve(v.at("rules").get<std::string>()),
                               v.contains("causal") ? resolve(v.at("causal").get<std::string>()) : std::string{},
                               resolve(v.at("instance").get<std::string>())};
            Problem p = load_problem(files);
            out.push_back({name, std::move(p.schema), std::move(p.decisions), std::move(p.causal), std::move(p.initial)});
        }
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(path + ": " + e.what());
    }
    return out;
}

int cmd_bench(const std::string& spec, std::size_t reps, PlanFlags flags, bool minimal_given, std::ostream& out) {
    std::vector<BenchVariant> variants;
    if (spec.empty()) {
        variants = default_bench_variants();
        if (!minimal_given) flags.minimal = true;
    } else {
        variants = load_bench_spec(spec, flags, minimal_given);
    }
    auto rows = run_bench(variants, reps, flags.config());
    if (flags.format == "json") {
        json doc = bench_json(rows);
        doc["repetitions"] = reps;
        doc["minimal"] = flags.minimal;
        out << doc.dump(2) << '\n';
    } else {
        out << bench_table(rows);
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Counterfactual paths under causal constraints", "cogs");
    app.require_subcommand(1);
    app.set_version_flag("--version", "cogs 0.1.0");

    ProblemFiles problem;
    PlanFlags flags;
    auto* explain = app.add_subcommand("explain", "Find a path from an instance to a counterfactual");
    add_problem_options(*explain, problem);
    add_plan_options(*explain, flags);

    auto* verify = app.add_subcommand("verify", "Check the planner against the brute-force oracle");
    add_problem_options(*verify, problem);
    add_plan_options(*verify, flags);
    std::size_t cap = oracle::default_cap;
    verify->add_option("--cap", cap, "Largest state space the oracle enumerates")->capture_default_str();

    ExtractFlags ex;
    auto* extract = app.add_subcommand("extract", "Learn (or pass through) decision rules from labelled data");
    extract->add_option("--data", ex.data, "CSV with a header row");
    extract->add_option("--label", ex.label, "Column holding the model's predictions");
    extract->add_option("--positive", ex.positive, "Label values meaning the decision holds")->capture_default_str();
    extract->add_option("--truth", ex.truth, "Ground-truth column for accuracy/precision/recall/F1");
    extract->add_option("--schema", ex.schema, "Schema file (inferred from the data otherwise)");
    extract->add_option("--binning", ex.binning, "Binning file for numeric columns");
    extract->add_option("--drop", ex.drop, "Columns to ignore");
    extract->add_option("--rules-in", ex.rules_in, "Rule-based model: echoed unchanged");
    extract->add_option("--out", ex.out, "Write the rules here instead of standard output");
    extract->add_option("--seed", ex.seed, "Shuffle seed for the train/test split")->capture_default_str();
    extract->add_option("--test-fraction", ex.test_fraction, "Held-out share")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    extract->add_flag("--skip-invalid", ex.skip_invalid, "Skip rows that do not fit the schema");
    extract->add_option("--atom", ex.params.decision_atom, "Decision atom name")->capture_default_str();
    extract->add_option("--max-rules", ex.params.max_rules)->capture_default_str();
    extract->add_option("--max-exception-depth", ex.params.max_exception_depth)->capture_default_str();
    extract->add_option("--min-coverage", ex.params.min_coverage_ratio)->capture_default_str();
    extract->add_option("--exception-ratio", ex.params.exception_ratio)->capture_default_str();
    extract->add_option("--format", ex.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    std::string bench_spec;
    std::size_t reps = 20;
    auto* bench = app.add_subcommand("bench", "Time path finding across schema variants");
    bench->add_option("--spec", bench_spec, "JSON bench description (built-in synthetic family otherwise)");
    bench->add_option("--reps", reps, "Repetitions per variant")->capture_default_str();
    auto* bench_minimal = bench->add_flag("--minimal", flags.minimal, "Shortest paths");
    bench->add_option("--max-path-len", flags.max_path_len)->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--max-expansions", flags.max_expansions)->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--format", flags.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (*explain) return cmd_explain(problem, flags, out, err);
        if (*verify) return cmd_verify(problem, flags, cap, out, err);
        if (*extract) return cmd_extract(ex, out, err);
        if (*bench) return cmd_bench(bench_spec, reps, flags, bench_minimal->count() > 0, out);
    } catch (const InputError& e) {
        err << "cogs: " << e.what() << '\n';
        return exit_input_error;
    } catch (const oracle::CapExceeded& e) {
        err << "cogs: " << e.what() << '\n';
        return exit_cap_exceeded;
    } catch (const std::exception& e) {
        err << "cogs: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}

}  // namespace cogs::cli
