#include <doctest.h>

#include <cmath>

#include "cogs/errors.hpp"
#include "cogs/inference.hpp"
#include "cogs/learner.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace cogs;

namespace {

// Loan features on a range where the balance threshold splits the rows.
FeatureSchemaSet narrow_loan() {
    return load_schema(
        "feature age: numeric [18,99] step 1, monotone_increasing.\n"
        "feature debt: numeric [0,20000] step 100.\n"
        "feature bank_balance: numeric [0,120000] step 100.\n"
        "feature credit_score: numeric [300,850] step 1, causal_only.\n");
}

DatasetTable xy_table() {
    auto schema = load_schema("feature x: categorical {a, b}.\nfeature y: categorical {a, b}.\nfeature z: categorical {a, b}.");
    DatasetTable t{schema, {}, std::vector<bool>{}};
    // reject exactly when x == b and y != b, every combination repeated
    for (int rep = 0; rep < 10; ++rep) {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z) {
                    auto sym = [](int v) { return Value::symbol(v ? "b" : "a"); };
                    t.rows.push_back(State({sym(x), sym(y), sym(z)}));
                    t.labels->push_back(x == 1 && y == 0);
                }
    }
    return t;
}

}  // namespace

TEST_SUITE("surrogate_learner") {

TEST_CASE("rule-based models pass through unchanged") {
    auto q = fixtures::loan_q();
    CHECK(extract_logic(Model{q}) == q);
}

TEST_CASE("recovers a single threshold rule") {
    testgen::Rng rng(7);
    auto schema = narrow_loan();
    auto q1 = parse_ruleset(fixtures::q1_text, schema);
    auto data = testgen::labelled_rows(rng, schema, q1, 1000);
    auto learned = extract_logic(Model{data});
    CHECK(fidelity(learned, data) == 1.0);
    REQUIRE(learned.decision_rules.size() == 1);
    REQUIRE(learned.decision_rules[0].body.size() == 1);
    CHECK(learned.decision_rules[0].body[0].feature == "bank_balance");
    CHECK(validate_ruleset(learned, schema).empty());
    auto fresh = testgen::labelled_rows(rng, schema, q1, 1000);
    CHECK(fidelity(learned, fresh) >= 0.99);
}

TEST_CASE("learns an exception") {
    auto data = xy_table();
    auto learned = learn_rules(data);
    CHECK(fidelity(learned, data) == 1.0);
    REQUIRE(learned.decision_rules.size() == 1);
    const auto& r = learned.decision_rules[0];
    CHECK(r.head == "reject");
    REQUIRE(r.body.size() == 1);
    CHECK(r.body[0].feature == "x");
    REQUIRE(r.exceptions.size() == 1);
    CHECK(r.exceptions[0].head == "ab");
    CHECK(r.exceptions[0].body[0].feature == "y");
    CHECK(validate_ruleset(learned, data.schema).empty());
}

TEST_CASE("exception depth zero learns plain conjunctions") {
    auto data = xy_table();
    LearnParams p;
    p.max_exception_depth = 0;
    auto learned = learn_rules(data, p);
    for (const auto& r : learned.decision_rules) CHECK(r.exceptions.empty());
    CHECK(fidelity(learned, data) == 1.0);
}

TEST_CASE("no positives gives an empty program") {
    auto data = xy_table();
    for (std::size_t i = 0; i < data.size(); ++i) (*data.labels)[i] = false;
    auto learned = learn_rules(data);
    CHECK(learned.decision_rules.empty());
    CHECK(fidelity(learned, data) == 1.0);
}

TEST_CASE("all positives gives a fact") {
    auto data = xy_table();
    for (std::size_t i = 0; i < data.size(); ++i) (*data.labels)[i] = true;
    auto learned = learn_rules(data);
    REQUIRE(learned.decision_rules.size() == 1);
    CHECK(learned.decision_rules[0].body.empty());
    CHECK(fidelity(learned, data) == 1.0);
}

TEST_CASE("input errors") {
    auto data = xy_table();
    DatasetTable unlabelled{data.schema, data.rows, std::nullopt};
    CHECK_THROWS_AS(extract_logic(Model{unlabelled}), std::invalid_argument);
    CHECK_THROWS_AS(extract_logic(Model{DatasetTable{data.schema, {}, std::vector<bool>{}}}), std::invalid_argument);
    CHECK_THROWS_AS(fidelity(RuleSet{}, unlabelled), std::invalid_argument);
    LearnParams bad;
    bad.min_coverage_ratio = 1.5;
    CHECK_THROWS_AS(learn_rules(data, bad), std::invalid_argument);
}

TEST_CASE("information gain") {
    CHECK(information_gain(50, 0, 50, 0) == doctest::Approx(1.0));
    CHECK(std::isinf(information_gain(0, 50, 50, 0)));
    CHECK(std::isinf(information_gain(10, 40, 10, 40)));  // covered rate equals the base rate
    CHECK(information_gain(40, 10, 40, 10) > 0.0);
    CHECK(information_gain(40, 10, 40, 10) < information_gain(45, 5, 45, 5));
}

TEST_CASE("classification metrics") {
    auto data = xy_table();
    auto learned = learn_rules(data);
    auto m = classification_metrics(learned, data);
    CHECK(m.accuracy == 1.0);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
    CHECK(m.tp == 20);
    CHECK(m.tn == 60);

    auto never = classification_metrics(RuleSet{}, data);
    CHECK(never.accuracy == doctest::Approx(0.75));
    CHECK_FALSE(never.precision.has_value());
    CHECK(never.recall == 0.0);
    CHECK_FALSE(never.f1.has_value());
}

TEST_CASE("noisy labels still generalize") {
    testgen::Rng rng(11);
    auto schema = narrow_loan();
    auto q1 = parse_ruleset(fixtures::q1_text, schema);
    auto data = testgen::labelled_rows(rng, schema, q1, 1000, 0.05);
    auto split = train_test_split(data, 0.2, 3);
    auto learned = learn_rules(split.train);
    CHECK(fidelity(learned, split.test) >= 0.90);
    auto clean = testgen::labelled_rows(rng, schema, q1, 1000);
    CHECK(fidelity(learned, clean) >= 0.95);
}

TEST_CASE("learning is deterministic") {
    testgen::Rng rng(5);
    auto p = testgen::hidden_concept(rng);
    auto data = testgen::labelled_rows(rng, p.schema, p.hidden, 500, 0.02);
    CHECK(learn_rules(data) == learn_rules(data));
    CHECK(serialize_ruleset(learn_rules(data)) == serialize_ruleset(learn_rules(data)));
}

TEST_CASE("csv parsing") {
    auto csv = parse_csv("a, b ,label\n1,\"x, y\",1\n2,\"say \"\"hi\"\"\",0\n");
    REQUIRE(csv.header == std::vector<std::string>{"a", "b", "label"});
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.rows[0][1] == "x, y");
    CHECK(csv.rows[1][1] == "say \"hi\"");
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_csv("a,b\n1,\"open\n"), ParseError);
}

TEST_CASE("csv loading infers a schema") {
    auto csv = parse_csv("age,color,label\n30,red,1\n50,blue,0\n40,red,yes\n");
    CsvOptions opt;
    opt.label_column = "label";
    opt.positive_values = {"1", "yes"};
    auto load = load_csv(csv, opt);
    const auto& t = load.table;
    REQUIRE(t.schema.size() == 2);
    CHECK(t.schema[0].is_numeric());
    CHECK_FALSE(t.schema[1].is_numeric());
    CHECK(t.size() == 3);
    CHECK(*t.labels == std::vector<bool>{true, false, true});
    CHECK(t.rows[1] == State({Value(50), Value::symbol("blue")}));

    opt.label_column = "missing";
    CHECK_THROWS_AS(load_csv(csv, opt), SchemaError);
}

TEST_CASE("binning") {
    auto bins = parse_binning("bin age: 25, 45, 65 as young, adult, middle, senior.\nbin debt: 100.");
    REQUIRE(bins.size() == 2);
    CHECK(bins[0].label_of(Number(18)) == "young");
    CHECK(bins[0].label_of(Number(25)) == "adult");
    CHECK(bins[0].label_of(Number(70)) == "senior");
    CHECK(bins[1].labels == std::vector<std::string>{"lt100", "ge100"});

    auto csv = parse_csv("age,label\n20,1\n50,0\n");
    CsvOptions opt;
    opt.label_column = "label";
    opt.binning = bins;
    opt.binning.pop_back();
    auto t = load_csv(csv, opt).table;
    CHECK(t.rows[0] == State({Value::symbol("young")}));
    CHECK(t.rows[1] == State({Value::symbol("middle")}));
}

TEST_CASE("invalid rows can be skipped") {
    auto schema = load_schema("feature a: numeric [0,10] step 1.");
    auto csv = parse_csv("a,label\n1,1\n99,0\n3,0\n");
    CsvOptions opt;
    opt.label_column = "label";
    opt.schema = schema;
    CHECK_THROWS(load_csv(csv, opt));
    opt.skip_invalid_rows = true;
    auto load = load_csv(csv, opt);
    CHECK(load.skipped_rows == 1);
    CHECK(load.table.size() == 2);
    CHECK(load.source_rows == std::vector<std::size_t>{0, 2});
}

TEST_CASE("train/test split") {
    auto data = xy_table();
    auto s = train_test_split(data, 0.25, 9);
    CHECK(s.test.size() == 20);
    CHECK(s.train.size() == 60);
    CHECK(s.train.labels->size() == 60);
    auto again = train_test_split(data, 0.25, 9);
    CHECK(again.test.rows == s.test.rows);
}

}  // TEST_SUITE
