// Random problem generators shared by unit and acceptance tests.
#ifndef COGS_TESTS_GENERATORS_HPP
#define COGS_TESTS_GENERATORS_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "cogs/dataset.hpp"
#include "cogs/inference.hpp"
#include "cogs/rules.hpp"
#include "cogs/schema.hpp"
#include "cogs/state.hpp"

namespace cogs::testgen {

using Rng = std::mt19937;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[uniform(rng, 0, v.size() - 1)];
}

struct Shape {
    std::size_t max_features = 6;
    std::size_t max_values = 4;
    std::size_t max_decision_rules = 4;
    std::size_t max_causal_rules = 3;
    bool exceptions = true;
};

struct Instance {
    FeatureSchemaSet schema;
    RuleSet decisions;
    RuleSet causal;
    State initial;
};

// Small schema: numeric features over [0, k-1] step 1, categorical over
// k symbols, k in [2, max_values]; mutability drawn from all five kinds.
inline FeatureSchemaSet small_schema(Rng& rng, const Shape& shape) {
    static const std::vector<Mutability> kinds{Mutability::free, Mutability::free, Mutability::immutable,
                                               Mutability::monotone_increasing, Mutability::monotone_decreasing,
                                               Mutability::causal_only};
    std::vector<FeatureSchema> fs;
    std::size_t n = uniform(rng, 1, shape.max_features);
    for (std::size_t i = 0; i < n; ++i) {
        FeatureSchema f;
        f.name = "f" + std::to_string(i);
        std::size_t k = uniform(rng, 2, shape.max_values);
        if (coin(rng)) {
            f.domain = NumericDomain{Number(0), Number(static_cast<std::int64_t>(k - 1)), Number(1)};
        } else {
            CategoricalDomain d;
            for (std::size_t v = 0; v < k; ++v) d.values.push_back("v" + std::to_string(v));
            f.domain = d;
        }
        f.mutability = pick(rng, kinds);
        fs.push_back(std::move(f));
    }
    return FeatureSchemaSet(std::move(fs));
}

inline Value random_value(Rng& rng, const FeatureSchema& f) {
    if (f.is_numeric()) {
        const auto& d = f.numeric();
        auto span = boost::rational_cast<std::int64_t>((d.max - d.min) / d.step);
        return Value(d.min + d.step * Number(static_cast<std::int64_t>(uniform(rng, 0, span))));
    }
    return Value::symbol(pick(rng, f.categorical().values));
}

inline State random_state(Rng& rng, const FeatureSchemaSet& schema) {
    std::vector<Value> v;
    for (const auto& f : schema) v.push_back(random_value(rng, f));
    return State(std::move(v));
}

inline Literal random_literal(Rng& rng, const FeatureSchemaSet& schema, std::size_t feature) {
    const auto& f = schema[feature];
    if (!f.is_numeric()) {
        return make_literal(schema, f.name, coin(rng, 0.7) ? Comparator::eq : Comparator::ne, random_value(rng, f));
    }
    static const std::vector<Comparator> ops{Comparator::eq, Comparator::ne, Comparator::lt, Comparator::le,
                                             Comparator::gt, Comparator::ge, Comparator::in_range};
    Comparator op = pick(rng, ops);
    Value c = random_value(rng, f);
    if (op == Comparator::in_range) {
        Number hi = c.number() + Number(static_cast<std::int64_t>(uniform(rng, 1, 2)));
        return make_literal(schema, f.name, op, c, hi);
    }
    return make_literal(schema, f.name, op, c);
}

inline std::vector<Literal> random_body(Rng& rng, const FeatureSchemaSet& schema, std::size_t max_len,
                                        std::size_t avoid = Literal::unbound) {
    std::vector<std::size_t> features;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (i != avoid) features.push_back(i);
    }
    std::shuffle(features.begin(), features.end(), rng);
    std::size_t len = std::min(features.size(), uniform(rng, 1, max_len));
    std::vector<Literal> body;
    for (std::size_t k = 0; k < len; ++k) body.push_back(random_literal(rng, schema, features[k]));
    return body;
}

inline DecisionRule random_decision_rule(Rng& rng, const FeatureSchemaSet& schema, const std::string& id,
                                         std::size_t depth, bool exceptions, const std::string& head) {
    DecisionRule r;
    r.id = id;
    r.head = head;
    r.body = random_body(rng, schema, 2);
    if (exceptions && depth < 2 && coin(rng, depth == 0 ? 0.35 : 0.2)) {
        std::size_t n = uniform(rng, 1, 2);
        for (std::size_t e = 0; e < n; ++e) {
            r.exceptions.push_back(
                random_decision_rule(rng, schema, id + ".E" + std::to_string(e + 1), depth + 1, exceptions, "ab"));
        }
    }
    return r;
}

inline RuleSet random_decisions(Rng& rng, const FeatureSchemaSet& schema, std::size_t max_rules, bool exceptions) {
    RuleSet rs;
    rs.decision_atom = "reject";
    std::size_t n = uniform(rng, 1, max_rules);
    for (std::size_t i = 0; i < n; ++i) {
        rs.decision_rules.push_back(
            random_decision_rule(rng, schema, "Q" + std::to_string(i + 1), 0, exceptions, "reject"));
    }
    return rs;
}

inline RuleSet random_causal(Rng& rng, const FeatureSchemaSet& schema, std::size_t max_rules) {
    RuleSet rs;
    if (schema.size() < 2) return rs;
    std::size_t n = uniform(rng, 0, max_rules);
    for (std::size_t i = 0; i < n; ++i) {
        CausalRule r;
        r.id = "C" + std::to_string(i + 1);
        std::size_t effect = uniform(rng, 0, schema.size() - 1);
        r.body = random_body(rng, schema, 2, effect);
        r.head = random_literal(rng, schema, effect);
        rs.causal_rules.push_back(std::move(r));
    }
    return rs;
}

// Enumerable instance with a causally consistent initial state.
inline Instance random_instance(Rng& rng, const Shape& shape = {}) {
    for (;;) {
        Instance inst;
        inst.schema = small_schema(rng, shape);
        inst.decisions = random_decisions(rng, inst.schema, shape.max_decision_rules, shape.exceptions);
        inst.causal = random_causal(rng, inst.schema, shape.max_causal_rules);
        for (int attempt = 0; attempt < 50; ++attempt) {
            State s = random_state(rng, inst.schema);
            if (is_causally_consistent(inst.causal, s)) {
                inst.initial = std::move(s);
                return inst;
            }
        }
    }
}

// Hidden rule generator for learner tests: categorical features c0..c2 over
// 3-4 values and numeric n0, n1 over [0,100]; 1-3 rules of 1-2 literals.
struct LabelledProblem {
    FeatureSchemaSet schema;
    RuleSet hidden;
};

inline LabelledProblem hidden_concept(Rng& rng) {
    std::vector<FeatureSchema> fs;
    for (int i = 0; i < 3; ++i) {
        CategoricalDomain d;
        std::size_t k = uniform(rng, 3, 4);
        for (std::size_t v = 0; v < k; ++v) d.values.push_back("v" + std::to_string(v));
        fs.push_back({"c" + std::to_string(i), d, Mutability::free});
    }
    for (int i = 0; i < 2; ++i) fs.push_back({"n" + std::to_string(i), NumericDomain{0, 100, 1}, Mutability::free});
    LabelledProblem p{FeatureSchemaSet(std::move(fs)), {}};
    p.hidden.decision_atom = "reject";
    std::size_t n = uniform(rng, 1, 3);
    for (std::size_t r = 0; r < n; ++r) {
        DecisionRule rule;
        rule.id = "Q" + std::to_string(r + 1);
        rule.head = "reject";
        std::vector<std::size_t> features{0, 1, 2, 3, 4};
        std::shuffle(features.begin(), features.end(), rng);
        std::size_t len = uniform(rng, 1, 2);
        for (std::size_t k = 0; k < len; ++k) {
            const auto& f = p.schema[features[k]];
            if (f.is_numeric()) {
                auto t = static_cast<std::int64_t>(uniform(rng, 20, 80));
                rule.body.push_back(make_literal(p.schema, f.name, coin(rng) ? Comparator::lt : Comparator::ge, t));
            } else {
                rule.body.push_back(make_literal(p.schema, f.name, Comparator::eq, random_value(rng, f)));
            }
        }
        p.hidden.decision_rules.push_back(std::move(rule));
    }
    return p;
}

// `rows` uniform rows labelled by `rules`; each label flipped with probability `noise`.
inline DatasetTable labelled_rows(Rng& rng, const FeatureSchemaSet& schema, const RuleSet& rules, std::size_t rows,
                                  double noise = 0.0) {
    DatasetTable t{schema, {}, std::vector<bool>{}};
    for (std::size_t r = 0; r < rows; ++r) {
        State s = random_state(rng, schema);
        bool label = decision(rules, s);
        if (noise > 0 && coin(rng, noise)) label = !label;
        t.rows.push_back(std::move(s));
        t.labels->push_back(label);
    }
    return t;
}


// Richer shapes for parser round-trips: rational bounds and steps, symbols
// that need quoting, every mutability, up to 8 features.
inline FeatureSchemaSet rich_schema(Rng& rng) {
    static const std::vector<std::string> symbols{"red", "green", "light blue", "5more", "x-ray", "N/A",
                                                  "tab\tbed", "quote\"d", "\u00e9t\u00e9", "_u", "v0", "10-20"};
    static const std::vector<Mutability> kinds{Mutability::free, Mutability::immutable,
                                               Mutability::monotone_increasing, Mutability::monotone_decreasing,
                                               Mutability::causal_only};
    std::vector<FeatureSchema> fs;
    std::size_t n = uniform(rng, 1, 8);
    for (std::size_t i = 0; i < n; ++i) {
        FeatureSchema f;
        f.name = (coin(rng) ? "feat_" : "F") + std::to_string(i);
        if (coin(rng)) {
            auto den = static_cast<std::int64_t>(uniform(rng, 1, 8));
            Number lo(-static_cast<std::int64_t>(uniform(rng, 0, 500)), den);
            Number hi = lo + Number(static_cast<std::int64_t>(uniform(rng, 0, 10000)), den);
            f.domain = NumericDomain{lo, hi, Number(static_cast<std::int64_t>(uniform(rng, 1, 9)), den)};
        } else {
            std::vector<std::string> pool = symbols;
            std::shuffle(pool.begin(), pool.end(), rng);
            pool.resize(uniform(rng, 1, 6));
            f.domain = CategoricalDomain{pool};
        }
        f.mutability = pick(rng, kinds);
        fs.push_back(std::move(f));
    }
    return FeatureSchemaSet(std::move(fs));
}

inline Literal rich_literal(Rng& rng, const FeatureSchemaSet& schema) {
    const auto& f = schema[uniform(rng, 0, schema.size() - 1)];
    if (!f.is_numeric()) {
        return make_literal(schema, f.name, coin(rng) ? Comparator::eq : Comparator::ne, random_value(rng, f));
    }
    static const std::vector<Comparator> ops{Comparator::eq, Comparator::ne, Comparator::lt, Comparator::le,
                                             Comparator::gt, Comparator::ge, Comparator::in_range};
    Comparator op = pick(rng, ops);
    const auto& d = f.numeric();
    Number c = d.min + (d.max - d.min) * Number(static_cast<std::int64_t>(uniform(rng, 0, 7)), 7);
    if (op == Comparator::in_range) return make_literal(schema, f.name, op, Value(c), c + d.step);
    return make_literal(schema, f.name, op, Value(c));
}

inline DecisionRule rich_rule(Rng& rng, const FeatureSchemaSet& schema, const std::string& auto_id,
                              const std::string& head, std::size_t depth, std::size_t& label_counter) {
    DecisionRule r;
    r.id = coin(rng, 0.2) ? "R" + std::to_string(++label_counter) : auto_id;
    r.head = head;
    std::size_t len = uniform(rng, 0, 3);
    for (std::size_t k = 0; k < len; ++k) r.body.push_back(rich_literal(rng, schema));
    if (depth < 3 && coin(rng, 0.3)) {
        std::size_t n = uniform(rng, 1, 2);
        for (std::size_t e = 0; e < n; ++e) {
            r.exceptions.push_back(rich_rule(rng, schema, r.id + ".E" + std::to_string(e + 1),
                                             coin(rng) ? "ab" : "abnormal_" + std::to_string(depth), depth + 1,
                                             label_counter));
        }
    }
    return r;
}

// Valid program over `schema`: up to `max_rules` decision rules sharing one
// head, and causal rules whose effect never appears in their own body.
inline RuleSet rich_program(Rng& rng, const FeatureSchemaSet& schema, std::size_t max_rules = 20) {
    RuleSet rs;
    std::size_t label_counter = 0;
    std::size_t nd = uniform(rng, 0, max_rules);
    if (nd) rs.decision_atom = coin(rng) ? "reject" : "deny_loan";
    for (std::size_t i = 0; i < nd; ++i) {
        rs.decision_rules.push_back(rich_rule(rng, schema, "Q" + std::to_string(i + 1), rs.decision_atom, 0,
                                              label_counter));
    }
    std::size_t nc = schema.size() > 1 ? uniform(rng, 0, 5) : 0;
    for (std::size_t i = 0; i < nc; ++i) {
        CausalRule c;
        c.id = coin(rng, 0.2) ? "K" + std::to_string(++label_counter) : "C" + std::to_string(i + 1);
        c.head = rich_literal(rng, schema);
        std::size_t len = uniform(rng, 1, 3);
        for (std::size_t k = 0; k < len; ++k) {
            Literal l = rich_literal(rng, schema);
            if (l.feature != c.head.feature) c.body.push_back(l);
        }
        if (c.body.empty()) continue;
        rs.causal_rules.push_back(std::move(c));
    }
    // Renumber unlabelled causal rules so ids stay unique after skips.
    std::size_t k = 0;
    for (auto& c : rs.causal_rules) {
        ++k;
        if (c.id[0] == 'C') c.id = "C" + std::to_string(k);
    }
    return rs;
}

}  // namespace cogs::testgen

#endif  // COGS_TESTS_GENERATORS_HPP
