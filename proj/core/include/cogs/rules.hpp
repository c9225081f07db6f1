#ifndef COGS_RULES_HPP
#define COGS_RULES_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cogs/schema.hpp"
#include "cogs/value.hpp"

namespace cogs {

enum class Comparator { eq, ne, lt, le, gt, ge, in_range };

std::string_view to_string(Comparator op);

// `feature op constant`, or `feature in [constant, upper)`.
struct Literal {
    static constexpr std::size_t unbound = std::numeric_limits<std::size_t>::max();

    std::string feature;
    std::size_t index = unbound;  // position in the schema, filled by bind()
    Comparator op = Comparator::eq;
    Value constant;
    Number upper{0};  // exclusive upper bound, in_range only

    // Structural equality; the cached index is not part of the AST.
    friend bool operator==(const Literal& a, const Literal& b) {
        return a.feature == b.feature && a.op == b.op && a.constant == b.constant &&
               (a.op != Comparator::in_range || a.upper == b.upper);
    }
};

// Builds a literal bound to `schema`. Throws SchemaError on unknown features or
// type-incompatible constants.
Literal make_literal(const FeatureSchemaSet& schema, std::string_view feature, Comparator op, Value constant,
                     Number upper = Number(0));

// Default rule with inline exceptions. It fires when every body literal holds
// and no exception fires.
struct DecisionRule {
    std::string id;
    std::string head;
    std::vector<Literal> body;
    std::vector<DecisionRule> exceptions;

    friend bool operator==(const DecisionRule&, const DecisionRule&) = default;
};

// body => head, with a single-literal head over the effect feature.
struct CausalRule {
    std::string id;
    std::vector<Literal> body;
    Literal head;

    friend bool operator==(const CausalRule&, const CausalRule&) = default;
};

struct RuleSet {
    std::string decision_atom;
    std::vector<DecisionRule> decision_rules;
    std::vector<CausalRule> causal_rules;

    const CausalRule* find_causal(std::string_view id) const;
    bool empty() const { return decision_rules.empty() && causal_rules.empty(); }

    friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

// Parses the rule language:
//   decision reject :- bank_balance < 60000.
//   decision reject :- x == 1 except { decision ab :- y == 1. }.
//   causal credit_score == 620 :- debt == 0.
// A rule may carry an explicit id as `Q7: decision ...`; otherwise top-level
// decision rules are numbered Q1, Q2, ..., causal rules C1, C2, ... and
// exceptions <parent>.E1, <parent>.E2, .... Literals are bound to `schema`.
// Throws ParseError on syntax, unknown features and type errors.
RuleSet parse_ruleset(std::string_view text, const FeatureSchemaSet& schema);

// Canonical text. parse_ruleset(serialize_ruleset(rs), schema) == rs.
std::string serialize_ruleset(const RuleSet& rs);
std::string format_literal(const Literal& lit);

// Combines the decision rules of `decisions` with the causal rules of `causal`.
RuleSet combine(const RuleSet& decisions, const RuleSet& causal);

// Re-resolves every literal's schema index. Throws SchemaError on unknown features.
void bind(RuleSet& rs, const FeatureSchemaSet& schema);

struct Diagnostic {
    enum class Kind {
        unknown_feature,
        type_mismatch,
        duplicate_id,
        head_mismatch,
        self_cause,
        causal_conflict,
    };
    Kind kind;
    std::string rule_id;
    std::string message;
};

std::string_view to_string(Diagnostic::Kind k);

// Static checks; empty result iff the rule set is well typed against `schema`
// and no two causal rules can fire together while forcing incompatible heads.
std::vector<Diagnostic> validate_ruleset(const RuleSet& rs, const FeatureSchemaSet& schema);

// Whether some complete state over `schema` satisfies every literal.
// Literals must be bound and well typed.
bool jointly_satisfiable(const std::vector<Literal>& literals, const FeatureSchemaSet& schema);

}  // namespace cogs

#endif  // COGS_RULES_HPP
