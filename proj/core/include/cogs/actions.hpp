#ifndef COGS_ACTIONS_HPP
#define COGS_ACTIONS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogs/inference.hpp"
#include "cogs/rules.hpp"
#include "cogs/schema.hpp"
#include "cogs/state.hpp"

namespace cogs {

struct Action {
    enum class Kind { direct, causal_repair };

    Kind kind = Kind::direct;
    std::size_t feature = 0;  // feature written by the action
    Value value;              // value written
    std::string rule_id;      // causal rule, causal_repair only
    std::string provenance;   // rule whose literal motivated the action; informational

    static Action direct(std::size_t feature, Value v) { return {Kind::direct, feature, std::move(v), {}, {}}; }

    bool is_direct() const { return kind == Kind::direct; }

    friend bool operator==(const Action& a, const Action& b) {
        return a.kind == b.kind && a.feature == b.feature && a.value == b.value && a.rule_id == b.rule_id;
    }
};

class ActionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string describe(const Action& a, const FeatureSchemaSet& schema);

// Value a causal repair writes to satisfy `head`: the constant for ==, bound
// +/- step for strict and non-strict orderings, the lower bound for a range.
// nullopt when no in-domain value exists.
std::optional<Value> canonical_head_value(const Literal& head, const FeatureSchema& feature);

// Finite, ascending candidate values for numeric features, derived from the
// thresholds of `rules` that mention the feature. Decision-rule literals
// contribute the boundary value that falsifies them (exception literals, one
// level down, the value that satisfies them; the polarity alternates with
// nesting); causal-rule literals contribute the value that satisfies them.
// Out-of-domain values are dropped. Categorical features yield their whole
// domain in declaration order. Throws SchemaError on unknown features.
std::vector<Value> candidate_values(const FeatureSchemaSet& schema, std::string_view feature, const RuleSet& rules);

// The action set A for one problem: schema, decision rules Q, causal rules C,
// and the candidate grid derived from them.
class ActionSpace {
public:
    ActionSpace(FeatureSchemaSet schema, RuleSet decisions, RuleSet causal);
    // Single rule set holding both Q and C.
    ActionSpace(FeatureSchemaSet schema, const RuleSet& rules);

    const FeatureSchemaSet& schema() const { return schema_; }
    const RuleSet& decisions() const { return decisions_; }
    const RuleSet& causal() const { return causal_; }
    const std::vector<Value>& candidates(std::size_t feature) const { return candidates_[feature]; }
    const std::optional<NormalizedGoalCondition>& goal() const { return goal_; }

    // Every plausible action in `s`: applicable causal repairs in rule order,
    // then direct actions by schema order and ascending value.
    std::vector<Action> enumerate(const State& s) const;

    // Actions allowed inside a repair chain from an inconsistent state: causal
    // repairs of violated rules, then direct actions on features those rules mention.
    std::vector<Action> repairs(const State& s) const;

    bool is_consistent(const State& s) const { return is_causally_consistent(causal_, s); }
    bool is_goal(const State& s) const { return is_counterfactual(s, causal_, decisions_); }

    // Checked application: throws ActionError on plausibility or domain violations.
    State apply(const State& s, const Action& a) const;

private:
    std::optional<Action> causal_repair(const CausalRule& rule, const State& s) const;
    void append_direct(const State& s, std::size_t feature, std::vector<Action>& out) const;

    FeatureSchemaSet schema_;
    RuleSet decisions_;
    RuleSet causal_;
    RuleSet all_;
    std::vector<std::vector<Value>> candidates_;
    std::optional<NormalizedGoalCondition> goal_;
};

std::vector<Action> enumerate_actions(const State& s, const FeatureSchemaSet& schema, const RuleSet& rules);

enum class ApplyMode { checked, unchecked };

// Direct: writes the value. Causal repair: writes the canonical head value of
// the named rule. The result may be causally inconsistent. In checked mode
// throws ActionError on immutable/causal-only targets, monotonicity
// violations, out-of-domain values or unknown rules.
State apply_action(const State& s, const Action& a, const FeatureSchemaSet& schema, const RuleSet& causal,
                   ApplyMode mode = ApplyMode::checked);

}  // namespace cogs

#endif  // COGS_ACTIONS_HPP
