#ifndef COGS_INFERENCE_HPP
#define COGS_INFERENCE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cogs/rules.hpp"
#include "cogs/state.hpp"

namespace cogs {

// All evaluators assume bound, well-typed literals and complete states. Over
// complete states negation-as-failure coincides with classical negation.

bool eval_literal(const Literal& lit, const State& s);
bool body_holds(const std::vector<Literal>& body, const State& s);
bool rule_fires(const DecisionRule& rule, const State& s);

// True iff at least one decision rule of `rules` fires on `s`.
bool decision(const RuleSet& rules, const State& s);

bool causal_rule_holds(const CausalRule& rule, const State& s);
bool is_causally_consistent(const RuleSet& causal, const State& s);

// s is a goal: consistent with the causal rules of `causal` and rejected by no
// decision rule of `decisions`.
bool is_counterfactual(const State& s, const RuleSet& causal, const RuleSet& decisions);

std::vector<State> filter_consistent(std::span<const State> states, const RuleSet& causal);

// Complement of the decision program in conjunctive form. Each conjunct
// belongs to one decision rule and is a disjunction of alternatives; each
// alternative is a conjunction of literals: one negated body literal, or a
// way for an exception to fire (its body plus, for every nested exception,
// one way for that one not to fire).
struct GoalConjunct {
    std::string rule_id;
    std::vector<std::vector<Literal>> alternatives;
};

struct NormalizedGoalCondition {
    std::vector<GoalConjunct> conjuncts;
};

// nullopt when a conjunct would exceed 4096 alternatives; the planner then
// searches without goal-directed ordering.
std::optional<NormalizedGoalCondition> goal_conditions(const RuleSet& decisions);

bool satisfies(const NormalizedGoalCondition& cond, const State& s);

// Literal(s) equivalent to the negation of `lit`; in_range negates to two.
std::vector<Literal> negate(const Literal& lit);

std::string format_goal_condition(const NormalizedGoalCondition& cond);

}  // namespace cogs

#endif  // COGS_INFERENCE_HPP
