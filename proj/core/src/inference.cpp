#include "cogs/inference.hpp"

#include <algorithm>

namespace cogs {

bool eval_literal(const Literal& lit, const State& s) {
    const Value& v = s[lit.index];
    switch (lit.op) {
        case Comparator::eq: return v == lit.constant;
        case Comparator::ne: return v != lit.constant;
        default: break;
    }
    if (!v.is_numeric() || !lit.constant.is_numeric()) return false;
    const Number& x = v.number();
    const Number& c = lit.constant.number();
    switch (lit.op) {
        case Comparator::lt: return x < c;
        case Comparator::le: return x <= c;
        case Comparator::gt: return x > c;
        case Comparator::ge: return x >= c;
        case Comparator::in_range: return c <= x && x < lit.upper;
        default: return false;
    }
}

bool body_holds(const std::vector<Literal>& body, const State& s) {
    return std::all_of(body.begin(), body.end(), [&](const Literal& l) { return eval_literal(l, s); });
}

bool rule_fires(const DecisionRule& rule, const State& s) {
    if (!body_holds(rule.body, s)) return false;
    return std::none_of(rule.exceptions.begin(), rule.exceptions.end(),
                        [&](const DecisionRule& e) { return rule_fires(e, s); });
}

bool decision(const RuleSet& rules, const State& s) {
    return std::any_of(rules.decision_rules.begin(), rules.decision_rules.end(),
                       [&](const DecisionRule& r) { return rule_fires(r, s); });
}

bool causal_rule_holds(const CausalRule& rule, const State& s) {
    return !body_holds(rule.body, s) || eval_literal(rule.head, s);
}

bool is_causally_consistent(const RuleSet& causal, const State& s) {
    return std::all_of(causal.causal_rules.begin(), causal.causal_rules.end(),
                       [&](const CausalRule& r) { return causal_rule_holds(r, s); });
}

bool is_counterfactual(const State& s, const RuleSet& causal, const RuleSet& decisions) {
    return is_causally_consistent(causal, s) && !decision(decisions, s);
}

std::vector<State> filter_consistent(std::span<const State> states, const RuleSet& causal) {
    std::vector<State> out;
    for (const auto& s : states) {
        if (is_causally_consistent(causal, s)) out.push_back(s);
    }
    return out;
}

std::vector<Literal> negate(const Literal& lit) {
    Literal n = lit;
    switch (lit.op) {
        case Comparator::eq: n.op = Comparator::ne; return {n};
        case Comparator::ne: n.op = Comparator::eq; return {n};
        case Comparator::lt: n.op = Comparator::ge; return {n};
        case Comparator::le: n.op = Comparator::gt; return {n};
        case Comparator::gt: n.op = Comparator::le; return {n};
        case Comparator::ge: n.op = Comparator::lt; return {n};
        case Comparator::in_range: {
            Literal below = lit;
            below.op = Comparator::lt;
            Literal above = lit;
            above.op = Comparator::ge;
            above.constant = Value(lit.upper);
            return {below, above};
        }
    }
    return {n};
}

namespace {

using Dnf = std::vector<std::vector<Literal>>;
constexpr std::size_t max_alternatives = 4096;

std::optional<Dnf> not_fires(const DecisionRule& rule);

// Disjunctive form of "rule fires": body and, per exception, "exception does not fire".
std::optional<Dnf> fires(const DecisionRule& rule) {
    Dnf acc{rule.body};
    for (const auto& e : rule.exceptions) {
        auto neg = not_fires(e);
        if (!neg) return std::nullopt;
        Dnf next;
        for (const auto& a : acc) {
            for (const auto& b : *neg) {
                auto merged = a;
                merged.insert(merged.end(), b.begin(), b.end());
                next.push_back(std::move(merged));
                if (next.size() > max_alternatives) return std::nullopt;
            }
        }
        acc = std::move(next);
    }
    return acc;
}

std::optional<Dnf> not_fires(const DecisionRule& rule) {
    Dnf out;
    for (const auto& lit : rule.body) {
        for (auto& n : negate(lit)) out.push_back({std::move(n)});
    }
    for (const auto& e : rule.exceptions) {
        auto f = fires(e);
        if (!f) return std::nullopt;
        out.insert(out.end(), f->begin(), f->end());
        if (out.size() > max_alternatives) return std::nullopt;
    }
    return out;
}

}  // namespace

std::optional<NormalizedGoalCondition> goal_conditions(const RuleSet& decisions) {
    NormalizedGoalCondition cond;
    for (const auto& rule : decisions.decision_rules) {
        auto alts = not_fires(rule);
        if (!alts) return std::nullopt;
        cond.conjuncts.push_back({rule.id, std::move(*alts)});
    }
    return cond;
}

bool satisfies(const NormalizedGoalCondition& cond, const State& s) {
    return std::all_of(cond.conjuncts.begin(), cond.conjuncts.end(), [&](const GoalConjunct& c) {
        return std::any_of(c.alternatives.begin(), c.alternatives.end(),
                           [&](const std::vector<Literal>& alt) { return body_holds(alt, s); });
    });
}

std::string format_goal_condition(const NormalizedGoalCondition& cond) {
    if (cond.conjuncts.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < cond.conjuncts.size(); ++i) {
        if (i) out += " and ";
        const auto& alts = cond.conjuncts[i].alternatives;
        out += "(";
        if (alts.empty()) out += "false";
        for (std::size_t j = 0; j < alts.size(); ++j) {
            if (j) out += " or ";
            if (alts[j].empty()) out += "true";
            for (std::size_t k = 0; k < alts[j].size(); ++k) {
                if (k) out += " & ";
                out += format_literal(alts[j][k]);
            }
        }
        out += ")";
    }
    return out;
}

}  // namespace cogs
