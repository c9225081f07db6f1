#include "cogs/actions.hpp"

#include <algorithm>
#include <set>

#include "cogs/errors.hpp"

namespace cogs {

namespace {

// Preferred value first, fallback second, for making `op c` true or false.
std::vector<Number> boundary_values(Comparator op, const Number& c, const Number& upper, const Number& step,
                                    bool satisfy) {
    if (satisfy) {
        switch (op) {
            case Comparator::eq: return {c};
            case Comparator::ne: return {c + step, c - step};
            case Comparator::lt: return {c - step};
            case Comparator::le: return {c};
            case Comparator::gt: return {c + step};
            case Comparator::ge: return {c};
            case Comparator::in_range: return {c};
        }
    } else {
        switch (op) {
            case Comparator::eq: return {c + step, c - step};
            case Comparator::ne: return {c};
            case Comparator::lt: return {c};
            case Comparator::le: return {c + step};
            case Comparator::gt: return {c};
            case Comparator::ge: return {c - step};
            case Comparator::in_range: return {upper, c - step};
        }
    }
    return {};
}

std::optional<Number> first_in_domain(const std::vector<Number>& options, const NumericDomain& d) {
    for (const auto& v : options) {
        if (d.min <= v && v <= d.max) return v;
    }
    return std::nullopt;
}

void collect(const Literal& lit, std::size_t feature, const NumericDomain& d, bool satisfy, std::set<Number>& out) {
    if (lit.index != feature || !lit.constant.is_numeric()) return;
    if (auto v = first_in_domain(boundary_values(lit.op, lit.constant.number(), lit.upper, d.step, satisfy), d)) {
        out.insert(*v);
    }
}

void collect_decision(const DecisionRule& r, std::size_t feature, const NumericDomain& d, bool satisfy,
                      std::set<Number>& out) {
    for (const auto& l : r.body) collect(l, feature, d, satisfy, out);
    for (const auto& e : r.exceptions) collect_decision(e, feature, d, !satisfy, out);
}

bool flips(const Literal& l, std::size_t feature, const State& s, const State& t) {
    return l.index == feature && eval_literal(l, s) != eval_literal(l, t);
}

std::string find_provenance(const DecisionRule& r, std::size_t feature, const State& s, const State& t) {
    for (const auto& l : r.body) {
        if (flips(l, feature, s, t)) return r.id;
    }
    for (const auto& e : r.exceptions) {
        if (auto p = find_provenance(e, feature, s, t); !p.empty()) return p;
    }
    return {};
}

}  // namespace

std::string describe(const Action& a, const FeatureSchemaSet& schema) {
    std::string feature = a.feature < schema.size() ? schema[a.feature].name : "#" + std::to_string(a.feature);
    if (a.is_direct()) return "Direct(" + feature + " -> " + a.value.str() + ")";
    return "CausalRepair(" + a.rule_id + ": " + feature + " -> " + a.value.str() + ")";
}

std::optional<Value> canonical_head_value(const Literal& head, const FeatureSchema& feature) {
    if (!feature.is_numeric()) {
        if (head.op == Comparator::eq) {
            return feature.contains(head.constant) ? std::optional<Value>(head.constant) : std::nullopt;
        }
        if (head.op == Comparator::ne) {
            for (const auto& v : feature.categorical().values) {
                if (v != head.constant.symbol()) return Value::symbol(v);
            }
        }
        return std::nullopt;
    }
    const auto& d = feature.numeric();
    if (auto v = first_in_domain(boundary_values(head.op, head.constant.number(), head.upper, d.step, true), d)) {
        return Value(*v);
    }
    return std::nullopt;
}

std::vector<Value> candidate_values(const FeatureSchemaSet& schema, std::string_view feature, const RuleSet& rules) {
    std::size_t fi = schema.require(feature);
    const auto& f = schema[fi];
    std::vector<Value> out;
    if (!f.is_numeric()) {
        for (const auto& v : f.categorical().values) out.push_back(Value::symbol(v));
        return out;
    }
    const auto& d = f.numeric();
    std::set<Number> values;
    for (const auto& r : rules.decision_rules) collect_decision(r, fi, d, false, values);
    for (const auto& r : rules.causal_rules) {
        for (const auto& l : r.body) collect(l, fi, d, true, values);
        collect(r.head, fi, d, true, values);
    }
    for (const auto& v : values) out.emplace_back(v);
    return out;
}

ActionSpace::ActionSpace(FeatureSchemaSet schema, RuleSet decisions, RuleSet causal)
    : schema_(std::move(schema)), decisions_(std::move(decisions)), causal_(std::move(causal)) {
    decisions_.causal_rules.clear();
    causal_.decision_rules.clear();
    causal_.decision_atom.clear();
    all_ = combine(decisions_, causal_);
    candidates_.reserve(schema_.size());
    for (const auto& f : schema_) candidates_.push_back(candidate_values(schema_, f.name, all_));
    goal_ = goal_conditions(decisions_);
}

ActionSpace::ActionSpace(FeatureSchemaSet schema, const RuleSet& rules)
    : ActionSpace(std::move(schema), rules, rules) {}

std::optional<Action> ActionSpace::causal_repair(const CausalRule& rule, const State& s) const {
    if (!body_holds(rule.body, s) || eval_literal(rule.head, s)) return std::nullopt;
    const auto& f = schema_[rule.head.index];
    if (f.mutability == Mutability::immutable) return std::nullopt;
    auto v = canonical_head_value(rule.head, f);
    if (!v || *v == s[rule.head.index] || !f.direction_allowed(s[rule.head.index], *v)) return std::nullopt;
    return Action{Action::Kind::causal_repair, rule.head.index, *v, rule.id, rule.id};
}

void ActionSpace::append_direct(const State& s, std::size_t fi, std::vector<Action>& out) const {
    const auto& f = schema_[fi];
    if (!f.directly_mutable()) return;
    for (const auto& v : candidates_[fi]) {
        if (v == s[fi] || !f.direction_allowed(s[fi], v)) continue;
        Action a = Action::direct(fi, v);
        State t = s.with(fi, v);
        for (const auto& r : decisions_.decision_rules) {
            a.provenance = find_provenance(r, fi, s, t);
            if (!a.provenance.empty()) break;
        }
        if (a.provenance.empty()) {
            for (const auto& r : causal_.causal_rules) {
                bool hit = std::any_of(r.body.begin(), r.body.end(),
                                       [&](const Literal& l) { return flips(l, fi, s, t); }) ||
                           flips(r.head, fi, s, t);
                if (hit) {
                    a.provenance = r.id;
                    break;
                }
            }
        }
        out.push_back(std::move(a));
    }
}

std::vector<Action> ActionSpace::enumerate(const State& s) const {
    std::vector<Action> out;
    for (const auto& r : causal_.causal_rules) {
        if (auto a = causal_repair(r, s)) out.push_back(std::move(*a));
    }
    for (std::size_t fi = 0; fi < schema_.size(); ++fi) append_direct(s, fi, out);
    return out;
}

std::vector<Action> ActionSpace::repairs(const State& s) const {
    std::vector<Action> out;
    std::vector<bool> involved(schema_.size(), false);
    for (const auto& r : causal_.causal_rules) {
        if (causal_rule_holds(r, s)) continue;
        if (auto a = causal_repair(r, s)) out.push_back(std::move(*a));
        involved[r.head.index] = true;
        for (const auto& l : r.body) involved[l.index] = true;
    }
    for (std::size_t fi = 0; fi < schema_.size(); ++fi) {
        if (involved[fi]) append_direct(s, fi, out);
    }
    return out;
}

State ActionSpace::apply(const State& s, const Action& a) const {
    return apply_action(s, a, schema_, causal_, ApplyMode::checked);
}

std::vector<Action> enumerate_actions(const State& s, const FeatureSchemaSet& schema, const RuleSet& rules) {
    return ActionSpace(schema, rules).enumerate(s);
}

State apply_action(const State& s, const Action& a, const FeatureSchemaSet& schema, const RuleSet& causal,
                   ApplyMode mode) {
    if (a.feature >= schema.size() || a.feature >= s.size()) throw ActionError("action targets unknown feature");
    const auto& f = schema[a.feature];
    Value target = a.value;
    if (!a.is_direct()) {
        const CausalRule* rule = causal.find_causal(a.rule_id);
        if (!rule) throw ActionError("unknown causal rule '" + a.rule_id + "'");
        if (rule->head.index != a.feature) throw ActionError("causal repair " + a.rule_id + " names the wrong feature");
        auto v = canonical_head_value(rule->head, f);
        if (!v) throw ActionError("causal rule " + a.rule_id + " has no in-domain head value");
        target = *v;
    }
    if (mode == ApplyMode::checked) {
        if (a.is_direct() && !f.directly_mutable()) {
            throw ActionError("plausibility violation: '" + f.name + "' is " + std::string(to_string(f.mutability)) +
                              " and cannot be changed directly");
        }
        if (f.mutability == Mutability::immutable && target != s[a.feature]) {
            throw ActionError("plausibility violation: '" + f.name + "' is immutable");
        }
        if (!f.contains(target)) throw ActionError("value " + target.str() + " is outside the domain of '" + f.name + "'");
        if (!f.direction_allowed(s[a.feature], target)) {
            throw ActionError("plausibility violation: '" + f.name + "' is " + std::string(to_string(f.mutability)) +
                              ", cannot move " + s[a.feature].str() + " -> " + target.str());
        }
    }
    return s.with(a.feature, std::move(target));
}

}  // namespace cogs
