#include "cogs/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "cogs/actions.hpp"
#include "cogs/inference.hpp"

namespace cogs::oracle {

namespace {

using Grid = std::vector<std::vector<Value>>;

Grid build_grid(const FeatureSchemaSet& schema, const RuleSet& rules, const std::optional<State>& include) {
    Grid grid;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        auto values = candidate_values(schema, schema[i].name, rules);
        if (include && std::find(values.begin(), values.end(), (*include)[i]) == values.end()) {
            values.push_back((*include)[i]);
            if (schema[i].is_numeric()) std::sort(values.begin(), values.end());
        }
        grid.push_back(std::move(values));
    }
    return grid;
}

std::size_t grid_size(const Grid& grid, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& g : grid) {
        if (g.empty()) return 0;
        if (total > cap / g.size() + 1) return cap + 1;
        total *= g.size();
    }
    return total;
}

bool violated(const CausalRule& r, const State& s) {
    return body_holds(r.body, s) && !eval_literal(r.head, s);
}

bool consistent(const RuleSet& causal, const State& s) {
    return std::none_of(causal.causal_rules.begin(), causal.causal_rules.end(),
                        [&](const CausalRule& r) { return violated(r, s); });
}

bool goal(const State& s, const RuleSet& causal, const RuleSet& decisions) {
    return consistent(causal, s) && !decision(decisions, s);
}

bool may_move(const FeatureSchema& f, const Value& from, const Value& to) {
    if (from == to) return false;
    switch (f.mutability) {
        case Mutability::immutable: return false;
        case Mutability::monotone_increasing: return !from.is_numeric() || from.number() < to.number();
        case Mutability::monotone_decreasing: return !from.is_numeric() || from.number() > to.number();
        default: return true;
    }
}

std::optional<State> repair_move(const CausalRule& r, const State& s, const FeatureSchemaSet& schema) {
    const auto& f = schema[r.head.index];
    auto v = canonical_head_value(r.head, f);
    if (!v || !may_move(f, s[r.head.index], *v)) return std::nullopt;
    return s.with(r.head.index, *v);
}

// Grid-restricted moves. From a consistent state every plausible move counts;
// from an inconsistent one only moves touching a violated causal rule.
std::vector<State> moves(const State& s, bool repairing, const FeatureSchemaSet& schema, const RuleSet& causal,
                         const Grid& candidates) {
    std::vector<State> out;
    std::vector<bool> touch(schema.size(), !repairing);
    for (const auto& r : causal.causal_rules) {
        if (!violated(r, s)) continue;
        if (auto t = repair_move(r, s, schema)) out.push_back(std::move(*t));
        touch[r.head.index] = true;
        for (const auto& l : r.body) touch[l.index] = true;
    }
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const auto& f = schema[i];
        if (!touch[i] || f.mutability == Mutability::causal_only) continue;
        for (const auto& v : candidates[i]) {
            if (may_move(f, s[i], v)) out.push_back(s.with(i, v));
        }
    }
    return out;
}

struct Context {
    const FeatureSchemaSet& schema;
    const RuleSet& causal;
    const RuleSet& decisions;
    Grid candidates;  // numeric thresholds only, no instance values

    Context(const FeatureSchemaSet& sc, const RuleSet& c, const RuleSet& d)
        : schema(sc), causal(c), decisions(d), candidates(build_grid(sc, combine(d, c), std::nullopt)) {}

    std::set<State> closure(const State& s) const {
        std::set<State> result;
        std::set<State> visited{s};
        std::deque<State> queue;
        for (auto& t : moves(s, false, schema, causal, candidates)) {
            if (visited.insert(t).second) queue.push_back(std::move(t));
        }
        while (!queue.empty()) {
            State cur = std::move(queue.front());
            queue.pop_front();
            if (consistent(causal, cur)) {
                result.insert(std::move(cur));
                continue;
            }
            for (auto& t : moves(cur, true, schema, causal, candidates)) {
                if (visited.insert(t).second) queue.push_back(std::move(t));
            }
        }
        return result;
    }
};

void check_cap(const FeatureSchemaSet& schema, const RuleSet& rules, const State& initial, std::size_t cap) {
    std::size_t n = space_size(schema, rules, initial);
    if (n > cap) throw CapExceeded("state space has more than " + std::to_string(cap) + " states");
}

}  // namespace

std::string_view to_string(PathViolation::Kind k) {
    switch (k) {
        case PathViolation::Kind::empty_path: return "empty_path";
        case PathViolation::Kind::start_mismatch: return "start_mismatch";
        case PathViolation::Kind::inconsistent_state: return "inconsistent_state";
        case PathViolation::Kind::end_not_goal: return "end_not_goal";
        case PathViolation::Kind::interior_goal: return "interior_goal";
        case PathViolation::Kind::duplicate_state: return "duplicate_state";
        case PathViolation::Kind::broken_transition: return "broken_transition";
    }
    return "unknown";
}

std::size_t space_size(const FeatureSchemaSet& schema, const RuleSet& rules, const std::optional<State>& include) {
    return grid_size(build_grid(schema, rules, include), SIZE_MAX - 1);
}

std::vector<State> enumerate_space(const FeatureSchemaSet& schema, const RuleSet& rules,
                                   const std::optional<State>& include, std::size_t cap) {
    Grid grid = build_grid(schema, rules, include);
    std::size_t n = grid_size(grid, cap);
    if (n > cap) throw CapExceeded("state space has more than " + std::to_string(cap) + " states");
    std::vector<State> out;
    if (n == 0) return out;
    out.reserve(n);
    std::vector<std::size_t> digits(grid.size(), 0);
    for (;;) {
        std::vector<Value> values;
        values.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) values.push_back(grid[i][digits[i]]);
        out.emplace_back(std::move(values));
        std::size_t pos = grid.size();
        while (pos > 0) {
            --pos;
            if (++digits[pos] < grid[pos].size()) break;
            digits[pos] = 0;
            if (pos == 0) return out;
        }
        if (grid.empty()) return out;
    }
}

std::vector<State> brute_force_counterfactuals(const FeatureSchemaSet& schema, const RuleSet& causal,
                                               const RuleSet& decisions, const std::optional<State>& include,
                                               std::size_t cap) {
    std::vector<State> out;
    for (auto& s : enumerate_space(schema, combine(decisions, causal), include, cap)) {
        if (goal(s, causal, decisions)) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::set<State> transition_closure(const State& s, const FeatureSchemaSet& schema, const RuleSet& causal,
                                   const RuleSet& decisions) {
    return Context(schema, causal, decisions).closure(s);
}

std::optional<std::vector<State>> bfs_shortest_path(const State& initial, const FeatureSchemaSet& schema,
                                                    const RuleSet& causal, const RuleSet& decisions,
                                                    std::size_t max_len, std::size_t cap) {
    check_cap(schema, combine(decisions, causal), initial, cap);
    if (!consistent(causal, initial) || max_len == 0) return std::nullopt;
    if (goal(initial, causal, decisions)) return std::vector<State>{initial};

    Context ctx(schema, causal, decisions);
    std::map<State, State> parent;
    std::map<State, std::size_t> depth{{initial, 1}};
    std::deque<State> queue{initial};
    while (!queue.empty()) {
        State cur = queue.front();
        queue.pop_front();
        std::size_t d = depth[cur];
        if (d >= max_len) continue;
        for (const auto& t : ctx.closure(cur)) {
            if (depth.count(t)) continue;
            depth[t] = d + 1;
            parent.emplace(t, cur);
            if (goal(t, causal, decisions)) {
                std::vector<State> path{t};
                while (path.back() != initial) path.push_back(parent.at(path.back()));
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(t);
        }
    }
    return std::nullopt;
}

std::set<std::vector<State>> all_solution_paths(const State& initial, const FeatureSchemaSet& schema,
                                                const RuleSet& causal, const RuleSet& decisions, std::size_t max_len,
                                                std::size_t cap) {
    check_cap(schema, combine(decisions, causal), initial, cap);
    std::set<std::vector<State>> out;
    if (!consistent(causal, initial) || max_len == 0) return out;
    if (goal(initial, causal, decisions)) {
        out.insert({initial});
        return out;
    }
    Context ctx(schema, causal, decisions);
    std::map<State, std::set<State>> succ;
    std::vector<State> path{initial};
    auto dfs = [&](auto&& self) -> void {
        const State& cur = path.back();
        if (path.size() >= max_len) return;
        auto it = succ.find(cur);
        if (it == succ.end()) it = succ.emplace(cur, ctx.closure(cur)).first;
        for (const auto& t : it->second) {
            if (std::find(path.begin(), path.end(), t) != path.end()) continue;
            path.push_back(t);
            if (goal(t, causal, decisions)) {
                out.insert(path);
            } else {
                self(self);
            }
            path.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

namespace {

// Domain-level legality of one replayed action. Returns an error message or "".
std::string replay_error(const Action& a, const State& cur, bool repairing, const FeatureSchemaSet& schema,
                         const RuleSet& causal) {
    if (a.feature >= schema.size()) return "action targets unknown feature";
    const auto& f = schema[a.feature];
    if (a.is_direct()) {
        if (f.mutability == Mutability::causal_only) return "direct action on causal-only '" + f.name + "'";
        if (!f.contains(a.value)) return "value outside the domain of '" + f.name + "'";
        if (!may_move(f, cur[a.feature], a.value)) return "implausible change of '" + f.name + "'";
        if (repairing) {
            bool touches = false;
            for (const auto& r : causal.causal_rules) {
                if (!violated(r, cur)) continue;
                if (r.head.index == a.feature) touches = true;
                for (const auto& l : r.body) touches = touches || l.index == a.feature;
            }
            if (!touches) return "direct action on '" + f.name + "' repairs no violated causal rule";
        }
        return {};
    }
    const CausalRule* rule = causal.find_causal(a.rule_id);
    if (!rule) return "unknown causal rule '" + a.rule_id + "'";
    if (!violated(*rule, cur)) return "causal rule " + a.rule_id + " is not violated";
    if (rule->head.index != a.feature) return "causal repair writes the wrong feature";
    auto expected = repair_move(*rule, cur, schema);
    if (!expected) return "causal rule " + a.rule_id + " cannot be repaired here";
    if ((*expected)[a.feature] != a.value) return "causal repair writes an unexpected value";
    return {};
}

}  // namespace

std::vector<PathViolation> verify_path(const CandidatePath& path, const State& initial,
                                       const FeatureSchemaSet& schema, const RuleSet& causal,
                                       const RuleSet& decisions) {
    using K = PathViolation::Kind;
    std::vector<PathViolation> out;
    if (path.empty()) {
        out.push_back({K::empty_path, 0, "path has no states"});
        return out;
    }
    if (path.initial() != initial) out.push_back({K::start_mismatch, 0, "first state differs from the initial state"});
    std::set<State> seen;
    for (std::size_t j = 0; j < path.size(); ++j) {
        const auto& s = path.entries[j].state;
        if (!consistent(causal, s)) out.push_back({K::inconsistent_state, j, format_state(schema, s)});
        if (!seen.insert(s).second) out.push_back({K::duplicate_state, j, format_state(schema, s)});
        if (j + 1 < path.size() && goal(s, causal, decisions)) {
            out.push_back({K::interior_goal, j, format_state(schema, s)});
        }
    }
    if (!goal(path.goal(), causal, decisions)) {
        out.push_back({K::end_not_goal, path.size() - 1, format_state(schema, path.goal())});
    }
    if (!path.entries.front().actions_taken.empty()) {
        out.push_back({K::broken_transition, 0, "initial entry carries actions"});
    }

    for (std::size_t j = 1; j < path.size(); ++j) {
        const auto& actions = path.entries[j].actions_taken;
        State cur = path.entries[j - 1].state;
        if (actions.empty()) {
            out.push_back({K::broken_transition, j, "no recorded actions"});
            continue;
        }
        for (std::size_t k = 0; k < actions.size(); ++k) {
            bool repairing = k > 0;
            if (repairing && consistent(causal, cur)) {
                out.push_back({K::broken_transition, j, "repair chain continues past a consistent state"});
                break;
            }
            if (auto err = replay_error(actions[k], cur, repairing, schema, causal); !err.empty()) {
                out.push_back({K::broken_transition, j, err});
                break;
            }
            cur = cur.with(actions[k].feature, actions[k].value);
        }
        if (cur != path.entries[j].state) {
            out.push_back({K::broken_transition, j, "replayed actions reach " + format_state(schema, cur)});
        }
    }
    return out;
}

std::vector<std::string> check_plausibility(const CandidatePath& path, const FeatureSchemaSet& schema,
                                            const RuleSet& causal) {
    std::vector<std::string> out;
    if (path.empty()) return out;
    for (std::size_t j = 1; j < path.size(); ++j) {
        State cur = path.entries[j - 1].state;
        for (const auto& a : path.entries[j].actions_taken) {
            if (a.feature >= schema.size()) {
                out.push_back("action on unknown feature");
                continue;
            }
            const auto& f = schema[a.feature];
            Value next = a.value;
            if (!a.is_direct()) {
                const CausalRule* r = causal.find_causal(a.rule_id);
                if (r) {
                    if (auto v = canonical_head_value(r->head, f)) next = *v;
                }
            }
            if (a.is_direct() && f.mutability == Mutability::causal_only) {
                out.push_back("step " + std::to_string(j) + ": causal-only '" + f.name + "' changed directly");
            }
            if (f.mutability == Mutability::immutable && next != cur[a.feature]) {
                out.push_back("step " + std::to_string(j) + ": immutable '" + f.name + "' changed");
            }
            if (!f.direction_allowed(cur[a.feature], next)) {
                out.push_back("step " + std::to_string(j) + ": monotone '" + f.name + "' reversed");
            }
            cur = cur.with(a.feature, next);
        }
    }
    const State& first = path.initial();
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const auto& f = schema[i];
        for (std::size_t j = 1; j < path.size(); ++j) {
            const Value& prev = path.entries[j - 1].state[i];
            const Value& now = path.entries[j].state[i];
            if (f.mutability == Mutability::immutable && now != first[i]) {
                out.push_back("immutable '" + f.name + "' differs from the initial state at step " + std::to_string(j));
            }
            if (!f.direction_allowed(prev, now)) {
                out.push_back("monotone '" + f.name + "' reverses between steps " + std::to_string(j - 1) + " and " +
                              std::to_string(j));
            }
        }
    }
    return out;
}

}  // namespace cogs::oracle
