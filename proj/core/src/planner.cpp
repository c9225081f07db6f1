#include "cogs/planner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cogs {

std::string_view to_string(PlanStatus s) {
    switch (s) {
        case PlanStatus::found: return "found";
        case PlanStatus::no_solution: return "no_solution_within_bounds";
        case PlanStatus::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

std::vector<State> CandidatePath::states() const {
    std::vector<State> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.state);
    return out;
}

std::vector<Action> ordered_actions(const ActionSpace& space, const State& s) {
    auto actions = space.enumerate(s);
    const auto& goal = space.goal();
    if (!goal) return actions;

    std::vector<const GoalConjunct*> open;
    for (const auto& c : goal->conjuncts) {
        bool sat = std::any_of(c.alternatives.begin(), c.alternatives.end(),
                               [&](const std::vector<Literal>& alt) { return body_holds(alt, s); });
        if (!sat) open.push_back(&c);
    }
    if (open.empty()) return actions;

    auto directed = [&](const Action& a) {
        State t = s.with(a.feature, a.value);
        for (const auto* c : open) {
            for (const auto& alt : c->alternatives) {
                if (body_holds(alt, t)) return true;
            }
        }
        return false;
    };
    std::stable_partition(actions.begin(), actions.end(), directed);
    return actions;
}

SuccessorCursor::SuccessorCursor(const ActionSpace& space, State source, std::vector<Action> first_actions)
    : space_(&space), source_(std::move(source)), first_(std::move(first_actions)) {
    seen_.insert(source_);
}

Transition SuccessorCursor::make_transition(const State& final_state, const Action& last) const {
    Transition t;
    t.state = final_state;
    for (const auto& f : chain_) {
        t.actions.push_back(f.via);
        t.entries.push_back({f.state, {f.via}});
    }
    t.actions.push_back(last);
    t.entries.push_back({final_state, {last}});
    return t;
}

std::optional<Transition> SuccessorCursor::next(const std::unordered_set<State>& excluded, SearchBudget& budget) {
    for (;;) {
        const State* from = nullptr;
        const Action* action = nullptr;
        if (chain_.empty()) {
            if (first_next_ == first_.size()) return std::nullopt;
            from = &source_;
            action = &first_[first_next_++];
        } else {
            auto& top = chain_.back();
            if (top.next == top.options.size()) {
                chain_.pop_back();
                continue;
            }
            from = &top.state;
            action = &top.options[top.next++];
        }
        if (!budget.spend()) return std::nullopt;
        State next_state = space_->apply(*from, *action);
        if (!seen_.insert(next_state).second || excluded.count(next_state)) continue;
        if (space_->is_consistent(next_state)) return make_transition(next_state, *action);
        Action via = *action;
        auto options = space_->repairs(next_state);
        chain_.push_back({std::move(next_state), std::move(via), std::move(options), 0});
    }
}

std::optional<Transition> transition(const State& s, const Action& a, const ActionSpace& space,
                                     const std::unordered_set<State>& visited, std::uint64_t* expansions) {
    SearchBudget budget(UINT64_MAX);
    SuccessorCursor cursor(space, s, {a});
    auto out = cursor.next(visited, budget);
    if (expansions) *expansions += budget.used();
    return out;
}

std::vector<VisitedEntry> drop_inconsistent(std::span<const VisitedEntry> visited, const RuleSet& causal) {
    std::vector<VisitedEntry> out;
    std::vector<Action> carried;
    for (const auto& e : visited) {
        carried.insert(carried.end(), e.actions_taken.begin(), e.actions_taken.end());
        if (!is_causally_consistent(causal, e.state)) continue;
        out.push_back({e.state, std::move(carried)});
        carried.clear();
    }
    return out;
}

PathSearch::PathSearch(const ActionSpace& space, State initial, std::size_t max_states, SearchBudget& budget,
                       bool prune_revisits)
    : space_(&space), max_states_(max_states), budget_(&budget), prune_(prune_revisits) {
    on_trail_.insert(initial);
    best_depth_[initial] = 1;
    trail_.push_back({initial, {}});
    if (!space.is_goal(initial)) {
        frames_.push_back({0, SuccessorCursor(space, initial, ordered_actions(space, initial))});
    }
}

bool PathSearch::at_goal() const { return !trail_.empty() && space_->is_goal(trail_.back().state); }

void PathSearch::truncate(std::size_t size) {
    while (trail_.size() > size) {
        on_trail_.erase(trail_.back().state);
        trail_.pop_back();
    }
}

void PathSearch::retreat_from_goal() {
    if (!at_goal()) return;
    truncate(frames_.empty() ? 0 : frames_.back().trail_index + 1);
}

PathSearch::Step PathSearch::intervene() {
    if (trail_.empty()) throw std::logic_error("intervene: empty trail");
    if (at_goal()) throw std::logic_error("intervene: last state is already a counterfactual");

    while (!frames_.empty()) {
        auto& top = frames_.back();
        std::size_t child_depth = frames_.size() + 1;
        if (child_depth > max_states_) {
            // Bound reached; this state cannot be extended.
            truncate(frames_.size() > 1 ? frames_[frames_.size() - 2].trail_index + 1 : 0);
            frames_.pop_back();
            return frames_.empty() ? Step::failed : Step::backtracked;
        }
        auto tr = top.cursor.next(on_trail_, *budget_);
        if (!tr) {
            if (budget_->exhausted()) return Step::budget_exhausted;
            truncate(frames_.size() > 1 ? frames_[frames_.size() - 2].trail_index + 1 : 0);
            frames_.pop_back();
            return frames_.empty() ? Step::failed : Step::backtracked;
        }
        bool goal = space_->is_goal(tr->state);
        if (!goal) {
            if (child_depth >= max_states_) continue;
            if (prune_) {
                auto it = best_depth_.find(tr->state);
                if (it != best_depth_.end() && it->second <= child_depth) continue;
                best_depth_[tr->state] = child_depth;
            }
        }
        for (auto& e : tr->entries) {
            on_trail_.insert(e.state);
            trail_.push_back(std::move(e));
        }
        if (!goal) {
            frames_.push_back({trail_.size() - 1,
                               SuccessorCursor(*space_, trail_.back().state, ordered_actions(*space_, trail_.back().state))});
        }
        return Step::advanced;
    }
    return Step::failed;
}

PlanResult find_path(const State& initial, const ActionSpace& space, const PlanConfig& cfg) {
    if (!space.is_consistent(initial)) throw std::invalid_argument("initial state is not causally consistent");
    if (cfg.max_path_len == 0) throw std::invalid_argument("max_path_len must be at least 1");

    PlanResult result;
    if (space.is_goal(initial)) {
        result.status = PlanStatus::found;
        result.trail = {{initial, {}}};
        result.path.entries = result.trail;
        result.stats.bound = 1;
        return result;
    }

    SearchBudget budget(cfg.max_expansions);
    // One bounded depth-first run; nullopt when it fails within the bound.
    auto run = [&](std::size_t bound) -> std::optional<PlanResult> {
        PlanResult r;
        r.stats.bound = bound;
        PathSearch search(space, initial, bound, budget);
        for (;;) {
            auto step = search.intervene();
            if (step == PathSearch::Step::budget_exhausted) {
                r.status = PlanStatus::budget_exhausted;
                return r;
            }
            if (step == PathSearch::Step::failed) return std::nullopt;
            if (step == PathSearch::Step::advanced && search.at_goal()) {
                r.status = PlanStatus::found;
                r.trail = search.visited();
                r.path.entries = drop_inconsistent(r.trail, space.causal());
                return r;
            }
        }
    };
    auto finish = [&](PlanResult r) {
        r.stats.expansions = budget.used();
        return r;
    };

    // With `minimal`, the full-bound run settles unsolvable instances in one
    // pass and caps the deepening at the length it found.
    auto full = run(cfg.max_path_len);
    if (!full) {
        result.status = PlanStatus::no_solution;
        result.stats.bound = cfg.max_path_len;
        return finish(std::move(result));
    }
    if (!cfg.minimal || !full->found()) return finish(std::move(*full));
    for (std::size_t bound = 2; bound < full->path.size(); ++bound) {
        auto r = run(bound);
        if (r) return finish(std::move(*r));
    }
    full->stats.bound = full->path.size();
    return finish(std::move(*full));
}

PathsResult enumerate_paths(const State& initial, const ActionSpace& space, const PlanConfig& cfg, std::size_t k) {
    PathsResult out;
    if (k == 0) return out;
    auto first = find_path(initial, space, cfg);
    out.status = first.status;
    out.stats = first.stats;
    if (!first.found()) return out;
    out.paths.push_back(first.path);
    if (k == 1 || first.path.size() == 1) return out;

    std::set<std::vector<State>> seen{first.path.states()};
    std::vector<CandidatePath> others;
    SearchBudget budget(cfg.max_expansions);
    PathSearch search(space, initial, cfg.max_path_len, budget, /*prune_revisits=*/false);
    for (;;) {
        auto step = search.intervene();
        if (step == PathSearch::Step::failed || step == PathSearch::Step::budget_exhausted) break;
        if (step == PathSearch::Step::advanced && search.at_goal()) {
            CandidatePath p{drop_inconsistent(search.visited(), space.causal())};
            if (seen.insert(p.states()).second) {
                others.push_back(std::move(p));
                // Without length ordering the first k-1 finds are final.
                if (!cfg.minimal && others.size() + 1 >= k) break;
            }
            search.retreat_from_goal();
        }
    }
    if (cfg.minimal) {
        std::stable_sort(others.begin(), others.end(),
                         [](const CandidatePath& a, const CandidatePath& b) { return a.size() < b.size(); });
    }
    for (auto& p : others) {
        if (out.paths.size() >= k) break;
        out.paths.push_back(std::move(p));
    }
    out.stats.expansions += budget.used();
    return out;
}

}  // namespace cogs
