#ifndef COGS_PLANNER_HPP
#define COGS_PLANNER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cogs/actions.hpp"
#include "cogs/state.hpp"

namespace cogs {

// One element of the planner trail: a state and the actions that produced it
// from the preceding element. The initial state carries no actions.
struct VisitedEntry {
    State state;
    std::vector<Action> actions_taken;

    friend bool operator==(const VisitedEntry&, const VisitedEntry&) = default;
};

// Trail with causally inconsistent intermediates removed. Each entry's
// actions lead from the previous entry's state through the dropped
// intermediates to its own.
struct CandidatePath {
    std::vector<VisitedEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    const State& initial() const { return entries.front().state; }
    const State& goal() const { return entries.back().state; }
    std::vector<State> states() const;
};

struct PlanConfig {
    std::size_t max_path_len = 32;  // counted in consistent states
    bool minimal = false;           // shortest path: deepen the bound up to the first length found
    std::uint64_t max_expansions = 1'000'000;
    std::uint64_t seed = 0;  // reserved; the search is deterministic
};

enum class PlanStatus { found, no_solution, budget_exhausted };

std::string_view to_string(PlanStatus s);

struct PlanStats {
    std::uint64_t expansions = 0;  // actions applied, repair steps included
    std::size_t bound = 0;         // path-length bound of the successful or last run
};

struct PlanResult {
    PlanStatus status = PlanStatus::no_solution;
    CandidatePath path;
    std::vector<VisitedEntry> trail;  // raw trail of the successful run
    PlanStats stats;

    bool found() const { return status == PlanStatus::found; }
};

struct Transition {
    State state;                        // consistent successor
    std::vector<Action> actions;        // full chain from the source
    std::vector<VisitedEntry> entries;  // one per action: intermediates, then the successor
};

class SearchBudget {
public:
    explicit SearchBudget(std::uint64_t limit) : limit_(limit) {}

    // False once the limit is reached.
    bool spend() {
        if (used_ >= limit_) {
            exhausted_ = true;
            return false;
        }
        ++used_;
        return true;
    }
    bool exhausted() const { return exhausted_; }
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    bool exhausted_ = false;
};

// Lazily yields the distinct causally consistent states reachable from
// `source` in one transition: a first action, then a depth-first chain of
// repair actions through inconsistent states until consistency returns.
// States in `excluded` are never entered.
class SuccessorCursor {
public:
    SuccessorCursor(const ActionSpace& space, State source, std::vector<Action> first_actions);

    std::optional<Transition> next(const std::unordered_set<State>& excluded, SearchBudget& budget);

private:
    struct Frame {
        State state;
        Action via;
        std::vector<Action> options;
        std::size_t next = 0;
    };

    Transition make_transition(const State& final_state, const Action& last) const;

    const ActionSpace* space_;
    State source_;
    std::vector<Action> first_;
    std::size_t first_next_ = 0;
    std::vector<Frame> chain_;
    std::unordered_set<State> seen_;
};

// Outer actions of `s` in search order: enumerate(s), with actions that make
// an unsatisfied goal conjunct true moved to the front (stable).
std::vector<Action> ordered_actions(const ActionSpace& space, const State& s);

// First consistent state reachable from `s` by `a` and repairs, avoiding `visited`.
std::optional<Transition> transition(const State& s, const Action& a, const ActionSpace& space,
                                     const std::unordered_set<State>& visited, std::uint64_t* expansions = nullptr);

std::vector<VisitedEntry> drop_inconsistent(std::span<const VisitedEntry> visited, const RuleSet& causal);

// Depth-first search with chronological backtracking over consistent states,
// bounded to paths of at most `max_states` states. Each intervene() call
// either appends the next transition from the last state or backtracks.
class PathSearch {
public:
    enum class Step { advanced, backtracked, failed, budget_exhausted };

    // With `prune_revisits`, a state is expanded again only when reached by a
    // strictly shorter prefix; without it, every simple path is explored.
    PathSearch(const ActionSpace& space, State initial, std::size_t max_states, SearchBudget& budget,
               bool prune_revisits = true);

    // Throws std::logic_error when the last state is already a goal or the
    // trail is empty.
    Step intervene();

    // Drops the goal at the end of the trail so the search can continue.
    void retreat_from_goal();

    const std::vector<VisitedEntry>& visited() const { return trail_; }
    bool at_goal() const;

private:
    struct Frame {
        std::size_t trail_index;
        SuccessorCursor cursor;
    };

    void truncate(std::size_t size);

    const ActionSpace* space_;
    std::size_t max_states_;
    SearchBudget* budget_;
    bool prune_;
    std::vector<VisitedEntry> trail_;
    std::unordered_set<State> on_trail_;
    std::vector<Frame> frames_;
    std::unordered_map<State, std::size_t> best_depth_;
};

// Throws std::invalid_argument when `initial` is not causally consistent.
PlanResult find_path(const State& initial, const ActionSpace& space, const PlanConfig& cfg);

struct PathsResult {
    PlanStatus status = PlanStatus::no_solution;
    std::vector<CandidatePath> paths;
    PlanStats stats;
};

// Up to k pairwise distinct candidate paths (distinct state sequences). The
// first is find_path's answer; the rest continue the search over every simple
// path within cfg.max_path_len, shortest first when cfg.minimal.
PathsResult enumerate_paths(const State& initial, const ActionSpace& space, const PlanConfig& cfg, std::size_t k);

}  // namespace cogs

#endif  // COGS_PLANNER_HPP
