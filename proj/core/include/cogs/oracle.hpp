#ifndef COGS_ORACLE_HPP
#define COGS_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cogs/planner.hpp"
#include "cogs/rules.hpp"
#include "cogs/schema.hpp"
#include "cogs/state.hpp"

// Brute-force ground truth over small, fully enumerable state spaces. Shares
// the rule evaluators and the candidate grid with the engine but implements
// its own move generation, transition closure and search.
namespace cogs::oracle {

constexpr std::size_t default_cap = 1'000'000;

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Product of per-feature grid sizes: whole categorical domains, numeric
// candidate values plus the value in `include`.
std::size_t space_size(const FeatureSchemaSet& schema, const RuleSet& rules, const std::optional<State>& include = {});

// Every state of the discretized space, in lexicographic grid order.
// Throws CapExceeded when the space has more than `cap` states.
std::vector<State> enumerate_space(const FeatureSchemaSet& schema, const RuleSet& rules,
                                   const std::optional<State>& include = {}, std::size_t cap = default_cap);

// Exactly the goal states of the enumerated space, sorted.
std::vector<State> brute_force_counterfactuals(const FeatureSchemaSet& schema, const RuleSet& causal,
                                               const RuleSet& decisions, const std::optional<State>& include = {},
                                               std::size_t cap = default_cap);

// Consistent states reachable from `s` in one transition: any plausible
// action, then repair actions through inconsistent states.
std::set<State> transition_closure(const State& s, const FeatureSchemaSet& schema, const RuleSet& causal,
                                   const RuleSet& decisions);

// Shortest solution path by breadth-first search, at most `max_len` states.
std::optional<std::vector<State>> bfs_shortest_path(const State& initial, const FeatureSchemaSet& schema,
                                                    const RuleSet& causal, const RuleSet& decisions,
                                                    std::size_t max_len, std::size_t cap = default_cap);

// Every solution path (as a state sequence without repeats) of at most `max_len` states.
std::set<std::vector<State>> all_solution_paths(const State& initial, const FeatureSchemaSet& schema,
                                                const RuleSet& causal, const RuleSet& decisions, std::size_t max_len,
                                                std::size_t cap = default_cap);

struct PathViolation {
    enum class Kind {
        empty_path,
        start_mismatch,
        inconsistent_state,
        end_not_goal,
        interior_goal,
        duplicate_state,
        broken_transition,
    };
    Kind kind;
    std::size_t position;
    std::string detail;
};

std::string_view to_string(PathViolation::Kind k);

// Checks a candidate path against the solution-path definition: starts at
// `initial`, every state consistent, ends in a goal, no earlier goal, and each
// entry reproduced by replaying its recorded actions from its predecessor.
std::vector<PathViolation> verify_path(const CandidatePath& path, const State& initial,
                                       const FeatureSchemaSet& schema, const RuleSet& causal,
                                       const RuleSet& decisions);

// Immutable features never change, monotone features never reverse and
// causal-only features change only through causal repairs.
std::vector<std::string> check_plausibility(const CandidatePath& path, const FeatureSchemaSet& schema,
                                            const RuleSet& causal);

}  // namespace cogs::oracle

#endif  // COGS_ORACLE_HPP
