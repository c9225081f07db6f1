#ifndef COGS_BENCH_HPP
#define COGS_BENCH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cogs/planner.hpp"
#include "cogs/rules.hpp"
#include "cogs/schema.hpp"
#include "cogs/state.hpp"

namespace cogs {

struct BenchVariant {
    std::string name;
    FeatureSchemaSet schema;
    RuleSet decisions;
    RuleSet causal;
    State initial;
};

// Total categorical value count over categorical feature count; nullopt
// when the schema has no categorical feature.
std::optional<double> average_feature_values(const FeatureSchemaSet& schema);

// One categorical feature per entry of `domain_sizes` (values v0..v{n-1}),
// a rule `reject :- fi != v{n-1}` per feature and the all-v0 initial state.
// Every feature has to move, so the shortest path visits one state per
// feature plus the start. Throws std::invalid_argument on sizes below 2.
BenchVariant synthetic_variant(std::string name, const std::vector<std::size_t>& domain_sizes);

struct BenchRow {
    std::string name;
    std::optional<double> average_values;
    std::size_t repetitions = 0;
    double mean_ms = 0.0;
    double stddev_ms = 0.0;  // sample standard deviation; 0 below two repetitions
    std::string status;      // status of the last repetition
    std::size_t path_len = 0;
    std::uint64_t expansions = 0;
};

// Times find_path `repetitions` times per variant, sequentially. With zero
// repetitions the result is empty.
std::vector<BenchRow> run_bench(const std::vector<BenchVariant>& variants, std::size_t repetitions,
                                const PlanConfig& cfg);

}  // namespace cogs

#endif  // COGS_BENCH_HPP
