#include "cogs/bench.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cogs/actions.hpp"

namespace cogs {

std::optional<double> average_feature_values(const FeatureSchemaSet& schema) {
    std::size_t features = 0, values = 0;
    for (const auto& f : schema) {
        if (f.is_numeric()) continue;
        ++features;
        values += f.categorical().values.size();
    }
    if (features == 0) return std::nullopt;
    return static_cast<double>(values) / static_cast<double>(features);
}

BenchVariant synthetic_variant(std::string name, const std::vector<std::size_t>& domain_sizes) {
    std::vector<FeatureSchema> features;
    for (std::size_t i = 0; i < domain_sizes.size(); ++i) {
        if (domain_sizes[i] < 2) throw std::invalid_argument("synthetic features need at least two values");
        CategoricalDomain d;
        for (std::size_t v = 0; v < domain_sizes[i]; ++v) d.values.push_back("v" + std::to_string(v));
        features.push_back({"f" + std::to_string(i), std::move(d), Mutability::free});
    }
    BenchVariant out;
    out.name = std::move(name);
    out.schema = FeatureSchemaSet(std::move(features));
    out.decisions.decision_atom = "reject";
    std::vector<Value> initial;
    for (std::size_t i = 0; i < out.schema.size(); ++i) {
        const auto& f = out.schema[i];
        DecisionRule r;
        r.id = "Q" + std::to_string(i + 1);
        r.head = "reject";
        r.body.push_back(make_literal(out.schema, f.name, Comparator::ne, Value::symbol(f.categorical().values.back())));
        out.decisions.decision_rules.push_back(std::move(r));
        initial.push_back(Value::symbol(f.categorical().values.front()));
    }
    out.initial = State(std::move(initial));
    return out;
}

std::vector<BenchRow> run_bench(const std::vector<BenchVariant>& variants, std::size_t repetitions,
                                const PlanConfig& cfg) {
    std::vector<BenchRow> rows;
    if (repetitions == 0) return rows;
    for (const auto& v : variants) {
        ActionSpace space(v.schema, v.decisions, v.causal);
        BenchRow row;
        row.name = v.name;
        row.average_values = average_feature_values(v.schema);
        row.repetitions = repetitions;
        std::vector<double> times;
        for (std::size_t r = 0; r < repetitions; ++r) {
            auto start = std::chrono::steady_clock::now();
            PlanResult result = find_path(v.initial, space, cfg);
            auto stop = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
            row.status = std::string(to_string(result.status));
            row.path_len = result.path.size();
            row.expansions = result.stats.expansions;
        }
        double n = static_cast<double>(times.size());
        row.mean_ms = std::accumulate(times.begin(), times.end(), 0.0) / n;
        if (times.size() > 1) {
            double ss = 0.0;
            for (double t : times) ss += (t - row.mean_ms) * (t - row.mean_ms);
            row.stddev_ms = std::sqrt(ss / (n - 1));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cogs
