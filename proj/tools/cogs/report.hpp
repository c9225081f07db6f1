// Rendering of planner results, verification verdicts and bench rows.
#ifndef COGS_TOOLS_REPORT_HPP
#define COGS_TOOLS_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogs/bench.hpp"
#include "cogs/learner.hpp"
#include "cogs/planner.hpp"
#include "cogs/schema.hpp"

namespace cogs::cli {

using json = nlohmann::ordered_json;

// Integral numbers become JSON integers; other numbers keep their exact
// text ("2.5", "1/3"); symbols are strings.
json value_json(const Value& v);
json state_json(const FeatureSchemaSet& schema, const State& s);

struct PathReport {
    PlanStatus status = PlanStatus::no_solution;
    State initial;
    CandidatePath path;
    std::uint64_t expansions = 0;
    double elapsed_ms = 0.0;
};

json path_json(const FeatureSchemaSet& schema, const PathReport& report);

// One row per feature, columns Initial, then per transition an action column
// (Direct, Causal or N/A) and the reached state; the last state column is Goal.
std::string path_table(const FeatureSchemaSet& schema, const CandidatePath& path);

// Cells padded to common column widths, columns separated by two spaces.
std::string render_table(const std::vector<std::vector<std::string>>& rows);

json bench_json(const std::vector<BenchRow>& rows);
std::string bench_table(const std::vector<BenchRow>& rows);

json metrics_json(const ClassificationMetrics& m);
std::string format_ratio(const std::optional<double>& r);

}  // namespace cogs::cli

#endif  // COGS_TOOLS_REPORT_HPP
