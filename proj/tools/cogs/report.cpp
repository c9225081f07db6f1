#include "report.hpp"

#include <algorithm>
#include <cstdio>

namespace cogs::cli {

json value_json(const Value& v) {
    if (!v.is_numeric()) return v.symbol();
    if (v.number().denominator() == 1) return v.number().numerator();
    return format_number(v.number());
}

json state_json(const FeatureSchemaSet& schema, const State& s) {
    json out = json::object();
    for (std::size_t i = 0; i < schema.size(); ++i) out[schema[i].name] = value_json(s[i]);
    return out;
}

json path_json(const FeatureSchemaSet& schema, const PathReport& report) {
    json doc;
    doc["status"] = std::string(to_string(report.status));
    doc["initial"] = state_json(schema, report.initial);
    doc["goal"] = report.path.empty() ? json(nullptr) : state_json(schema, report.path.goal());
    json path = json::array();
    for (std::size_t j = 0; j < report.path.size(); ++j) {
        const auto& entry = report.path.entries[j];
        json actions = json::array();
        State cur = j == 0 ? entry.state : report.path.entries[j - 1].state;
        for (const auto& a : entry.actions_taken) {
            json item;
            item["kind"] = a.is_direct() ? "direct" : "causal";
            item["feature"] = schema[a.feature].name;
            item["from"] = value_json(cur[a.feature]);
            item["to"] = value_json(a.value);
            item["rule_id"] = a.is_direct() ? json(nullptr) : json(a.rule_id);
            actions.push_back(std::move(item));
            cur = cur.with(a.feature, a.value);
        }
        path.push_back({{"state", state_json(schema, entry.state)}, {"actions", std::move(actions)}});
    }
    doc["path"] = std::move(path);
    doc["stats"] = {{"expansions", report.expansions},
                    {"elapsed_ms", report.elapsed_ms},
                    {"path_len", report.path.size()}};
    return doc;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            line += row[c];
            if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
        }
        out += line + '\n';
    }
    return out;
}

std::string path_table(const FeatureSchemaSet& schema, const CandidatePath& path) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Feature", "Initial"};
    for (std::size_t j = 1; j < path.size(); ++j) {
        header.push_back("Action");
        header.push_back(j + 1 == path.size() ? "Goal" : "Step " + std::to_string(j));
    }
    rows.push_back(std::move(header));
    for (std::size_t i = 0; i < schema.size(); ++i) {
        std::vector<std::string> row{schema[i].name, path.initial()[i].str()};
        for (std::size_t j = 1; j < path.size(); ++j) {
            bool direct = false, causal = false;
            for (const auto& a : path.entries[j].actions_taken) {
                if (a.feature != i) continue;
                (a.is_direct() ? direct : causal) = true;
            }
            std::string mark = direct && causal ? "Direct+Causal" : direct ? "Direct" : causal ? "Causal" : "N/A";
            row.push_back(std::move(mark));
            row.push_back(path.entries[j].state[i].str());
        }
        rows.push_back(std::move(row));
    }
    return render_table(rows);
}

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

json bench_json(const std::vector<BenchRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"variant", r.name},
                       {"average_feature_values", r.average_values ? json(*r.average_values) : json(nullptr)},
                       {"repetitions", r.repetitions},
                       {"mean_ms", r.mean_ms},
                       {"stddev_ms", r.stddev_ms},
                       {"status", r.status},
                       {"path_len", r.path_len},
                       {"expansions", r.expansions}});
    }
    return {{"rows", std::move(out)}};
}

std::string bench_table(const std::vector<BenchRow>& rows) {
    std::vector<std::vector<std::string>> t{{"Variant", "Avg # Feature Values", "Time (ms)", "Path len", "Status"}};
    for (const auto& r : rows) {
        t.push_back({r.name, r.average_values ? fixed(*r.average_values, 2) : "n/a",
                     fixed(r.mean_ms, 3) + " ± " + fixed(r.stddev_ms, 3), std::to_string(r.path_len), r.status});
    }
    return render_table(t);
}

std::string format_ratio(const std::optional<double>& r) { return r ? fixed(*r * 100.0, 2) + "%" : "undefined"; }

json metrics_json(const ClassificationMetrics& m) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return {{"accuracy", m.accuracy}, {"precision", opt(m.precision)}, {"recall", opt(m.recall)},
            {"f1", opt(m.f1)},        {"tp", m.tp},                    {"fp", m.fp},
            {"tn", m.tn},             {"fn", m.fn}};
}

}  // namespace cogs::cli
