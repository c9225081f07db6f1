#ifndef COGS_LEARNER_HPP
#define COGS_LEARNER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "cogs/dataset.hpp"
#include "cogs/rules.hpp"

namespace cogs {

struct LearnParams {
    std::size_t max_rules = 32;           // per level; exception lists share the bound
    std::size_t max_exception_depth = 3;  // 0 learns plain conjunctions
    // Share of all training rows that every rule and exception must cover;
    // learning at a level stops once fewer positives remain. Never below one row.
    double min_coverage_ratio = 0.005;
    double improvement_threshold = 0.0;   // a literal must score strictly above this
    // Once a rule's false positives are at most this share of its true
    // positives, literal growth stops and the rest becomes exceptions. Not
    // applied at the deepest level, which grows until no negatives remain.
    double exception_ratio = 1.0;
    std::string decision_atom = "reject";

    // Throws std::invalid_argument on out-of-range values.
    void check() const;
};

// Entropy reduction (bits) of splitting rows into covered positives and
// negatives (tp, fp) and uncovered ones (fn, tn). Minus infinity unless the
// covered part has a higher positive rate than the whole and the split gets
// at least as many rows right as wrong.
double information_gain(std::size_t tp, std::size_t fn, std::size_t tn, std::size_t fp);

// Sequential covering with exceptions. Candidate literals are `==` per
// categorical value and `<=` / `>` at midpoints between adjacent distinct
// numeric values whose labels differ. The result is deterministic in row
// order and params, always passes validate_ruleset, and is empty when the
// table has no positive rows.
RuleSet learn_rules(const DatasetTable& data, const LearnParams& params = {});

// A rule-based model is returned unchanged; a prediction table is learned
// from. Throws std::invalid_argument on an empty or unlabelled table.
using Model = std::variant<RuleSet, DatasetTable>;
RuleSet extract_logic(const Model& model, const LearnParams& params = {});

// Share of rows where decision(rules, row) agrees with the row's label.
// Throws std::invalid_argument on an empty or unlabelled table.
double fidelity(const RuleSet& rules, const DatasetTable& data);

// Positive class = decision holds. Ratios whose denominator is zero are
// reported as nullopt.
struct ClassificationMetrics {
    double accuracy = 0.0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

ClassificationMetrics classification_metrics(const RuleSet& rules, const DatasetTable& data);

}  // namespace cogs

#endif  // COGS_LEARNER_HPP
