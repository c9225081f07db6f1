#include "cogs/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "cogs/inference.hpp"

namespace cogs {

void LearnParams::check() const {
    if (max_rules == 0) throw std::invalid_argument("max_rules must be positive");
    if (!(min_coverage_ratio > 0.0 && min_coverage_ratio <= 1.0)) {
        throw std::invalid_argument("min_coverage_ratio must lie in (0,1]");
    }
    if (!(exception_ratio >= 0.0)) throw std::invalid_argument("exception_ratio must be non-negative");
    if (decision_atom.empty()) throw std::invalid_argument("decision atom must be named");
}

double information_gain(std::size_t tp, std::size_t fn, std::size_t tn, std::size_t fp) {
    constexpr double none = -std::numeric_limits<double>::infinity();
    if (tp == 0 || tp + tn < fp + fn) return none;
    // The covered part must be richer in positives than the whole.
    if (tp * (tp + fn + tn + fp) <= (tp + fn) * (tp + fp)) return none;
    auto entropy = [](double a, double b) {
        double n = a + b;
        double h = 0.0;
        if (a > 0) h -= a / n * std::log2(a / n);
        if (b > 0) h -= b / n * std::log2(b / n);
        return h;
    };
    double covered = static_cast<double>(tp + fp);
    double rest = static_cast<double>(tn + fn);
    double total = covered + rest;
    double before = entropy(static_cast<double>(tp + fn), static_cast<double>(fp + tn));
    double after = (covered > 0 ? covered * entropy(tp, fp) : 0.0) + (rest > 0 ? rest * entropy(fn, tn) : 0.0);
    return before - after / total;
}

namespace {

using Rows = std::vector<std::size_t>;

struct Scored {
    Literal literal;
    double gain = -std::numeric_limits<double>::infinity();
};

class Learner {
public:
    // `floor`: fewest positives a rule, at any nesting level, must cover.
    Learner(const DatasetTable& data, const LearnParams& params, std::size_t floor)
        : data_(data), params_(params), floor_(std::max<std::size_t>(floor, 1)) {}

    std::vector<DecisionRule> cover(Rows pos, const Rows& neg, std::size_t depth, const std::string& parent) {
        std::vector<DecisionRule> rules;
        while (pos.size() >= floor_ && rules.size() < params_.max_rules) {
            std::string id = parent.empty() ? "Q" + std::to_string(rules.size() + 1)
                                            : parent + ".E" + std::to_string(rules.size() + 1);
            auto rule = grow(pos, neg, depth, id);
            if (!rule) break;
            Rows rest;
            for (auto r : pos) {
                if (!rule_fires(*rule, data_.rows[r])) rest.push_back(r);
            }
            if (pos.size() - rest.size() < floor_) break;
            pos = std::move(rest);
            rules.push_back(std::move(*rule));
        }
        return rules;
    }

private:
    std::optional<DecisionRule> grow(const Rows& pos_in, const Rows& neg_in, std::size_t depth, const std::string& id) {
        DecisionRule rule;
        rule.id = id;
        rule.head = depth == 0 ? params_.decision_atom : "ab";
        Rows pos = pos_in, neg = neg_in;
        for (;;) {
            auto best = best_literal(pos, neg);
            if (!best || best->gain <= params_.improvement_threshold) break;
            Rows p2, n2;
            for (auto r : pos) {
                if (eval_literal(best->literal, data_.rows[r])) p2.push_back(r);
            }
            for (auto r : neg) {
                if (eval_literal(best->literal, data_.rows[r])) n2.push_back(r);
            }
            if (p2.empty() || (p2.size() == pos.size() && n2.size() == neg.size())) break;
            rule.body.push_back(best->literal);
            pos = std::move(p2);
            neg = std::move(n2);
            if (neg.empty()) break;
            // Hand the remaining negatives to exceptions, when this level may have any.
            if (depth < params_.max_exception_depth &&
                static_cast<double>(neg.size()) <= params_.exception_ratio * static_cast<double>(pos.size()))
                break;
        }
        // Nothing left to separate: an unconditional rule covers the rest.
        if (rule.body.empty()) return neg_in.empty() ? std::optional<DecisionRule>(rule) : std::nullopt;
        if (!neg.empty() && depth < params_.max_exception_depth) {
            rule.exceptions = cover(neg, pos, depth + 1, id);
        }
        return rule;
    }

    std::optional<Scored> best_literal(const Rows& pos, const Rows& neg) const {
        std::optional<Scored> best;
        auto consider = [&](Literal lit, std::size_t tp, std::size_t fp) {
            double g = information_gain(tp, pos.size() - tp, neg.size() - fp, fp);
            if (!best || g > best->gain) best = Scored{std::move(lit), g};
        };
        for (std::size_t f = 0; f < data_.schema.size(); ++f) {
            const auto& feature = data_.schema[f];
            if (feature.is_numeric()) {
                numeric_candidates(f, pos, neg, consider);
                continue;
            }
            std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
            for (auto r : pos) ++counts[data_.rows[r][f].symbol()].first;
            for (auto r : neg) ++counts[data_.rows[r][f].symbol()].second;
            for (const auto& v : feature.categorical().values) {
                auto it = counts.find(v);
                if (it == counts.end()) continue;
                consider(make_literal(data_.schema, feature.name, Comparator::eq, Value::symbol(v)), it->second.first,
                         it->second.second);
            }
        }
        return best;
    }

    template <typename F>
    void numeric_candidates(std::size_t f, const Rows& pos, const Rows& neg, F& consider) const {
        // value -> (positives, negatives) at that value
        std::map<Number, std::pair<std::size_t, std::size_t>> at;
        for (auto r : pos) ++at[data_.rows[r][f].number()].first;
        for (auto r : neg) ++at[data_.rows[r][f].number()].second;
        const auto& name = data_.schema[f].name;
        std::size_t tp_le = 0, fp_le = 0;
        for (auto it = at.begin(); it != at.end(); ++it) {
            tp_le += it->second.first;
            fp_le += it->second.second;
            auto nx = std::next(it);
            if (nx == at.end()) break;
            bool mixed_here = it->second.first && it->second.second;
            bool mixed_next = nx->second.first && nx->second.second;
            bool same_label = !mixed_here && !mixed_next && (it->second.first > 0) == (nx->second.first > 0);
            if (same_label) continue;
            Number mid = (it->first + nx->first) / Number(2);
            consider(make_literal(data_.schema, name, Comparator::le, Value(mid)), tp_le, fp_le);
            consider(make_literal(data_.schema, name, Comparator::gt, Value(mid)), pos.size() - tp_le,
                     neg.size() - fp_le);
        }
    }

    const DatasetTable& data_;
    const LearnParams& params_;
    std::size_t floor_;
};

void require_labels(const DatasetTable& data) {
    if (data.empty()) throw std::invalid_argument("dataset is empty");
    if (!data.labelled()) throw std::invalid_argument("dataset has no label/prediction column");
    data.check();
}

}  // namespace

RuleSet learn_rules(const DatasetTable& data, const LearnParams& params) {
    params.check();
    data.check();
    RuleSet rs;
    rs.decision_atom = params.decision_atom;
    if (!data.labelled()) return rs;
    Rows pos, neg;
    for (std::size_t r = 0; r < data.size(); ++r) ((*data.labels)[r] ? pos : neg).push_back(r);
    if (pos.empty()) return rs;
    auto floor = static_cast<std::size_t>(std::ceil(params.min_coverage_ratio * static_cast<double>(data.size())));
    Learner learner(data, params, floor);
    rs.decision_rules = learner.cover(std::move(pos), neg, 0, "");
    return rs;
}

RuleSet extract_logic(const Model& model, const LearnParams& params) {
    if (const auto* rules = std::get_if<RuleSet>(&model)) return *rules;
    const auto& table = std::get<DatasetTable>(model);
    require_labels(table);
    return learn_rules(table, params);
}

double fidelity(const RuleSet& rules, const DatasetTable& data) {
    require_labels(data);
    std::size_t agree = 0;
    for (std::size_t r = 0; r < data.size(); ++r) agree += decision(rules, data.rows[r]) == (*data.labels)[r];
    return static_cast<double>(agree) / static_cast<double>(data.size());
}

ClassificationMetrics classification_metrics(const RuleSet& rules, const DatasetTable& data) {
    require_labels(data);
    ClassificationMetrics m;
    for (std::size_t r = 0; r < data.size(); ++r) {
        bool predicted = decision(rules, data.rows[r]);
        bool actual = (*data.labels)[r];
        if (predicted && actual) ++m.tp;
        else if (predicted) ++m.fp;
        else if (actual) ++m.fn;
        else ++m.tn;
    }
    auto ratio = [](std::size_t a, std::size_t b) -> std::optional<double> {
        if (b == 0) return std::nullopt;
        return static_cast<double>(a) / static_cast<double>(b);
    };
    m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(data.size());
    m.precision = ratio(m.tp, m.tp + m.fp);
    m.recall = ratio(m.tp, m.tp + m.fn);
    if (m.precision && m.recall && *m.precision + *m.recall > 0) {
        m.f1 = 2 * *m.precision * *m.recall / (*m.precision + *m.recall);
    }
    return m;
}

}  // namespace cogs
