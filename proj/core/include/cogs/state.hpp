#ifndef COGS_STATE_HPP
#define COGS_STATE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cogs/schema.hpp"
#include "cogs/value.hpp"

namespace cogs {

// A complete assignment of one value per declared feature, stored in schema
// declaration order. States are values: every change yields a new State.
class State {
public:
    State() = default;
    explicit State(std::vector<Value> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    const Value& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<Value>& values() const { return values_; }

    State with(std::size_t feature, Value v) const {
        State copy = *this;
        copy.values_[feature] = std::move(v);
        return copy;
    }

    friend bool operator==(const State& a, const State& b) { return a.values_ == b.values_; }
    friend bool operator!=(const State& a, const State& b) { return !(a == b); }
    friend bool operator<(const State& a, const State& b) { return a.values_ < b.values_; }

    std::size_t hash() const;

private:
    std::vector<Value> values_;
};

// Named, possibly partial or over-complete assignment as read from an instance file.
using Assignment = std::vector<std::pair<std::string, Value>>;

struct StateViolation {
    enum class Kind { missing, unknown_feature, duplicate, out_of_domain };
    Kind kind;
    std::string feature;
    std::string message;
};

std::vector<StateViolation> validate_state(const FeatureSchemaSet& schema, const Assignment& assignment);
std::vector<StateViolation> validate_state(const FeatureSchemaSet& schema, const State& state);

// Builds a State from a named assignment. Throws SchemaError listing every violation.
State make_state(const FeatureSchemaSet& schema, const Assignment& assignment);

// Number of features whose values differ. Throws SchemaError if the states
// do not range over the same schema shape.
std::size_t state_distance(const State& a, const State& b);

// Instance files hold one `feature = value` per line. Values are typed by the
// schema: numeric features parse as numbers, categorical ones as symbols.
Assignment parse_assignment(std::string_view text, const FeatureSchemaSet& schema);
State parse_instance(std::string_view text, const FeatureSchemaSet& schema);
std::string serialize_instance(const FeatureSchemaSet& schema, const State& state);

// "(age=31, debt=5000, ...)"
std::string format_state(const FeatureSchemaSet& schema, const State& state);

}  // namespace cogs

template <>
struct std::hash<cogs::State> {
    std::size_t operator()(const cogs::State& s) const noexcept { return s.hash(); }
};

#endif  // COGS_STATE_HPP
