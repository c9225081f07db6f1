#ifndef COGS_SCHEMA_HPP
#define COGS_SCHEMA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cogs/value.hpp"

namespace cogs {

enum class Mutability {
    free,
    immutable,
    monotone_increasing,
    monotone_decreasing,
    causal_only,  // changes only as the effect of a causal rule
};

std::string_view to_string(Mutability m);
std::optional<Mutability> parse_mutability(std::string_view keyword);

// Membership is min <= v <= max. The step only drives candidate generation.
struct NumericDomain {
    Number min;
    Number max;
    Number step{1};

    friend bool operator==(const NumericDomain&, const NumericDomain&) = default;
};

struct CategoricalDomain {
    std::vector<std::string> values;

    friend bool operator==(const CategoricalDomain&, const CategoricalDomain&) = default;
};

using Domain = std::variant<NumericDomain, CategoricalDomain>;

struct FeatureSchema {
    std::string name;
    Domain domain;
    Mutability mutability = Mutability::free;

    bool is_numeric() const { return domain.index() == 0; }
    const NumericDomain& numeric() const { return std::get<NumericDomain>(domain); }
    const CategoricalDomain& categorical() const { return std::get<CategoricalDomain>(domain); }

    bool contains(const Value& v) const;
    // Direct actions may target this feature.
    bool directly_mutable() const {
        return mutability != Mutability::immutable && mutability != Mutability::causal_only;
    }
    // Whether moving from `from` to `to` respects the monotone direction.
    bool direction_allowed(const Value& from, const Value& to) const;

    friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

// An ordered, name-unique set of feature declarations. Declaration order is the
// canonical feature order for states and for action tie-breaking.
class FeatureSchemaSet {
public:
    FeatureSchemaSet() = default;
    // Throws SchemaError on duplicate names or degenerate domains.
    explicit FeatureSchemaSet(std::vector<FeatureSchema> features);

    std::size_t size() const { return features_.size(); }
    bool empty() const { return features_.empty(); }
    const FeatureSchema& operator[](std::size_t i) const { return features_[i]; }
    const std::vector<FeatureSchema>& features() const { return features_; }
    auto begin() const { return features_.begin(); }
    auto end() const { return features_.end(); }

    std::optional<std::size_t> index_of(std::string_view name) const;
    // Throws SchemaError for unknown names.
    std::size_t require(std::string_view name) const;

    friend bool operator==(const FeatureSchemaSet& a, const FeatureSchemaSet& b) {
        return a.features_ == b.features_;
    }

private:
    std::vector<FeatureSchema> features_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Parses the line-oriented schema language:
//   feature age: numeric [18,99] step 1, monotone_increasing.
//   feature color: categorical {red, green}.
// Throws ParseError (with line/column) or SchemaError.
FeatureSchemaSet load_schema(std::string_view text);

std::string serialize_schema(const FeatureSchemaSet& schema);

}  // namespace cogs

#endif  // COGS_SCHEMA_HPP
