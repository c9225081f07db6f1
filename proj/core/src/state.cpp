#include "cogs/state.hpp"

#include <set>

#include "cogs/errors.hpp"
#include "lexer.hpp"

namespace cogs {

std::size_t State::hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& v : values_) {
        h ^= v.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::vector<StateViolation> validate_state(const FeatureSchemaSet& schema, const Assignment& assignment) {
    std::vector<StateViolation> out;
    std::set<std::string> seen;
    for (const auto& [name, value] : assignment) {
        auto idx = schema.index_of(name);
        if (!idx) {
            out.push_back({StateViolation::Kind::unknown_feature, name, "feature '" + name + "' is not declared"});
            continue;
        }
        if (!seen.insert(name).second) {
            out.push_back({StateViolation::Kind::duplicate, name, "feature '" + name + "' assigned twice"});
            continue;
        }
        if (!schema[*idx].contains(value)) {
            out.push_back({StateViolation::Kind::out_of_domain, name,
                           "value " + value.str() + " is outside the domain of '" + name + "'"});
        }
    }
    for (const auto& f : schema) {
        if (!seen.count(f.name)) {
            out.push_back({StateViolation::Kind::missing, f.name, "feature '" + f.name + "' is unassigned"});
        }
    }
    return out;
}

std::vector<StateViolation> validate_state(const FeatureSchemaSet& schema, const State& state) {
    std::vector<StateViolation> out;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const auto& f = schema[i];
        if (i >= state.size()) {
            out.push_back({StateViolation::Kind::missing, f.name, "feature '" + f.name + "' is unassigned"});
        } else if (!f.contains(state[i])) {
            out.push_back({StateViolation::Kind::out_of_domain, f.name,
                           "value " + state[i].str() + " is outside the domain of '" + f.name + "'"});
        }
    }
    for (std::size_t i = schema.size(); i < state.size(); ++i) {
        out.push_back({StateViolation::Kind::unknown_feature, "#" + std::to_string(i), "extra value " + state[i].str()});
    }
    return out;
}

State make_state(const FeatureSchemaSet& schema, const Assignment& assignment) {
    auto violations = validate_state(schema, assignment);
    if (!violations.empty()) {
        std::string msg = "invalid state:";
        for (const auto& v : violations) msg += " " + v.message + ";";
        throw SchemaError(msg);
    }
    std::vector<Value> values(schema.size());
    for (const auto& [name, value] : assignment) values[*schema.index_of(name)] = value;
    return State(std::move(values));
}

std::size_t state_distance(const State& a, const State& b) {
    if (a.size() != b.size()) throw SchemaError("state_distance: states range over different schemas");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_numeric() != b[i].is_numeric()) {
            throw SchemaError("state_distance: feature kinds differ at position " + std::to_string(i));
        }
        if (a[i] != b[i]) ++d;
    }
    return d;
}

Assignment parse_assignment(std::string_view text, const FeatureSchemaSet& schema) {
    detail::TokenStream ts(detail::tokenize(text));
    Assignment out;
    while (!ts.at_end()) {
        const auto& name_tok = ts.expect_identifier();
        std::string name = name_tok.text;
        ts.expect_punct("=");
        const auto& vt = ts.peek();
        if (vt.kind == detail::Tok::end || vt.kind == detail::Tok::punct) ts.fail(vt, "expected value");
        ts.next();
        auto idx = schema.index_of(name);
        bool numeric = idx ? schema[*idx].is_numeric() : vt.kind == detail::Tok::number;
        if (numeric) {
            if (vt.kind != detail::Tok::number) ts.fail(vt, "expected number for '" + name + "'");
            try {
                out.emplace_back(name, Value(parse_number(vt.text)));
            } catch (const std::invalid_argument& e) {
                ts.fail(vt, e.what());
            }
        } else {
            out.emplace_back(name, Value::symbol(vt.text));
        }
        ts.accept_punct(".");
    }
    return out;
}

State parse_instance(std::string_view text, const FeatureSchemaSet& schema) {
    return make_state(schema, parse_assignment(text, schema));
}

std::string serialize_instance(const FeatureSchemaSet& schema, const State& state) {
    std::string out;
    for (std::size_t i = 0; i < schema.size() && i < state.size(); ++i) {
        out += schema[i].name + " = ";
        out += state[i].is_numeric() ? state[i].str() : detail::quote_symbol(state[i].symbol());
        out += "\n";
    }
    return out;
}

std::string format_state(const FeatureSchemaSet& schema, const State& state) {
    std::string out = "(";
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i) out += ", ";
        out += (i < schema.size() ? schema[i].name : "#" + std::to_string(i)) + "=" + state[i].str();
    }
    return out + ")";
}

}  // namespace cogs
