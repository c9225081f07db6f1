#include "cogs/schema.hpp"

#include <algorithm>
#include <set>

#include "cogs/errors.hpp"
#include "lexer.hpp"

namespace cogs {

std::string_view to_string(Mutability m) {
    switch (m) {
        case Mutability::free: return "free";
        case Mutability::immutable: return "immutable";
        case Mutability::monotone_increasing: return "monotone_increasing";
        case Mutability::monotone_decreasing: return "monotone_decreasing";
        case Mutability::causal_only: return "causal_only";
    }
    return "free";
}

std::optional<Mutability> parse_mutability(std::string_view keyword) {
    for (auto m : {Mutability::free, Mutability::immutable, Mutability::monotone_increasing,
                   Mutability::monotone_decreasing, Mutability::causal_only}) {
        if (to_string(m) == keyword) return m;
    }
    return std::nullopt;
}

bool FeatureSchema::contains(const Value& v) const {
    if (is_numeric()) {
        if (!v.is_numeric()) return false;
        const auto& d = numeric();
        return d.min <= v.number() && v.number() <= d.max;
    }
    if (v.is_numeric()) return false;
    const auto& vals = categorical().values;
    return std::find(vals.begin(), vals.end(), v.symbol()) != vals.end();
}

bool FeatureSchema::direction_allowed(const Value& from, const Value& to) const {
    if (mutability == Mutability::immutable) return from == to;
    if (!is_numeric() || !from.is_numeric() || !to.is_numeric()) return true;
    if (mutability == Mutability::monotone_increasing) return to.number() >= from.number();
    if (mutability == Mutability::monotone_decreasing) return to.number() <= from.number();
    return true;
}

FeatureSchemaSet::FeatureSchemaSet(std::vector<FeatureSchema> features) : features_(std::move(features)) {
    for (std::size_t i = 0; i < features_.size(); ++i) {
        const auto& f = features_[i];
        if (f.name.empty()) throw SchemaError("feature with empty name");
        if (!index_.emplace(f.name, i).second) throw SchemaError("duplicate feature '" + f.name + "'");
        if (f.is_numeric()) {
            const auto& d = f.numeric();
            if (d.min > d.max) throw SchemaError("feature '" + f.name + "': min exceeds max");
            if (d.step <= Number(0)) throw SchemaError("feature '" + f.name + "': step must be positive");
        } else {
            const auto& vals = f.categorical().values;
            if (vals.empty()) throw SchemaError("feature '" + f.name + "': empty domain");
            std::set<std::string> seen(vals.begin(), vals.end());
            if (seen.size() != vals.size()) {
                throw SchemaError("feature '" + f.name + "': duplicate domain value");
            }
        }
    }
}

std::optional<std::size_t> FeatureSchemaSet::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FeatureSchemaSet::require(std::string_view name) const {
    auto idx = index_of(name);
    if (!idx) throw SchemaError("unknown feature '" + std::string(name) + "'");
    return *idx;
}

namespace {

Number expect_number(detail::TokenStream& ts) {
    const auto& tok = ts.peek();
    if (tok.kind != detail::Tok::number) ts.fail(tok, "expected number");
    try {
        Number n = parse_number(tok.text);
        ts.next();
        return n;
    } catch (const std::invalid_argument& e) {
        ts.fail(tok, e.what());
    }
}

std::string expect_symbol(detail::TokenStream& ts) {
    const auto& tok = ts.peek();
    if (tok.kind != detail::Tok::word && tok.kind != detail::Tok::number && tok.kind != detail::Tok::string) {
        ts.fail(tok, "expected domain value");
    }
    ts.next();
    return tok.text;
}

}  // namespace

FeatureSchemaSet load_schema(std::string_view text) {
    detail::TokenStream ts(detail::tokenize(text));
    std::vector<FeatureSchema> features;
    std::set<std::string> names;

    while (!ts.at_end()) {
        const auto& start = ts.expect_word("feature");
        FeatureSchema f;
        f.name = ts.expect_identifier().text;
        ts.expect_punct(":");
        if (ts.accept_word("numeric")) {
            NumericDomain d;
            ts.expect_punct("[");
            d.min = expect_number(ts);
            ts.expect_punct(",");
            d.max = expect_number(ts);
            ts.expect_punct("]");
            if (ts.accept_word("step")) d.step = expect_number(ts);
            if (d.min > d.max) throw ParseError("feature '" + f.name + "': min exceeds max", start.line, start.column);
            if (d.step <= Number(0)) throw ParseError("feature '" + f.name + "': step must be positive", start.line, start.column);
            f.domain = d;
        } else if (ts.accept_word("categorical")) {
            CategoricalDomain d;
            ts.expect_punct("{");
            if (!ts.peek().is_punct("}")) {
                d.values.push_back(expect_symbol(ts));
                while (ts.accept_punct(",")) d.values.push_back(expect_symbol(ts));
            }
            ts.expect_punct("}");
            if (d.values.empty()) throw ParseError("feature '" + f.name + "': empty domain", start.line, start.column);
            std::set<std::string> uniq(d.values.begin(), d.values.end());
            if (uniq.size() != d.values.size()) {
                throw ParseError("feature '" + f.name + "': duplicate domain value", start.line, start.column);
            }
            f.domain = std::move(d);
        } else {
            ts.fail(ts.peek(), "expected 'numeric' or 'categorical'");
        }
        if (ts.accept_punct(",")) {
            const auto& kw = ts.peek();
            auto m = kw.kind == detail::Tok::word ? parse_mutability(kw.text) : std::nullopt;
            if (!m) ts.fail(kw, "expected mutability keyword");
            ts.next();
            f.mutability = *m;
        }
        ts.expect_punct(".");
        if (!names.insert(f.name).second) {
            throw ParseError("duplicate feature '" + f.name + "'", start.line, start.column);
        }
        features.push_back(std::move(f));
    }
    return FeatureSchemaSet(std::move(features));
}

std::string serialize_schema(const FeatureSchemaSet& schema) {
    std::string out;
    for (const auto& f : schema) {
        out += "feature " + f.name + ": ";
        if (f.is_numeric()) {
            const auto& d = f.numeric();
            out += "numeric [" + format_number(d.min) + "," + format_number(d.max) + "] step " + format_number(d.step);
        } else {
            out += "categorical {";
            const auto& vals = f.categorical().values;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                if (i) out += ", ";
                out += detail::quote_symbol(vals[i]);
            }
            out += "}";
        }
        if (f.mutability != Mutability::free) {
            out += ", ";
            out += to_string(f.mutability);
        }
        out += ".\n";
    }
    return out;
}

}  // namespace cogs
