#include "cogs/rules.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "cogs/errors.hpp"
#include "lexer.hpp"

namespace cogs {

std::string_view to_string(Comparator op) {
    switch (op) {
        case Comparator::eq: return "==";
        case Comparator::ne: return "!=";
        case Comparator::lt: return "<";
        case Comparator::le: return "<=";
        case Comparator::gt: return ">";
        case Comparator::ge: return ">=";
        case Comparator::in_range: return "in";
    }
    return "==";
}

std::string_view to_string(Diagnostic::Kind k) {
    switch (k) {
        case Diagnostic::Kind::unknown_feature: return "unknown_feature";
        case Diagnostic::Kind::type_mismatch: return "type_mismatch";
        case Diagnostic::Kind::duplicate_id: return "duplicate_id";
        case Diagnostic::Kind::head_mismatch: return "head_mismatch";
        case Diagnostic::Kind::self_cause: return "self_cause";
        case Diagnostic::Kind::causal_conflict: return "causal_conflict";
    }
    return "unknown";
}

const CausalRule* RuleSet::find_causal(std::string_view id) const {
    for (const auto& r : causal_rules) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

namespace {

// Empty string when the literal is well typed for `f`.
std::string type_error(const Literal& lit, const FeatureSchema& f) {
    if (f.is_numeric()) {
        if (!lit.constant.is_numeric()) {
            return "numeric feature '" + f.name + "' compared with symbol '" + lit.constant.str() + "'";
        }
        if (lit.op == Comparator::in_range && !(lit.constant.number() < lit.upper)) {
            return "empty range on '" + f.name + "'";
        }
        return {};
    }
    if (lit.op != Comparator::eq && lit.op != Comparator::ne) {
        return "comparator '" + std::string(to_string(lit.op)) + "' needs a numeric feature, '" + f.name +
               "' is categorical";
    }
    if (lit.constant.is_numeric() || !f.contains(lit.constant)) {
        return "'" + lit.constant.str() + "' is not a value of categorical feature '" + f.name + "'";
    }
    return {};
}

std::string auto_decision_id(const std::string& parent, std::size_t position) {
    return parent.empty() ? "Q" + std::to_string(position) : parent + ".E" + std::to_string(position);
}

std::string auto_causal_id(std::size_t position) { return "C" + std::to_string(position); }

constexpr std::size_t max_exception_depth = 64;

class RuleParser {
public:
    RuleParser(std::string_view text, const FeatureSchemaSet& schema)
        : ts_(detail::tokenize(text)), schema_(schema) {}

    RuleSet parse() {
        RuleSet rs;
        while (!ts_.at_end()) {
            auto label = parse_label();
            const auto& kw = ts_.peek();
            if (kw.is_word("decision")) {
                ts_.next();
                auto rule = parse_decision(std::string(), rs.decision_rules.size() + 1, label, 0);
                if (rs.decision_atom.empty()) {
                    rs.decision_atom = rule.head;
                } else if (rule.head != rs.decision_atom) {
                    throw ParseError("decision rules must share one head ('" + rs.decision_atom + "' vs '" +
                                         rule.head + "')",
                                     kw.line, kw.column);
                }
                rs.decision_rules.push_back(std::move(rule));
            } else if (kw.is_word("causal")) {
                ts_.next();
                rs.causal_rules.push_back(parse_causal(rs.causal_rules.size() + 1, label));
            } else {
                ts_.fail(kw, "expected 'decision' or 'causal'");
            }
        }
        return rs;
    }

private:
    std::optional<std::string> parse_label() {
        if (ts_.peek().kind == detail::Tok::word && ts_.peek(1).is_punct(":")) {
            std::string label = ts_.expect_identifier().text;
            ts_.next();
            return label;
        }
        return std::nullopt;
    }

    void claim_id(const std::string& id, const detail::Token& at) {
        if (!ids_.insert(id).second) throw ParseError("duplicate rule id '" + id + "'", at.line, at.column);
    }

    DecisionRule parse_decision(const std::string& parent, std::size_t position,
                                const std::optional<std::string>& label, std::size_t depth) {
        const auto& head_tok = ts_.expect_identifier();
        if (depth > max_exception_depth) throw ParseError("exceptions nested too deeply", head_tok.line, head_tok.column);
        DecisionRule rule;
        rule.id = label ? *label : auto_decision_id(parent, position);
        claim_id(rule.id, head_tok);
        rule.head = head_tok.text;
        if (ts_.accept_punct(":-")) rule.body = parse_literals();
        if (ts_.accept_word("except")) {
            ts_.expect_punct("{");
            while (!ts_.peek().is_punct("}")) {
                auto sub_label = parse_label();
                ts_.expect_word("decision");
                rule.exceptions.push_back(
                    parse_decision(rule.id, rule.exceptions.size() + 1, sub_label, depth + 1));
            }
            ts_.expect_punct("}");
        }
        ts_.expect_punct(".");
        return rule;
    }

    CausalRule parse_causal(std::size_t position, const std::optional<std::string>& label) {
        const auto& at = ts_.peek();
        CausalRule rule;
        rule.id = label ? *label : auto_causal_id(position);
        claim_id(rule.id, at);
        rule.head = parse_literal();
        ts_.expect_punct(":-");
        rule.body = parse_literals();
        for (const auto& lit : rule.body) {
            if (lit.feature == rule.head.feature) {
                throw ParseError("causal rule " + rule.id + ": effect '" + lit.feature + "' appears in its own body",
                                 at.line, at.column);
            }
        }
        ts_.expect_punct(".");
        return rule;
    }

    std::vector<Literal> parse_literals() {
        std::vector<Literal> out;
        out.push_back(parse_literal());
        while (ts_.accept_punct(",")) out.push_back(parse_literal());
        return out;
    }

    Literal parse_literal() {
        const auto& feat_tok = ts_.expect_identifier();
        auto idx = schema_.index_of(feat_tok.text);
        if (!idx) throw ParseError("unknown feature '" + feat_tok.text + "'", feat_tok.line, feat_tok.column);
        const auto& f = schema_[*idx];

        Literal lit;
        lit.feature = feat_tok.text;
        lit.index = *idx;
        if (ts_.accept_word("in")) {
            lit.op = Comparator::in_range;
            ts_.expect_punct("[");
            lit.constant = number_token();
            ts_.expect_punct(",");
            lit.upper = number_token().number();
            ts_.expect_punct(")");
        } else {
            const auto& op_tok = ts_.peek();
            static const std::pair<std::string_view, Comparator> ops[] = {
                {"==", Comparator::eq}, {"!=", Comparator::ne}, {"<", Comparator::lt},
                {"<=", Comparator::le}, {">", Comparator::gt},  {">=", Comparator::ge},
            };
            bool found = false;
            for (const auto& [text, op] : ops) {
                if (op_tok.is_punct(text)) {
                    lit.op = op;
                    found = true;
                }
            }
            if (!found) ts_.fail(op_tok, "expected comparator");
            ts_.next();
            const auto& ct = ts_.peek();
            if (ct.kind == detail::Tok::end || ct.kind == detail::Tok::punct) ts_.fail(ct, "expected constant");
            if (f.is_numeric()) {
                lit.constant = number_token();
            } else {
                ts_.next();
                lit.constant = Value::symbol(ct.text);
            }
        }
        if (auto err = type_error(lit, f); !err.empty()) {
            throw ParseError("type error: " + err, feat_tok.line, feat_tok.column);
        }
        return lit;
    }

    Value number_token() {
        const auto& t = ts_.peek();
        if (t.kind != detail::Tok::number) ts_.fail(t, "type error: expected number");
        try {
            Value v(parse_number(t.text));
            ts_.next();
            return v;
        } catch (const std::invalid_argument& e) {
            ts_.fail(t, e.what());
        }
    }

    detail::TokenStream ts_;
    const FeatureSchemaSet& schema_;
    std::set<std::string> ids_;
};

void write_literals(std::string& out, const std::vector<Literal>& lits) {
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i) out += ", ";
        out += format_literal(lits[i]);
    }
}

void write_decision(std::string& out, const DecisionRule& r, const std::string& expected_id) {
    if (r.id != expected_id) out += r.id + ": ";
    out += "decision " + r.head;
    if (!r.body.empty()) {
        out += " :- ";
        write_literals(out, r.body);
    }
    if (!r.exceptions.empty()) {
        out += " except {";
        for (std::size_t i = 0; i < r.exceptions.size(); ++i) {
            out += " ";
            write_decision(out, r.exceptions[i], auto_decision_id(r.id, i + 1));
        }
        out += " }";
    }
    out += ".";
}

void bind_literal(Literal& lit, const FeatureSchemaSet& schema) { lit.index = schema.require(lit.feature); }

void bind_decision(DecisionRule& r, const FeatureSchemaSet& schema) {
    for (auto& l : r.body) bind_literal(l, schema);
    for (auto& e : r.exceptions) bind_decision(e, schema);
}

}  // namespace

Literal make_literal(const FeatureSchemaSet& schema, std::string_view feature, Comparator op, Value constant,
                     Number upper) {
    Literal lit;
    lit.feature = std::string(feature);
    lit.index = schema.require(feature);
    lit.op = op;
    lit.constant = std::move(constant);
    lit.upper = upper;
    if (auto err = type_error(lit, schema[lit.index]); !err.empty()) throw SchemaError(err);
    return lit;
}

RuleSet parse_ruleset(std::string_view text, const FeatureSchemaSet& schema) {
    return RuleParser(text, schema).parse();
}

std::string format_literal(const Literal& lit) {
    auto constant = [](const Value& v) {
        return v.is_numeric() ? format_number(v.number()) : detail::quote_symbol(v.symbol());
    };
    if (lit.op == Comparator::in_range) {
        return lit.feature + " in [" + constant(lit.constant) + "," + format_number(lit.upper) + ")";
    }
    return lit.feature + " " + std::string(to_string(lit.op)) + " " + constant(lit.constant);
}

std::string serialize_ruleset(const RuleSet& rs) {
    std::string out = "# cogs rule program\n";
    for (std::size_t i = 0; i < rs.decision_rules.size(); ++i) {
        write_decision(out, rs.decision_rules[i], auto_decision_id(std::string(), i + 1));
        out += "\n";
    }
    for (std::size_t i = 0; i < rs.causal_rules.size(); ++i) {
        const auto& r = rs.causal_rules[i];
        if (r.id != auto_causal_id(i + 1)) out += r.id + ": ";
        out += "causal " + format_literal(r.head) + " :- ";
        write_literals(out, r.body);
        out += ".\n";
    }
    return out;
}

RuleSet combine(const RuleSet& decisions, const RuleSet& causal) {
    RuleSet out;
    out.decision_atom = decisions.decision_atom.empty() ? causal.decision_atom : decisions.decision_atom;
    out.decision_rules = decisions.decision_rules;
    out.decision_rules.insert(out.decision_rules.end(), causal.decision_rules.begin(), causal.decision_rules.end());
    out.causal_rules = decisions.causal_rules;
    out.causal_rules.insert(out.causal_rules.end(), causal.causal_rules.begin(), causal.causal_rules.end());
    return out;
}

void bind(RuleSet& rs, const FeatureSchemaSet& schema) {
    for (auto& r : rs.decision_rules) bind_decision(r, schema);
    for (auto& r : rs.causal_rules) {
        for (auto& l : r.body) bind_literal(l, schema);
        bind_literal(r.head, schema);
    }
}

bool jointly_satisfiable(const std::vector<Literal>& literals, const FeatureSchemaSet& schema) {
    std::set<std::size_t> features;
    for (const auto& l : literals) features.insert(l.index);

    for (std::size_t fi : features) {
        const auto& f = schema[fi];
        if (!f.is_numeric()) {
            std::vector<std::string> allowed = f.categorical().values;
            for (const auto& l : literals) {
                if (l.index != fi) continue;
                std::erase_if(allowed, [&](const std::string& v) {
                    return l.op == Comparator::eq ? v != l.constant.symbol() : v == l.constant.symbol();
                });
            }
            if (allowed.empty()) return false;
            continue;
        }
        // Interval over the rationals with open/closed ends, minus excluded points.
        Number lo = f.numeric().min;
        Number hi = f.numeric().max;
        bool lo_open = false;
        bool hi_open = false;
        std::vector<Number> excluded;
        auto raise_lo = [&](Number v, bool open) {
            if (v > lo || (v == lo && open)) {
                lo = v;
                lo_open = open;
            }
        };
        auto lower_hi = [&](Number v, bool open) {
            if (v < hi || (v == hi && open)) {
                hi = v;
                hi_open = open;
            }
        };
        for (const auto& l : literals) {
            if (l.index != fi) continue;
            Number c = l.constant.number();
            switch (l.op) {
                case Comparator::eq: raise_lo(c, false); lower_hi(c, false); break;
                case Comparator::ne: excluded.push_back(c); break;
                case Comparator::lt: lower_hi(c, true); break;
                case Comparator::le: lower_hi(c, false); break;
                case Comparator::gt: raise_lo(c, true); break;
                case Comparator::ge: raise_lo(c, false); break;
                case Comparator::in_range: raise_lo(c, false); lower_hi(l.upper, true); break;
            }
        }
        if (lo > hi) return false;
        if (lo == hi) {
            if (lo_open || hi_open) return false;
            if (std::find(excluded.begin(), excluded.end(), lo) != excluded.end()) return false;
        }
        // A non-degenerate rational interval minus finitely many points is non-empty.
    }
    return true;
}

std::vector<Diagnostic> validate_ruleset(const RuleSet& rs, const FeatureSchemaSet& schema) {
    std::vector<Diagnostic> out;
    std::set<std::string> ids;
    std::set<std::string> broken;  // rule ids with literal-level errors

    auto check_literal = [&](const Literal& lit, const std::string& rule_id) {
        auto idx = schema.index_of(lit.feature);
        if (!idx) {
            out.push_back({Diagnostic::Kind::unknown_feature, rule_id, "unknown feature '" + lit.feature + "'"});
            broken.insert(rule_id);
            return;
        }
        if (auto err = type_error(lit, schema[*idx]); !err.empty()) {
            out.push_back({Diagnostic::Kind::type_mismatch, rule_id, err});
            broken.insert(rule_id);
        }
    };
    auto claim = [&](const std::string& id) {
        if (!ids.insert(id).second) {
            out.push_back({Diagnostic::Kind::duplicate_id, id, "duplicate rule id '" + id + "'"});
        }
    };

    auto walk = [&](auto&& self, const DecisionRule& r) -> void {
        claim(r.id);
        for (const auto& l : r.body) check_literal(l, r.id);
        for (const auto& e : r.exceptions) self(self, e);
    };
    for (const auto& r : rs.decision_rules) {
        walk(walk, r);
        if (r.head != rs.decision_atom) {
            out.push_back({Diagnostic::Kind::head_mismatch, r.id,
                           "head '" + r.head + "' differs from decision atom '" + rs.decision_atom + "'"});
        }
    }
    for (const auto& r : rs.causal_rules) {
        claim(r.id);
        check_literal(r.head, r.id);
        for (const auto& l : r.body) {
            check_literal(l, r.id);
            if (l.feature == r.head.feature) {
                out.push_back({Diagnostic::Kind::self_cause, r.id,
                               "effect '" + r.head.feature + "' appears in its own body"});
            }
        }
    }

    // Pairs of causal rules that can fire together but demand incompatible effects.
    for (std::size_t i = 0; i < rs.causal_rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rs.causal_rules.size(); ++j) {
            const auto& a = rs.causal_rules[i];
            const auto& b = rs.causal_rules[j];
            if (a.head.feature != b.head.feature || broken.count(a.id) || broken.count(b.id)) continue;
            RuleSet pair;
            pair.causal_rules = {a, b};
            bind(pair, schema);
            const auto& pa = pair.causal_rules[0];
            const auto& pb = pair.causal_rules[1];
            std::vector<Literal> bodies = pa.body;
            bodies.insert(bodies.end(), pb.body.begin(), pb.body.end());
            if (!jointly_satisfiable(bodies, schema)) continue;
            if (jointly_satisfiable({pa.head, pb.head}, schema)) continue;
            out.push_back({Diagnostic::Kind::causal_conflict, a.id + "," + b.id,
                           "causal rules " + a.id + " and " + b.id + " can fire together but force '" +
                               format_literal(a.head) + "' and '" + format_literal(b.head) + "'"});
        }
    }
    return out;
}

}  // namespace cogs
