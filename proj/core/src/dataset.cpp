#include "cogs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "cogs/errors.hpp"
#include "lexer.hpp"

namespace cogs {

void DatasetTable::check() const {
    if (labels && labels->size() != rows.size()) {
        throw std::invalid_argument("label count " + std::to_string(labels->size()) + " differs from row count " +
                                    std::to_string(rows.size()));
    }
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable out;
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool quoted = false, was_quoted = false, any = false;
    std::size_t line = 1;

    auto end_cell = [&] {
        record.push_back(was_quoted ? cell : trim(cell));
        cell.clear();
        was_quoted = false;
    };
    auto end_record = [&] {
        end_cell();
        bool blank = record.size() == 1 && record[0].empty();
        if (!blank) records.push_back(std::move(record));
        record.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                cell += c;
            }
            continue;
        }
        if (c == '"' && trim(cell).empty()) {
            cell.clear();
            quoted = was_quoted = true;
        } else if (c == ',') {
            end_cell();
        } else if (c == '\n') {
            end_record();
            ++line;
        } else {
            cell += c;
            any = true;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line, 1);
    if (any || !cell.empty() || !record.empty()) end_record();

    if (records.empty()) throw ParseError("CSV has no header row", 1, 1);
    out.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != out.header.size()) {
            throw ParseError("row has " + std::to_string(records[r].size()) + " cells, header has " +
                                 std::to_string(out.header.size()),
                             r + 1, 1);
        }
        out.rows.push_back(std::move(records[r]));
    }
    return out;
}

std::string Bin::label_of(const Number& v) const {
    std::size_t k = std::upper_bound(edges.begin(), edges.end(), v) - edges.begin();
    return labels[k];
}

std::vector<Bin> parse_binning(std::string_view text) {
    detail::TokenStream ts(detail::tokenize(text));
    std::vector<Bin> out;
    std::set<std::string> seen;
    while (!ts.at_end()) {
        const auto& start = ts.expect_word("bin");
        Bin b;
        b.feature = ts.expect_identifier().text;
        if (!seen.insert(b.feature).second) {
            throw ParseError("feature '" + b.feature + "' binned twice", start.line, start.column);
        }
        ts.expect_punct(":");
        do {
            const auto& tok = ts.peek();
            if (tok.kind != detail::Tok::number) ts.fail(tok, "expected a bin edge");
            b.edges.push_back(parse_number(tok.text));
            ts.next();
        } while (ts.accept_punct(","));
        if (!std::is_sorted(b.edges.begin(), b.edges.end()) ||
            std::adjacent_find(b.edges.begin(), b.edges.end()) != b.edges.end()) {
            throw ParseError("bin edges of '" + b.feature + "' must increase", start.line, start.column);
        }
        if (ts.accept_word("as")) {
            do {
                const auto& tok = ts.peek();
                if (tok.kind != detail::Tok::word && tok.kind != detail::Tok::string) ts.fail(tok, "expected a bin label");
                b.labels.push_back(tok.text);
                ts.next();
            } while (ts.accept_punct(","));
            if (b.labels.size() != b.edges.size() + 1) {
                throw ParseError("'" + b.feature + "' needs " + std::to_string(b.edges.size() + 1) + " bin labels",
                                 start.line, start.column);
            }
        } else {
            b.labels.push_back("lt" + format_number(b.edges.front()));
            for (std::size_t k = 0; k + 1 < b.edges.size(); ++k) {
                b.labels.push_back(format_number(b.edges[k]) + "to" + format_number(b.edges[k + 1]));
            }
            b.labels.push_back("ge" + format_number(b.edges.back()));
        }
        ts.expect_punct(".");
        out.push_back(std::move(b));
    }
    return out;
}

CsvLoad load_csv(const CsvTable& csv, const CsvOptions& options) {
    std::map<std::string, std::size_t> column;
    for (std::size_t c = 0; c < csv.header.size(); ++c) {
        if (!column.emplace(csv.header[c], c).second) throw SchemaError("duplicate CSV column '" + csv.header[c] + "'");
    }
    std::optional<std::size_t> label_col;
    if (!options.label_column.empty()) {
        auto it = column.find(options.label_column);
        if (it == column.end()) throw SchemaError("label column '" + options.label_column + "' not found");
        label_col = it->second;
    }
    std::map<std::string, const Bin*> bins;
    for (const auto& b : options.binning) bins[b.feature] = &b;

    std::vector<std::size_t> feature_cols;
    std::vector<std::string> names;
    if (options.schema) {
        for (const auto& f : *options.schema) {
            auto it = column.find(f.name);
            if (it == column.end()) throw SchemaError("schema feature '" + f.name + "' has no CSV column");
            feature_cols.push_back(it->second);
            names.push_back(f.name);
        }
    } else {
        for (std::size_t c = 0; c < csv.header.size(); ++c) {
            if (label_col && c == *label_col) continue;
            const auto& name = csv.header[c];
            if (std::find(options.drop_columns.begin(), options.drop_columns.end(), name) != options.drop_columns.end()) {
                continue;
            }
            if (!detail::is_identifier(name)) throw SchemaError("column '" + name + "' is not a valid feature name");
            feature_cols.push_back(c);
            names.push_back(name);
        }
    }

    // Cell text to value, binned columns mapped to their labels.
    auto convert = [&](std::size_t k, const std::string& cell) -> std::optional<Value> {
        auto b = bins.find(names[k]);
        bool numeric_cell = looks_like_number(cell);
        if (b != bins.end()) {
            if (!numeric_cell) return std::nullopt;
            return Value::symbol(b->second->label_of(parse_number(cell)));
        }
        if (options.schema) {
            const auto& f = (*options.schema)[k];
            if (f.is_numeric()) {
                if (!numeric_cell) return std::nullopt;
                return Value(parse_number(cell));
            }
            return Value::symbol(cell);
        }
        return numeric_cell ? Value(parse_number(cell)) : Value::symbol(cell);
    };

    FeatureSchemaSet schema;
    if (options.schema) {
        schema = *options.schema;
    } else {
        std::vector<FeatureSchema> features;
        for (std::size_t k = 0; k < names.size(); ++k) {
            FeatureSchema f;
            f.name = names[k];
            auto b = bins.find(names[k]);
            bool numeric = b == bins.end() && !csv.rows.empty();
            for (const auto& row : csv.rows) numeric = numeric && looks_like_number(row[feature_cols[k]]);
            if (b != bins.end()) {
                f.domain = CategoricalDomain{b->second->labels};
            } else if (numeric) {
                NumericDomain d;
                d.min = d.max = parse_number(csv.rows.front()[feature_cols[k]]);
                for (const auto& row : csv.rows) {
                    Number v = parse_number(row[feature_cols[k]]);
                    d.min = std::min(d.min, v);
                    d.max = std::max(d.max, v);
                }
                f.domain = d;
            } else {
                CategoricalDomain d;
                std::set<std::string> seen;
                for (const auto& row : csv.rows) {
                    if (seen.insert(row[feature_cols[k]]).second) d.values.push_back(row[feature_cols[k]]);
                }
                if (d.values.empty()) d.values.push_back("none");
                f.domain = std::move(d);
            }
            features.push_back(std::move(f));
        }
        schema = FeatureSchemaSet(std::move(features));
    }

    CsvLoad out;
    out.table.schema = schema;
    if (label_col) out.table.labels.emplace();
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        std::vector<Value> values;
        std::string problem;
        for (std::size_t k = 0; k < names.size() && problem.empty(); ++k) {
            auto v = convert(k, row[feature_cols[k]]);
            if (!v || !schema[k].contains(*v)) {
                problem = "value '" + row[feature_cols[k]] + "' invalid for '" + names[k] + "'";
            } else {
                values.push_back(std::move(*v));
            }
        }
        if (!problem.empty()) {
            if (options.skip_invalid_rows) {
                ++out.skipped_rows;
                continue;
            }
            throw SchemaError("row " + std::to_string(r + 2) + ": " + problem);
        }
        out.table.rows.emplace_back(std::move(values));
        out.source_rows.push_back(r);
        if (label_col) {
            const auto& cell = row[*label_col];
            bool pos = std::find(options.positive_values.begin(), options.positive_values.end(), cell) !=
                       options.positive_values.end();
            out.table.labels->push_back(pos);
        }
    }
    return out;
}

Split train_test_split(const DatasetTable& data, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) throw std::invalid_argument("test fraction must lie in [0,1]");
    data.check();
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(data.size())));

    Split s{{data.schema, {}, {}}, {data.schema, {}, {}}};
    if (data.labels) {
        s.train.labels.emplace();
        s.test.labels.emplace();
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto& part = k < n_test ? s.test : s.train;
        part.rows.push_back(data.rows[order[k]]);
        if (data.labels) part.labels->push_back((*data.labels)[order[k]]);
    }
    return s;
}

std::string write_csv(const DatasetTable& data, std::string_view label_column) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::string out;
    for (std::size_t i = 0; i < data.schema.size(); ++i) {
        if (i) out += ',';
        out += data.schema[i].name;
    }
    if (data.labels) out += "," + std::string(label_column);
    out += '\n';
    for (std::size_t r = 0; r < data.size(); ++r) {
        for (std::size_t i = 0; i < data.schema.size(); ++i) {
            if (i) out += ',';
            out += quote(data.rows[r][i].str());
        }
        if (data.labels) out += (*data.labels)[r] ? ",1" : ",0";
        out += '\n';
    }
    return out;
}

}  // namespace cogs
