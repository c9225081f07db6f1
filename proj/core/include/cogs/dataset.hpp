#ifndef COGS_DATASET_HPP
#define COGS_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cogs/schema.hpp"
#include "cogs/state.hpp"

namespace cogs {

// Rows over a schema with optional binary labels. A true label is the
// undesired outcome, i.e. the decision atom holds.
struct DatasetTable {
    FeatureSchemaSet schema;
    std::vector<State> rows;
    std::optional<std::vector<bool>> labels;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
    bool labelled() const { return labels.has_value(); }
    // Throws std::invalid_argument when labels are present but misaligned.
    void check() const;
};

// Raw CSV cells: header plus rows, whitespace trimmed, RFC 4180 quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Throws ParseError on ragged rows or unterminated quotes.
CsvTable parse_csv(std::string_view text);

// Maps a numeric column onto ordered categorical bins. With edges e1 < e2 <
// ... < ek the bins are (-inf,e1), [e1,e2), ..., [ek,+inf), named by `labels`.
struct Bin {
    std::string feature;
    std::vector<Number> edges;
    std::vector<std::string> labels;  // edges.size() + 1 names

    std::string label_of(const Number& v) const;
};

// Binning file, one line per column:
//   bin age: 25, 45, 65 as young, adult, middle, senior.
// Labels after `as` are optional; defaults read "lt25", "25to45", ..., "ge65".
std::vector<Bin> parse_binning(std::string_view text);

struct CsvOptions {
    std::string label_column;                  // empty: no labels
    std::vector<std::string> positive_values{"1"};  // label cells meaning "decision holds"
    std::optional<FeatureSchemaSet> schema;   // otherwise inferred
    std::vector<Bin> binning;
    std::vector<std::string> drop_columns;
    bool skip_invalid_rows = false;           // otherwise an invalid row is an error
};

struct CsvLoad {
    DatasetTable table;
    std::size_t skipped_rows = 0;
    std::vector<std::size_t> source_rows;  // CSV row index of each table row
};

// Builds a table from CSV cells. Without a schema, every column whose cells
// all parse as numbers becomes numeric [min,max] step 1 and the rest become
// categorical in first-seen order; all features are `free`. Binned columns
// become categorical over their bin labels. Throws SchemaError on a missing
// label column, unknown schema features or (unless skipping) invalid rows.
CsvLoad load_csv(const CsvTable& csv, const CsvOptions& options);

struct Split {
    DatasetTable train;
    DatasetTable test;
};

// Shuffles row indices with a seeded std::mt19937_64 and puts the first
// round(test_fraction * n) rows in the test part.
Split train_test_split(const DatasetTable& data, double test_fraction, std::uint64_t seed);

std::string write_csv(const DatasetTable& data, std::string_view label_column = "label");

}  // namespace cogs

#endif  // COGS_DATASET_HPP
