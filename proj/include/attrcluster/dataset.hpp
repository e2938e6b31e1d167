#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace attrcluster {

enum class ColumnKind { Numeric, Nominal };

/// Verbatim CSV contents: header plus string cells, no interpretation applied.
struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // each row has header.size() cells
    std::string missing_token = "?";

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return header.size(); }
};

/// How rows/columns with the missing token are removed before encoding.
struct MissingPolicy {
    enum class Kind { DropRows, DropColumns };
    Kind kind = Kind::DropRows;
    double threshold = 0.2;  // DropColumns: drop column when missing fraction > threshold

    static MissingPolicy drop_rows() { return {Kind::DropRows, 0.0}; }
    static MissingPolicy drop_columns(double threshold = 0.2) {
        return {Kind::DropColumns, threshold};
    }
};

struct CleanColumn {
    std::string name;
    ColumnKind kind = ColumnKind::Nominal;
    std::variant<std::vector<double>, std::vector<std::string>> values;

    const std::vector<double>& numeric() const { return std::get<std::vector<double>>(values); }
    const std::vector<std::string>& nominal() const {
        return std::get<std::vector<std::string>>(values);
    }
};

/// Typed column-major table with no missing cells and no constant columns.
struct CleanTable {
    std::vector<CleanColumn> columns;
    std::size_t n_rows = 0;
};

struct DroppedColumn {
    enum class Reason { MissingFraction, Constant };
    std::string name;
    Reason reason = Reason::Constant;
    double missing_fraction = 0.0;  // meaningful for Reason::MissingFraction
};

struct CleaningLog {
    std::vector<std::size_t> dropped_rows;  // 0-based indices into RawTable::rows
    std::vector<DroppedColumn> dropped_columns;
    std::size_t rows_before = 0;
    std::size_t rows_after = 0;
};

struct CleanResult {
    CleanTable table;
    CleaningLog log;
};

/// Parse an RFC-4180-style CSV (quoted fields, embedded delimiters/newlines,
/// doubled quotes). The first record is the header. Cells are kept verbatim.
/// Throws DataError on I/O failure, a missing header, duplicate column names,
/// unterminated quotes, or ragged rows (the message names the offending row,
/// counting the header as row 1).
RawTable load_csv(const std::filesystem::path& path, std::string missing_token = "?",
                  char delimiter = ',');

/// Same parser applied to an in-memory document. Used by load_csv and tests.
RawTable parse_csv(const std::string& text, std::string missing_token = "?",
                   char delimiter = ',');

/// True when the token is an integer or plain decimal ([+-]?digits[.digits]
/// or [+-]?.digits). Exponents, locale separators and surrounding whitespace
/// are rejected so that kind inference is deterministic.
bool parse_number(const std::string& token, double& out);

/// A column is Numeric iff every non-missing cell parses as a number, unless
/// an override says otherwise. Overrides must name existing columns
/// (ConfigError) and a Numeric override must be parseable (DataError).
std::vector<ColumnKind> infer_kinds(const RawTable& table,
                                    const std::map<std::string, ColumnKind>& overrides = {});

/// Apply the missing-value policy, then drop constant columns, and type the
/// surviving cells. Row order is preserved and every dropped row/column is
/// logged. Throws DataError when fewer than 2 rows or no columns survive.
CleanResult clean(const RawTable& table, const std::vector<ColumnKind>& kinds,
                  const MissingPolicy& policy);

}  // namespace attrcluster
