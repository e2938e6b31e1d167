#include "attrcluster/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "attrcluster/errors.hpp"

namespace attrcluster {

namespace {

// State-machine CSV reader. Records end at unquoted newlines; quoted fields
// may contain delimiters, newlines and doubled quotes.
std::vector<std::vector<std::string>> read_records(const std::string& text, char delimiter) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool any_char = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
        any_char = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            any_char = true;
            continue;
        }
        if (c == '"' && field.empty() && !field_was_quoted) {
            in_quotes = true;
            field_was_quoted = true;
            any_char = true;
        } else if (c == delimiter) {
            end_field();
            any_char = true;
        } else if (c == '\n') {
            if (any_char || !record.empty() || !field.empty()) end_record();
        } else if (c == '\r') {
            // swallowed; CRLF and stray CR both terminate with the \n branch
            if (i + 1 >= text.size() || text[i + 1] != '\n') {
                if (any_char || !record.empty() || !field.empty()) end_record();
            }
        } else {
            field.push_back(c);
            any_char = true;
        }
    }
    if (in_quotes) throw DataError("load_csv: unterminated quoted field");
    if (any_char || !record.empty() || !field.empty()) end_record();
    return records;
}

bool is_missing(const RawTable& t, const std::string& cell) { return cell == t.missing_token; }

bool column_is_constant(const RawTable& t, std::size_t col,
                        const std::vector<bool>& row_alive) {
    const std::string* first = nullptr;
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        if (!row_alive[r]) continue;
        if (!first) {
            first = &t.rows[r][col];
        } else if (t.rows[r][col] != *first) {
            return false;
        }
    }
    return true;
}

}  // namespace

RawTable parse_csv(const std::string& text, std::string missing_token, char delimiter) {
    auto records = read_records(text, delimiter);
    if (records.empty()) throw DataError("load_csv: no header");

    RawTable table;
    table.missing_token = std::move(missing_token);
    table.header = std::move(records.front());

    std::unordered_set<std::string> seen;
    for (const auto& name : table.header) {
        if (!seen.insert(name).second)
            throw DataError("load_csv: duplicate column name \"" + name + "\"");
    }

    const std::size_t width = table.header.size();
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != width) {
            std::ostringstream msg;
            msg << "load_csv: row " << (i + 1) << " has " << records[i].size()
                << " cells, expected " << width;
            throw DataError(msg.str());
        }
        table.rows.push_back(std::move(records[i]));
    }
    return table;
}

RawTable load_csv(const std::filesystem::path& path, std::string missing_token, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("load_csv: cannot open \"" + path.string() + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw DataError("load_csv: read failure on \"" + path.string() + "\"");
    return parse_csv(buffer.str(), std::move(missing_token), delimiter);
}

bool parse_number(const std::string& token, double& out) {
    // [+-]? ( digits [ . digits* ] | . digits )
    std::size_t i = 0;
    const std::size_t n = token.size();
    if (i < n && (token[i] == '+' || token[i] == '-')) ++i;
    std::size_t int_digits = 0;
    while (i < n && token[i] >= '0' && token[i] <= '9') ++i, ++int_digits;
    std::size_t frac_digits = 0;
    if (i < n && token[i] == '.') {
        ++i;
        while (i < n && token[i] >= '0' && token[i] <= '9') ++i, ++frac_digits;
    }
    if (i != n || int_digits + frac_digits == 0) return false;
    out = std::strtod(token.c_str(), nullptr);
    return std::isfinite(out);  // absurdly long digit strings overflow to inf
}

std::vector<ColumnKind> infer_kinds(const RawTable& table,
                                    const std::map<std::string, ColumnKind>& overrides) {
    for (const auto& [name, kind] : overrides) {
        if (std::find(table.header.begin(), table.header.end(), name) == table.header.end())
            throw ConfigError("infer_kinds: override names unknown column \"" + name + "\"");
    }

    std::vector<ColumnKind> kinds(table.n_cols(), ColumnKind::Numeric);
    for (std::size_t c = 0; c < table.n_cols(); ++c) {
        const auto it = overrides.find(table.header[c]);
        bool all_numeric = true;
        std::string bad_cell;
        for (const auto& row : table.rows) {
            double v;
            if (!is_missing(table, row[c]) && !parse_number(row[c], v)) {
                all_numeric = false;
                bad_cell = row[c];
                break;
            }
        }
        if (it != overrides.end()) {
            if (it->second == ColumnKind::Numeric && !all_numeric)
                throw DataError("infer_kinds: column \"" + table.header[c] +
                                "\" overridden as numeric but cell \"" + bad_cell +
                                "\" does not parse");
            kinds[c] = it->second;
        } else {
            kinds[c] = all_numeric ? ColumnKind::Numeric : ColumnKind::Nominal;
        }
    }
    return kinds;
}

CleanResult clean(const RawTable& table, const std::vector<ColumnKind>& kinds,
                  const MissingPolicy& policy) {
    if (kinds.size() != table.n_cols())
        throw DataError("clean: kind list length does not match column count");

    CleaningLog log;
    log.rows_before = table.n_rows();
    std::vector<bool> col_alive(table.n_cols(), true);
    std::vector<bool> row_alive(table.n_rows(), true);

    if (policy.kind == MissingPolicy::Kind::DropColumns && table.n_rows() > 0) {
        for (std::size_t c = 0; c < table.n_cols(); ++c) {
            std::size_t missing = 0;
            for (const auto& row : table.rows)
                if (is_missing(table, row[c])) ++missing;
            const double fraction = static_cast<double>(missing) / table.n_rows();
            if (fraction > policy.threshold) {
                col_alive[c] = false;
                log.dropped_columns.push_back({table.header[c],
                                               DroppedColumn::Reason::MissingFraction, fraction});
            }
        }
    }

    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        for (std::size_t c = 0; c < table.n_cols(); ++c) {
            if (col_alive[c] && is_missing(table, table.rows[r][c])) {
                row_alive[r] = false;
                log.dropped_rows.push_back(r);
                break;
            }
        }
    }

    for (std::size_t c = 0; c < table.n_cols(); ++c) {
        if (col_alive[c] && column_is_constant(table, c, row_alive)) {
            col_alive[c] = false;
            log.dropped_columns.push_back({table.header[c], DroppedColumn::Reason::Constant, 0.0});
        }
    }

    CleanTable out;
    out.n_rows = static_cast<std::size_t>(
        std::count(row_alive.begin(), row_alive.end(), true));
    log.rows_after = out.n_rows;

    if (out.n_rows < 2)
        throw DataError("clean: only " + std::to_string(out.n_rows) +
                        " row(s) survive cleaning, need at least 2");

    for (std::size_t c = 0; c < table.n_cols(); ++c) {
        if (!col_alive[c]) continue;
        CleanColumn column;
        column.name = table.header[c];
        column.kind = kinds[c];
        if (kinds[c] == ColumnKind::Numeric) {
            std::vector<double> values;
            values.reserve(out.n_rows);
            for (std::size_t r = 0; r < table.n_rows(); ++r) {
                if (!row_alive[r]) continue;
                double v;
                if (!parse_number(table.rows[r][c], v))
                    throw DataError("clean: numeric column \"" + column.name +
                                    "\" holds non-numeric cell \"" + table.rows[r][c] + "\"");
                values.push_back(v);
            }
            column.values = std::move(values);
        } else {
            std::vector<std::string> values;
            values.reserve(out.n_rows);
            for (std::size_t r = 0; r < table.n_rows(); ++r)
                if (row_alive[r]) values.push_back(table.rows[r][c]);
            column.values = std::move(values);
        }
        out.columns.push_back(std::move(column));
    }

    if (out.columns.empty())
        throw DataError("clean: no columns survive cleaning (all constant or too sparse)");

    return {std::move(out), std::move(log)};
}

}  // namespace attrcluster
