#pragma once

// Shared test fixtures: the weather example with its published reference
// values, matrix helpers, and deterministic random-table generators.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "attrcluster/correlation.hpp"
#include "attrcluster/dataset.hpp"
#include "attrcluster/encoder.hpp"
#include "attrcluster/factors.hpp"
#include "attrcluster/matrix.hpp"

namespace testutil {

using attrcluster::Matrix;

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline double max_entry_diff(const Matrix& a, const Matrix& b) {
    return attrcluster::max_abs_diff(a, b);
}

inline std::string weather_csv_path() {
    return std::string(ATTRCLUSTER_TEST_DATA_DIR) + "/weather.csv";
}

inline attrcluster::RawTable weather_raw() { return attrcluster::load_csv(weather_csv_path()); }

inline attrcluster::CleanTable weather_clean() {
    auto raw = weather_raw();
    auto kinds = attrcluster::infer_kinds(raw);
    return attrcluster::clean(raw, kinds, attrcluster::MissingPolicy::drop_rows()).table;
}

inline attrcluster::EncodedMatrix weather_encoded() {
    return attrcluster::encode_table(weather_clean());
}

inline Matrix matrix_from(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

// ---------------------------------------------------------------------------
// Published reference values for the weather example.

inline const std::vector<std::string>& weather_short_labels() {
    static const std::vector<std::string> labels = {"A1>1", "A1>2", "A1>3", "A2>1", "A2>2",
                                                    "A2>3", "A3>1", "A3>2", "A4", "A5"};
    return labels;
}

inline const Matrix& weather_reference_correlation() {
    static const Matrix m = matrix_from({
        {1.000, -0.471, -0.556, 0.189, -0.043, -0.141, 0.149, -0.149, 0.043, -0.378},
        {-0.471, 1.000, -0.471, 0.300, -0.228, -0.050, 0.000, 0.000, -0.091, 0.471},
        {-0.556, -0.471, 1.000, -0.471, 0.258, 0.189, -0.149, 0.149, 0.043, -0.067},
        {0.189, 0.300, -0.471, 1.000, -0.548, -0.400, 0.316, -0.316, 0.228, -0.189},
        {-0.043, -0.228, 0.258, -0.548, 1.000, -0.548, 0.289, -0.289, -0.125, 0.043},
        {-0.141, -0.050, 0.189, -0.400, -0.548, 1.000, -0.632, 0.632, -0.091, 0.141},
        {0.149, 0.000, -0.149, 0.316, 0.289, -0.632, 1.000, -1.000, 0.000, -0.447},
        {-0.149, 0.000, 0.149, -0.316, -0.289, 0.632, -1.000, 1.000, 0.000, 0.447},
        {0.043, -0.091, 0.043, 0.228, -0.125, -0.091, 0.000, 0.000, 1.000, 0.258},
        {-0.378, 0.471, -0.067, -0.189, 0.043, 0.141, -0.447, 0.447, 0.258, 1.000},
    });
    return m;
}

inline const std::vector<double>& weather_reference_eigenvalues() {
    static const std::vector<double> v = {3.18, 2.18, 1.70, 1.16, 1.09, 0.50, 0.19};
    return v;  // the remaining three are 0 up to round-off
}

// Full common-variance matrix (factor columns 8..10 are zero up to round-off).
inline const Matrix& weather_reference_full_variance() {
    static const Matrix m = matrix_from({
        {0.168, 0.011, 0.541, 0.004, 0.267, 0.003, 0.004, 0, 0, 0},
        {0.006, 0.439, 0.429, 0.092, 0.000, 0.007, 0.028, 0, 0, 0},
        {0.115, 0.535, 0.014, 0.049, 0.260, 0.019, 0.009, 0, 0, 0},
        {0.240, 0.526, 0.007, 0.026, 0.081, 0.112, 0.009, 0, 0, 0},
        {0.070, 0.530, 0.170, 0.000, 0.215, 0.005, 0.010, 0, 0, 0},
        {0.607, 0.005, 0.137, 0.031, 0.050, 0.170, 0.000, 0, 0, 0},
        {0.839, 0.013, 0.035, 0.001, 0.034, 0.071, 0.007, 0, 0, 0},
        {0.839, 0.013, 0.035, 0.001, 0.034, 0.071, 0.007, 0, 0, 0},
        {0.000, 0.038, 0.001, 0.898, 0.001, 0.034, 0.027, 0, 0, 0},
        {0.292, 0.071, 0.329, 0.062, 0.145, 0.009, 0.092, 0, 0, 0},
    });
    return m;
}

inline const std::vector<double>& weather_reference_cumulative_minima() {
    static const std::vector<double> v = {0.000, 0.038, 0.040, 0.713, 0.830,
                                          0.908, 1.0,   1.0,   1.0,   1.0};
    return v;
}

inline const std::vector<double>& weather_reference_cumulative_means() {
    static const std::vector<double> v = {0.318, 0.536, 0.706, 0.822, 0.931,
                                          0.981, 1.0,   1.0,   1.0,   1.0};
    return v;
}

// Row totals of the reduced (4-factor) common-variance matrix.
inline const std::vector<double>& weather_reference_communalities() {
    static const std::vector<double> v = {0.725, 0.965, 0.713, 0.799, 0.770,
                                          0.780, 0.888, 0.888, 0.938, 0.754};
    return v;
}

// Rotated common variances in canonical column order.
inline const Matrix& weather_reference_rotated_variance() {
    static const Matrix m = matrix_from({
        {0.0040, 0.1157, 0.6019, 0.0036},
        {0.0047, 0.2650, 0.6580, 0.0375},
        {0.0163, 0.6815, 0.0001, 0.0150},
        {0.0853, 0.6464, 0.0029, 0.0640},
        {0.2760, 0.4791, 0.0069, 0.0082},
        {0.7526, 0.0021, 0.0014, 0.0236},
        {0.8430, 0.0111, 0.0298, 0.0044},
        {0.8430, 0.0111, 0.0298, 0.0044},
        {0.0005, 0.0034, 0.0007, 0.9331},
        {0.0878, 0.0012, 0.5733, 0.0917},
    });
    return m;
}

// ---------------------------------------------------------------------------
// Deterministic random inputs for property tests.

inline std::vector<double> random_vector(std::mt19937& gen, std::size_t n, double lo = -10.0,
                                         double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = dist(gen);
    return v;
}

/// Random columns that are valid correlation input (none constant).
inline std::vector<std::vector<double>> random_columns(std::mt19937& gen, std::size_t n_cols,
                                                       std::size_t n_rows) {
    std::vector<std::vector<double>> cols(n_cols);
    for (auto& col : cols) {
        col = random_vector(gen, n_rows);
        col[1] = col[0] + 1.0;  // guards against a constant column
    }
    return cols;
}

/// Random mixed-type table: numeric columns and nominal columns with small
/// alphabets (so equicardinal classes and one-hot encoding do occur).
inline attrcluster::CleanTable random_mixed_table(std::mt19937& gen, std::size_t n_cols,
                                                  std::size_t n_rows) {
    attrcluster::CleanTable table;
    table.n_rows = n_rows;
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_int_distribution<int> value(0, 9);

    for (std::size_t c = 0; c < n_cols; ++c) {
        attrcluster::CleanColumn column;
        column.name = "col" + std::to_string(c + 1);
        if (coin(gen) == 0) {
            column.kind = attrcluster::ColumnKind::Numeric;
            std::vector<double> vals(n_rows);
            for (double& v : vals) v = static_cast<double>(value(gen));
            vals[1] = vals[0] + 1.0;
            column.values = std::move(vals);
        } else {
            column.kind = attrcluster::ColumnKind::Nominal;
            std::vector<std::string> vals(n_rows);
            for (auto& v : vals) v = std::string(1, static_cast<char>('a' + letter(gen)));
            vals[0] = "a";
            vals[1] = "b";  // at least two classes
            column.values = std::move(vals);
        }
        table.columns.push_back(std::move(column));
    }
    return table;
}

/// A synthetic common-variance matrix with row totals at most `max_total`.
inline attrcluster::CommonVarianceMatrix random_variance(std::mt19937& gen, std::size_t n_attrs,
                                                         std::size_t n_factors,
                                                         double max_total = 1.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> total_dist(0.3, max_total);

    attrcluster::CommonVarianceMatrix v;
    v.V = Matrix(n_attrs, n_factors);
    v.row_total.resize(n_attrs);
    for (std::size_t i = 0; i < n_attrs; ++i) {
        double sum = 0.0;
        std::vector<double> row(n_factors);
        for (double& x : row) {
            x = unit(gen);
            sum += x;
        }
        const double total = total_dist(gen);
        double acc = 0.0;
        for (std::size_t j = 0; j < n_factors; ++j) {
            v.V(i, j) = row[j] / sum * total;
            acc += v.V(i, j);
        }
        v.row_total[i] = acc;
    }
    for (std::size_t i = 0; i < n_attrs; ++i) {
        v.short_labels.push_back("A" + std::to_string(i + 1));
        v.full_labels.push_back("attr" + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < n_factors; ++j)
        v.factor_names.push_back("F" + std::to_string(j + 1));
    return v;
}

// ---------------------------------------------------------------------------
// Independent oracles (deliberately plain re-implementations).

/// Direct evaluation of the correlation formula with naive summation.
inline double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        dx += (x[i] - mx) * (x[i] - mx);
        dy += (y[i] - my) * (y[i] - my);
    }
    return num / (std::sqrt(dx) * std::sqrt(dy));
}

/// Brute-force factor-count scan over all column minima of VC.
inline std::size_t brute_force_factor_count(const Matrix& vc, double epsilon) {
    for (std::size_t j = 0; j < vc.cols(); ++j) {
        double lo = vc(0, j);
        for (std::size_t i = 1; i < vc.rows(); ++i) lo = std::min(lo, vc(i, j));
        if (lo > epsilon) return j + 1;
    }
    return vc.cols();
}

}  // namespace testutil
