#include "attrcluster/correlation.hpp"

#include <cmath>
#include <sstream>

#include "attrcluster/errors.hpp"

namespace attrcluster {

std::vector<double> random_component(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    std::vector<double> centered(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) centered[i] = values[i] - mean;
    return centered;
}

namespace {

double pearson_centered(std::span<const double> x, std::span<const double> y,
                        const std::string& x_name, const std::string& y_name) {
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
    }
    if (sxx == 0.0) throw NumericError("pearson: zero variance in column " + x_name);
    if (syy == 0.0) throw NumericError("pearson: zero variance in column " + y_name);

    double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
    if (std::abs(r) > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "pearson: internal error, |r| = " << std::abs(r) << " exceeds 1";
        throw NumericError(msg.str());
    }
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;
    return r;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least 2 observations");
    const auto cx = random_component(x);
    const auto cy = random_component(y);
    return pearson_centered(cx, cy, "x", "y");
}

Matrix correlation_from_columns(const std::vector<std::vector<double>>& columns,
                                const std::vector<std::string>& names) {
    const std::size_t n = columns.size();
    auto name_of = [&](std::size_t c) {
        return c < names.size() ? names[c] : std::to_string(c);
    };

    std::vector<std::vector<double>> centered(n);
    for (std::size_t c = 0; c < n; ++c) {
        if (columns[c].size() != columns[0].size())
            throw std::invalid_argument("correlation: column length mismatch");
        if (columns[c].size() < 2)
            throw std::invalid_argument("correlation: need at least 2 observations");
        centered[c] = random_component(columns[c]);
    }

    Matrix R(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        R(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = pearson_centered(centered[i], centered[j], name_of(i), name_of(j));
            R(i, j) = r;
            R(j, i) = r;
        }
    }
    return R;
}

CorrelationMatrix correlation_matrix(const EncodedMatrix& matrix) {
    std::vector<std::vector<double>> columns;
    std::vector<std::string> short_labels, full_labels;
    columns.reserve(matrix.attributes.size());
    for (const auto& attr : matrix.attributes) {
        columns.push_back(attr.values);
        short_labels.push_back(attr.short_label);
        full_labels.push_back(attr.full_label);
    }
    Matrix R = correlation_from_columns(columns, short_labels);
    return {std::move(R), std::move(short_labels), std::move(full_labels)};
}

DeterminationMatrix determination_matrix(const CorrelationMatrix& correlation) {
    Matrix D(correlation.R.rows(), correlation.R.cols());
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            D(i, j) = correlation.R(i, j) * correlation.R(i, j);
    return {std::move(D), correlation.short_labels, correlation.full_labels};
}

}  // namespace attrcluster
