#pragma once

#include <span>
#include <string>
#include <vector>

#include "attrcluster/encoder.hpp"
#include "attrcluster/matrix.hpp"

namespace attrcluster {

struct CorrelationMatrix {
    Matrix R;  // symmetric, unit diagonal, entries clamped to [-1, 1]
    std::vector<std::string> short_labels;
    std::vector<std::string> full_labels;
};

struct DeterminationMatrix {
    Matrix D;  // entrywise square of R
    std::vector<std::string> short_labels;
    std::vector<std::string> full_labels;
};

/// values - mean(values); the centered "random component" vector.
std::vector<double> random_component(std::span<const double> values);

/// Pearson correlation via the centered two-pass formula with a fixed
/// accumulation order. Throws NumericError when either vector is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pairwise correlations over column vectors. Each cell is computed once and
/// mirrored, the diagonal is exactly 1. `names` is only used to identify the
/// offending column in zero-variance errors.
Matrix correlation_from_columns(const std::vector<std::vector<double>>& columns,
                                const std::vector<std::string>& names = {});

CorrelationMatrix correlation_matrix(const EncodedMatrix& matrix);

DeterminationMatrix determination_matrix(const CorrelationMatrix& correlation);

}  // namespace attrcluster
