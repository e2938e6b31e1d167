#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "attrcluster/encoder.hpp"

namespace attrcluster {

/// Tied ranks: each value receives the mean of the 1-based positions of all
/// equal values in the non-decreasing sort, aligned back to input order.
/// The rank sum is always n(n+1)/2. Throws NumericError on non-finite input.
std::vector<double> rank_with_ties(std::span<const double> values);

/// Indices of columns eligible for ranking: not one-hot indicator columns and
/// not dichotomous (more than two distinct values). Sorted ascending.
std::vector<std::size_t> select_rankable(const EncodedMatrix& matrix);

/// Copy of the matrix with rank_with_ties applied to every selected column.
/// Labels and provenance are unchanged.
EncodedMatrix apply_ranking(const EncodedMatrix& matrix);

}  // namespace attrcluster
