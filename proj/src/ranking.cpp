#include "attrcluster/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "attrcluster/errors.hpp"

namespace attrcluster {

std::vector<double> rank_with_ties(std::span<const double> values) {
    const std::size_t n = values.size();
    for (double v : values)
        if (!std::isfinite(v)) throw NumericError("rank_with_ties: non-finite value");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i+1 .. j+1 (1-based) share the mean rank
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

std::vector<std::size_t> select_rankable(const EncodedMatrix& matrix) {
    std::vector<std::size_t> selected;
    for (std::size_t c = 0; c < matrix.attributes.size(); ++c) {
        const auto& attr = matrix.attributes[c];
        if (attr.encoding == Encoding::OneHotClass) continue;
        std::set<double> distinct(attr.values.begin(), attr.values.end());
        if (distinct.size() <= 2) continue;  // ranking a dichotomy is an affine map
        selected.push_back(c);
    }
    return selected;
}

EncodedMatrix apply_ranking(const EncodedMatrix& matrix) {
    EncodedMatrix out = matrix;
    for (std::size_t c : select_rankable(matrix))
        out.attributes[c].values = rank_with_ties(matrix.attributes[c].values);
    return out;
}

}  // namespace attrcluster
