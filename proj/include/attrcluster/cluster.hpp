#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "attrcluster/factors.hpp"

namespace attrcluster {

enum class MajorityRule { Absolute, Relative };

std::string to_string(MajorityRule rule);

/// Outcome of the majority-of-variance vote for one attribute. `factor` is
/// empty when no factor wins. `exact_tie` flags a best share landing exactly
/// on the threshold, which the strict rules treat as not similar.
struct SimilarityAssignment {
    std::size_t attribute = 0;  // row in V
    std::string short_label;
    std::string full_label;
    std::optional<std::size_t> factor;  // column in V
    double shared_variance = 0.0;       // best V entry of the row
    double row_total = 0.0;
    MajorityRule rule = MajorityRule::Absolute;
    bool exact_tie = false;
};

/// Vote every attribute row of the rotated, reduced V matrix.
/// Absolute: assigned iff best share > 0.5.
/// Relative: assigned iff best share > 0.5 * row_total.
/// Both thresholds are strict, so at most one factor can win a row.
std::vector<SimilarityAssignment> assign(const CommonVarianceMatrix& variance, MajorityRule rule);

struct GraphEdge {
    std::size_t attribute = 0;
    std::string short_label;
    std::string full_label;
    double shared_variance = 0.0;
};

struct Cluster {
    std::size_t factor = 0;
    std::string factor_name;
    std::vector<GraphEdge> members;  // attribute matrix order
};

/// Bipartite attribute-to-factor graph after pruning trivial clusters.
struct SimilarityGraph {
    std::vector<Cluster> clusters;                  // factor index order
    std::vector<SimilarityAssignment> unclustered;  // unassigned + members of pruned factors
    std::vector<std::string> pruned_factors;
    MajorityRule rule = MajorityRule::Absolute;

    std::size_t node_count() const;
    std::size_t edge_count() const;
};

/// Drop factors with fewer than two assigned attributes (fewer than one when
/// keep_singletons) and list their attributes as unclustered.
SimilarityGraph prune(const std::vector<SimilarityAssignment>& assignments,
                      const CommonVarianceMatrix& variance, bool keep_singletons = false);

struct ClusterSummary {
    MajorityRule rule = MajorityRule::Absolute;
    std::size_t cluster_count = 0;
    std::size_t clustered_attributes = 0;
    std::vector<Cluster> clusters;
    std::vector<SimilarityAssignment> unclustered;
    std::vector<std::string> pruned_factors;
};

ClusterSummary cluster_report(const SimilarityGraph& graph);

}  // namespace attrcluster
