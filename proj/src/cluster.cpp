#include "attrcluster/cluster.hpp"

#include <algorithm>
#include <map>

namespace attrcluster {

std::string to_string(MajorityRule rule) {
    return rule == MajorityRule::Absolute ? "absolute" : "relative";
}

std::vector<SimilarityAssignment> assign(const CommonVarianceMatrix& variance,
                                         MajorityRule rule) {
    const std::size_t n = variance.V.rows();
    const std::size_t k = variance.V.cols();

    std::vector<SimilarityAssignment> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < k; ++j)
            if (variance.V(i, j) > variance.V(i, best)) best = j;

        SimilarityAssignment a;
        a.attribute = i;
        a.short_label = variance.short_labels[i];
        a.full_label = variance.full_labels[i];
        a.shared_variance = variance.V(i, best);
        a.row_total = variance.row_total[i];
        a.rule = rule;

        const double threshold =
            rule == MajorityRule::Absolute ? 0.5 : 0.5 * a.row_total;
        if (a.shared_variance > threshold)
            a.factor = best;
        else
            a.exact_tie = (a.shared_variance == threshold);
        out.push_back(std::move(a));
    }
    return out;
}

std::size_t SimilarityGraph::node_count() const {
    std::size_t nodes = clusters.size();
    for (const auto& c : clusters) nodes += c.members.size();
    return nodes;
}

std::size_t SimilarityGraph::edge_count() const {
    std::size_t edges = 0;
    for (const auto& c : clusters) edges += c.members.size();
    return edges;
}

SimilarityGraph prune(const std::vector<SimilarityAssignment>& assignments,
                      const CommonVarianceMatrix& variance, bool keep_singletons) {
    SimilarityGraph graph;
    if (!assignments.empty()) graph.rule = assignments.front().rule;

    std::map<std::size_t, std::vector<const SimilarityAssignment*>> by_factor;
    for (const auto& a : assignments) {
        if (a.factor)
            by_factor[*a.factor].push_back(&a);
        else
            graph.unclustered.push_back(a);
    }

    const std::size_t min_members = keep_singletons ? 1 : 2;
    for (std::size_t j = 0; j < variance.V.cols(); ++j) {
        const auto it = by_factor.find(j);
        if (it == by_factor.end()) continue;
        if (it->second.size() < min_members) {
            graph.pruned_factors.push_back(variance.factor_names[j]);
            for (const auto* a : it->second) graph.unclustered.push_back(*a);
            continue;
        }
        Cluster cluster;
        cluster.factor = j;
        cluster.factor_name = variance.factor_names[j];
        for (const auto* a : it->second)
            cluster.members.push_back(
                {a->attribute, a->short_label, a->full_label, a->shared_variance});
        graph.clusters.push_back(std::move(cluster));
    }

    // unclustered in attribute matrix order
    std::sort(graph.unclustered.begin(), graph.unclustered.end(),
              [](const SimilarityAssignment& a, const SimilarityAssignment& b) {
                  return a.attribute < b.attribute;
              });
    return graph;
}

ClusterSummary cluster_report(const SimilarityGraph& graph) {
    ClusterSummary summary;
    summary.rule = graph.rule;
    summary.clusters = graph.clusters;
    summary.unclustered = graph.unclustered;
    summary.pruned_factors = graph.pruned_factors;
    summary.cluster_count = graph.clusters.size();
    for (const auto& c : graph.clusters) summary.clustered_attributes += c.members.size();
    return summary;
}

}  // namespace attrcluster
