#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "attrcluster/cluster.hpp"
#include "attrcluster/correlation.hpp"
#include "attrcluster/dataset.hpp"
#include "attrcluster/factors.hpp"

namespace attrcluster {

enum class LabelMode { Short, Full };

/// Everything one run produces, from config echo to cluster summaries.
/// All stored reals are fractions in [0, 1] (or correlations in [-1, 1]);
/// percentages are rendered only at emission time.
struct RunReport {
    struct ConfigEcho {
        std::string input;
        std::string missing_token;
        std::string missing_policy;  // "drop-rows" or "drop-cols:<threshold>"
        bool rank = false;
        double epsilon = 0.0;
        std::string rule;
        std::string label_mode;
        std::optional<std::string> timestamp;  // caller-supplied clock, never implicit
    };

    struct EncodingEntry {
        std::string source;    // clean-table column name
        std::string kind;      // "numeric" | "nominal"
        std::string encoding;  // "passthrough" | "cardinality" | "one-hot"
        std::vector<ClassStats> classes;
        std::vector<std::pair<std::string, std::string>> attributes;  // short, full
    };

    ConfigEcho config;
    CleaningLog cleaning;
    std::vector<EncodingEntry> encoding_map;
    std::vector<std::string> ranked_attributes;  // short labels
    CorrelationMatrix correlation;
    DeterminationMatrix determination;
    std::vector<double> eigenvalues;
    VarianceReport variance;
    FactorSelection selection;
    CommonVarianceMatrix pre_rotation;
    CommonVarianceMatrix post_rotation;
    bool rotation_converged = true;
    std::size_t rotation_sweeps = 0;
    std::vector<std::pair<MajorityRule, ClusterSummary>> clusters;
};

/// Round to `digits` significant decimal digits. Report emitters use 6.
double round_sig(double value, int digits);

/// Stable-key-order JSON document with reals at 6 significant digits.
nlohmann::ordered_json to_json(const RunReport& report);

void emit_json(const RunReport& report, const std::filesystem::path& path);

/// Graphviz digraph: factor nodes are boxes, attribute nodes ellipses, one
/// attribute->factor edge per assignment labeled with a one-decimal percent.
/// Emission order is deterministic (factors by index, attributes by matrix
/// order).
void emit_dot(const SimilarityGraph& graph, const std::filesystem::path& path,
              LabelMode label_mode);

/// Same graph as GraphML (yEd-compatible); the edge weight is stored as a
/// numeric "shared_variance" attribute holding the fraction.
void emit_graphml(const SimilarityGraph& graph, const std::filesystem::path& path,
                  LabelMode label_mode);

/// Matrix dump with row/column labels, values at 6 significant digits.
void emit_csv_matrix(const Matrix& m, const std::vector<std::string>& row_labels,
                     const std::vector<std::string>& col_labels,
                     const std::filesystem::path& path);

/// Variance diagnostics in the ScreePlt/MinVar/AverVar/MinVarId row layout.
void emit_csv_variance_report(const VarianceReport& report, const std::filesystem::path& path);

}  // namespace attrcluster
