#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "attrcluster/report.hpp"

namespace attrcluster {

enum class RuleChoice { Absolute, Relative, Both };
enum class OutputFormat { Dot, GraphML, Json };

/// Cell-level value substitution applied before kind inference, e.g. mapping
/// ordinal strings like "10-19" to "1".
struct ValueMap {
    std::string column;
    std::string from;
    std::string to;
};

struct RunConfig {
    std::filesystem::path input;
    char delimiter = ',';
    std::string missing_token = "?";
    MissingPolicy missing_policy = MissingPolicy::drop_rows();
    std::map<std::string, ColumnKind> kind_overrides;
    std::vector<ValueMap> value_maps;
    bool rank = false;
    double epsilon = 0.55;
    RuleChoice rule = RuleChoice::Both;
    std::set<OutputFormat> formats = {OutputFormat::Dot, OutputFormat::Json};
    LabelMode labels = LabelMode::Full;
    std::filesystem::path out_dir = ".";
    bool dump_tables = false;
    bool include_singletons = false;
    std::optional<std::string> timestamp;
};

struct PipelineResult {
    RunReport report;
    std::vector<std::pair<MajorityRule, SimilarityGraph>> graphs;
    std::vector<std::filesystem::path> written;  // relative to out_dir
};

/// Run the whole clustering pipeline: load, clean, encode, optionally rank,
/// correlate, eigendecompose, select the factor count, rotate, cluster under
/// the configured rule(s), and emit the requested files under out_dir.
/// Throws ConfigError / DataError / NumericError with stage-tagged messages.
PipelineResult run_pipeline(const RunConfig& config);

// Config-string parsers shared by the CLI and the Python bindings; all throw
// ConfigError on malformed input.
MissingPolicy parse_missing_policy(const std::string& text);  // drop-rows | drop-cols[:t]
RuleChoice parse_rule(const std::string& text);               // absolute | relative | both
LabelMode parse_label_mode(const std::string& text);          // short | full
OutputFormat parse_format(const std::string& text);           // dot | graphml | json

}  // namespace attrcluster
