#include "attrcluster/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "attrcluster/errors.hpp"
#include "attrcluster/ranking.hpp"

namespace attrcluster {

namespace {

std::string policy_string(const MissingPolicy& policy) {
    if (policy.kind == MissingPolicy::Kind::DropRows) return "drop-rows";
    std::ostringstream s;
    s << "drop-cols:" << policy.threshold;
    return s.str();
}

std::string rule_string(RuleChoice rule) {
    switch (rule) {
        case RuleChoice::Absolute: return "absolute";
        case RuleChoice::Relative: return "relative";
        default: return "both";
    }
}

std::vector<RunReport::EncodingEntry> build_encoding_map(const CleanTable& table,
                                                         const EncodedMatrix& matrix) {
    std::vector<RunReport::EncodingEntry> entries(table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        entries[c].source = table.columns[c].name;
        entries[c].kind =
            table.columns[c].kind == ColumnKind::Numeric ? "numeric" : "nominal";
        if (table.columns[c].kind == ColumnKind::Nominal)
            entries[c].classes = class_cardinalities(table.columns[c].nominal());
    }
    for (const auto& attr : matrix.attributes) {
        auto& entry = entries[attr.origin];
        entry.attributes.emplace_back(attr.short_label, attr.full_label);
        switch (attr.encoding) {
            case Encoding::Passthrough: entry.encoding = "passthrough"; break;
            case Encoding::Cardinality: entry.encoding = "cardinality"; break;
            case Encoding::OneHotClass: entry.encoding = "one-hot"; break;
        }
    }
    return entries;
}

void validate(const RunConfig& config) {
    if (config.input.empty()) throw ConfigError("config: no input file given");
    if (!(config.epsilon > 0.5) || !(config.epsilon < 1.0))
        throw ConfigError("config: epsilon must lie in (0.5, 1)");
    if (config.missing_policy.kind == MissingPolicy::Kind::DropColumns &&
        (config.missing_policy.threshold < 0.0 || config.missing_policy.threshold > 1.0))
        throw ConfigError("config: drop-cols threshold must lie in [0, 1]");
}

void apply_value_maps(RawTable& table, const std::vector<ValueMap>& maps) {
    for (const auto& map : maps) {
        const auto it = std::find(table.header.begin(), table.header.end(), map.column);
        if (it == table.header.end())
            throw ConfigError("config: --map names unknown column \"" + map.column + "\"");
        const std::size_t c = static_cast<std::size_t>(it - table.header.begin());
        for (auto& row : table.rows)
            if (row[c] == map.from) row[c] = map.to;
    }
}

}  // namespace

MissingPolicy parse_missing_policy(const std::string& text) {
    if (text == "drop-rows") return MissingPolicy::drop_rows();
    if (text == "drop-cols") return MissingPolicy::drop_columns();
    const std::string prefix = "drop-cols:";
    if (text.rfind(prefix, 0) == 0) {
        try {
            std::size_t used = 0;
            const double t = std::stod(text.substr(prefix.size()), &used);
            if (used != text.size() - prefix.size()) throw std::invalid_argument(text);
            return MissingPolicy::drop_columns(t);
        } catch (const std::exception&) {
            throw ConfigError("config: bad drop-cols threshold in \"" + text + "\"");
        }
    }
    throw ConfigError("config: missing policy must be drop-rows or drop-cols[:threshold], got \"" +
                      text + "\"");
}

RuleChoice parse_rule(const std::string& text) {
    if (text == "absolute") return RuleChoice::Absolute;
    if (text == "relative") return RuleChoice::Relative;
    if (text == "both") return RuleChoice::Both;
    throw ConfigError("config: rule must be absolute, relative or both, got \"" + text + "\"");
}

LabelMode parse_label_mode(const std::string& text) {
    if (text == "short") return LabelMode::Short;
    if (text == "full") return LabelMode::Full;
    throw ConfigError("config: labels must be short or full, got \"" + text + "\"");
}

OutputFormat parse_format(const std::string& text) {
    if (text == "dot") return OutputFormat::Dot;
    if (text == "graphml") return OutputFormat::GraphML;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("config: format must be dot, graphml or json, got \"" + text + "\"");
}

PipelineResult run_pipeline(const RunConfig& config) {
    validate(config);

    RawTable raw = load_csv(config.input, config.missing_token, config.delimiter);
    apply_value_maps(raw, config.value_maps);
    const auto kinds = infer_kinds(raw, config.kind_overrides);
    auto cleaned = clean(raw, kinds, config.missing_policy);

    EncodedMatrix encoded = encode_table(cleaned.table);
    const auto encoding_map = build_encoding_map(cleaned.table, encoded);

    std::vector<std::string> ranked_labels;
    if (config.rank) {
        for (std::size_t c : select_rankable(encoded))
            ranked_labels.push_back(encoded.attributes[c].short_label);
        encoded = apply_ranking(encoded);
    }

    const CorrelationMatrix correlation = correlation_matrix(encoded);
    const DeterminationMatrix determination = determination_matrix(correlation);
    const EigenDecomposition eig = eigh_symmetric(correlation);

    const LoadingMatrix loadings =
        full_loadings(eig, correlation.short_labels, correlation.full_labels);
    const CommonVarianceMatrix full_variance = common_variance(loadings);
    const CumulativeVarianceMatrix cumulative = cumulative_variance(full_variance);
    const FactorSelection selection = select_factor_count(cumulative, config.epsilon);
    const VarianceReport variance = variance_report(eig, cumulative);

    const LoadingMatrix reduced = reduce(loadings, selection.nof);
    const CommonVarianceMatrix pre_rotation = common_variance(reduced);
    const RotationResult rotation = varimax_rotate(reduced);
    const CommonVarianceMatrix post_rotation = common_variance(rotation.loadings);

    PipelineResult result;
    auto& report = result.report;
    report.config = {config.input.string(),
                     config.missing_token,
                     policy_string(config.missing_policy),
                     config.rank,
                     config.epsilon,
                     rule_string(config.rule),
                     config.labels == LabelMode::Short ? "short" : "full",
                     config.timestamp};
    report.cleaning = cleaned.log;
    report.encoding_map = encoding_map;
    report.ranked_attributes = ranked_labels;
    report.correlation = correlation;
    report.determination = determination;
    report.eigenvalues = eig.lambda;
    report.variance = variance;
    report.selection = selection;
    report.pre_rotation = pre_rotation;
    report.post_rotation = post_rotation;
    report.rotation_converged = rotation.converged;
    report.rotation_sweeps = rotation.sweeps;

    std::vector<MajorityRule> rules;
    if (config.rule == RuleChoice::Absolute || config.rule == RuleChoice::Both)
        rules.push_back(MajorityRule::Absolute);
    if (config.rule == RuleChoice::Relative || config.rule == RuleChoice::Both)
        rules.push_back(MajorityRule::Relative);

    for (MajorityRule rule : rules) {
        const auto assignments = assign(post_rotation, rule);
        SimilarityGraph graph = prune(assignments, post_rotation, config.include_singletons);
        report.clusters.emplace_back(rule, cluster_report(graph));
        result.graphs.emplace_back(rule, std::move(graph));
    }

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec)
        throw ConfigError("config: cannot create output directory \"" +
                          config.out_dir.string() + "\": " + ec.message());

    auto emit = [&](const std::filesystem::path& name, auto&& writer) {
        writer(config.out_dir / name);
        result.written.push_back(name);
    };

    if (config.formats.count(OutputFormat::Json))
        emit("report.json", [&](const auto& p) { emit_json(report, p); });
    for (const auto& [rule, graph] : result.graphs) {
        const std::string stem = "clusters_" + to_string(rule);
        if (config.formats.count(OutputFormat::Dot))
            emit(stem + ".dot", [&](const auto& p) { emit_dot(graph, p, config.labels); });
        if (config.formats.count(OutputFormat::GraphML))
            emit(stem + ".graphml",
                 [&](const auto& p) { emit_graphml(graph, p, config.labels); });
    }

    if (config.dump_tables) {
        const auto table_dir = config.out_dir / "tables";
        std::filesystem::create_directories(table_dir, ec);
        if (ec)
            throw ConfigError("config: cannot create \"" + table_dir.string() +
                              "\": " + ec.message());
        const auto& labels = correlation.short_labels;
        auto dump = [&](const std::string& name, const Matrix& m,
                        const std::vector<std::string>& cols) {
            emit_csv_matrix(m, labels, cols, table_dir / name);
            result.written.push_back(std::filesystem::path("tables") / name);
        };
        dump("correlation.csv", correlation.R, labels);
        dump("determination.csv", determination.D, labels);
        dump("loadings_full.csv", loadings.L, loadings.factor_names);
        dump("common_variance_full.csv", full_variance.V, full_variance.factor_names);
        dump("cumulative_variance.csv", cumulative.VC, full_variance.factor_names);
        dump("loadings_reduced.csv", reduced.L, reduced.factor_names);
        dump("common_variance_reduced.csv", pre_rotation.V, pre_rotation.factor_names);
        dump("loadings_rotated.csv", rotation.loadings.L, rotation.loadings.factor_names);
        dump("common_variance_rotated.csv", post_rotation.V, post_rotation.factor_names);
        emit_csv_variance_report(variance, table_dir / "variance_report.csv");
        result.written.push_back(std::filesystem::path("tables") / "variance_report.csv");
    }

    return result;
}

}  // namespace attrcluster
