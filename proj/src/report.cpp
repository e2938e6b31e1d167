#include "attrcluster/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "attrcluster/errors.hpp"

namespace attrcluster {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::filesystem::path& path, const char* op) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(std::string(op) + ": cannot write \"" + path.string() + "\"");
    return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path, const char* op) {
    out.flush();
    if (!out) throw DataError(std::string(op) + ": write failure on \"" + path.string() + "\"");
}

double r6(double v) { return round_sig(v, 6); }

ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(r6(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json fractions_json(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(r6(x));
    return arr;
}

ordered_json cluster_summary_json(const ClusterSummary& summary) {
    ordered_json j;
    j["rule"] = to_string(summary.rule);
    j["cluster_count"] = summary.cluster_count;
    j["clustered_attributes"] = summary.clustered_attributes;
    ordered_json clusters = ordered_json::array();
    for (const auto& c : summary.clusters) {
        ordered_json jc;
        jc["factor"] = c.factor_name;
        ordered_json members = ordered_json::array();
        for (const auto& m : c.members) {
            ordered_json jm;
            jm["short"] = m.short_label;
            jm["full"] = m.full_label;
            jm["shared_variance"] = r6(m.shared_variance);
            members.push_back(std::move(jm));
        }
        jc["members"] = std::move(members);
        clusters.push_back(std::move(jc));
    }
    j["clusters"] = std::move(clusters);
    ordered_json unclustered = ordered_json::array();
    for (const auto& a : summary.unclustered) {
        ordered_json ja;
        ja["short"] = a.short_label;
        ja["full"] = a.full_label;
        ja["best_shared_variance"] = r6(a.shared_variance);
        ja["row_total"] = r6(a.row_total);
        if (a.exact_tie) ja["note"] = "shared variance equals the threshold exactly";
        unclustered.push_back(std::move(ja));
    }
    j["unclustered"] = std::move(unclustered);
    j["pruned_factors"] = summary.pruned_factors;
    return j;
}

const std::string& pick_label(const GraphEdge& e, LabelMode mode) {
    return mode == LabelMode::Short ? e.short_label : e.full_label;
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string percent_label(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", fraction * 100.0);
    return buf;
}

std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

double round_sig(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

nlohmann::ordered_json to_json(const RunReport& report) {
    ordered_json j;

    ordered_json config;
    config["input"] = report.config.input;
    config["missing_token"] = report.config.missing_token;
    config["missing_policy"] = report.config.missing_policy;
    config["rank"] = report.config.rank;
    config["epsilon"] = r6(report.config.epsilon);
    config["rule"] = report.config.rule;
    config["labels"] = report.config.label_mode;
    if (report.config.timestamp)
        config["timestamp"] = *report.config.timestamp;
    else
        config["timestamp"] = nullptr;
    j["config"] = std::move(config);

    ordered_json cleaning;
    cleaning["rows_before"] = report.cleaning.rows_before;
    cleaning["rows_after"] = report.cleaning.rows_after;
    cleaning["dropped_rows"] = report.cleaning.dropped_rows;
    ordered_json dropped_cols = ordered_json::array();
    for (const auto& d : report.cleaning.dropped_columns) {
        ordered_json jd;
        jd["name"] = d.name;
        if (d.reason == DroppedColumn::Reason::MissingFraction) {
            jd["reason"] = "missing-fraction";
            jd["missing_fraction"] = r6(d.missing_fraction);
        } else {
            jd["reason"] = "constant";
        }
        dropped_cols.push_back(std::move(jd));
    }
    cleaning["dropped_columns"] = std::move(dropped_cols);
    j["cleaning"] = std::move(cleaning);

    ordered_json encoding = ordered_json::array();
    for (const auto& e : report.encoding_map) {
        ordered_json je;
        je["source"] = e.source;
        je["kind"] = e.kind;
        je["encoding"] = e.encoding;
        ordered_json classes = ordered_json::array();
        for (const auto& c : e.classes) {
            ordered_json jc;
            jc["value"] = c.value;
            jc["cardinality"] = c.cardinality;
            jc["class_index"] = c.class_index;
            classes.push_back(std::move(jc));
        }
        je["classes"] = std::move(classes);
        ordered_json attrs = ordered_json::array();
        for (const auto& [s, f] : e.attributes) {
            ordered_json ja;
            ja["short"] = s;
            ja["full"] = f;
            attrs.push_back(std::move(ja));
        }
        je["attributes"] = std::move(attrs);
        encoding.push_back(std::move(je));
    }
    j["encoding"] = std::move(encoding);
    j["ranked_attributes"] = report.ranked_attributes;

    ordered_json attrs = ordered_json::array();
    for (std::size_t i = 0; i < report.correlation.short_labels.size(); ++i) {
        ordered_json ja;
        ja["short"] = report.correlation.short_labels[i];
        ja["full"] = report.correlation.full_labels[i];
        attrs.push_back(std::move(ja));
    }
    j["attributes"] = std::move(attrs);

    j["correlation"] = matrix_json(report.correlation.R);
    j["determination"] = matrix_json(report.determination.D);
    j["eigenvalues"] = fractions_json(report.eigenvalues);

    ordered_json variance;
    ordered_json scree = ordered_json::array(), min_var = ordered_json::array(),
                 aver_var = ordered_json::array(), min_var_id = ordered_json::array();
    for (const auto& row : report.variance.rows) {
        scree.push_back(r6(row.scree_fraction));
        min_var.push_back(r6(row.min_var));
        aver_var.push_back(r6(row.aver_var));
        min_var_id.push_back(row.min_var_id);
    }
    variance["scree"] = std::move(scree);
    variance["min_var"] = std::move(min_var);
    variance["aver_var"] = std::move(aver_var);
    variance["min_var_id"] = std::move(min_var_id);
    j["variance_report"] = std::move(variance);

    ordered_json selection;
    selection["epsilon"] = r6(report.selection.epsilon);
    selection["nof"] = report.selection.nof;
    selection["min_var"] = r6(report.selection.min_var_at_nof);
    selection["min_var_attribute"] = report.selection.min_var_attribute;
    j["factor_selection"] = std::move(selection);

    ordered_json rotation;
    rotation["converged"] = report.rotation_converged;
    rotation["sweeps"] = report.rotation_sweeps;
    j["rotation"] = std::move(rotation);

    ordered_json cv;
    cv["factors"] = report.post_rotation.factor_names;
    ordered_json pre;
    pre["matrix"] = matrix_json(report.pre_rotation.V);
    pre["row_totals"] = fractions_json(report.pre_rotation.row_total);
    cv["pre_rotation"] = std::move(pre);
    ordered_json post;
    post["matrix"] = matrix_json(report.post_rotation.V);
    post["row_totals"] = fractions_json(report.post_rotation.row_total);
    cv["post_rotation"] = std::move(post);
    j["common_variance"] = std::move(cv);

    ordered_json clusters;
    for (const auto& [rule, summary] : report.clusters)
        clusters[to_string(rule)] = cluster_summary_json(summary);
    j["clusters"] = std::move(clusters);

    return j;
}

void emit_json(const RunReport& report, const std::filesystem::path& path) {
    auto out = open_out(path, "emit_json");
    out << to_json(report).dump(2) << "\n";
    close_out(out, path, "emit_json");
}

void emit_dot(const SimilarityGraph& graph, const std::filesystem::path& path,
              LabelMode label_mode) {
    auto out = open_out(path, "emit_dot");
    out << "digraph similarity_" << to_string(graph.rule) << " {\n";
    out << "  rankdir=LR;\n";
    for (const auto& c : graph.clusters)
        out << "  " << dot_quote(c.factor_name) << " [shape=box];\n";

    std::vector<std::pair<std::size_t, const GraphEdge*>> attribute_nodes;
    for (const auto& c : graph.clusters)
        for (const auto& m : c.members) attribute_nodes.emplace_back(m.attribute, &m);
    std::sort(attribute_nodes.begin(), attribute_nodes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& entry : attribute_nodes)
        out << "  " << dot_quote(pick_label(*entry.second, label_mode)) << " [shape=ellipse];\n";

    for (const auto& c : graph.clusters)
        for (const auto& m : c.members)
            out << "  " << dot_quote(pick_label(m, label_mode)) << " -> "
                << dot_quote(c.factor_name) << " [label=\"" << percent_label(m.shared_variance)
                << "\"];\n";
    out << "}\n";
    close_out(out, path, "emit_dot");
}

void emit_graphml(const SimilarityGraph& graph, const std::filesystem::path& path,
                  LabelMode label_mode) {
    auto out = open_out(path, "emit_graphml");
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    out << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n";
    out << "  <key id=\"shared_variance\" for=\"edge\" attr.name=\"shared_variance\""
           " attr.type=\"double\"/>\n";
    out << "  <key id=\"percent\" for=\"edge\" attr.name=\"percent\" attr.type=\"string\"/>\n";
    out << "  <graph id=\"similarity_" << to_string(graph.rule)
        << "\" edgedefault=\"directed\">\n";

    for (const auto& c : graph.clusters) {
        out << "    <node id=\"f" << c.factor << "\"><data key=\"label\">"
            << xml_escape(c.factor_name)
            << "</data><data key=\"kind\">factor</data></node>\n";
    }
    std::vector<const GraphEdge*> attribute_nodes;
    for (const auto& c : graph.clusters)
        for (const auto& m : c.members) attribute_nodes.push_back(&m);
    std::sort(attribute_nodes.begin(), attribute_nodes.end(),
              [](const GraphEdge* a, const GraphEdge* b) { return a->attribute < b->attribute; });
    for (const auto* m : attribute_nodes) {
        out << "    <node id=\"a" << m->attribute << "\"><data key=\"label\">"
            << xml_escape(pick_label(*m, label_mode))
            << "</data><data key=\"kind\">attribute</data></node>\n";
    }
    for (const auto& c : graph.clusters)
        for (const auto& m : c.members) {
            out << "    <edge source=\"a" << m.attribute << "\" target=\"f" << c.factor
                << "\"><data key=\"shared_variance\">" << format_g6(r6(m.shared_variance))
                << "</data><data key=\"percent\">" << percent_label(m.shared_variance)
                << "</data></edge>\n";
        }
    out << "  </graph>\n";
    out << "</graphml>\n";
    close_out(out, path, "emit_graphml");
}

void emit_csv_matrix(const Matrix& m, const std::vector<std::string>& row_labels,
                     const std::vector<std::string>& col_labels,
                     const std::filesystem::path& path) {
    auto out = open_out(path, "emit_csv_matrix");
    auto csv_quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q.push_back(c);
        }
        return q + "\"";
    };
    out << "";
    for (const auto& c : col_labels) out << "," << csv_quote(c);
    out << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << csv_quote(i < row_labels.size() ? row_labels[i] : std::to_string(i));
        for (std::size_t j = 0; j < m.cols(); ++j) out << "," << format_g6(r6(m(i, j)));
        out << "\n";
    }
    close_out(out, path, "emit_csv_matrix");
}

void emit_csv_variance_report(const VarianceReport& report, const std::filesystem::path& path) {
    auto out = open_out(path, "emit_csv_variance_report");
    out << "Factors";
    for (std::size_t j = 0; j < report.rows.size(); ++j) out << "," << (j + 1);
    out << "\nScreePlt";
    for (const auto& row : report.rows) out << "," << percent_label(row.scree_fraction);
    out << "\nMinVar";
    for (const auto& row : report.rows) out << "," << percent_label(row.min_var);
    out << "\nAverVar";
    for (const auto& row : report.rows) out << "," << percent_label(row.aver_var);
    out << "\nMinVarId";
    for (const auto& row : report.rows) out << "," << row.min_var_id;
    out << "\n";
    close_out(out, path, "emit_csv_variance_report");
}

}  // namespace attrcluster
