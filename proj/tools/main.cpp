// Command-line front end: clusters the attributes of a CSV dataset by their
// similarity to factors and writes report/graph files.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "attrcluster/errors.hpp"
#include "attrcluster/pipeline.hpp"

namespace {

attrcluster::ValueMap parse_value_map(const std::string& text) {
    const auto eq = text.find('=');
    const auto colon = text.find(':', eq == std::string::npos ? 0 : eq + 1);
    if (eq == std::string::npos || colon == std::string::npos || eq == 0)
        throw attrcluster::ConfigError("config: --map expects COL=from:to, got \"" + text + "\"");
    return {text.substr(0, eq), text.substr(eq + 1, colon - eq - 1), text.substr(colon + 1)};
}

}  // namespace

int main(int argc, char** argv) {
    using namespace attrcluster;

    CLI::App app{"Cluster numeric and nominal attributes by their similarity to factors"};

    std::string input;
    std::string delimiter = ",";
    std::string missing_token = "?";
    std::string policy = "drop-rows";
    std::vector<std::string> numeric_cols, nominal_cols, maps, formats;
    bool rank = false;
    double epsilon = 0.55;
    std::string rule = "both";
    std::string labels = "full";
    std::string out_dir = ".";
    bool dump_tables = false;
    bool include_singletons = false;
    std::string timestamp;

    app.add_option("--input", input, "Input CSV file (first row is the header)")->required();
    app.add_option("--delimiter", delimiter, "Field delimiter, a single character")
        ->check(CLI::Validator(
            [](std::string& s) {
                return s.size() == 1 ? std::string{} : std::string{"expected one character"};
            },
            "CHAR"))
        ->capture_default_str();
    app.add_option("--missing-token", missing_token, "Cell value treated as missing")
        ->capture_default_str();
    app.add_option("--missing-policy", policy,
                   "drop-rows, or drop-cols[:threshold] to drop sparse columns first")
        ->capture_default_str();
    app.add_option("--numeric", numeric_cols, "Force a column to be treated as numeric")
        ->take_all();
    app.add_option("--nominal", nominal_cols, "Force a column to be treated as nominal")
        ->take_all();
    app.add_option("--map", maps, "Cell substitution COL=from:to applied before typing")
        ->take_all();
    app.add_flag("--rank", rank, "Rank eligible columns before correlating");
    app.add_option("--epsilon", epsilon,
                   "Minimum per-attribute variance a factor model must reproduce, in (0.5, 1)")
        ->capture_default_str();
    app.add_option("--rule", rule, "Clustering rule: absolute, relative or both")
        ->check(CLI::IsMember({"absolute", "relative", "both"}))
        ->capture_default_str();
    app.add_option("--format", formats, "Output formats: dot, graphml, json (repeatable)")
        ->take_all();
    app.add_option("--labels", labels, "Node label style: short or full")
        ->check(CLI::IsMember({"short", "full"}))
        ->capture_default_str();
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_flag("--dump-tables", dump_tables, "Also write every matrix as CSV under tables/");
    app.add_flag("--include-singletons", include_singletons,
                 "Keep factors with a single similar attribute in the graphs");
    app.add_option("--timestamp", timestamp,
                   "Clock string echoed into the report (omitted when not given)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    RunConfig config;
    try {
        config.input = input;
        config.delimiter = delimiter[0];
        config.missing_token = missing_token;
        config.missing_policy = parse_missing_policy(policy);
        for (const auto& name : numeric_cols) config.kind_overrides[name] = ColumnKind::Numeric;
        for (const auto& name : nominal_cols) config.kind_overrides[name] = ColumnKind::Nominal;
        for (const auto& m : maps) config.value_maps.push_back(parse_value_map(m));
        config.rank = rank;
        config.epsilon = epsilon;
        config.rule = parse_rule(rule);
        if (!formats.empty()) {
            config.formats.clear();
            for (const auto& f : formats) config.formats.insert(parse_format(f));
        }
        config.labels = parse_label_mode(labels);
        config.out_dir = out_dir;
        config.dump_tables = dump_tables;
        config.include_singletons = include_singletons;
        if (!timestamp.empty()) config.timestamp = timestamp;

        const PipelineResult result = run_pipeline(config);

        const auto& selection = result.report.selection;
        std::cout << "attributes: " << result.report.correlation.short_labels.size()
                  << ", factors: " << selection.nof << " (min variance "
                  << selection.min_var_at_nof * 100.0 << "% at " << selection.min_var_attribute
                  << ")\n";
        for (const auto& [rule_used, summary] : result.report.clusters) {
            std::cout << to_string(rule_used) << ": " << summary.cluster_count << " cluster(s), "
                      << summary.clustered_attributes << " attribute(s) clustered, "
                      << summary.unclustered.size() << " unclustered\n";
        }
        for (const auto& file : result.written)
            std::cout << "wrote " << (config.out_dir / file).string() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
