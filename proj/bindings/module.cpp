// Python bindings for the attribute-clustering core. Matrix arguments are
// NumPy arrays; attribute data is column-per-attribute, matching the C++ API.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "attrcluster/cluster.hpp"
#include "attrcluster/correlation.hpp"
#include "attrcluster/eigensolver.hpp"
#include "attrcluster/encoder.hpp"
#include "attrcluster/errors.hpp"
#include "attrcluster/factors.hpp"
#include "attrcluster/pipeline.hpp"
#include "attrcluster/ranking.hpp"

namespace py = pybind11;
using namespace attrcluster;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& arr, const char* name) {
    const auto buf = arr.request();
    if (buf.ndim != 2) throw std::invalid_argument(std::string(name) + ": expected a 2-d array");
    Matrix m(static_cast<std::size_t>(buf.shape[0]), static_cast<std::size_t>(buf.shape[1]));
    const double* ptr = static_cast<const double*>(buf.ptr);
    std::copy(ptr, ptr + m.rows() * m.cols(), m.data().begin());
    return m;
}

py::array_t<double> from_matrix(const Matrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), arr.mutable_data());
    return arr;
}

std::vector<std::vector<double>> to_columns(const DoubleArray& arr, const char* name) {
    const Matrix m = to_matrix(arr, name);
    std::vector<std::vector<double>> columns(m.cols(), std::vector<double>(m.rows()));
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) columns[j][i] = m(i, j);
    return columns;
}

std::vector<std::string> index_labels(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "A" + std::to_string(i + 1);
    return labels;
}

LoadingMatrix loading_matrix_from(const DoubleArray& arr, const char* name) {
    LoadingMatrix lm;
    lm.L = to_matrix(arr, name);
    lm.short_labels = index_labels(lm.L.rows());
    lm.full_labels = lm.short_labels;
    for (std::size_t j = 0; j < lm.L.cols(); ++j)
        lm.factor_names.push_back("F" + std::to_string(j + 1));
    return lm;
}

py::tuple run_pipeline_py(const std::string& input, const std::string& delimiter,
                          const std::string& missing_token, const std::string& missing_policy,
                          const std::vector<std::string>& numeric,
                          const std::vector<std::string>& nominal,
                          const std::vector<std::tuple<std::string, std::string, std::string>>&
                              value_maps,
                          bool rank, double epsilon, const std::string& rule,
                          const std::vector<std::string>& formats, const std::string& labels,
                          const std::string& out_dir, bool dump_tables, bool include_singletons,
                          const std::optional<std::string>& timestamp) {
    if (delimiter.size() != 1)
        throw ConfigError("config: delimiter must be a single character");
    RunConfig config;
    config.input = input;
    config.delimiter = delimiter[0];
    config.missing_token = missing_token;
    config.missing_policy = parse_missing_policy(missing_policy);
    for (const auto& name : numeric) config.kind_overrides[name] = ColumnKind::Numeric;
    for (const auto& name : nominal) config.kind_overrides[name] = ColumnKind::Nominal;
    for (const auto& [col, from, to] : value_maps) config.value_maps.push_back({col, from, to});
    config.rank = rank;
    config.epsilon = epsilon;
    config.rule = parse_rule(rule);
    config.formats.clear();
    for (const auto& f : formats) config.formats.insert(parse_format(f));
    config.labels = parse_label_mode(labels);
    config.out_dir = out_dir;
    config.dump_tables = dump_tables;
    config.include_singletons = include_singletons;
    config.timestamp = timestamp;

    const PipelineResult result = run_pipeline(config);
    std::vector<std::string> written;
    for (const auto& p : result.written) written.push_back(p.string());
    return py::make_tuple(to_json(result.report).dump(), written);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Clustering of numeric and nominal attributes via factor analysis";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.def(
        "rank_with_ties",
        [](const std::vector<double>& values) { return rank_with_ties(values); },
        py::arg("values"),
        "Tied ranks of a numeric vector (equal values share the mean position).");

    m.def(
        "pearson",
        [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); },
        py::arg("x"), py::arg("y"), "Pearson correlation of two equally long vectors.");

    m.def(
        "correlation_matrix",
        [](const DoubleArray& data) {
            return from_matrix(correlation_from_columns(to_columns(data, "correlation_matrix")));
        },
        py::arg("data"),
        "Correlation matrix of a rows-by-attributes data array (attributes are columns).");

    m.def(
        "class_cardinalities",
        [](const std::vector<std::string>& column) {
            py::list out;
            for (const auto& s : class_cardinalities(column)) {
                py::dict d;
                d["value"] = s.value;
                d["cardinality"] = s.cardinality;
                d["class_index"] = s.class_index;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("column"), "Cardinality and first-appearance index of each distinct value.");

    m.def(
        "eigh_symmetric",
        [](const DoubleArray& r) {
            const auto eig = eigh_symmetric(to_matrix(r, "eigh_symmetric"));
            return py::make_tuple(eig.lambda, from_matrix(eig.U));
        },
        py::arg("correlation"),
        "Eigenvalues (non-increasing) and eigenvector columns of a correlation matrix.");

    m.def(
        "full_loadings",
        [](const std::vector<double>& lambda, const DoubleArray& u) {
            EigenDecomposition eig{lambda, to_matrix(u, "full_loadings")};
            return from_matrix(full_loadings(eig, index_labels(eig.U.rows())).L);
        },
        py::arg("eigenvalues"), py::arg("eigenvectors"),
        "Full factor loading matrix: eigenvectors scaled by sqrt(eigenvalue).");

    m.def(
        "cumulative_variance",
        [](const DoubleArray& v) {
            CommonVarianceMatrix variance;
            variance.V = to_matrix(v, "cumulative_variance");
            variance.short_labels = index_labels(variance.V.rows());
            variance.full_labels = variance.short_labels;
            return from_matrix(cumulative_variance(variance).VC);
        },
        py::arg("common_variance"),
        "Row-wise prefix sums of a full (square) common-variance matrix.");

    m.def(
        "select_factor_count",
        [](const DoubleArray& vc, double epsilon) {
            CumulativeVarianceMatrix cumulative;
            cumulative.VC = to_matrix(vc, "select_factor_count");
            const std::size_t n = cumulative.VC.rows();
            cumulative.short_labels = index_labels(n);
            cumulative.full_labels = cumulative.short_labels;
            cumulative.column_min.resize(cumulative.VC.cols());
            cumulative.column_mean.resize(cumulative.VC.cols());
            for (std::size_t j = 0; j < cumulative.VC.cols(); ++j) {
                double lo = cumulative.VC(0, j), sum = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    sum += cumulative.VC(i, j);
                    lo = std::min(lo, cumulative.VC(i, j));
                }
                cumulative.column_min[j] = lo;
                cumulative.column_mean[j] = sum / static_cast<double>(n);
            }
            const auto sel = select_factor_count(cumulative, epsilon);
            py::dict out;
            out["nof"] = sel.nof;
            out["min_var"] = sel.min_var_at_nof;
            out["min_var_attribute"] = sel.min_var_attribute;
            return out;
        },
        py::arg("cumulative_variance"), py::arg("epsilon") = 0.55,
        "Smallest factor count whose per-attribute cumulative variance exceeds epsilon.");

    m.def(
        "varimax_rotate",
        [](const DoubleArray& l) {
            const auto result = varimax_rotate(loading_matrix_from(l, "varimax_rotate"));
            py::dict out;
            out["loadings"] = from_matrix(result.loadings.L);
            out["converged"] = result.converged;
            out["sweeps"] = result.sweeps;
            return out;
        },
        py::arg("loadings"),
        "Varimax rotation with Kaiser normalization; canonical column order and signs.");

    m.def(
        "simulate_from_factors",
        [](const DoubleArray& l, const DoubleArray& f) {
            return from_matrix(simulate_from_factors(loading_matrix_from(l, "loadings"),
                                                     to_matrix(f, "factor_draws")));
        },
        py::arg("loadings"), py::arg("factor_draws"),
        "Simulated standardized observations X = F L^T.");

    m.def("_run_pipeline", &run_pipeline_py, py::arg("input"), py::arg("delimiter") = ",",
          py::arg("missing_token") = "?", py::arg("missing_policy") = "drop-rows",
          py::arg("numeric") = std::vector<std::string>{},
          py::arg("nominal") = std::vector<std::string>{},
          py::arg("value_maps") = std::vector<std::tuple<std::string, std::string, std::string>>{},
          py::arg("rank") = false, py::arg("epsilon") = 0.55, py::arg("rule") = "both",
          py::arg("formats") = std::vector<std::string>{"dot", "json"},
          py::arg("labels") = "full", py::arg("out_dir") = ".", py::arg("dump_tables") = false,
          py::arg("include_singletons") = false,
          py::arg("timestamp") = std::optional<std::string>{},
          "Run the full pipeline; returns (report_json, written_files).");
}
