#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "attrcluster/eigensolver.hpp"
#include "attrcluster/matrix.hpp"

namespace attrcluster {

struct LoadingMatrix {
    Matrix L;  // n attributes x k factors
    std::vector<std::string> short_labels;
    std::vector<std::string> full_labels;
    std::vector<std::string> factor_names;  // "F1".."Fk", positional

    std::size_t n_attributes() const { return L.rows(); }
    std::size_t n_factors() const { return L.cols(); }
};

/// V = L entrywise squared; V[i][j] is the fraction of attribute i's variance
/// reproduced by factor j. row_total sums over the retained factors.
struct CommonVarianceMatrix {
    Matrix V;
    std::vector<double> row_total;
    std::vector<std::string> short_labels;
    std::vector<std::string> full_labels;
    std::vector<std::string> factor_names;
};

/// Row-wise prefix sums of the full V matrix, with per-column minima/means.
struct CumulativeVarianceMatrix {
    Matrix VC;
    std::vector<double> column_min;
    std::vector<double> column_mean;
    std::vector<std::string> short_labels;
    std::vector<std::string> full_labels;
};

struct FactorSelection {
    std::size_t nof = 0;  // selected number of factors, 1-based count
    double epsilon = 0.0;
    double min_var_at_nof = 0.0;
    std::string min_var_attribute;  // short label of the arg-min attribute
};

/// Table of per-factor-count diagnostics: eigenvalue fraction (scree), worst
/// and mean cumulative variance, and the least-represented attribute.
struct VarianceReport {
    struct Row {
        double scree_fraction = 0.0;
        double min_var = 0.0;
        double aver_var = 0.0;
        std::string min_var_id;
    };
    std::vector<Row> rows;  // rows[j] describes a model with j+1 factors
};

struct RotationResult {
    LoadingMatrix loadings;
    bool converged = true;
    std::size_t sweeps = 0;
    std::vector<double> objective_trace;  // criterion after each sweep, non-decreasing
};

/// L[:,j] = sqrt(lambda[j]) * U[:,j] with k = n.
LoadingMatrix full_loadings(const EigenDecomposition& eig, std::vector<std::string> short_labels,
                            std::vector<std::string> full_labels = {});

CommonVarianceMatrix common_variance(const LoadingMatrix& loadings);

/// Requires the full model (k = n); the last column equals 1 up to round-off.
CumulativeVarianceMatrix cumulative_variance(const CommonVarianceMatrix& variance);

/// Smallest factor count whose per-attribute cumulative variance minimum
/// exceeds epsilon. epsilon must lie in (0.5, 1) (ConfigError otherwise).
FactorSelection select_factor_count(const CumulativeVarianceMatrix& cumulative, double epsilon);

VarianceReport variance_report(const EigenDecomposition& eig,
                               const CumulativeVarianceMatrix& cumulative);

/// Keep the first `nof` factor columns.
LoadingMatrix reduce(const LoadingMatrix& loadings, std::size_t nof);

/// Varimax rotation with Kaiser row normalization: rows are scaled to unit
/// length, factor planes are rotated pairwise by the closed-form optimal
/// angle (a rotation is skipped when it does not increase the criterion),
/// and the original row lengths are restored afterwards. Zero rows are left
/// untouched. Converges when the relative criterion gain of a sweep falls
/// below 1e-10, with a budget of 1000 sweeps; running out of budget yields
/// converged=false but still returns the (orthogonally rotated) iterate.
///
/// The result is canonicalized: columns ordered by descending explained
/// variance and signed so the largest-magnitude entry of each is positive.
/// k = 1 returns the input unchanged.
RotationResult varimax_rotate(const LoadingMatrix& loadings);

/// Varimax criterion used above: for loadings B (rows already normalized),
/// sum over factors of n * sum_i B_ij^4 - (sum_i B_ij^2)^2.
double varimax_objective(const Matrix& loadings);

/// Simulated standardized observations: X = F * L^T, one row per factor draw.
Matrix simulate_from_factors(const LoadingMatrix& loadings, const Matrix& factor_draws);

}  // namespace attrcluster
