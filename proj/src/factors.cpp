#include "attrcluster/factors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "attrcluster/errors.hpp"

namespace attrcluster {

LoadingMatrix full_loadings(const EigenDecomposition& eig, std::vector<std::string> short_labels,
                            std::vector<std::string> full_labels) {
    const std::size_t n = eig.U.rows();
    if (short_labels.size() != n)
        throw std::invalid_argument("full_loadings: label count does not match matrix size");
    if (full_labels.empty()) full_labels = short_labels;

    LoadingMatrix out;
    out.L = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double scale = std::sqrt(eig.lambda[j]);
        for (std::size_t i = 0; i < n; ++i) out.L(i, j) = scale * eig.U(i, j);
    }
    out.short_labels = std::move(short_labels);
    out.full_labels = std::move(full_labels);
    out.factor_names.reserve(n);
    for (std::size_t j = 0; j < n; ++j) out.factor_names.push_back("F" + std::to_string(j + 1));
    return out;
}

CommonVarianceMatrix common_variance(const LoadingMatrix& loadings) {
    const std::size_t n = loadings.L.rows();
    const std::size_t k = loadings.L.cols();
    CommonVarianceMatrix out;
    out.V = Matrix(n, k);
    out.row_total.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double v = loadings.L(i, j) * loadings.L(i, j);
            out.V(i, j) = v;
            out.row_total[i] += v;
        }
    }
    out.short_labels = loadings.short_labels;
    out.full_labels = loadings.full_labels;
    out.factor_names = loadings.factor_names;
    return out;
}

CumulativeVarianceMatrix cumulative_variance(const CommonVarianceMatrix& variance) {
    const std::size_t n = variance.V.rows();
    const std::size_t k = variance.V.cols();
    if (k != n)
        throw std::invalid_argument(
            "cumulative_variance: needs the full model (one factor per attribute)");

    CumulativeVarianceMatrix out;
    out.VC = Matrix(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            acc += variance.V(i, j);
            out.VC(i, j) = acc;
        }
    }
    out.column_min.assign(k, 0.0);
    out.column_mean.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double lo = out.VC(0, j);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += out.VC(i, j);
            if (out.VC(i, j) < lo) lo = out.VC(i, j);
        }
        out.column_min[j] = lo;
        out.column_mean[j] = sum / static_cast<double>(n);
    }
    out.short_labels = variance.short_labels;
    out.full_labels = variance.full_labels;
    return out;
}

FactorSelection select_factor_count(const CumulativeVarianceMatrix& cumulative, double epsilon) {
    if (!(epsilon > 0.5) || !(epsilon < 1.0))
        throw ConfigError("select_factor_count: epsilon must lie in (0.5, 1)");

    const std::size_t n = cumulative.VC.rows();
    for (std::size_t j = 0; j < cumulative.VC.cols(); ++j) {
        if (cumulative.column_min[j] > epsilon) {
            std::size_t arg_min = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (cumulative.VC(i, j) < cumulative.VC(arg_min, j)) arg_min = i;
            return {j + 1, epsilon, cumulative.column_min[j], cumulative.short_labels[arg_min]};
        }
    }
    // Unreachable for a full model (final column is 1 and epsilon < 1).
    throw NumericError("select_factor_count: no factor count reaches the threshold");
}

VarianceReport variance_report(const EigenDecomposition& eig,
                               const CumulativeVarianceMatrix& cumulative) {
    const std::size_t n = cumulative.VC.rows();
    VarianceReport report;
    report.rows.resize(cumulative.VC.cols());
    for (std::size_t j = 0; j < cumulative.VC.cols(); ++j) {
        auto& row = report.rows[j];
        row.scree_fraction = eig.lambda[j] / static_cast<double>(n);
        row.min_var = cumulative.column_min[j];
        row.aver_var = cumulative.column_mean[j];
        std::size_t arg_min = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (cumulative.VC(i, j) < cumulative.VC(arg_min, j)) arg_min = i;
        row.min_var_id = cumulative.short_labels[arg_min];
    }
    return report;
}

LoadingMatrix reduce(const LoadingMatrix& loadings, std::size_t nof) {
    if (nof < 1 || nof > loadings.L.cols())
        throw std::invalid_argument("reduce: factor count out of range");
    LoadingMatrix out;
    out.L = Matrix(loadings.L.rows(), nof);
    for (std::size_t i = 0; i < loadings.L.rows(); ++i)
        for (std::size_t j = 0; j < nof; ++j) out.L(i, j) = loadings.L(i, j);
    out.short_labels = loadings.short_labels;
    out.full_labels = loadings.full_labels;
    out.factor_names.assign(loadings.factor_names.begin(), loadings.factor_names.begin() + nof);
    return out;
}

double varimax_objective(const Matrix& loadings) {
    const double n = static_cast<double>(loadings.rows());
    double total = 0.0;
    for (std::size_t j = 0; j < loadings.cols(); ++j) {
        double s2 = 0.0, s4 = 0.0;
        for (std::size_t i = 0; i < loadings.rows(); ++i) {
            const double sq = loadings(i, j) * loadings(i, j);
            s2 += sq;
            s4 += sq * sq;
        }
        total += n * s4 - s2 * s2;
    }
    return total;
}

namespace {

constexpr std::size_t kMaxRotationSweeps = 1000;
constexpr double kRotationRelTol = 1e-10;

double plane_term(const std::vector<double>& col, double n) {
    double s2 = 0.0, s4 = 0.0;
    for (double x : col) {
        const double sq = x * x;
        s2 += sq;
        s4 += sq * sq;
    }
    return n * s4 - s2 * s2;
}

// Canonical form: factors ordered by descending explained variance, each
// column signed so its largest-magnitude entry is positive.
void canonicalize(Matrix& l) {
    const std::size_t n = l.rows();
    const std::size_t k = l.cols();

    std::vector<double> explained(k, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) explained[j] += l(i, j) * l(i, j);

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return explained[a] > explained[b]; });

    Matrix out(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        std::size_t peak = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(l(i, src));
            if (mag > best) {
                best = mag;
                peak = i;
            }
        }
        const double sign = l(peak, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out(i, j) = sign * l(i, src);
    }
    l = std::move(out);
}

}  // namespace

RotationResult varimax_rotate(const LoadingMatrix& loadings) {
    RotationResult result;
    result.loadings = loadings;
    const std::size_t n = loadings.L.rows();
    const std::size_t k = loadings.L.cols();
    if (k < 2) return result;

    Matrix& l = result.loadings.L;

    // Kaiser normalization; rows with zero communality stay untouched.
    std::vector<double> row_length(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < k; ++j) sq += l(i, j) * l(i, j);
        row_length[i] = std::sqrt(sq);
        if (row_length[i] > 0.0)
            for (std::size_t j = 0; j < k; ++j) l(i, j) /= row_length[i];
    }

    const double dn = static_cast<double>(n);
    double objective = varimax_objective(l);
    std::vector<double> xn(n), yn(n), x(n), y(n);

    result.converged = false;
    for (std::size_t sweep = 0; sweep < kMaxRotationSweeps; ++sweep) {
        const double before = objective;
        for (std::size_t j = 0; j + 1 < k; ++j) {
            for (std::size_t m = j + 1; m < k; ++m) {
                double sum_u = 0.0, sum_v = 0.0, sum_c = 0.0, sum_d = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = l(i, j);
                    y[i] = l(i, m);
                    const double u = x[i] * x[i] - y[i] * y[i];
                    const double v = 2.0 * x[i] * y[i];
                    sum_u += u;
                    sum_v += v;
                    sum_c += u * u - v * v;
                    sum_d += u * v;
                }
                const double numerator = 2.0 * (dn * sum_d - sum_u * sum_v);
                const double denominator = dn * sum_c - (sum_u * sum_u - sum_v * sum_v);
                if (numerator == 0.0 && denominator == 0.0) continue;

                const double angle = 0.25 * std::atan2(numerator, denominator);
                const double c = std::cos(angle);
                const double s = std::sin(angle);
                for (std::size_t i = 0; i < n; ++i) {
                    xn[i] = c * x[i] + s * y[i];
                    yn[i] = -s * x[i] + c * y[i];
                }
                const double gain = plane_term(xn, dn) + plane_term(yn, dn) -
                                    plane_term(x, dn) - plane_term(y, dn);
                if (gain <= 0.0) continue;  // skip rule
                for (std::size_t i = 0; i < n; ++i) {
                    l(i, j) = xn[i];
                    l(i, m) = yn[i];
                }
            }
        }
        objective = varimax_objective(l);
        result.objective_trace.push_back(objective);
        ++result.sweeps;
        if (objective - before < kRotationRelTol * std::max(std::abs(objective), 1e-300)) {
            result.converged = true;
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        if (row_length[i] > 0.0)
            for (std::size_t j = 0; j < k; ++j) l(i, j) *= row_length[i];

    canonicalize(l);
    return result;
}

Matrix simulate_from_factors(const LoadingMatrix& loadings, const Matrix& factor_draws) {
    if (factor_draws.cols() != loadings.L.cols())
        throw std::invalid_argument("simulate_from_factors: factor dimension mismatch");
    return multiply(factor_draws, transpose(loadings.L));
}

}  // namespace attrcluster
