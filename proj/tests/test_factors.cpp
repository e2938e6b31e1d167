#include <cmath>
#include <random>

#include <doctest.h>

#include "attrcluster/errors.hpp"
#include "attrcluster/factors.hpp"
#include "helpers.hpp"

using namespace attrcluster;

namespace {

struct WeatherModel {
    CorrelationMatrix corr;
    EigenDecomposition eig;
    LoadingMatrix loadings;
    CommonVarianceMatrix variance;
    CumulativeVarianceMatrix cumulative;
};

const WeatherModel& weather_model() {
    static const WeatherModel model = [] {
        WeatherModel m;
        m.corr = correlation_matrix(testutil::weather_encoded());
        m.eig = eigh_symmetric(m.corr);
        m.loadings = full_loadings(m.eig, m.corr.short_labels, m.corr.full_labels);
        m.variance = common_variance(m.loadings);
        m.cumulative = cumulative_variance(m.variance);
        return m;
    }();
    return model;
}

LoadingMatrix random_loadings(std::mt19937& gen, std::size_t n, std::size_t k) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> length(0.3, 1.0);
    LoadingMatrix lm;
    lm.L = Matrix(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        std::vector<double> row(k);
        for (double& x : row) {
            x = unit(gen);
            sq += x * x;
        }
        const double scale = length(gen) / std::sqrt(sq);
        for (std::size_t j = 0; j < k; ++j) lm.L(i, j) = row[j] * scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
        lm.short_labels.push_back("A" + std::to_string(i + 1));
        lm.full_labels.push_back("a" + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < k; ++j) lm.factor_names.push_back("F" + std::to_string(j + 1));
    return lm;
}

}  // namespace

TEST_CASE("full_loadings of a 2x2 correlation matrix") {
    Matrix r(2, 2, 0.6);
    r(0, 0) = r(1, 1) = 1.0;
    const auto eig = eigh_symmetric(r);
    const auto lm = full_loadings(eig, {"A1", "A2"});
    // lambda = {1.6, 0.4}, eigenvectors (1,1)/sqrt2 and (1,-1)/sqrt2
    CHECK(testutil::near(std::abs(lm.L(0, 0)), 0.894, 1e-3));
    CHECK(testutil::near(std::abs(lm.L(1, 0)), 0.894, 1e-3));
    CHECK(testutil::near(std::abs(lm.L(0, 1)), 0.447, 1e-3));
    CHECK(testutil::near(std::abs(lm.L(1, 1)), 0.447, 1e-3));
    CHECK(lm.factor_names == std::vector<std::string>{"F1", "F2"});
}

TEST_CASE("full_loadings of the identity is the identity up to order and sign") {
    const auto eig = eigh_symmetric(Matrix::identity(3));
    const auto lm = full_loadings(eig, {"A1", "A2", "A3"});
    for (std::size_t j = 0; j < 3; ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) colsum += std::abs(lm.L(i, j));
        CHECK(testutil::near(colsum, 1.0, 1e-12));
    }
}

TEST_CASE("weather common variances match the reference table") {
    const auto& m = weather_model();
    CHECK(testutil::near(m.variance.V(6, 0), 0.839, 0.005));
    CHECK(testutil::max_entry_diff(m.variance.V, testutil::weather_reference_full_variance()) <=
          0.005);
}

TEST_CASE("full model row sums are unit communalities") {
    const auto& m = weather_model();
    for (double total : m.variance.row_total) CHECK(testutil::near(total, 1.0, 1e-8));

    std::mt19937 gen(47);
    const auto cols = testutil::random_columns(gen, 7, 20);
    const Matrix r = correlation_from_columns(cols);
    const auto eig = eigh_symmetric(r);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < 7; ++i) labels.push_back("A" + std::to_string(i + 1));
    const auto v = common_variance(full_loadings(eig, labels));
    for (double total : v.row_total) CHECK(testutil::near(total, 1.0, 1e-8));
}

TEST_CASE("full loadings reconstruct the correlation matrix") {
    const auto& m = weather_model();
    CHECK(testutil::max_entry_diff(multiply(m.loadings.L, transpose(m.loadings.L)), m.corr.R) <=
          1e-8);
}

TEST_CASE("zero loadings give zero variance") {
    LoadingMatrix lm;
    lm.L = Matrix(2, 2);
    lm.L(0, 0) = 0.8;
    lm.short_labels = {"A1", "A2"};
    lm.full_labels = lm.short_labels;
    lm.factor_names = {"F1", "F2"};
    const auto v = common_variance(lm);
    CHECK(v.V(0, 1) == 0.0);
    CHECK(v.V(1, 0) == 0.0);
    CHECK(v.row_total[1] == 0.0);
}

TEST_CASE("cumulative variance matches the reference table") {
    const auto& m = weather_model();
    CHECK(testutil::near(m.cumulative.VC(8, 2), 0.040, 0.001));  // windy, 3 factors
    CHECK(testutil::near(m.cumulative.VC(8, 3), 0.938, 0.001));  // windy, 4 factors
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(testutil::near(m.cumulative.column_mean[j],
                             testutil::weather_reference_cumulative_means()[j], 0.001));
        CHECK(testutil::near(m.cumulative.column_min[j],
                             testutil::weather_reference_cumulative_minima()[j], 0.001));
    }
    // rows non-decreasing, final column 1
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 1; j < 10; ++j)
            CHECK(m.cumulative.VC(i, j) >= m.cumulative.VC(i, j - 1));
        CHECK(testutil::near(m.cumulative.VC(i, 9), 1.0, 1e-8));
    }
}

TEST_CASE("column means equal cumulative eigenvalue fractions") {
    const auto& m = weather_model();
    double acc = 0.0;
    for (std::size_t j = 0; j < 10; ++j) {
        acc += m.eig.lambda[j] / 10.0;
        CHECK(testutil::near(m.cumulative.column_mean[j], acc, 1e-8));
    }
}

TEST_CASE("cumulative variance requires the full model") {
    const auto& m = weather_model();
    const auto reduced = reduce(m.loadings, 4);
    CHECK_THROWS_AS(cumulative_variance(common_variance(reduced)), std::invalid_argument);

    // one-attribute model: VC equals V
    Matrix r(1, 1, 1.0);
    const auto v = common_variance(full_loadings(eigh_symmetric(r), {"A1"}));
    const auto vc = cumulative_variance(v);
    CHECK(vc.VC(0, 0) == v.V(0, 0));
}

TEST_CASE("select_factor_count on the weather model") {
    const auto& m = weather_model();
    const auto sel = select_factor_count(m.cumulative, 0.55);
    CHECK(sel.nof == 4);
    CHECK(testutil::near(sel.min_var_at_nof, 0.713, 0.005));
    CHECK(sel.min_var_attribute == "A1>3");

    const auto strict = select_factor_count(m.cumulative, 0.90);
    CHECK(strict.nof == 6);

    CHECK_THROWS_AS(select_factor_count(m.cumulative, 0.5), ConfigError);
    CHECK_THROWS_AS(select_factor_count(m.cumulative, 1.0), ConfigError);
}

TEST_CASE("select_factor_count picks 1 when the first column suffices") {
    CumulativeVarianceMatrix vc;
    vc.VC = testutil::matrix_from({{0.9, 1.0}, {0.95, 1.0}});
    vc.column_min = {0.9, 1.0};
    vc.column_mean = {0.925, 1.0};
    vc.short_labels = {"A1", "A2"};
    vc.full_labels = vc.short_labels;
    CHECK(select_factor_count(vc, 0.55).nof == 1);
}

TEST_CASE("select_factor_count is monotone in epsilon and matches brute force") {
    const auto& m = weather_model();
    std::size_t previous = 0;
    for (double eps : {0.51, 0.6, 0.7, 0.75, 0.82, 0.9, 0.95, 0.99}) {
        const auto sel = select_factor_count(m.cumulative, eps);
        CHECK(sel.nof >= previous);
        CHECK(sel.nof == testutil::brute_force_factor_count(m.cumulative.VC, eps));
        previous = sel.nof;
    }
}

TEST_CASE("variance report rows") {
    const auto& m = weather_model();
    const auto report = variance_report(m.eig, m.cumulative);
    REQUIRE(report.rows.size() == 10);
    CHECK(testutil::near(report.rows[3].scree_fraction, 0.116, 0.001));
    CHECK(testutil::near(report.rows[3].min_var, 0.713, 0.005));
    CHECK(testutil::near(report.rows[3].aver_var, 0.822, 0.005));
    CHECK(report.rows[3].min_var_id == "A1>3");
    CHECK(report.rows[0].min_var_id == "A4");
    CHECK(testutil::near(report.rows[9].min_var, 1.0, 1e-8));
    CHECK(testutil::near(report.rows[9].aver_var, 1.0, 1e-8));

    for (std::size_t j = 1; j < report.rows.size(); ++j) {
        CHECK(report.rows[j].min_var >= report.rows[j - 1].min_var);
        CHECK(report.rows[j].aver_var >= report.rows[j - 1].aver_var);
        CHECK(report.rows[j].scree_fraction <= report.rows[j - 1].scree_fraction + 1e-15);
    }
}

TEST_CASE("reduce keeps the leading factors") {
    const auto& m = weather_model();
    const auto reduced = reduce(m.loadings, 4);
    CHECK(reduced.L.cols() == 4);
    CHECK(reduced.factor_names == std::vector<std::string>{"F1", "F2", "F3", "F4"});
    const auto v = common_variance(reduced);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(testutil::near(v.row_total[i], testutil::weather_reference_communalities()[i],
                             0.005));

    const auto identity = reduce(m.loadings, 10);
    CHECK(identity.L == m.loadings.L);

    const auto one = reduce(m.loadings, 1);
    const auto v1 = common_variance(one);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(testutil::near(v1.row_total[i], m.cumulative.VC(i, 0), 1e-12));

    CHECK_THROWS_AS(reduce(m.loadings, 0), std::invalid_argument);
    CHECK_THROWS_AS(reduce(m.loadings, 11), std::invalid_argument);
}

TEST_CASE("varimax reproduces the reference rotated variances") {
    const auto& m = weather_model();
    const auto rotation = varimax_rotate(reduce(m.loadings, 4));
    CHECK(rotation.converged);
    const auto v = common_variance(rotation.loadings);
    CHECK(testutil::max_entry_diff(v.V, testutil::weather_reference_rotated_variance()) <= 0.01);
    CHECK(testutil::near(v.V(8, 3), 0.9331, 0.01));
    CHECK(testutil::near(v.V(4, 1), 0.4791, 0.01));
    // row totals unchanged by the rotation
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(testutil::near(v.row_total[i], testutil::weather_reference_communalities()[i],
                             0.005));
}

TEST_CASE("varimax canonical form: explained variance descending, peak positive") {
    const auto& m = weather_model();
    const auto rotation = varimax_rotate(reduce(m.loadings, 4));
    const auto& l = rotation.loadings.L;
    std::vector<double> explained(l.cols(), 0.0);
    for (std::size_t j = 0; j < l.cols(); ++j) {
        double peak = 0.0, signed_peak = 0.0;
        for (std::size_t i = 0; i < l.rows(); ++i) {
            explained[j] += l(i, j) * l(i, j);
            if (std::abs(l(i, j)) > peak) {
                peak = std::abs(l(i, j));
                signed_peak = l(i, j);
            }
        }
        CHECK(signed_peak > 0.0);
        if (j > 0) CHECK(explained[j - 1] >= explained[j]);
    }
}

TEST_CASE("varimax leaves simple structure alone") {
    LoadingMatrix lm;
    lm.L = testutil::matrix_from({{0.9, 0.0}, {0.8, 0.0}, {0.0, 0.7}, {0.0, 0.6}});
    lm.short_labels = {"A1", "A2", "A3", "A4"};
    lm.full_labels = lm.short_labels;
    lm.factor_names = {"F1", "F2"};
    const auto rotation = varimax_rotate(lm);
    CHECK(testutil::max_entry_diff(rotation.loadings.L, lm.L) <= 1e-12);
}

TEST_CASE("varimax with a single factor returns the input") {
    const auto& m = weather_model();
    const auto one = reduce(m.loadings, 1);
    const auto rotation = varimax_rotate(one);
    CHECK(rotation.loadings.L == one.L);
    CHECK(rotation.converged);
}

TEST_CASE("varimax properties on random loadings") {
    std::mt19937 gen(53);
    for (int trial = 0; trial < 15; ++trial) {
        const auto lm = random_loadings(gen, 4 + trial % 6, 2 + trial % 3);
        const auto before = common_variance(lm);
        const auto rotation = varimax_rotate(lm);
        const auto after = common_variance(rotation.loadings);

        for (std::size_t i = 0; i < before.row_total.size(); ++i)
            CHECK(testutil::near(after.row_total[i], before.row_total[i], 1e-9));

        for (std::size_t s = 1; s < rotation.objective_trace.size(); ++s)
            CHECK(rotation.objective_trace[s] >=
                  rotation.objective_trace[s - 1] -
                      1e-9 * std::max(1.0, std::abs(rotation.objective_trace[s - 1])));
    }
}

TEST_CASE("varimax beats every grid angle on 4x2 problems") {
    std::mt19937 gen(59);
    for (int trial = 0; trial < 5; ++trial) {
        const auto lm = random_loadings(gen, 4, 2);
        const auto rotation = varimax_rotate(lm);

        // compare on Kaiser-normalized loadings, where the criterion operates
        Matrix b = rotation.loadings.L;
        for (std::size_t i = 0; i < b.rows(); ++i) {
            double len = std::sqrt(b(i, 0) * b(i, 0) + b(i, 1) * b(i, 1));
            if (len > 0.0) {
                b(i, 0) /= len;
                b(i, 1) /= len;
            }
        }
        const double achieved = varimax_objective(b);

        double best_grid = achieved;
        for (double angle = 0.0; angle < 1.5708; angle += 0.001) {
            const double c = std::cos(angle), s = std::sin(angle);
            Matrix rotated = b;
            for (std::size_t i = 0; i < b.rows(); ++i) {
                rotated(i, 0) = c * b(i, 0) + s * b(i, 1);
                rotated(i, 1) = -s * b(i, 0) + c * b(i, 1);
            }
            best_grid = std::max(best_grid, varimax_objective(rotated));
        }
        CHECK(best_grid <= achieved + 1e-6 * std::max(1.0, std::abs(achieved)));
    }
}

TEST_CASE("simulate_from_factors basics") {
    LoadingMatrix lm;
    lm.L = Matrix::identity(3);
    lm.short_labels = {"A1", "A2", "A3"};
    lm.full_labels = lm.short_labels;
    lm.factor_names = {"F1", "F2", "F3"};

    Matrix zeros(2, 3);
    CHECK(simulate_from_factors(lm, zeros) == zeros);

    Matrix f(2, 3);
    f(0, 0) = 1.5;
    f(0, 2) = -2.0;
    f(1, 1) = 0.25;
    CHECK(simulate_from_factors(lm, f) == f);

    Matrix wrong(2, 2);
    CHECK_THROWS_AS(simulate_from_factors(lm, wrong), std::invalid_argument);
}

TEST_CASE("simulated data reproduces the model correlations") {
    // rows on the unit circle make L L^T a correlation matrix
    const std::vector<double> angles = {0.3, 1.0, 1.9, 2.6};
    LoadingMatrix lm;
    lm.L = Matrix(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        lm.L(i, 0) = std::cos(angles[i]);
        lm.L(i, 1) = std::sin(angles[i]);
        lm.short_labels.push_back("A" + std::to_string(i + 1));
    }
    lm.full_labels = lm.short_labels;
    lm.factor_names = {"F1", "F2"};

    const std::size_t m = 50000;
    std::mt19937 gen(61);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix f(m, 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < 2; ++j) f(i, j) = normal(gen);

    const Matrix x = simulate_from_factors(lm, f);
    std::vector<std::vector<double>> cols(4, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < 4; ++j) cols[j][i] = x(i, j);

    const Matrix sample = correlation_from_columns(cols);
    const Matrix expected = multiply(lm.L, transpose(lm.L));
    CHECK(testutil::max_entry_diff(sample, expected) <= 0.05);
}
