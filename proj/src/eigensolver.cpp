#include "attrcluster/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "attrcluster/errors.hpp"

namespace attrcluster {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kEigenvalueClamp = 1e-12;

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

// One Jacobi rotation G(p,q) chosen to annihilate A(p,q); A <- G^T A G and
// the rotation is accumulated into V <- V G.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t;
    if (theta >= 0.0)
        t = 1.0 / (theta + std::sqrt(theta * theta + 1.0));
    else
        t = -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(p, k) = a(k, p);
        a(k, q) = s * akp + c * akq;
        a(q, k) = a(k, q);
    }
    const double app = a(p, p);
    const double aqq = a(q, q);
    a(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    a(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

}  // namespace

EigenDecomposition eigh_symmetric(const Matrix& R) {
    const std::size_t n = R.rows();
    if (n == 0 || R.cols() != n)
        throw NumericError("eigh_symmetric: matrix must be square and non-empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(R(i, i) - 1.0) > 1e-12)
            throw NumericError("eigh_symmetric: diagonal entry differs from 1 (not a correlation matrix)");
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(R(i, j) - R(j, i)) > 1e-12)
                throw NumericError("eigh_symmetric: matrix is not symmetric");
    }

    Matrix a = R;
    Matrix v = Matrix::identity(n);
    const double threshold = 1e-12 * static_cast<double>(n);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (a(p, q) != 0.0) rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_norm(a) > threshold) {
        std::ostringstream msg;
        msg << "eigh_symmetric: Jacobi sweeps exhausted, off-diagonal residual "
            << off_diagonal_norm(a);
        throw NumericError(msg.str());
    }

    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i);

    const double psd_floor = -1e-8 * static_cast<double>(n);
    for (double& l : lambda) {
        if (l < psd_floor)
            throw NumericError("eigh_symmetric: negative eigenvalue beyond round-off; "
                               "input is not positive semidefinite");
        if (l < kEigenvalueClamp) l = 0.0;
    }

    // Non-increasing order; stable so equal eigenvalues keep the post-Jacobi
    // column order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return lambda[x] > lambda[y]; });

    EigenDecomposition out;
    out.lambda.resize(n);
    out.U = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.lambda[j] = lambda[src];

        std::size_t peak = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, src));
            if (mag > best) {
                best = mag;
                peak = i;
            }
        }
        const double sign = v(peak, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.U(i, j) = sign * v(i, src);
    }
    return out;
}

}  // namespace attrcluster
