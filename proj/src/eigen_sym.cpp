#include "iht/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iht {

namespace {
constexpr int kMaxSweeps = 50;
}

EighResult jacobi_eigh(const DenseMatrix& a, bool compute_vectors) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("jacobi_eigh: matrix is not square");
    const std::size_t n = a.rows();
    DenseMatrix b = a;
    DenseMatrix v = compute_vectors ? DenseMatrix::identity(n) : DenseMatrix();

    const double fro = b.frobenius_norm();
    const double stop = 1e-14 * std::max(fro, 1e-300);

    for (int sweep = 0; sweep < kMaxSweeps && n > 1; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += b(p, q) * b(p, q);
        if (std::sqrt(2.0 * off) <= stop) break;
        if (sweep == kMaxSweeps - 1)
            throw std::runtime_error("jacobi_eigh: no convergence for " + std::to_string(n) +
                                     "x" + std::to_string(n) + " matrix");

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = b(p, q);
                if (std::abs(apq) <= 1e-18 * fro) continue;
                const double tau = (b(q, q) - b(p, p)) / (2.0 * apq);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                for (std::size_t k = 0; k < n; ++k) {
                    const double x = b(p, k), y = b(q, k);
                    b(p, k) = c * x - s * y;
                    b(q, k) = s * x + c * y;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double x = b(k, p), y = b(k, q);
                    b(k, p) = c * x - s * y;
                    b(k, q) = s * x + c * y;
                }
                if (compute_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double x = v(k, p), y = v(k, q);
                        v(k, p) = c * x - s * y;
                        v(k, q) = s * x + c * y;
                    }
                }
            }
        }
    }

    EighResult out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = b(i, i);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return out.values[x] < out.values[y]; });
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = out.values[order[i]];
    out.values = std::move(sorted);
    if (compute_vectors) {
        out.vectors = DenseMatrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double lambda_min_sym(const DenseMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0)
        throw std::invalid_argument("lambda_min_sym: empty matrix");
    if (a.rows() != a.cols())
        throw std::invalid_argument("lambda_min_sym: matrix is not square");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > 1e-10)
                throw std::invalid_argument("lambda_min_sym: matrix is not symmetric within 1e-10");
    return jacobi_eigh(a).values.front();
}

}  // namespace iht
