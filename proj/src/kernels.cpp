#include "iht/kernels.hpp"

#include <cstdint>
#include <stdexcept>

namespace iht {

namespace {

void check_inner(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": inner dimensions disagree (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
}

// Below this flop count the OpenMP fork costs more than it saves.
constexpr std::uint64_t kParallelFlopCutoff = 1u << 18;

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    check_inner(a.cols(), b.rows(), "matmul");
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    DenseMatrix c(m, n);
    const std::uint64_t work = std::uint64_t(m) * k * n;
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
#pragma omp parallel for schedule(static) if (work > kParallelFlopCutoff)
    for (std::int64_t i = 0; i < std::int64_t(m); ++i) {
        double* crow = cp + std::size_t(i) * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double av = ap[std::size_t(i) * k + l];
            const double* brow = bp + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    check_inner(a.cols(), b.cols(), "matmul_nt");
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
    DenseMatrix c(m, n);
    const std::uint64_t work = std::uint64_t(m) * k * n;
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
#pragma omp parallel for schedule(static) if (work > kParallelFlopCutoff)
    for (std::int64_t i = 0; i < std::int64_t(m); ++i) {
        const double* arow = ap + std::size_t(i) * k;
        double* crow = cp + std::size_t(i) * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = bp + j * k;
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += arow[l] * brow[l];
            crow[j] = s;
        }
    }
    return c;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
    check_inner(a.rows(), b.rows(), "matmul_tn");
    const std::size_t m = a.cols(), k = a.rows(), n = b.cols();
    DenseMatrix c(m, n);
    const std::uint64_t work = std::uint64_t(m) * k * n;
    const double* ap = a.data();
    const double* bp = b.data();
    double* cp = c.data();
#pragma omp parallel for schedule(static) if (work > kParallelFlopCutoff)
    for (std::int64_t i = 0; i < std::int64_t(m); ++i) {
        double* crow = cp + std::size_t(i) * n;
        for (std::size_t l = 0; l < k; ++l) {
            const double av = ap[l * m + std::size_t(i)];
            const double* brow = bp + l * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

DenseMatrix gram(const DenseMatrix& a) {
    const std::size_t m = a.rows(), k = a.cols();
    DenseMatrix g(m, m);
    const std::uint64_t work = std::uint64_t(m) * m * k / 2;
    const double* ap = a.data();
#pragma omp parallel for schedule(dynamic, 8) if (work > kParallelFlopCutoff)
    for (std::int64_t i = 0; i < std::int64_t(m); ++i) {
        const double* ri = ap + std::size_t(i) * k;
        for (std::size_t j = std::size_t(i); j < m; ++j) {
            const double* rj = ap + j * k;
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += ri[l] * rj[l];
            g(std::size_t(i), j) = s;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

namespace serial {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    check_inner(a.cols(), b.rows(), "serial::matmul");
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    DenseMatrix c(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            const double av = a(i, l);
            for (std::size_t j = 0; j < n; ++j) c(i, j) += av * b(l, j);
        }
    return c;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    check_inner(a.cols(), b.cols(), "serial::matmul_nt");
    const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
    DenseMatrix c(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += a(i, l) * b(j, l);
            c(i, j) = s;
        }
    return c;
}

DenseMatrix gram(const DenseMatrix& a) {
    const std::size_t m = a.rows(), k = a.cols();
    DenseMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += a(i, l) * a(j, l);
            g(i, j) = s;
            g(j, i) = s;
        }
    return g;
}

}  // namespace serial

}  // namespace iht
