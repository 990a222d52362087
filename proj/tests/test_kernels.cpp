#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iht/kernels.hpp"
#include "iht/rng.hpp"

using iht::DenseMatrix;

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    iht::Rng rng = iht::make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

}  // namespace

TEST_CASE("matmul against hand-computed product") {
    DenseMatrix a{{1, 2}, {3, 4}};
    DenseMatrix b{{5, 6}, {7, 8}};
    DenseMatrix c = iht::matmul(a, b);
    CHECK(c(0, 0) == doctest::Approx(19));
    CHECK(c(0, 1) == doctest::Approx(22));
    CHECK(c(1, 0) == doctest::Approx(43));
    CHECK(c(1, 1) == doctest::Approx(50));
}

TEST_CASE("parallel kernels match the serial references") {
    const DenseMatrix a = random_matrix(83, 67, 1);
    const DenseMatrix b = random_matrix(67, 91, 2);
    CHECK(iht::max_abs_diff(iht::matmul(a, b), iht::serial::matmul(a, b)) == 0.0);
    CHECK(iht::max_abs_diff(iht::matmul_nt(a, a), iht::serial::matmul_nt(a, a)) == 0.0);
    CHECK(iht::max_abs_diff(iht::gram(a), iht::serial::gram(a)) == 0.0);
}

TEST_CASE("matmul_nt and matmul_tn agree with explicit transposes") {
    const DenseMatrix a = random_matrix(19, 13, 3);
    const DenseMatrix b = random_matrix(23, 13, 4);
    CHECK(iht::max_abs_diff(iht::matmul_nt(a, b), iht::matmul(a, b.transpose())) < 1e-13);
    const DenseMatrix c = random_matrix(13, 7, 5);
    CHECK(iht::max_abs_diff(iht::matmul_tn(a.transpose(), c),
                            iht::matmul(a, c)) < 1e-13);
}

TEST_CASE("gram is the product with the own transpose") {
    const DenseMatrix a = random_matrix(17, 29, 6);
    CHECK(iht::max_abs_diff(iht::gram(a), iht::matmul(a, a.transpose())) < 1e-12);
}

TEST_CASE("shape mismatch is an argument error") {
    const DenseMatrix a(3, 4), b(3, 4);
    CHECK_THROWS_AS((void)iht::matmul(a, b), std::invalid_argument);
}
