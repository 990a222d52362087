#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iht/kernels.hpp"
#include "iht/rng.hpp"
#include "iht/svd.hpp"

#include <cmath>

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

DenseMatrix reconstruct(const iht::SvdResult& f) {
    DenseMatrix s(f.singular_values.size(), f.singular_values.size());
    for (std::size_t i = 0; i < f.singular_values.size(); ++i) s(i, i) = f.singular_values[i];
    return iht::matmul(iht::matmul(f.left_vectors, s), f.right_vectors.transpose());
}

double orthonormality_defect(const DenseMatrix& q) {
    const DenseMatrix g = iht::matmul_tn(q, q);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

DenseMatrix random_rank_r(std::size_t rows, std::size_t cols, std::size_t r,
                          std::uint64_t seed) {
    return iht::matmul(random_matrix(rows, r, seed), random_matrix(r, cols, seed + 1));
}

}  // namespace

TEST_CASE("identity has unit singular values") {
    const iht::SvdResult f = iht::svd(DenseMatrix::identity(3));
    REQUIRE(f.singular_values.size() == 3);
    for (double s : f.singular_values) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diagonal matrix keeps its entries as singular values") {
    DenseMatrix a{{3, 0}, {0, 1}};
    const iht::SvdResult f = iht::svd(a);
    CHECK(f.singular_values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.singular_values[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("seeded 5x4 reconstructs to 1e-9 with orthonormal factors") {
    const DenseMatrix a = random_matrix(5, 4, 42);
    const iht::SvdResult f = iht::svd(a);
    CHECK(iht::max_abs_diff(a, reconstruct(f)) <= 1e-9 * a.frobenius_norm());
    CHECK(orthonormality_defect(f.left_vectors) <= 1e-10);
    CHECK(orthonormality_defect(f.right_vectors) <= 1e-10);
    for (std::size_t i = 1; i < f.singular_values.size(); ++i)
        CHECK(f.singular_values[i] <= f.singular_values[i - 1]);
}

TEST_CASE("wide input goes through the transposed path") {
    const DenseMatrix a = random_matrix(4, 9, 7);
    const iht::SvdResult f = iht::svd(a);
    REQUIRE(f.singular_values.size() == 4);
    CHECK((reconstruct(f) - a).frobenius_norm() <= 1e-9 * a.frobenius_norm());
    CHECK(f.left_vectors.rows() == 4);
    CHECK(f.right_vectors.rows() == 9);
}

TEST_CASE("serial and parallel Jacobi agree") {
    const DenseMatrix a = random_matrix(60, 50, 11);
    const iht::SvdResult fp = iht::svd(a);
    const iht::SvdResult fs = iht::serial::svd(a);
    for (std::size_t i = 0; i < fp.singular_values.size(); ++i)
        CHECK(fp.singular_values[i] ==
              doctest::Approx(fs.singular_values[i]).epsilon(1e-11));
    CHECK((reconstruct(fp) - a).frobenius_norm() <= 1e-9 * a.frobenius_norm());
    CHECK((reconstruct(fs) - a).frobenius_norm() <= 1e-9 * a.frobenius_norm());
}

TEST_CASE("rank-deficient input keeps orthonormal left factor") {
    const DenseMatrix a = random_rank_r(8, 6, 2, 19);
    const iht::SvdResult f = iht::svd(a);
    CHECK(orthonormality_defect(f.left_vectors) <= 1e-10);
    CHECK(f.singular_values[2] <= 1e-10 * f.singular_values[0]);
    CHECK((reconstruct(f) - a).frobenius_norm() <= 1e-9 * a.frobenius_norm());
}

TEST_CASE("rank_r_project keeps exact rank-r matrices fixed") {
    const DenseMatrix a = random_rank_r(7, 5, 3, 23);
    CHECK((iht::rank_r_project(a, 3) - a).frobenius_norm() <= 1e-9 * a.frobenius_norm());
}

TEST_CASE("rank_r_project zeroes the smaller singular value of diag(3,1)") {
    DenseMatrix a{{3, 0}, {0, 1}};
    const DenseMatrix p = iht::rank_r_project(a, 1);
    CHECK(p(0, 0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(p(1, 1)) <= 1e-12);
    CHECK(std::abs(p(0, 1)) <= 1e-12);
}

TEST_CASE("rank_r_project is idempotent") {
    const DenseMatrix a = random_matrix(9, 6, 31);
    const DenseMatrix p = iht::rank_r_project(a, 2);
    CHECK((iht::rank_r_project(p, 2) - p).frobenius_norm() <= 1e-9 * p.frobenius_norm());
}

TEST_CASE("Eckart-Young: truncation beats random rank-2 candidates") {
    // Brute-force oracle: no random rank-2 B should fit A better than P_2(A).
    const DenseMatrix a = random_matrix(6, 5, 57);
    const double best = (a - iht::rank_r_project(a, 2)).frobenius_norm();
    iht::Rng rng = iht::make_rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        DenseMatrix l(6, 2), r(2, 5);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 2; ++j) l(i, j) = gauss(rng);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 5; ++j) r(i, j) = gauss(rng);
        CHECK(best <= (a - iht::matmul(l, r)).frobenius_norm() + 1e-9);
    }
}

TEST_CASE("degenerate spectral gap is flagged") {
    CHECK(iht::rank_r_project_diag(DenseMatrix::identity(4), 2).degenerate_gap);
    DenseMatrix well{{5, 0, 0}, {0, 2, 0}, {0, 0, 1}};
    CHECK_FALSE(iht::rank_r_project_diag(well, 2).degenerate_gap);
    // sigma_r = 0 keeps the projection unique, no flag
    DenseMatrix low{{5, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    CHECK_FALSE(iht::rank_r_project_diag(low, 2).degenerate_gap);
}

TEST_CASE("r out of range is an argument error") {
    const DenseMatrix a = random_matrix(4, 3, 5);
    CHECK_THROWS_AS((void)iht::rank_r_project(a, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)iht::rank_r_project(a, 4), std::invalid_argument);
}

TEST_CASE("householder QR factors and completes bases") {
    const DenseMatrix a = random_matrix(10, 10, 77);
    const iht::QrResult f = iht::householder_qr(a);
    CHECK(orthonormality_defect(f.q) <= 1e-12);
    CHECK(iht::max_abs_diff(iht::matmul(f.q, f.r), a) <= 1e-12 * a.max_abs() * 10);

    const iht::SvdResult s = iht::svd(random_matrix(9, 3, 78));
    const DenseMatrix comp = iht::complete_basis(s.left_vectors);
    REQUIRE(comp.cols() == 6);
    DenseMatrix full(9, 9);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 3; ++j) full(i, j) = s.left_vectors(i, j);
        for (std::size_t j = 0; j < 6; ++j) full(i, j + 3) = comp(i, j);
    }
    CHECK(orthonormality_defect(full) <= 1e-10);
}
