#pragma once

#include "iht/matrix.hpp"

namespace iht {

/// Thin SVD A = U diag(s) V^T with m = min(rows, cols) triplets.
/// Singular values are sorted nonincreasing; U and V have orthonormal columns.
struct SvdResult {
    DenseMatrix left_vectors;           // rows x m
    std::vector<double> singular_values;  // length m, nonincreasing
    DenseMatrix right_vectors;          // cols x m
};

/// One-sided Jacobi SVD. Parallel round-robin ordering when OpenMP is
/// available and the matrix is large enough; throws std::runtime_error with
/// the matrix dimensions if the sweep limit is exceeded.
SvdResult svd(const DenseMatrix& a);

namespace serial {
/// Cyclic one-sided Jacobi, the reference implementation.
SvdResult svd(const DenseMatrix& a);
}  // namespace serial

/// Best Frobenius rank-r approximation (truncated SVD).
DenseMatrix rank_r_project(const DenseMatrix& a, std::size_t r);

/// rank_r_project plus the non-uniqueness diagnostic: degenerate_gap is set
/// when sigma_r and sigma_{r+1} coincide within tolerance while sigma_r is
/// itself nonzero, i.e. the projection is not unique and the returned value
/// follows the solver's ordering.
struct RankProjection {
    DenseMatrix value;
    bool degenerate_gap = false;
};
RankProjection rank_r_project_diag(const DenseMatrix& a, std::size_t r);

/// Full Householder QR; returns Q (n x n) and R (n x m) for an n x m input.
struct QrResult {
    DenseMatrix q;
    DenseMatrix r;
};
QrResult householder_qr(const DenseMatrix& a);

/// Orthonormal completion: given U with r orthonormal columns in R^n, return
/// an n x (n-r) matrix whose columns complete U to an orthonormal basis.
DenseMatrix complete_basis(const DenseMatrix& u);

}  // namespace iht
