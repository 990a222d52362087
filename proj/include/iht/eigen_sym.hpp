#pragma once

#include "iht/matrix.hpp"

namespace iht {

struct EighResult {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // column i pairs with values[i]; empty unless requested
};

/// Cyclic two-sided Jacobi for symmetric matrices. The input is not checked
/// for symmetry here; use lambda_min_sym for the checked entry point.
EighResult jacobi_eigh(const DenseMatrix& a, bool compute_vectors = false);

/// Smallest eigenvalue of a symmetric matrix (symmetric within 1e-10, not
/// empty), as used for spectra of H = W W^T.
double lambda_min_sym(const DenseMatrix& a);

}  // namespace iht
