#pragma once

#include "iht/matrix.hpp"

namespace iht {

// Data-parallel dense kernels. The default entry points run OpenMP-parallel
// loops when the problem is large enough to pay for it; iht::serial holds the
// plain reference implementations that the tests and the benchmark compare
// against.

/// C = A * B
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// C = A * B^T
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

/// C = A^T * B
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);

/// G = A * A^T (symmetric by construction)
DenseMatrix gram(const DenseMatrix& a);

namespace serial {

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix gram(const DenseMatrix& a);

}  // namespace serial

}  // namespace iht
