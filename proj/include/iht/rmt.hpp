#pragma once

#include "iht/low_rank.hpp"
#include "iht/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace iht {

/// Haar-distributed orthogonal matrix: QR of an i.i.d. standard normal
/// matrix with the signs of R's diagonal absorbed into Q (without the sign
/// correction the factor is not Haar).
DenseMatrix haar_orthogonal(std::size_t n, std::uint64_t seed);

/// Random orthogonal model: M = U_r diag(S) V_r^T with U, V Haar.
/// An empty singular_values vector selects the default diag(r, r-1, ..., 1).
struct OrthogonalModelDraw {
    LowRankModel model;
    DenseMatrix m;
};
OrthogonalModelDraw random_orthogonal_model(std::size_t n1, std::size_t n2, std::size_t r,
                                            std::vector<double> singular_values,
                                            std::uint64_t seed);

enum class EsdConstruction { plain, kronecker };

const char* to_string(EsdConstruction c);

/// Eigenvalue sample of H = W_pq W_pq^T, where W_pq keeps pn uniformly
/// sampled rows of the first qn columns of an orthogonal matrix: one Haar
/// matrix (plain) or the Kronecker product of two independent Haar factors of
/// side sqrt(n) (kronecker). Eigenvalues are ascending, clipped to [0,1].
struct EsdSample {
    std::vector<double> eigenvalues;
    std::size_t n = 0;
    double p = 0.0;
    double q = 0.0;
    EsdConstruction construction = EsdConstruction::plain;
    std::uint64_t seed = 0;
};
EsdSample esd_of_truncation(std::size_t n, double p, double q, EsdConstruction construction,
                            std::uint64_t seed);

/// Eigenvalues (ascending, clipped to [0,1]) of the Gram matrix of pn
/// uniformly sampled rows of a semi-orthogonal n x qn matrix. The shared
/// kernel behind esd_of_truncation and the counterexample experiments.
std::vector<double> subsampled_gram_eigenvalues(const DenseMatrix& wq, double p,
                                                std::uint64_t seed);

/// L1 distance between the scaled eigenvalue histogram (counts/(pn*w) over
/// `bins` equal bins of [0,1]) and the bin-averaged limiting density, with
/// the point masses folded into their edge bins.
double histogram_distance(const EsdSample& sample, std::size_t bins);
double histogram_distance(const std::vector<double>& eigenvalues, double p, double q,
                          std::size_t bins);

/// Sylvester-construction Hadamard matrix of order 2^k; entries are +-1 and
/// H^T H = order * I exactly.
DenseMatrix hadamard(unsigned order_exponent);

/// The stacked scaled-Hadamard matrix [0.6 sqrt(2/n) H_{n/2}; 0.8 sqrt(2/n)
/// H_{n/2}]: orthonormal columns, incoherence 1.28, yet not a concentrated
/// sequence.
DenseMatrix non_concentrated_example(std::size_t n);

enum class VectorFamily { gaussian, kronecker_gaussian };
enum class MatrixFamily { identity, diag_plus_low_rank };

/// Decay of the quadratic-form fluctuation a^T M a - E[a^T M a] across a
/// dimension grid. For the gaussian family a has qn i.i.d. N(0,1/n) entries
/// and M is qn x qn; the kronecker family uses a = b kron c (each factor qn
/// i.i.d. N(0,1/n)) against (qn)^2-dimensional M. gaussian_theory_variance
/// holds (2/n^2)||M||_F^2 for the gaussian family (zeros otherwise).
struct ConcentrationReport {
    std::vector<std::size_t> n_grid;
    std::vector<double> variances;
    std::vector<double> gaussian_theory_variance;
    double fitted_slope = 0.0;  // d log(var) / d log(n)
};
ConcentrationReport quad_form_concentration_test(VectorFamily vectors, MatrixFamily matrices,
                                                 const std::vector<std::size_t>& n_grid,
                                                 std::size_t trials, double q,
                                                 std::uint64_t seed);

}  // namespace iht
