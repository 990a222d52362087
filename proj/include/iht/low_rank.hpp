#pragma once

#include "iht/matrix.hpp"

#include <utility>
#include <vector>

namespace iht {

/// Rank-r factorization of a ground-truth matrix M = U_r diag(S) V_r^T
/// together with orthonormal bases of its left/right null spaces. Empty null
/// bases (r equal to a dimension) are 0-column matrices so the projector
/// formulas degrade to zero matrices.
class LowRankModel {
public:
    LowRankModel(DenseMatrix u_r, std::vector<double> sigma_r, DenseMatrix v_r,
                 DenseMatrix u_perp, DenseMatrix v_perp);

    /// Build the model from an explicit matrix: SVD, keep the top r triplets,
    /// complete the bases for the null spaces.
    static LowRankModel from_matrix(const DenseMatrix& m, std::size_t r);

    std::size_t n1() const { return u_r_.rows(); }
    std::size_t n2() const { return v_r_.rows(); }
    std::size_t rank() const { return sigma_r_.size(); }

    const DenseMatrix& u_r() const { return u_r_; }
    const DenseMatrix& v_r() const { return v_r_; }
    const DenseMatrix& u_perp() const { return u_perp_; }
    const DenseMatrix& v_perp() const { return v_perp_; }
    const std::vector<double>& sigma_r() const { return sigma_r_; }
    double sigma_min() const { return sigma_r_.back(); }

    /// U_r diag(S) V_r^T
    DenseMatrix reconstruct() const;

private:
    DenseMatrix u_r_, v_r_, u_perp_, v_perp_;
    std::vector<double> sigma_r_;
};

/// (P_{U_perp}, P_{V_perp}) — symmetric idempotent projectors onto the left
/// and right null spaces of the model's matrix.
std::pair<DenseMatrix, DenseMatrix> null_projectors(const LowRankModel& model);

/// First-order residual of the rank-r projection around M:
/// R(D) = P_r(M + D) - M - D + P_{U_perp} D P_{V_perp}.
DenseMatrix taylor_residual(const LowRankModel& model, const DenseMatrix& delta);

}  // namespace iht
