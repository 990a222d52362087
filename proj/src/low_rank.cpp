#include "iht/low_rank.hpp"

#include "iht/kernels.hpp"
#include "iht/svd.hpp"

#include <cmath>
#include <stdexcept>

namespace iht {

namespace {

void check_orthonormal(const DenseMatrix& q, const char* name, double tol) {
    for (std::size_t a = 0; a < q.cols(); ++a)
        for (std::size_t b = a; b < q.cols(); ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < q.rows(); ++i) dot += q(i, a) * q(i, b);
            const double want = a == b ? 1.0 : 0.0;
            if (std::abs(dot - want) > tol)
                throw std::invalid_argument(std::string("LowRankModel: ") + name +
                                            " columns are not orthonormal");
        }
}

void check_disjoint(const DenseMatrix& q, const DenseMatrix& p, const char* name) {
    for (std::size_t a = 0; a < q.cols(); ++a)
        for (std::size_t b = 0; b < p.cols(); ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < q.rows(); ++i) dot += q(i, a) * p(i, b);
            if (std::abs(dot) > 1e-10)
                throw std::invalid_argument(std::string("LowRankModel: ") + name +
                                            " basis is not orthogonal to the range basis");
        }
}

}  // namespace

LowRankModel::LowRankModel(DenseMatrix u_r, std::vector<double> sigma_r, DenseMatrix v_r,
                           DenseMatrix u_perp, DenseMatrix v_perp)
    : u_r_(std::move(u_r)),
      v_r_(std::move(v_r)),
      u_perp_(std::move(u_perp)),
      v_perp_(std::move(v_perp)),
      sigma_r_(std::move(sigma_r)) {
    const std::size_t r = sigma_r_.size();
    const std::size_t m = std::min(n1(), n2());
    if (r < 1 || r > m)
        throw std::invalid_argument("LowRankModel: rank out of range");
    if (u_r_.cols() != r || v_r_.cols() != r)
        throw std::invalid_argument("LowRankModel: factor widths disagree with rank");
    if (u_perp_.rows() != n1() || u_perp_.cols() != n1() - r)
        throw std::invalid_argument("LowRankModel: U_perp has wrong shape");
    if (v_perp_.rows() != n2() || v_perp_.cols() != n2() - r)
        throw std::invalid_argument("LowRankModel: V_perp has wrong shape");
    for (std::size_t i = 0; i < r; ++i) {
        if (!(sigma_r_[i] > 0.0))
            throw std::invalid_argument("LowRankModel: singular values must be positive");
        if (i > 0 && sigma_r_[i] > sigma_r_[i - 1])
            throw std::invalid_argument("LowRankModel: singular values must be nonincreasing");
    }
    check_orthonormal(u_r_, "U_r", 1e-8);
    check_orthonormal(v_r_, "V_r", 1e-8);
    check_orthonormal(u_perp_, "U_perp", 1e-8);
    check_orthonormal(v_perp_, "V_perp", 1e-8);
    check_disjoint(u_r_, u_perp_, "U_perp");
    check_disjoint(v_r_, v_perp_, "V_perp");
}

LowRankModel LowRankModel::from_matrix(const DenseMatrix& m, std::size_t r) {
    const std::size_t mm = std::min(m.rows(), m.cols());
    if (r < 1 || r > mm)
        throw std::invalid_argument("LowRankModel::from_matrix: rank out of range");
    SvdResult f = svd(m);
    DenseMatrix ur(m.rows(), r), vr(m.cols(), r);
    std::vector<double> s(f.singular_values.begin(), f.singular_values.begin() + r);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < r; ++j) ur(i, j) = f.left_vectors(i, j);
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < r; ++j) vr(i, j) = f.right_vectors(i, j);
    DenseMatrix up = complete_basis(ur);
    DenseMatrix vp = complete_basis(vr);
    return LowRankModel(std::move(ur), std::move(s), std::move(vr), std::move(up), std::move(vp));
}

DenseMatrix LowRankModel::reconstruct() const {
    DenseMatrix out(n1(), n2());
    const std::size_t r = rank();
    for (std::size_t t = 0; t < r; ++t)
        for (std::size_t i = 0; i < n1(); ++i) {
            const double us = u_r_(i, t) * sigma_r_[t];
            for (std::size_t j = 0; j < n2(); ++j) out(i, j) += us * v_r_(j, t);
        }
    return out;
}

std::pair<DenseMatrix, DenseMatrix> null_projectors(const LowRankModel& model) {
    DenseMatrix pu = model.u_perp().cols() == 0 ? DenseMatrix(model.n1(), model.n1())
                                                : gram(model.u_perp());
    DenseMatrix pv = model.v_perp().cols() == 0 ? DenseMatrix(model.n2(), model.n2())
                                                : gram(model.v_perp());
    return {std::move(pu), std::move(pv)};
}

DenseMatrix taylor_residual(const LowRankModel& model, const DenseMatrix& delta) {
    if (delta.rows() != model.n1() || delta.cols() != model.n2())
        throw std::invalid_argument("taylor_residual: delta shape disagrees with model");
    const DenseMatrix m = model.reconstruct();
    DenseMatrix r = rank_r_project(m + delta, model.rank());
    r -= m;
    r -= delta;
    auto [pu, pv] = null_projectors(model);
    r += matmul(matmul(pu, delta), pv);
    return r;
}

}  // namespace iht
