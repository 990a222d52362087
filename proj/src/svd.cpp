#include "iht/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace iht {

namespace {

constexpr double kRotTol = 1e-14;      // relative off-diagonality target
constexpr int kMaxSweeps = 60;
constexpr double kRankCut = 1e-12;     // sigma < cut * sigma_max treated as zero

struct ColumnStore {
    // column-major working copies of A (m x n) and V (n x n)
    std::size_t m = 0, n = 0;
    std::vector<double> g;
    std::vector<double> v;

    double* col(std::size_t j) { return g.data() + j * m; }
    double* vcol(std::size_t j) { return v.data() + j * n; }
};

ColumnStore load(const DenseMatrix& a) {
    ColumnStore cs;
    cs.m = a.rows();
    cs.n = a.cols();
    cs.g.resize(cs.m * cs.n);
    cs.v.assign(cs.n * cs.n, 0.0);
    for (std::size_t j = 0; j < cs.n; ++j) {
        for (std::size_t i = 0; i < cs.m; ++i) cs.g[j * cs.m + i] = a(i, j);
        cs.v[j * cs.n + j] = 1.0;
    }
    return cs;
}

// Orthogonalize columns i and j of G (and rotate V accordingly).
// Returns true if a rotation was applied.
bool rotate_pair(ColumnStore& cs, std::size_t i, std::size_t j) {
    double* gi = cs.col(i);
    double* gj = cs.col(j);
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    for (std::size_t k = 0; k < cs.m; ++k) {
        alpha += gi[k] * gi[k];
        beta += gj[k] * gj[k];
        gamma += gi[k] * gj[k];
    }
    if (alpha == 0.0 || beta == 0.0) return false;
    if (std::abs(gamma) <= kRotTol * std::sqrt(alpha * beta)) return false;

    const double zeta = (beta - alpha) / (2.0 * gamma);
    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = c * t;

    for (std::size_t k = 0; k < cs.m; ++k) {
        const double x = gi[k], y = gj[k];
        gi[k] = c * x - s * y;
        gj[k] = s * x + c * y;
    }
    double* vi = cs.vcol(i);
    double* vj = cs.vcol(j);
    for (std::size_t k = 0; k < cs.n; ++k) {
        const double x = vi[k], y = vj[k];
        vi[k] = c * x - s * y;
        vj[k] = s * x + c * y;
    }
    return true;
}

void jacobi_cyclic(ColumnStore& cs) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        std::size_t rotations = 0;
        for (std::size_t i = 0; i + 1 < cs.n; ++i)
            for (std::size_t j = i + 1; j < cs.n; ++j)
                if (rotate_pair(cs, i, j)) ++rotations;
        if (rotations == 0) return;
    }
    throw std::runtime_error("svd: Jacobi sweeps did not converge for " +
                             std::to_string(cs.m) + "x" + std::to_string(cs.n) + " matrix");
}

// Round-robin tournament ordering: every round pairs disjoint columns, so the
// rotations of one round can run in parallel with bitwise-reproducible results
// independent of the thread count.
void jacobi_round_robin(ColumnStore& cs) {
    const std::size_t n = cs.n;
    const std::size_t padded = n + (n % 2);
    const std::size_t half = padded / 2;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        std::size_t rotations = 0;
        for (std::size_t round = 0; round + 1 < padded; ++round) {
            std::size_t local = 0;
#pragma omp parallel for schedule(static) reduction(+ : local)
            for (std::int64_t k = 0; k < std::int64_t(half); ++k) {
                std::size_t a, b;
                if (k == 0) {
                    a = 0;
                    b = 1 + (round + padded - 2) % (padded - 1);
                } else {
                    a = 1 + (std::size_t(k) - 1 + round) % (padded - 1);
                    b = 1 + (padded - 2 - std::size_t(k) + round) % (padded - 1);
                }
                if (a >= n || b >= n) continue;
                if (rotate_pair(cs, std::min(a, b), std::max(a, b))) ++local;
            }
            rotations += local;
        }
        if (rotations == 0) return;
    }
    throw std::runtime_error("svd: Jacobi sweeps did not converge for " +
                             std::to_string(cs.m) + "x" + std::to_string(cs.n) + " matrix");
}

// Fill U columns whose singular value is numerically zero with an orthonormal
// completion (modified Gram-Schmidt against everything accepted so far).
void fix_null_columns(DenseMatrix& u, const std::vector<bool>& is_null) {
    const std::size_t m = u.rows(), n = u.cols();
    std::vector<double> work(m);
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_null[j]) continue;
        bool placed = false;
        for (std::size_t cand = 0; cand < m && !placed; ++cand) {
            for (std::size_t i = 0; i < m; ++i) work[i] = (i == cand) ? 1.0 : 0.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t l = 0; l < n; ++l) {
                    if (l == j || (is_null[l] && l > j)) continue;
                    double dot = 0.0;
                    for (std::size_t i = 0; i < m; ++i) dot += work[i] * u(i, l);
                    for (std::size_t i = 0; i < m; ++i) work[i] -= dot * u(i, l);
                }
            }
            double norm = 0.0;
            for (double w : work) norm += w * w;
            norm = std::sqrt(norm);
            if (norm > 0.5) {
                for (std::size_t i = 0; i < m; ++i) u(i, j) = work[i] / norm;
                placed = true;
            }
        }
        if (!placed)
            throw std::runtime_error("svd: failed to complete orthonormal basis");
    }
}

SvdResult finish(ColumnStore& cs) {
    const std::size_t m = cs.m, n = cs.n;
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        const double* gj = cs.col(j);
        for (std::size_t i = 0; i < m; ++i) s += gj[i] * gj[i];
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

    SvdResult out;
    out.left_vectors = DenseMatrix(m, n);
    out.right_vectors = DenseMatrix(n, n);
    out.singular_values.resize(n);
    const double smax = sigma[order[0]];
    std::vector<bool> is_null(n, false);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        out.singular_values[jj] = sigma[j];
        const double* vj = cs.vcol(j);
        for (std::size_t i = 0; i < n; ++i) out.right_vectors(i, jj) = vj[i];
        if (sigma[j] > kRankCut * smax && sigma[j] > 0.0) {
            const double* gj = cs.col(j);
            for (std::size_t i = 0; i < m; ++i) out.left_vectors(i, jj) = gj[i] / sigma[j];
        } else {
            is_null[jj] = true;
        }
    }
    fix_null_columns(out.left_vectors, is_null);
    return out;
}

SvdResult svd_tall(const DenseMatrix& a, bool parallel) {
    ColumnStore cs = load(a);
    if (parallel && cs.n >= 48)
        jacobi_round_robin(cs);
    else
        jacobi_cyclic(cs);
    return finish(cs);
}

SvdResult svd_any(const DenseMatrix& a, bool parallel) {
    if (!a.all_finite())
        throw std::invalid_argument("svd: input contains non-finite entries");
    if (a.rows() == 0 || a.cols() == 0) return {};
    if (a.rows() >= a.cols()) return svd_tall(a, parallel);
    SvdResult t = svd_tall(a.transpose(), parallel);
    std::swap(t.left_vectors, t.right_vectors);
    return t;
}

}  // namespace

SvdResult svd(const DenseMatrix& a) { return svd_any(a, true); }

namespace serial {
SvdResult svd(const DenseMatrix& a) { return svd_any(a, false); }
}  // namespace serial

DenseMatrix rank_r_project(const DenseMatrix& a, std::size_t r) {
    return rank_r_project_diag(a, r).value;
}

RankProjection rank_r_project_diag(const DenseMatrix& a, std::size_t r) {
    const std::size_t m = std::min(a.rows(), a.cols());
    if (r < 1 || r > m)
        throw std::invalid_argument("rank_r_project: r=" + std::to_string(r) +
                                    " out of range [1," + std::to_string(m) + "]");
    SvdResult f = svd(a);
    RankProjection out;
    out.value = DenseMatrix(a.rows(), a.cols());
    for (std::size_t t = 0; t < r; ++t) {
        const double s = f.singular_values[t];
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const double us = f.left_vectors(i, t) * s;
            for (std::size_t j = 0; j < a.cols(); ++j)
                out.value(i, j) += us * f.right_vectors(j, t);
        }
    }
    if (r < m) {
        const double s1 = f.singular_values[0];
        const double gap = f.singular_values[r - 1] - f.singular_values[r];
        out.degenerate_gap =
            f.singular_values[r - 1] > 1e-12 * std::max(s1, 1.0) && gap <= 1e-10 * std::max(s1, 1.0);
    }
    return out;
}

QrResult householder_qr(const DenseMatrix& a) {
    const std::size_t n = a.rows(), m = a.cols();
    DenseMatrix r = a;
    DenseMatrix q = DenseMatrix::identity(n);
    std::vector<double> v(n);
    const std::size_t steps = std::min(n == 0 ? 0 : n - 1, m);
    for (std::size_t k = 0; k < steps; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += r(i, k) * r(i, k);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = r(k, k) >= 0.0 ? -norm : norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : 0.0);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double scale = 2.0 / vnorm2;
        // apply H = I - scale * v v^T to R (columns k..m) and to Q (all columns)
#pragma omp parallel for schedule(static) if (m > 64 && n > 64)
        for (std::int64_t j = std::int64_t(k); j < std::int64_t(m); ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * r(i, std::size_t(j));
            dot *= scale;
            for (std::size_t i = k; i < n; ++i) r(i, std::size_t(j)) -= dot * v[i];
        }
#pragma omp parallel for schedule(static) if (n > 64)
        for (std::int64_t j = 0; j < std::int64_t(n); ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * q(std::size_t(j), i);
            dot *= scale;
            for (std::size_t i = k; i < n; ++i) q(std::size_t(j), i) -= dot * v[i];
        }
    }
    return {std::move(q), std::move(r)};
}

DenseMatrix complete_basis(const DenseMatrix& u) {
    const std::size_t n = u.rows(), r = u.cols();
    if (r > n) throw std::invalid_argument("complete_basis: more columns than rows");
    if (r == n) return DenseMatrix(n, 0);
    if (r == 0) return DenseMatrix::identity(n);
    QrResult f = householder_qr(u);
    DenseMatrix out(n, n - r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r; j < n; ++j) out(i, j - r) = f.q(i, j);
    return out;
}

}  // namespace iht
