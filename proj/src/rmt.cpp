#include "iht/rmt.hpp"

#include "iht/asymptotics.hpp"
#include "iht/eigen_sym.hpp"
#include "iht/kernels.hpp"
#include "iht/rng.hpp"
#include "iht/sampling.hpp"
#include "iht/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iht {

const char* to_string(EsdConstruction c) {
    return c == EsdConstruction::plain ? "plain" : "kronecker";
}

DenseMatrix haar_orthogonal(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be positive");
    Rng rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DenseMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = gauss(rng);
    QrResult f = householder_qr(g);
    for (std::size_t j = 0; j < n; ++j) {
        if (f.r(j, j) < 0.0)
            for (std::size_t i = 0; i < n; ++i) f.q(i, j) = -f.q(i, j);
    }
    return std::move(f.q);
}

OrthogonalModelDraw random_orthogonal_model(std::size_t n1, std::size_t n2, std::size_t r,
                                            std::vector<double> singular_values,
                                            std::uint64_t seed) {
    if (r < 1 || r > std::min(n1, n2))
        throw std::invalid_argument("random_orthogonal_model: rank out of range");
    if (singular_values.empty()) {
        singular_values.resize(r);
        for (std::size_t i = 0; i < r; ++i) singular_values[i] = double(r - i);
    }
    if (singular_values.size() != r)
        throw std::invalid_argument("random_orthogonal_model: need r singular values");

    const DenseMatrix u = haar_orthogonal(n1, derive_seed(seed, 1));
    const DenseMatrix v = haar_orthogonal(n2, derive_seed(seed, 2));
    DenseMatrix ur(n1, r), upp(n1, n1 - r), vr(n2, r), vpp(n2, n2 - r);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            (j < r ? ur(i, j) : upp(i, j - r)) = u(i, j);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            (j < r ? vr(i, j) : vpp(i, j - r)) = v(i, j);

    LowRankModel model(std::move(ur), std::move(singular_values), std::move(vr), std::move(upp),
                       std::move(vpp));
    DenseMatrix m = model.reconstruct();
    return {std::move(model), std::move(m)};
}

namespace {

std::size_t integral_or_throw(double x, const char* what) {
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9 || r < 0.0)
        throw std::invalid_argument(std::string(what) + " = " + std::to_string(x) +
                                    " is not a nonnegative integer");
    return std::size_t(r);
}

}  // namespace

std::vector<double> subsampled_gram_eigenvalues(const DenseMatrix& wq, double p,
                                                std::uint64_t seed) {
    const std::size_t n = wq.rows();
    const std::size_t pn = integral_or_throw(p * double(n), "p*n");
    if (pn < 1 || pn > n)
        throw std::invalid_argument("subsampled_gram_eigenvalues: row count out of range");

    const std::vector<std::size_t> rows = sample_rows(n, pn, seed);
    DenseMatrix wpq(pn, wq.cols());
    for (std::size_t t = 0; t < pn; ++t)
        for (std::size_t j = 0; j < wq.cols(); ++j) wpq(t, j) = wq(rows[t], j);

    // Eigenvalues of W W^T are the squared singular values padded with zeros;
    // diagonalize the smaller Gram matrix.
    std::vector<double> ev(pn, 0.0);
    const bool rows_small = pn <= wq.cols();
    const DenseMatrix g = rows_small ? gram(wpq) : gram(wpq.transpose());
    const std::vector<double> lam = jacobi_eigh(g).values;
    const std::size_t offset = rows_small ? 0 : pn - wq.cols();
    for (std::size_t i = 0; i < lam.size(); ++i) ev[offset + i] = lam[i];
    std::sort(ev.begin(), ev.end());

    for (double& v : ev) {
        if (v < -1e-8 || v > 1.0 + 1e-8)
            throw std::runtime_error("subsampled_gram_eigenvalues: eigenvalue " +
                                     std::to_string(v) + " escaped [0,1]");
        v = std::min(1.0, std::max(0.0, v));
    }
    return ev;
}

EsdSample esd_of_truncation(std::size_t n, double p, double q, EsdConstruction construction,
                            std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("esd_of_truncation: n must be positive");
    if (!(p > 0.0 && p <= 1.0) || !(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("esd_of_truncation: p and q must lie in (0,1]");
    const std::size_t qn = integral_or_throw(q * double(n), "q*n");
    integral_or_throw(p * double(n), "p*n");
    if (qn < 1) throw std::invalid_argument("esd_of_truncation: q*n must be at least 1");

    DenseMatrix wq;
    if (construction == EsdConstruction::plain) {
        const DenseMatrix w = haar_orthogonal(n, derive_seed(seed, 10));
        wq = DenseMatrix(n, qn);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < qn; ++j) wq(i, j) = w(i, j);
    } else {
        const std::size_t f = integral_or_throw(std::sqrt(double(n)), "sqrt(n)");
        const std::size_t c = integral_or_throw(std::sqrt(q) * double(f), "sqrt(q)*sqrt(n)");
        if (c < 1)
            throw std::invalid_argument("esd_of_truncation: kronecker column split is empty");
        const DenseMatrix q1 = haar_orthogonal(f, derive_seed(seed, 11));
        const DenseMatrix q2 = haar_orthogonal(f, derive_seed(seed, 12));
        wq = DenseMatrix(n, qn);
        // (Q1 kron Q2)[(i1*f+i2), (j1*c+j2)] = Q1(i1,j1) Q2(i2,j2)
        for (std::size_t i1 = 0; i1 < f; ++i1)
            for (std::size_t i2 = 0; i2 < f; ++i2) {
                double* row = wq.data() + (i1 * f + i2) * qn;
                for (std::size_t j1 = 0; j1 < c; ++j1) {
                    const double a = q1(i1, j1);
                    for (std::size_t j2 = 0; j2 < c; ++j2) row[j1 * c + j2] = a * q2(i2, j2);
                }
            }
    }

    EsdSample out;
    out.eigenvalues = subsampled_gram_eigenvalues(wq, p, derive_seed(seed, 13));
    out.n = n;
    out.p = p;
    out.q = q;
    out.construction = construction;
    out.seed = seed;
    return out;
}

double histogram_distance(const std::vector<double>& eigenvalues, double p, double q,
                          std::size_t bins) {
    if (bins < 10) throw std::invalid_argument("histogram_distance: need at least 10 bins");
    if (eigenvalues.empty())
        throw std::invalid_argument("histogram_distance: empty eigenvalue sample");
    const double w = 1.0 / double(bins);
    std::vector<double> hist(bins, 0.0);
    for (double v : eigenvalues) {
        std::size_t b = std::min(bins - 1, std::size_t(v / w));
        hist[b] += 1.0;
    }
    const double scale = 1.0 / (double(eigenvalues.size()) * w);
    for (double& h : hist) h *= scale;

    const AsymptoticParams params = make_params_pq(p, q);
    const LimitingEsd lim = limiting_esd(params);
    double dist = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        double mass = continuous_mass(params, double(b) * w, double(b + 1) * w);
        if (b == 0) mass += lim.mass_at_0;
        if (b == bins - 1) mass += lim.mass_at_1;
        dist += std::abs(hist[b] - mass / w) * w;
    }
    return dist;
}

double histogram_distance(const EsdSample& sample, std::size_t bins) {
    return histogram_distance(sample.eigenvalues, sample.p, sample.q, bins);
}

DenseMatrix hadamard(unsigned order_exponent) {
    std::size_t order = std::size_t(1) << order_exponent;
    DenseMatrix h(order, order, 0.0);
    h(0, 0) = 1.0;
    for (std::size_t half = 1; half < order; half *= 2)
        for (std::size_t i = 0; i < half; ++i)
            for (std::size_t j = 0; j < half; ++j) {
                const double v = h(i, j);
                h(i, j + half) = v;
                h(i + half, j) = v;
                h(i + half, j + half) = -v;
            }
    return h;
}

DenseMatrix non_concentrated_example(std::size_t n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("non_concentrated_example: n must be an even power of two");
    const std::size_t half = n / 2;
    if ((half & (half - 1)) != 0)
        throw std::invalid_argument("non_concentrated_example: n/2 = " + std::to_string(half) +
                                    " is not a valid Sylvester-Hadamard order");
    unsigned k = 0;
    while ((std::size_t(1) << k) < half) ++k;
    const DenseMatrix h = hadamard(k);
    const double top = 0.6 * std::sqrt(2.0 / double(n));
    const double bottom = 0.8 * std::sqrt(2.0 / double(n));
    DenseMatrix e(n, half);
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = 0; j < half; ++j) {
            e(i, j) = top * h(i, j);
            e(i + half, j) = bottom * h(i, j);
        }
    return e;
}

ConcentrationReport quad_form_concentration_test(VectorFamily vectors, MatrixFamily matrices,
                                                 const std::vector<std::size_t>& n_grid,
                                                 std::size_t trials, double q,
                                                 std::uint64_t seed) {
    if (n_grid.empty()) throw std::invalid_argument("quad_form_concentration_test: empty grid");
    if (trials < 2) throw std::invalid_argument("quad_form_concentration_test: need >= 2 trials");
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("quad_form_concentration_test: q must lie in (0,1)");

    ConcentrationReport report;
    report.n_grid = n_grid;

    for (const std::size_t n : n_grid) {
        const std::size_t qn = integral_or_throw(q * double(n), "q*n");
        if (qn < 1) throw std::invalid_argument("quad_form_concentration_test: q*n too small");
        const std::size_t dim =
            vectors == VectorFamily::gaussian ? qn : qn * qn;  // ambient size of M
        const double expectation_scale =
            vectors == VectorFamily::gaussian ? double(n) : double(n) * double(n);

        // PSD test matrix with spectral norm bounded by 2, fixed per n.
        Rng mrng = make_rng(derive_seed(seed, 1, n));
        std::vector<double> diag(dim, 1.0);
        std::vector<std::vector<double>> dirs;
        std::vector<double> weights;
        double frob2 = 0.0;
        if (matrices == MatrixFamily::diag_plus_low_rank) {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (double& d : diag) d = unif(mrng);
            constexpr std::size_t kRankAdd = 5;
            dirs.assign(kRankAdd, std::vector<double>(dim));
            weights.assign(kRankAdd, 0.0);
            std::normal_distribution<double> gauss(0.0, 1.0);
            for (std::size_t t = 0; t < kRankAdd; ++t) {
                double norm2 = 0.0;
                for (double& x : dirs[t]) {
                    x = gauss(mrng);
                    norm2 += x * x;
                }
                const double inv = 1.0 / std::sqrt(norm2);
                for (double& x : dirs[t]) x *= inv;
                weights[t] = unif(mrng);
            }
            // ||M||_F^2 = ||D||^2 + 2 sum w_t v_t' D v_t + sum_{t,s} w_t w_s (v_t'v_s)^2
            for (double d : diag) frob2 += d * d;
            for (std::size_t t = 0; t < kRankAdd; ++t) {
                double vdv = 0.0;
                for (std::size_t i = 0; i < dim; ++i) vdv += dirs[t][i] * diag[i] * dirs[t][i];
                frob2 += 2.0 * weights[t] * vdv;
                for (std::size_t s = 0; s < kRankAdd; ++s) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) dot += dirs[t][i] * dirs[s][i];
                    frob2 += weights[t] * weights[s] * dot * dot;
                }
            }
        } else {
            frob2 = double(dim);
        }
        double trace = 0.0;
        for (double d : diag) trace += d;
        for (double wgt : weights) trace += wgt;

        Rng trng = make_rng(derive_seed(seed, 2, n));
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double entry_sd = 1.0 / std::sqrt(double(n));
        std::vector<double> a(dim), b(qn), c(qn);
        std::vector<double> stats(trials);
        for (std::size_t t = 0; t < trials; ++t) {
            if (vectors == VectorFamily::gaussian) {
                for (double& x : a) x = gauss(trng) * entry_sd;
            } else {
                for (double& x : b) x = gauss(trng) * entry_sd;
                for (double& x : c) x = gauss(trng) * entry_sd;
                for (std::size_t i = 0; i < qn; ++i)
                    for (std::size_t j = 0; j < qn; ++j) a[i * qn + j] = b[i] * c[j];
            }
            double quad = 0.0;
            for (std::size_t i = 0; i < dim; ++i) quad += diag[i] * a[i] * a[i];
            for (std::size_t r = 0; r < dirs.size(); ++r) {
                double dot = 0.0;
                for (std::size_t i = 0; i < dim; ++i) dot += dirs[r][i] * a[i];
                quad += weights[r] * dot * dot;
            }
            stats[t] = quad - trace / expectation_scale;
        }
        double mean = std::accumulate(stats.begin(), stats.end(), 0.0) / double(trials);
        double var = 0.0;
        for (double s : stats) var += (s - mean) * (s - mean);
        var /= double(trials - 1);
        report.variances.push_back(var);
        report.gaussian_theory_variance.push_back(
            vectors == VectorFamily::gaussian ? 2.0 / (double(n) * double(n)) * frob2 : 0.0);
    }

    // least-squares slope of log(var) against log(n)
    const std::size_t m = n_grid.size();
    if (m >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = std::log(double(n_grid[i]));
            const double y = std::log(report.variances[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        report.fitted_slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
    }
    return report;
}

}  // namespace iht
