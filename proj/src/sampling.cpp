#include "iht/sampling.hpp"

#include "iht/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iht {

SamplingSet::SamplingSet(std::size_t n1, std::size_t n2, std::vector<Pair> pairs)
    : n1_(n1), n2_(n2), pairs_(std::move(pairs)) {
    if (n1_ == 0 || n2_ == 0)
        throw std::invalid_argument("SamplingSet: dimensions must be positive");
    if (pairs_.empty() || pairs_.size() >= n1_ * n2_)
        throw std::invalid_argument("SamplingSet: need 1 <= |Omega| < n1*n2, got " +
                                    std::to_string(pairs_.size()));
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        if (pairs_[k].first >= n1_ || pairs_[k].second >= n2_)
            throw std::invalid_argument("SamplingSet: index pair out of range");
        if (k > 0 && pairs_[k] == pairs_[k - 1])
            throw std::invalid_argument("SamplingSet: duplicate index pair");
    }
}

bool SamplingSet::contains(std::uint32_t i, std::uint32_t j) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{i, j});
}

std::vector<bool> SamplingSet::mask() const {
    std::vector<bool> m(n1_ * n2_, false);
    for (const auto& [i, j] : pairs_) m[std::size_t(i) * n2_ + j] = true;
    return m;
}

namespace {

std::vector<std::size_t> fisher_yates_prefix(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng = make_rng(seed);
    for (std::size_t t = 0; t < k; ++t) {
        std::uniform_int_distribution<std::size_t> pick(t, n - 1);
        std::swap(idx[t], idx[pick(rng)]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace

SamplingSet uniform_sample(std::size_t n1, std::size_t n2, std::size_t s, std::uint64_t seed) {
    if (n1 == 0 || n2 == 0)
        throw std::invalid_argument("uniform_sample: dimensions must be positive");
    if (s < 1 || s >= n1 * n2)
        throw std::invalid_argument("uniform_sample: need 1 <= s < n1*n2, got s=" +
                                    std::to_string(s));
    std::vector<std::size_t> flat = fisher_yates_prefix(n1 * n2, s, seed);
    std::vector<SamplingSet::Pair> pairs;
    pairs.reserve(s);
    for (std::size_t f : flat)
        pairs.emplace_back(std::uint32_t(f / n2), std::uint32_t(f % n2));
    return SamplingSet(n1, n2, std::move(pairs));
}

std::vector<std::size_t> sample_rows(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n) throw std::invalid_argument("sample_rows: k > n");
    std::vector<std::size_t> rows = fisher_yates_prefix(n, k, seed);
    std::sort(rows.begin(), rows.end());
    return rows;
}

namespace {

void check_shape(const DenseMatrix& a, const SamplingSet& omega, const char* what) {
    if (a.rows() != omega.n1() || a.cols() != omega.n2())
        throw std::invalid_argument(std::string(what) + ": matrix shape disagrees with Omega");
}

}  // namespace

DenseMatrix project_omega(const DenseMatrix& a, const SamplingSet& omega) {
    check_shape(a, omega, "project_omega");
    DenseMatrix out(a.rows(), a.cols());
    for (const auto& [i, j] : omega.pairs()) out(i, j) = a(i, j);
    return out;
}

DenseMatrix project_omega_complement(const DenseMatrix& a, const SamplingSet& omega) {
    check_shape(a, omega, "project_omega_complement");
    DenseMatrix out = a;
    for (const auto& [i, j] : omega.pairs()) out(i, j) = 0.0;
    return out;
}

SamplingSet complement(const SamplingSet& omega) {
    std::vector<bool> m = omega.mask();
    std::vector<SamplingSet::Pair> pairs;
    pairs.reserve(omega.n1() * omega.n2() - omega.count());
    for (std::size_t i = 0; i < omega.n1(); ++i)
        for (std::size_t j = 0; j < omega.n2(); ++j)
            if (!m[i * omega.n2() + j])
                pairs.emplace_back(std::uint32_t(i), std::uint32_t(j));
    return SamplingSet(omega.n1(), omega.n2(), std::move(pairs));
}

bool dof_satisfied(std::size_t n1, std::size_t n2, std::size_t r, std::size_t s) {
    if (r < 1 || r > std::min(n1, n2))
        throw std::invalid_argument("dof_satisfied: rank out of range");
    return s >= (n1 + n2 - r) * r;
}

double incoherence(const DenseMatrix& q) {
    const std::size_t n = q.rows(), r = q.cols();
    if (r == 0 || n == 0 || r > n)
        throw std::invalid_argument("incoherence: need an n x r factor with 1 <= r <= n");
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q(i, a) * q(i, b);
            if (std::abs(dot - (a == b ? 1.0 : 0.0)) > 1e-8)
                throw std::invalid_argument("incoherence: columns are not orthonormal within 1e-8");
        }
    double maxrow = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < r; ++j) s += q(i, j) * q(i, j);
        maxrow = std::max(maxrow, s);
    }
    return double(n) / double(r) * maxrow;
}

}  // namespace iht
