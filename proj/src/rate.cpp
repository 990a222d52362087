#include "iht/rate.hpp"

#include "iht/eigen_sym.hpp"
#include "iht/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace iht {

namespace {

constexpr std::uint64_t kDefaultMemCap = 2ULL << 30;
constexpr double kLambdaZero = 1e-8;
const double kInf = std::numeric_limits<double>::infinity();

std::uint64_t resolve_mem_cap(std::uint64_t cap) {
    if (cap != 0) return cap;
    if (const char* env = std::getenv("IHT_RATE_MEMCAP_BYTES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultMemCap;
}

}  // namespace

double default_c1() { return 4.0 * (1.0 + std::sqrt(2.0)); }

DenseMatrix build_W(const SamplingSet& omega_bar, const LowRankModel& model,
                    std::uint64_t mem_cap_bytes) {
    if (omega_bar.n1() != model.n1() || omega_bar.n2() != model.n2())
        throw std::invalid_argument("build_W: Omega_bar dimensions disagree with model");
    const DenseMatrix& up = model.u_perp();
    const DenseMatrix& vp = model.v_perp();
    const std::size_t cu = up.cols(), cv = vp.cols();
    const std::size_t rows = omega_bar.count();
    const std::size_t cols = cu * cv;

    const std::uint64_t bytes = std::uint64_t(rows) * cols * sizeof(double);
    const std::uint64_t cap = resolve_mem_cap(mem_cap_bytes);
    if (bytes > cap)
        throw std::runtime_error("build_W: W buffer requires " + std::to_string(bytes) +
                                 " bytes, above the cap of " + std::to_string(cap) +
                                 " (set IHT_RATE_MEMCAP_BYTES to override)");

    DenseMatrix w(rows, cols);
#pragma omp parallel for schedule(static) if (rows * cols > 1u << 16)
    for (std::int64_t t = 0; t < std::int64_t(rows); ++t) {
        const auto [i, j] = omega_bar.pairs()[std::size_t(t)];
        double* row = w.data() + std::size_t(t) * cols;
        for (std::size_t l = 0; l < cv; ++l) {
            const double vj = vp(j, l);
            for (std::size_t k = 0; k < cu; ++k) row[l * cu + k] = vj * up(i, k);
        }
    }
    return w;
}

double lambda_min_H(const DenseMatrix& w) {
    if (w.cols() == 0) return 0.0;      // H is the zero matrix
    if (w.rows() > w.cols()) return 0.0;  // rank-deficient H
    const DenseMatrix g = gram(w);
    const double raw = jacobi_eigh(g).values.front();
    if (raw < -kLambdaZero || raw > 1.0 + kLambdaZero)
        throw std::runtime_error("lambda_min_H: eigenvalue " + std::to_string(raw) +
                                 " escaped [0,1]");
    const double clipped = std::min(1.0, std::max(0.0, raw));
    return clipped < kLambdaZero ? 0.0 : clipped;
}

double roc_radius(double lambda_min, double sigma_r, double c1) {
    if (lambda_min < 0.0 || sigma_r < 0.0 || !(c1 > 0.0))
        throw std::invalid_argument("roc_radius: invalid arguments");
    return lambda_min * sigma_r / c1;
}

double exp_integral_e1(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("exp_integral_e1: t must be positive");
    if (t <= 1.0) {
        // E1(t) = -gamma - ln t + sum_{k>=1} (-1)^{k+1} t^k / (k * k!)
        constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= t / k;
            const double add = (k % 2 == 1 ? term : -term) / k;
            sum += add;
            if (std::abs(add) < 1e-18) break;
        }
        return -kEulerGamma - std::log(t) + sum;
    }
    // Continued fraction with the modified Lentz scheme.
    constexpr double kTiny = 1e-300;
    double b = t + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-t);
}

IterationBound iteration_bound(double eps, double lambda_min, double initial_error,
                               double sigma_r, double c1) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("iteration_bound: eps must lie in (0,1]");
    if (!(lambda_min > 0.0 && lambda_min <= 1.0))
        throw std::invalid_argument("iteration_bound: lambda_min must lie in (0,1]");
    if (initial_error < 0.0 || !(sigma_r > 0.0) || !(c1 > 0.0))
        throw std::invalid_argument("iteration_bound: invalid arguments");

    const double tau = c1 * initial_error / (sigma_r * lambda_min);
    if (tau >= 1.0)
        throw std::domain_error("iteration_bound: outside region of convergence (tau = " +
                                std::to_string(tau) + " >= 1)");
    const double rho = 1.0 - lambda_min;
    if (rho == 0.0) {
        // The error recursion collapses to the pure quadratic e' <= q e^2 and
        // contracts by tau per squaring; the printed formula degenerates.
        double K = 1.0;
        if (tau > 0.0 && eps < 1.0)
            K = std::ceil(std::log2(1.0 + std::log(1.0 / eps) / std::log(1.0 / tau)));
        return {K, tau, 1.0};
    }
    double c = 1.0;
    if (tau > 0.0) {
        const double l0 = std::log(1.0 / rho);
        const double lt = std::log(1.0 / (rho + tau * (1.0 - rho)));
        c = (exp_integral_e1(lt) - exp_integral_e1(l0) + 0.5 * std::log(l0 / lt)) / (rho * l0) +
            1.0;
    }
    const double K = std::log(1.0 / eps) / std::log(1.0 / rho) + c;
    return {K, tau, c};
}

RateReport rate_report(double lambda_min, double sigma_r, double c1, double initial_error,
                       double eps) {
    RateReport r;
    r.lambda_min = lambda_min;
    r.rho = 1.0 - lambda_min;
    r.roc_radius = roc_radius(lambda_min, sigma_r, c1);
    if (lambda_min <= 0.0) {
        r.K_of_eps = kInf;
        r.tau = kInf;
        r.c_const = kInf;
        return r;
    }
    const IterationBound b = iteration_bound(eps, lambda_min, initial_error, sigma_r, c1);
    r.K_of_eps = b.K_of_eps;
    r.tau = b.tau;
    r.c_const = b.c_const;
    return r;
}

}  // namespace iht
