#include "iht/solver.hpp"

#include "iht/rng.hpp"
#include "iht/svd.hpp"

#include <cmath>
#include <stdexcept>

namespace iht {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::max_iters: return "max_iters";
        case StopReason::tolerance_met: return "tolerance_met";
        case StopReason::stagnated: return "stagnated";
    }
    return "unknown";
}

namespace {

void check_supported(const DenseMatrix& observed, const SamplingSet& omega, const char* what) {
    if (observed.rows() != omega.n1() || observed.cols() != omega.n2())
        throw std::invalid_argument(std::string(what) + ": observed shape disagrees with Omega");
    std::vector<bool> m = omega.mask();
    for (std::size_t i = 0; i < observed.rows(); ++i)
        for (std::size_t j = 0; j < observed.cols(); ++j)
            if (!m[i * observed.cols() + j] && observed(i, j) != 0.0)
                throw std::invalid_argument(std::string(what) +
                                            ": observed matrix has support outside Omega");
}

double observed_residual(const DenseMatrix& x, const DenseMatrix& observed,
                         const SamplingSet& omega) {
    double s = 0.0;
    for (const auto& [i, j] : omega.pairs()) {
        const double d = x(i, j) - observed(i, j);
        s += d * d;
    }
    return std::sqrt(s);
}

double resolve_eta(const SolverConfig& c, const SamplingSet& omega) {
    switch (c.policy) {
        case StepPolicy::unit: return 1.0;
        case StepPolicy::svp:
            return double(omega.n1()) * double(omega.n2()) / double(omega.count());
        case StepPolicy::custom: return c.eta;
    }
    return 1.0;
}

void validate(const SolverConfig& c, const SamplingSet& omega, double eta) {
    if (c.rank < 1 || c.rank > std::min(omega.n1(), omega.n2()))
        throw std::invalid_argument("run_ihtsvd: rank out of range");
    if (c.max_iters < 1)
        throw std::invalid_argument("run_ihtsvd: max_iters must be >= 1");
    if (!(c.relative_tolerance > 0.0 && c.relative_tolerance < 1.0))
        throw std::invalid_argument("run_ihtsvd: relative_tolerance must lie in (0,1)");
    if (!(eta > 0.0))
        throw std::invalid_argument("run_ihtsvd: step size must be positive");
    if (c.form == UpdateForm::theorem1 && eta != 1.0)
        throw std::invalid_argument("run_ihtsvd: theorem1 form is defined for eta = 1 only");
}

}  // namespace

DenseMatrix pgd_step(const DenseMatrix& x, const DenseMatrix& observed, const SamplingSet& omega,
                     std::size_t r, double eta) {
    check_supported(observed, omega, "pgd_step");
    if (!x.same_shape(observed))
        throw std::invalid_argument("pgd_step: iterate shape disagrees with observed");
    if (r < 1 || r > std::min(x.rows(), x.cols()))
        throw std::invalid_argument("pgd_step: r out of range");
    if (!(eta > 0.0)) throw std::invalid_argument("pgd_step: eta must be positive");
    DenseMatrix y = x;
    for (const auto& [i, j] : omega.pairs()) y(i, j) -= eta * (x(i, j) - observed(i, j));
    return rank_r_project(y, r);
}

SolveResult run_ihtsvd(const DenseMatrix& observed, const SamplingSet& omega,
                       const SolverConfig& config, const std::optional<DenseMatrix>& x0,
                       const DenseMatrix* ground_truth) {
    check_supported(observed, omega, "run_ihtsvd");
    const double eta = resolve_eta(config, omega);
    validate(config, omega, eta);
    if (ground_truth && !ground_truth->same_shape(observed))
        throw std::invalid_argument("run_ihtsvd: ground truth shape disagrees with observed");

    DenseMatrix x = x0 ? *x0 : rank_r_project(observed, config.rank);
    if (!x.same_shape(observed))
        throw std::invalid_argument("run_ihtsvd: X0 shape disagrees with observed");

    SolverTrace trace;
    auto record = [&](const DenseMatrix& xi) {
        trace.error_norms.push_back(ground_truth ? (xi - *ground_truth).frobenius_norm()
                                                 : observed_residual(xi, observed, omega));
    };
    record(x);
    const double e0 = trace.error_norms.front();

    double prev_res = observed_residual(x, observed, omega);
    std::size_t flat_count = 0;
    trace.stop_reason = StopReason::max_iters;

    for (std::size_t k = 0; k < config.max_iters; ++k) {
        if (eta == 1.0) {
            if (config.form == UpdateForm::algorithm1) {
                // X <- P_r(P_Omega_bar(X) + observed)
                for (const auto& [i, j] : omega.pairs()) x(i, j) = observed(i, j);
                x = rank_r_project(x, config.rank);
            } else {
                // X <- P_Omega_bar(P_r(X)) + observed
                x = rank_r_project(x, config.rank);
                for (const auto& [i, j] : omega.pairs()) x(i, j) = observed(i, j);
            }
        } else {
            x = pgd_step(x, observed, omega, config.rank, eta);
        }
        trace.iterations_run = k + 1;
        record(x);

        if (ground_truth && e0 > 0.0 &&
            trace.error_norms.back() <= config.relative_tolerance * e0) {
            trace.stop_reason = StopReason::tolerance_met;
            break;
        }
        const double res = observed_residual(x, observed, omega);
        flat_count = std::abs(res - prev_res) < config.numerical_floor ? flat_count + 1 : 0;
        prev_res = res;
        if (flat_count >= 10) {
            trace.stop_reason = StopReason::stagnated;
            break;
        }
    }
    return {std::move(x), std::move(trace)};
}

DenseMatrix init_near(const DenseMatrix& m, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("init_near: sigma must be nonnegative");
    DenseMatrix out = m;
    if (sigma == 0.0) return out;
    Rng rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += gauss(rng);
    return out;
}

bool check_descent_inequality(const SolverTrace& trace, double lambda_min, double sigma_r,
                              double c1) {
    const auto& e = trace.error_norms;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
        const double bound = (1.0 - lambda_min) * e[k] + c1 / sigma_r * e[k] * e[k] + 1e-10;
        if (e[k + 1] > bound) return false;
    }
    return true;
}

}  // namespace iht
