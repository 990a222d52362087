#pragma once

#include "iht/low_rank.hpp"
#include "iht/matrix.hpp"
#include "iht/sampling.hpp"

#include <cstdint>

namespace iht {

/// Default residual constant: the upper end 4(1+sqrt(2)) of the bracket for
/// the rank-projection residual bound.
double default_c1();

/// W = S_Omega_bar^T (V_perp kron U_perp): one row per unobserved entry
/// (i,j), holding kron(V_perp[j,:], U_perp[i,:]) under the column-stacking
/// vectorization. Throws a resource error naming the required bytes when the
/// buffer would exceed mem_cap_bytes (0 = use IHT_RATE_MEMCAP_BYTES or the
/// 2 GiB default).
DenseMatrix build_W(const SamplingSet& omega_bar, const LowRankModel& model,
                    std::uint64_t mem_cap_bytes = 0);

/// lambda_min(H) for H = W W^T. Tall W (fewer samples than degrees of
/// freedom) short-circuits to 0; otherwise sigma_min(W)^2 clipped to [0,1],
/// with values below 1e-8 reported as 0 (no linear-convergence guarantee).
double lambda_min_H(const DenseMatrix& w);

/// Region-of-convergence radius lambda_min * sigma_r / c1.
double roc_radius(double lambda_min, double sigma_r, double c1);

/// Exponential integral E1(t) = int_t^inf exp(-z)/z dz, t > 0, to 1e-10
/// absolute accuracy.
double exp_integral_e1(double t);

/// Analytical rate report for one (M, Omega) instance.
struct RateReport {
    double lambda_min = 0.0;
    double rho = 1.0;          // 1 - lambda_min
    double roc_radius = 0.0;   // lambda_min * sigma_r / c1
    double K_of_eps = 0.0;     // +inf when rho = 1
    double tau = 0.0;          // c1 * e0 / (sigma_r * lambda_min)
    double c_const = 0.0;
};

/// Iteration bound K(eps) with its constant c. Requires lambda_min in (0,1]
/// and tau < 1 (throws std::domain_error "outside region of convergence"
/// otherwise). Fills K_of_eps, tau and c_const of a report.
struct IterationBound {
    double K_of_eps;
    double tau;
    double c_const;
};
IterationBound iteration_bound(double eps, double lambda_min, double initial_error,
                               double sigma_r, double c1);

/// Assemble a full report; K/tau/c are +inf when lambda_min = 0 or the
/// initialization lies outside the region of convergence.
RateReport rate_report(double lambda_min, double sigma_r, double c1, double initial_error,
                       double eps);

}  // namespace iht
