#pragma once

#include "iht/matrix.hpp"
#include "iht/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iht {

enum class StepPolicy { unit, svp, custom };

/// Two algebraically equal ways to write the eta = 1 iteration. algorithm1
/// projects the mask-corrected iterate; theorem1 masks the projected iterate
/// and re-imposes the observations, which keeps the error supported on the
/// unobserved set from the first step on (the form the error recursion is
/// stated for).
enum class UpdateForm { algorithm1, theorem1 };

struct SolverConfig {
    std::size_t rank = 1;
    StepPolicy policy = StepPolicy::unit;
    double eta = 1.0;  // used when policy == custom
    std::size_t max_iters = 3000;
    double relative_tolerance = 1e-8;
    double numerical_floor = 1e-12;
    UpdateForm form = UpdateForm::algorithm1;
};

enum class StopReason { max_iters, tolerance_met, stagnated };

const char* to_string(StopReason r);

struct SolverTrace {
    std::vector<double> error_norms;  // length iterations_run + 1, includes k = 0
    std::size_t iterations_run = 0;
    StopReason stop_reason = StopReason::max_iters;
};

struct SolveResult {
    DenseMatrix x;
    SolverTrace trace;
};

/// One projected-gradient step: P_r(X - eta * P_Omega(X - M)), with
/// P_Omega(M) supplied as `observed`.
DenseMatrix pgd_step(const DenseMatrix& x, const DenseMatrix& observed, const SamplingSet& omega,
                     std::size_t r, double eta);

/// Run the IHTSVD iteration from X0 (or the spectral initialization
/// P_r(observed) when X0 is absent). Trace error norms are ||X - M||_F when
/// ground truth is supplied, otherwise the observed residual.
SolveResult run_ihtsvd(const DenseMatrix& observed, const SamplingSet& omega,
                       const SolverConfig& config, const std::optional<DenseMatrix>& x0,
                       const DenseMatrix* ground_truth = nullptr);

/// M plus i.i.d. N(0, sigma^2) noise, deterministic per seed.
DenseMatrix init_near(const DenseMatrix& m, double sigma, std::uint64_t seed);

/// Check the error-recursion inequality
/// e[k+1] <= (1 - lambda_min) e[k] + (c1/sigma_r) e[k]^2 + 1e-10 for all k.
bool check_descent_inequality(const SolverTrace& trace, double lambda_min, double sigma_r,
                              double c1);

}  // namespace iht
