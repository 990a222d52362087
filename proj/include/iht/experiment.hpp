#pragma once

#include "iht/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace iht {

struct FitResult {
    double rate = 1.0;
    bool converged = false;
};

/// Fit an exponential decay to an error trace. The turning point k0 is the
/// first index at or below numerical_floor (failing that, the first index
/// where the decrease falls below the floor, then the end of the trace); the
/// least-squares line goes through log(e_k) for k in [0.4 k0, 0.9 k0].
/// Returns (1, false) when the relative-error target eps was never met.
FitResult fit_empirical_rate(const std::vector<double>& error_norms, double numerical_floor,
                             double eps);

struct SweepConfig {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::vector<std::size_t> rank_grid;
    std::vector<double> sample_grid;  // fractions of n1*n2 when < 1, absolute otherwise
    std::size_t runs_per_cell = 25;
    std::uint64_t seed = 0;
    SolverConfig solver;
    double epsilon = 1e-8;
    double sigma = 1e-4;         // initialization noise level
    double rate_threshold = 0.0;  // 0 = derive exp(-log(1/eps)/max_iters)
    bool keep_traces = false;
};

struct CellResult {
    std::size_t r = 0;
    std::size_t s = 0;
    double rho_r = 0.0;
    double rho_s = 0.0;
    double analytical_mean = 1.0;
    double analytical_std = 0.0;
    double empirical_mean = 1.0;
    double empirical_std = 0.0;
    double prob_conv_analytical = 0.0;
    double prob_conv_empirical = 0.0;
    double rho_infinity = 1.0;
    double censored_fraction = 0.0;
    bool failed = false;
    std::string error;
    std::vector<SolverTrace> traces;  // populated when keep_traces is set
};

/// Resolve the clamp threshold for "no linear convergence": explicit value if
/// set, otherwise the K(eps) inversion exp(-log(1/eps)/K).
double resolve_rate_threshold(const SweepConfig& config);

/// Grid sweep over (r, s): analytical rate per run (skipped as 1 below the
/// degrees-of-freedom line), empirical rate via the solver and the decay fit,
/// probability of linear convergence per mode, rates above the threshold
/// clamped to 1. One ground-truth matrix per rank value; a fresh sampling set
/// per run; every run owns an RNG stream derived from (seed, r, s, run), so
/// results are independent of grid order and thread count.
std::vector<CellResult> run_sweep(const SweepConfig& config);

}  // namespace iht
