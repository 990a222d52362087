#include "iht/experiment.hpp"

#include "iht/asymptotics.hpp"
#include "iht/rate.hpp"
#include "iht/rmt.hpp"
#include "iht/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace iht {

FitResult fit_empirical_rate(const std::vector<double>& error_norms, double numerical_floor,
                             double eps) {
    if (error_norms.size() < 5)
        throw std::invalid_argument("fit_empirical_rate: need at least 5 error norms");
    for (double e : error_norms)
        if (!(e >= 0.0) || !std::isfinite(e))
            throw std::invalid_argument("fit_empirical_rate: error norms must be finite");

    const double e0 = error_norms.front();
    bool met = false;
    for (double e : error_norms)
        if (e <= eps * e0) {
            met = true;
            break;
        }
    if (!met) return {1.0, false};

    std::size_t k0 = error_norms.size() - 1;
    bool found = false;
    for (std::size_t k = 0; k < error_norms.size(); ++k)
        if (error_norms[k] <= numerical_floor) {
            k0 = k;
            found = true;
            break;
        }
    if (!found) {
        for (std::size_t k = 1; k < error_norms.size(); ++k)
            if (error_norms[k - 1] - error_norms[k] <= numerical_floor) {
                k0 = k;
                break;
            }
    }

    const std::size_t lo = std::size_t(0.4 * double(k0));
    const std::size_t hi = std::size_t(0.9 * double(k0));
    if (hi <= lo || hi - lo + 1 < 2)
        throw std::runtime_error("fit_empirical_rate: fewer than 2 points in the fit window");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double npts = double(hi - lo + 1);
    for (std::size_t k = lo; k <= hi; ++k) {
        if (!(error_norms[k] > 0.0))
            throw std::runtime_error("fit_empirical_rate: nonpositive error inside fit window");
        const double x = double(k);
        const double y = std::log(error_norms[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    double rate = std::exp(slope);
    rate = std::min(rate, 1.0);
    return {rate, true};
}

double resolve_rate_threshold(const SweepConfig& config) {
    if (config.rate_threshold > 0.0) return config.rate_threshold;
    return std::exp(-std::log(1.0 / config.epsilon) / double(config.solver.max_iters));
}

namespace {

struct RunOutcome {
    double analytical = 1.0;
    double empirical = 1.0;
    bool conv_analytical = false;
    bool conv_empirical = false;
    bool censored = false;
    bool failed = false;
    std::string error;
    SolverTrace trace;
};

std::size_t resolve_samples(const SweepConfig& c, double g) {
    const double total = double(c.n1) * double(c.n2);
    const double s = g < 1.0 ? std::round(g * total) : g;
    if (!(s >= 1.0) || s >= total)
        throw std::invalid_argument("run_sweep: sample count " + std::to_string(s) +
                                    " outside [1, n1*n2)");
    return std::size_t(s);
}

}  // namespace

std::vector<CellResult> run_sweep(const SweepConfig& config) {
    if (config.n1 < 1 || config.n2 < 1)
        throw std::invalid_argument("run_sweep: dimensions must be positive");
    if (config.rank_grid.empty() || config.sample_grid.empty())
        throw std::invalid_argument("run_sweep: empty grid");
    if (config.runs_per_cell < 1)
        throw std::invalid_argument("run_sweep: runs_per_cell must be >= 1");
    for (std::size_t r : config.rank_grid)
        if (r < 1 || r > std::min(config.n1, config.n2))
            throw std::invalid_argument("run_sweep: rank " + std::to_string(r) + " out of range");

    const double threshold = resolve_rate_threshold(config);
    const auto clamp_rate = [&](double rate) { return rate > threshold ? 1.0 : rate; };

    // One ground-truth matrix per rank value, shared across sample counts.
    std::map<std::size_t, OrthogonalModelDraw> models;
    for (std::size_t r : config.rank_grid)
        if (!models.count(r))
            models.emplace(r, random_orthogonal_model(config.n1, config.n2, r, {},
                                                      derive_seed(config.seed, 101, r)));

    struct CellSpec {
        std::size_t r;
        std::size_t s;
    };
    std::vector<CellSpec> cells;
    for (std::size_t r : config.rank_grid)
        for (double g : config.sample_grid) cells.push_back({r, resolve_samples(config, g)});

    const std::size_t runs = config.runs_per_cell;
    std::vector<RunOutcome> outcomes(cells.size() * runs);

#pragma omp parallel for schedule(dynamic) collapse(2)
    for (std::int64_t ci = 0; ci < std::int64_t(cells.size()); ++ci) {
        for (std::int64_t run = 0; run < std::int64_t(runs); ++run) {
            const CellSpec cell = cells[std::size_t(ci)];
            RunOutcome& out = outcomes[std::size_t(ci) * runs + std::size_t(run)];
            try {
                const OrthogonalModelDraw& draw = models.at(cell.r);
                const std::uint64_t rs =
                    derive_seed(config.seed, cell.r, cell.s, std::uint64_t(run));
                const SamplingSet omega =
                    uniform_sample(config.n1, config.n2, cell.s, derive_seed(rs, 1));

                if (dof_satisfied(config.n1, config.n2, cell.r, cell.s)) {
                    const DenseMatrix w = build_W(complement(omega), draw.model);
                    const double lam = lambda_min_H(w);
                    out.analytical = clamp_rate(1.0 - lam);
                    out.conv_analytical = lam > 0.0;
                } else {
                    out.analytical = 1.0;  // below the dof line, rank-deficient H
                    out.conv_analytical = false;
                }

                SolverConfig sc = config.solver;
                sc.rank = cell.r;
                sc.relative_tolerance = config.epsilon;
                const DenseMatrix observed = project_omega(draw.m, omega);
                const DenseMatrix x0 = init_near(draw.m, config.sigma, derive_seed(rs, 2));
                SolveResult res = run_ihtsvd(observed, omega, sc, x0, &draw.m);

                const FitResult fit = fit_empirical_rate(res.trace.error_norms,
                                                         sc.numerical_floor, config.epsilon);
                out.empirical = clamp_rate(fit.rate);
                out.conv_empirical = fit.converged;
                out.censored = !fit.converged && res.trace.stop_reason == StopReason::max_iters;
                if (config.keep_traces) out.trace = std::move(res.trace);
            } catch (const std::exception& e) {
                out.failed = true;
                out.error = e.what();
            }
        }
    }

    std::vector<CellResult> results(cells.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        CellResult& cr = results[ci];
        cr.r = cells[ci].r;
        cr.s = cells[ci].s;
        cr.rho_r = relative_rank(config.n1, config.n2, cr.r);
        cr.rho_s = sampling_rate(config.n1, config.n2, cr.s);
        cr.rho_infinity = asymptotic_rate(make_params(cr.rho_r, cr.rho_s));

        double asum = 0, asq = 0, esum = 0, esq = 0;
        std::size_t ok = 0, aconv = 0, econv = 0, censored = 0;
        for (std::size_t run = 0; run < runs; ++run) {
            const RunOutcome& out = outcomes[ci * runs + run];
            if (out.failed) {
                cr.failed = true;
                if (cr.error.empty()) cr.error = out.error;
                continue;
            }
            ++ok;
            asum += out.analytical;
            asq += out.analytical * out.analytical;
            esum += out.empirical;
            esq += out.empirical * out.empirical;
            if (out.conv_analytical) ++aconv;
            if (out.conv_empirical) ++econv;
            if (out.censored) ++censored;
            if (config.keep_traces) cr.traces.push_back(outcomes[ci * runs + run].trace);
        }
        if (ok > 0) {
            cr.analytical_mean = clamp_rate(asum / double(ok));
            cr.empirical_mean = clamp_rate(esum / double(ok));
            cr.analytical_std =
                std::sqrt(std::max(0.0, asq / double(ok) - (asum / double(ok)) * (asum / double(ok))));
            cr.empirical_std =
                std::sqrt(std::max(0.0, esq / double(ok) - (esum / double(ok)) * (esum / double(ok))));
            cr.prob_conv_analytical = double(aconv) / double(ok);
            cr.prob_conv_empirical = double(econv) / double(ok);
            cr.censored_fraction = double(censored) / double(ok);
        }
    }
    return results;
}

}  // namespace iht
