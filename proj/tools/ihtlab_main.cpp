#include "iht/asymptotics.hpp"
#include "iht/eigen_sym.hpp"
#include "iht/experiment.hpp"
#include "iht/io.hpp"
#include "iht/rate.hpp"
#include "iht/rmt.hpp"
#include "iht/rng.hpp"
#include "iht/solver.hpp"
#include "iht/svd.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json report_json(const iht::RateReport& r) {
    return json{{"lambda_min", r.lambda_min}, {"rho", r.rho},
                {"roc_radius", r.roc_radius}, {"K_of_eps", r.K_of_eps},
                {"tau", r.tau},               {"c_const", r.c_const}};
}

struct SolveArgs {
    std::string observed_path, omega_path, x0_path, truth_path, out_path, trace_path;
    std::size_t rank = 1;
    std::string policy = "unit";
    double eta = 1.0;
    std::size_t max_iters = 3000;
    double eps = 1e-8;
    bool theorem_form = false;
};

int cmd_solve(const SolveArgs& a) {
    iht::DenseMatrix observed = iht::read_matrix_csv(a.observed_path);
    iht::SamplingSet omega = iht::read_sampling_csv(a.omega_path);
    iht::SolverConfig config;
    config.rank = a.rank;
    config.max_iters = a.max_iters;
    config.relative_tolerance = a.eps;
    config.form = a.theorem_form ? iht::UpdateForm::theorem1 : iht::UpdateForm::algorithm1;
    if (a.policy == "unit")
        config.policy = iht::StepPolicy::unit;
    else if (a.policy == "svp")
        config.policy = iht::StepPolicy::svp;
    else {
        config.policy = iht::StepPolicy::custom;
        config.eta = a.eta;
    }

    std::optional<iht::DenseMatrix> x0;
    if (!a.x0_path.empty()) x0 = iht::read_matrix_csv(a.x0_path);
    std::optional<iht::DenseMatrix> truth;
    if (!a.truth_path.empty()) truth = iht::read_matrix_csv(a.truth_path);

    iht::SolveResult res =
        iht::run_ihtsvd(observed, omega, config, x0, truth ? &*truth : nullptr);
    if (!a.out_path.empty()) iht::write_matrix_csv(a.out_path, res.x);
    if (!a.trace_path.empty()) iht::write_trace_csv(a.trace_path, res.trace);

    json out{{"iterations_run", res.trace.iterations_run},
             {"stop_reason", iht::to_string(res.trace.stop_reason)},
             {"final_error_norm", res.trace.error_norms.back()}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct RateArgs {
    std::string omega_path, matrix_path;
    std::size_t n1 = 0, n2 = 0, rank = 1;
    std::uint64_t model_seed = 0;
    double initial_error = 0.0;
    double eps = 1e-8;
    double c1 = iht::default_c1();
};

int cmd_rate(const RateArgs& a) {
    iht::SamplingSet omega = iht::read_sampling_csv(a.omega_path);
    if (a.n1 && omega.n1() != a.n1)
        throw std::invalid_argument("rate: --n1 disagrees with the omega file");
    if (a.n2 && omega.n2() != a.n2)
        throw std::invalid_argument("rate: --n2 disagrees with the omega file");

    iht::LowRankModel model = [&] {
        if (!a.matrix_path.empty())
            return iht::LowRankModel::from_matrix(iht::read_matrix_csv(a.matrix_path), a.rank);
        return iht::random_orthogonal_model(omega.n1(), omega.n2(), a.rank, {}, a.model_seed)
            .model;
    }();

    const iht::DenseMatrix w = iht::build_W(iht::complement(omega), model);
    const double lam = iht::lambda_min_H(w);
    const iht::RateReport report =
        iht::rate_report(lam, model.sigma_min(), a.c1, a.initial_error, a.eps);
    std::cout << report_json(report).dump(2) << '\n';
    return 0;
}

struct AsymptoticArgs {
    double rho_r = 0.0, rho_s = 0.0;
    std::string table_path;
    std::size_t points = 501;
};

int cmd_asymptotic(const AsymptoticArgs& a) {
    const iht::AsymptoticParams params = iht::make_params(a.rho_r, a.rho_s);
    json out{{"rho_r", params.rho_r}, {"rho_s", params.rho_s},
             {"p", params.p},         {"q", params.q},
             {"rho_infinity", iht::asymptotic_rate(params)}};
    if (params.p > 0.0 && params.p < 1.0) {
        const iht::LimitingEsd esd = iht::limiting_esd(params);
        out["lambda_minus"] = esd.lambda_minus;
        out["lambda_plus"] = esd.lambda_plus;
        out["mass_at_0"] = esd.mass_at_0;
        out["mass_at_1"] = esd.mass_at_1;
        if (!a.table_path.empty()) {
            std::ofstream table(a.table_path);
            if (!table) throw std::runtime_error("cannot open " + a.table_path);
            json header{{"mass_at_0", esd.mass_at_0},
                        {"mass_at_1", esd.mass_at_1},
                        {"lambda_minus", esd.lambda_minus},
                        {"lambda_plus", esd.lambda_plus}};
            table << "# " << header.dump() << "\nx,density\n";
            for (std::size_t i = 1; i + 1 <= a.points; ++i) {
                const double x = double(i) / double(a.points + 1);
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x,
                              iht::limiting_density(params, x));
                table << buf;
            }
        }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct EsdArgs {
    std::size_t n = 0;
    double p = 0.0, q = 0.0;
    std::string construction = "plain";
    std::size_t bins = 50;
    std::uint64_t seed = 0;
    std::string output;
};

int cmd_esd(const EsdArgs& a) {
    // Round the truncation sizes to the nearest integers and report the
    // effective ratios actually used.
    const double pn = std::round(a.p * double(a.n));
    const double qn = std::round(a.q * double(a.n));
    const double p_eff = pn / double(a.n);
    const double q_eff = qn / double(a.n);
    const iht::EsdConstruction c = a.construction == "kronecker"
                                       ? iht::EsdConstruction::kronecker
                                       : iht::EsdConstruction::plain;
    const iht::EsdSample sample = iht::esd_of_truncation(a.n, p_eff, q_eff, c, a.seed);
    const double distance = iht::histogram_distance(sample, a.bins);
    const iht::AsymptoticParams params = iht::make_params_pq(p_eff, q_eff);
    const iht::LimitingEsd lim = iht::limiting_esd(params);
    const double normalization =
        iht::continuous_mass(params) + lim.mass_at_0 + lim.mass_at_1;

    if (!a.output.empty()) {
        fs::create_directories(a.output);
        iht::write_esd_csv((fs::path(a.output) / "eigenvalues.csv").string(), sample);
    }
    json out{{"n", a.n},
             {"p", p_eff},
             {"q", q_eff},
             {"construction", a.construction},
             {"seed", a.seed},
             {"bins", a.bins},
             {"histogram_distance", distance},
             {"lambda_minus", lim.lambda_minus},
             {"lambda_plus", lim.lambda_plus},
             {"limit_normalization", normalization},
             {"min_eigenvalue", sample.eigenvalues.front()},
             {"max_eigenvalue", sample.eigenvalues.back()}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct SweepArgs {
    std::size_t n1 = 0, n2 = 0;
    std::vector<std::size_t> ranks;
    std::vector<double> samples;
    std::size_t runs = 25;
    std::uint64_t seed = 0;
    std::size_t max_iters = 3000;
    double eps = 1e-8;
    double sigma = 1e-4;
    double rate_threshold = 0.0;
    std::string output;
    bool traces = false;
};

int cmd_sweep(const SweepArgs& a) {
    iht::SweepConfig config;
    config.n1 = a.n1;
    config.n2 = a.n2;
    config.rank_grid = a.ranks;
    config.sample_grid = a.samples;
    config.runs_per_cell = a.runs;
    config.seed = a.seed;
    config.solver.max_iters = a.max_iters;
    config.epsilon = a.eps;
    config.sigma = a.sigma;
    config.rate_threshold = a.rate_threshold;
    config.keep_traces = a.traces;

    const std::vector<iht::CellResult> cells = iht::run_sweep(config);

    fs::create_directories(a.output);
    iht::write_cells_csv((fs::path(a.output) / "cells.csv").string(), cells);
    if (a.traces) {
        const fs::path tdir = fs::path(a.output) / "traces";
        fs::create_directories(tdir);
        for (const iht::CellResult& c : cells)
            for (std::size_t run = 0; run < c.traces.size(); ++run)
                iht::write_trace_csv((tdir / ("r" + std::to_string(c.r) + "_s" +
                                              std::to_string(c.s) + "_run" +
                                              std::to_string(run) + ".csv"))
                                         .string(),
                                     c.traces[run]);
    }

    double sq_sum = 0.0;
    std::size_t cells_failed = 0;
    for (const iht::CellResult& c : cells) {
        const double d = c.analytical_mean - c.empirical_mean;
        sq_sum += d * d;
        if (c.failed) ++cells_failed;
    }
    json report{{"config",
                 {{"n1", a.n1},
                  {"n2", a.n2},
                  {"ranks", a.ranks},
                  {"samples", a.samples},
                  {"runs_per_cell", a.runs},
                  {"seed", a.seed},
                  {"max_iters", a.max_iters},
                  {"epsilon", a.eps},
                  {"sigma", a.sigma},
                  {"rate_threshold", iht::resolve_rate_threshold(config)}}},
                {"cells", cells.size()},
                {"cells_failed", cells_failed},
                {"mean_squared_cell_difference", sq_sum / double(cells.size())}};
    std::ofstream rep(fs::path(a.output) / "report.json");
    rep << report.dump(2) << '\n';
    std::cout << report.dump(2) << '\n';
    return 0;
}

struct ConcentrationArgs {
    std::string family = "gaussian";
    std::string matrix = "identity";
    std::vector<std::size_t> n_grid{64, 144, 256, 400};
    std::size_t trials = 2000;
    double q = 0.25;
    std::uint64_t seed = 0;
};

int cmd_concentration(const ConcentrationArgs& a) {
    const iht::VectorFamily vf = a.family == "kronecker_gaussian"
                                     ? iht::VectorFamily::kronecker_gaussian
                                     : iht::VectorFamily::gaussian;
    const iht::MatrixFamily mf = a.matrix == "diag_plus_low_rank"
                                     ? iht::MatrixFamily::diag_plus_low_rank
                                     : iht::MatrixFamily::identity;
    const iht::ConcentrationReport rep =
        iht::quad_form_concentration_test(vf, mf, a.n_grid, a.trials, a.q, a.seed);
    json out{{"family", a.family},
             {"matrix_family", a.matrix},
             {"q", a.q},
             {"trials", a.trials},
             {"n_grid", rep.n_grid},
             {"variances", rep.variances},
             {"fitted_slope", rep.fitted_slope}};
    if (vf == iht::VectorFamily::gaussian)
        out["gaussian_theory_variance"] = rep.gaussian_theory_variance;
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-completion IHTSVD solver and convergence-rate laboratory"};
    app.require_subcommand(1);

    SolveArgs solve;
    CLI::App* s = app.add_subcommand("solve", "Run the IHTSVD iteration on observed entries");
    s->add_option("--observed", solve.observed_path, "CSV with P_Omega(M)")->required();
    s->add_option("--omega", solve.omega_path, "sampling-set CSV")->required();
    s->add_option("--r", solve.rank, "target rank")->required();
    s->add_option("--policy", solve.policy, "step policy: unit | svp | custom")
        ->check(CLI::IsMember({"unit", "svp", "custom"}));
    s->add_option("--eta", solve.eta, "step size for --policy custom");
    s->add_option("--k", solve.max_iters, "iteration cap");
    s->add_option("--eps", solve.eps, "relative tolerance");
    s->add_flag("--theorem-form", solve.theorem_form, "use the mask-last update form");
    s->add_option("--x0", solve.x0_path, "initial iterate CSV");
    s->add_option("--ground-truth", solve.truth_path, "ground truth CSV (enables tolerance stop)");
    s->add_option("--out", solve.out_path, "write the completed matrix here");
    s->add_option("--trace", solve.trace_path, "write the error trace here");

    RateArgs rate;
    CLI::App* r = app.add_subcommand("rate", "Analytical rate report for one (M, Omega)");
    r->add_option("--omega", rate.omega_path, "sampling-set CSV")->required();
    r->add_option("--r", rate.rank, "rank of the ground truth")->required();
    r->add_option("--n1", rate.n1, "expected row count (validated against omega)");
    r->add_option("--n2", rate.n2, "expected column count");
    r->add_option("--m", rate.matrix_path, "ground-truth matrix CSV (default: random model)");
    r->add_option("--model-seed", rate.model_seed, "seed for the random orthogonal model");
    r->add_option("--initial-error", rate.initial_error, "||X0 - M||_F for K(eps)");
    r->add_option("--eps", rate.eps, "relative accuracy for K(eps)");
    r->add_option("--c1", rate.c1, "residual constant");

    AsymptoticArgs asym;
    CLI::App* y = app.add_subcommand("asymptotic", "Asymptotic rate and limiting density");
    y->add_option("--rho-r", asym.rho_r, "relative rank in (0,1]")->required();
    y->add_option("--rho-s", asym.rho_s, "sampling rate in (0,1]")->required();
    y->add_option("--table", asym.table_path, "write a density table CSV here");
    y->add_option("--points", asym.points, "table resolution");

    EsdArgs esd;
    CLI::App* e = app.add_subcommand("esd", "Sample an empirical spectral distribution");
    e->add_option("--n", esd.n, "ambient dimension")->required();
    e->add_option("--p", esd.p, "row ratio")->required();
    e->add_option("--q", esd.q, "column ratio")->required();
    e->add_option("--construction", esd.construction, "plain | kronecker")
        ->check(CLI::IsMember({"plain", "kronecker"}));
    e->add_option("--bins", esd.bins, "histogram bins");
    e->add_option("--seed", esd.seed, "RNG seed");
    e->add_option("--output", esd.output, "directory for eigenvalue CSV + sidecar");

    SweepArgs sweep;
    CLI::App* w = app.add_subcommand("sweep", "Grid sweep over (r, s)");
    w->add_option("--n1", sweep.n1)->required();
    w->add_option("--n2", sweep.n2)->required();
    w->add_option("--ranks", sweep.ranks, "rank grid")->required()->delimiter(',');
    w->add_option("--samples", sweep.samples, "sample grid (fractions < 1 or counts)")
        ->required()
        ->delimiter(',');
    w->add_option("--runs", sweep.runs, "runs per cell");
    w->add_option("--seed", sweep.seed, "base seed");
    w->add_option("--k", sweep.max_iters, "solver iteration cap");
    w->add_option("--eps", sweep.eps, "relative tolerance");
    w->add_option("--sigma", sweep.sigma, "initialization noise level");
    w->add_option("--rate-threshold", sweep.rate_threshold,
                  "clamp threshold (default: derived from k and eps)");
    w->add_option("--output", sweep.output, "output directory")->required();
    w->add_flag("--traces", sweep.traces, "write per-run traces");

    ConcentrationArgs conc;
    CLI::App* c = app.add_subcommand("concentration", "Quadratic-form concentration statistics");
    c->add_option("--family", conc.family, "gaussian | kronecker_gaussian")
        ->check(CLI::IsMember({"gaussian", "kronecker_gaussian"}));
    c->add_option("--matrix", conc.matrix, "identity | diag_plus_low_rank")
        ->check(CLI::IsMember({"identity", "diag_plus_low_rank"}));
    c->add_option("--n-grid", conc.n_grid, "dimension grid")->delimiter(',');
    c->add_option("--trials", conc.trials, "trials per dimension");
    c->add_option("--q", conc.q, "column ratio");
    c->add_option("--seed", conc.seed, "RNG seed");

    try {
        app.parse(argc, argv);
        if (s->parsed()) return cmd_solve(solve);
        if (r->parsed()) return cmd_rate(rate);
        if (y->parsed()) return cmd_asymptotic(asym);
        if (e->parsed()) return cmd_esd(esd);
        if (w->parsed()) return cmd_sweep(sweep);
        if (c->parsed()) return cmd_concentration(conc);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);  // usage on stderr, exit 1 for bad flags
    } catch (const std::invalid_argument& err) {
        std::cerr << "argument error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 0;
}
