// Timing comparison of the OpenMP kernels against their serial references.
// Not a correctness gate (the tests cover that); run it to see what the
// parallel paths buy on a given machine.

#include "iht/kernels.hpp"
#include "iht/low_rank.hpp"
#include "iht/rate.hpp"
#include "iht/rmt.hpp"
#include "iht/rng.hpp"
#include "iht/sampling.hpp"
#include "iht/svd.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <functional>

namespace {

using clock_type = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    const auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

iht::DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    iht::Rng rng = iht::make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    iht::DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

void row(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   max|diff| %.2e\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run the serial code\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const auto a = random_matrix(512, 512, 1);
        const auto b = random_matrix(512, 512, 2);
        iht::DenseMatrix rs, rp;
        const double ts = time_ms([&] { rs = iht::serial::matmul(a, b); }, 3);
        const double tp = time_ms([&] { rp = iht::matmul(a, b); }, 3);
        row("matmul 512x512", ts, tp, iht::max_abs_diff(rs, rp));
    }
    {
        const auto a = random_matrix(400, 900, 3);
        iht::DenseMatrix rs, rp;
        const double ts = time_ms([&] { rs = iht::serial::gram(a); }, 3);
        const double tp = time_ms([&] { rp = iht::gram(a); }, 3);
        row("gram 400x900", ts, tp, iht::max_abs_diff(rs, rp));
    }
    {
        const auto a = random_matrix(320, 240, 4);
        iht::SvdResult rs, rp;
        const double ts = time_ms([&] { rs = iht::serial::svd(a); }, 1);
        const double tp = time_ms([&] { rp = iht::svd(a); }, 1);
        double dmax = 0.0;
        for (std::size_t i = 0; i < rs.singular_values.size(); ++i)
            dmax = std::max(dmax,
                            std::abs(rs.singular_values[i] - rp.singular_values[i]));
        row("jacobi svd 320x240", ts, tp, dmax);
    }
    {
        const auto draw = iht::random_orthogonal_model(40, 30, 3, {}, 5);
        const auto omega = iht::uniform_sample(40, 30, 480, 6);
        const auto obar = iht::complement(omega);
        iht::DenseMatrix w;
        const double tp = time_ms([&] { w = iht::build_W(obar, draw.model); }, 5);
        std::printf("%-28s %13s %10.2f ms   (%zux%zu rows assembled in parallel)\n",
                    "build_W 720x999", "-", tp, w.rows(), w.cols());
        const double tl = time_ms([&] { (void)iht::lambda_min_H(w); }, 1);
        std::printf("%-28s %13s %10.2f ms\n", "lambda_min_H 720x999", "-", tl);
    }
    return 0;
}
