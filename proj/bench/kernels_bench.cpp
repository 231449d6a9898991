// Times the serial reference kernels against the OpenMP variants and
// reports throughput for the matrix shapes the translation model uses.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dravnmt/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> m(static_cast<std::size_t>(rows) * cols);
    for (auto& x : m) x = dist(rng);
    return m;
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best,
                        std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

struct Shape {
    const char* label;
    int m, k, n;
};

}  // namespace

int main(int argc, char** argv) {
    int reps = 5;
    if (argc > 1) reps = std::max(1, std::atoi(argv[1]));

#ifdef _OPENMP
    std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    const Shape shapes[] = {
        {"ffn forward      ", 512, 64, 256},
        {"ffn backward     ", 512, 256, 64},
        {"logits           ", 512, 64, 2048},
        {"weight gradient  ", 64, 2048, 256},
        {"attention scores ", 128, 16, 128},
    };

    std::mt19937_64 rng(123);
    std::printf("%-18s %10s %10s %8s %10s\n", "kernel (MxKxN)", "serial ms",
                "omp ms", "speedup", "GFLOP/s");
    for (const auto& s : shapes) {
        const auto A = random_matrix(s.m, s.k, rng);
        const auto B = random_matrix(s.k, s.n, rng);
        std::vector<double> C(static_cast<std::size_t>(s.m) * s.n);

        const double t_serial = time_best_of(reps, [&] {
            dravnmt::kernels::serial::matmul(A.data(), B.data(), C.data(),
                                             s.m, s.k, s.n);
        });
        const double t_omp = time_best_of(reps, [&] {
            dravnmt::kernels::omp::matmul(A.data(), B.data(), C.data(), s.m,
                                          s.k, s.n);
        });
        const double flops = 2.0 * s.m * s.k * s.n;
        std::printf("%-18s %10.3f %10.3f %7.2fx %10.2f\n", s.label,
                    t_serial * 1e3, t_omp * 1e3, t_serial / t_omp,
                    flops / t_omp * 1e-9);
    }

    // Row softmax, the other hot loop.
    {
        const int rows = 2048, cols = 256;
        auto X = random_matrix(rows, cols, rng);
        auto Y = X;
        const double t_serial = time_best_of(reps, [&] {
            auto Z = X;
            dravnmt::kernels::serial::softmax_rows(Z.data(), rows, cols);
        });
        const double t_omp = time_best_of(reps, [&] {
            auto Z = Y;
            dravnmt::kernels::omp::softmax_rows(Z.data(), rows, cols);
        });
        std::printf("%-18s %10.3f %10.3f %7.2fx\n", "softmax rows     ",
                    t_serial * 1e3, t_omp * 1e3, t_serial / t_omp);
    }
    return 0;
}
