#include "dravnmt/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dravnmt::kernels {

namespace serial {

void matmul(const double* A, const double* B, double* C, int M, int K, int N,
            bool accumulate) {
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            double acc = accumulate ? C[i * N + j] : 0.0;
            for (int k = 0; k < K; ++k) {
                acc = std::fma(A[i * K + k], B[k * N + j], acc);
            }
            C[i * N + j] = acc;
        }
    }
}

void matmul_nt(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate) {
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            double acc = accumulate ? C[i * N + j] : 0.0;
            for (int k = 0; k < K; ++k) {
                acc = std::fma(A[i * K + k], B[j * K + k], acc);
            }
            C[i * N + j] = acc;
        }
    }
}

void matmul_tn(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate) {
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            double acc = accumulate ? C[i * N + j] : 0.0;
            for (int k = 0; k < K; ++k) {
                acc = std::fma(A[k * M + i], B[k * N + j], acc);
            }
            C[i * N + j] = acc;
        }
    }
}

void softmax_rows(double* X, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* row = X + static_cast<std::size_t>(r) * cols;
        double mx = row[0];
        for (int c = 1; c < cols; ++c) mx = std::max(mx, row[c]);
        double sum = 0.0;
        for (int c = 0; c < cols; ++c) {
            row[c] = std::exp(row[c] - mx);
            sum += row[c];
        }
        const double inv = 1.0 / sum;
        for (int c = 0; c < cols; ++c) row[c] *= inv;
    }
}

void add_bias_rows(double* X, const double* bias, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* row = X + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c < cols; ++c) row[c] += bias[c];
    }
}

}  // namespace serial

namespace omp {

namespace {

constexpr int kColTile = 512;

// Grow-only per-thread scratch for materialized transposes.
double* scratch(std::size_t n) {
    thread_local std::vector<double> buf;
    if (buf.size() < n) buf.resize(n);
    return buf.data();
}

void transpose(const double* X, double* XT, int rows, int cols) {
    constexpr int T = 32;
    for (int rb = 0; rb < rows; rb += T) {
        const int rend = std::min(rb + T, rows);
        for (int cb = 0; cb < cols; cb += T) {
            const int cend = std::min(cb + T, cols);
            for (int r = rb; r < rend; ++r) {
                for (int c = cb; c < cend; ++c) {
                    XT[static_cast<std::size_t>(c) * rows + r] =
                        X[static_cast<std::size_t>(r) * cols + c];
                }
            }
        }
    }
}

// Row-parallel i/k/j product. Each C[i,j] accumulates in ascending k (fma
// chain), the same order as the serial reference, so results match it bit
// for bit. k is unrolled by 4 to keep the C row in registers.
void matmul_ikj(const double* A, const double* B, double* C, int M, int K,
                int N, bool accumulate) {
#pragma omp parallel for schedule(static) if (static_cast<long>(M) * K * N > 16384)
    for (int i = 0; i < M; ++i) {
        double* crow = C + static_cast<std::size_t>(i) * N;
        if (!accumulate) std::fill(crow, crow + N, 0.0);
        const double* arow = A + static_cast<std::size_t>(i) * K;
        for (int jb = 0; jb < N; jb += kColTile) {
            const int jend = std::min(jb + kColTile, N);
            int k = 0;
            for (; k + 4 <= K; k += 4) {
                const double a0 = arow[k], a1 = arow[k + 1];
                const double a2 = arow[k + 2], a3 = arow[k + 3];
                const double* b0 = B + static_cast<std::size_t>(k) * N;
                const double* b1 = b0 + N;
                const double* b2 = b1 + N;
                const double* b3 = b2 + N;
                for (int j = jb; j < jend; ++j) {
                    double c = crow[j];
                    c = std::fma(a0, b0[j], c);
                    c = std::fma(a1, b1[j], c);
                    c = std::fma(a2, b2[j], c);
                    c = std::fma(a3, b3[j], c);
                    crow[j] = c;
                }
            }
            for (; k < K; ++k) {
                const double a = arow[k];
                const double* brow = B + static_cast<std::size_t>(k) * N;
                for (int j = jb; j < jend; ++j) {
                    crow[j] = std::fma(a, brow[j], crow[j]);
                }
            }
        }
    }
}

}  // namespace

void matmul(const double* A, const double* B, double* C, int M, int K, int N,
            bool accumulate) {
    matmul_ikj(A, B, C, M, K, N, accumulate);
}

void matmul_nt(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate) {
    // B is N x K; materialize B^T (K x N) then reuse the row kernel.
    double* bt = scratch(static_cast<std::size_t>(K) * N);
    transpose(B, bt, N, K);
    matmul_ikj(A, bt, C, M, K, N, accumulate);
}

void matmul_tn(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate) {
    // A is K x M; materialize A^T (M x K).
    double* at = scratch(static_cast<std::size_t>(K) * M);
    transpose(A, at, K, M);
    matmul_ikj(at, B, C, M, K, N, accumulate);
}

void softmax_rows(double* X, int rows, int cols) {
#pragma omp parallel for schedule(static) if (static_cast<long>(rows) * cols > 4096)
    for (int r = 0; r < rows; ++r) {
        serial::softmax_rows(X + static_cast<std::size_t>(r) * cols, 1, cols);
    }
}

void add_bias_rows(double* X, const double* bias, int rows, int cols) {
#pragma omp parallel for schedule(static) if (static_cast<long>(rows) * cols > 65536)
    for (int r = 0; r < rows; ++r) {
        serial::add_bias_rows(X + static_cast<std::size_t>(r) * cols, bias, 1,
                              cols);
    }
}

}  // namespace omp

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel(bool enabled) {
    g_parallel.store(enabled, std::memory_order_relaxed);
}

void matmul(const double* A, const double* B, double* C, int M, int K, int N,
            bool accumulate) {
    if (parallel_enabled()) {
        omp::matmul(A, B, C, M, K, N, accumulate);
    } else {
        serial::matmul(A, B, C, M, K, N, accumulate);
    }
}

void matmul_nt(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate) {
    if (parallel_enabled()) {
        omp::matmul_nt(A, B, C, M, K, N, accumulate);
    } else {
        serial::matmul_nt(A, B, C, M, K, N, accumulate);
    }
}

void matmul_tn(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate) {
    if (parallel_enabled()) {
        omp::matmul_tn(A, B, C, M, K, N, accumulate);
    } else {
        serial::matmul_tn(A, B, C, M, K, N, accumulate);
    }
}

void softmax_rows(double* X, int rows, int cols) {
    if (parallel_enabled()) {
        omp::softmax_rows(X, rows, cols);
    } else {
        serial::softmax_rows(X, rows, cols);
    }
}

void add_bias_rows(double* X, const double* bias, int rows, int cols) {
    if (parallel_enabled()) {
        omp::add_bias_rows(X, bias, rows, cols);
    } else {
        serial::add_bias_rows(X, bias, rows, cols);
    }
}

}  // namespace dravnmt::kernels
