#pragma once

#include <cstddef>

namespace dravnmt::kernels {

// Dense numeric kernels used by the transformer and the transport solver.
//
// Two implementations share every signature: kernels::serial is the plain
// reference, kernels::omp parallelizes across independent output elements.
// Both accumulate each output element in the same k-order, so results are
// bit-identical; tests compare them exactly and bench/kernels_bench times
// them against each other.
//
// Matrices are row-major, dimensions in rows x cols.

namespace serial {

// C[M x N] = A[M x K] * B[K x N]   (+= when accumulate)
void matmul(const double* A, const double* B, double* C, int M, int K, int N,
            bool accumulate = false);

// C[M x N] = A[M x K] * B[N x K]^T
void matmul_nt(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate = false);

// C[M x N] = A[K x M]^T * B[K x N]
void matmul_tn(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate = false);

// In-place numerically stable softmax over each row.
void softmax_rows(double* X, int rows, int cols);

// X[r, :] += bias for every row r.
void add_bias_rows(double* X, const double* bias, int rows, int cols);

}  // namespace serial

namespace omp {

void matmul(const double* A, const double* B, double* C, int M, int K, int N,
            bool accumulate = false);
void matmul_nt(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate = false);
void matmul_tn(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate = false);
void softmax_rows(double* X, int rows, int cols);
void add_bias_rows(double* X, const double* bias, int rows, int cols);

}  // namespace omp

// Process-wide switch between the two backends. Parallel by default when
// built with OpenMP; tests flip it to compare paths.
bool parallel_enabled();
void set_parallel(bool enabled);

// Dispatching entry points used by the rest of the library.
void matmul(const double* A, const double* B, double* C, int M, int K, int N,
            bool accumulate = false);
void matmul_nt(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate = false);
void matmul_tn(const double* A, const double* B, double* C, int M, int K,
               int N, bool accumulate = false);
void softmax_rows(double* X, int rows, int cols);
void add_bias_rows(double* X, const double* bias, int rows, int cols);

}  // namespace dravnmt::kernels
