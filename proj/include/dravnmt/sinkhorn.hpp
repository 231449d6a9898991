#pragma once

#include <limits>
#include <vector>

namespace dravnmt {

// Minimal dense row-major matrix for the transport solver.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0)
        : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const {
        return v[static_cast<std::size_t>(r) * cols + c];
    }
};

inline constexpr double kForbidden = std::numeric_limits<double>::infinity();

struct SinkhornOptions {
    double epsilon = 0.1;
    int max_iter = 500;
    double tol = 1e-6;
};

struct SinkhornResult {
    Mat plan;
    bool converged = false;
    int iterations = 0;
    double max_marginal_violation = 0.0;
};

// Entropic optimal transport by alternating row/column scaling of
// K = exp(-cost/epsilon). Cells with cost == kForbidden carry no mass.
// Marginals must be non-negative and sum to the same total. Returns the
// plan either way; converged reports whether max marginal violation < tol.
// Throws DimensionMismatch on inconsistent sizes.
SinkhornResult sinkhorn(const Mat& cost,
                        const std::vector<double>& row_marginals,
                        const std::vector<double>& col_marginals,
                        const SinkhornOptions& options = {});

}  // namespace dravnmt
