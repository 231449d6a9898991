#include "dravnmt/sinkhorn.hpp"

#include <algorithm>
#include <cmath>

#include "dravnmt/errors.hpp"

namespace dravnmt {

SinkhornResult sinkhorn(const Mat& cost,
                        const std::vector<double>& row_marginals,
                        const std::vector<double>& col_marginals,
                        const SinkhornOptions& options) {
    const int R = cost.rows;
    const int C = cost.cols;
    if (R <= 0 || C <= 0) throw DimensionMismatch("sinkhorn: empty cost");
    if (static_cast<int>(row_marginals.size()) != R ||
        static_cast<int>(col_marginals.size()) != C) {
        throw DimensionMismatch("sinkhorn: marginals do not match cost");
    }
    if (options.epsilon <= 0.0) {
        throw InvalidConfig("sinkhorn: epsilon must be positive");
    }

    // Gibbs kernel; forbidden cells carry zero mass.
    Mat K(R, C);
    for (int r = 0; r < R; ++r) {
        for (int c = 0; c < C; ++c) {
            const double w = cost.at(r, c);
            K.at(r, c) = std::isinf(w) ? 0.0 : std::exp(-w / options.epsilon);
        }
    }

    std::vector<double> u(R, 1.0), v(C, 1.0);
    std::vector<double> row_sum(R), col_sum(C);

    const auto marginal_violation = [&]() {
        double worst = 0.0;
        for (int r = 0; r < R; ++r) {
            double s = 0.0;
            for (int c = 0; c < C; ++c) s += u[r] * K.at(r, c) * v[c];
            worst = std::max(worst, std::abs(s - row_marginals[r]));
        }
        for (int c = 0; c < C; ++c) {
            double s = 0.0;
            for (int r = 0; r < R; ++r) s += u[r] * K.at(r, c) * v[c];
            worst = std::max(worst, std::abs(s - col_marginals[c]));
        }
        return worst;
    };

    SinkhornResult result;
    double violation = marginal_violation();
    int iter = 0;
    while (violation >= options.tol && iter < options.max_iter) {
        ++iter;
        // u = r ./ (K v)
        for (int r = 0; r < R; ++r) {
            double s = 0.0;
            for (int c = 0; c < C; ++c) s += K.at(r, c) * v[c];
            u[r] = s > 0.0 ? row_marginals[r] / s : 0.0;
        }
        // v = c ./ (K^T u)
        for (int c = 0; c < C; ++c) col_sum[c] = 0.0;
        for (int r = 0; r < R; ++r) {
            for (int c = 0; c < C; ++c) col_sum[c] += K.at(r, c) * u[r];
        }
        for (int c = 0; c < C; ++c) {
            v[c] = col_sum[c] > 0.0 ? col_marginals[c] / col_sum[c] : 0.0;
        }
        violation = marginal_violation();
    }

    result.plan = Mat(R, C);
    for (int r = 0; r < R; ++r) {
        for (int c = 0; c < C; ++c) {
            result.plan.at(r, c) = u[r] * K.at(r, c) * v[c];
        }
    }
    result.iterations = iter;
    result.max_marginal_violation = violation;
    result.converged = violation < options.tol;
    return result;
}

}  // namespace dravnmt
