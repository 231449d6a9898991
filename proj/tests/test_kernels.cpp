#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "dravnmt/kernels.hpp"

using namespace dravnmt;

namespace {

std::vector<double> random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::vector<double> m(static_cast<std::size_t>(rows) * cols);
    for (auto& x : m) x = dist(rng);
    return m;
}

}  // namespace

TEST_CASE("matmul known values") {
    const std::vector<double> a = {1, 2, 3, 4};      // 2x2
    const std::vector<double> b = {5, 6, 7, 8};      // 2x2
    std::vector<double> c(4, 0.0);
    kernels::serial::matmul(a.data(), b.data(), c.data(), 2, 2, 2);
    CHECK(c == std::vector<double>{19, 22, 43, 50});
    kernels::serial::matmul(a.data(), b.data(), c.data(), 2, 2, 2, true);
    CHECK(c == std::vector<double>{38, 44, 86, 100});
}

TEST_CASE("omp kernels are bit-identical to the serial reference") {
    std::mt19937_64 rng(7);
    for (const auto [m, k, n] : {std::array{3, 5, 7}, std::array{17, 64, 33},
                                 std::array{64, 48, 640}, std::array{1, 1, 1}}) {
        const auto A = random_matrix(m, k, rng);
        const auto B = random_matrix(k, n, rng);
        const auto Bt = random_matrix(n, k, rng);
        const auto At = random_matrix(k, m, rng);
        std::vector<double> c0(static_cast<std::size_t>(m) * n);
        std::vector<double> c1 = c0;

        kernels::serial::matmul(A.data(), B.data(), c0.data(), m, k, n);
        kernels::omp::matmul(A.data(), B.data(), c1.data(), m, k, n);
        CHECK(c0 == c1);

        kernels::serial::matmul_nt(A.data(), Bt.data(), c0.data(), m, k, n);
        kernels::omp::matmul_nt(A.data(), Bt.data(), c1.data(), m, k, n);
        CHECK(c0 == c1);

        kernels::serial::matmul_tn(At.data(), B.data(), c0.data(), m, k, n);
        kernels::omp::matmul_tn(At.data(), B.data(), c1.data(), m, k, n);
        CHECK(c0 == c1);

        auto x0 = random_matrix(m, n, rng);
        auto x1 = x0;
        kernels::serial::softmax_rows(x0.data(), m, n);
        kernels::omp::softmax_rows(x1.data(), m, n);
        CHECK(x0 == x1);
    }
}

TEST_CASE("softmax rows are distributions") {
    std::mt19937_64 rng(11);
    auto x = random_matrix(13, 37, rng);
    kernels::softmax_rows(x.data(), 13, 37);
    for (int r = 0; r < 13; ++r) {
        double sum = 0.0;
        for (int c = 0; c < 37; ++c) {
            const double p = x[static_cast<std::size_t>(r) * 37 + c];
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("softmax is overflow safe") {
    std::vector<double> x = {1000.0, 1001.0, -1000.0};
    kernels::softmax_rows(x.data(), 1, 3);
    CHECK(std::isfinite(x[0]));
    CHECK(x[1] > x[0]);
    CHECK(x[0] + x[1] + x[2] == doctest::Approx(1.0));
}

TEST_CASE("add_bias_rows") {
    std::vector<double> x = {1, 2, 3, 4};
    const std::vector<double> b = {10, 20};
    kernels::add_bias_rows(x.data(), b.data(), 2, 2);
    CHECK(x == std::vector<double>{11, 22, 13, 24});
}

TEST_CASE("dispatch honors the parallel switch") {
    const bool was = kernels::parallel_enabled();
    kernels::set_parallel(false);
    CHECK_FALSE(kernels::parallel_enabled());
    std::mt19937_64 rng(3);
    const auto A = random_matrix(4, 6, rng);
    const auto B = random_matrix(6, 5, rng);
    std::vector<double> c0(20), c1(20);
    kernels::matmul(A.data(), B.data(), c0.data(), 4, 6, 5);
    kernels::set_parallel(true);
    kernels::matmul(A.data(), B.data(), c1.data(), 4, 6, 5);
    CHECK(c0 == c1);
    kernels::set_parallel(was);
}
