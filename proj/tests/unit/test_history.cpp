#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "core/history.hpp"
#include "core/kernel.hpp"

using namespace fracwave;

namespace {

std::vector<double> weights_for(double alpha, std::size_t J)
{
    const auto cw = conv_weights(FracOrder{alpha}, J + 1);
    return {cw.w_span().begin(), cw.w_span().end()};
}

std::vector<double> random_slabs(std::size_t J, std::size_t N, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> s(J * N);
    for (auto& v : s) {
        v = u(rng);
    }
    return s;
}

}  // namespace

TEST_CASE("naive sum: first terms")
{
    const std::vector<double> w{0.0, 0.5, 0.25, 0.125};
    const std::vector<double> U{2.0, -4.0, 8.0};  // N = 1
    CHECK(history_sum_naive(U, 1, w, 1)[0] == doctest::Approx(0.5 * 2.0));
    CHECK(history_sum_naive(U, 1, w, 3)[0] == doctest::Approx(0.125 * 2.0 + 0.25 * -4.0 + 0.5 * 8.0));

    const std::vector<double> V{1.0, 2.0, 3.0, 4.0};  // N = 2, two slabs
    const auto h = history_sum_naive(V, 2, w, 2);
    CHECK(h[0] == doctest::Approx(0.25 * 1.0 + 0.5 * 3.0));
    CHECK(h[1] == doctest::Approx(0.25 * 2.0 + 0.5 * 4.0));
}

TEST_CASE("naive sum against long double")
{
    const std::size_t k = 50;
    const std::size_t N = 5;
    const auto w = weights_for(0.3, k);
    const auto U = random_slabs(k, N, 11);
    const auto h = history_sum_naive(U, N, w, k);
    for (std::size_t i = 0; i < N; ++i) {
        long double acc = 0.0L;
        for (std::size_t j = 1; j <= k; ++j) {
            acc += static_cast<long double>(w[k + 1 - j]) * U[(j - 1) * N + i];
        }
        CHECK(h[i] == doctest::Approx(static_cast<double>(acc)).epsilon(1e-13).scale(1.0));
    }
}

namespace {

double max_rel_fft_vs_naive(std::size_t J, std::size_t N, std::size_t min_block, unsigned seed)
{
    const auto w = weights_for(0.6, J);
    const auto U = random_slabs(J, N, seed);
    BlockedHistory state(w, N, J, min_block);
    double worst = 0.0;
    for (std::size_t k = 1; k <= J; ++k) {
        const auto a = history_sum_fft(U, state, k);
        const auto b = history_sum_naive(U, N, w, k);
        double diff = 0.0;
        double ref = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            diff = std::max(diff, std::abs(a[i] - b[i]));
            ref = std::max(ref, std::abs(b[i]));
        }
        worst = std::max(worst, diff / ref);
    }
    return worst;
}

}  // namespace

TEST_CASE("blocked FFT sum equals the naive sum")
{
    CHECK(max_rel_fft_vs_naive(8, 1, 1, 1) < 1e-13);
    CHECK(max_rel_fft_vs_naive(8, 1, 2, 2) < 1e-13);
    CHECK(max_rel_fft_vs_naive(1024, 63, 32, 3) < 1e-12);
    CHECK(max_rel_fft_vs_naive(1000, 7, 4, 4) < 1e-12);
}

TEST_CASE("blocked state bookkeeping")
{
    const std::size_t J = 16;
    const auto w = weights_for(0.5, J);
    const auto U = random_slabs(J, 3, 5);
    BlockedHistory state(w, 3, J, 2);
    CHECK(state.width() == 3);
    CHECK(state.next_index() == 1);
    history_sum_fft(U, state, 1);
    CHECK(state.next_index() == 2);
    CHECK_THROWS(history_sum_fft(U, state, 4));

    BlockedHistory moved = std::move(state);
    CHECK(moved.next_index() == 2);
}

TEST_CASE("zero weights give zero history")
{
    const std::size_t J = 64;
    const std::vector<double> w(J + 1, 0.0);
    const auto U = random_slabs(J, 4, 9);
    BlockedHistory state(w, 4, J, 4);
    for (std::size_t k = 1; k <= J; ++k) {
        const auto h = history_sum_fft(U, state, k);
        CHECK(std::all_of(h.begin(), h.end(), [](double v) { return v == 0.0; }));
    }
}
