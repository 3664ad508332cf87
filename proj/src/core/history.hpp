#pragma once

// Memory term of the time-stepping scheme,
//   H_k = sum_{j=1}^{k} w_{k+1-j} U_j,
// for vector-valued slab values U_j stored row after row (slab j occupies
// entries [(j-1) N, j N) of the slab buffer).

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fracwave {

/// Direct O(k N) evaluation. `weights[i]` is w_i (index 0 unused).
void history_sum_naive(std::span<const double> slabs, std::size_t N, std::span<const double> weights, std::size_t k,
                       std::span<double> out);

std::vector<double> history_sum_naive(std::span<const double> slabs, std::size_t N, std::span<const double> weights,
                                      std::size_t k);

/// Incremental blocked evaluation of H_1, H_2, ... .
///
/// The triangle {1 <= j <= k <= J} is split recursively into squares: sources
/// (mL, (m+1)L] against targets ((m+1)L, (m+2)L] for m even and L a power of
/// two. Each square is a Toeplitz product, done with one FFT of length 2L per
/// pair of columns as soon as U_{(m+1)L} is known, and added to the pending
/// sums of its targets. Leaves of size below `min_block` are summed directly.
class BlockedHistory {
public:
    /// `weights[i]` = w_i for 1 <= i <= J (entries beyond the span are treated as 0).
    BlockedHistory(std::span<const double> weights, std::size_t N, std::size_t J, std::size_t min_block = 32);
    ~BlockedHistory();
    BlockedHistory(const BlockedHistory&) = delete;
    BlockedHistory& operator=(const BlockedHistory&) = delete;
    BlockedHistory(BlockedHistory&&) noexcept;
    BlockedHistory& operator=(BlockedHistory&&) noexcept;

    /// H_k. Calls must come in order k = 1, 2, ..., J, each after U_k has
    /// been written to `slabs`.
    void sum(std::span<const double> slabs, std::size_t k, std::span<double> out);

    [[nodiscard]] std::size_t next_index() const noexcept;
    [[nodiscard]] std::size_t width() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Same value as history_sum_naive through the blocked state.
std::vector<double> history_sum_fft(std::span<const double> slabs, BlockedHistory& state, std::size_t k);

}  // namespace fracwave
