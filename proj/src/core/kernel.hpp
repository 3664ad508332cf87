#pragma once

// Fractional-calculus primitives of the time discretization: the convolution
// weights of the piecewise-constant scheme, exact Riemann-Liouville integrals
// of piecewise-constant functions, and the generating function psi of the
// weights.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "core/grid.hpp"

namespace fracwave {

/// b_j = j^(1+alpha) / Gamma(2+alpha) for j = 0..K and the second
/// differences w_i = b_{i+1} - 2 b_i + b_{i-1}, i = 1..K-1.
///
/// The second differences are evaluated from a cancellation-free expansion,
/// so w_i keeps full relative accuracy for large i (a direct difference of
/// the b_j loses a factor ~i^2).
class ConvolutionWeights {
public:
    ConvolutionWeights(FracOrder alpha, std::size_t K);

    [[nodiscard]] FracOrder alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::size_t count() const noexcept { return b_.size() - 1; }

    [[nodiscard]] double b(std::size_t j) const { return b_.at(j); }
    /// w_i for 1 <= i <= K-1.
    [[nodiscard]] double w(std::size_t i) const { return w_.at(i); }

    [[nodiscard]] std::span<const double> b_values() const noexcept { return b_; }
    /// Index 0 holds 0 so that w_span()[i] == w(i).
    [[nodiscard]] std::span<const double> w_span() const noexcept { return w_; }

private:
    FracOrder alpha_;
    std::vector<double> b_;
    std::vector<double> w_;
};

ConvolutionWeights conv_weights(FracOrder alpha, std::size_t K);

/// Second difference j^p(... ) kernel: ((i+1)^p - 2 i^p + (i-1)^p), accurate for all i >= 1.
double second_difference_power(double p, std::size_t i);

/// (D_{0+}^{-beta} v)(t) for v piecewise constant on `grid` with slab values `values`.
double rl_integral_pc_left(std::span<const double> values, const TimeGrid& grid, double beta, double t);

/// (D_{T-}^{-beta} v)(t), the right-sided counterpart with kernel (s-t)^(beta-1) on (t, T).
double rl_integral_pc_right(std::span<const double> values, const TimeGrid& grid, double beta, double t);

/// psi(z) = (e^z - 1)/Gamma(2+alpha) * sum_{k>=1} k^(1+alpha) e^(-kz), continued to
/// C \ (-inf, 0] within |Im z| < 2 pi through the bilateral series
/// (e^z - 1) * sum_{k in Z} (z + 2 k pi i)^(-2-alpha).
class Psi {
public:
    explicit Psi(FracOrder alpha);

    /// Region switch: exponential series for Re z >= 1, bilateral series otherwise.
    std::complex<double> operator()(std::complex<double> z) const;

    std::complex<double> exponential_series(std::complex<double> z) const;
    std::complex<double> bilateral_series(std::complex<double> z) const;

    [[nodiscard]] FracOrder alpha() const noexcept { return alpha_; }

    /// Number of explicitly summed terms on each side of k = 0.
    static constexpr int kTerms = 32;

private:
    FracOrder alpha_;
    double inv_gamma_;
};

std::complex<double> psi_eval(std::complex<double> z, FracOrder alpha);

/// e^z - 1 without cancellation for small |z|.
std::complex<double> expm1_complex(std::complex<double> z);

}  // namespace fracwave
