#include "core/kernel.hpp"

#include <cmath>
#include <numbers>

#include "core/special.hpp"

namespace fracwave {

using cplx = std::complex<double>;
using std::numbers::pi;

double second_difference_power(double p, std::size_t i)
{
    if (i == 0) {
        throw ArgumentError("second_difference_power: index must be >= 1");
    }
    const double di = static_cast<double>(i);
    if (i < 3) {
        return std::pow(di + 1.0, p) - 2.0 * std::pow(di, p) + std::pow(di - 1.0, p);
    }
    // (1+x)^p + (1-x)^p - 2 = 2 sum_{m>=1} C(p, 2m) x^{2m},  x = 1/i
    const double x = 1.0 / di;
    double coeff = 1.0;  // C(p, n)
    double xn = 1.0;
    double sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        coeff *= (p - n + 1) / n;
        xn *= x;
        if (n % 2 == 1) {
            continue;
        }
        const double term = 2.0 * coeff * xn;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return std::pow(di, p) * sum;
}

ConvolutionWeights::ConvolutionWeights(FracOrder alpha, std::size_t K) : alpha_(alpha)
{
    if (K < 2) {
        throw ArgumentError("conv_weights: need K >= 2");
    }
    const double p = 1.0 + alpha.value();
    const double scale = 1.0 / gamma_fn(2.0 + alpha.value());
    b_.resize(K + 1);
    b_[0] = 0.0;
    for (std::size_t j = 1; j <= K; ++j) {
        b_[j] = std::pow(static_cast<double>(j), p) * scale;
    }
    w_.assign(K, 0.0);
    for (std::size_t i = 1; i < K; ++i) {
        w_[i] = second_difference_power(p, i) * scale;
    }
}

ConvolutionWeights conv_weights(FracOrder alpha, std::size_t K)
{
    return ConvolutionWeights(alpha, K);
}

namespace {

void check_rl_args(std::span<const double> values, const TimeGrid& grid, double beta)
{
    if (values.size() != grid.steps()) {
        throw ArgumentError("fractional integral: one value per slab required");
    }
    if (!(beta > 0.0 && beta <= 1.0)) {
        throw DomainError("fractional integral: beta must lie in (0, 1]");
    }
}

double pos_pow(double x, double beta)
{
    return x > 0.0 ? std::pow(x, beta) : 0.0;
}

}  // namespace

double rl_integral_pc_left(std::span<const double> values, const TimeGrid& grid, double beta, double t)
{
    check_rl_args(values, grid, beta);
    if (!(t > 0.0 && t <= grid.final_time())) {
        throw DomainError("rl_integral_pc_left: t must lie in (0, T]");
    }
    double sum = 0.0;
    for (std::size_t j = 1; j <= grid.steps(); ++j) {
        const double left = grid.t(j - 1);
        if (left >= t) {
            break;
        }
        sum += values[j - 1] * (pos_pow(t - left, beta) - pos_pow(t - grid.t(j), beta));
    }
    return sum / gamma_fn(1.0 + beta);
}

double rl_integral_pc_right(std::span<const double> values, const TimeGrid& grid, double beta, double t)
{
    check_rl_args(values, grid, beta);
    if (!(t >= 0.0 && t < grid.final_time())) {
        throw DomainError("rl_integral_pc_right: t must lie in [0, T)");
    }
    double sum = 0.0;
    for (std::size_t j = grid.steps(); j >= 1; --j) {
        const double right = grid.t(j);
        if (right <= t) {
            break;
        }
        sum += values[j - 1] * (pos_pow(right - t, beta) - pos_pow(grid.t(j - 1) - t, beta));
    }
    return sum / gamma_fn(1.0 + beta);
}

cplx expm1_complex(cplx z)
{
    const double x = z.real();
    const double y = z.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

Psi::Psi(FracOrder alpha) : alpha_(alpha), inv_gamma_(1.0 / gamma_fn(2.0 + alpha.value())) {}

cplx Psi::exponential_series(cplx z) const
{
    if (!(z.real() > 0.0)) {
        throw DomainError("psi: exponential series needs Re z > 0");
    }
    const double p = 1.0 + alpha_.value();
    const cplx decay = std::exp(-z);
    const double k_peak = p / z.real();
    cplx sum = 0.0;
    cplx factor = 1.0;  // e^{-(k-1) z}
    for (int k = 1; k < 1000000; ++k) {
        const cplx term = std::pow(static_cast<double>(k), p) * factor;
        sum += term;
        if (k > k_peak && std::abs(term) <= 1e-17 * std::abs(sum)) {
            return -expm1_complex(-z) * sum * inv_gamma_;
        }
        factor *= decay;
    }
    throw NumericError("psi: exponential series did not converge");
}

cplx Psi::bilateral_series(cplx z) const
{
    const double e = 2.0 + alpha_.value();
    const cplx two_pi_i(0.0, 2.0 * pi);
    auto power = [e](cplx w) { return std::exp(-e * std::log(w)); };

    cplx sum = power(z);
    for (int k = 1; k <= kTerms; ++k) {
        sum += power(z + two_pi_i * static_cast<double>(k));
        sum += power(z - two_pi_i * static_cast<double>(k));
    }
    // Euler-Maclaurin remainder of sum_{k > K} (z + c k)^{-e} for c = +-2 pi i.
    auto tail = [&](cplx c) {
        const cplx w = z + c * static_cast<double>(kTerms);
        const cplx W = power(w);
        const cplx r = c / w;
        const cplx integral = w * W / ((e - 1.0) * c);
        const cplx d1 = -e * r * W;
        const cplx d3 = -e * (e + 1.0) * (e + 2.0) * r * r * r * W;
        const cplx d5 = -e * (e + 1.0) * (e + 2.0) * (e + 3.0) * (e + 4.0) * r * r * r * r * r * W;
        return integral - 0.5 * W - d1 / 12.0 + d3 / 720.0 - d5 / 30240.0;
    };
    sum += tail(two_pi_i) + tail(-two_pi_i);
    return expm1_complex(z) * sum;
}

cplx Psi::operator()(cplx z) const
{
    if (std::abs(z.imag()) >= 2.0 * pi) {
        throw DomainError("psi: requires |Im z| < 2 pi");
    }
    if (z.imag() == 0.0 && z.real() <= 0.0) {
        throw DomainError("psi: z lies on the branch cut (-inf, 0]");
    }
    if (z.real() >= 1.0) {
        return exponential_series(z);
    }
    return bilateral_series(z);
}

cplx psi_eval(cplx z, FracOrder alpha)
{
    return Psi(alpha)(z);
}

}  // namespace fracwave
