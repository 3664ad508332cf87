#pragma once

#include <complex>

namespace fracwave {

/// Gamma function for x > 0; throws DomainError otherwise.
double gamma_fn(double x);

/// 1/Gamma(x) for any real x, exactly zero at the poles 0, -1, -2, ...
double rgamma(double x);

/// Two-parameter Mittag-Leffler function E_{beta,gamma}(z) = sum z^n / Gamma(beta n + gamma).
///
/// Evaluation regions:
///  - power series when |z| <= 5 (beta >= 1) or |z| <= 1 (beta < 1);
///  - the algebraic asymptotic expansion plus the pole residues for real
///    z <= -50 and beta < 2, accepted only when its smallest term is below
///    1e-17 of the running sum;
///  - otherwise a Hankel-contour integral with the poles of 1/(s^beta - z)
///    that lie right of the contour added as residues.
std::complex<double> mittag_leffler(double beta, double gamma, std::complex<double> z);

namespace detail {
std::complex<double> ml_series(double beta, double gamma, std::complex<double> z);
std::complex<double> ml_hankel(double beta, double gamma, std::complex<double> z);
// Returns false (and leaves `out` untouched) when the expansion cannot reach full accuracy.
bool ml_asymptotic(double beta, double gamma, double z, std::complex<double>& out);
}  // namespace detail

}  // namespace fracwave
