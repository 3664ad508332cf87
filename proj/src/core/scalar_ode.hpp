#pragma once

// Per-eigenmode dynamics of the time-stepping scheme: the two scalar
// recurrences and the empirical constants of their decay/error estimates.

#include <cstddef>
#include <vector>

#include "core/contour.hpp"
#include "core/grid.hpp"

namespace fracwave::ode {

struct ScalarProblem {
    FracOrder alpha;
    double lambda;  // >= 0
    double tau;     // > 0
    double xi0;     // initial value of the homogeneous problem

    ScalarProblem(FracOrder a, double lambda_, double tau_, double xi0_ = 1.0);

    /// mu = lambda * tau^(1+alpha)
    [[nodiscard]] double mu() const;

    /// Problem with the given mu (tau = 1, lambda = mu).
    static ScalarProblem from_mu(FracOrder a, double mu, double xi0 = 1.0);
};

struct ScalarTrajectory {
    std::vector<double> y;  // Y_0 .. Y_K
};

/// (1 + mu b_1) Y_{k+1} = Y_k - mu sum_{j=1}^{k} w_{k+1-j} Y_j,  Y_0 = xi0.
ScalarTrajectory step_hom(const ScalarProblem& p, std::size_t K);

/// (1 + mu b_1) Y_{k+1} = Y_k + tau - mu sum_{j=1}^{k} w_{k+1-j} Y_j,  Y_0 = 0.
ScalarTrajectory step_forced(const ScalarProblem& p, std::size_t K);

struct JumpReport {
    double sup_k_ge2 = 0.0;  // sup_{k >= 2} k |Y_{k+1} - Y_k| / |xi0|
    double at_k1 = 0.0;      // |Y_2 - Y_1| / |xi0|
};

JumpReport verify_jump_decay(const ScalarProblem& p, std::size_t K);

enum class Mode { homogeneous, forced };

/// Where xi(t_k) comes from. The contour route is the reference definition;
/// the Mittag-Leffler route is much faster for long sweeps.
enum class ExactSource { contour, mittag_leffler };

/// xi(t) of the continuous problem.
double exact_xi(const ScalarProblem& p, double t, Mode mode, ExactSource source, const ContourSpec& spec);

/// Normalized errors e_k for k = 1..K: k |xi(t_k) - Y_k| / |xi0| (homogeneous)
/// or |xi(t_k) - Y_k| / tau (forced); entry 0 is unused.
std::vector<double> error_profile(const ScalarProblem& p, std::size_t K, Mode mode, const ContourSpec& spec,
                                  ExactSource source = ExactSource::contour);

struct ErrorDecayReport {
    double sup = 0.0;
    std::size_t argmax = 0;
};

ErrorDecayReport verify_error_decay(const ScalarProblem& p, std::size_t K, Mode mode, const ContourSpec& spec,
                                    ExactSource source = ExactSource::contour);

/// Running sup of a profile: out[k] = max_{1 <= i <= k} e_i.
std::vector<double> prefix_sup(const std::vector<double>& errors);

}  // namespace fracwave::ode
