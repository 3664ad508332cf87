#include "core/scalar_ode.hpp"

#include <algorithm>
#include <cmath>

#include "core/kernel.hpp"
#include "core/special.hpp"

namespace fracwave::ode {

ScalarProblem::ScalarProblem(FracOrder a, double lambda_, double tau_, double xi0_)
    : alpha(a), lambda(lambda_), tau(tau_), xi0(xi0_)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("scalar problem: lambda must be nonnegative");
    }
    if (!(tau > 0.0)) {
        throw DomainError("scalar problem: tau must be positive");
    }
}

double ScalarProblem::mu() const
{
    return lambda * std::pow(tau, 1.0 + alpha.value());
}

ScalarProblem ScalarProblem::from_mu(FracOrder a, double mu, double xi0)
{
    return ScalarProblem(a, mu, 1.0, xi0);
}

namespace {

// History sums are formed directly (O(K^2)); this module is the oracle for
// the vector solver's fast path.
ScalarTrajectory run_recurrence(const ScalarProblem& p, std::size_t K, double y0, double source)
{
    if (K < 1) {
        throw ArgumentError("scalar recurrence: need K >= 1");
    }
    const ConvolutionWeights weights(p.alpha, std::max<std::size_t>(K, 2));
    const double mu = p.mu();
    const double diag = 1.0 + mu * weights.b(1);
    ScalarTrajectory out;
    out.y.assign(K + 1, 0.0);
    out.y[0] = y0;
    for (std::size_t k = 0; k < K; ++k) {
        double history = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            history += weights.w(k + 1 - j) * out.y[j];
        }
        out.y[k + 1] = (out.y[k] + source - mu * history) / diag;
    }
    return out;
}

}  // namespace

ScalarTrajectory step_hom(const ScalarProblem& p, std::size_t K)
{
    return run_recurrence(p, K, p.xi0, 0.0);
}

ScalarTrajectory step_forced(const ScalarProblem& p, std::size_t K)
{
    return run_recurrence(p, K, 0.0, p.tau);
}

JumpReport verify_jump_decay(const ScalarProblem& p, std::size_t K)
{
    if (K < 2) {
        throw ArgumentError("verify_jump_decay: need K >= 2");
    }
    JumpReport report;
    if (p.xi0 == 0.0) {
        return report;
    }
    const ScalarTrajectory traj = step_hom(p, K);
    const double scale = 1.0 / std::abs(p.xi0);
    report.at_k1 = std::abs(traj.y[2] - traj.y[1]) * scale;
    for (std::size_t k = 2; k < K; ++k) {
        report.sup_k_ge2 = std::max(report.sup_k_ge2, static_cast<double>(k) * std::abs(traj.y[k + 1] - traj.y[k]) * scale);
    }
    return report;
}

double exact_xi(const ScalarProblem& p, double t, Mode mode, ExactSource source, const ContourSpec& spec)
{
    const double a = p.alpha.value();
    if (source == ExactSource::contour) {
        return mode == Mode::homogeneous ? contour_xi_hom(p.lambda, p.alpha, t, p.xi0, spec)
                                         : contour_xi_forced(p.lambda, p.alpha, t, spec);
    }
    if (!(t > 0.0)) {
        throw DomainError("exact_xi: t must be positive");
    }
    const double z = -p.lambda * std::pow(t, 1.0 + a);
    if (mode == Mode::homogeneous) {
        return p.xi0 * mittag_leffler(1.0 + a, 1.0, z).real();
    }
    return t * mittag_leffler(1.0 + a, 2.0, z).real();
}

std::vector<double> error_profile(const ScalarProblem& p, std::size_t K, Mode mode, const ContourSpec& spec,
                                  ExactSource source)
{
    std::vector<double> errors(K + 1, 0.0);
    if (mode == Mode::homogeneous) {
        if (p.xi0 == 0.0) {
            return errors;
        }
        const ScalarTrajectory traj = step_hom(p, K);
        for (std::size_t k = 1; k <= K; ++k) {
            const double exact = exact_xi(p, static_cast<double>(k) * p.tau, mode, source, spec);
            errors[k] = static_cast<double>(k) * std::abs(exact - traj.y[k]) / std::abs(p.xi0);
        }
        return errors;
    }
    const ScalarTrajectory traj = step_forced(p, K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double exact = exact_xi(p, static_cast<double>(k) * p.tau, mode, source, spec);
        errors[k] = std::abs(exact - traj.y[k]) / p.tau;
    }
    return errors;
}

ErrorDecayReport verify_error_decay(const ScalarProblem& p, std::size_t K, Mode mode, const ContourSpec& spec,
                                    ExactSource source)
{
    const std::vector<double> errors = error_profile(p, K, mode, spec, source);
    ErrorDecayReport report;
    for (std::size_t k = 1; k <= K; ++k) {
        if (errors[k] > report.sup) {
            report.sup = errors[k];
            report.argmax = k;
        }
    }
    return report;
}

std::vector<double> prefix_sup(const std::vector<double>& errors)
{
    std::vector<double> out(errors.size(), 0.0);
    double run = 0.0;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        run = std::max(run, errors[k]);
        out[k] = run;
    }
    return out;
}

}  // namespace fracwave::ode
