#include "core/dg_solver.hpp"

#include <algorithm>
#include <cmath>

#include "core/history.hpp"
#include "core/kernel.hpp"

namespace fracwave {

ForcingSpec ForcingSpec::zero()
{
    return {};
}

ForcingSpec ForcingSpec::constant(SpatialFunctionSpec X)
{
    ForcingSpec f;
    f.kind_ = Kind::constant;
    f.X_ = std::move(X);
    return f;
}

ForcingSpec ForcingSpec::separable(SpatialFunctionSpec X, double q)
{
    if (!(q > -1.0)) {
        throw DomainError("time exponent must exceed -1 for an integrable forcing");
    }
    ForcingSpec f;
    f.kind_ = Kind::separable;
    f.X_ = std::move(X);
    f.q_ = q;
    return f;
}

double ForcingSpec::time_factor(const TimeGrid& grid, std::size_t k) const
{
    if (k < 1 || k > grid.steps()) {
        throw ArgumentError("time_factor: slab index out of range");
    }
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return grid.tau();
    case Kind::separable:
        break;
    }
    const double p = q_ + 1.0;
    const double tk = grid.t(k);
    if (k == 1) {
        return std::pow(tk, p) / p;
    }
    // (t_k^p - t_{k-1}^p)/p = -t_k^p expm1(p log(1 - 1/k)) / p
    return -std::pow(tk, p) * std::expm1(p * std::log1p(-1.0 / static_cast<double>(k))) / p;
}

double ForcingSpec::l1_l2_norm(double T) const
{
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return X_.l2_norm() * T;
    case Kind::separable:
        break;
    }
    return X_.l2_norm() * std::pow(T, q_ + 1.0) / (q_ + 1.0);
}

Trajectory::Trajectory(double alpha, SpaceGrid1D sgrid, TimeGrid tgrid)
    : alpha_(alpha), sgrid_(sgrid), tgrid_(tgrid), u0h_(sgrid.interior(), 0.0),
      slabs_(sgrid.interior() * tgrid.steps(), 0.0), norms_(tgrid.steps() + 1, 0.0)
{
}

std::span<const double> Trajectory::value(std::size_t j) const
{
    const std::size_t N = width();
    if (j == 0) {
        return u0h_;
    }
    if (j > steps()) {
        throw ArgumentError("trajectory: slab index out of range");
    }
    if (!full_) {
        if (j == steps()) {
            return last_;
        }
        throw ArgumentError("trajectory: intermediate slabs were not stored");
    }
    return std::span<const double>(slabs_).subspan((j - 1) * N, N);
}

std::span<double> Trajectory::value(std::size_t j)
{
    const auto view = static_cast<const Trajectory&>(*this).value(j);
    return {const_cast<double*>(view.data()), view.size()};
}

void Trajectory::drop_history()
{
    if (!full_) {
        return;
    }
    const auto lastv = value(steps());
    last_.assign(lastv.begin(), lastv.end());
    std::vector<double>().swap(slabs_);
    full_ = false;
}

std::vector<double> rhs_load(const ForcingSpec& f, const SpaceGrid1D& sgrid, const TimeGrid& tgrid, std::size_t k)
{
    const double factor = f.time_factor(tgrid, k);
    std::vector<double> load = load_vector(f.spatial(), sgrid);
    for (double& v : load) {
        v *= factor;
    }
    return load;
}

Trajectory run(const SpatialFunctionSpec& u0, const ForcingSpec& f, const SpaceGrid1D& sgrid, const TimeGrid& tgrid,
               FracOrder alpha, const SolverConfig& config)
{
    const FemFunction u0h = l2_project(u0, sgrid);
    DiscreteForcing df{load_vector(f.spatial(), sgrid), f};
    return run_discrete(u0h, df, sgrid, tgrid, alpha, config);
}

Trajectory run_discrete(std::span<const double> u0h, const DiscreteForcing& f, const SpaceGrid1D& sgrid,
                        const TimeGrid& tgrid, FracOrder alpha, const SolverConfig& config)
{
    const std::size_t N = sgrid.interior();
    const std::size_t J = tgrid.steps();
    const bool forced = f.time_profile.kind() != ForcingSpec::Kind::zero;
    if (u0h.size() != N || (forced && f.load.size() != N)) {
        throw ArgumentError("run: data size does not match the space grid");
    }
    const ConvolutionWeights weights(alpha, J + 1);
    const TriDiagMatrix mass = assemble_mass(sgrid);
    const TriDiagMatrix stiff = assemble_stiffness(sgrid);
    const double c = std::pow(tgrid.tau(), 1.0 + alpha.value());

    TriDiagMatrix system = mass;
    for (std::size_t i = 0; i < N; ++i) {
        system.diag[i] += c * weights.b(1) * stiff.diag[i];
    }
    for (std::size_t i = 0; i + 1 < N; ++i) {
        system.off[i] += c * weights.b(1) * stiff.off[i];
    }
    const TriDiagFactor factor(system);

    Trajectory traj(alpha.value(), sgrid, tgrid);
    std::copy(u0h.begin(), u0h.end(), traj.initial().begin());
    std::vector<double> norms(J + 1);
    norms[0] = l2_norm(u0h, mass);

    std::unique_ptr<BlockedHistory> blocked;
    if (config.history_mode == HistoryMode::fft_blocked) {
        blocked = std::make_unique<BlockedHistory>(weights.w_span(), N, J);
    }
    std::span<double> slabs = traj.slab_data();
    std::vector<double> history(N, 0.0);
    std::vector<double> ah(N);
    std::vector<double> rhs(N);
    std::vector<double> residual(N);
    for (std::size_t k = 0; k < J; ++k) {
        const std::span<const double> uk = traj.value(k);
        mass.apply(uk, rhs);
        if (k >= 1) {
            if (blocked) {
                blocked->sum(slabs, k, history);
            } else {
                history_sum_naive(slabs, N, weights.w_span(), k, history);
            }
            stiff.apply(history, ah);
            for (std::size_t i = 0; i < N; ++i) {
                rhs[i] -= c * ah[i];
            }
        }
        if (forced) {
            const double tf = f.time_profile.time_factor(tgrid, k + 1);
            for (std::size_t i = 0; i < N; ++i) {
                rhs[i] += tf * f.load[i];
            }
        }
        std::span<double> next = slabs.subspan(k * N, N);
        std::copy(rhs.begin(), rhs.end(), next.begin());
        factor.solve_in_place(next);
        if (config.linear_solve_tol > 0.0) {
            system.apply(next, residual);
            double rnorm = 0.0;
            double bnorm = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                residual[i] = rhs[i] - residual[i];
                rnorm = std::max(rnorm, std::abs(residual[i]));
                bnorm = std::max(bnorm, std::abs(rhs[i]));
            }
            if (rnorm > config.linear_solve_tol * bnorm) {
                factor.solve_in_place(residual);
                for (std::size_t i = 0; i < N; ++i) {
                    next[i] += residual[i];
                }
            }
        }
        norms[k + 1] = l2_norm(next, mass);
        if (!std::isfinite(norms[k + 1])) {
            throw NumericError("run: non-finite solution");
        }
    }
    traj.set_norms(std::move(norms));
    if (!config.store_full_history) {
        traj.drop_history();
    }
    return traj;
}

double stability_bound(const SpatialFunctionSpec& u0, const ForcingSpec& f, double T)
{
    return std::sqrt(2.0) * u0.l2_norm() + 2.0 * f.l1_l2_norm(T);
}

}  // namespace fracwave
