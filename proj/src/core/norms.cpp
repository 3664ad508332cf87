#include "core/norms.hpp"

#include <algorithm>
#include <cmath>

namespace fracwave {

DifferenceProfile::DifferenceProfile(const Trajectory& coarse, const Trajectory& fine, SpatialComparison mode)
    : ratio_(0), coarse_steps_(coarse.steps()), T_(fine.time().final_time())
{
    if (coarse.time().final_time() != fine.time().final_time()) {
        throw ArgumentError("difference profile: final times differ");
    }
    if (fine.steps() < coarse.steps() || fine.steps() % coarse.steps() != 0) {
        throw ArgumentError("difference profile: time grids are not nested");
    }
    if (fine.space().cells() < coarse.space().cells() || fine.space().cells() % coarse.space().cells() != 0) {
        throw ArgumentError("difference profile: space grids are not nested");
    }
    if (!coarse.full() || !fine.full()) {
        throw ArgumentError("difference profile: both trajectories must hold every slab");
    }
    ratio_ = fine.steps() / coarse.steps();
    const std::size_t Jf = fine.steps();
    values_.assign(Jf + 1, 0.0);
    values_[0] = 0.0;

    if (mode == SpatialComparison::prolongate) {
        const TriDiagMatrix mass = assemble_mass(fine.space());
        std::vector<double> diff(fine.width());
        FemFunction cur;
        for (std::size_t k = 1; k <= Jf; ++k) {
            const std::size_t jc = (k - 1) / ratio_ + 1;
            if ((k - 1) % ratio_ == 0) {
                cur = prolongate(coarse.value(jc), coarse.space(), fine.space());
            }
            const auto uf = fine.value(k);
            for (std::size_t i = 0; i < diff.size(); ++i) {
                diff[i] = cur[i] - uf[i];
            }
            values_[k] = l2_norm(diff, mass);
        }
        return;
    }
    const TriDiagMatrix mass = assemble_mass(coarse.space());
    std::vector<double> diff(coarse.width());
    for (std::size_t k = 1; k <= Jf; ++k) {
        const std::size_t jc = (k - 1) / ratio_ + 1;
        const FemFunction uf = restrict_to(fine.value(k), fine.space(), coarse.space());
        const auto uc = coarse.value(jc);
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff[i] = uc[i] - uf[i];
        }
        values_[k] = l2_norm(diff, mass);
    }
}

double DifferenceProfile::at_coarse_node(std::size_t j) const
{
    if (j < 1 || j > coarse_steps_) {
        throw ArgumentError("difference profile: coarse index out of range");
    }
    return values_[j * ratio_];
}

double norm_linf_l2(const DifferenceProfile& diff, TimeSampling sampling)
{
    if (sampling == TimeSampling::supremum) {
        const auto& v = diff.per_fine_slab();
        return *std::max_element(v.begin() + 1, v.end());
    }
    double out = 0.0;
    for (std::size_t j = 1; j <= diff.coarse_steps(); ++j) {
        out = std::max(out, diff.at_coarse_node(j));
    }
    return out;
}

double norm_weighted(const DifferenceProfile& diff, double beta, int n)
{
    if (n < 0 || diff.coarse_steps() != (std::size_t{1} << n)) {
        throw ArgumentError("norm_weighted: the coarse grid does not have 2^n slabs");
    }
    if (!(beta >= 0.0)) {
        throw DomainError("norm_weighted: beta must be nonnegative");
    }
    const double J = static_cast<double>(diff.coarse_steps());
    double out = 0.0;
    for (std::size_t j = 1; j <= diff.coarse_steps(); ++j) {
        const double weight = beta == 0.0 ? 1.0 : std::pow(static_cast<double>(j) / J, beta);
        out = std::max(out, weight * diff.at_coarse_node(j));
    }
    return out;
}

double norm_final_time(const DifferenceProfile& diff)
{
    return diff.at_coarse_node(diff.coarse_steps());
}

double norm_linf_l2(const Trajectory& diff)
{
    const auto& v = diff.norms();
    if (v.size() < 2) {
        throw ArgumentError("norm_linf_l2: empty trajectory");
    }
    return *std::max_element(v.begin() + 1, v.end());
}

double norm_weighted(const Trajectory& diff, double beta, int n)
{
    if (n < 0 || diff.steps() != (std::size_t{1} << n)) {
        throw ArgumentError("norm_weighted: the trajectory does not have 2^n slabs");
    }
    if (!(beta >= 0.0)) {
        throw DomainError("norm_weighted: beta must be nonnegative");
    }
    const double J = static_cast<double>(diff.steps());
    double out = 0.0;
    for (std::size_t j = 1; j <= diff.steps(); ++j) {
        const double weight = beta == 0.0 ? 1.0 : std::pow(static_cast<double>(j) / J, beta);
        out = std::max(out, weight * diff.norms()[j]);
    }
    return out;
}

std::vector<double> convergence_order(std::span<const double> errors)
{
    if (errors.size() < 2) {
        throw ArgumentError("convergence_order: need at least two errors");
    }
    for (double e : errors) {
        if (!(e > 0.0)) {
            throw ArgumentError("convergence_order: errors must be positive");
        }
    }
    std::vector<double> out(errors.size() - 1);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        out[i] = std::log2(errors[i] / errors[i + 1]);
    }
    return out;
}

}  // namespace fracwave
