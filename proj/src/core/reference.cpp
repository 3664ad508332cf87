#include "core/reference.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "core/quadrature.hpp"
#include "core/special.hpp"
#include "core/trajectory_io.hpp"

namespace fracwave {

using cplx = std::complex<double>;
using std::numbers::pi;
namespace fs = std::filesystem;

double SpectralBasis::lambda(std::size_t n)
{
    const double w = static_cast<double>(n) * pi;
    return w * w;
}

double SpectralBasis::phi(std::size_t n, double x)
{
    return std::numbers::sqrt2 * std::sin(static_cast<double>(n) * pi * x);
}

SpectralCoefficients fourier_coeffs_power(double p, std::size_t n_max)
{
    if (!(p > -0.5)) {
        throw DomainError("fourier_coeffs_power: x^p is in L2(0,1) only for p > -1/2");
    }
    if (n_max < 1) {
        throw ArgumentError("fourier_coeffs_power: need at least one mode");
    }
    const double g = gamma_fn(p + 1.0);
    const cplx phase = std::polar(1.0, 0.5 * pi * (p + 1.0));
    SpectralCoefficients out;
    out.coeffs.resize(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double w = static_cast<double>(n) * pi;
        const cplx whole = g * phase * std::pow(w, -(p + 1.0));
        // int_1^inf x^p e^{iwx} dx = i e^{iw} / w * int_0^inf (1 + i s/w)^p e^{-s} ds
        auto f = [&](double s) { return std::pow(cplx(1.0, s / w), p) * std::exp(-s); };
        const cplx rotated = quad::integrate_graded(f, 1.0, 48.0, 2.0, 1e-17) + quad::adaptive(f, 0.0, 1.0, 1e-17);
        const cplx tail = cplx(0.0, 1.0) * std::polar(1.0, w) / w * rotated;
        out.coeffs[n - 1] = std::numbers::sqrt2 * (whole - tail).imag();
    }
    // |c_n| <= sqrt(2) (Gamma(p+1) w^{-(p+1)} + 1/w) and |int ... ds| <= 1 for p <= 0
    const double e = std::min(p + 1.0, 1.0);
    out.tail_exponent = e;
    out.tail_constant = std::numbers::sqrt2 * (g * std::pow(pi, -(p + 1.0)) + std::pow(2.0, std::max(p, 0.0)) / pi);
    return out;
}

double fourier_coeff_power_direct(double p, std::size_t n)
{
    if (!(p > -0.5)) {
        throw DomainError("fourier_coeff_power_direct: p must exceed -1/2");
    }
    const double w = static_cast<double>(n) * pi;
    auto f = [&](double x) { return std::pow(x, p) * std::sin(w * x); };
    const double first = 1.0 / (2.0 * static_cast<double>(n));
    double sum = 0.0;
    // geometric panels toward 0 inside the first half-period
    for (double b = first; b > 1e-30; b *= 0.5) {
        sum += quad::adaptive(f, 0.5 * b, b, 1e-17 * b).real();
    }
    for (std::size_t i = 1; i < 2 * n; ++i) {
        const double a = static_cast<double>(i) * first;
        sum += quad::adaptive(f, a, a + first, 1e-17).real();
    }
    return std::numbers::sqrt2 * sum;
}

HomSolution exact_hom_solution(const SpectralCoefficients& c, FracOrder alpha, double t, const SpaceGrid1D& sgrid,
                               double tol)
{
    if (!(t > 0.0)) {
        throw DomainError("exact_hom_solution: t must be positive");
    }
    const double a = alpha.value();
    const double ta = std::pow(t, 1.0 + a);
    const std::size_t n_max = c.coeffs.size();
    HomSolution out;
    out.values.assign(sgrid.interior(), 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double amp = c.coeffs[n - 1] * mittag_leffler(1.0 + a, 1.0, -SpectralBasis::lambda(n) * ta).real();
        if (amp == 0.0) {
            continue;
        }
        for (std::size_t i = 1; i < sgrid.cells(); ++i) {
            out.values[i - 1] += amp * SpectralBasis::phi(n, sgrid.node(i));
        }
    }
    // sum_{n > n_max} sqrt(2) K n^{-e} / (1 + n^2 pi^2 t^{1+a}) <= sqrt(2) K / (pi^2 t^{1+a}) * n_max^{-(e+1)} / (e+1)
    const double nm = static_cast<double>(n_max);
    const double e = c.tail_exponent;
    out.tail_bound = std::numbers::sqrt2 * c.tail_constant / (pi * pi * ta) * std::pow(nm, -(e + 1.0)) / (e + 1.0);
    if (tol > 0.0 && out.tail_bound > tol) {
        std::ostringstream msg;
        msg << "exact_hom_solution: truncation estimate " << out.tail_bound << " exceeds tolerance " << tol;
        throw NumericError(msg.str());
    }
    return out;
}

ExperimentData experiment_data(int id, FracOrder alpha)
{
    const double a = alpha.value();
    switch (id) {
    case 1:
        return {SpatialFunctionSpec::power(-0.49), ForcingSpec::zero()};
    case 2:
        return {SpatialFunctionSpec::zero(), ForcingSpec::constant(SpatialFunctionSpec::power(-0.49))};
    case 3:
        return {SpatialFunctionSpec::zero(), ForcingSpec::separable(SpatialFunctionSpec::power(a / (a + 1.0) - 0.49), -0.49)};
    case 4:
        return {SpatialFunctionSpec::zero(), ForcingSpec::separable(SpatialFunctionSpec::power(-0.49), a + 0.01)};
    default:
        throw ArgumentError("experiment id must be 1, 2, 3 or 4");
    }
}

namespace {

std::mutex& build_mutex(const std::string& key)
{
    static std::mutex guard;
    static std::map<std::string, std::mutex> locks;
    std::lock_guard lock(guard);
    return locks[key];
}

std::string cache_key(int id, double alpha, int m, int n)
{
    std::ostringstream s;
    s << "exp" << id << "_a" << alpha << "_m" << m << "_n" << n;
    return s.str();
}

bool cache_valid(const fs::path& dump, const fs::path& manifest_path, int id, double alpha, int m, int n)
{
    std::error_code ec;
    if (!fs::exists(dump, ec) || !fs::exists(manifest_path, ec)) {
        return false;
    }
    try {
        const Manifest man = read_manifest(manifest_path);
        return man.experiment == id && man.alpha == alpha && man.m == m && man.n == n &&
               man.bytes == fs::file_size(dump) && man.checksum == file_checksum(dump);
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

Trajectory fine_grid_reference(int id, FracOrder alpha, int ref_m, int ref_n, const ReferenceOptions& options)
{
    if (ref_m < 1 || ref_n < 0 || ref_m > 24 || ref_n > 30) {
        throw ArgumentError("fine_grid_reference: resolution levels out of range");
    }
    const ExperimentData data = experiment_data(id, alpha);
    const std::string key = cache_key(id, alpha.value(), ref_m, ref_n);
    std::lock_guard lock(build_mutex(key));
    fs::path dump;
    fs::path manifest_path;
    if (options.cache_dir) {
        dump = *options.cache_dir / (key + ".traj");
        manifest_path = *options.cache_dir / (key + ".json");
        if (cache_valid(dump, manifest_path, id, alpha.value(), ref_m, ref_n)) {
            return load_trajectory(dump);
        }
    }
    SolverConfig config = options.config;
    config.store_full_history = true;
    Trajectory traj = run(data.u0, data.f, SpaceGrid1D::dyadic(ref_m), TimeGrid::dyadic(ref_n), alpha, config);
    if (options.cache_dir) {
        dump_trajectory(traj, dump);
        Manifest man;
        man.experiment = id;
        man.alpha = alpha.value();
        man.m = ref_m;
        man.n = ref_n;
        man.bytes = fs::file_size(dump);
        man.checksum = file_checksum(dump);
        write_manifest(man, manifest_path);
    }
    return traj;
}

Trajectory restrict_trajectory(const Trajectory& fine, int m, int n)
{
    if (m < 1 || n < 0) {
        throw ArgumentError("restrict_trajectory: invalid levels");
    }
    const SpaceGrid1D coarse_s = SpaceGrid1D::dyadic(m);
    const TimeGrid coarse_t = TimeGrid::dyadic(n, fine.time().final_time());
    if (fine.steps() % coarse_t.steps() != 0 || fine.steps() < coarse_t.steps()) {
        throw ArgumentError("restrict_trajectory: time grids are not nested");
    }
    const std::size_t r = fine.steps() / coarse_t.steps();
    Trajectory out(fine.alpha(), coarse_s, coarse_t);
    const TriDiagMatrix mass = assemble_mass(coarse_s);
    std::vector<double> norms(coarse_t.steps() + 1);
    for (std::size_t j = 0; j <= coarse_t.steps(); ++j) {
        const FemFunction v = restrict_to(fine.value(j * r), fine.space(), coarse_s);
        std::copy(v.begin(), v.end(), out.value(j).begin());
        norms[j] = l2_norm(v, mass);
    }
    out.set_norms(std::move(norms));
    return out;
}

}  // namespace fracwave
