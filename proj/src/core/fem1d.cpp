#include "core/fem1d.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Eigenvalues>

#include "core/quadrature.hpp"

namespace fracwave {

using std::numbers::pi;

void TriDiagMatrix::apply(std::span<const double> x, std::span<double> y) const
{
    const std::size_t n = size();
    if (x.size() != n || y.size() != n) {
        throw ArgumentError("tridiagonal apply: size mismatch");
    }
    if (n == 0) {
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) {
            s += off[i - 1] * x[i - 1];
        }
        if (i + 1 < n) {
            s += off[i] * x[i + 1];
        }
        y[i] = s;
    }
}

std::vector<double> TriDiagMatrix::apply(std::span<const double> x) const
{
    std::vector<double> y(size());
    apply(x, y);
    return y;
}

double TriDiagMatrix::bilinear(std::span<const double> x, std::span<const double> y) const
{
    const std::vector<double> ty = apply(y);
    if (x.size() != ty.size()) {
        throw ArgumentError("tridiagonal bilinear form: size mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < ty.size(); ++i) {
        s += x[i] * ty[i];
    }
    return s;
}

TriDiagMatrix assemble_mass(const SpaceGrid1D& grid)
{
    const std::size_t n = grid.interior();
    const double h = grid.h();
    return {std::vector<double>(n, 4.0 * h / 6.0), std::vector<double>(n - 1, h / 6.0)};
}

TriDiagMatrix assemble_stiffness(const SpaceGrid1D& grid)
{
    const std::size_t n = grid.interior();
    const double h = grid.h();
    return {std::vector<double>(n, 2.0 / h), std::vector<double>(n - 1, -1.0 / h)};
}

TriDiagFactor::TriDiagFactor(const TriDiagMatrix& T)
{
    const std::size_t n = T.size();
    if (n == 0 || T.off.size() + 1 != n) {
        throw ArgumentError("tridiagonal factorization: inconsistent sizes");
    }
    d_.resize(n);
    l_.resize(n - 1);
    d_[0] = T.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            l_[i - 1] = T.off[i - 1] / d_[i - 1];
            d_[i] = T.diag[i] - l_[i - 1] * T.off[i - 1];
        }
        if (!(d_[i] > 0.0) || !std::isfinite(d_[i])) {
            throw NumericError("tridiagonal factorization: matrix is not positive definite");
        }
    }
}

void TriDiagFactor::solve_in_place(std::span<double> x) const
{
    const std::size_t n = d_.size();
    if (x.size() != n) {
        throw ArgumentError("tridiagonal solve: size mismatch");
    }
    for (std::size_t i = 1; i < n; ++i) {
        x[i] -= l_[i - 1] * x[i - 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        x[i] /= d_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= l_[i] * x[i + 1];
    }
}

std::vector<double> TriDiagFactor::solve(std::span<const double> rhs) const
{
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

std::vector<double> solve_spd_tridiag(const TriDiagMatrix& T, std::span<const double> rhs)
{
    return TriDiagFactor(T).solve(rhs);
}

// ---- spatial data ----

SpatialFunctionSpec SpatialFunctionSpec::zero()
{
    return {};
}

SpatialFunctionSpec SpatialFunctionSpec::power(double p, double scale)
{
    if (!(p > -0.5)) {
        throw DomainError("x^p is in L2(0,1) only for p > -1/2");
    }
    SpatialFunctionSpec s;
    s.kind_ = Kind::power;
    s.p_ = p;
    s.scale_ = scale;
    s.norm_ = std::abs(scale) / std::sqrt(2.0 * p + 1.0);
    s.label_ = "pow:" + std::to_string(p);
    return s;
}

SpatialFunctionSpec SpatialFunctionSpec::smooth(std::function<double(double)> f, std::string label, double l2_norm)
{
    if (!f) {
        throw ArgumentError("smooth spatial data needs a callable");
    }
    SpatialFunctionSpec s;
    s.kind_ = Kind::smooth;
    s.scale_ = 1.0;
    s.fn_ = std::move(f);
    s.label_ = std::move(label);
    if (l2_norm >= 0.0) {
        s.norm_ = l2_norm;
    } else {
        const auto& g = s.fn_;
        auto sq = [&g](double x) { return g(x) * g(x); };
        s.norm_ = std::sqrt(quad::adaptive(sq, 0.0, 1.0, 1e-15).real());
    }
    return s;
}

SpatialFunctionSpec SpatialFunctionSpec::sine_mode(int n)
{
    if (n < 1) {
        throw ArgumentError("sine mode index must be positive");
    }
    const double k = n * pi;
    return smooth([k](double x) { return std::numbers::sqrt2 * std::sin(k * x); }, "sin:" + std::to_string(n), 1.0);
}

double SpatialFunctionSpec::operator()(double x) const
{
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::power:
        return scale_ * std::pow(x, p_);
    case Kind::smooth:
        return fn_(x);
    }
    return 0.0;
}

double SpatialFunctionSpec::l2_norm() const
{
    return norm_;
}

// ---- loads and projection ----

std::vector<double> load_vector(const SpatialFunctionSpec& f, const SpaceGrid1D& grid)
{
    const std::size_t M = grid.cells();
    const double h = grid.h();
    std::vector<double> load(grid.interior(), 0.0);
    if (f.kind() == SpatialFunctionSpec::Kind::zero) {
        return load;
    }
    const quad::GaussRule& rule = f.kind() == SpatialFunctionSpec::Kind::power ? quad::gauss20() : quad::gauss5();
    for (std::size_t e = 0; e < M; ++e) {
        const double x0 = grid.node(e);
        // contributions to the hats at the left (node e) and right (node e+1) ends
        double left = 0.0;
        double right = 0.0;
        if (e == 0 && f.kind() == SpatialFunctionSpec::Kind::power) {
            // integral_0^h x^p (x/h) dx
            right = f.scale() * std::pow(h, f.exponent() + 1.0) / (f.exponent() + 2.0);
        } else {
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double s = 0.5 * (1.0 + rule.nodes[q]);  // local coordinate in (0, 1)
                const double v = f(x0 + s * h) * 0.5 * rule.weights[q] * h;
                left += v * (1.0 - s);
                right += v * s;
            }
        }
        if (e >= 1) {
            load[e - 1] += left;
        }
        if (e + 1 < M) {
            load[e] += right;
        }
    }
    return load;
}

FemFunction l2_project(const SpatialFunctionSpec& f, const SpaceGrid1D& grid)
{
    const std::vector<double> load = load_vector(f, grid);
    return solve_spd_tridiag(assemble_mass(grid), load);
}

// ---- eigenpairs ----

std::vector<EigenPair> discrete_eigenpairs(const SpaceGrid1D& grid)
{
    // With T = tridiag(-1, 2, -1): A = T/h and M = (h/6)(6 I - T), so both share
    // T's eigenvectors and lambda = 6 t / (h^2 (6 - t)) for each eigenvalue t of T.
    const Eigen::Index n = static_cast<Eigen::Index>(grid.interior());
    const double h = grid.h();
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 2.0);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, -1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericError("discrete_eigenpairs: tridiagonal eigensolver failed");
    }
    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        const double t = solver.eigenvalues()(k);
        const double mass = h * (6.0 - t) / 6.0;  // v^T M v for unit v
        if (!(t > 0.0) || !(mass > 0.0)) {
            throw NumericError("discrete_eigenpairs: non-positive eigenvalue");
        }
        EigenPair pair;
        pair.lambda = 6.0 * t / (h * h * (6.0 - t));
        pair.phi.resize(static_cast<std::size_t>(n));
        const double scale = 1.0 / std::sqrt(mass);
        // fix the sign so that the first nonzero entry is positive
        double sign = solver.eigenvectors()(0, k) < 0.0 ? -1.0 : 1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            pair.phi[static_cast<std::size_t>(i)] = sign * scale * solver.eigenvectors()(i, k);
        }
        out.push_back(std::move(pair));
    }
    return out;
}

double discrete_eigenvalue_closed_form(const SpaceGrid1D& grid, int n)
{
    const double h = grid.h();
    const double c = std::cos(n * pi * h);
    // 1 - cos x = 2 sin^2(x/2) keeps the low modes accurate
    const double s = std::sin(0.5 * n * pi * h);
    return 6.0 / (h * h) * (2.0 * s * s) / (2.0 + c);
}

double l2_norm(std::span<const double> v, const TriDiagMatrix& mass)
{
    return std::sqrt(std::max(0.0, mass.bilinear(v, v)));
}

double l2_distance_smooth(const SpatialFunctionSpec& f, std::span<const double> v, const SpaceGrid1D& grid, int split)
{
    if (v.size() != grid.interior()) {
        throw ArgumentError("l2_distance_smooth: size mismatch");
    }
    if (split < 1) {
        throw ArgumentError("l2_distance_smooth: split must be positive");
    }
    const quad::GaussRule& rule = quad::gauss5();
    const std::size_t M = grid.cells();
    const double h = grid.h();
    double sum = 0.0;
    for (std::size_t e = 0; e < M; ++e) {
        const double vl = e == 0 ? 0.0 : v[e - 1];
        const double vr = e + 1 == M ? 0.0 : v[e];
        for (int piece = 0; piece < split; ++piece) {
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double s = (piece + 0.5 * (1.0 + rule.nodes[q])) / split;
                const double x = grid.node(e) + s * h;
                const double d = f(x) - (vl * (1.0 - s) + vr * s);
                sum += 0.5 * rule.weights[q] * h / split * d * d;
            }
        }
    }
    return std::sqrt(sum);
}

namespace {

std::size_t refinement_ratio(const SpaceGrid1D& coarse, const SpaceGrid1D& fine)
{
    if (fine.cells() < coarse.cells() || fine.cells() % coarse.cells() != 0) {
        throw ArgumentError("grids are not nested");
    }
    return fine.cells() / coarse.cells();
}

}  // namespace

FemFunction prolongate(std::span<const double> coarse_values, const SpaceGrid1D& coarse, const SpaceGrid1D& fine)
{
    const std::size_t r = refinement_ratio(coarse, fine);
    if (coarse_values.size() != coarse.interior()) {
        throw ArgumentError("prolongate: size mismatch");
    }
    FemFunction out(fine.interior());
    const std::size_t Mc = coarse.cells();
    for (std::size_t i = 1; i < fine.cells(); ++i) {
        const std::size_t e = i / r;
        const double s = static_cast<double>(i % r) / static_cast<double>(r);
        const double vl = e == 0 ? 0.0 : coarse_values[e - 1];
        const double vr = e + 1 >= Mc ? 0.0 : coarse_values[e];
        out[i - 1] = s == 0.0 ? vl : vl * (1.0 - s) + vr * s;
    }
    return out;
}

FemFunction restrict_to(std::span<const double> fine_values, const SpaceGrid1D& fine, const SpaceGrid1D& coarse)
{
    const std::size_t r = refinement_ratio(coarse, fine);
    if (fine_values.size() != fine.interior()) {
        throw ArgumentError("restrict_to: size mismatch");
    }
    FemFunction out(coarse.interior());
    for (std::size_t i = 1; i < coarse.cells(); ++i) {
        out[i - 1] = fine_values[i * r - 1];
    }
    return out;
}

}  // namespace fracwave
