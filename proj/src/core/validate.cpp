#include "core/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "core/contour.hpp"
#include "core/dg_solver.hpp"
#include "core/fem1d.hpp"
#include "core/kernel.hpp"
#include "core/quadrature.hpp"
#include "core/reference.hpp"
#include "core/scalar_ode.hpp"
#include "core/special.hpp"

namespace fracwave {

using cplx = std::complex<double>;
using std::numbers::pi;

bool ValidationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

namespace {

const double kAlphas[] = {0.2, 0.5, 0.8};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

class Recorder {
public:
    Recorder(std::string suite, const ValidationLog& log) : log_(log), start_(std::chrono::steady_clock::now())
    {
        report_.suite = std::move(suite);
    }

    void check(std::string name, bool ok, std::string detail)
    {
        if (log_) {
            log_((ok ? "ok    " : "FAIL  ") + name + ": " + detail);
        }
        report_.checks.push_back({std::move(name), ok, std::move(detail)});
    }

    ValidationReport finish()
    {
        report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    const ValidationLog& log_;
    std::chrono::steady_clock::time_point start_;
    ValidationReport report_;
};

std::vector<double> logspace(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    }
    return out;
}

std::string alpha_tag(double a)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "alpha=%.1f", a);
    return buf;
}

}  // namespace

namespace validation {

ValidationReport psi_suite(const ValidationLog& log)
{
    Recorder rec("psi", log);
    const auto mus = logspace(1e-3, 1e3, 25);
    for (double a : kAlphas) {
        const FracOrder alpha{a};
        const Psi psi{alpha};
        const std::string tag = alpha_tag(a);

        double branch = 0.0;
        double conj = 0.0;
        for (int i = 0; i <= 10; ++i) {
            for (int j = -20; j <= 20; ++j) {
                const cplx z(0.5 + 0.1 * i, pi * j / 20.0);
                const cplx e = psi.exponential_series(z);
                branch = std::max(branch, std::abs(e - psi.bilateral_series(z)) / std::max(1.0, std::abs(e)));
                conj = std::max(conj, std::abs(psi(std::conj(z)) - std::conj(psi(z))));
            }
        }
        rec.check("branch consistency " + tag, branch <= 1e-12, "max relative gap " + sci(branch));
        rec.check("conjugate symmetry " + tag, conj <= 1e-14, "max gap " + sci(conj));

        // psi(r e^{i th}) r^{1+a} e^{-i(1+a)th} -> 1
        double singular = 0.0;
        for (double th : {-2.5, -1.0, 0.0, 1.0, 2.5}) {
            const cplx z = std::polar(1e-6, th);
            singular = std::max(singular, std::abs(psi(z) * std::pow(z, 1.0 + a) - 1.0));
        }
        rec.check("small-argument limit " + tag, singular <= 1e-4, "max |psi(z) z^(1+a) - 1| at |z|=1e-6: " + sci(singular));

        // |1 + mu psi(iy)| / (1 + mu y^{-1-a}) on y in (0, pi], and on a grid reaching 100x closer to 0
        auto growth_min = [&](double y_lo, int ny) {
            double low = 1e300;
            for (double mu : mus) {
                for (int i = 1; i <= ny; ++i) {
                    const double y = y_lo + (pi - y_lo) * i / ny;
                    const double r = std::abs(1.0 + mu * psi(cplx(0.0, y))) / (1.0 + mu * std::pow(y, -1.0 - a));
                    low = std::min(low, r);
                }
            }
            return low;
        };
        const double c_grid = growth_min(0.0, 200);
        double c_near0 = 1e300;
        for (double mu : mus) {
            for (double y : logspace(pi / 20000.0, pi / 200.0, 60)) {
                const double r = std::abs(1.0 + mu * psi(cplx(0.0, y))) / (1.0 + mu * std::pow(y, -1.0 - a));
                c_near0 = std::min(c_near0, r);
            }
        }
        rec.check("psi-growth lower bound " + tag, c_grid > 0.0 && c_near0 >= 0.9 * c_grid,
                  "min ratio " + sci(c_grid) + " on the scan grid, " + sci(c_near0) + " for y in [pi/2e4, pi/200]");

        // 1 + mu psi(z) != 0 on the strip 0 < Re z <= delta and on the sector pi/2 <= |arg z| <= theta
        const double theta = ContourSpec::for_order(alpha).theta;
        double zero_min = 1e300;
        for (double mu : mus) {
            for (double x : logspace(1e-4, 0.5, 20)) {
                for (int j = -40; j <= 40; ++j) {
                    if (j == 0) {
                        continue;
                    }
                    zero_min = std::min(zero_min, std::abs(1.0 + mu * psi(cplx(x, pi * j / 40.0))));
                }
                zero_min = std::min(zero_min, std::abs(1.0 + mu * psi(cplx(x, 0.0))));
            }
            for (int s = 0; s <= 8; ++s) {
                const double arg = 0.5 * pi + (theta - 0.5 * pi) * s / 8.0;
                const double rmax = pi / std::sin(arg);
                for (double r : logspace(1e-4, rmax, 60)) {
                    zero_min = std::min(zero_min, std::abs(1.0 + mu * psi(std::polar(r, arg))));
                    zero_min = std::min(zero_min, std::abs(1.0 + mu * psi(std::polar(r, -arg))));
                }
            }
        }
        rec.check("1+mu psi nonvanishing " + tag, zero_min > 0.0, "min |1 + mu psi(z)| " + sci(zero_min));

        // |g'(y)| <= C mu y^{-2-a} / (1 + mu y^{-1-a})^2 with g = 1/(1 + mu psi(iy))
        auto g_ratio = [&](double mu, double y) {
            auto g = [&](double s) { return 1.0 / (1.0 + mu * psi(cplx(0.0, s))); };
            const double d = 1e-5 * y;
            const double gp = std::abs((g(y + d) - g(y - d)) / (2.0 * d));
            const double q = 1.0 + mu * std::pow(y, -1.0 - a);
            return gp * q * q / (mu * std::pow(y, -2.0 - a));
        };
        double c_g = 0.0;
        double c_g0 = 0.0;
        for (double mu : mus) {
            for (int i = 1; i <= 200; ++i) {
                c_g = std::max(c_g, g_ratio(mu, std::min(pi * i / 200.0, pi - 1e-4)));
            }
            for (double y : logspace(pi / 20000.0, pi / 200.0, 60)) {
                c_g0 = std::max(c_g0, g_ratio(mu, y));
            }
        }
        rec.check("g' bound " + tag, std::isfinite(c_g) && c_g0 <= 1.1 * c_g,
                  "empirical C " + sci(c_g) + " on the scan grid, " + sci(c_g0) + " for y in [pi/2e4, pi/200]");
    }
    return rec.finish();
}

ValidationReport ode_suite(const ValidationLog& log)
{
    Recorder rec("ode", log);
    using namespace ode;
    const double mus[] = {1e-2, 1.0, 1e2};

    {
        const ScalarProblem p(FracOrder{0.5}, 0.0, 1.0 / 1024.0, 1.7);
        const auto h = step_hom(p, 256);
        const auto f = step_forced(p, 256);
        bool exact = true;
        for (std::size_t k = 0; k <= 256; ++k) {
            exact = exact && h.y[k] == 1.7 && f.y[k] == static_cast<double>(k) * p.tau;
        }
        const ContourSpec spec = ContourSpec::for_order(p.alpha);
        const auto eh = error_profile(p, 256, Mode::homogeneous, spec);
        const auto ef = error_profile(p, 256, Mode::forced, spec);
        const double worst = std::max(*std::max_element(eh.begin(), eh.end()), *std::max_element(ef.begin(), ef.end()));
        rec.check("mu=0 exact zeros", exact && worst == 0.0 && verify_jump_decay(p, 256).sup_k_ge2 == 0.0,
                  "Y_k = xi0, Y_k = k tau, errors " + sci(worst));
    }

    for (double a : kAlphas) {
        const FracOrder alpha{a};
        const ContourSpec spec = ContourSpec::for_order(alpha);
        const std::string tag = alpha_tag(a);

        double rec_gap = 0.0;
        for (double mu : mus) {
            const auto p = ScalarProblem::from_mu(alpha, mu);
            const auto h = step_hom(p, 100);
            const auto f = step_forced(p, 100);
            for (std::size_t k : {1, 2, 10, 100}) {
                rec_gap = std::max(rec_gap, std::abs(contour_Yk_hom(mu, alpha, k, 1.0, spec) - h.y[k]));
                rec_gap = std::max(rec_gap, std::abs(contour_Yk_forced(mu, alpha, k, 1.0, spec) - f.y[k]));
            }
        }
        rec.check("recurrence vs contour " + tag, rec_gap <= 1e-9, "max gap " + sci(rec_gap) + " at k in {1,2,10,100}");

        double ml_gap = 0.0;
        for (double z : logspace(1e-3, 100.0, 25)) {
            const double t = std::pow(z, 1.0 / (1.0 + a));
            const double ml = mittag_leffler(1.0 + a, 1.0, cplx(-z, 0.0)).real();
            ml_gap = std::max(ml_gap, std::abs(contour_xi_hom(1.0, alpha, t, 1.0, spec) - ml));
        }
        rec.check("contour xi vs Mittag-Leffler " + tag, ml_gap <= 1e-9, "max gap " + sci(ml_gap) + " for lambda t^(1+a) <= 100");

        constexpr std::size_t K = std::size_t{1} << 14;
        for (double mu : mus) {
            const auto p = ScalarProblem::from_mu(alpha, mu);
            std::ostringstream name;
            name << "scalar theorems " << tag << " mu=" << mu;

            // the Mittag-Leffler route against the contour at dyadic k
            double route_gap = 0.0;
            for (std::size_t k = 1; k <= K; k *= 2) {
                const double t = static_cast<double>(k);
                for (Mode m : {Mode::homogeneous, Mode::forced}) {
                    const double c = exact_xi(p, t, m, ExactSource::contour, spec);
                    const double e = exact_xi(p, t, m, ExactSource::mittag_leffler, spec);
                    route_gap = std::max(route_gap, std::abs(c - e) / std::max(1.0, std::abs(c)));
                }
            }

            const auto y = step_hom(p, K);
            std::vector<double> jumps(K, 0.0);
            for (std::size_t k = 1; k < K; ++k) {
                jumps[k] = static_cast<double>(k) * std::abs(y.y[k + 1] - y.y[k]);
            }
            const auto jump_sup = prefix_sup(jumps);
            const auto hom_sup = prefix_sup(error_profile(p, K, Mode::homogeneous, spec, ExactSource::mittag_leffler));
            const auto forced_sup = prefix_sup(error_profile(p, K, Mode::forced, spec, ExactSource::mittag_leffler));

            double growth = 0.0;
            std::ostringstream detail;
            detail << "sup at K=2^8..2^14 (jump / hom / forced):";
            for (int e = 8; e <= 14; ++e) {
                const std::size_t k = std::size_t{1} << e;
                const double vals[] = {jump_sup[k - 1], hom_sup[k], forced_sup[k]};
                if (e > 8) {
                    const std::size_t kp = k / 2;
                    const double prev[] = {jump_sup[kp - 1], hom_sup[kp], forced_sup[kp]};
                    for (int i = 0; i < 3; ++i) {
                        if (prev[i] > 0.0) {
                            growth = std::max(growth, vals[i] / prev[i] - 1.0);
                        }
                    }
                }
                if (e % 2 == 0) {
                    detail << ' ' << sci(vals[0]) << '/' << sci(vals[1]) << '/' << sci(vals[2]);
                }
            }
            detail << "; worst growth per doubling " << sci(growth) << "; Mittag-Leffler vs contour " << sci(route_gap);
            rec.check(name.str(), growth < 0.10 && route_gap <= 1e-9, detail.str());
        }
    }
    return rec.finish();
}

ValidationReport fem_suite(const ValidationLog& log)
{
    Recorder rec("fem", log);

    double eig = 0.0;
    double orth = 0.0;
    for (std::size_t M = 2; M <= 512; M *= 2) {
        const SpaceGrid1D g(M);
        const auto pairs = discrete_eigenpairs(g);
        const TriDiagMatrix mass = assemble_mass(g);
        for (std::size_t n = 0; n < pairs.size(); ++n) {
            const double cf = discrete_eigenvalue_closed_form(g, static_cast<int>(n + 1));
            eig = std::max(eig, std::abs(pairs[n].lambda - cf) / cf);
        }
        if (M <= 64) {
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                for (std::size_t j = 0; j < pairs.size(); ++j) {
                    orth = std::max(orth, std::abs(mass.bilinear(pairs[i].phi, pairs[j].phi) - (i == j ? 1.0 : 0.0)));
                }
            }
        }
    }
    rec.check("eigenvalues vs closed form", eig <= 1e-10, "max relative gap " + sci(eig) + " for M <= 512");
    rec.check("eigenvectors M-orthonormal", orth <= 1e-12, "max gap " + sci(orth) + " for M <= 64");

    bool spd = true;
    for (std::size_t M = 2; M <= 1024; M *= 2) {
        try {
            const SpaceGrid1D g(M);
            TriDiagFactor fm(assemble_mass(g));
            TriDiagFactor fa(assemble_stiffness(g));
        } catch (const std::exception&) {
            spd = false;
        }
    }
    rec.check("mass and stiffness SPD", spd, "LDL^T pivots positive for M = 2..1024");

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    {
        const SpaceGrid1D g(32);
        std::vector<double> v(g.interior());
        for (auto& x : v) {
            x = unif(rng);
        }
        auto interp = [v, g](double x) {
            const double s = x / g.h();
            const auto i = std::min<std::size_t>(static_cast<std::size_t>(s), g.cells() - 1);
            const double th = s - static_cast<double>(i);
            const double left = i == 0 ? 0.0 : v[i - 1];
            const double right = i + 1 == g.cells() ? 0.0 : v[i];
            return (1.0 - th) * left + th * right;
        };
        const double norm = l2_norm(v, assemble_mass(g));
        const auto p = l2_project(SpatialFunctionSpec::smooth(interp, "hat combination", norm), g);
        double gap = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            gap = std::max(gap, std::abs(p[i] - v[i]));
        }
        rec.check("projection idempotence", gap <= 1e-12, "max coefficient gap " + sci(gap));
    }

    {
        const auto f = SpatialFunctionSpec::smooth([](double x) { return std::sin(pi * x); }, "sin(pi x)", std::sqrt(0.5));
        double prev = 0.0;
        double order = 0.0;
        for (std::size_t M = 16; M <= 256; M *= 2) {
            const SpaceGrid1D g(M);
            const double e = l2_distance_smooth(f, l2_project(f, g), g);
            if (prev > 0.0) {
                order = std::log2(prev / e);
            }
            prev = e;
        }
        rec.check("projection error order", std::abs(order - 2.0) <= 0.05, "observed order " + sci(order));
    }

    {
        // <-Delta_h v, w> = <grad v, grad w> = <v, -Delta_h w>, -Delta_h = M^{-1} A
        const SpaceGrid1D g(64);
        const TriDiagMatrix mass = assemble_mass(g);
        const TriDiagMatrix stiff = assemble_stiffness(g);
        const TriDiagFactor mf(mass);
        double gap = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> v(g.interior());
            std::vector<double> w(g.interior());
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] = unif(rng);
                w[i] = unif(rng);
            }
            const auto lv = mf.solve(stiff.apply(v));
            const auto lw = mf.solve(stiff.apply(w));
            const double grad = stiff.bilinear(v, w);
            const double scale = std::max(1.0, std::abs(grad));
            gap = std::max(gap, std::abs(mass.bilinear(lv, w) - grad) / scale);
            gap = std::max(gap, std::abs(mass.bilinear(v, lw) - grad) / scale);
        }
        rec.check("discrete Laplacian adjoint identity", gap <= 1e-12, "max relative gap " + sci(gap));
    }

    {
        double gap = 0.0;
        for (double beta : {0.2, 0.5, 0.8}) {
            for (int trial = 0; trial < 2; ++trial) {
                std::vector<double> v(8);
                std::vector<double> w(8);
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] = unif(rng);
                    w[i] = unif(rng);
                }
                const auto s = adjoint_sides(v, w, 1.0, beta);
                gap = std::max(gap, std::abs(s.left - s.right));
            }
        }
        rec.check("fractional integral adjoint identity", gap <= 1e-12, "max gap " + sci(gap));
    }

    {
        // first load entry of x^p: int_0^h x^p (x/h) dx + int_h^{2h} x^p (2 - x/h) dx
        const double p = -0.49;
        const SpaceGrid1D g(8);
        const double h = g.h();
        const double hp = std::pow(h, p + 1.0);
        const double expected =
            hp / (p + 2.0) + 2.0 * (std::pow(2.0, p + 1.0) - 1.0) * hp / (p + 1.0) - (std::pow(2.0, p + 2.0) - 1.0) * hp / (p + 2.0);
        const double got = load_vector(SpatialFunctionSpec::power(p), g)[0];
        const double gap = std::abs(got - expected) / expected;
        rec.check("singular load moment", gap <= 1e-13, "relative gap " + sci(gap));
    }
    return rec.finish();
}

AdjointPair adjoint_sides(const std::vector<double>& v, const std::vector<double>& w, double T, double beta)
{
    if (v.size() != w.size() || v.empty()) {
        throw ArgumentError("adjoint_sides: v and w need the same nonzero slab count");
    }
    const TimeGrid grid(T, v.size());
    const double tau = grid.tau();
    // t - a = tau s^q near the left end (b - t near the right end) with q = 2/beta:
    // (t - a)^beta becomes s^2 and the Jacobian s^(q-1) is at least C^1
    const double q = 2.0 / beta;
    AdjointPair out{0.0, 0.0};
    for (std::size_t j = 1; j <= grid.steps(); ++j) {
        const double a = grid.t(j - 1);
        const double b = grid.t(j);
        auto left = [&](double s) {
            const double t = std::min(b, a + tau * std::pow(s, q));
            const double value = t > 0.0 ? rl_integral_pc_left(v, grid, beta, t) : 0.0;
            return value * tau * q * std::pow(s, q - 1.0);
        };
        auto right = [&](double s) {
            const double t = std::max(a, b - tau * std::pow(s, q));
            const double value = t < T ? rl_integral_pc_right(w, grid, beta, t) : 0.0;
            return value * tau * q * std::pow(s, q - 1.0);
        };
        out.left += w[j - 1] * quad::adaptive(left, 0.0, 1.0, 1e-15).real();
        out.right += v[j - 1] * quad::adaptive(right, 0.0, 1.0, 1e-15).real();
    }
    return out;
}

ValidationReport adjoint_suite(const ValidationLog& log)
{
    Recorder rec("adjoint", log);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        double gap = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            const std::size_t J = 4 + 4 * static_cast<std::size_t>(trial);
            std::vector<double> v(J);
            std::vector<double> w(J);
            for (std::size_t i = 0; i < J; ++i) {
                v[i] = unif(rng);
                w[i] = unif(rng);
            }
            const auto s = adjoint_sides(v, w, 1.0 + 0.5 * trial, beta);
            gap = std::max(gap, std::abs(s.left - s.right) / std::max(1.0, std::abs(s.left)));
        }
        char name[48];
        std::snprintf(name, sizeof name, "adjoint identity beta=%.1f", beta);
        rec.check(name, gap <= 1e-12, "max relative gap " + sci(gap) + " over 4 random pairs");
    }
    {
        // v = w = 1 on (0, T): both sides equal T^{1+beta} / Gamma(2+beta)
        const double beta = 0.4;
        const auto s = adjoint_sides(std::vector<double>(5, 1.0), std::vector<double>(5, 1.0), 2.0, beta);
        const double exact = std::pow(2.0, 1.0 + beta) / gamma_fn(2.0 + beta);
        const double gap = std::max(std::abs(s.left - exact), std::abs(s.right - exact));
        rec.check("constant pair closed form", gap <= 1e-12, "gap " + sci(gap));
    }
    return rec.finish();
}

ValidationReport stability_suite(const ValidationLog& log)
{
    Recorder rec("stability", log);
    const double T = 1.0;
    for (int id = 1; id <= 4; ++id) {
        double worst = 0.0;
        bool ok = true;
        for (double a : kAlphas) {
            const FracOrder alpha{a};
            const ExperimentData data = experiment_data(id, alpha);
            const double bound = stability_bound(data.u0, data.f, T);
            for (auto [m, n] : {std::pair{4, 6}, std::pair{6, 8}, std::pair{7, 5}}) {
                const Trajectory traj = run(data.u0, data.f, SpaceGrid1D::dyadic(m), TimeGrid::dyadic(n, T), alpha);
                const double top = *std::max_element(traj.norms().begin(), traj.norms().end());
                ok = ok && top <= bound + 1e-10;
                worst = std::max(worst, top / bound);
            }
        }
        rec.check("stability bound, experiment " + std::to_string(id), ok, "max ||U_j|| / bound " + sci(worst));
    }
    {
        double worst = 0.0;
        bool ok = true;
        const SpatialFunctionSpec u0 = SpatialFunctionSpec::sine_mode(3);
        const ForcingSpec f = ForcingSpec::separable(SpatialFunctionSpec::power(-0.3, -2.0), -0.5);
        for (double a : kAlphas) {
            const double bound = stability_bound(u0, f, T);
            const Trajectory traj = run(u0, f, SpaceGrid1D::dyadic(6), TimeGrid::dyadic(9, T), FracOrder{a});
            const double top = *std::max_element(traj.norms().begin(), traj.norms().end());
            ok = ok && top <= bound + 1e-10;
            worst = std::max(worst, top / bound);
        }
        rec.check("stability bound, mixed data", ok, "max ||U_j|| / bound " + sci(worst));
    }
    return rec.finish();
}

}  // namespace validation

std::vector<std::string> validation_suites()
{
    return {"psi", "ode", "fem", "adjoint", "stability"};
}

ValidationReport validate_suite(std::string_view suite, const ValidationLog& log)
{
    if (suite == "psi") {
        return validation::psi_suite(log);
    }
    if (suite == "ode") {
        return validation::ode_suite(log);
    }
    if (suite == "fem") {
        return validation::fem_suite(log);
    }
    if (suite == "adjoint") {
        return validation::adjoint_suite(log);
    }
    if (suite == "stability") {
        return validation::stability_suite(log);
    }
    throw ArgumentError("unknown validation suite '" + std::string(suite) + "'");
}

}  // namespace fracwave
