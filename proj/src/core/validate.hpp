#pragma once

// Scan-grid and oracle checks of the analysis: psi lemmas, scalar theorems,
// FEM identities, the fractional-integral adjoint identity and stability.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fracwave {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // empirical constants, worst deviations
};

struct ValidationReport {
    std::string suite;
    std::vector<ValidationCheck> checks;
    double seconds = 0.0;

    [[nodiscard]] bool passed() const;
};

using ValidationLog = std::function<void(const std::string&)>;

/// Suites: psi, ode, fem, adjoint, stability. ArgumentError for other names.
ValidationReport validate_suite(std::string_view suite, const ValidationLog& log = {});

std::vector<std::string> validation_suites();

namespace validation {

// Individual suites, exposed for the tests.
ValidationReport psi_suite(const ValidationLog& log = {});
ValidationReport ode_suite(const ValidationLog& log = {});
ValidationReport fem_suite(const ValidationLog& log = {});
ValidationReport adjoint_suite(const ValidationLog& log = {});
ValidationReport stability_suite(const ValidationLog& log = {});

/// <D_{0+}^{-beta} v, w> and <v, D_{T-}^{-beta} w> for piecewise-constant v, w
/// on a uniform grid of (0, T), each by adaptive quadrature of the pointwise
/// fractional integral.
struct AdjointPair {
    double left;
    double right;
};
AdjointPair adjoint_sides(const std::vector<double>& v, const std::vector<double>& w, double T, double beta);

}  // namespace validation

}  // namespace fracwave
