#pragma once

// Convergence studies of the four model experiments: run U^{m,n} against a
// fine reference, tabulate errors and observed orders.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/dg_solver.hpp"

namespace fracwave {

enum class Study { temporal, spatial };

enum class NormKind {
    sup,         // sup over (0, T] of the L2 difference
    nodal,       // max over the coarse time nodes t_j (left limits)
    weighted,    // max_j (t_j)^beta ||v(t_j-)||
    final_time,  // ||v(T-)||
};

struct NormSpec {
    NormKind kind = NormKind::sup;
    double beta = 0.0;            // weighted norm exponent
    bool beta_plus_alpha = false;  // exponent is beta + alpha

    [[nodiscard]] double effective_beta(double alpha) const { return beta + (beta_plus_alpha ? alpha : 0.0); }
    [[nodiscard]] std::string describe() const;
};

struct ExperimentSpec {
    int id = 1;
    Study study = Study::temporal;
    std::vector<double> alphas;
    std::vector<int> m_list;
    std::vector<int> n_list;
    int ref_m = 9;
    int ref_n = 12;
    NormSpec norm;

    /// The study layout of the experiment at the reduced default scale or at
    /// the published scale (h = 2^-11, tau = 2^-16 reference).
    static ExperimentSpec preset(int id, Study study, bool paper_scale = false);

    /// ArgumentError when levels are not below the reference or lists are empty.
    void validate() const;
};

struct ErrorRow {
    double alpha;
    int m;
    int n;
    std::optional<double> beta;
    double error;
    std::optional<double> order;
};

struct StabilityRecord {
    double alpha;
    int m;
    int n;
    double max_norm;
    double bound;
    [[nodiscard]] bool ok() const { return max_norm <= bound + 1e-10; }
};

struct ErrorReport {
    ExperimentSpec spec;
    std::vector<ErrorRow> rows;
    std::vector<StabilityRecord> stability;
    double seconds = 0.0;

    /// Rows of one alpha, in refinement order.
    [[nodiscard]] std::vector<ErrorRow> rows_for(double alpha) const;
};

struct RunOptions {
    bool allow_paper_scale = false;
    std::optional<std::filesystem::path> cache_dir;
    unsigned workers = 0;  // 0: hardware concurrency
    HistoryMode history = HistoryMode::fft_blocked;
};

/// Bytes held by the largest trajectory of the study (the reference).
std::size_t estimated_bytes(const ExperimentSpec& spec);

/// Largest reference resolution accepted without `allow_paper_scale`.
constexpr int kReducedMaxM = 10;
constexpr int kReducedMaxN = 14;

/// Builds (or loads) the references, runs every (alpha, m, n) cell, and checks
/// the stability bound on every run. Throws ResourceError for resolutions
/// beyond the reduced scale unless allowed in `options`.
ErrorReport run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

/// alpha,m,n,beta,error,order
std::string to_csv(const std::vector<ErrorReport>& reports);
/// One table per report, rows by refinement level and one error/order column pair per alpha.
std::string to_markdown(const std::vector<ErrorReport>& reports);

/// Published error tables for the full-scale layout of (id, study).
struct PublishedTable {
    int id;
    Study study;
    std::vector<double> alphas;
    std::vector<int> levels;                 // n (temporal) or m (spatial)
    std::vector<std::vector<double>> errors;  // [alpha][level]
    std::vector<std::vector<double>> orders;  // [alpha][level], NaN for the first row
};

const PublishedTable& published_table(int id, Study study);

struct CellComparison {
    double alpha;
    int level;
    double ours;
    double published;
    std::optional<double> our_order;
    std::optional<double> published_order;
    bool error_match;  // equal when both are rounded to two significant digits
    bool order_match;  // within 0.05
};

/// Cell-by-cell comparison of a report against the published table.
std::vector<CellComparison> compare_with_published(const ErrorReport& report);

}  // namespace fracwave
