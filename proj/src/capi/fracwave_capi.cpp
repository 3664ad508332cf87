#include "fracwave/fracwave.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <filesystem>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "core/data_spec.hpp"
#include "core/dg_solver.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/kernel.hpp"
#include "core/trajectory_io.hpp"
#include "core/validate.hpp"

struct fw_trajectory {
    fracwave::Trajectory traj;
};

struct fw_experiment {
    fracwave::ExperimentSpec spec;
};

struct fw_report {
    std::vector<fracwave::ErrorReport> reports;
};

namespace {

thread_local std::string last_error;

// Trajectories above this size are refused by fw_solve.
constexpr std::size_t kSolveByteLimit = std::size_t{2} << 30;

fw_status fail(fw_status status, const std::string& message)
{
    last_error = message;
    return status;
}

template <class Fn>
fw_status guarded(Fn&& fn)
{
    try {
        fn();
        return FW_OK;
    } catch (const fracwave::ArgumentError& e) {
        return fail(FW_ERR_ARGUMENT, e.what());
    } catch (const fracwave::DomainError& e) {
        return fail(FW_ERR_DOMAIN, e.what());
    } catch (const fracwave::NumericError& e) {
        return fail(FW_ERR_NUMERIC, e.what());
    } catch (const fracwave::ResourceError& e) {
        return fail(FW_ERR_RESOURCE, e.what());
    } catch (const fracwave::IoError& e) {
        return fail(FW_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FW_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(FW_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FW_ERR_INTERNAL, "unknown error");
    }
}

fracwave::HistoryMode history_mode(fw_history_mode mode)
{
    switch (mode) {
    case FW_HISTORY_NAIVE:
        return fracwave::HistoryMode::naive;
    case FW_HISTORY_FFT:
        return fracwave::HistoryMode::fft_blocked;
    }
    throw fracwave::ArgumentError("unknown history mode");
}

void require(bool ok, const char* message)
{
    if (!ok) {
        throw fracwave::ArgumentError(message);
    }
}

}  // namespace

extern "C" {

const char* fw_last_error(void)
{
    return last_error.c_str();
}

const char* fw_version(void)
{
    return "1.0.0";
}

const char* fw_status_name(fw_status status)
{
    switch (status) {
    case FW_OK:
        return "ok";
    case FW_ERR_ARGUMENT:
        return "argument error";
    case FW_ERR_DOMAIN:
        return "domain error";
    case FW_ERR_NUMERIC:
        return "numeric error";
    case FW_ERR_RESOURCE:
        return "resource error";
    case FW_ERR_IO:
        return "i/o error";
    case FW_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

fw_status fw_conv_weights(double alpha, size_t K, double* b, double* w)
{
    return guarded([&] {
        require(b != nullptr, "fw_conv_weights: b must not be NULL");
        const fracwave::ConvolutionWeights weights = fracwave::conv_weights(fracwave::FracOrder{alpha}, K);
        for (std::size_t j = 0; j <= K; ++j) {
            b[j] = weights.b(j);
        }
        if (w) {
            for (std::size_t i = 1; i < K; ++i) {
                w[i - 1] = weights.w(i);
            }
        }
    });
}

fw_status fw_solve(double alpha, int m, int n, const char* u0, const char* f, fw_history_mode history,
                   fw_trajectory** out)
{
    return guarded([&] {
        require(out != nullptr && u0 != nullptr && f != nullptr, "fw_solve: NULL argument");
        *out = nullptr;
        require(m >= 1 && m <= 24 && n >= 0 && n <= 30, "fw_solve: levels out of range (1 <= m <= 24, 0 <= n <= 30)");
        const std::size_t bytes = ((std::size_t{1} << n) + 1) * ((std::size_t{1} << m) - 1) * sizeof(double);
        if (bytes > kSolveByteLimit) {
            throw fracwave::ResourceError("fw_solve: trajectory would need " + std::to_string(bytes >> 20) + " MiB");
        }
        const fracwave::FracOrder a{alpha};
        fracwave::SolverConfig config;
        config.history_mode = history_mode(history);
        fracwave::Trajectory traj = fracwave::run(fracwave::parse_spatial_spec(u0), fracwave::parse_forcing_spec(f),
                                                  fracwave::SpaceGrid1D::dyadic(m), fracwave::TimeGrid::dyadic(n), a, config);
        *out = new fw_trajectory{std::move(traj)};
    });
}

void fw_trajectory_free(fw_trajectory* traj)
{
    delete traj;
}

size_t fw_trajectory_steps(const fw_trajectory* traj)
{
    return traj ? traj->traj.steps() : 0;
}

size_t fw_trajectory_width(const fw_trajectory* traj)
{
    return traj ? traj->traj.width() : 0;
}

fw_status fw_trajectory_norms(const fw_trajectory* traj, double* norms)
{
    return guarded([&] {
        require(traj != nullptr && norms != nullptr, "fw_trajectory_norms: NULL argument");
        const auto& v = traj->traj.norms();
        std::memcpy(norms, v.data(), v.size() * sizeof(double));
    });
}

fw_status fw_trajectory_values(const fw_trajectory* traj, size_t j, double* values)
{
    return guarded([&] {
        require(traj != nullptr && values != nullptr, "fw_trajectory_values: NULL argument");
        require(j <= traj->traj.steps(), "fw_trajectory_values: slab index out of range");
        require(traj->traj.full() || j == 0 || j == traj->traj.steps(), "fw_trajectory_values: slab not stored");
        const auto v = traj->traj.value(j);
        std::memcpy(values, v.data(), v.size() * sizeof(double));
    });
}

fw_status fw_trajectory_dump(const fw_trajectory* traj, const char* path)
{
    return guarded([&] {
        require(traj != nullptr && path != nullptr, "fw_trajectory_dump: NULL argument");
        fracwave::dump_trajectory(traj->traj, path);
    });
}

fw_status fw_stability_bound(const char* u0, const char* f, double T, double* bound)
{
    return guarded([&] {
        require(u0 != nullptr && f != nullptr && bound != nullptr, "fw_stability_bound: NULL argument");
        *bound = fracwave::stability_bound(fracwave::parse_spatial_spec(u0), fracwave::parse_forcing_spec(f), T);
    });
}

fw_status fw_experiment_preset(int id, fw_study study, int paper_scale, fw_experiment** out)
{
    return guarded([&] {
        require(out != nullptr, "fw_experiment_preset: NULL argument");
        require(study == FW_STUDY_TEMPORAL || study == FW_STUDY_SPATIAL, "fw_experiment_preset: unknown study");
        const auto s = study == FW_STUDY_TEMPORAL ? fracwave::Study::temporal : fracwave::Study::spatial;
        *out = new fw_experiment{fracwave::ExperimentSpec::preset(id, s, paper_scale != 0)};
    });
}

void fw_experiment_free(fw_experiment* exp)
{
    delete exp;
}

fw_status fw_experiment_set_alphas(fw_experiment* exp, const double* alphas, size_t count)
{
    return guarded([&] {
        require(exp != nullptr && alphas != nullptr && count > 0, "fw_experiment_set_alphas: empty list");
        exp->spec.alphas.assign(alphas, alphas + count);
    });
}

fw_status fw_experiment_set_m(fw_experiment* exp, const int* levels, size_t count)
{
    return guarded([&] {
        require(exp != nullptr && levels != nullptr && count > 0, "fw_experiment_set_m: empty list");
        exp->spec.m_list.assign(levels, levels + count);
    });
}

fw_status fw_experiment_set_n(fw_experiment* exp, const int* levels, size_t count)
{
    return guarded([&] {
        require(exp != nullptr && levels != nullptr && count > 0, "fw_experiment_set_n: empty list");
        exp->spec.n_list.assign(levels, levels + count);
    });
}

void fw_run_options_init(fw_run_options* options)
{
    if (options) {
        options->allow_paper_scale = 0;
        options->cache_dir = nullptr;
        options->workers = 0;
        options->history = FW_HISTORY_FFT;
    }
}

fw_status fw_report_create(fw_report** out)
{
    return guarded([&] {
        require(out != nullptr, "fw_report_create: NULL argument");
        *out = new fw_report{};
    });
}

void fw_report_free(fw_report* report)
{
    delete report;
}

fw_status fw_experiment_run(const fw_experiment* exp, const fw_run_options* options, fw_report* report)
{
    return guarded([&] {
        require(exp != nullptr && report != nullptr, "fw_experiment_run: NULL argument");
        fracwave::RunOptions opt;
        if (options) {
            opt.allow_paper_scale = options->allow_paper_scale != 0;
            if (options->cache_dir && *options->cache_dir) {
                opt.cache_dir = std::filesystem::path(options->cache_dir);
            }
            opt.workers = options->workers;
            opt.history = history_mode(options->history);
        }
        report->reports.push_back(fracwave::run_experiment(exp->spec, opt));
    });
}

size_t fw_report_rows(const fw_report* report)
{
    if (!report) {
        return 0;
    }
    std::size_t n = 0;
    for (const auto& r : report->reports) {
        n += r.rows.size();
    }
    return n;
}

fw_status fw_report_row(const fw_report* report, size_t index, fw_error_row* row)
{
    return guarded([&] {
        require(report != nullptr && row != nullptr, "fw_report_row: NULL argument");
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        for (const auto& r : report->reports) {
            if (index < r.rows.size()) {
                const auto& e = r.rows[index];
                *row = {e.alpha, e.m, e.n, e.beta.value_or(nan), e.error, e.order.value_or(nan)};
                return;
            }
            index -= r.rows.size();
        }
        throw fracwave::ArgumentError("fw_report_row: index out of range");
    });
}

int fw_report_stable(const fw_report* report)
{
    if (!report) {
        return 0;
    }
    for (const auto& r : report->reports) {
        for (const auto& s : r.stability) {
            if (!s.ok()) {
                return 0;
            }
        }
    }
    return 1;
}

fw_status fw_report_render(const fw_report* report, fw_format format, char* buffer, size_t capacity, size_t* length)
{
    return guarded([&] {
        require(report != nullptr && length != nullptr, "fw_report_render: NULL argument");
        require(format == FW_FORMAT_CSV || format == FW_FORMAT_MARKDOWN, "fw_report_render: unknown format");
        const std::string text =
            format == FW_FORMAT_CSV ? fracwave::to_csv(report->reports) : fracwave::to_markdown(report->reports);
        *length = text.size();
        if (buffer && capacity > 0) {
            const std::size_t n = std::min(capacity - 1, text.size());
            std::memcpy(buffer, text.data(), n);
            buffer[n] = '\0';
        }
    });
}

fw_status fw_validate(const char* suite, fw_log_fn log, void* user, int* passed)
{
    return guarded([&] {
        require(suite != nullptr && passed != nullptr, "fw_validate: NULL argument");
        fracwave::ValidationLog sink;
        if (log) {
            sink = [log, user](const std::string& line) { log(line.c_str(), user); };
        }
        *passed = fracwave::validate_suite(suite, sink).passed() ? 1 : 0;
    });
}

}  // extern "C"
