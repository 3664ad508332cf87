// fracwave command line: convergence studies, single runs, validation suites
// and convolution weights. Talks to the library only through its C interface.
//
// Exit codes: 0 success, 2 validation failure, 1 usage or runtime error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracwave/fracwave.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

struct CallError {
    fw_status status;
    std::string message;
};

void check(fw_status status)
{
    if (status != FW_OK) {
        throw CallError{status, fw_last_error()};
    }
}

struct ExperimentArgs {
    int id = 1;
    std::vector<double> alphas{0.2, 0.4, 0.8};
    std::string study = "both";
    bool paper_scale = false;
    std::vector<int> m;
    std::vector<int> n;
    std::string out;
    std::string format = "csv";
    unsigned workers = 0;
    std::string history = "fft";
};

struct SolveArgs {
    double alpha = 0.5;
    int m = 6;
    int n = 8;
    std::string u0 = "zero";
    std::string f = "zero";
    std::string history = "fft";
    std::string dump;
};

fw_history_mode parse_history(const std::string& s)
{
    return s == "naive" ? FW_HISTORY_NAIVE : FW_HISTORY_FFT;
}

void write_output(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw CallError{FW_ERR_IO, "cannot write " + path};
    }
}

int run_experiment(const ExperimentArgs& args)
{
    std::vector<fw_study> studies;
    if (args.study == "temporal" || args.study == "both") {
        studies.push_back(FW_STUDY_TEMPORAL);
    }
    if (args.study == "spatial" || args.study == "both") {
        studies.push_back(FW_STUDY_SPATIAL);
    }
    fw_run_options options;
    fw_run_options_init(&options);
    options.allow_paper_scale = args.paper_scale ? 1 : 0;
    const char* cache = std::getenv("FRACWAVE_CACHE_DIR");
    options.cache_dir = cache;
    options.workers = args.workers;
    options.history = parse_history(args.history);

    fw_report* report = nullptr;
    check(fw_report_create(&report));
    std::string text;
    try {
        for (fw_study study : studies) {
            fw_experiment* exp = nullptr;
            check(fw_experiment_preset(args.id, study, args.paper_scale ? 1 : 0, &exp));
            try {
                check(fw_experiment_set_alphas(exp, args.alphas.data(), args.alphas.size()));
                if (!args.m.empty()) {
                    check(fw_experiment_set_m(exp, args.m.data(), args.m.size()));
                }
                if (!args.n.empty()) {
                    check(fw_experiment_set_n(exp, args.n.data(), args.n.size()));
                }
                check(fw_experiment_run(exp, &options, report));
            } catch (...) {
                fw_experiment_free(exp);
                throw;
            }
            fw_experiment_free(exp);
        }
        const fw_format format = args.format == "md" ? FW_FORMAT_MARKDOWN : FW_FORMAT_CSV;
        std::size_t length = 0;
        check(fw_report_render(report, format, nullptr, 0, &length));
        std::vector<char> buf(length + 1);
        check(fw_report_render(report, format, buf.data(), buf.size(), &length));
        text.assign(buf.data(), length);
    } catch (...) {
        fw_report_free(report);
        throw;
    }
    const bool stable = fw_report_stable(report) != 0;
    fw_report_free(report);
    write_output(text, args.out);
    if (!stable) {
        std::cerr << "stability bound violated in at least one run\n";
        return kExitValidation;
    }
    return 0;
}

int run_solve(const SolveArgs& args)
{
    fw_trajectory* traj = nullptr;
    check(fw_solve(args.alpha, args.m, args.n, args.u0.c_str(), args.f.c_str(), parse_history(args.history), &traj));
    const std::size_t J = fw_trajectory_steps(traj);
    std::vector<double> norms(J + 1);
    double bound = 0.0;
    try {
        check(fw_trajectory_norms(traj, norms.data()));
        check(fw_stability_bound(args.u0.c_str(), args.f.c_str(), 1.0, &bound));
        if (!args.dump.empty()) {
            check(fw_trajectory_dump(traj, args.dump.c_str()));
        }
    } catch (...) {
        fw_trajectory_free(traj);
        throw;
    }
    const std::size_t width = fw_trajectory_width(traj);
    fw_trajectory_free(traj);
    double top = 0.0;
    for (double v : norms) {
        top = std::max(top, v);
    }
    std::printf("alpha %g, h = 2^-%d (%zu interior nodes), tau = 2^-%d (%zu steps)\n", args.alpha, args.m, width,
                args.n, J);
    std::printf("||U_0|| %.12e\n||U_J|| %.12e\nmax_j ||U_j|| %.12e\nstability bound %.12e\n", norms.front(),
                norms.back(), top, bound);
    if (top > bound + 1e-10) {
        std::printf("stability bound violated\n");
        return kExitValidation;
    }
    return 0;
}

int run_validate(const std::string& suite)
{
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = {"psi", "ode", "fem", "adjoint", "stability"};
    } else {
        suites = {suite};
    }
    bool all_passed = true;
    for (const auto& s : suites) {
        std::printf("[%s]\n", s.c_str());
        int passed = 0;
        check(fw_validate(
            s.c_str(), [](const char* line, void*) { std::printf("  %s\n", line); }, nullptr, &passed));
        std::printf("%s: %s\n", s.c_str(), passed ? "passed" : "FAILED");
        all_passed = all_passed && passed;
    }
    std::fflush(stdout);
    return all_passed ? 0 : kExitValidation;
}

int run_weights(double alpha, std::size_t count)
{
    std::vector<double> b(count + 1);
    std::vector<double> w(count > 1 ? count - 1 : 0);
    check(fw_conv_weights(alpha, count, b.data(), w.data()));
    std::printf("j,b,w\n");
    for (std::size_t j = 0; j <= count; ++j) {
        if (j >= 1 && j < count) {
            std::printf("%zu,%.17g,%.17g\n", j, b[j], w[j - 1]);
        } else {
            std::printf("%zu,%.17g,\n", j, b[j]);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"fracwave: time-stepping DG solver for the fractional diffusion-wave equation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fw_version()));

    ExperimentArgs exp_args;
    auto* exp = app.add_subcommand("experiment", "convergence study of experiment 1-4 against a fine reference");
    exp->add_option("--id", exp_args.id, "experiment")->required()->check(CLI::Range(1, 4));
    exp->add_option("--alpha", exp_args.alphas, "fractional orders")->delimiter(',');
    exp->add_option("--study", exp_args.study, "which refinement")->check(CLI::IsMember({"temporal", "spatial", "both"}));
    exp->add_flag("--paper-scale", exp_args.paper_scale, "use h = 2^-11, tau = 2^-16 references (about 1.1 GB per reference, hours)");
    exp->add_option("--m", exp_args.m, "spatial levels")->delimiter(',');
    exp->add_option("--n", exp_args.n, "temporal levels")->delimiter(',');
    exp->add_option("--out", exp_args.out, "output file (default stdout)");
    exp->add_option("--format", exp_args.format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
    exp->add_option("--workers", exp_args.workers, "worker threads (0: all cores)");
    exp->add_option("--history", exp_args.history, "naive or fft")->check(CLI::IsMember({"naive", "fft"}));

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "one run on h = 2^-m, tau = 2^-n, T = 1");
    solve->add_option("--alpha", solve_args.alpha, "fractional order in (0,1)")->required();
    solve->add_option("--m", solve_args.m, "spatial level")->required();
    solve->add_option("--n", solve_args.n, "temporal level")->required();
    solve->add_option("--u0", solve_args.u0, "zero | pow:P | sin:N");
    solve->add_option("--f", solve_args.f, "zero | const:<u0 form> | sep:<u0 form>:Q");
    solve->add_option("--history", solve_args.history, "naive or fft")->check(CLI::IsMember({"naive", "fft"}));
    solve->add_option("--dump", solve_args.dump, "write the trajectory in binary form");

    std::string suite;
    auto* val = app.add_subcommand("validate", "lemma scans and oracle checks");
    val->add_option("--suite", suite, "psi | ode | fem | adjoint | stability | all")
        ->required()
        ->check(CLI::IsMember({"psi", "ode", "fem", "adjoint", "stability", "all"}));

    double w_alpha = 0.5;
    std::size_t w_count = 8;
    auto* weights = app.add_subcommand("weights", "print b_j and their second differences");
    weights->add_option("--alpha", w_alpha, "fractional order")->required();
    weights->add_option("--count", w_count, "K")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*exp) {
            return run_experiment(exp_args);
        }
        if (*solve) {
            return run_solve(solve_args);
        }
        if (*val) {
            return run_validate(suite);
        }
        return run_weights(w_alpha, w_count);
    } catch (const CallError& e) {
        std::cerr << "fracwave: " << fw_status_name(e.status) << ": " << e.message << '\n';
        return kExitUsage;
    }
}
