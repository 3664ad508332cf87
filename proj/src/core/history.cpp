#include "core/history.hpp"

#include <algorithm>
#include <mutex>

#include <fftw3.h>

#include "core/errors.hpp"

namespace fracwave {

void history_sum_naive(std::span<const double> slabs, std::size_t N, std::span<const double> weights, std::size_t k,
                       std::span<double> out)
{
    if (k < 1) {
        throw ArgumentError("history sum: k must be >= 1");
    }
    if (out.size() != N || slabs.size() < k * N) {
        throw ArgumentError("history sum: buffer sizes do not match");
    }
    if (weights.size() <= k) {
        throw ArgumentError("history sum: not enough weights");
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 1; j <= k; ++j) {
        const double w = weights[k + 1 - j];
        const double* u = slabs.data() + (j - 1) * N;
        for (std::size_t i = 0; i < N; ++i) {
            out[i] += w * u[i];
        }
    }
}

std::vector<double> history_sum_naive(std::span<const double> slabs, std::size_t N, std::span<const double> weights,
                                      std::size_t k)
{
    std::vector<double> out(N);
    history_sum_naive(slabs, N, weights, k, out);
    return out;
}

namespace {

// The FFTW planner is not thread-safe; execution of existing plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

// Upper bound on complex entries per transform batch (64 MB).
constexpr std::size_t kBatchEntries = std::size_t{1} << 22;

struct Level {
    std::size_t L = 0;
    std::size_t batch = 0;          // column pairs per batch
    fftw_complex* buf = nullptr;    // batch x 2L
    fftw_complex* spectrum = nullptr;  // 2L, transform of the weight segment
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    Level() = default;
    Level(const Level&) = delete;
    Level& operator=(const Level&) = delete;
    ~Level()
    {
        std::lock_guard lock(planner_mutex());
        if (forward != nullptr) {
            fftw_destroy_plan(forward);
        }
        if (backward != nullptr) {
            fftw_destroy_plan(backward);
        }
        fftw_free(buf);
        fftw_free(spectrum);
    }
};

}  // namespace

struct BlockedHistory::Impl {
    std::vector<double> weights;  // w_0 .. w_{2 Lmax}, zero padded
    std::size_t N;
    std::size_t J;
    std::size_t min_block;
    std::size_t next = 1;
    std::vector<std::unique_ptr<Level>> levels;   // index p: L = min_block * 2^p
    std::vector<std::vector<double>> pending;     // pending[k]: square contributions to H_k

    Level& level(std::size_t p)
    {
        if (levels.size() <= p) {
            levels.resize(p + 1);
        }
        if (!levels[p]) {
            levels[p] = make_level(min_block << p);
        }
        return *levels[p];
    }

    std::unique_ptr<Level> make_level(std::size_t L) const
    {
        auto lv = std::make_unique<Level>();
        const std::size_t n = 2 * L;
        const std::size_t pairs = (N + 1) / 2;
        lv->L = L;
        lv->batch = std::clamp<std::size_t>(kBatchEntries / n, 1, pairs);
        lv->buf = fftw_alloc_complex(lv->batch * n);
        lv->spectrum = fftw_alloc_complex(n);
        if (lv->buf == nullptr || lv->spectrum == nullptr) {
            throw ResourceError("blocked history: FFT buffer allocation failed");
        }
        const int len = static_cast<int>(n);
        {
            std::lock_guard lock(planner_mutex());
            lv->forward = fftw_plan_many_dft(1, &len, static_cast<int>(lv->batch), lv->buf, nullptr, 1, len, lv->buf,
                                             nullptr, 1, len, FFTW_FORWARD, FFTW_ESTIMATE);
            lv->backward = fftw_plan_many_dft(1, &len, static_cast<int>(lv->batch), lv->buf, nullptr, 1, len, lv->buf,
                                              nullptr, 1, len, FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        if (lv->forward == nullptr || lv->backward == nullptr) {
            throw ResourceError("blocked history: FFT planning failed");
        }
        // y_d = w_{d+1} for d = 1 .. 2L-1, y_0 = 0 (never reaches a kept output)
        for (std::size_t d = 0; d < n; ++d) {
            const double w = d == 0 ? 0.0 : weight(d + 1);
            lv->buf[d][0] = w;
            lv->buf[d][1] = 0.0;
        }
        for (std::size_t d = n; d < lv->batch * n; ++d) {
            lv->buf[d][0] = 0.0;
            lv->buf[d][1] = 0.0;
        }
        fftw_execute(lv->forward);
        for (std::size_t d = 0; d < n; ++d) {
            lv->spectrum[d][0] = lv->buf[d][0];
            lv->spectrum[d][1] = lv->buf[d][1];
        }
        return lv;
    }

    [[nodiscard]] double weight(std::size_t i) const { return i < weights.size() ? weights[i] : 0.0; }

    // Square with sources (k-L, k] and targets (k, k+L].
    void process_square(std::span<const double> slabs, std::size_t k, std::size_t p)
    {
        Level& lv = level(p);
        const std::size_t L = lv.L;
        const std::size_t n = 2 * L;
        const std::size_t first_src = k - L + 1;
        const std::size_t last_target = std::min(k + L, J);
        for (std::size_t t = k + 1; t <= last_target; ++t) {
            if (pending[t].empty()) {
                pending[t].assign(N, 0.0);
            }
        }
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t c0 = 0; c0 < N; c0 += 2 * lv.batch) {
            // pack columns (2c, 2c+1) of the source block as real/imag parts
            for (std::size_t b = 0; b < lv.batch; ++b) {
                fftw_complex* col = lv.buf + b * n;
                const std::size_t ca = c0 + 2 * b;
                const std::size_t cb = ca + 1;
                for (std::size_t t = 0; t < L; ++t) {
                    const double* u = slabs.data() + (first_src - 1 + t) * N;
                    col[t][0] = ca < N ? u[ca] : 0.0;
                    col[t][1] = cb < N ? u[cb] : 0.0;
                }
                for (std::size_t t = L; t < n; ++t) {
                    col[t][0] = 0.0;
                    col[t][1] = 0.0;
                }
            }
            fftw_execute(lv.forward);
            for (std::size_t b = 0; b < lv.batch; ++b) {
                fftw_complex* col = lv.buf + b * n;
                for (std::size_t d = 0; d < n; ++d) {
                    const double xr = col[d][0];
                    const double xi = col[d][1];
                    const double yr = lv.spectrum[d][0];
                    const double yi = lv.spectrum[d][1];
                    col[d][0] = xr * yr - xi * yi;
                    col[d][1] = xr * yi + xi * yr;
                }
            }
            fftw_execute(lv.backward);
            for (std::size_t b = 0; b < lv.batch; ++b) {
                const fftw_complex* col = lv.buf + b * n;
                const std::size_t ca = c0 + 2 * b;
                const std::size_t cb = ca + 1;
                if (ca >= N) {
                    break;
                }
                for (std::size_t t = k + 1; t <= last_target; ++t) {
                    const std::size_t idx = L + (t - k - 1);
                    pending[t][ca] += col[idx][0] * inv_n;
                    if (cb < N) {
                        pending[t][cb] += col[idx][1] * inv_n;
                    }
                }
            }
        }
    }
};

BlockedHistory::BlockedHistory(std::span<const double> weights, std::size_t N, std::size_t J, std::size_t min_block)
    : impl_(std::make_unique<Impl>())
{
    if (N == 0 || J == 0) {
        throw ArgumentError("blocked history: empty problem");
    }
    if (min_block == 0 || (min_block & (min_block - 1)) != 0) {
        throw ArgumentError("blocked history: min_block must be a power of two");
    }
    impl_->N = N;
    impl_->J = J;
    impl_->min_block = min_block;
    const std::size_t keep = std::min(weights.size(), J + 1);
    impl_->weights.assign(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(keep));
    if (!impl_->weights.empty()) {
        impl_->weights[0] = 0.0;
    }
    impl_->pending.resize(J + 1);
}

BlockedHistory::~BlockedHistory() = default;
BlockedHistory::BlockedHistory(BlockedHistory&&) noexcept = default;
BlockedHistory& BlockedHistory::operator=(BlockedHistory&&) noexcept = default;

std::size_t BlockedHistory::next_index() const noexcept
{
    return impl_->next;
}

std::size_t BlockedHistory::width() const noexcept
{
    return impl_->N;
}

void BlockedHistory::sum(std::span<const double> slabs, std::size_t k, std::span<double> out)
{
    Impl& s = *impl_;
    if (k != s.next || k > s.J) {
        throw ArgumentError("blocked history: indices must be visited in order 1..J");
    }
    if (out.size() != s.N || slabs.size() < k * s.N) {
        throw ArgumentError("blocked history: buffer sizes do not match");
    }
    // squares whose source block ends at k feed targets k+1 .. k+L
    if (k < s.J) {
        std::size_t p = 0;
        for (std::size_t L = s.min_block; L <= k; L *= 2, ++p) {
            if (k % L == 0 && (k / L) % 2 == 1) {
                s.process_square(slabs, k, p);
            }
        }
    }
    if (s.pending[k].empty()) {
        std::fill(out.begin(), out.end(), 0.0);
    } else {
        std::copy(s.pending[k].begin(), s.pending[k].end(), out.begin());
        std::vector<double>().swap(s.pending[k]);
    }
    // leaf triangle (a, a + min_block] holding k
    const std::size_t a = (k - 1) / s.min_block * s.min_block;
    for (std::size_t j = a + 1; j <= k; ++j) {
        const double w = s.weight(k + 1 - j);
        const double* u = slabs.data() + (j - 1) * s.N;
        for (std::size_t i = 0; i < s.N; ++i) {
            out[i] += w * u[i];
        }
    }
    ++s.next;
}

std::vector<double> history_sum_fft(std::span<const double> slabs, BlockedHistory& state, std::size_t k)
{
    std::vector<double> out(state.width());
    state.sum(slabs, k, out);
    return out;
}

}  // namespace fracwave
