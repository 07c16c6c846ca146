#include "xqam/ofdm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace xqam {

namespace {

// FFTW plan creation is not thread-safe; execution on private buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct DftsOfdmModulator::Impl {
    fftw_plan spread = nullptr;
    fftw_plan inverse = nullptr;
    fftw_complex* spread_buf = nullptr;   // in-place m_used-point DFT
    fftw_complex* spectrum = nullptr;     // L-point, in-place inverse DFT
    int len = 0;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (spread) fftw_destroy_plan(spread);
        if (inverse) fftw_destroy_plan(inverse);
        if (spread_buf) fftw_free(spread_buf);
        if (spectrum) fftw_free(spectrum);
    }
};

DftsOfdmModulator::DftsOfdmModulator(const WaveformConfig& cfg) : cfg_(cfg) {
    if (cfg.m_used < 1 || cfg.m_used > cfg.n_total || cfg.oversample < 1 ||
        cfg.mapping_start < 0 || cfg.mapping_start + cfg.m_used > cfg.n_total)
        throw std::invalid_argument("DftsOfdmModulator: invalid configuration");
    impl_ = std::make_unique<Impl>();
    impl_->len = cfg.n_total * cfg.oversample;
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->spread_buf = fftw_alloc_complex(static_cast<std::size_t>(cfg.m_used));
    impl_->spectrum = fftw_alloc_complex(static_cast<std::size_t>(impl_->len));
    impl_->spread = fftw_plan_dft_1d(cfg.m_used, impl_->spread_buf, impl_->spread_buf,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->inverse = fftw_plan_dft_1d(impl_->len, impl_->spectrum, impl_->spectrum,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
}

DftsOfdmModulator::~DftsOfdmModulator() = default;

int DftsOfdmModulator::output_len() const { return impl_->len; }

std::vector<cplx> DftsOfdmModulator::synthesize(const std::vector<cplx>& syms) const {
    const int m = cfg_.m_used;
    if (static_cast<int>(syms.size()) != m)
        throw std::invalid_argument("dfts_ofdm_symbol: need exactly m_used symbols");
    const int len = impl_->len;

    for (int i = 0; i < m; ++i) {
        impl_->spread_buf[i][0] = syms[static_cast<std::size_t>(i)].real();
        impl_->spread_buf[i][1] = syms[static_cast<std::size_t>(i)].imag();
    }
    fftw_execute(impl_->spread);

    std::memset(impl_->spectrum, 0, sizeof(fftw_complex) * static_cast<std::size_t>(len));
    const double unitary = 1.0 / (std::sqrt(static_cast<double>(m)) *
                                  std::sqrt(static_cast<double>(len)));
    for (int i = 0; i < m; ++i) {
        impl_->spectrum[cfg_.mapping_start + i][0] = impl_->spread_buf[i][0] * unitary;
        impl_->spectrum[cfg_.mapping_start + i][1] = impl_->spread_buf[i][1] * unitary;
    }
    fftw_execute(impl_->inverse);

    std::vector<cplx> out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i)
        out[static_cast<std::size_t>(i)] = cplx(impl_->spectrum[i][0], impl_->spectrum[i][1]);
    return out;
}

std::vector<cplx> dfts_ofdm_symbol(const std::vector<cplx>& syms, const WaveformConfig& cfg) {
    return DftsOfdmModulator(cfg).synthesize(syms);
}

double papr_db(const std::vector<cplx>& samples) {
    if (samples.empty()) throw std::invalid_argument("papr_db: empty input");
    double peak = 0.0;
    double mean = 0.0;
    for (const cplx& x : samples) {
        const double p = std::norm(x);
        peak = std::max(peak, p);
        mean += p;
    }
    mean /= static_cast<double>(samples.size());
    if (peak == 0.0) throw std::invalid_argument("papr_db: all-zero input");
    return 10.0 * std::log10(peak / mean);
}

CcdfCurve ccdf(const std::vector<double>& papr_samples, const std::vector<double>& grid_db) {
    if (papr_samples.empty()) throw std::invalid_argument("ccdf: need at least one sample");
    std::vector<double> sorted = papr_samples;
    std::sort(sorted.begin(), sorted.end());
    CcdfCurve curve;
    curve.thresholds_db = grid_db;
    curve.prob.reserve(grid_db.size());
    const double n = static_cast<double>(sorted.size());
    for (double t : grid_db) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
        curve.prob.push_back(static_cast<double>(above) / n);
    }
    return curve;
}

double papr_at_ccdf(std::vector<double> papr_samples, double p) {
    if (papr_samples.empty()) throw std::invalid_argument("papr_at_ccdf: empty input");
    const auto n = papr_samples.size();
    auto idx = static_cast<std::size_t>(p * static_cast<double>(n));
    idx = std::min(idx, n - 1);
    std::nth_element(papr_samples.begin(), papr_samples.begin() + static_cast<long>(idx),
                     papr_samples.end(), std::greater<>());
    return papr_samples[idx];
}

}  // namespace xqam
