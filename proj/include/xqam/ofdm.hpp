#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace xqam {

using cplx = std::complex<double>;

struct WaveformConfig {
    int m_used = 12;       // subcarriers carrying data
    int n_total = 2048;    // total subcarriers
    int oversample = 1;
    int mapping_start = 0; // first used subcarrier (localized mapping)
};

struct CcdfCurve {
    std::vector<double> thresholds_db;
    std::vector<double> prob;  // fraction of samples strictly above threshold
};

// DFT-spread OFDM synthesis: unitary m_used-point DFT, contiguous
// subcarrier mapping, unitary (n_total*oversample)-point inverse DFT.
// With m_used == n_total and oversample 1 the output equals the input.
class DftsOfdmModulator {
public:
    explicit DftsOfdmModulator(const WaveformConfig& cfg);
    ~DftsOfdmModulator();
    DftsOfdmModulator(const DftsOfdmModulator&) = delete;
    DftsOfdmModulator& operator=(const DftsOfdmModulator&) = delete;

    const WaveformConfig& config() const { return cfg_; }
    int output_len() const;

    std::vector<cplx> synthesize(const std::vector<cplx>& syms) const;

private:
    struct Impl;
    WaveformConfig cfg_;
    std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper.
std::vector<cplx> dfts_ofdm_symbol(const std::vector<cplx>& syms, const WaveformConfig& cfg);

// 10*log10(peak sample power / mean sample power).
double papr_db(const std::vector<cplx>& samples);

// Empirical complementary CDF (strict exceedance) on the given grid.
CcdfCurve ccdf(const std::vector<double>& papr_samples, const std::vector<double>& grid_db);

// Smallest threshold whose CCDF is <= p (order statistic of samples).
double papr_at_ccdf(std::vector<double> papr_samples, double p);

}  // namespace xqam
