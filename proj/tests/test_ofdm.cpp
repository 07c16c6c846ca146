#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "xqam/constellation.hpp"
#include "xqam/ofdm.hpp"
#include "xqam/rng.hpp"

using namespace xqam;

namespace {

std::vector<cplx> random_syms(int n, Rng& rng) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = cplx(rng.gaussian(), rng.gaussian());
    return v;
}

double energy(const std::vector<cplx>& v) {
    double e = 0.0;
    for (const auto& x : v) e += std::norm(x);
    return e;
}

}  // namespace

TEST_CASE("single-carrier pass-through: time samples equal input symbols") {
    Rng rng(3);
    const auto syms = random_syms(16, rng);
    const auto time = dfts_ofdm_symbol(syms, {16, 16, 1, 0});
    REQUIRE(time.size() == 16);
    for (int i = 0; i < 16; ++i) {
        CHECK(time[i].real() == doctest::Approx(syms[i].real()).epsilon(1e-12));
        CHECK(time[i].imag() == doctest::Approx(syms[i].imag()).epsilon(1e-12));
    }
}

TEST_CASE("all-equal symbols give a 0 dB waveform") {
    const std::vector<cplx> syms(64, cplx(0.7, -0.7));
    const auto time = dfts_ofdm_symbol(syms, {64, 64, 1, 0});
    CHECK(papr_db(time) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unitary transform chain preserves energy") {
    Rng rng(9);
    for (const int os : {1, 4}) {
        const auto syms = random_syms(12, rng);
        const auto time = dfts_ofdm_symbol(syms, {12, 64, os, 0});
        REQUIRE(static_cast<int>(time.size()) == 64 * os);
        CHECK(energy(time) == doctest::Approx(energy(syms)).epsilon(1e-9));
        // Mean time-sample power is (m_used / n_total) / oversample of
        // the mean input power.
        const double mean_time = energy(time) / (64.0 * os);
        const double mean_in = energy(syms) / 12.0;
        CHECK(mean_time == doctest::Approx(mean_in * 12.0 / (64.0 * os)).epsilon(1e-9));
    }
}

TEST_CASE("papr_db basics") {
    CHECK(papr_db({cplx(1, 0), cplx(0, 1), cplx(-1, 0)}) == doctest::Approx(0.0));
    std::vector<cplx> spike(100, cplx(0, 0));
    spike[17] = cplx(0, 2);
    CHECK(papr_db(spike) == doctest::Approx(10.0 * std::log10(100.0)).epsilon(1e-12));
    CHECK_THROWS_AS(papr_db({}), std::invalid_argument);
    CHECK_THROWS_AS(papr_db(std::vector<cplx>(4, cplx(0, 0))), std::invalid_argument);
}

TEST_CASE("dicyclic single-carrier blocks sit exactly at 3.01 dB") {
    const Constellation4D dc = build_dicyclic(128);
    Rng rng(21);
    const WaveformConfig cfg{2048, 2048, 1, 0};
    DftsOfdmModulator mod(cfg);
    std::vector<cplx> syms(2048);
    for (int block = 0; block < 4; ++block) {
        for (int i = 0; i < 2048; i += 2) {
            const Vec4& v = dc.vectors[rng.below(dc.vectors.size())];
            syms[static_cast<std::size_t>(i)] = cplx(v[0], v[1]);
            syms[static_cast<std::size_t>(i) + 1] = cplx(v[2], v[3]);
        }
        const auto time = mod.synthesize(syms);
        CHECK(papr_db(time) == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("ccdf: step behavior, monotonicity, DKW self-test") {
    const CcdfCurve step = ccdf({3.0, 3.0, 3.0}, {2.5, 3.0, 3.5});
    CHECK(step.prob[0] == doctest::Approx(1.0));
    CHECK(step.prob[1] == doctest::Approx(0.0));  // strict exceedance
    CHECK(step.prob[2] == doctest::Approx(0.0));

    // Empirical CCDF of uniform(0,1) samples vs the analytic curve,
    // within the Dvoretzky-Kiefer-Wolfowitz band at 99% confidence.
    Rng rng(77);
    std::vector<double> samples(100000);
    for (auto& s : samples) s = rng.uniform01();
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    const CcdfCurve curve = ccdf(samples, grid);
    const double eps = std::sqrt(std::log(2.0 / 0.01) / (2.0 * 100000.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(curve.prob[i] - (1.0 - grid[i])) <= eps);
        if (i) CHECK(curve.prob[i] <= curve.prob[i - 1]);
    }
}

TEST_CASE("oversampling only reveals peaks") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto syms = random_syms(12, rng);
        const double p1 = papr_db(dfts_ofdm_symbol(syms, {12, 256, 1, 0}));
        const double p4 = papr_db(dfts_ofdm_symbol(syms, {12, 256, 4, 0}));
        CHECK(p4 >= p1 - 1e-12);
    }
}

TEST_CASE("quantile of the sample CCDF") {
    std::vector<double> s;
    for (int i = 1; i <= 1000; ++i) s.push_back(static_cast<double>(i));
    // 100 of 1000 samples strictly exceed 900.
    CHECK(papr_at_ccdf(s, 0.1) == doctest::Approx(900.0));
    CHECK(papr_at_ccdf(s, 1e-3) == doctest::Approx(999.0));
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(DftsOfdmModulator({32, 16, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(DftsOfdmModulator({12, 16, 1, 8}), std::invalid_argument);
    CHECK_THROWS_AS(DftsOfdmModulator({12, 16, 0, 0}), std::invalid_argument);
    DftsOfdmModulator ok({12, 16, 2, 4});
    CHECK_THROWS_AS(ok.synthesize(std::vector<cplx>(11)), std::invalid_argument);
}
