#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xqam/constellation.hpp"
#include "xqam/graymap.hpp"
#include "xqam/ldpc.hpp"
#include "xqam/ofdm.hpp"

namespace xqam {

// Flat key-value experiment configuration. Every knob has a default and
// can come from a config file or command-line overrides.
struct ExperimentConfig {
    std::string kind = "summarize";  // verify-gray | papr | ber-uncoded |
                                     // ber-coded | export-labeling | summarize
    std::string constellation = "cross-qam";  // cross-qam | class1-trim |
                                              // dicyclic | square-qam
    int m = 1;              // cross-qam scale parameter
    int qam_order = 16;     // square-qam order
    std::string labeling = "gray";  // gray | progressive

    std::vector<double> snr_db = {6, 7, 8, 9, 10, 11, 12};

    long max_vectors = 4000000;  // uncoded budget per SNR point
    long max_frames = 2500;      // coded budget per SNR point
    long target_errors = 100;    // bit errors to stop a point early

    int subcarriers = 12;
    int total_subcarriers = 2048;
    int oversample = 4;
    long symbols = 200000;  // waveform symbols per CCDF curve

    std::uint64_t ldpc_seed = 1;
    int ldpc_iters = 50;

    std::uint64_t seed = 1;
    int threads = 0;  // 0 means hardware concurrency
    std::string out_dir = "out";

    static ExperimentConfig from_file(const std::string& path);
    void apply_kv(const std::string& key, const std::string& value);
    std::string to_kv_text() const;
};

// Builds the signal set selected by (constellation, labeling, m/order).
// Throws a configuration error for combinations that cannot exist, for
// example a Gray labeling of the trimmed Class I set.
Labeling4D build_labeling(const ExperimentConfig& cfg);

// The same selection as a bare 4D constellation (uniform distribution).
Constellation4D build_constellation4d(const ExperimentConfig& cfg);

struct BerPoint {
    double ebn0_db = 0.0;
    long bits = 0;
    long errors = 0;
    double ber = 0.0;
    double ci_halfwidth = 0.0;  // Wilson 95% half-width
    long units = 0;             // vectors (uncoded) or frames (coded)
    long frame_errors = 0;      // coded only
    double avg_iters = 0.0;     // coded only
    std::vector<double> per_bit_ber;
};

struct BerResult {
    std::string labeling_name;
    int k = 0;
    std::vector<BerPoint> points;
};

struct PaprResult {
    std::string source_name;
    std::vector<double> samples_db;
    CcdfCurve curve;
    double q10 = 0.0;   // PAPR at CCDF 1e-1
    double q100 = 0.0;  // 1e-2
    double q1000 = 0.0; // 1e-3
};

struct SummaryRow {
    std::string name;
    std::size_t size = 0;
    double bits_per_2d = 0.0;
    double papr_db = 0.0;
    double min_distance = 0.0;  // normalized units
    double neighbor_avg = 0.0;
    int neighbor_max = 0;
};

double wilson_halfwidth(long errors, long trials);

GrayReport run_verify_gray(const ExperimentConfig& cfg);
PaprResult run_papr(const ExperimentConfig& cfg);
BerResult run_ber_uncoded(const ExperimentConfig& cfg);
BerResult run_ber_coded(const ExperimentConfig& cfg);
std::vector<SummaryRow> summarize_constellations(bool include_neighbors = true);

// Dispatches on cfg.kind, writes CSV/JSON artifacts into cfg.out_dir and
// returns a process exit status (0 on success).
int run(const ExperimentConfig& cfg);

std::string ber_csv(const BerResult& r);
std::string ccdf_csv(const PaprResult& r);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string summary_table(const std::vector<SummaryRow>& rows);

}  // namespace xqam
