#pragma once

#include <vector>

#include "xqam/graymap.hpp"
#include "xqam/rng.hpp"
#include "xqam/types.hpp"

namespace xqam {

struct SnrSpec {
    double ebn0_db = 0.0;
    int bits_per_4d = 0;
    double es2d = 1.0;
};

// Two 2D symbols carry bits_per_4d bits, so Eb = 2*es2d/k.
double snr_to_n0(const SnrSpec& s);

// Adds independent Gaussian noise of variance n0/2 per real dimension.
Vec4 add_awgn(const Vec4& v, double n0, Rng& rng);

enum class LlrMode { exact, maxlog };

// Maximum-likelihood detection and per-bit LLRs over the signal set of
// one labeling, scaled to unit average 2D-symbol energy. Stateless after
// construction; safe to share across threads.
class MlDetector {
public:
    explicit MlDetector(const Labeling4D& labeling);

    int k() const { return k_; }
    const std::vector<Vec4>& signals() const { return signals_; }

    // Index (= label value) of the nearest signal; ties go to the
    // lexicographically smallest vector.
    std::uint32_t detect_index(const Vec4& r) const;
    BitSeq detect_ml(const Vec4& r) const;

    // LLR per bit position; positive means bit 0 is more likely.
    std::vector<double> llr(const Vec4& r, double n0, LlrMode mode) const;

private:
    int k_ = 0;
    std::vector<Vec4> signals_;  // normalized, index = label value
};

}  // namespace xqam
