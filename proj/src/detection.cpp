#include "xqam/detection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xqam {

double snr_to_n0(const SnrSpec& s) {
    if (s.bits_per_4d <= 0 || s.es2d <= 0.0)
        throw std::invalid_argument("snr_to_n0: invalid spec");
    return 2.0 * s.es2d / (s.bits_per_4d * std::pow(10.0, s.ebn0_db / 10.0));
}

Vec4 add_awgn(const Vec4& v, double n0, Rng& rng) {
    if (n0 <= 0.0) throw std::invalid_argument("add_awgn: n0 must be positive");
    const double sigma = std::sqrt(n0 / 2.0);
    Vec4 r = v;
    for (double& x : r) x += sigma * rng.gaussian();
    return r;
}

MlDetector::MlDetector(const Labeling4D& labeling) : k_(labeling.k) {
    if (labeling.signals.empty())
        throw std::invalid_argument("MlDetector: empty labeling");
    const double scale = 1.0 / std::sqrt(labeling.es2d);
    signals_.reserve(labeling.signals.size());
    for (const Vec4& v : labeling.signals) {
        Vec4 s = v;
        for (double& x : s) x *= scale;
        signals_.push_back(s);
    }
}

std::uint32_t MlDetector::detect_index(const Vec4& r) const {
    std::uint32_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < signals_.size(); ++i) {
        const double d2 = dist2(r, signals_[i]);
        if (d2 < best_d2 || (d2 == best_d2 && signals_[i] < signals_[best])) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

BitSeq MlDetector::detect_ml(const Vec4& r) const {
    return BitSeq{detect_index(r), k_};
}

std::vector<double> MlDetector::llr(const Vec4& r, double n0, LlrMode mode) const {
    if (n0 <= 0.0) throw std::invalid_argument("llr: n0 must be positive");
    const std::size_t n = signals_.size();
    // Metrics a_i = -||r - s_i||^2 / n0, max-extracted per bit class.
    std::vector<double> metric(n);
    for (std::size_t i = 0; i < n; ++i) metric[i] = -dist2(r, signals_[i]) / n0;

    std::vector<double> out(static_cast<std::size_t>(k_));
    for (int bit = 0; bit < k_; ++bit) {
        double max0 = -std::numeric_limits<double>::infinity();
        double max1 = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if ((i >> bit) & 1u)
                max1 = std::max(max1, metric[i]);
            else
                max0 = std::max(max0, metric[i]);
        }
        if (mode == LlrMode::maxlog) {
            out[static_cast<std::size_t>(bit)] = max0 - max1;
            continue;
        }
        double sum0 = 0.0;
        double sum1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if ((i >> bit) & 1u)
                sum1 += std::exp(metric[i] - max1);
            else
                sum0 += std::exp(metric[i] - max0);
        }
        out[static_cast<std::size_t>(bit)] =
            (max0 + std::log(sum0)) - (max1 + std::log(sum1));
    }
    return out;
}

}  // namespace xqam
