#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "xqam/constellation.hpp"
#include "xqam/types.hpp"

namespace xqam {

// Bits per 4D vector for the (3*4^m)-ary cross family.
inline int bits_per_4d(int m) { return 3 + 4 * m; }

// The 8-entry basic mapping: 3 bits to a pair of first-quadrant
// 12-QAM symbols. Arguments are the three leading label bits
// (b_{k-1}, b_{k-2}, b_{k-3}).
Vec4i basic_map_f(int b_k1, int b_k2, int b_k3);

// Applies the diagonal sign matrix: bit 3 of `signs` flips x1, bit 2
// flips y1, bit 1 flips x2, bit 0 flips y2. For k-bit labels the nibble
// is (b_{k-4}, b_{k-5}, b_{k-6}, b_{k-7}) top to bottom.
Vec4i sign_apply_d(const Vec4i& t, std::uint32_t signs);

// Gray-labeled grid of the implicit 4^(m-1)-ary QAM that fills each
// cluster. Row 0 is the top row (largest y), column 0 the leftmost.
// Labels are the row Gray code concatenated with the column Gray code.
struct InnerGray {
    int m = 1;
    int side = 1;  // 2^(m-1)
    int bits = 0;  // 2m-2

    std::uint32_t entry(int row, int col) const;
    Point2D point(int row, int col) const;
};

InnerGray inner_gray(int m);

// Looks up cluster offset for the given cluster-center coordinates
// (tx, ty in {+-1, +-3}) and intra-cluster bits, applying the vertical/
// horizontal grid flips the center position dictates.
Point2D cluster_point_s(int tx, int ty, std::uint32_t bits, const InnerGray& g);

// The 7-bit mapping onto two 12-QAM symbols.
Vec4i map12(const BitSeq& b);

// The (3+4m)-bit mapping onto two (3*4^m)-ary QAM symbols. Reduces to
// map12 for m = 1.
Vec4i map_general(const BitSeq& b, int m);

// Exact inverse of map_general; throws if v is not in its image.
BitSeq demap_hard(const Vec4i& v, int m);

// All 2^(3+4m) used vectors, ordered by label value.
std::vector<Vec4i> enumerate_used(int m);

// A complete bits-to-signal bijection: signals[value] is the 4D vector
// labeled by the k-bit value (natural units).
struct Labeling4D {
    std::string name;
    int k = 0;
    std::vector<Vec4> signals;
    double es2d = 1.0;  // average 2D-symbol energy over signals

    std::optional<std::uint32_t> index_of(const Vec4& v) const;

    static Labeling4D from_signals(std::string name, int k, std::vector<Vec4> signals);

private:
    std::unordered_map<std::uint64_t, std::uint32_t> inverse_;
    bool integral_ = false;
};

// The paper-family Gray labeling of the used cross-QAM vectors.
Labeling4D cross_labeling(int m);

// Non-Gray baseline: vectors sorted lexicographically, label = index.
Labeling4D progressive_labeling(const Constellation4D& c, int k);

struct GrayReport {
    double min_distance = 0.0;
    std::size_t pairs_checked = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> violations;  // label values
    bool gray() const { return violations.empty(); }
};

// Enumerates every unordered pair of signals at the exact minimum
// distance and reports those whose labels are not at Hamming distance 1.
GrayReport verify_gray(const Labeling4D& labeling);

// For each bit position, the fraction of minimum-distance pairs whose
// labels differ in that position.
std::vector<double> per_bit_reliability(const Labeling4D& labeling);

// CSV rows: bit string, x1, y1, x2, y2.
std::string to_csv(const Labeling4D& labeling);

}  // namespace xqam
