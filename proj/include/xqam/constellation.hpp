#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xqam/types.hpp"

namespace xqam {

// A 2D constellation point in natural lattice units (odd integers for
// the QAM families built here).
struct Point2D {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point2D&, const Point2D&) = default;
};

// True iff (x, y) lies in the cross shape of the (3*4^m)-ary QAM:
// odd coordinates bounded by 2^(m+1)-1 with the corner quarter removed.
bool in_cross_shape(int x, int y, int m);

struct Constellation2D {
    std::string name;
    int scale_m = 0;  // the m parameter where applicable, else 0
    std::vector<Point2D> points;
    std::vector<std::uint32_t> labels;  // optional, parallel to points
    int label_bits = 0;
};

struct Constellation4D {
    std::string name;
    std::vector<Vec4> vectors;
    // Multiply coordinates by this to get unit average 2D-symbol energy
    // under the uniform distribution over `vectors`.
    double normalization = 1.0;
};

struct NeighborStats {
    double min_distance = 0.0;
    std::vector<int> per_point_counts;
    double avg = 0.0;
    int max = 0;
};

// Cross QAM with 3*4^m points; lexicographic (x, y) point order.
Constellation2D build_cross_qam(int m);

// Uniform square QAM (order in {4, 16, 64, 256}) on the odd-integer
// grid with a per-axis reflected-Gray labeling attached.
Constellation2D build_square_qam(int order);

// The 145 points of the 4D checkerboard lattice with squared norm <= 6.
Constellation4D build_welti_class1();

// Removes |c| - target vectors, greedily by descending per-2D-symbol
// peak power, ties broken by descending lexicographic coordinates.
Constellation4D trim_high_power(const Constellation4D& c, int target);

// Two orthogonal (size/2)-PSK rings, scaled to unit average 2D-symbol
// energy.
Constellation4D build_dicyclic(int size);

// Peak over 2D symbols of symbol power divided by the average 2D-symbol
// power under the given distribution, in dB.
double constellation_papr_db(const std::vector<std::pair<Vec4, double>>& dist);

// Convenience: PAPR under the uniform distribution over c.vectors.
double constellation_papr_db(const Constellation4D& c);

// Exact minimum pairwise distance and per-point counts of neighbors at
// that distance (relative tolerance 1e-9).
NeighborStats neighbor_stats(const Constellation4D& c);

// Unordered index pairs at the minimum pairwise distance. Shared by
// neighbor_stats, the Gray verifier and the per-bit statistics.
struct MinDistancePairs {
    double min_distance = 0.0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};
MinDistancePairs min_distance_pairs(const std::vector<Vec4>& pts);

// Average 2D-symbol energy under the uniform distribution over vectors.
double avg_sym_energy(const std::vector<Vec4>& vectors);

// CSV export, one point per row: coordinates then label bits if present.
std::string to_csv(const Constellation2D& c);
std::string to_csv(const Constellation4D& c);

}  // namespace xqam
