#include "xqam/graymap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace xqam {

namespace {

// Base tuples indexed by 4*b_{k-1} + 2*b_{k-2} + b_{k-3}. Consecutive
// entries of the written Gray-code order 000, 001, 011, 010, 110, 111,
// 101, 100 step by distance 2.
constexpr Vec4i kBaseTable[8] = {
    {1, 3, 1, 3},  // 000
    {1, 3, 1, 1},  // 001
    {1, 1, 3, 1},  // 010
    {1, 3, 3, 1},  // 011
    {1, 1, 1, 3},  // 100
    {3, 1, 1, 3},  // 101
    {3, 1, 3, 1},  // 110
    {3, 1, 1, 1},  // 111
};

int base_index_of(const Vec4i& abs_tuple) {
    for (int i = 0; i < 8; ++i)
        if (kBaseTable[i] == abs_tuple) return i;
    return -1;
}

std::uint32_t gray(std::uint32_t i) { return i ^ (i >> 1); }

std::uint32_t gray_inv(std::uint32_t g) {
    std::uint32_t i = 0;
    for (; g; g >>= 1) i ^= g;
    return i;
}

}  // namespace

Vec4i basic_map_f(int b_k1, int b_k2, int b_k3) {
    return kBaseTable[4 * b_k1 + 2 * b_k2 + b_k3];
}

Vec4i sign_apply_d(const Vec4i& t, std::uint32_t signs) {
    Vec4i v = t;
    for (int j = 0; j < 4; ++j)
        if ((signs >> (3 - j)) & 1u) v[j] = -v[j];
    return v;
}

std::uint32_t InnerGray::entry(int row, int col) const {
    const int axis_bits = m - 1;
    return (gray(static_cast<std::uint32_t>(row)) << axis_bits) |
           gray(static_cast<std::uint32_t>(col));
}

Point2D InnerGray::point(int row, int col) const {
    return {2 * col - (side - 1), (side - 1) - 2 * row};
}

InnerGray inner_gray(int m) {
    if (m < 1) throw std::invalid_argument("inner_gray: m must be >= 1");
    InnerGray g;
    g.m = m;
    g.side = 1 << (m - 1);
    g.bits = 2 * m - 2;
    return g;
}

Point2D cluster_point_s(int tx, int ty, std::uint32_t bits, const InnerGray& g) {
    if (g.m == 1) return {0, 0};
    const int flip_v = (std::abs(ty - 1) / 2) % 2;
    const int flip_h = (std::abs(tx - 1) / 2) % 2;
    const std::uint32_t axis_mask = static_cast<std::uint32_t>(g.side) - 1;
    const int r0 = static_cast<int>(gray_inv(bits >> (g.m - 1)));
    const int c0 = static_cast<int>(gray_inv(bits & axis_mask));
    const int r = flip_v ? g.side - 1 - r0 : r0;
    const int c = flip_h ? g.side - 1 - c0 : c0;
    return g.point(r, c);
}

namespace {

// Intra-cluster bits of symbol `sym` (0 or 1), read most significant
// first from the label's index range.
std::uint32_t cluster_bits(const BitSeq& b, int m, int sym) {
    const int n = 2 * m - 2;
    if (n == 0) return 0;
    const int lo = sym == 0 ? (b.k - 7) / 2 : 0;
    std::uint32_t v = 0;
    for (int t = 0; t < n; ++t)
        v = (v << 1) | static_cast<std::uint32_t>(b.bit(lo + t));
    return v;
}

void store_cluster_bits(BitSeq& b, int m, int sym, std::uint32_t bits) {
    const int n = 2 * m - 2;
    const int lo = sym == 0 ? (b.k - 7) / 2 : 0;
    for (int t = 0; t < n; ++t)
        if ((bits >> (n - 1 - t)) & 1u) b.value |= 1u << (lo + t);
}

}  // namespace

Vec4i map12(const BitSeq& b) {
    if (b.k != 7) throw std::invalid_argument("map12: label must have 7 bits");
    return map_general(b, 1);
}

Vec4i map_general(const BitSeq& b, int m) {
    const int k = bits_per_4d(m);
    if (m < 1 || b.k != k)
        throw std::invalid_argument("map_general: label must have 3+4m bits");
    const std::uint32_t f_idx = (b.value >> (k - 3)) & 0x7u;
    const std::uint32_t signs = (b.value >> (k - 7)) & 0xFu;
    const Vec4i t = sign_apply_d(kBaseTable[f_idx], signs);

    const int scale = 1 << (m - 1);
    Vec4i v{scale * t[0], scale * t[1], scale * t[2], scale * t[3]};
    if (m > 1) {
        const InnerGray g = inner_gray(m);
        for (int sym = 0; sym < 2; ++sym) {
            const Point2D o =
                cluster_point_s(t[2 * sym], t[2 * sym + 1], cluster_bits(b, m, sym), g);
            v[2 * sym] += o.x;
            v[2 * sym + 1] += o.y;
        }
    }
    return v;
}

BitSeq demap_hard(const Vec4i& v, int m) {
    if (m < 1) throw std::invalid_argument("demap_hard: m must be >= 1");
    const int k = bits_per_4d(m);
    const int scale = 1 << (m - 1);
    const int outer = (1 << (m + 1)) - 1;

    Vec4i t{};
    for (int j = 0; j < 4; ++j) {
        const int z = v[j];
        if ((z & 1) == 0 || std::abs(z) > outer)
            throw std::invalid_argument("demap_hard: vector not in mapping image");
        t[j] = (z > 0 ? 1 : -1) * (std::abs(z) < 2 * scale ? 1 : 3);
    }
    const Vec4i abs_tuple{std::abs(t[0]), std::abs(t[1]), std::abs(t[2]), std::abs(t[3])};
    const int f_idx = base_index_of(abs_tuple);
    if (f_idx < 0) throw std::invalid_argument("demap_hard: vector not in mapping image");

    std::uint32_t signs = 0;
    for (int j = 0; j < 4; ++j)
        if (t[j] < 0) signs |= 1u << (3 - j);

    BitSeq b;
    b.k = k;
    b.value = (static_cast<std::uint32_t>(f_idx) << (k - 3)) | (signs << (k - 7));

    if (m > 1) {
        const InnerGray g = inner_gray(m);
        for (int sym = 0; sym < 2; ++sym) {
            const int ox = v[2 * sym] - scale * t[2 * sym];
            const int oy = v[2 * sym + 1] - scale * t[2 * sym + 1];
            if (std::abs(ox) > g.side - 1 || std::abs(oy) > g.side - 1)
                throw std::invalid_argument("demap_hard: vector not in mapping image");
            const int col = (ox + g.side - 1) / 2;
            const int row = (g.side - 1 - oy) / 2;
            const int flip_v = (std::abs(t[2 * sym + 1] - 1) / 2) % 2;
            const int flip_h = (std::abs(t[2 * sym] - 1) / 2) % 2;
            const int r0 = flip_v ? g.side - 1 - row : row;
            const int c0 = flip_h ? g.side - 1 - col : col;
            store_cluster_bits(b, m, sym, g.entry(r0, c0));
        }
    }
    return b;
}

std::vector<Vec4i> enumerate_used(int m) {
    if (m < 1) throw std::invalid_argument("enumerate_used: m must be >= 1");
    const int k = bits_per_4d(m);
    std::vector<Vec4i> out;
    out.reserve(1u << k);
    for (std::uint32_t value = 0; value < (1u << k); ++value)
        out.push_back(map_general(BitSeq{value, k}, m));
    return out;
}

namespace {

bool integral_vec(const Vec4& v) {
    for (double x : v)
        if (std::abs(x) > 1e6 || x != std::nearbyint(x)) return false;
    return true;
}

std::uint64_t pack_vec(const Vec4& v) {
    std::uint64_t key = 0;
    for (int i = 0; i < 4; ++i)
        key = (key << 16) |
              static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(v[i])) + 32768);
    return key;
}

}  // namespace

std::optional<std::uint32_t> Labeling4D::index_of(const Vec4& v) const {
    if (integral_) {
        auto it = inverse_.find(pack_vec(v));
        if (it == inverse_.end()) return std::nullopt;
        return it->second;
    }
    for (std::size_t i = 0; i < signals.size(); ++i)
        if (signals[i] == v) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

Labeling4D Labeling4D::from_signals(std::string name, int k, std::vector<Vec4> signals) {
    if (signals.size() != (1ull << k))
        throw std::invalid_argument("Labeling4D: need exactly 2^k signals");
    Labeling4D lab;
    lab.name = std::move(name);
    lab.k = k;
    lab.signals = std::move(signals);
    lab.es2d = avg_sym_energy(lab.signals);
    lab.integral_ = std::all_of(lab.signals.begin(), lab.signals.end(), integral_vec);
    if (lab.integral_) {
        lab.inverse_.reserve(lab.signals.size() * 2);
        for (std::size_t i = 0; i < lab.signals.size(); ++i) {
            auto [it, fresh] = lab.inverse_.emplace(pack_vec(lab.signals[i]),
                                                    static_cast<std::uint32_t>(i));
            if (!fresh) throw std::invalid_argument("Labeling4D: duplicate signal");
        }
    }
    return lab;
}

Labeling4D cross_labeling(int m) {
    const int k = bits_per_4d(m);
    std::vector<Vec4> signals;
    signals.reserve(1u << k);
    for (const Vec4i& v : enumerate_used(m)) signals.push_back(to_vec4(v));
    return Labeling4D::from_signals("cross-qam-m" + std::to_string(m) + "-gray", k,
                                    std::move(signals));
}

Labeling4D progressive_labeling(const Constellation4D& c, int k) {
    if (c.vectors.size() != (1ull << k))
        throw std::invalid_argument("progressive_labeling: size must be 2^k");
    std::vector<Vec4> sorted = c.vectors;
    std::sort(sorted.begin(), sorted.end());
    return Labeling4D::from_signals(c.name + "-progressive", k, std::move(sorted));
}

GrayReport verify_gray(const Labeling4D& labeling) {
    const MinDistancePairs md = min_distance_pairs(labeling.signals);
    GrayReport rep;
    rep.min_distance = md.min_distance;
    rep.pairs_checked = md.pairs.size();
    for (const auto& [i, j] : md.pairs)
        if (hamming(i, j) != 1) rep.violations.emplace_back(i, j);
    return rep;
}

std::vector<double> per_bit_reliability(const Labeling4D& labeling) {
    const MinDistancePairs md = min_distance_pairs(labeling.signals);
    std::vector<double> frac(static_cast<std::size_t>(labeling.k), 0.0);
    for (const auto& [i, j] : md.pairs) {
        const std::uint32_t diff = i ^ j;
        for (int bit = 0; bit < labeling.k; ++bit)
            if ((diff >> bit) & 1u) frac[static_cast<std::size_t>(bit)] += 1.0;
    }
    for (double& f : frac) f /= static_cast<double>(md.pairs.size());
    return frac;
}

std::string to_csv(const Labeling4D& labeling) {
    std::string out = "bits,x1,y1,x2,y2\n";
    char buf[160];
    for (std::size_t i = 0; i < labeling.signals.size(); ++i) {
        const BitSeq b{static_cast<std::uint32_t>(i), labeling.k};
        const Vec4& v = labeling.signals[i];
        std::snprintf(buf, sizeof buf, "%s,%.12g,%.12g,%.12g,%.12g\n", b.to_string().c_str(),
                      v[0], v[1], v[2], v[3]);
        out += buf;
    }
    return out;
}

}  // namespace xqam
