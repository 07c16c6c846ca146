#include "xqam/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace xqam {

bool in_cross_shape(int x, int y, int m) {
    const int outer = (1 << (m + 1)) - 1;
    const int inner = 1 << m;
    if ((x & 1) == 0 || (y & 1) == 0) return false;
    if (std::abs(x) > outer || std::abs(y) > outer) return false;
    return !(std::abs(x) > inner && std::abs(y) > inner);
}

Constellation2D build_cross_qam(int m) {
    if (m < 1) throw std::invalid_argument("build_cross_qam: m must be >= 1");
    Constellation2D c;
    c.name = "cross-qam-m" + std::to_string(m);
    c.scale_m = m;
    const int outer = (1 << (m + 1)) - 1;
    for (int x = -outer; x <= outer; x += 2)
        for (int y = -outer; y <= outer; y += 2)
            if (in_cross_shape(x, y, m)) c.points.push_back({x, y});
    return c;
}

namespace {

// Reflected binary Gray code and its inverse.
std::uint32_t gray(std::uint32_t i) { return i ^ (i >> 1); }

std::uint32_t gray_inv(std::uint32_t g) {
    std::uint32_t i = 0;
    for (; g; g >>= 1) i ^= g;
    return i;
}

}  // namespace

Constellation2D build_square_qam(int order) {
    int side = 0;
    switch (order) {
        case 4: side = 2; break;
        case 16: side = 4; break;
        case 64: side = 8; break;
        case 256: side = 16; break;
        default:
            throw std::invalid_argument("build_square_qam: order must be 4, 16, 64 or 256");
    }
    const int axis_bits = [&] {
        int b = 0;
        while ((1 << b) < side) ++b;
        return b;
    }();
    Constellation2D c;
    c.name = "square-qam-" + std::to_string(order);
    c.label_bits = 2 * axis_bits;
    // Axis level i (ascending coordinate) carries the Gray code of i;
    // a full label is x bits followed by y bits.
    for (int xi = 0; xi < side; ++xi)
        for (int yi = 0; yi < side; ++yi) {
            const int x = 2 * xi - (side - 1);
            const int y = 2 * yi - (side - 1);
            c.points.push_back({x, y});
            c.labels.push_back((gray(static_cast<std::uint32_t>(xi)) << axis_bits) |
                               gray(static_cast<std::uint32_t>(yi)));
        }
    return c;
}

Constellation4D build_welti_class1() {
    Constellation4D c;
    c.name = "class1";
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int d = -2; d <= 2; ++d)
                for (int e = -2; e <= 2; ++e) {
                    const int n2 = a * a + b * b + d * d + e * e;
                    if (n2 > 6) continue;
                    if (((a + b + d + e) & 1) != 0) continue;
                    c.vectors.push_back(Vec4{static_cast<double>(a), static_cast<double>(b),
                                             static_cast<double>(d), static_cast<double>(e)});
                }
    c.normalization = 1.0 / std::sqrt(avg_sym_energy(c.vectors));
    return c;
}

namespace {

bool lex_less(const Vec4& a, const Vec4& b) {
    for (int i = 0; i < 4; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace

Constellation4D trim_high_power(const Constellation4D& c, int target) {
    const int n = static_cast<int>(c.vectors.size());
    if (target > n) throw std::invalid_argument("trim_high_power: target exceeds size");
    std::vector<int> order(c.vectors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    // Removal candidates first: highest peak symbol power, then
    // lexicographically largest coordinates.
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        const double pi = std::max(sym_power(c.vectors[i], 0), sym_power(c.vectors[i], 1));
        const double pj = std::max(sym_power(c.vectors[j], 0), sym_power(c.vectors[j], 1));
        if (pi != pj) return pi > pj;
        return lex_less(c.vectors[j], c.vectors[i]);
    });
    std::vector<bool> removed(c.vectors.size(), false);
    for (int i = 0; i < n - target; ++i) removed[static_cast<std::size_t>(order[i])] = true;

    Constellation4D out;
    out.name = c.name + "-trim" + std::to_string(target);
    for (std::size_t i = 0; i < c.vectors.size(); ++i)
        if (!removed[i]) out.vectors.push_back(c.vectors[i]);
    out.normalization = 1.0 / std::sqrt(avg_sym_energy(out.vectors));
    return out;
}

Constellation4D build_dicyclic(int size) {
    if (size < 2 || size % 2 != 0)
        throw std::invalid_argument("build_dicyclic: size must be even and positive");
    Constellation4D c;
    c.name = "dicyclic-" + std::to_string(size);
    const int half = size / 2;
    const double rho = std::sqrt(2.0);  // unit average 2D-symbol energy
    for (int j = 0; j < half; ++j) {
        const double a = 2.0 * M_PI * j / half;
        c.vectors.push_back(Vec4{rho * std::cos(a), rho * std::sin(a), 0.0, 0.0});
    }
    for (int j = 0; j < half; ++j) {
        const double a = 2.0 * M_PI * j / half;
        c.vectors.push_back(Vec4{0.0, 0.0, rho * std::cos(a), rho * std::sin(a)});
    }
    c.normalization = 1.0;
    return c;
}

double constellation_papr_db(const std::vector<std::pair<Vec4, double>>& dist) {
    if (dist.empty()) throw std::invalid_argument("constellation_papr_db: empty distribution");
    double psum = 0.0;
    double peak = 0.0;
    double avg = 0.0;
    for (const auto& [v, p] : dist) {
        psum += p;
        const double p1 = sym_power(v, 0);
        const double p2 = sym_power(v, 1);
        peak = std::max({peak, p1, p2});
        avg += p * 0.5 * (p1 + p2);
    }
    if (std::abs(psum - 1.0) > 1e-12)
        throw std::invalid_argument("constellation_papr_db: probabilities must sum to 1");
    return 10.0 * std::log10(peak / avg);
}

double constellation_papr_db(const Constellation4D& c) {
    std::vector<std::pair<Vec4, double>> dist;
    dist.reserve(c.vectors.size());
    const double p = 1.0 / static_cast<double>(c.vectors.size());
    // Distribute the rounding so the probabilities sum to exactly 1.
    for (const auto& v : c.vectors) dist.emplace_back(v, p);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < dist.size(); ++i) sum += p;
    dist.back().second = 1.0 - sum;
    return constellation_papr_db(dist);
}

namespace {

bool all_integral(const std::vector<Vec4>& pts) {
    for (const auto& v : pts)
        for (double x : v) {
            if (std::abs(x) > 1e6) return false;
            if (x != std::nearbyint(x)) return false;
        }
    return true;
}

std::uint64_t pack_coords(const Vec4& v) {
    std::uint64_t key = 0;
    for (int i = 0; i < 4; ++i) {
        const auto c = static_cast<std::int64_t>(std::llround(v[i]));
        key = (key << 16) | static_cast<std::uint64_t>(c + 32768);
    }
    return key;
}

// Integer offset vectors of squared norm r2, one representative per
// unordered {+d, -d} pair (first nonzero coordinate positive).
std::vector<Vec4i> half_shell(int r2) {
    std::vector<Vec4i> out;
    const int lim = static_cast<int>(std::sqrt(static_cast<double>(r2)));
    for (int a = -lim; a <= lim; ++a)
        for (int b = -lim; b <= lim; ++b)
            for (int c = -lim; c <= lim; ++c)
                for (int d = -lim; d <= lim; ++d) {
                    if (a * a + b * b + c * c + d * d != r2) continue;
                    const Vec4i v{a, b, c, d};
                    int first = 0;
                    for (int x : v)
                        if (x != 0) {
                            first = x;
                            break;
                        }
                    if (first > 0) out.push_back(v);
                }
    return out;
}

MinDistancePairs brute_force_pairs(const std::vector<Vec4>& pts) {
    MinDistancePairs out;
    const std::size_t n = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            best = std::min(best, dist2(pts[i], pts[j]));
    out.min_distance = std::sqrt(best);
    const double cut = best * (1.0 + 2e-9);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist2(pts[i], pts[j]) <= cut)
                out.pairs.emplace_back(static_cast<std::uint32_t>(i),
                                       static_cast<std::uint32_t>(j));
    return out;
}

}  // namespace

MinDistancePairs min_distance_pairs(const std::vector<Vec4>& pts) {
    if (pts.size() < 2) throw std::invalid_argument("min_distance_pairs: need >= 2 points");
    if (!all_integral(pts)) return brute_force_pairs(pts);

    // Integer lattice fast path: probe offset shells of increasing norm
    // against a hash of the point set.
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    index.reserve(pts.size() * 2);
    for (std::size_t i = 0; i < pts.size(); ++i)
        index.emplace(pack_coords(pts[i]), static_cast<std::uint32_t>(i));

    for (int r2 = 1; r2 <= 16; ++r2) {
        MinDistancePairs out;
        for (const Vec4i& d : half_shell(r2)) {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                Vec4 q = pts[i];
                for (int t = 0; t < 4; ++t) q[t] += d[t];
                auto it = index.find(pack_coords(q));
                if (it != index.end())
                    out.pairs.emplace_back(static_cast<std::uint32_t>(i), it->second);
            }
        }
        if (!out.pairs.empty()) {
            out.min_distance = std::sqrt(static_cast<double>(r2));
            for (auto& pr : out.pairs)
                if (pr.first > pr.second) std::swap(pr.first, pr.second);
            std::sort(out.pairs.begin(), out.pairs.end());
            return out;
        }
    }
    return brute_force_pairs(pts);
}

NeighborStats neighbor_stats(const Constellation4D& c) {
    if (c.vectors.size() < 2)
        throw std::invalid_argument("neighbor_stats: need >= 2 vectors");
    const MinDistancePairs md = min_distance_pairs(c.vectors);
    NeighborStats s;
    s.min_distance = md.min_distance;
    s.per_point_counts.assign(c.vectors.size(), 0);
    for (const auto& [i, j] : md.pairs) {
        ++s.per_point_counts[i];
        ++s.per_point_counts[j];
    }
    long total = 0;
    for (int cnt : s.per_point_counts) {
        total += cnt;
        s.max = std::max(s.max, cnt);
    }
    s.avg = static_cast<double>(total) / static_cast<double>(c.vectors.size());
    return s;
}

double avg_sym_energy(const std::vector<Vec4>& vectors) {
    double e = 0.0;
    for (const auto& v : vectors) e += norm2(v);
    return e / (2.0 * static_cast<double>(vectors.size()));
}

namespace {

std::string fmt_coord(double x) {
    char buf[32];
    if (x == std::nearbyint(x) && std::abs(x) < 1e9)
        std::snprintf(buf, sizeof buf, "%d", static_cast<int>(x));
    else
        std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string label_string(std::uint32_t label, int bits) {
    BitSeq b;
    b.value = label;
    b.k = bits;
    return b.to_string();
}

}  // namespace

std::string to_csv(const Constellation2D& c) {
    std::string out = c.labels.empty() ? "x,y\n" : "x,y,bits\n";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        out += std::to_string(c.points[i].x) + "," + std::to_string(c.points[i].y);
        if (!c.labels.empty()) out += "," + label_string(c.labels[i], c.label_bits);
        out += "\n";
    }
    return out;
}

std::string to_csv(const Constellation4D& c) {
    std::string out = "x1,y1,x2,y2\n";
    for (const auto& v : c.vectors) {
        out += fmt_coord(v[0]) + "," + fmt_coord(v[1]) + "," + fmt_coord(v[2]) + "," +
               fmt_coord(v[3]) + "\n";
    }
    return out;
}

}  // namespace xqam
