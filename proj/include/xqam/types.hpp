#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace xqam {

// One 4D signal point = two consecutive complex symbols, stored as
// (x1, y1, x2, y2). Integer variant for exact lattice work, double
// variant for anything that has been scaled or carries noise.
using Vec4 = std::array<double, 4>;
using Vec4i = std::array<int, 4>;

inline Vec4 to_vec4(const Vec4i& v) {
    return {static_cast<double>(v[0]), static_cast<double>(v[1]),
            static_cast<double>(v[2]), static_cast<double>(v[3])};
}

inline double norm2(const Vec4& v) {
    return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
}

inline long norm2(const Vec4i& v) {
    return static_cast<long>(v[0]) * v[0] + static_cast<long>(v[1]) * v[1] +
           static_cast<long>(v[2]) * v[2] + static_cast<long>(v[3]) * v[3];
}

inline double dist2(const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Power of each 2D symbol of a 4D vector.
inline double sym_power(const Vec4& v, int sym) {
    const int j = 2 * sym;
    return v[j] * v[j] + v[j + 1] * v[j + 1];
}

// A k-bit label b_0..b_{k-1}; bit i of `value` is b_i. The string form
// is written b_{k-1} ... b_0 (most significant label bit first).
struct BitSeq {
    std::uint32_t value = 0;
    int k = 0;

    int bit(int i) const { return static_cast<int>((value >> i) & 1u); }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(k), '0');
        for (int i = 0; i < k; ++i)
            if (bit(i)) s[static_cast<std::size_t>(k - 1 - i)] = '1';
        return s;
    }

    static BitSeq from_string(const std::string& s) {
        BitSeq b;
        b.k = static_cast<int>(s.size());
        for (int i = 0; i < b.k; ++i)
            if (s[static_cast<std::size_t>(b.k - 1 - i)] == '1')
                b.value |= (1u << i);
        return b;
    }

    friend bool operator==(const BitSeq&, const BitSeq&) = default;
};

inline int hamming(std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a ^ b);
}

}  // namespace xqam
