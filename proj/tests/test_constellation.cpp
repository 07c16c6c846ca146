#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "xqam/constellation.hpp"

using namespace xqam;

namespace {

std::set<std::pair<int, int>> point_set(const Constellation2D& c) {
    std::set<std::pair<int, int>> s;
    for (const auto& p : c.points) s.insert({p.x, p.y});
    return s;
}

std::set<std::array<double, 4>> vector_set(const std::vector<Vec4>& v) {
    return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("cross QAM m=1 is the 12 cross points in lexicographic order") {
    const Constellation2D c = build_cross_qam(1);
    REQUIRE(c.points.size() == 12);
    const std::set<std::pair<int, int>> expect = {
        {-1, -1}, {-1, 1},  {-1, -3}, {-1, 3}, {1, -1}, {1, 1},
        {1, -3},  {1, 3},   {-3, -1}, {-3, 1}, {3, -1}, {3, 1}};
    CHECK(point_set(c) == expect);
    CHECK(std::is_sorted(c.points.begin(), c.points.end(), [](auto a, auto b) {
        return std::pair(a.x, a.y) < std::pair(b.x, b.y);
    }));
}

TEST_CASE("cross QAM m=2 removes the corner quarter") {
    const Constellation2D c = build_cross_qam(2);
    REQUIRE(c.points.size() == 48);
    for (const auto& p : c.points) {
        CHECK(std::abs(p.x) <= 7);
        CHECK(std::abs(p.y) <= 7);
        CHECK(p.x % 2 != 0);
        CHECK(p.y % 2 != 0);
        CHECK_FALSE((std::abs(p.x) > 4 && std::abs(p.y) > 4));
    }
}

TEST_CASE("cross QAM counts and shape closure for m = 1..4") {
    for (int m = 1; m <= 4; ++m) {
        const Constellation2D c = build_cross_qam(m);
        CHECK(c.points.size() == 3u * (1u << (2 * m)));
        CHECK(point_set(c).size() == c.points.size());
        for (const auto& p : c.points) CHECK(in_cross_shape(p.x, p.y, m));
    }
    CHECK_THROWS_AS(build_cross_qam(0), std::invalid_argument);
}

TEST_CASE("square QAM basics and Gray labels") {
    CHECK(point_set(build_square_qam(4)) ==
          std::set<std::pair<int, int>>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
    const Constellation2D c = build_square_qam(16);
    REQUIRE(c.points.size() == 16);
    for (const auto& p : c.points) {
        CHECK((std::abs(p.x) == 1 || std::abs(p.x) == 3));
        CHECK((std::abs(p.y) == 1 || std::abs(p.y) == 3));
    }
    // 2D Gray property: points at distance 2 differ in exactly one bit.
    for (std::size_t i = 0; i < c.points.size(); ++i)
        for (std::size_t j = i + 1; j < c.points.size(); ++j) {
            const int dx = c.points[i].x - c.points[j].x;
            const int dy = c.points[i].y - c.points[j].y;
            if (dx * dx + dy * dy == 4)
                CHECK(hamming(c.labels[i], c.labels[j]) == 1);
        }
    CHECK_THROWS_AS(build_square_qam(32), std::invalid_argument);
}

TEST_CASE("Class I set matches a brute-force lattice enumeration") {
    const Constellation4D c = build_welti_class1();
    REQUIRE(c.vectors.size() == 145);

    // Oracle: all integer 4-tuples with |coord| <= 3, even coordinate
    // sum and squared norm <= 6.
    std::vector<Vec4> oracle;
    std::map<int, int> shells;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int d = -3; d <= 3; ++d)
                for (int e = -3; e <= 3; ++e) {
                    const int n2 = a * a + b * b + d * d + e * e;
                    if (n2 > 6 || (a + b + d + e) % 2 != 0) continue;
                    oracle.push_back(Vec4{double(a), double(b), double(d), double(e)});
                    ++shells[n2];
                }
    CHECK(vector_set(c.vectors) == vector_set(oracle));
    CHECK(shells[0] == 1);
    CHECK(shells[2] == 24);
    CHECK(shells[4] == 24);
    CHECK(shells[6] == 96);

    CHECK(vector_set(c.vectors).count({1, 1, 0, 0}) == 1);
    CHECK(vector_set(c.vectors).count({1, 0, 0, 0}) == 0);
}

TEST_CASE("trim keeps 128 vectors and removes only peak-power-5 points") {
    const Constellation4D full = build_welti_class1();
    const Constellation4D t = trim_high_power(full, 128);
    REQUIRE(t.vectors.size() == 128);

    const auto kept = vector_set(t.vectors);
    int removed = 0;
    for (const auto& v : full.vectors)
        if (!kept.count(v)) {
            ++removed;
            CHECK(std::max(sym_power(v, 0), sym_power(v, 1)) == doctest::Approx(5.0));
        }
    CHECK(removed == 17);

    // Deterministic, identity at full size, invalid target rejected.
    CHECK(trim_high_power(full, 128).vectors == t.vectors);
    CHECK(trim_high_power(full, 145).vectors == full.vectors);
    CHECK_THROWS_AS(trim_high_power(full, 146), std::invalid_argument);

    // Peak 5 over average 618/256.
    CHECK(constellation_papr_db(t) == doctest::Approx(10.0 * std::log10(1280.0 / 618.0))
                                          .epsilon(1e-12));
    CHECK(constellation_papr_db(t) == doctest::Approx(3.162).epsilon(2e-4));
}

TEST_CASE("dicyclic constellation: two orthogonal PSK rings at 3.01 dB") {
    const Constellation4D c = build_dicyclic(128);
    REQUIRE(c.vectors.size() == 128);
    for (int j = 0; j < 64; ++j) {
        CHECK(sym_power(c.vectors[j], 1) == 0.0);
        CHECK(sym_power(c.vectors[j], 0) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sym_power(c.vectors[64 + j], 0) == 0.0);
    }
    CHECK(constellation_papr_db(c) == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-9));
    const NeighborStats ns = neighbor_stats(c);
    CHECK(ns.min_distance ==
          doctest::Approx(2.0 * std::sqrt(2.0) * std::sin(M_PI / 64.0)).epsilon(1e-9));
    CHECK_THROWS_AS(build_dicyclic(127), std::invalid_argument);
}

TEST_CASE("constellation PAPR basics") {
    CHECK(constellation_papr_db({{Vec4{1, 3, 1, 3}, 1.0}}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(constellation_papr_db(std::vector<std::pair<Vec4, double>>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(constellation_papr_db({{Vec4{1, 1, 1, 1}, 0.5}}), std::invalid_argument);

    // Constant 2D-power set is 0 dB.
    Constellation4D qpsk;
    for (int s = 0; s < 16; ++s)
        qpsk.vectors.push_back(Vec4{s & 1 ? 1.0 : -1.0, s & 2 ? 1.0 : -1.0,
                                    s & 4 ? 1.0 : -1.0, s & 8 ? 1.0 : -1.0});
    CHECK(constellation_papr_db(qpsk) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("neighbor stats on a two-point set") {
    Constellation4D c;
    c.vectors = {Vec4{0, 0, 0, 0}, Vec4{3, 0, 0, 0}};
    const NeighborStats ns = neighbor_stats(c);
    CHECK(ns.min_distance == doctest::Approx(3.0));
    CHECK(ns.per_point_counts == std::vector<int>{1, 1});
    CHECK(ns.avg == doctest::Approx(1.0));
    CHECK(ns.max == 1);
}

TEST_CASE("trimmed Class I neighbor statistics match the brute-force oracle") {
    const Constellation4D t = trim_high_power(build_welti_class1(), 128);
    const NeighborStats ns = neighbor_stats(t);
    CHECK(ns.min_distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ns.max == 24);
    // 863 minimum-distance pairs over 128 points for this trim choice.
    CHECK(ns.avg == doctest::Approx(13.484375).epsilon(1e-12));
    CHECK(ns.avg > 13.58 - 0.7);
    CHECK(ns.avg < 13.58 + 0.7);

    // Oracle: quadratic rescan of all pairwise distances.
    std::vector<int> counts(t.vectors.size(), 0);
    for (std::size_t i = 0; i < t.vectors.size(); ++i)
        for (std::size_t j = i + 1; j < t.vectors.size(); ++j)
            if (std::abs(dist2(t.vectors[i], t.vectors[j]) - 2.0) < 1e-9) {
                ++counts[i];
                ++counts[j];
            }
    CHECK(counts == ns.per_point_counts);
}

TEST_CASE("CSV export shapes") {
    const Constellation2D c2 = build_square_qam(16);
    const std::string csv2 = to_csv(c2);
    CHECK(csv2.rfind("x,y,bits\n", 0) == 0);
    CHECK(std::count(csv2.begin(), csv2.end(), '\n') == 17);

    const Constellation4D c4 = build_dicyclic(128);
    const std::string csv4 = to_csv(c4);
    CHECK(csv4.rfind("x1,y1,x2,y2\n", 0) == 0);
    CHECK(std::count(csv4.begin(), csv4.end(), '\n') == 129);
}
