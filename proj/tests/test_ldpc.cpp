#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xqam/ldpc.hpp"
#include "xqam/rng.hpp"

using namespace xqam;

namespace {

std::vector<std::uint8_t> random_info(int n, Rng& rng) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(n));
    for (auto& b : v) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    return v;
}

}  // namespace

TEST_CASE("construction: regular weights, girth >= 6, full rank at seed 1") {
    const ParityCheckMatrix h = build_h(1);
    REQUIRE(h.n == 2394);
    REQUIRE(h.m_rows == 1197);
    for (const auto& rows : h.col_rows) CHECK(rows.size() == 3);
    for (const auto& cols : h.row_cols) CHECK(cols.size() == 6);

    CHECK(count_four_cycles(h) == 0);

    // Oracle: no two rows share two or more columns.
    long shared_pairs = 0;
    for (int r1 = 0; r1 < h.m_rows; ++r1)
        for (int r2 = r1 + 1; r2 < h.m_rows; ++r2) {
            int shared = 0;
            const auto& a = h.row_cols[static_cast<std::size_t>(r1)];
            const auto& b = h.row_cols[static_cast<std::size_t>(r2)];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] == b[j]) {
                    ++shared;
                    ++i;
                    ++j;
                } else if (a[i] < b[j])
                    ++i;
                else
                    ++j;
            }
            if (shared >= 2) ++shared_pairs;
        }
    CHECK(shared_pairs == 0);

    const LdpcEncoder enc(h);
    CHECK(enc.rank() == 1197);          // full rank: true rate 1/2
    CHECK(enc.info_length() == 1197);   // n - rank

    // Determinism: same seed rebuilds the same matrix.
    const ParityCheckMatrix h2 = build_h(1);
    CHECK(h.row_cols == h2.row_cols);
}

TEST_CASE("encoding: zero maps to zero, syndrome holds, code is linear") {
    const ParityCheckMatrix h = build_h(1);
    const LdpcEncoder enc(h);

    const std::vector<std::uint8_t> zero(static_cast<std::size_t>(enc.info_length()), 0);
    const auto zero_cw = enc.encode(zero);
    CHECK(std::count(zero_cw.begin(), zero_cw.end(), 1) == 0);

    Rng rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_info(enc.info_length(), rng);
        const auto b = random_info(enc.info_length(), rng);
        const auto ca = enc.encode(a);
        const auto cb = enc.encode(b);
        CHECK(syndrome_zero(h, ca));

        std::vector<std::uint8_t> ab(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] ^ b[i];
        const auto cab = enc.encode(ab);
        for (std::size_t i = 0; i < cab.size(); ++i) CHECK(cab[i] == (ca[i] ^ cb[i]));

        // Info bits appear unchanged on the systematic positions.
        for (int i = 0; i < enc.info_length(); ++i)
            CHECK(ca[static_cast<std::size_t>(enc.info_positions()[i])] == a[i]);
    }
}

TEST_CASE("decoding: noiseless fixed point and single-flip correction") {
    const ParityCheckMatrix h = build_h(1);
    const LdpcEncoder enc(h);
    Rng rng(99);
    const auto cw = enc.encode(random_info(enc.info_length(), rng));

    std::vector<double> llrs(static_cast<std::size_t>(h.n));
    for (int i = 0; i < h.n; ++i)
        llrs[static_cast<std::size_t>(i)] = cw[static_cast<std::size_t>(i)] ? -20.0 : 20.0;

    const DecodeResult clean = decode_bp(llrs, h, 50);
    CHECK(clean.converged);
    CHECK(clean.iters == 1);
    CHECK(clean.bits == cw);

    auto flipped = llrs;
    flipped[100] = -flipped[100];
    const DecodeResult fixed = decode_bp(flipped, h, 50);
    CHECK(fixed.converged);
    CHECK(fixed.bits == cw);

    CHECK_THROWS_AS(decode_bp(llrs, h, 0), std::invalid_argument);
    CHECK_THROWS_AS(decode_bp(std::vector<double>(7, 0.0), h, 50), std::invalid_argument);
}

TEST_CASE("coded QPSK at 3.5 dB Eb/N0 is comfortably below 1e-4") {
    const ParityCheckMatrix h = build_h(1);
    const LdpcEncoder enc(h);
    const double rate = static_cast<double>(enc.info_length()) / h.n;
    // BPSK per dimension with unit symbol energy: Ec = rate * Eb.
    const double ebn0 = std::pow(10.0, 3.5 / 10.0);
    const double n0 = 1.0 / (rate * ebn0);
    const double sigma = std::sqrt(n0 / 2.0);

    Rng rng(2024);
    long info_bits = 0;
    long errors = 0;
    for (int frame = 0; frame < 200; ++frame) {
        const auto info = random_info(enc.info_length(), rng);
        const auto cw = enc.encode(info);
        std::vector<double> llrs(static_cast<std::size_t>(h.n));
        for (int i = 0; i < h.n; ++i) {
            const double tx = cw[static_cast<std::size_t>(i)] ? -1.0 : 1.0;
            const double y = tx + sigma * rng.gaussian();
            llrs[static_cast<std::size_t>(i)] = 4.0 * y / n0;  // 2y/(n0/2) per dimension
        }
        const DecodeResult dec = decode_bp(llrs, h, 50);
        for (int i = 0; i < enc.info_length(); ++i) {
            const auto pos = static_cast<std::size_t>(enc.info_positions()[i]);
            if (dec.bits[pos] != cw[pos]) ++errors;
        }
        info_bits += enc.info_length();
    }
    const double ber = static_cast<double>(errors) / static_cast<double>(info_bits);
    CHECK(info_bits >= 200000);
    CHECK(ber < 1e-4);
}

TEST_CASE("alist round-trip") {
    const ParityCheckMatrix h = build_h(5, 96, 3, 6);
    const ParityCheckMatrix back = from_alist(to_alist(h));
    CHECK(back.n == h.n);
    CHECK(back.m_rows == h.m_rows);
    CHECK(back.row_cols == h.row_cols);
    CHECK(back.col_rows == h.col_rows);
}
