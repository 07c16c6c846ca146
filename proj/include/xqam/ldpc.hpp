#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xqam {

// Sparse binary parity-check matrix of a (col_weight, row_weight)-regular
// code, stored as per-row and per-column index lists.
struct ParityCheckMatrix {
    int n = 0;       // codeword bits
    int m_rows = 0;  // parity checks
    int col_weight = 0;
    int row_weight = 0;
    std::vector<std::vector<int>> row_cols;
    std::vector<std::vector<int>> col_rows;
};

// Deterministic pseudorandom regular construction with duplicate-edge and
// 4-cycle elimination by edge swaps. Throws if the bounded repair rounds
// fail to converge (retry with another seed).
ParityCheckMatrix build_h(std::uint64_t seed, int n = 2394, int col_weight = 3,
                          int row_weight = 6);

// Number of unordered row pairs sharing at least two columns.
long count_four_cycles(const ParityCheckMatrix& h);

bool syndrome_zero(const ParityCheckMatrix& h, const std::vector<std::uint8_t>& bits);

std::string to_alist(const ParityCheckMatrix& h);
ParityCheckMatrix from_alist(const std::string& text);

// Systematic encoder from a one-time GF(2) elimination of H. Info bits
// sit on the free (non-pivot) columns of the reduced matrix.
class LdpcEncoder {
public:
    explicit LdpcEncoder(const ParityCheckMatrix& h);

    int rank() const { return rank_; }
    int info_length() const { return static_cast<int>(info_cols_.size()); }
    const std::vector<int>& info_positions() const { return info_cols_; }

    std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& info) const;

private:
    int n_ = 0;
    int rank_ = 0;
    std::size_t words_ = 0;
    std::vector<int> pivot_cols_;
    std::vector<int> info_cols_;
    std::vector<std::uint64_t> rows_;  // RREF rows, rank_ x words_
};

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    bool converged = false;
    int iters = 0;
};

// Flooding sum-product decoding with early exit on zero syndrome.
// Positive LLR means bit 0 is more likely.
DecodeResult decode_bp(const std::vector<double>& llrs, const ParityCheckMatrix& h,
                       int max_iter = 50);

}  // namespace xqam
