#include "xqam/ldpc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "xqam/rng.hpp"

namespace xqam {

namespace {

struct Edge {
    int row;
    int col;
};

std::uint64_t edge_key(int row, int col) {
    return (static_cast<std::uint64_t>(row) << 32) | static_cast<std::uint32_t>(col);
}

ParityCheckMatrix from_edges(const std::vector<Edge>& edges, int n, int m_rows, int wc,
                             int wr) {
    ParityCheckMatrix h;
    h.n = n;
    h.m_rows = m_rows;
    h.col_weight = wc;
    h.row_weight = wr;
    h.row_cols.assign(static_cast<std::size_t>(m_rows), {});
    h.col_rows.assign(static_cast<std::size_t>(n), {});
    for (const Edge& e : edges) {
        h.row_cols[static_cast<std::size_t>(e.row)].push_back(e.col);
        h.col_rows[static_cast<std::size_t>(e.col)].push_back(e.row);
    }
    for (auto& v : h.row_cols) std::sort(v.begin(), v.end());
    for (auto& v : h.col_rows) std::sort(v.begin(), v.end());
    return h;
}

}  // namespace

ParityCheckMatrix build_h(std::uint64_t seed, int n, int col_weight, int row_weight) {
    if (n <= 0 || col_weight <= 0 || row_weight <= 0 ||
        (static_cast<long>(n) * col_weight) % row_weight != 0)
        throw std::invalid_argument("build_h: inconsistent dimensions");
    const int m_rows = n * col_weight / row_weight;
    const int n_edges = n * col_weight;

    Rng rng(stream_seed(seed, 0x1d9c));
    std::vector<int> row_stubs;
    row_stubs.reserve(static_cast<std::size_t>(n_edges));
    for (int r = 0; r < m_rows; ++r)
        for (int w = 0; w < row_weight; ++w) row_stubs.push_back(r);
    rng.shuffle(row_stubs);

    std::vector<Edge> edges(static_cast<std::size_t>(n_edges));
    for (int i = 0; i < n_edges; ++i)
        edges[static_cast<std::size_t>(i)] = {row_stubs[static_cast<std::size_t>(i)],
                                              i / col_weight};

    std::unordered_set<std::uint64_t> keys;
    keys.reserve(static_cast<std::size_t>(n_edges) * 2);

    // Swaps the row endpoints of edges a and b when this creates no
    // duplicate edge.
    auto try_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return false;
        Edge& ea = edges[a];
        Edge& eb = edges[b];
        if (ea.row == eb.row) return false;
        const std::uint64_t ka = edge_key(ea.row, ea.col);
        const std::uint64_t kb = edge_key(eb.row, eb.col);
        const std::uint64_t ka2 = edge_key(eb.row, ea.col);
        const std::uint64_t kb2 = edge_key(ea.row, eb.col);
        if (keys.count(ka2) || keys.count(kb2)) return false;
        keys.erase(ka);
        keys.erase(kb);
        keys.insert(ka2);
        keys.insert(kb2);
        std::swap(ea.row, eb.row);
        return true;
    };

    // Duplicate-edge repair. A pending duplicate holds no claim in
    // `keys`; partners must be edges that do, or the bookkeeping breaks.
    std::vector<std::size_t> dups;
    std::unordered_set<std::size_t> pending;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (!keys.insert(edge_key(edges[i].row, edges[i].col)).second) {
            dups.push_back(i);
            pending.insert(i);
        }
    for (int round = 0; !dups.empty(); ++round) {
        if (round > 1000) throw std::runtime_error("build_h: duplicate repair failed");
        std::vector<std::size_t> still;
        for (std::size_t i : dups) {
            bool fixed = false;
            for (int attempt = 0; attempt < 64 && !fixed; ++attempt) {
                const auto j = static_cast<std::size_t>(rng.below(edges.size()));
                const Edge& ej = edges[j];
                if (j == i || pending.count(j) || ej.row == edges[i].row) continue;
                const std::uint64_t kj = edge_key(ej.row, ej.col);
                const std::uint64_t ki2 = edge_key(ej.row, edges[i].col);
                const std::uint64_t kj2 = edge_key(edges[i].row, ej.col);
                if (keys.count(ki2) || keys.count(kj2)) continue;
                keys.erase(kj);
                keys.insert(ki2);
                keys.insert(kj2);
                std::swap(edges[i].row, edges[j].row);
                pending.erase(i);
                fixed = true;
            }
            if (!fixed) still.push_back(i);
        }
        dups = std::move(still);
    }

    // 4-cycle repair: no two columns may share two rows.
    for (int round = 0;; ++round) {
        if (round > 200) throw std::runtime_error("build_h: girth repair failed");
        // Map from unordered row pair to the column that claimed it.
        std::unordered_map<std::uint64_t, int> pair_col;
        pair_col.reserve(static_cast<std::size_t>(n) * 4);
        std::vector<std::size_t> offenders;  // edge index to reassign
        std::vector<std::vector<std::size_t>> col_edges(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < edges.size(); ++i)
            col_edges[static_cast<std::size_t>(edges[i].col)].push_back(i);
        for (int c = 0; c < n; ++c) {
            const auto& ce = col_edges[static_cast<std::size_t>(c)];
            bool bad = false;
            for (std::size_t a = 0; a < ce.size() && !bad; ++a)
                for (std::size_t b = a + 1; b < ce.size() && !bad; ++b) {
                    int r1 = edges[ce[a]].row;
                    int r2 = edges[ce[b]].row;
                    if (r1 > r2) std::swap(r1, r2);
                    const std::uint64_t key =
                        (static_cast<std::uint64_t>(r1) << 32) | static_cast<std::uint32_t>(r2);
                    auto [it, fresh] = pair_col.emplace(key, c);
                    if (!fresh) {
                        offenders.push_back(ce[b]);
                        bad = true;
                    }
                }
        }
        if (offenders.empty()) break;
        for (std::size_t i : offenders) {
            for (int attempt = 0; attempt < 256; ++attempt)
                if (try_swap(i, static_cast<std::size_t>(rng.below(edges.size())))) break;
        }
    }

    return from_edges(edges, n, m_rows, col_weight, row_weight);
}

long count_four_cycles(const ParityCheckMatrix& h) {
    long cycles = 0;
    std::unordered_map<std::uint64_t, int> pair_count;
    pair_count.reserve(static_cast<std::size_t>(h.n) * 4);
    for (int c = 0; c < h.n; ++c) {
        const auto& rows = h.col_rows[static_cast<std::size_t>(c)];
        for (std::size_t a = 0; a < rows.size(); ++a)
            for (std::size_t b = a + 1; b < rows.size(); ++b) {
                const std::uint64_t key = (static_cast<std::uint64_t>(rows[a]) << 32) |
                                          static_cast<std::uint32_t>(rows[b]);
                ++pair_count[key];
            }
    }
    for (const auto& [key, cnt] : pair_count)
        if (cnt > 1) cycles += static_cast<long>(cnt) * (cnt - 1) / 2;
    return cycles;
}

bool syndrome_zero(const ParityCheckMatrix& h, const std::vector<std::uint8_t>& bits) {
    for (const auto& cols : h.row_cols) {
        int parity = 0;
        for (int c : cols) parity ^= bits[static_cast<std::size_t>(c)];
        if (parity) return false;
    }
    return true;
}

std::string to_alist(const ParityCheckMatrix& h) {
    std::ostringstream os;
    os << h.n << " " << h.m_rows << "\n";
    os << h.col_weight << " " << h.row_weight << "\n";
    for (int c = 0; c < h.n; ++c)
        os << h.col_rows[static_cast<std::size_t>(c)].size() << (c + 1 < h.n ? " " : "\n");
    for (int r = 0; r < h.m_rows; ++r)
        os << h.row_cols[static_cast<std::size_t>(r)].size()
           << (r + 1 < h.m_rows ? " " : "\n");
    for (const auto& rows : h.col_rows) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            os << rows[i] + 1 << (i + 1 < rows.size() ? " " : "\n");
    }
    for (const auto& cols : h.row_cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << cols[i] + 1 << (i + 1 < cols.size() ? " " : "\n");
    }
    return os.str();
}

ParityCheckMatrix from_alist(const std::string& text) {
    std::istringstream is(text);
    ParityCheckMatrix h;
    if (!(is >> h.n >> h.m_rows >> h.col_weight >> h.row_weight))
        throw std::invalid_argument("from_alist: malformed header");
    std::vector<int> cw(static_cast<std::size_t>(h.n));
    std::vector<int> rw(static_cast<std::size_t>(h.m_rows));
    for (auto& w : cw) is >> w;
    for (auto& w : rw) is >> w;
    h.col_rows.assign(static_cast<std::size_t>(h.n), {});
    h.row_cols.assign(static_cast<std::size_t>(h.m_rows), {});
    for (int c = 0; c < h.n; ++c)
        for (int i = 0; i < cw[static_cast<std::size_t>(c)]; ++i) {
            int r;
            if (!(is >> r)) throw std::invalid_argument("from_alist: truncated column list");
            h.col_rows[static_cast<std::size_t>(c)].push_back(r - 1);
        }
    for (int r = 0; r < h.m_rows; ++r)
        for (int i = 0; i < rw[static_cast<std::size_t>(r)]; ++i) {
            int c;
            if (!(is >> c)) throw std::invalid_argument("from_alist: truncated row list");
            h.row_cols[static_cast<std::size_t>(r)].push_back(c - 1);
        }
    return h;
}

LdpcEncoder::LdpcEncoder(const ParityCheckMatrix& h) : n_(h.n) {
    words_ = static_cast<std::size_t>((h.n + 63) / 64);
    std::vector<std::vector<std::uint64_t>> rows(
        static_cast<std::size_t>(h.m_rows), std::vector<std::uint64_t>(words_, 0));
    for (int r = 0; r < h.m_rows; ++r)
        for (int c : h.row_cols[static_cast<std::size_t>(r)])
            rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c) / 64] |=
                1ull << (c % 64);

    // Gauss-Jordan to reduced row-echelon form.
    int pivot_row = 0;
    std::vector<char> is_pivot(static_cast<std::size_t>(h.n), 0);
    for (int c = 0; c < h.n && pivot_row < h.m_rows; ++c) {
        const std::size_t w = static_cast<std::size_t>(c) / 64;
        const std::uint64_t mask = 1ull << (c % 64);
        int found = -1;
        for (int r = pivot_row; r < h.m_rows; ++r)
            if (rows[static_cast<std::size_t>(r)][w] & mask) {
                found = r;
                break;
            }
        if (found < 0) continue;
        std::swap(rows[static_cast<std::size_t>(pivot_row)], rows[static_cast<std::size_t>(found)]);
        for (int r = 0; r < h.m_rows; ++r) {
            if (r == pivot_row) continue;
            if (rows[static_cast<std::size_t>(r)][w] & mask)
                for (std::size_t i = 0; i < words_; ++i)
                    rows[static_cast<std::size_t>(r)][i] ^=
                        rows[static_cast<std::size_t>(pivot_row)][i];
        }
        pivot_cols_.push_back(c);
        is_pivot[static_cast<std::size_t>(c)] = 1;
        ++pivot_row;
    }
    rank_ = pivot_row;
    for (int c = 0; c < h.n; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) info_cols_.push_back(c);

    rows_.assign(static_cast<std::size_t>(rank_) * words_, 0);
    for (int r = 0; r < rank_; ++r)
        for (std::size_t i = 0; i < words_; ++i)
            rows_[static_cast<std::size_t>(r) * words_ + i] = rows[static_cast<std::size_t>(r)][i];
}

std::vector<std::uint8_t> LdpcEncoder::encode(const std::vector<std::uint8_t>& info) const {
    if (info.size() != info_cols_.size())
        throw std::invalid_argument("encode: wrong info length");
    std::vector<std::uint64_t> cw_words(words_, 0);
    for (std::size_t i = 0; i < info.size(); ++i)
        if (info[i]) {
            const int c = info_cols_[i];
            cw_words[static_cast<std::size_t>(c) / 64] |= 1ull << (c % 64);
        }
    // Each RREF row reads b_pivot = parity of its free-column bits.
    for (int r = 0; r < rank_; ++r) {
        const std::uint64_t* row = &rows_[static_cast<std::size_t>(r) * words_];
        int parity = 0;
        for (std::size_t i = 0; i < words_; ++i)
            parity ^= __builtin_parityll(row[i] & cw_words[i]);
        if (parity) {
            const int p = pivot_cols_[static_cast<std::size_t>(r)];
            cw_words[static_cast<std::size_t>(p) / 64] |= 1ull << (p % 64);
        }
    }
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n_));
    for (int c = 0; c < n_; ++c)
        out[static_cast<std::size_t>(c)] =
            static_cast<std::uint8_t>((cw_words[static_cast<std::size_t>(c) / 64] >> (c % 64)) & 1);
    return out;
}

namespace {

constexpr double kLlrClip = 30.0;

double clip(double x) { return std::clamp(x, -kLlrClip, kLlrClip); }

// Stable pairwise check-node combination (tanh rule).
double boxplus(double a, double b) {
    const double mag = std::min(std::abs(a), std::abs(b));
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sign * mag + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

DecodeResult decode_bp(const std::vector<double>& llrs, const ParityCheckMatrix& h,
                       int max_iter) {
    if (static_cast<int>(llrs.size()) != h.n)
        throw std::invalid_argument("decode_bp: wrong LLR length");
    if (max_iter < 1) throw std::invalid_argument("decode_bp: max_iter must be >= 1");

    // Edge layout: contiguous per row.
    std::vector<int> edge_col;
    std::vector<std::size_t> row_begin(static_cast<std::size_t>(h.m_rows) + 1, 0);
    for (int r = 0; r < h.m_rows; ++r) {
        row_begin[static_cast<std::size_t>(r) + 1] =
            row_begin[static_cast<std::size_t>(r)] + h.row_cols[static_cast<std::size_t>(r)].size();
        for (int c : h.row_cols[static_cast<std::size_t>(r)]) edge_col.push_back(c);
    }
    const std::size_t n_edges = edge_col.size();
    std::vector<std::vector<std::size_t>> col_edges(static_cast<std::size_t>(h.n));
    for (std::size_t e = 0; e < n_edges; ++e)
        col_edges[static_cast<std::size_t>(edge_col[e])].push_back(e);

    std::vector<double> v2c(n_edges), c2v(n_edges, 0.0);
    for (std::size_t e = 0; e < n_edges; ++e)
        v2c[e] = clip(llrs[static_cast<std::size_t>(edge_col[e])]);

    DecodeResult res;
    res.bits.assign(static_cast<std::size_t>(h.n), 0);
    std::vector<double> fwd(16), bwd(16);

    for (int iter = 1; iter <= max_iter; ++iter) {
        // Check-node update via forward/backward partial combinations.
        for (int r = 0; r < h.m_rows; ++r) {
            const std::size_t b = row_begin[static_cast<std::size_t>(r)];
            const std::size_t deg = row_begin[static_cast<std::size_t>(r) + 1] - b;
            if (deg < 2) {
                if (deg == 1) c2v[b] = kLlrClip;
                continue;
            }
            if (deg > fwd.size()) {
                fwd.resize(deg);
                bwd.resize(deg);
            }
            fwd[0] = v2c[b];
            for (std::size_t i = 1; i < deg; ++i) fwd[i] = boxplus(fwd[i - 1], v2c[b + i]);
            bwd[deg - 1] = v2c[b + deg - 1];
            for (std::size_t i = deg - 1; i-- > 0;) bwd[i] = boxplus(bwd[i + 1], v2c[b + i]);
            c2v[b] = bwd[1];
            c2v[b + deg - 1] = fwd[deg - 2];
            for (std::size_t i = 1; i + 1 < deg; ++i)
                c2v[b + i] = boxplus(fwd[i - 1], bwd[i + 1]);
        }
        // Variable-node update and hard decisions.
        for (int c = 0; c < h.n; ++c) {
            double total = llrs[static_cast<std::size_t>(c)];
            for (std::size_t e : col_edges[static_cast<std::size_t>(c)]) total += c2v[e];
            res.bits[static_cast<std::size_t>(c)] = total < 0.0 ? 1 : 0;
            for (std::size_t e : col_edges[static_cast<std::size_t>(c)])
                v2c[e] = clip(total - c2v[e]);
        }
        res.iters = iter;
        if (syndrome_zero(h, res.bits)) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace xqam
