#include "xqam/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "xqam/detection.hpp"
#include "xqam/rng.hpp"

namespace xqam {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(chunk_index, rng) for indices [first, first + count) across
// worker threads. Results land in a vector ordered by chunk index, so
// any aggregation over them is independent of scheduling.
template <typename Result>
std::vector<Result> run_chunks(long first, long count, int threads, std::uint64_t seed,
                               const std::function<Result(long, Rng&)>& fn) {
    std::vector<Result> results(static_cast<std::size_t>(count));
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            Rng rng(stream_seed(seed, static_cast<std::uint64_t>(first + i)));
            results[static_cast<std::size_t>(i)] = fn(first + i, rng);
        }
    };
    const int nt = std::min<long>(resolve_threads(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace

// --------------------------------------------------------------------
// Configuration

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        cfg.apply_kv(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void ExperimentConfig::apply_kv(const std::string& key, const std::string& value) {
    auto as_long = [&] { return std::stol(value); };
    if (key == "kind") kind = value;
    else if (key == "constellation") constellation = value;
    else if (key == "m") m = static_cast<int>(as_long());
    else if (key == "qam_order") qam_order = static_cast<int>(as_long());
    else if (key == "labeling") labeling = value;
    else if (key == "snr_db") {
        snr_db.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) snr_db.push_back(std::stod(tok));
    } else if (key == "max_vectors") max_vectors = as_long();
    else if (key == "max_frames") max_frames = as_long();
    else if (key == "target_errors") target_errors = as_long();
    else if (key == "subcarriers") subcarriers = static_cast<int>(as_long());
    else if (key == "total_subcarriers") total_subcarriers = static_cast<int>(as_long());
    else if (key == "oversample") oversample = static_cast<int>(as_long());
    else if (key == "symbols") symbols = as_long();
    else if (key == "ldpc_seed") ldpc_seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "ldpc_iters") ldpc_iters = static_cast<int>(as_long());
    else if (key == "seed") seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "threads") threads = static_cast<int>(as_long());
    else if (key == "out_dir") out_dir = value;
    else throw std::runtime_error("unknown config key: " + key);
}

std::string ExperimentConfig::to_kv_text() const {
    std::ostringstream os;
    os << "kind = " << kind << "\n";
    os << "constellation = " << constellation << "\n";
    os << "m = " << m << "\n";
    os << "qam_order = " << qam_order << "\n";
    os << "labeling = " << labeling << "\n";
    os << "snr_db = ";
    for (std::size_t i = 0; i < snr_db.size(); ++i)
        os << (i ? "," : "") << fmt(snr_db[i]);
    os << "\n";
    os << "max_vectors = " << max_vectors << "\n";
    os << "max_frames = " << max_frames << "\n";
    os << "target_errors = " << target_errors << "\n";
    os << "subcarriers = " << subcarriers << "\n";
    os << "total_subcarriers = " << total_subcarriers << "\n";
    os << "oversample = " << oversample << "\n";
    os << "symbols = " << symbols << "\n";
    os << "ldpc_seed = " << ldpc_seed << "\n";
    os << "ldpc_iters = " << ldpc_iters << "\n";
    os << "seed = " << seed << "\n";
    os << "threads = " << threads << "\n";
    os << "out_dir = " << out_dir << "\n";
    return os.str();
}

// --------------------------------------------------------------------
// Selection

namespace {

// 4D product of two independently labeled square-QAM symbols.
Labeling4D square_product_labeling(int order) {
    const Constellation2D c2 = build_square_qam(order);
    const int k = 2 * c2.label_bits;
    std::vector<Vec4> signals(1ull << k);
    for (std::size_t i = 0; i < c2.points.size(); ++i)
        for (std::size_t j = 0; j < c2.points.size(); ++j) {
            const std::uint32_t value =
                (c2.labels[i] << c2.label_bits) | c2.labels[j];
            signals[value] = Vec4{static_cast<double>(c2.points[i].x),
                                  static_cast<double>(c2.points[i].y),
                                  static_cast<double>(c2.points[j].x),
                                  static_cast<double>(c2.points[j].y)};
        }
    return Labeling4D::from_signals(c2.name + "-4d-gray", k, std::move(signals));
}

int log2_exact(std::size_t n) {
    int k = 0;
    while ((1ull << k) < n) ++k;
    if ((1ull << k) != n) throw std::runtime_error("size is not a power of two");
    return k;
}

}  // namespace

Constellation4D build_constellation4d(const ExperimentConfig& cfg) {
    if (cfg.constellation == "cross-qam") {
        Constellation4D c;
        c.name = "cross-qam-m" + std::to_string(cfg.m) + "-4d";
        for (const Vec4i& v : enumerate_used(cfg.m)) c.vectors.push_back(to_vec4(v));
        c.normalization = 1.0 / std::sqrt(avg_sym_energy(c.vectors));
        return c;
    }
    if (cfg.constellation == "class1-trim")
        return trim_high_power(build_welti_class1(), 128);
    if (cfg.constellation == "dicyclic") return build_dicyclic(128);
    if (cfg.constellation == "square-qam") {
        const Labeling4D lab = square_product_labeling(cfg.qam_order);
        Constellation4D c;
        c.name = "square-qam-" + std::to_string(cfg.qam_order) + "-4d";
        c.vectors = lab.signals;
        c.normalization = 1.0 / std::sqrt(lab.es2d);
        return c;
    }
    throw std::runtime_error("unknown constellation: " + cfg.constellation);
}

Labeling4D build_labeling(const ExperimentConfig& cfg) {
    const bool gray = cfg.labeling == "gray";
    if (!gray && cfg.labeling != "progressive")
        throw std::runtime_error("unknown labeling: " + cfg.labeling);
    if (cfg.constellation == "cross-qam") {
        if (gray) return cross_labeling(cfg.m);
        return progressive_labeling(build_constellation4d(cfg), bits_per_4d(cfg.m));
    }
    if (cfg.constellation == "class1-trim") {
        if (gray)
            throw std::runtime_error(
                "configuration error: the trimmed Class I constellation admits no Gray "
                "labeling (points have up to 24 nearest neighbors, more than the 7 "
                "label bits can absorb); use labeling = progressive");
        return progressive_labeling(build_constellation4d(cfg), 7);
    }
    if (cfg.constellation == "dicyclic") {
        if (gray)
            throw std::runtime_error(
                "configuration error: the dicyclic constellation is not Gray-labelable "
                "with this toolkit; use labeling = progressive");
        return progressive_labeling(build_constellation4d(cfg), 7);
    }
    if (cfg.constellation == "square-qam") {
        if (gray) return square_product_labeling(cfg.qam_order);
        const Constellation4D c = build_constellation4d(cfg);
        return progressive_labeling(c, log2_exact(c.vectors.size()));
    }
    throw std::runtime_error("unknown constellation: " + cfg.constellation);
}

// --------------------------------------------------------------------
// Campaigns

double wilson_halfwidth(long errors, long trials) {
    if (trials <= 0) return 0.0;
    const double z = 1.96;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double denom = 1.0 + z * z / n;
    return z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
}

GrayReport run_verify_gray(const ExperimentConfig& cfg) {
    return verify_gray(build_labeling(cfg));
}

PaprResult run_papr(const ExperimentConfig& cfg) {
    const Labeling4D lab = build_labeling(cfg);
    const MlDetector det(lab);  // normalized signal set
    if (cfg.subcarriers % 2 != 0)
        throw std::runtime_error("papr: subcarriers must be even (two symbols per vector)");
    const WaveformConfig wf{cfg.subcarriers, cfg.total_subcarriers, cfg.oversample, 0};

    const long chunk_symbols = 2000;
    const long n_chunks = (cfg.symbols + chunk_symbols - 1) / chunk_symbols;
    const auto chunks = run_chunks<std::vector<double>>(
        0, n_chunks, cfg.threads, cfg.seed, [&](long chunk, Rng& rng) {
            const long want =
                std::min(chunk_symbols, cfg.symbols - chunk * chunk_symbols);
            DftsOfdmModulator mod(wf);
            std::vector<cplx> syms(static_cast<std::size_t>(wf.m_used));
            std::vector<double> samples;
            samples.reserve(static_cast<std::size_t>(want));
            const auto& signals = det.signals();
            for (long s = 0; s < want; ++s) {
                for (int i = 0; i < wf.m_used; i += 2) {
                    const auto& v = signals[rng.below(signals.size())];
                    syms[static_cast<std::size_t>(i)] = cplx(v[0], v[1]);
                    syms[static_cast<std::size_t>(i) + 1] = cplx(v[2], v[3]);
                }
                samples.push_back(papr_db(mod.synthesize(syms)));
            }
            return samples;
        });

    PaprResult res;
    res.source_name = lab.name;
    res.samples_db.reserve(static_cast<std::size_t>(cfg.symbols));
    for (const auto& c : chunks)
        res.samples_db.insert(res.samples_db.end(), c.begin(), c.end());

    std::vector<double> grid;
    for (int i = 0; i <= 260; ++i) grid.push_back(0.05 * i);
    res.curve = ccdf(res.samples_db, grid);
    res.q10 = papr_at_ccdf(res.samples_db, 1e-1);
    res.q100 = papr_at_ccdf(res.samples_db, 1e-2);
    res.q1000 = papr_at_ccdf(res.samples_db, 1e-3);
    return res;
}

namespace {

struct UncodedChunk {
    long vectors = 0;
    long bit_errors = 0;
    std::vector<long> per_bit;
};

}  // namespace

BerResult run_ber_uncoded(const ExperimentConfig& cfg) {
    const Labeling4D lab = build_labeling(cfg);
    const MlDetector det(lab);
    const int k = lab.k;
    const std::uint32_t mask = (1u << k) - 1;

    BerResult out;
    out.labeling_name = lab.name;
    out.k = k;

    const long chunk_vectors = 25000;
    for (double ebn0 : cfg.snr_db) {
        const double n0 = snr_to_n0({ebn0, k, 1.0});
        long done = 0;
        long errors = 0;
        std::vector<long> per_bit(static_cast<std::size_t>(k), 0);
        long chunk_base = 0;
        // Fixed wave size: the stopping rule sees aggregates at wave
        // boundaries only, so results do not depend on the thread count.
        const long wave = 8;
        // Per-SNR-point stream offset keeps chunks independent across points.
        const std::uint64_t point_seed =
            stream_seed(cfg.seed, static_cast<std::uint64_t>(std::llround(ebn0 * 1000.0)) + 17);
        while (done < cfg.max_vectors && errors < cfg.target_errors) {
            const long todo =
                std::min<long>(wave, (cfg.max_vectors - done + chunk_vectors - 1) / chunk_vectors);
            const auto results = run_chunks<UncodedChunk>(
                chunk_base, todo, cfg.threads, point_seed, [&](long, Rng& rng) {
                    UncodedChunk c;
                    c.per_bit.assign(static_cast<std::size_t>(k), 0);
                    const long want = chunk_vectors;
                    for (long i = 0; i < want; ++i) {
                        const auto value =
                            static_cast<std::uint32_t>(rng.next_u64()) & mask;
                        const Vec4 r = add_awgn(det.signals()[value], n0, rng);
                        const std::uint32_t diff = value ^ det.detect_index(r);
                        if (diff) {
                            c.bit_errors += hamming(diff, 0);
                            for (int b = 0; b < k; ++b)
                                if ((diff >> b) & 1u) ++c.per_bit[static_cast<std::size_t>(b)];
                        }
                    }
                    c.vectors = want;
                    return c;
                });
            for (const auto& c : results) {
                done += c.vectors;
                errors += c.bit_errors;
                for (int b = 0; b < k; ++b)
                    per_bit[static_cast<std::size_t>(b)] += c.per_bit[static_cast<std::size_t>(b)];
            }
            chunk_base += todo;
        }
        BerPoint pt;
        pt.ebn0_db = ebn0;
        pt.units = done;
        pt.bits = done * k;
        pt.errors = errors;
        pt.ber = pt.bits ? static_cast<double>(errors) / static_cast<double>(pt.bits) : 0.0;
        pt.ci_halfwidth = wilson_halfwidth(errors, pt.bits);
        for (int b = 0; b < k; ++b)
            pt.per_bit_ber.push_back(static_cast<double>(per_bit[static_cast<std::size_t>(b)]) /
                                     static_cast<double>(done));
        out.points.push_back(std::move(pt));
    }
    return out;
}

namespace {

struct CodedChunk {
    long frames = 0;
    long info_bits = 0;
    long bit_errors = 0;
    long frame_errors = 0;
    long iters = 0;
};

}  // namespace

BerResult run_ber_coded(const ExperimentConfig& cfg) {
    const Labeling4D lab = build_labeling(cfg);
    const MlDetector det(lab);
    const int k = lab.k;
    const ParityCheckMatrix h = build_h(cfg.ldpc_seed);
    const LdpcEncoder enc(h);
    if (h.n % k != 0)
        throw std::runtime_error("ber-coded: blocklength is not a multiple of bits per vector");
    const int vectors_per_frame = h.n / k;
    const int info_len = enc.info_length();

    BerResult out;
    out.labeling_name = lab.name;
    out.k = k;

    const long chunk_frames = 8;
    for (double ebn0 : cfg.snr_db) {
        // Information-bit Eb: each 4D vector carries k*R info bits over
        // two unit-energy 2D symbols.
        const double rate = static_cast<double>(info_len) / static_cast<double>(h.n);
        const double n0 = 2.0 / (k * rate * std::pow(10.0, ebn0 / 10.0));
        long frames = 0;
        long info_bits = 0;
        long errors = 0;
        long frame_errors = 0;
        long iters = 0;
        long chunk_base = 0;
        const long wave = 8;
        const std::uint64_t point_seed =
            stream_seed(cfg.seed, static_cast<std::uint64_t>(std::llround(ebn0 * 1000.0)) + 7919);
        while (frames < cfg.max_frames && errors < cfg.target_errors) {
            const long todo = std::min<long>(
                wave, (cfg.max_frames - frames + chunk_frames - 1) / chunk_frames);
            const auto results = run_chunks<CodedChunk>(
                chunk_base, todo, cfg.threads, point_seed, [&](long, Rng& rng) {
                    CodedChunk c;
                    std::vector<std::uint8_t> info(static_cast<std::size_t>(info_len));
                    std::vector<double> llr_cw(static_cast<std::size_t>(h.n));
                    for (long f = 0; f < chunk_frames; ++f) {
                        for (auto& b : info)
                            b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
                        const auto cw = enc.encode(info);
                        for (int v = 0; v < vectors_per_frame; ++v) {
                            std::uint32_t value = 0;
                            for (int t = 0; t < k; ++t)
                                value |= static_cast<std::uint32_t>(
                                             cw[static_cast<std::size_t>(v * k + t)])
                                         << (k - 1 - t);
                            const Vec4 r = add_awgn(det.signals()[value], n0, rng);
                            const auto l = det.llr(r, n0, LlrMode::exact);
                            for (int t = 0; t < k; ++t)
                                llr_cw[static_cast<std::size_t>(v * k + t)] =
                                    l[static_cast<std::size_t>(k - 1 - t)];
                        }
                        const DecodeResult dec = decode_bp(llr_cw, h, cfg.ldpc_iters);
                        long fe = 0;
                        for (int i = 0; i < info_len; ++i) {
                            const int pos = enc.info_positions()[static_cast<std::size_t>(i)];
                            if (dec.bits[static_cast<std::size_t>(pos)] !=
                                cw[static_cast<std::size_t>(pos)])
                                ++fe;
                        }
                        c.bit_errors += fe;
                        c.frame_errors += fe ? 1 : 0;
                        c.iters += dec.iters;
                        ++c.frames;
                        c.info_bits += info_len;
                    }
                    return c;
                });
            for (const auto& c : results) {
                frames += c.frames;
                info_bits += c.info_bits;
                errors += c.bit_errors;
                frame_errors += c.frame_errors;
                iters += c.iters;
            }
            chunk_base += todo;
        }
        BerPoint pt;
        pt.ebn0_db = ebn0;
        pt.units = frames;
        pt.bits = info_bits;
        pt.errors = errors;
        pt.frame_errors = frame_errors;
        pt.ber = pt.bits ? static_cast<double>(errors) / static_cast<double>(pt.bits) : 0.0;
        pt.ci_halfwidth = wilson_halfwidth(errors, pt.bits);
        pt.avg_iters = frames ? static_cast<double>(iters) / static_cast<double>(frames) : 0.0;
        out.points.push_back(std::move(pt));
    }
    return out;
}

std::vector<SummaryRow> summarize_constellations(bool include_neighbors) {
    std::vector<SummaryRow> rows;
    auto add = [&](const std::string& name, const std::vector<Vec4>& vectors, int k) {
        Constellation4D c;
        c.name = name;
        c.vectors = vectors;
        c.normalization = 1.0 / std::sqrt(avg_sym_energy(vectors));
        SummaryRow row;
        row.name = name;
        row.size = vectors.size();
        row.bits_per_2d = k / 2.0;
        row.papr_db = constellation_papr_db(c);
        if (include_neighbors) {
            const NeighborStats ns = neighbor_stats(c);
            row.min_distance = ns.min_distance * c.normalization;
            row.neighbor_avg = ns.avg;
            row.neighbor_max = ns.max;
        }
        rows.push_back(std::move(row));
    };

    {
        const Labeling4D lab = cross_labeling(1);
        add("cross-qam-m1-4d", lab.signals, lab.k);
    }
    {
        const Labeling4D lab = cross_labeling(2);
        add("cross-qam-m2-4d", lab.signals, lab.k);
    }
    add("class1-trim128", trim_high_power(build_welti_class1(), 128).vectors, 7);
    add("dicyclic-128", build_dicyclic(128).vectors, 7);
    add("square-qam-16-4d", square_product_labeling(16).signals, 8);
    return rows;
}

// --------------------------------------------------------------------
// Artifact emission

std::string ber_csv(const BerResult& r) {
    std::string out = "ebn0_db,ber,errors,bits,ci_halfwidth,units,frame_errors,avg_iters";
    for (int b = 0; b < r.k; ++b) out += ",ber_b" + std::to_string(b);
    out += "\n";
    for (const auto& p : r.points) {
        out += fmt(p.ebn0_db) + "," + fmt(p.ber) + "," + std::to_string(p.errors) + "," +
               std::to_string(p.bits) + "," + fmt(p.ci_halfwidth) + "," +
               std::to_string(p.units) + "," + std::to_string(p.frame_errors) + "," +
               fmt(p.avg_iters);
        for (int b = 0; b < r.k; ++b)
            out += "," + (b < static_cast<int>(p.per_bit_ber.size())
                              ? fmt(p.per_bit_ber[static_cast<std::size_t>(b)])
                              : std::string("0"));
        out += "\n";
    }
    return out;
}

std::string ccdf_csv(const PaprResult& r) {
    std::string out = "papr_db,ccdf\n";
    for (std::size_t i = 0; i < r.curve.thresholds_db.size(); ++i)
        out += fmt(r.curve.thresholds_db[i]) + "," + fmt(r.curve.prob[i]) + "\n";
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "name,size,bits_per_2d,papr_db,min_distance,avg_neighbors,max_neighbors\n";
    for (const auto& r : rows)
        out += r.name + "," + std::to_string(r.size) + "," + fmt(r.bits_per_2d) + "," +
               fmt(r.papr_db) + "," + fmt(r.min_distance) + "," + fmt(r.neighbor_avg) + "," +
               std::to_string(r.neighbor_max) + "\n";
    return out;
}

std::string summary_table(const std::vector<SummaryRow>& rows) {
    char buf[200];
    std::string out;
    std::snprintf(buf, sizeof buf, "%-20s %6s %9s %9s %9s %10s %8s\n", "constellation", "size",
                  "bits/2D", "papr_db", "min_dist", "avg_neigh", "max");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-20s %6zu %9.2f %9.3f %9.4f %10.3f %8d\n",
                      r.name.c_str(), r.size, r.bits_per_2d, r.papr_db, r.min_distance,
                      r.neighbor_avg, r.neighbor_max);
        out += buf;
    }
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

json config_echo(const ExperimentConfig& cfg) {
    json j;
    j["kind"] = cfg.kind;
    j["constellation"] = cfg.constellation;
    j["m"] = cfg.m;
    j["qam_order"] = cfg.qam_order;
    j["labeling"] = cfg.labeling;
    j["snr_db"] = cfg.snr_db;
    j["max_vectors"] = cfg.max_vectors;
    j["max_frames"] = cfg.max_frames;
    j["target_errors"] = cfg.target_errors;
    j["subcarriers"] = cfg.subcarriers;
    j["total_subcarriers"] = cfg.total_subcarriers;
    j["oversample"] = cfg.oversample;
    j["symbols"] = cfg.symbols;
    j["ldpc_seed"] = cfg.ldpc_seed;
    j["ldpc_iters"] = cfg.ldpc_iters;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    return j;
}

}  // namespace

int run(const ExperimentConfig& cfg) {
    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);
    json meta;
    meta["config"] = config_echo(cfg);

    if (cfg.kind == "verify-gray") {
        const Labeling4D lab = build_labeling(cfg);
        const GrayReport rep = verify_gray(lab);
        meta["labeling"] = lab.name;
        meta["k"] = lab.k;
        meta["min_distance"] = rep.min_distance;
        meta["pairs_checked"] = rep.pairs_checked;
        meta["violations"] = json::array();
        for (const auto& [a, b] : rep.violations)
            meta["violations"].push_back({BitSeq{a, lab.k}.to_string(),
                                          BitSeq{b, lab.k}.to_string()});
        meta["gray"] = rep.gray();
        write_file(out_dir / "verify.json", meta.dump(2) + "\n");
        std::printf("labeling: %s\nviolations: %zu, min_distance: %s, pairs_checked: %zu\n",
                    lab.name.c_str(), rep.violations.size(), fmt(rep.min_distance).c_str(),
                    rep.pairs_checked);
        return 0;
    }
    if (cfg.kind == "papr") {
        const PaprResult res = run_papr(cfg);
        write_file(out_dir / "ccdf.csv", ccdf_csv(res));
        meta["source"] = res.source_name;
        meta["samples"] = res.samples_db.size();
        meta["papr_db_at_ccdf_1e1"] = res.q10;
        meta["papr_db_at_ccdf_1e2"] = res.q100;
        meta["papr_db_at_ccdf_1e3"] = res.q1000;
        write_file(out_dir / "papr.json", meta.dump(2) + "\n");
        std::printf("source: %s\npapr@1e-3: %s dB (%zu symbols)\n", res.source_name.c_str(),
                    fmt(res.q1000).c_str(), res.samples_db.size());
        return 0;
    }
    if (cfg.kind == "ber-uncoded" || cfg.kind == "ber-coded") {
        const bool coded = cfg.kind == "ber-coded";
        const BerResult res = coded ? run_ber_coded(cfg) : run_ber_uncoded(cfg);
        write_file(out_dir / "ber.csv", ber_csv(res));
        meta["labeling"] = res.labeling_name;
        meta["k"] = res.k;
        json pts = json::array();
        for (const auto& p : res.points) {
            json jp;
            jp["ebn0_db"] = p.ebn0_db;
            jp["ber"] = p.ber;
            jp["errors"] = p.errors;
            jp["bits"] = p.bits;
            jp["ci_halfwidth"] = p.ci_halfwidth;
            jp["units"] = p.units;
            if (coded) {
                jp["frame_errors"] = p.frame_errors;
                jp["avg_iters"] = p.avg_iters;
            } else {
                jp["per_bit_ber"] = p.per_bit_ber;
            }
            pts.push_back(jp);
        }
        meta["points"] = pts;
        write_file(out_dir / "ber.json", meta.dump(2) + "\n");
        if (coded) write_file(out_dir / "h.alist", to_alist(build_h(cfg.ldpc_seed)));
        for (const auto& p : res.points)
            std::printf("ebn0 %s dB: ber %s (%ld errors / %ld bits)\n", fmt(p.ebn0_db).c_str(),
                        fmt(p.ber).c_str(), p.errors, p.bits);
        return 0;
    }
    if (cfg.kind == "export-labeling") {
        const Labeling4D lab = build_labeling(cfg);
        write_file(out_dir / "labeling.csv", to_csv(lab));
        meta["labeling"] = lab.name;
        meta["k"] = lab.k;
        meta["es2d"] = lab.es2d;
        write_file(out_dir / "labeling.json", meta.dump(2) + "\n");
        std::printf("wrote %zu rows for %s\n", lab.signals.size(), lab.name.c_str());
        return 0;
    }
    if (cfg.kind == "summarize") {
        const auto rows = summarize_constellations();
        write_file(out_dir / "summary.csv", summary_csv(rows));
        std::fputs(summary_table(rows).c_str(), stdout);
        return 0;
    }
    throw std::runtime_error("unknown experiment kind: " + cfg.kind);
}

}  // namespace xqam
